"""
Check Registry - every verifiable statement as a named, seeded sample sweep
Each check returns per-sample residuals; the runner turns them into pass/fail by polarity
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional, Tuple, Union

import numpy as np

from ..fiber import (
    Endomorphism,
    InnerProductSpace,
    MetricTransfer,
    OrthogonalComplexStructure,
    commutator_wedge,
    conjugate,
    decomposable_endo,
    fiber_complex_structure,
    hodge_matrix,
    hodge_split,
    hodge_star,
    hom_metric,
    hom_norm,
    isoclinic_factor,
    lambda2_gram,
    left_isoclinic,
    orientation_sign,
    principal_sqrt,
    quaternion_rotation,
    random_compatible,
    random_endomorphism,
    random_skew,
    random_space,
    random_special_orthogonal,
    random_spd,
    right_isoclinic,
    s_basis,
    so_metric,
    sqrt_via_log_integral,
    transfer_endomorphism,
    vertical_dimension,
    vertical_project,
    wedge_of_endo,
)
from ..riemann import (
    MetricPair,
    apply_difference,
    christoffel,
    contracted_bianchi_ratio,
    curvature,
    curvature_on_bivector,
    gradient,
    hom_curvature,
    koszul_difference,
    operator_norm,
    operator_pairing,
    ricci_contraction,
    sigma_form,
    bianchi_residual,
    weyl_conformal_residual,
    hodge_conformal_residual,
)
from ..twistor import (
    PushforwardContext,
    StructureKind,
    StructurePair,
    TwistorMetricParams,
    TwistorPoint,
    TwistorTangent,
    harmonicity_scan,
    holomorphy_residual,
    iso_criterion,
    nabla_tilde_section,
    psi_pushforward,
    second_fund_form_conformal,
    structure_matrix,
    tension_covector,
)

logger = logging.getLogger('CheckRegistry')

ZERO = "zero"
NONZERO = "nonzero"
DIAGNOSTIC = "diagnostic"
POLARITIES = (ZERO, NONZERO, DIAGNOSTIC)

AHS = StructureKind.AHS
ES = StructureKind.ES


@dataclass(frozen=True, eq=False)
class CheckContext:
    """Everything a check needs: the metric pair, twistor scales and its own seed stream"""
    check_id: str
    pair: MetricPair
    params: TwistorMetricParams
    samples: int
    entropy: Tuple[int, ...]
    limits: Dict[str, float] = field(default_factory=dict)

    @property
    def n(self) -> int:
        return self.pair.dim

    def generators(self) -> List[np.random.Generator]:
        """One generator per sample, spawned from (seed, check id)"""
        children = np.random.SeedSequence(list(self.entropy)).spawn(self.samples)
        return [np.random.default_rng(child) for child in children]

    def twistor_point(self, rng: np.random.Generator) -> TwistorPoint:
        p = self.pair.sample_point(rng)
        return TwistorPoint(p, random_compatible(self.pair.g.space(p), rng))

    def limit(self, key: str) -> float:
        return self.limits[key]


@dataclass
class CheckOutcome:
    """
    Raw result of a check

    constraints maps a name to (value, limit) pairs that must satisfy value <= limit
    regardless of the check's polarity.
    """
    residuals: List[float] = field(default_factory=list)
    points: List[List[float]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)
    constraints: Dict[str, Tuple[float, float]] = field(default_factory=dict)

    def add(self, residual: float, point: np.ndarray):
        self.residuals.append(float(residual))
        self.points.append([float(x) for x in np.asarray(point, dtype=float)])


PolarityRule = Union[str, Callable[[MetricPair], str]]


@dataclass(frozen=True)
class CheckSpec:
    id: str
    description: str
    run: Callable[[CheckContext], CheckOutcome]
    polarity: PolarityRule
    conformal_only: bool = False
    dims: Optional[Tuple[int, ...]] = None
    min_dim: int = 2
    fd_sensitive: bool = False

    def resolve_polarity(self, pair: MetricPair) -> str:
        return self.polarity(pair) if callable(self.polarity) else self.polarity


def zero_if_conformal(pair: MetricPair) -> str:
    return ZERO if pair.is_conformal else NONZERO


def zero_if_homothetic(pair: MetricPair) -> str:
    return ZERO if pair.is_homothetic else NONZERO


def _sweep(ctx: CheckContext, sample: Callable[[np.random.Generator], Tuple[float, np.ndarray]]) -> CheckOutcome:
    outcome = CheckOutcome()
    for rng in ctx.generators():
        residual, point = sample(rng)
        outcome.add(residual, point)
    return outcome


def _rel(residual: np.ndarray, reference: float) -> float:
    return float(np.max(np.abs(residual))) / max(1.0, float(reference))


def _vertical_defect(J: OrthogonalComplexStructure, mat: np.ndarray) -> float:
    lowered = J.space.gram @ mat
    scale = float(np.max(np.abs(mat))) if mat.size else 0.0
    return max(_rel(lowered + lowered.T, np.max(np.abs(lowered))), _rel(J.mat @ mat + mat @ J.mat, scale))


# ---------------------------------------------------------------------------
# Ψ and the fiber algebra
# ---------------------------------------------------------------------------

def _psi_defect(space: InnerProductSpace, gtilde: np.ndarray, rng: np.random.Generator) -> float:
    I = random_compatible(space, rng)
    transfer = MetricTransfer.between(space, gtilde)
    psi = transfer.psi(I.mat)
    n = space.n
    square = float(np.max(np.abs(psi @ psi + np.eye(n))))
    orthogonal = _rel(psi.T @ gtilde @ psi - gtilde, np.max(np.abs(gtilde)))

    A = random_endomorphism(space, rng)
    B = random_endomorphism(space, rng)
    pushed_a = Endomorphism(transfer.target, transfer.psi(A.mat))
    pushed_b = Endomorphism(transfer.target, transfer.psi(B.mat))
    isometry = abs(hom_metric(A, B) - hom_metric(pushed_a, pushed_b)) / max(1.0, hom_norm(A) * hom_norm(B))

    orientation = 0.0 if orientation_sign(psi) == I.orientation() else 1.0
    return max(square, orthogonal, isometry, orientation)


def check_psi_well_defined(ctx: CheckContext) -> CheckOutcome:
    def sample(rng):
        p = ctx.pair.sample_point(rng)
        on_chart = _psi_defect(ctx.pair.g.space(p), ctx.pair.gtilde.gram(p), rng)
        algebraic = _psi_defect(random_space(ctx.n, rng), random_spd(ctx.n, rng), rng)
        return max(on_chart, algebraic), p
    return _sweep(ctx, sample)


def check_fiber_identities(ctx: CheckContext) -> CheckOutcome:
    n = ctx.n
    m = n // 2

    def sample(rng):
        p = ctx.pair.sample_point(rng)
        space = ctx.pair.g.space(p)
        S, T = random_skew(space, rng), random_skew(space, rng)
        half = 0.5 * so_metric(S, T)
        residuals = [abs(half - wedge_of_endo(S).inner(wedge_of_endo(T))) / max(1.0, abs(half))]

        J = random_compatible(space, rng)
        A, B = rng.standard_normal(n), rng.standard_normal(n)
        lhs = J.mat @ decomposable_endo(space, A, B).mat @ J.mat
        rhs = -decomposable_endo(space, J.apply(A), J.apply(B)).mat
        residuals.append(_rel(lhs - rhs, np.max(np.abs(rhs))))

        residuals.append(0.0 if vertical_dimension(J) == m * m - m else 1.0)
        V = vertical_project(J, random_skew(space, rng))
        twice = fiber_complex_structure(fiber_complex_structure(V))
        residuals.append(_rel(twice.mat + V.mat, np.max(np.abs(V.mat))))

        if n == 4:
            positive = random_compatible(space, rng, orientation=1)
            sigma = wedge_of_endo(positive)
            _, minus = hodge_split(sigma)
            residuals.append(minus.norm())
            residuals.append(abs(sigma.norm() - 1.0))
            plus_basis, minus_basis = s_basis(space)
            basis = plus_basis + minus_basis
            gram = np.array([[a.inner(b) for b in basis] for a in basis])
            residuals.append(float(np.max(np.abs(gram - np.eye(6)))))
            for s in plus_basis:
                residuals.append(float(np.max(np.abs(hodge_star(s).coeffs - s.coeffs))))
            for s in minus_basis:
                residuals.append(float(np.max(np.abs(hodge_star(s).coeffs + s.coeffs))))
        return max(residuals), p
    return _sweep(ctx, sample)


def check_sqrt_log_integral(ctx: CheckContext) -> CheckOutcome:
    identity = InnerProductSpace(np.eye(ctx.n))

    def sample(rng):
        p = ctx.pair.sample_point(rng)
        A = random_spd(ctx.n, rng, condition=float(rng.uniform(1.0, 100.0)))
        root = principal_sqrt(Endomorphism(identity, A)).mat
        residual = _rel(root - sqrt_via_log_integral(A), np.max(np.abs(root)))

        C = transfer_endomorphism(ctx.pair.g.space(p), ctx.pair.gtilde.gram(p))
        root = principal_sqrt(C).mat
        residual = max(residual, _rel(root - sqrt_via_log_integral(C.mat), np.max(np.abs(root))))
        return residual, p
    return _sweep(ctx, sample)


def check_isoclinic(ctx: CheckContext) -> CheckOutcome:
    def sample(rng):
        A = random_special_orthogonal(rng)
        left, right = (np.asarray(q) for q in isoclinic_factor(A))
        residual = float(np.max(np.abs(left_isoclinic(left) @ right_isoclinic(right) - A)))
        pivot = np.flatnonzero(np.abs(left) > 1e-10)[0]
        residual = max(residual, 0.0 if left[pivot] > 0 else 1.0)
        residual = max(residual, abs(np.linalg.norm(left) - 1.0), abs(np.linalg.norm(right) - 1.0))

        q = rng.standard_normal(4)
        q /= np.linalg.norm(q)
        stabilizer = np.eye(4)
        stabilizer[1:, 1:] = quaternion_rotation(q)
        residual = max(residual, float(np.max(np.abs(left_isoclinic(q) @ right_isoclinic(conjugate(q)) - stabilizer))))
        return residual, A[:, 0]
    return _sweep(ctx, sample)


def check_gs_isometry(ctx: CheckContext) -> CheckOutcome:
    def sample(rng):
        point = ctx.twistor_point(rng)
        residual = 0.0
        for kind in StructureKind:
            M = structure_matrix(kind, point, ctx.params.s)
            eye = np.eye(M.shape[0])
            residual = max(residual, float(np.max(np.abs(M.T @ M - eye))), float(np.max(np.abs(M @ M + eye))))
        return residual, point.p
    return _sweep(ctx, sample)


def check_pushforward_fibers(ctx: CheckContext) -> CheckOutcome:
    def sample(rng):
        point = ctx.twistor_point(rng)
        context = PushforwardContext.at(ctx.pair, point, strict=False)
        target_i = context.image.I
        U = vertical_project(point.I, random_skew(point.space, rng))
        pushed = psi_pushforward(ctx.pair, TwistorTangent.vertical(point, U), strict=False, context=context)
        residuals = [_vertical_defect(target_i, pushed.ver.mat)]
        size = hom_metric(U.value, U.value)
        residuals.append(abs(size - hom_metric(pushed.ver.value, pushed.ver.value)) / max(1.0, size))

        X = rng.standard_normal(point.n)
        lifted = psi_pushforward(ctx.pair, TwistorTangent.horizontal(point, X), strict=False, context=context)
        residuals.append(_vertical_defect(target_i, lifted.ver.mat))
        if ctx.pair.is_conformal:
            section = nabla_tilde_section(ctx.pair, point.I, X, point.p, strict=False).mat
            residuals.append(_rel(lifted.ver.mat - section, np.max(np.abs(section))))
        return max(residuals), point.p
    return _sweep(ctx, sample)


# ---------------------------------------------------------------------------
# Holomorphy
# ---------------------------------------------------------------------------

def _holomorphy(ctx: CheckContext, combos: List[Tuple[StructurePair, bool]]) -> CheckOutcome:
    points = [ctx.twistor_point(rng) for rng in ctx.generators()]
    sweeps = [holomorphy_residual(ctx.pair, structures, points, ctx.params, anti=anti)
              for structures, anti in combos]
    outcome = CheckOutcome()
    for k, point in enumerate(points):
        outcome.add(min(stats.values[k] for stats in sweeps), point.p)
    for stats in sweeps:
        key = f"{stats.structures}{' anti' if stats.anti else ''}"
        outcome.details[key] = dict(stats.conditions)
    return outcome


def check_prop_j1(ctx):
    return _holomorphy(ctx, [(StructurePair(AHS, AHS), False)])


def check_prop_j1_anti(ctx):
    return _holomorphy(ctx, [(StructurePair(AHS, AHS), True)])


def check_prop_j2(ctx):
    return _holomorphy(ctx, [(StructurePair(ES, ES), False)])


def check_prop_j2_anti(ctx):
    return _holomorphy(ctx, [(StructurePair(ES, ES), True)])


def check_prop_mixed(ctx):
    combos = [(StructurePair(AHS, ES), False), (StructurePair(AHS, ES), True),
              (StructurePair(ES, AHS), False), (StructurePair(ES, AHS), True)]
    return _holomorphy(ctx, combos)


def _unit(space: InnerProductSpace, v: np.ndarray) -> np.ndarray:
    return v / space.norm(v)


def check_iso_criterion(ctx: CheckContext) -> CheckOutcome:
    def sample(rng):
        point = ctx.twistor_point(rng)
        X = _unit(point.space, rng.standard_normal(point.n))
        return iso_criterion(1, ctx.pair, point.I, X, point.p), point.p
    return _sweep(ctx, sample)


def check_iso_criterion_k2(ctx: CheckContext) -> CheckOutcome:
    """k = 2 at X ⟂ {∇f, I∇f}, relative to |∇f|"""
    def sample(rng):
        point = ctx.twistor_point(rng)
        space = point.space
        grad = gradient(ctx.pair.g, ctx.pair.factor, point.p)
        size = space.norm(grad)
        if size <= 1e-12:
            return 0.0, point.p
        X = rng.standard_normal(point.n)
        for v in (grad, point.I.apply(grad)):
            u = v / size
            X = X - space.inner(X, u) * u
        X = _unit(space, X)
        return iso_criterion(2, ctx.pair, point.I, X, point.p) / size, point.p
    return _sweep(ctx, sample)


# ---------------------------------------------------------------------------
# Curvature
# ---------------------------------------------------------------------------

def check_lemma_r_ab(ctx: CheckContext) -> CheckOutcome:
    n = ctx.n

    def sample(rng):
        p = ctx.pair.sample_point(rng)
        worst = 0.0
        for metric in (ctx.pair.g, ctx.pair.gtilde):
            data = curvature(metric, p, oriented=False)
            space = data.space()
            J = random_compatible(space, rng)
            a = vertical_project(J, random_skew(space, rng))
            b = vertical_project(J, random_skew(space, rng))
            X, Y = rng.standard_normal(n), rng.standard_normal(n)
            lhs = so_metric(Endomorphism(space, hom_curvature(data, X, Y, a.mat)), b.value, strict=False)
            rhs = space.inner(curvature_on_bivector(data, commutator_wedge(a.value, b.value)).apply(X), Y)
            worst = max(worst, abs(lhs - rhs) / max(1.0, abs(lhs), abs(rhs)))
        return worst, p
    return _sweep(ctx, sample)


def _decomposition_defect(data) -> float:
    parts = data.parts
    operator = data.operator
    scale = max(1.0, float(np.max(np.abs(operator))))
    residuals = [
        _rel(parts.scalar + parts.traceless_ricci + parts.weyl - operator, scale),
        abs(operator_pairing(parts.scalar, parts.traceless_ricci)) / scale ** 2,
        abs(operator_pairing(parts.scalar, parts.weyl)) / scale ** 2,
        abs(operator_pairing(parts.traceless_ricci, parts.weyl)) / scale ** 2,
        _rel(ricci_contraction(parts.weyl, data.gram), scale),
    ]
    form = lambda2_gram(data.gram) @ operator
    residuals.append(_rel(form - form.T, scale))
    if parts.weyl_plus is not None:
        star = hodge_matrix(data.gram)
        residuals.append(_rel(star @ parts.traceless_ricci + parts.traceless_ricci @ star, scale))
        residuals.append(_rel(parts.weyl_plus + parts.weyl_minus - parts.weyl, scale))
    return max(residuals)


def check_curvature_decomposition(ctx: CheckContext) -> CheckOutcome:
    norms = {"g": {"scalar": [], "traceless_ricci": [], "weyl": []},
             "gtilde": {"scalar": [], "traceless_ricci": [], "weyl": []}}

    def sample(rng):
        p = ctx.pair.sample_point(rng)
        worst = 0.0
        for key, metric in (("g", ctx.pair.g), ("gtilde", ctx.pair.gtilde)):
            data = curvature(metric, p)
            worst = max(worst, _decomposition_defect(data))
            entry = norms[key]
            entry["scalar"].append(data.scalar)
            entry["traceless_ricci"].append(operator_norm(data.parts.traceless_ricci))
            entry["weyl"].append(operator_norm(data.parts.weyl))
        return worst, p

    outcome = _sweep(ctx, sample)
    for key, entry in norms.items():
        summary = {}
        for part, values in entry.items():
            summary[f"{part}_min"] = float(np.min(values)) if values else 0.0
            summary[f"{part}_max"] = float(np.max(values)) if values else 0.0
        outcome.details[key] = summary
    return outcome


def check_weyl_conformal(ctx: CheckContext) -> CheckOutcome:
    def sample(rng):
        p = ctx.pair.sample_point(rng)
        weyl = curvature(ctx.pair.g, p).parts.weyl
        scale = np.exp(-2.0 * ctx.pair.factor.value(p)) * float(np.max(np.abs(weyl)))
        return weyl_conformal_residual(ctx.pair, p) / max(1.0, scale), p
    return _sweep(ctx, sample)


def check_hodge_conformal(ctx: CheckContext) -> CheckOutcome:
    def sample(rng):
        p = ctx.pair.sample_point(rng)
        return hodge_conformal_residual(ctx.pair, p), p
    return _sweep(ctx, sample)


def check_bianchi(ctx: CheckContext) -> CheckOutcome:
    n = ctx.n

    def sample(rng):
        p = ctx.pair.sample_point(rng)
        worst = 0.0
        for metric in (ctx.pair.g, ctx.pair.gtilde):
            data = curvature(metric, p, oriented=False)
            X, Y, Z = (rng.standard_normal(n) for _ in range(3))
            worst = max(worst, bianchi_residual(data, X, Y, Z))
        return worst, p
    return _sweep(ctx, sample)


def check_contracted_bianchi(ctx: CheckContext) -> CheckOutcome:
    ratios = {"g": [], "gtilde": []}
    outcome = CheckOutcome()
    for rng in ctx.generators():
        p = ctx.pair.sample_point(rng)
        deviation = []
        for key, metric in (("g", ctx.pair.g), ("gtilde", ctx.pair.gtilde)):
            ratio = contracted_bianchi_ratio(metric, p)
            if ratio is not None:
                ratios[key].append(ratio)
                deviation.append(abs(ratio + 0.5))
        if deviation:
            outcome.add(max(deviation), p)
    for key, values in ratios.items():
        outcome.details[key] = {
            "samples": len(values),
            "ratio_mean": float(np.mean(values)) if values else None,
        }
    outcome.details["expected_ratio"] = -0.5
    return outcome


def check_koszul_identity(ctx: CheckContext) -> CheckOutcome:
    n = ctx.n

    def sample(rng):
        p = ctx.pair.sample_point(rng)
        X, Y = rng.standard_normal(n), rng.standard_normal(n)
        tensor = christoffel(ctx.pair.gtilde, p) - christoffel(ctx.pair.g, p)
        expected = apply_difference(tensor, X, Y)
        scale = np.max(np.abs(expected))
        residual = _rel(koszul_difference(ctx.pair, X, Y, p) - expected, scale)
        swapped = sigma_form(ctx.pair, X, Y, p) - sigma_form(ctx.pair, Y, X, p)
        return max(residual, _rel(swapped, scale)), p
    return _sweep(ctx, sample)


# ---------------------------------------------------------------------------
# Harmonicity
# ---------------------------------------------------------------------------

def check_vertical_trace(ctx: CheckContext) -> CheckOutcome:
    def sample(rng):
        point = ctx.twistor_point(rng)
        _, gap = tension_covector(ctx.pair, point, ctx.params)
        grad = gradient(ctx.pair.g, ctx.pair.factor, point.p)
        return hom_norm(gap) / max(1.0, point.space.norm(grad) ** 2), point.p
    return _sweep(ctx, sample)


def check_harmonicity(ctx: CheckContext) -> CheckOutcome:
    points = [ctx.twistor_point(rng) for rng in ctx.generators()]
    scan = harmonicity_scan(ctx.pair, points, ctx.params)
    outcome = CheckOutcome()
    for value, p in zip(scan.trace, scan.points):
        outcome.add(value, p)
    outcome.details = {
        "sign": scan.sign,
        "max_closed_form": scan.max_closed_form,
        "max_agreement": scan.max_agreement,
        "max_vertical_trace": scan.max_vertical_trace,
    }
    outcome.constraints["agreement"] = (scan.max_agreement, ctx.limit("harmonicity-agreement"))
    return outcome


def check_vertical_vertical_ii(ctx: CheckContext) -> CheckOutcome:
    def sample(rng):
        point = ctx.twistor_point(rng)
        first = vertical_project(point.I, random_skew(point.space, rng))
        second = vertical_project(point.I, random_skew(point.space, rng))
        form = second_fund_form_conformal(ctx.pair, point, TwistorTangent.vertical(point, first),
                                          TwistorTangent.vertical(point, second), ctx.params)
        return max(float(np.max(np.abs(form.horizontal))), float(np.max(np.abs(form.vertical.mat)))), point.p
    return _sweep(ctx, sample)


CHECK_REGISTRY: Dict[str, CheckSpec] = {spec.id: spec for spec in [
    CheckSpec("psi-well-defined", "Ψ(I)² = -Id, g̃-orthogonality, isometry of G and orientation",
              check_psi_well_defined, ZERO),
    CheckSpec("prop-j1", "AHS→AHS holomorphy of Ψ", check_prop_j1, zero_if_conformal, fd_sensitive=True),
    CheckSpec("prop-j1-anti", "AHS→AHS anti-holomorphy of Ψ", check_prop_j1_anti, NONZERO),
    CheckSpec("prop-j2", "ES→ES holomorphy of Ψ", check_prop_j2, zero_if_homothetic, fd_sensitive=True),
    CheckSpec("prop-j2-anti", "ES→ES anti-holomorphy of Ψ", check_prop_j2_anti, NONZERO),
    CheckSpec("prop-mixed", "AHS↔ES holomorphy and anti-holomorphy of Ψ", check_prop_mixed, NONZERO),
    CheckSpec("iso-criterion", "I∘V_{I,X} = V_{I,IX}", check_iso_criterion, ZERO, conformal_only=True),
    CheckSpec("iso-criterion-k2", "-I∘V_{I,X} = V_{I,IX} at X ⟂ {∇f, I∇f}", check_iso_criterion_k2,
              zero_if_homothetic, conformal_only=True),
    CheckSpec("lemma-r-ab", "G(R(X,Y)a, b) = g(R([a,b]^∧)X, Y)", check_lemma_r_ab, ZERO, fd_sensitive=True),
    CheckSpec("curvature-decomposition", "ℛ = scalar + ℬ + 𝒲 with orthogonal parts and trace-free 𝒲",
              check_curvature_decomposition, ZERO, min_dim=3, fd_sensitive=True),
    CheckSpec("weyl-conformal", "𝒲̃ = e^{-2f}𝒲", check_weyl_conformal, ZERO, conformal_only=True, min_dim=3,
              fd_sensitive=True),
    CheckSpec("hodge-conformal", "∗ agrees for g and e^{2f}g", check_hodge_conformal, ZERO, conformal_only=True,
              dims=(4,)),
    CheckSpec("bianchi", "R(X,Y)Z + R(Y,Z)X + R(Z,X)Y = 0", check_bianchi, ZERO, fd_sensitive=True),
    CheckSpec("contracted-bianchi", "factor λ in δρ = λ·dτ", check_contracted_bianchi, DIAGNOSTIC),
    CheckSpec("koszul-identity", "Γ̃ - Γ from C, ∇C and Σ", check_koszul_identity, ZERO, fd_sensitive=True),
    CheckSpec("sqrt-log-integral", "eigendecomposition and log-integral square roots agree",
              check_sqrt_log_integral, ZERO),
    CheckSpec("isoclinic", "SO(4) = left·right isoclinic rotations", check_isoclinic, ZERO, dims=(4,)),
    CheckSpec("fiber-identities", "wedge isometry, S-S identity, vertical dimension, s-basis",
              check_fiber_identities, ZERO),
    CheckSpec("gs-isometry", "J₁ and J₂ are g_s-isometries squaring to -Id", check_gs_isometry, ZERO),
    CheckSpec("pushforward-fibers", "Ψ_* keeps vertical vectors on fibers and is G-isometric there",
              check_pushforward_fibers, ZERO, fd_sensitive=True),
    CheckSpec("vertical-trace", "trace of the vertical Hessian gap vanishes", check_vertical_trace, ZERO,
              conformal_only=True),
    CheckSpec("harmonicity", "tension of Ψ against the closed-form criterion", check_harmonicity,
              zero_if_homothetic, conformal_only=True, fd_sensitive=True),
    CheckSpec("vertical-vertical-ii", "second fundamental form vanishes on vertical pairs",
              check_vertical_vertical_ii, ZERO, conformal_only=True),
]}

# tolerance keys consumed inside checks rather than by the runner
AUXILIARY_LIMITS = {"harmonicity-agreement": True}
