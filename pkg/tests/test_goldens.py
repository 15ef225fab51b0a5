"""
Golden reports for the bundled scenarios
Timing-free JSON at the full configured sample count must reproduce byte for byte
"""

from pathlib import Path

import pytest

from src.scenarios import bundled_scenarios, emit_report, load_config, run_scenario

GOLDEN_DIR = Path(__file__).parent / "golden"


def render(name: str) -> bytes:
    return emit_report(run_scenario(load_config(name), jobs=1), "json", include_timing=False)


class TestGoldenReports:
    """Bundled scenario reports against tests/golden/<name>.json"""

    @pytest.mark.parametrize("name", sorted(bundled_scenarios()))
    def test_report_matches_golden(self, name, request):
        path = GOLDEN_DIR / f"{name}.json"
        produced = render(name)
        if request.config.getoption("--update-goldens", default=False) or not path.exists():
            GOLDEN_DIR.mkdir(exist_ok=True)
            path.write_bytes(produced)
            pytest.skip(f"golden written to {path}")
        assert produced == path.read_bytes(), f"{name} report drifted from {path}; rerun with --update-goldens if intended"

    def test_every_golden_has_a_scenario(self):
        stale = {path.stem for path in GOLDEN_DIR.glob("*.json")} - set(bundled_scenarios())
        assert not stale

    def test_rendering_is_stable(self):
        assert render("fiber-algebra-2d") == render("fiber-algebra-2d")
