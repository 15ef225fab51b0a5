"""
Shared fixtures for the twistorlab test suite
"""

import os
import sys

import numpy as np
import pytest

# Add the repository root to path so that the src package resolves
sys.path.insert(0, os.path.join(os.path.dirname(__file__), '..'))

from src.fiber import InnerProductSpace, OrthogonalComplexStructure, random_space, standard_complex_structure
from src.riemann import MetricPair, conformal_metric, diag_metric, flat_metric, parse_factor
from src.twistor import TwistorPoint


@pytest.fixture
def rng():
    return np.random.default_rng(20240611)


@pytest.fixture
def euclidean4():
    return InnerProductSpace(np.eye(4))


@pytest.fixture
def skewed4():
    return random_space(4, 7, condition=20.0)


@pytest.fixture
def conformal_pair():
    """Flat ℝ⁴ and e^{2x₁}·flat"""
    g = flat_metric(4)
    return MetricPair(g, conformal_metric(g, parse_factor("x1", 4)))


@pytest.fixture
def homothetic_pair():
    g = flat_metric(4)
    return MetricPair(g, conformal_metric(g, parse_factor("const:0.5", 4)))


@pytest.fixture
def witness_pair():
    """Flat ℝ⁴ against diag(1,1,1,4), not conformal"""
    return MetricPair(flat_metric(4), diag_metric([1.0, 1.0, 1.0, 4.0]))


@pytest.fixture
def origin_point():
    """(0, J₀) over flat ℝ⁴"""
    space = InnerProductSpace(np.eye(4))
    return TwistorPoint(np.zeros(4), OrthogonalComplexStructure(space, standard_complex_structure(4)))


def pytest_addoption(parser):
    parser.addoption("--acceptance", action="store_true", default=False,
                     help="run the 10^4-sample acceptance sweeps")
    parser.addoption("--update-goldens", action="store_true", default=False,
                     help="rewrite tests/golden/*.json from the current reports")


def pytest_configure(config):
    config.addinivalue_line("markers", "acceptance: 10^4-sample sweeps, skipped unless --acceptance is given")


def pytest_collection_modifyitems(config, items):
    if config.getoption("--acceptance", default=False):
        return
    skip = pytest.mark.skip(reason="acceptance sweep, run with --acceptance")
    for item in items:
        if "acceptance" in item.keywords:
            item.add_marker(skip)
