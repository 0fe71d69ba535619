"""
Shared fixtures: catalog families are expensive enough to build once per session.
"""

import numpy as np
import pytest

from baxter import SpectralParam, baxterize_TL
from catalog import build_diagram, pf_eigen
from config import get_settings
from groupoid.graph import Graph
from operators import build_TL_graph, hecke_from_TL
from special.theta import EllipticParams


@pytest.fixture(autouse=True)
def default_profile():
    """CLI runs may switch the cached profile; every test starts from 'default'."""
    settings = get_settings()
    previous = settings.tol_profile
    settings.tol_profile = "default"
    yield
    settings.tol_profile = previous


def _family(family, L=None):
    graph = build_diagram(family, L)
    return build_TL_graph(graph, pf_eigen(graph))


@pytest.fixture(scope="session")
def a2_family():
    return _family("A", 2)


@pytest.fixture(scope="session")
def a4_family():
    return _family("A", 4)


@pytest.fixture(scope="session")
def a5_family():
    return _family("A", 5)


@pytest.fixture(scope="session")
def e6_family():
    return _family("E6")


@pytest.fixture(scope="session")
def d5_aff_family():
    return _family("D_aff", 5)


@pytest.fixture(scope="session")
def a5_hecke(a5_family):
    return hecke_from_TL(a5_family)


@pytest.fixture(scope="session")
def a4_R(a4_family):
    return baxterize_TL(a4_family, SpectralParam.tri(np.pi / 5))


@pytest.fixture
def triangle():
    return Graph.from_edges([(1, 2), (2, 3), (3, 1)], name="triangle")


@pytest.fixture(scope="session")
def elliptic():
    return EllipticParams(tau=0.8j, L=4)
