import numpy as np
import pytest

from revgeo import SurfaceSpec


@pytest.fixture(scope="session")
def ring():
    # unit ring torus of the worked examples: a=2, b=1, c=1
    return SurfaceSpec(2.0, 1.0)


@pytest.fixture(scope="session")
def horn():
    return SurfaceSpec(1.0, 1.0)


@pytest.fixture(scope="session")
def spindle():
    return SurfaceSpec(0.5, 1.0)


@pytest.fixture(scope="session")
def sphere():
    return SurfaceSpec(0.0, 1.0)


@pytest.fixture
def rng():
    return np.random.default_rng(20260815)
