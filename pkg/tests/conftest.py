import numpy as np
import pytest
from hypothesis import HealthCheck, settings

from ymstrata.liegroup import O2, O3, SO3, SU2, U2, torus
from ymstrata.surface import BundleData
from ymstrata.variety import SolverConfig, solve

settings.register_profile(
    "repo", deadline=None, max_examples=40, suppress_health_check=[HealthCheck.too_slow]
)
settings.load_profile("repo")

ALL_SPECS = [SU2, SO3, U2, O2, O3, torus(1), torus(2)]


def default_phi(genus):
    return (-1,) + (1,) * (2 * genus - 1)


def make_bundle(spec, genus, central=None):
    phi = None if spec.connected else default_phi(genus)
    return BundleData(spec, genus, central, phi)


@pytest.fixture
def rng():
    return np.random.default_rng(1234)


@pytest.fixture(scope="session")
def su2_irreducible():
    return solve(BundleData(SU2, 2), SolverConfig(seed=7))


def torus_point():
    from ymstrata.variety import torus_representation

    return torus_representation(BundleData(SU2, 2), [0.3, 0.7, 1.1, 2.0])


def cone_directions(rep, co):
    """Unit directions in harmonic coordinates with moment map zero and non-zero.

    The null direction mixes a torus direction with an isotropic vector of
    the moment-map quadratic form; the other is a positive eigenvector.
    """
    from ymstrata.localmodel import quadratic_moment

    Q = quadratic_moment(rep, co)
    w, V = np.linalg.eigh(Q.tensor[0])
    v_plus, v_minus = V[:, np.argmax(w)], V[:, np.argmin(w)]
    null = np.sqrt(-w.min()) * v_plus + np.sqrt(w.max()) * v_minus
    null /= np.linalg.norm(null)
    kernel = V[:, np.abs(w) < 1e-9]
    t_dir = kernel[:, 0]
    mixed = t_dir + null
    return mixed / np.linalg.norm(mixed), v_plus
