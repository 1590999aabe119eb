import numpy as np
import pytest

from conftest import make_bundle
from ymstrata.liegroup import O2, O3, SO3, SU2, U2
from ymstrata.strata import census, classify_point, is_representation_irreducible, stabilizer
from ymstrata.surface import BundleData, Representation
from ymstrata.variety import (
    SolverConfig,
    central_representations,
    klein_four_representation,
    solve,
    torus_representation,
)


def test_su2_orbit_types(su2_irreducible):
    bundle = su2_irreducible.bundle
    irr = classify_point(su2_irreducible)
    tor = classify_point(torus_representation(bundle, [0.3, 0.7, 1.1, 2.0]))
    cen = classify_point(central_representations(bundle)[5])
    assert (str(irr.label), irr.stratum_dim, irr.top, irr.nonsingular) == ("(Z)", 6, True, True)
    assert (str(tor.label), tor.stratum_dim, tor.top, tor.h) == ("(T)", 4, False, (1, 8, 1))
    assert (str(cen.label), cen.stratum_dim, cen.top, cen.h) == ("(SU2)", 0, False, (3, 12, 3))


def test_classification_is_conjugation_invariant(su2_irreducible, rng):
    tor = torus_representation(su2_irreducible.bundle, [0.3, 0.7, 1.1, 2.0])
    for rep in (su2_irreducible, tor):
        a = classify_point(rep).as_dict()
        b = classify_point(rep.conjugate(SU2.random_element(rng))).as_dict()
        assert a == b


def test_stratum_dimension_never_exceeds_h1(rng):
    for spec in (SU2, SO3, U2, O2, O3):
        for name_rep in (solve(make_bundle(spec, 2), SolverConfig(seed=s)) for s in range(3)):
            pc = classify_point(name_rep)
            assert 0 <= pc.stratum_dim <= pc.h[1]
            if pc.nonsingular:
                assert pc.stratum_dim == pc.h[1]


def test_klein_four_point_is_irreducible_but_singular():
    rep = klein_four_representation(BundleData(SO3, 2))
    pc = classify_point(rep)
    assert str(pc.label) == "(V)" and pc.irreducible
    assert pc.h == (0, 6, 0)
    assert not pc.nonsingular and not pc.top
    assert all(np.allclose(op @ op, np.eye(6), atol=1e-12) for op in pc.action.finite)


def test_stabilizer_and_irreducibility(su2_irreducible):
    assert is_representation_irreducible(su2_irreducible)
    trivial = Representation(BundleData(SU2, 2), [np.eye(2)] * 4)
    assert stabilizer(trivial).algebra.shape[0] == 3
    assert not is_representation_irreducible(trivial)


def test_su2_census_finds_three_strata():
    rep = census(BundleData(SU2, 2), 20, SolverConfig(seed=1), density_trials=5, volume=False)
    assert set(rep.labels) == {"(Z)", "(T)", "(SU2)"}
    assert rep.label_dims() == {"(Z)": [6], "(T)": [4], "(SU2)": [0]}
    assert rep.labels["(SU2)"]["count"] == 16
    assert rep.top_label == "(Z)"
    for lab in ("(T)", "(SU2)"):
        assert rep.density[lab]["landed_top"] == 5


def test_census_is_deterministic_and_thread_invariant():
    b = BundleData(SU2, 2)
    a = census(b, 12, SolverConfig(seed=3), density_trials=3, volume=True).as_dict()
    c = census(b, 12, SolverConfig(seed=3), density_trials=3, volume=True, threads=3).as_dict()
    assert a == c
    assert a["volume_indicator"]["rigorous"] is False


def test_empty_census():
    rep = census(BundleData(SU2, 2), 0)
    assert rep.labels == {} and rep.converged == 0


def test_odd_u2_census_has_one_stratum():
    rep = census(BundleData(U2, 2, -np.eye(2)), 15, SolverConfig(seed=2), density_trials=0, volume=False)
    assert list(rep.labels) == ["(S1)"]
    assert rep.labels["(S1)"]["nonsingular_count"] == rep.converged


def test_o2_census_has_finite_stabilizers():
    rep = census(make_bundle(O2, 2), 10, SolverConfig(seed=2), density_trials=0, volume=False)
    assert all(v["stabilizer_dim"] == 0 for v in rep.labels.values())
    assert rep.labels[rep.top_label]["h1"] == [2]


def test_census_without_top_points_uses_fallback_rule():
    # genus one SU(2): every point is reducible
    rep = census(BundleData(SU2, 1), 10, SolverConfig(seed=0), density_trials=0, volume=False)
    assert rep.top_rule == "heuristic-minimal-nonsingular-label"
    assert rep.top_label == "(T)"


@pytest.mark.parametrize("spec", [SO3, O3])
def test_lower_strata_appear_in_census(spec):
    rep = census(make_bundle(spec, 2), 5, SolverConfig(seed=4), density_trials=0, volume=False)
    assert len(rep.labels) >= 2
