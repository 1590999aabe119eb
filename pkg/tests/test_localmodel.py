import numpy as np
import pytest

from conftest import cone_directions, torus_point
from ymstrata.errors import DegenerateForm
from ymstrata.liegroup import SU2, InnerProduct, adjoint_operator, exp, torus
from ymstrata.localmodel import (
    cone_consistency,
    cup_matrix,
    cup_pair,
    h2_action,
    moment,
    prefix_operators,
    quadratic_moment,
    symplectic_form,
)
from ymstrata.surface import BundleData, cohomology, differentials, prefix_data, presentation
from ymstrata.variety import SolverConfig, solve


def test_prefix_increments_sum_to_d1(su2_irreducible):
    _, S = prefix_operators(su2_irreducible)
    _, d1 = differentials(su2_irreducible)
    np.testing.assert_allclose(S.sum(axis=0), d1, atol=1e-13)


def test_cup_pair_matches_prefix_data_oracle(su2_irreducible, rng):
    rep = su2_irreducible
    u, v = rng.standard_normal((2, 12))
    word = presentation(2).relator
    values, _ = prefix_data(rep, u, word)
    _, steps = prefix_data(rep, v, word)
    assert cup_pair(rep, u, v) == pytest.approx(float(np.sum(values * steps)), abs=1e-12)
    br = sum(SU2.bracket(a, b) for a, b in zip(values, steps))
    np.testing.assert_allclose(cup_pair(rep, u, v, pairing="bracket"), br, atol=1e-12)
    with pytest.raises(ValueError):
        cup_pair(rep, u, v, pairing="wedge")


def test_form_is_antisymmetric_and_nondegenerate(su2_irreducible):
    form = symplectic_form(su2_irreducible)
    assert np.linalg.norm(form.matrix + form.matrix.T) < 1e-12
    assert form.is_nondegenerate()
    assert form.matrix.shape == (6, 6)


def test_form_scales_with_inner_product(su2_irreducible):
    a = symplectic_form(su2_irreducible).singular_values
    b = symplectic_form(su2_irreducible, InnerProduct(3.0)).singular_values
    np.testing.assert_allclose(b, 3.0 * a, atol=1e-12)


def test_form_singular_values_are_conjugation_invariant(su2_irreducible, rng):
    a = symplectic_form(su2_irreducible).singular_values
    b = symplectic_form(su2_irreducible.conjugate(SU2.random_element(rng))).singular_values
    np.testing.assert_allclose(a, b, atol=1e-12)


def test_coboundaries_pair_trivially(su2_irreducible, rng):
    co = cohomology(su2_irreducible)
    xi = co.d0 @ rng.standard_normal(3)
    U = np.column_stack([xi, co.harmonic1])
    C = cup_matrix(su2_irreducible, U)
    antisym = 0.5 * (C - C.T)
    assert np.abs(antisym[0]).max() < 1e-12


def test_circle_reproduces_intersection_form():
    rep = solve(BundleData(torus(1), 2), SolverConfig(seed=0))
    form = symplectic_form(rep)
    J = np.kron(np.eye(2), np.array([[0.0, 1.0], [-1.0, 0.0]]))
    H = form.basis
    np.testing.assert_allclose(H @ form.matrix @ H.T, J, atol=1e-12)


def test_moment_is_quadratic_and_matches_tensor(rng):
    rep = torus_point()
    co = cohomology(rep)
    Q = quadratic_moment(rep, co)
    eta = rng.standard_normal(co.h1)
    np.testing.assert_allclose(Q(eta), moment(rep, eta, co), atol=1e-13)
    for t in (-2.0, 0.5, 3.0):
        np.testing.assert_allclose(moment(rep, t * eta, co), t**2 * moment(rep, eta, co), atol=1e-13)


def test_moment_vanishes_without_h2(su2_irreducible, rng):
    assert moment(su2_irreducible, rng.standard_normal(6)).shape == (0,)


def test_moment_is_stabilizer_equivariant(rng):
    rep = torus_point()
    co = cohomology(rep)
    z = exp(SU2, 0.8 * np.array([0.0, 0.0, 1.0]))
    assert np.allclose(z @ rep.holonomies[0], rep.holonomies[0] @ z)
    H = co.harmonic1
    op = H.T @ np.kron(np.eye(4), adjoint_operator(SU2, z)) @ H
    eta = rng.standard_normal(co.h1)
    np.testing.assert_allclose(moment(rep, op @ eta, co), h2_action(rep, z, co) @ moment(rep, eta, co), atol=1e-12)


def test_cone_slopes_separate_null_and_non_null_directions():
    rep = torus_point()
    co = cohomology(rep)
    null, positive = cone_directions(rep, co)
    a, b = cone_consistency(rep, null, co=co), cone_consistency(rep, positive, co=co)
    assert a.theta_norm < 1e-12 and a.slope_plain < 2.2 and a.slope_corrected > 2.9
    assert b.theta_norm > 0.1 and b.best_slope < 2.2


def test_cone_at_irreducible_point_is_flat_to_second_order(su2_irreducible, rng):
    rep = cone_consistency(su2_irreducible, rng.standard_normal(6))
    assert rep.obstruction < 1e-12
    assert rep.slope_corrected > 2.9


def test_degenerate_form_is_reported_only_at_nonsingular_points(su2_irreducible, monkeypatch):
    from ymstrata import localmodel

    monkeypatch.setattr(localmodel.SymplecticForm, "is_nondegenerate", lambda self: False)
    with pytest.raises(DegenerateForm):
        symplectic_form(su2_irreducible)
    # the trivial point is singular, so degeneracy there is expected
    trivial = su2_irreducible.with_holonomies(np.array([np.eye(2)] * 4), check=True)
    assert symplectic_form(trivial).matrix.shape == (12, 12)
