import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st
from scipy.spatial.transform import Rotation

from conftest import ALL_SPECS
from ymstrata import tolerances
from ymstrata.errors import BranchCut, InvalidData, SingularProjection, UnsupportedGroup
from ymstrata.liegroup import (
    O2,
    O3,
    SO3,
    SU2,
    U2,
    InnerProduct,
    adjoint_operator,
    centralizer,
    exp,
    group_from_name,
    label_vocabulary,
    log,
    project_to_group,
    torus,
)

coords = st.lists(st.floats(-1.0, 1.0), min_size=4, max_size=4)


def rz(a):
    return Rotation.from_rotvec([0, 0, a]).as_matrix()


def rx(a):
    return Rotation.from_rotvec([a, 0, 0]).as_matrix()


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.name)
def test_basis_is_orthonormal_for_trace_form(spec):
    B = spec.basis
    gram = -np.real(np.einsum("aij,bji->ab", B, B))
    np.testing.assert_allclose(gram, np.eye(spec.algebra_dim), atol=1e-14)
    for X in B:
        assert spec.in_algebra(X)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.name)
@given(c=coords)
def test_exp_log_round_trip(spec, c):
    x = np.array(c[: spec.algebra_dim])
    g = exp(spec, x)
    assert spec.is_member(g)
    np.testing.assert_allclose(spec.to_coords(spec.to_matrix(x)), x, atol=1e-14)
    np.testing.assert_allclose(log(spec, g), x, atol=1e-10)


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.name)
def test_adjoint_is_an_orthogonal_homomorphism(spec, rng):
    g, h = spec.random_element(rng), spec.random_element(rng)
    A = adjoint_operator(spec, g)
    np.testing.assert_allclose(A.T @ A, np.eye(spec.algebra_dim), atol=1e-12)
    np.testing.assert_allclose(
        adjoint_operator(spec, g @ h), A @ adjoint_operator(spec, h), atol=1e-12
    )


@pytest.mark.parametrize("spec", [SU2, SO3, U2, O3], ids=lambda s: s.name)
def test_bracket_is_the_matrix_commutator(spec, rng):
    x, y = rng.standard_normal((2, spec.algebra_dim))
    X, Y = spec.to_matrix(x), spec.to_matrix(y)
    np.testing.assert_allclose(spec.to_matrix(spec.bracket(x, y)), X @ Y - Y @ X, atol=1e-12)


def test_log_branch_cut_and_wrong_component():
    with pytest.raises(BranchCut):
        log(SU2, -np.eye(2, dtype=complex))
    with pytest.raises(BranchCut):
        log(SO3, rz(np.pi))
    with pytest.raises(InvalidData):
        log(O2, np.diag([1.0, -1.0]))


@pytest.mark.parametrize("spec", ALL_SPECS, ids=lambda s: s.name)
def test_projection_is_idempotent_on_perturbed_elements(spec, rng):
    g = spec.random_element(rng)
    noisy = g + 1e-3 * rng.standard_normal(g.shape)
    p = project_to_group(noisy, spec)
    assert spec.is_member(p)
    np.testing.assert_allclose(project_to_group(p, spec), p, atol=1e-13)
    assert np.linalg.norm(p - g) < 1e-2


def test_projection_rejects_singular_input():
    with pytest.raises(SingularProjection):
        project_to_group(np.zeros((3, 3)), SO3)


def test_random_elements_land_in_requested_component(rng):
    for spec in (O2, O3):
        assert spec.component(spec.random_element(rng, component=-1)) == -1
        assert spec.component(spec.random_element(rng, component=1)) == 1


def test_inner_product_scale():
    ip = InnerProduct(2.5)
    x, y = np.array([1.0, 2.0, 0.5]), np.array([-1.0, 0.0, 3.0])
    assert ip(x, y) == pytest.approx(2.5 * x @ y)
    assert ip.on_matrices(SU2.to_matrix(x), SU2.to_matrix(y)) == pytest.approx(ip(x, y))
    with pytest.raises(ValueError):
        InnerProduct(0.0)


@pytest.mark.parametrize(
    "name,expected",
    [("SU2", "SU2"), ("SO(3)", "SO3"), ("u2", "U2"), ("T2", "T2"), ("Torus(1)", "T1"), ("TorusK(3)", "T3")],
)
def test_group_names(name, expected):
    assert group_from_name(name).name == expected


def test_unknown_group_name():
    with pytest.raises(UnsupportedGroup):
        group_from_name("Sp(4)")


# centralizer decision trees on hand-built sets with known centralizers
CASES = [
    (SU2, [np.eye(2)], "(SU2)"),
    (SU2, [np.diag([1j, -1j])], "(T)"),
    (SU2, [np.diag([1j, -1j]), np.array([[0, 1], [-1, 0]], dtype=complex)], "(Z)"),
    (SO3, [np.eye(3)], "(SO3)"),
    (SO3, [rz(0.4)], "(SO2)"),
    (SO3, [rz(np.pi)], "(O2)"),
    (SO3, [rz(np.pi), rx(np.pi)], "(V)"),
    (SO3, [rz(np.pi), rx(0.7)], "(Z2)"),
    (SO3, [rz(0.3), rx(0.7)], "(e)"),
    (U2, [1j * np.eye(2)], "(U2)"),
    (U2, [np.diag([1j, 1])], "(T2)"),
    (O2, [-np.eye(2)], "(O2)"),
    (O2, [rz(0.5)[:2, :2]], "(SO2)"),
    (O2, [np.diag([1.0, -1.0])], "(V)"),
    (O2, [np.diag([1.0, -1.0]), rz(0.5)[:2, :2]], "(Z2)"),
    (O3, [-rz(0.4)], "(SO2)x(Z2)"),
    (O3, [-rz(0.3), rx(0.7)], "(e)x(Z2)"),
    (torus(3), [np.eye(3)], "(T^3)"),
]


@pytest.mark.parametrize("spec,elements,label", CASES, ids=[c[2] + c[0].name for c in CASES])
def test_centralizer_labels(spec, elements, label):
    cz = centralizer(spec, [np.asarray(e, dtype=spec.dtype) for e in elements])
    assert str(cz.label) == label
    assert cz.label in label_vocabulary(spec)
    for z in cz.generators:
        for g in elements:
            assert np.allclose(z @ g, g @ z, atol=1e-10)
    for zeta in cz.algebra:
        Z = spec.to_matrix(zeta)
        for g in elements:
            assert np.allclose(Z @ g, g @ Z, atol=1e-10)


def test_centralizer_is_conjugation_invariant(rng):
    base = [rz(np.pi), rx(0.7)]
    h = SO3.random_element(rng)
    moved = [h @ e @ h.T for e in base]
    assert centralizer(SO3, base).label == centralizer(SO3, moved).label


def test_label_vocabulary_is_sorted_by_stabilizer_size():
    for spec in (SU2, SO3, U2, O2, O3):
        labels = label_vocabulary(spec)
        assert labels == sorted(labels)
        assert labels[-1].identity_dim == spec.algebra_dim


def test_tolerance_override_is_scoped():
    base = tolerances.get()
    with tolerances.override(rank=1e-6) as t:
        assert t.rank == 1e-6 and tolerances.get().rank == 1e-6
    assert tolerances.get() == base
    with pytest.raises(KeyError):
        with tolerances.override(bogus=1.0):
            pass
