"""Points of the representation variety: solving, perturbing, covering maps.

``solve`` is a Gauss-Newton iteration on the right-translated relator
residual.  Its Jacobian is the coboundary ``d1`` from ``surface``; the
update moves each holonomy by an additive tangent step and retracts with
``project_to_group``.
"""

from __future__ import annotations

import itertools
import logging
from dataclasses import dataclass

import numpy as np
from scipy.spatial.transform import Rotation

from . import tolerances
from .errors import BranchCut, InvalidData, NoConvergence
from ._linalg import null_space, range_space
from .liegroup import O2, O3, SO3, SU2, U2, adjoint_operator, exp, log, project_to_group
from .surface import BundleData, Representation, differentials, relator_value, residual

log_ = logging.getLogger(__name__)

_PAULI = np.array([[[0, 1], [1, 0]], [[0, -1j], [1j, 0]], [[1, 0], [0, -1]]], dtype=complex)


@dataclass(frozen=True)
class SolverConfig:
    max_iters: int = 500
    residual_target: float = 1e-12
    seed: int = 0
    max_halvings: int = 30

    def __post_init__(self):
        if not self.residual_target < tolerances.get().rep:
            raise ValueError("residual_target must be below the representation tolerance")


def random_holonomies(bundle, rng):
    spec = bundle.spec
    return np.array([spec.random_element(rng, component=c) for c in bundle.components])


def _residual_vector(spec, M):
    try:
        return log(spec, M)
    except BranchCut:
        return spec.to_coords(M - np.eye(len(M)))


def _retract(spec, hol, step):
    X = spec.to_matrix(step.reshape(len(hol), -1))
    return np.array([project_to_group(g + x @ g, spec) for g, x in zip(hol, X)])


def _gradient(spec, M, d1):
    # gradient of ||M - I||_F^2 under left translation rho_i -> exp(u_i) rho_i
    E = M @ (M - np.eye(len(M))).conj().T
    g = 2.0 * np.real(np.einsum("ij,aji->a", E, spec.basis))
    return d1.T @ g


def solve(bundle, cfg=None, initial=None):
    """Find a representation of ``bundle`` near ``initial`` (or a seeded random draw).

    Raises ``NoConvergence`` when the residual target is not met; the
    exception carries the final residual.
    """
    cfg = SolverConfig() if cfg is None else cfg
    spec = bundle.spec
    rng = np.random.default_rng(cfg.seed)
    if initial is None:
        hol = random_holonomies(bundle, rng)
    else:
        hol = np.array([project_to_group(g, spec) for g in initial])
        for i, g in enumerate(hol):
            if spec.component(g) != bundle.components[i]:
                raise InvalidData(f"initial holonomy {i} lies in the wrong component")
    c_inv = bundle.central.conj().T
    rep = Representation(bundle, hol, check=False)
    res = residual(rep)
    for it in range(cfg.max_iters):
        if res <= cfg.residual_target:
            return Representation(bundle, rep.holonomies)
        M = relator_value(rep) @ c_inv
        _, d1 = differentials(rep)
        r = _residual_vector(spec, M)
        step, *_ = np.linalg.lstsq(d1, -r, rcond=None)
        accepted = _line_search(rep, step, res, cfg)
        if accepted is None:
            grad = _gradient(spec, M, d1)
            nrm = np.linalg.norm(grad)
            if nrm > 0:
                accepted = _line_search(rep, -grad * (res / nrm**2 if res > 0 else 1.0), res, cfg)
        if accepted is None:
            log_.debug("solver stalled at iteration %d, residual %.3e", it, res)
            raise NoConvergence(res, it)
        rep, res = accepted
    if res <= cfg.residual_target:
        return Representation(bundle, rep.holonomies)
    raise NoConvergence(res, cfg.max_iters)


def _line_search(rep, step, res, cfg):
    t = 1.0
    for _ in range(cfg.max_halvings):
        cand = rep.with_holonomies(_retract(rep.spec, rep.holonomies, t * step))
        r = residual(cand)
        if r < res:
            return cand, r
        t *= 0.5
    return None


def tangent_perturb(rep, magnitude, seed, subspace=None, cfg=None):
    """Move along a random cocycle direction and re-solve onto the variety.

    ``subspace`` optionally restricts the direction to the span of the
    given cochain columns (projected into ker d1).
    """
    if magnitude == 0:
        return rep
    rng = np.random.default_rng(seed)
    spec = rep.spec
    _, d1 = differentials(rep)
    kernel = null_space(d1)
    if subspace is not None:
        S = kernel @ (kernel.T @ np.asarray(subspace, dtype=float))
        kernel = range_space(S, strict=False)
    if kernel.shape[1] == 0:
        return rep
    u = kernel @ rng.standard_normal(kernel.shape[1])
    u *= magnitude / np.linalg.norm(u)
    U = u.reshape(len(rep.holonomies), spec.algebra_dim)
    moved = np.array([exp(spec, U[i]) @ g for i, g in enumerate(rep.holonomies)])
    cfg = cfg or SolverConfig(seed=seed)
    return solve(rep.bundle, cfg, initial=moved)


# --------------------------------------------------------------------------
# covering SU(2) -> SO(3), lifts, and U(2) -> SO(3)


def project_su2_so3(rep):
    if rep.spec != SU2:
        raise InvalidData("expected an SU(2) representation")
    if not SU2.is_central(rep.bundle.central):
        raise InvalidData("central target must be +-I")
    hol = np.array([adjoint_operator(SU2, g) for g in rep.holonomies])
    return Representation(BundleData(SO3, rep.genus), hol)


def su2_lift(R):
    """One of the two SU(2) preimages of a rotation matrix."""
    x, y, z, w = Rotation.from_matrix(R).as_quat()
    return w * np.eye(2) - 1j * (x * _PAULI[0] + y * _PAULI[1] + z * _PAULI[2])


def lift_so3_su2(rep):
    """All ``2^(2l)`` sign-twisted SU(2) lifts and their common central target."""
    if rep.spec != SO3:
        raise InvalidData("expected an SO(3) representation")
    base = np.array([su2_lift(R) for R in rep.holonomies])
    mu = relator_value(Representation(BundleData(SU2, rep.genus), base, check=False))
    c = np.eye(2) if np.linalg.norm(mu - np.eye(2)) < np.linalg.norm(mu + np.eye(2)) else -np.eye(2)
    bundle = BundleData(SU2, rep.genus, c.astype(complex))
    lifts = []
    for signs in itertools.product((1, -1), repeat=2 * rep.genus):
        hol = base * np.array(signs)[:, None, None]
        lifts.append(Representation(bundle, hol))
    return lifts, bundle.central


def so3_bundle_type(rep):
    """+1 for the trivial SO(3) bundle, -1 for the non-trivial one (via the lift)."""
    base = np.array([su2_lift(R) for R in rep.holonomies])
    mu = relator_value(Representation(BundleData(SU2, rep.genus), base, check=False))
    return 1 if np.real(np.trace(mu)) > 0 else -1


def u2_to_so3(g):
    """Image of a U(2) element in U(2)/S^1 = SO(3)."""
    return adjoint_operator(U2, g)[:3, :3]


def quotient_by_central_torus(rep):
    if rep.spec != U2:
        raise InvalidData("expected a U(2) representation")
    hol = np.array([u2_to_so3(g) for g in rep.holonomies])
    return Representation(BundleData(SO3, rep.genus), hol)


def central_twist(rep, angles):
    """Multiply each holonomy by the scalar ``exp(i angle_j)``."""
    angles = np.asarray(angles, dtype=float)
    hol = rep.holonomies * np.exp(1j * angles)[:, None, None]
    return Representation(rep.bundle, hol)


def embed_su2_u2(rep, central=None):
    c = rep.bundle.central if central is None else central
    return Representation(BundleData(U2, rep.genus, c), rep.holonomies)


# --------------------------------------------------------------------------
# explicit constructions used to seed lower strata


def pauli_pair():
    """``(i sigma_x, i sigma_y)``: commutator -I in SU(2)."""
    return 1j * _PAULI[0], 1j * _PAULI[1]


def torus_representation(bundle, angles):
    """Diagonal representation with the given torus angles (SU(2)/U(2)/SO(3))."""
    spec = bundle.spec
    angles = np.asarray(angles, dtype=float)
    if spec == SU2:
        hol = [np.diag([np.exp(1j * a), np.exp(-1j * a)]) for a in angles]
    elif spec == U2:
        hol = [np.diag([np.exp(1j * a), np.exp(1j * b)]) for a, b in angles.reshape(-1, 2)]
    elif spec == SO3:
        hol = [Rotation.from_rotvec([0, 0, a]).as_matrix() for a in angles]
    else:
        raise InvalidData(f"no torus construction for {spec.name}")
    return Representation(bundle, np.array(hol))


def central_representations(bundle):
    """All representations of an SU(2) bundle with values in {+-I}."""
    if bundle.spec != SU2 or not bundle.is_flat:
        raise InvalidData("central representations need the flat SU(2) bundle")
    out = []
    for signs in itertools.product((1, -1), repeat=2 * bundle.genus):
        hol = np.array([s * np.eye(2, dtype=complex) for s in signs])
        out.append(Representation(bundle, hol))
    return out


def klein_four_representation(bundle):
    """x1 -> diag(1,-1,-1), y1 -> diag(-1,1,-1), everything else -> I (SO(3))."""
    if bundle.spec != SO3:
        raise InvalidData("the Klein four construction is in SO(3)")
    hol = [np.eye(3) for _ in range(2 * bundle.genus)]
    hol[0] = np.diag([1.0, -1.0, -1.0])
    hol[1] = np.diag([-1.0, 1.0, -1.0])
    return Representation(bundle, np.array(hol))


def targeted_samples(bundle, seed=0):
    """Hand-built points in the known lower strata of ``bundle``.

    Returns ``(name, Representation)`` pairs.  Random solves land in the
    open stratum with probability one, so censuses add these to make the
    lower strata visible.
    """
    spec = bundle.spec
    rng = np.random.default_rng(seed)
    ell = bundle.genus
    out = []
    if spec == SU2 and bundle.is_flat:
        for k, rep in enumerate(central_representations(bundle)):
            out.append((f"central-{k}", rep))
        for k in range(3):
            out.append((f"torus-{k}", torus_representation(bundle, rng.uniform(0.2, 3.0, 2 * ell))))
    elif spec == SO3:
        out.append(("trivial", Representation(bundle, np.array([np.eye(3)] * (2 * ell)))))
        for k in range(2):
            out.append((f"circle-{k}", torus_representation(bundle, rng.uniform(0.2, 3.0, 2 * ell))))
        half = np.diag([-1.0, -1.0, 1.0])
        out.append(("half-turns", Representation(bundle, np.array([half] + [np.eye(3)] * (2 * ell - 1)))))
        out.append(("klein-four", klein_four_representation(bundle)))
    elif spec == U2:
        if bundle.is_flat:
            scalars = np.exp(1j * rng.uniform(-np.pi, np.pi, 2 * ell))
            out.append(("central", Representation(bundle, scalars[:, None, None] * np.eye(2))))
            out.append(("torus", torus_representation(bundle, rng.uniform(0.2, 3.0, 4 * ell))))
    elif spec == O2:
        out.append(("klein-four", _o2_klein(bundle)))
    elif spec == O3:
        signs = np.array(bundle.components, dtype=float)[:, None, None]
        triv = np.array([np.eye(3)] * (2 * ell)) * signs
        out.append(("trivial", Representation(bundle, triv)))
        circle = torus_representation(BundleData(SO3, ell), rng.uniform(0.2, 3.0, 2 * ell))
        out.append(("circle", Representation(bundle, circle.holonomies * signs)))
    return out


def _o2_klein(bundle):
    F = np.diag([1.0, -1.0])
    hol = [F if p == -1 else np.eye(2) for p in bundle.components]
    return Representation(bundle, np.array(hol))
