"""Quadratic local model: cup pairings, symplectic form, moment map, cone test.

All pairings are evaluated on the 2-cell of the surface: for the relator
``a_1 ... a_m`` with prefixes ``p_t``,

    cup(u, v) = sum_t  P( u(p_{t-1}),  Ad(rho(p_{t-1})) v(a_t) )

where ``P`` is either the invariant inner product (real valued) or the
Lie bracket (algebra valued).  The raw cochain-level pairing is not
antisymmetric; the symplectic form is its antisymmetrization, and the
moment map is half the bracket pairing of a class with itself, projected
onto the harmonic part of H^2.

Sign convention: for the circle group in genus 1 the cochains dual to
``x1`` and ``y1`` pair to ``+scale``.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from . import tolerances
from .errors import DegenerateForm
from .liegroup import InnerProduct, adjoint_operator, adjoint_operators, exp
from .surface import cohomology, differentials, presentation, relator_value


@lru_cache(maxsize=None)
def structure_constants(spec):
    """``f[a, b, c]``: c-th coordinate of ``[e_a, e_b]``."""
    dim = spec.algebra_dim
    E = np.eye(dim)
    return np.array([[spec.bracket(E[a], E[b]) for b in range(dim)] for a in range(dim)])


def prefix_operators(rep):
    """Linear maps ``V_t: u -> u(p_{t-1})`` and ``S_t: v -> Ad(p_{t-1}) v(a_t)``.

    Shapes ``(m, dim, 2l*dim)``; ``sum_t S_t`` is ``d1``.
    """
    spec = rep.spec
    dim = spec.algebra_dim
    word = presentation(rep.genus).relator
    adj = adjoint_operators(spec, rep.holonomies)
    N = len(rep.holonomies) * dim
    V = np.zeros((len(word), dim, N))
    S = np.zeros((len(word), dim, N))
    prefix = np.eye(dim)
    acc = np.zeros((dim, N))
    for t, (i, e) in enumerate(word):
        V[t] = acc
        sl = slice(i * dim, (i + 1) * dim)
        if e == 1:
            S[t, :, sl] = prefix
            prefix = prefix @ adj[i]
        else:
            prefix = prefix @ adj[i].T
            S[t, :, sl] = -prefix
        acc = acc + S[t]
    return V, S


def cup_pair(rep, u, v, pairing="inner", inner=None, _ops=None):
    """Cup pairing of two 1-cochains (flat or shaped ``(2l, dim)``)."""
    inner = InnerProduct() if inner is None else inner
    V, S = prefix_operators(rep) if _ops is None else _ops
    u = np.asarray(u, dtype=float).ravel()
    v = np.asarray(v, dtype=float).ravel()
    a = V @ u
    b = S @ v
    if pairing == "inner":
        return inner.scale * float(np.sum(a * b))
    if pairing == "bracket":
        f = structure_constants(rep.spec)
        return np.einsum("ta,tb,abc->c", a, b, f)
    raise ValueError(f"unknown pairing {pairing!r}")


def cup_matrix(rep, U, W=None, inner=None, _ops=None):
    """``C[i, j] = cup(U[:, i], W[:, j])`` for the inner-product pairing."""
    inner = InnerProduct() if inner is None else inner
    V, S = prefix_operators(rep) if _ops is None else _ops
    W = U if W is None else W
    return inner.scale * np.einsum("tai,taj->ij", V @ U, S @ W)


@dataclass
class SymplecticForm:
    matrix: np.ndarray         # antisymmetric, on harmonic1 coordinates
    basis: np.ndarray          # harmonic1 columns
    symmetric_defect: float    # norm of the symmetric part of the raw pairing
    scale: float

    @property
    def singular_values(self):
        return np.linalg.svd(self.matrix, compute_uv=False)

    def is_nondegenerate(self):
        s = self.singular_values
        if len(s) == 0:
            return True
        return s[-1] > tolerances.get().rank * s[0]

    def restricted(self, subspace):
        """Form restricted to the span of ``subspace`` (columns in harmonic1 coordinates)."""
        return subspace.T @ self.matrix @ subspace


def symplectic_form(rep, inner=None, co=None, check=True):
    inner = InnerProduct() if inner is None else inner
    co = cohomology(rep) if co is None else co
    H = co.harmonic1
    C = cup_matrix(rep, H, inner=inner)
    omega = 0.5 * (C - C.T)
    form = SymplecticForm(omega, H, float(np.linalg.norm(0.5 * (C + C.T))), inner.scale)
    if check and not form.is_nondegenerate():
        from .strata import classify_point

        if classify_point(rep).nonsingular:
            raise DegenerateForm(
                f"pairing degenerate at a non-singular point (singular values {form.singular_values})"
            )
    return form


@dataclass
class QuadraticMoment:
    tensor: np.ndarray      # (h2, h1, h1), symmetric in the last two slots
    harmonic1: np.ndarray
    harmonic2: np.ndarray

    def __call__(self, eta):
        eta = np.asarray(eta, dtype=float)
        return 0.5 * np.einsum("kij,i,j->k", self.tensor, eta, eta)


def quadratic_moment(rep, co=None):
    co = cohomology(rep) if co is None else co
    H1, H2 = co.harmonic1, co.harmonic2
    h1, h2 = H1.shape[1], H2.shape[1]
    if h1 == 0 or h2 == 0:
        return QuadraticMoment(np.zeros((h2, h1, h1)), H1, H2)
    V, S = prefix_operators(rep)
    f = structure_constants(rep.spec)
    raw = np.einsum("tai,tbj,abc->cij", V @ H1, S @ H1, f)
    B = np.einsum("ck,cij->kij", H2, raw)
    return QuadraticMoment(0.5 * (B + np.swapaxes(B, 1, 2)), H1, H2)


def moment(rep, eta, co=None):
    """Moment map value in harmonic2 coordinates for ``eta`` in harmonic1 coordinates."""
    co = cohomology(rep) if co is None else co
    if co.h2 == 0 or co.h1 == 0:
        return np.zeros(co.h2)
    u = co.harmonic1 @ np.asarray(eta, dtype=float)
    q = cup_pair(rep, u, u, pairing="bracket")
    return 0.5 * co.harmonic2.T @ q


def h2_action(rep, z, co=None):
    """Action of a stabilizer element on harmonic2 coordinates."""
    co = cohomology(rep) if co is None else co
    return co.harmonic2.T @ adjoint_operator(rep.spec, z) @ co.harmonic2


@dataclass
class ConeReport:
    s_values: np.ndarray
    plain: np.ndarray
    corrected: np.ndarray
    slope_plain: float
    slope_corrected: float
    theta_norm: float
    obstruction: float       # least-squares residual of d1 beta = -q

    @property
    def best_slope(self):
        return max(self.slope_plain, self.slope_corrected)


def _fit_slope(s, r, floor=1e-14):
    keep = r > floor
    if keep.sum() < 2:
        return np.inf
    return float(np.polyfit(np.log(s[keep]), np.log(r[keep]), 1)[0])


def _curve_residual(rep, X, base_inv):
    spec = rep.spec
    hol = np.array([exp(spec, x) @ g for x, g in zip(X, rep.holonomies)])
    mu = relator_value(rep.with_holonomies(hol))
    return float(np.linalg.norm(mu @ base_inv - np.eye(len(mu))))


def cone_consistency(rep, eta, correction=True, s_values=None, co=None):
    """Order of contact between the variety and the curve ``exp(s eta) rho``.

    The residual is measured relative to the relator value at the base
    point, so solver error at ``rho`` does not enter the fit.
    """
    spec = rep.spec
    co = cohomology(rep) if co is None else co
    s_values = np.logspace(-2, -4, 9) if s_values is None else np.asarray(s_values, dtype=float)
    n, dim = len(rep.holonomies), spec.algebra_dim
    u = co.harmonic1 @ np.asarray(eta, dtype=float)
    q = cup_pair(rep, u, u, pairing="bracket")
    _, d1 = differentials(rep)
    beta, *_ = np.linalg.lstsq(d1, -q, rcond=None)
    obstruction = float(np.linalg.norm(d1 @ beta + q))
    base_inv = relator_value(rep).conj().T
    U, Bt = u.reshape(n, dim), beta.reshape(n, dim)
    plain = np.array([_curve_residual(rep, s * U, base_inv) for s in s_values])
    if correction:
        corr = np.array([_curve_residual(rep, s * U + 0.5 * s**2 * Bt, base_inv) for s in s_values])
    else:
        corr = plain.copy()
    theta = moment(rep, eta, co)
    return ConeReport(
        s_values=s_values,
        plain=plain,
        corrected=corr,
        slope_plain=_fit_slope(s_values, plain),
        slope_corrected=_fit_slope(s_values, corr),
        theta_norm=float(np.linalg.norm(theta)),
        obstruction=obstruction,
    )
