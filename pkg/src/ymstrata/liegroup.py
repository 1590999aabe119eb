"""Compact matrix groups, their Lie algebras and centralizers.

Supported families are SU(2), SO(3), U(2), O(2), O(3) and diagonal tori
T^k.  Group elements are plain square ``numpy`` arrays.  Lie algebra
elements are carried as real coordinate vectors in a fixed basis of the
algebra (``GroupSpec.basis``) which is orthonormal for the invariant
inner product ``<X, Y> = -Re tr(XY)``:

    su(2)   i*sigma_x/sqrt2, i*sigma_y/sqrt2, i*sigma_z/sqrt2
    so(3)   L_x/sqrt2, L_y/sqrt2, L_z/sqrt2   with (L_a)_bc = -eps_abc
    u(2)    the su(2) basis followed by i*I/sqrt2
    so(2)   [[0, -1], [1, 0]]/sqrt2
    t^k     i*E_jj, j = 1..k

With these choices the adjoint matrix of an SO(3) element is the element
itself, and the adjoint matrix of an SU(2) element is its image under the
double cover SU(2) -> SO(3).
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from functools import lru_cache

import numpy as np
import scipy.linalg

from . import tolerances
from ._linalg import null_space
from .errors import BranchCut, InvalidData, RankAmbiguity, SingularProjection, UnsupportedGroup

FAMILIES = ("SU2", "SO3", "U2", "O2", "O3", "T")

_SIGMA = np.array(
    [
        [[0, 1], [1, 0]],
        [[0, -1j], [1j, 0]],
        [[1, 0], [0, -1]],
    ],
    dtype=complex,
)


def _so3_generators():
    L = np.zeros((3, 3, 3))
    for a in range(3):
        for b in range(3):
            for c in range(3):
                L[a, b, c] = -_levi_civita(a, b, c)
    return L


def _levi_civita(a, b, c):
    return (a - b) * (b - c) * (c - a) / 2


@lru_cache(maxsize=None)
def _basis(family, k):
    r2 = np.sqrt(2.0)
    if family == "SU2":
        return 1j * _SIGMA / r2
    if family in ("SO3", "O3"):
        return _so3_generators() / r2
    if family == "U2":
        return np.concatenate([1j * _SIGMA, 1j * np.eye(2)[None]]) / r2
    if family == "O2":
        return np.array([[[0.0, -1.0], [1.0, 0.0]]]) / r2
    if family == "T":
        B = np.zeros((k, k, k), dtype=complex)
        for j in range(k):
            B[j, j, j] = 1j
        return B
    raise UnsupportedGroup(family)


@dataclass(frozen=True)
class GroupSpec:
    """One of the supported compact matrix groups.

    ``k`` is only meaningful for the torus family ``"T"``.
    """

    family: str
    k: int = 0

    def __post_init__(self):
        if self.family not in FAMILIES:
            raise UnsupportedGroup(f"unknown group family {self.family!r}")
        if self.family == "T" and self.k < 1:
            raise UnsupportedGroup("torus rank must be positive")
        if self.family != "T" and self.k != 0:
            raise UnsupportedGroup("only the torus family takes a rank")

    @property
    def name(self):
        return f"T{self.k}" if self.family == "T" else self.family

    def __str__(self):
        return self.name

    @property
    def matrix_size(self):
        return {"SU2": 2, "SO3": 3, "U2": 2, "O2": 2, "O3": 3}.get(self.family, self.k)

    @property
    def algebra_dim(self):
        return {"SU2": 3, "SO3": 3, "U2": 4, "O2": 1, "O3": 3}.get(self.family, self.k)

    @property
    def is_complex(self):
        return self.family in ("SU2", "U2", "T")

    @property
    def dtype(self):
        return complex if self.is_complex else float

    @property
    def connected(self):
        return self.family not in ("O2", "O3")

    @property
    def abelian(self):
        return self.family == "T"

    @property
    def center_dim(self):
        """Dimension of the Lie algebra of the centre."""
        return {"U2": 1, "T": self.k}.get(self.family, 0)

    @property
    def basis(self):
        return _basis(self.family, self.k)

    def identity(self):
        return np.eye(self.matrix_size, dtype=self.dtype)

    def to_matrix(self, x):
        x = np.asarray(x, dtype=float)
        return np.tensordot(x, self.basis, axes=(-1, 0))

    def to_coords(self, X):
        """Orthogonal projection of a matrix (or stack) onto the algebra, in coordinates."""
        X = np.asarray(X)
        return -np.real(np.einsum("...ij,bji->...b", X, self.basis))

    def _cast(self, M):
        return np.real(M) if not self.is_complex else np.asarray(M, dtype=complex)

    def is_member(self, g, tol=None):
        tol = tolerances.get().group if tol is None else tol
        g = np.asarray(g)
        n = self.matrix_size
        if g.shape != (n, n):
            return False
        if not self.is_complex and np.max(np.abs(np.imag(g))) > tol:
            return False
        if np.linalg.norm(g.conj().T @ g - np.eye(n)) > tol:
            return False
        det = np.linalg.det(g)
        if self.family in ("SU2", "SO3"):
            return abs(det - 1) <= tol
        if self.family in ("O2", "O3"):
            return min(abs(det - 1), abs(det + 1)) <= tol
        if self.family == "T":
            return np.linalg.norm(g - np.diag(np.diag(g))) <= tol
        return True

    def check_member(self, g, what="matrix"):
        if not self.is_member(g):
            raise InvalidData(f"{what} is not an element of {self.name}")
        return self._cast(g)

    def in_algebra(self, X, tol=None):
        tol = tolerances.get().group if tol is None else tol
        X = np.asarray(X)
        return np.linalg.norm(X - self.to_matrix(self.to_coords(X))) <= tol

    def component(self, g):
        """+1 on the identity component, -1 on the other one (O(2), O(3))."""
        if self.connected:
            return 1
        return 1 if np.real(np.linalg.det(g)) > 0 else -1

    def is_central(self, g, tol=None):
        tol = tolerances.get().group if tol is None else tol
        g = np.asarray(g)
        n = self.matrix_size
        if self.family == "T":
            return self.is_member(g, tol)
        if self.family == "U2":
            lam = np.trace(g) / n
            return np.linalg.norm(g - lam * np.eye(n)) <= tol and abs(abs(lam) - 1) <= tol
        I = np.eye(n)
        if self.family == "SO3":
            return np.linalg.norm(g - I) <= tol
        return min(np.linalg.norm(g - I), np.linalg.norm(g + I)) <= tol

    def random_element(self, rng, component=1):
        """Projected Gaussian draw; not exactly Haar distributed."""
        n = self.matrix_size
        if self.family == "T":
            return np.diag(np.exp(1j * rng.uniform(-np.pi, np.pi, n)))
        M = rng.standard_normal((n, n))
        if self.is_complex:
            M = M + 1j * rng.standard_normal((n, n))
        g = project_to_group(M, self)
        if self.component(g) != component:
            flip = np.eye(n)
            flip[-1, -1] = -1.0
            g = g @ flip
        return g

    def bracket(self, x, y):
        X, Y = self.to_matrix(x), self.to_matrix(y)
        return self.to_coords(X @ Y - Y @ X)


SU2 = GroupSpec("SU2")
SO3 = GroupSpec("SO3")
U2 = GroupSpec("U2")
O2 = GroupSpec("O2")
O3 = GroupSpec("O3")


def torus(k):
    return GroupSpec("T", k)


def group_from_name(name):
    """Parse names like ``SU2``, ``SO(3)``, ``T2``, ``Torus(1)``, ``TorusK(3)``."""
    key = name.strip().upper().replace("(", "").replace(")", "").replace(" ", "")
    m = re.fullmatch(r"(?:TORUSK|TORUS|T)(\d+)", key)
    if m:
        return torus(int(m.group(1)))
    if key in ("SU2", "SO3", "U2", "O2", "O3"):
        return GroupSpec(key)
    raise UnsupportedGroup(f"unknown group name {name!r}")


@dataclass(frozen=True)
class InnerProduct:
    """Ad-invariant inner product ``-scale * Re tr(XY)``.

    In the orthonormal coordinates of ``GroupSpec.basis`` this is
    ``scale`` times the Euclidean dot product.
    """

    scale: float = 1.0

    def __post_init__(self):
        if not self.scale > 0:
            raise ValueError("inner product scale must be positive")

    def __call__(self, x, y):
        return self.scale * float(np.dot(x, y))

    def on_matrices(self, X, Y):
        return -self.scale * float(np.real(np.trace(X @ Y)))


def exp(spec, x):
    """Exponential of the algebra element with coordinates ``x``."""
    x = np.asarray(x, dtype=float)
    if spec.family == "T":
        return np.diag(np.exp(1j * x))
    g = scipy.linalg.expm(spec.to_matrix(x))
    return spec._cast(g)


def log(spec, g):
    """Principal logarithm, returned in algebra coordinates.

    Raises ``BranchCut`` when an eigenvalue lies within the branch
    tolerance of -1, where the principal value jumps.
    """
    tau = tolerances.get().branch
    g = np.asarray(g)
    if spec.component(g) != 1:
        raise InvalidData("log is only defined on the identity component")
    if spec.family == "T":
        d = np.diag(g)
        if np.any(np.abs(d + 1) < tau):
            raise BranchCut("torus coordinate at -1")
        return np.angle(d)
    T, Z = scipy.linalg.schur(np.asarray(g, dtype=complex), output="complex")
    lam = np.diag(T)
    if np.any(np.abs(lam + 1) < tau):
        raise BranchCut("eigenvalue at -1: logarithm is not unique")
    L = Z @ np.diag(1j * np.angle(lam)) @ Z.conj().T
    return spec.to_coords(L)


def adjoint_operator(spec, g):
    """Matrix of Ad(g) on the algebra in the fixed orthonormal basis."""
    if spec.family == "T":
        return np.eye(spec.k)
    g = np.asarray(g)
    conj = g @ spec.basis @ g.conj().T
    return spec.to_coords(conj).T


def adjoint_operators(spec, gs):
    """Stack of adjoint matrices for a stack of elements."""
    gs = np.asarray(gs)
    if spec.family == "T":
        return np.broadcast_to(np.eye(spec.k), (len(gs), spec.k, spec.k)).copy()
    conj = np.einsum("nij,ajk,nlk->nail", gs, spec.basis, gs.conj())
    return np.swapaxes(spec.to_coords(conj), -1, -2)


def centralizer_algebra(spec, elements):
    """Orthonormal basis (rows, in coordinates) of the common fixed space of Ad(g_i)."""
    elements = list(elements)
    dim = spec.algebra_dim
    if not elements:
        return np.eye(dim)
    A = adjoint_operators(spec, np.array(elements)) - np.eye(dim)
    return null_space(A.reshape(-1, dim)).T


def project_to_group(M, spec):
    """Nearest group element via the polar factor, with det/phase correction."""
    M = np.asarray(M)
    n = spec.matrix_size
    if spec.family == "T":
        d = np.diag(M).astype(complex)
        if np.any(np.abs(d) < tolerances.get().rank * max(1.0, np.max(np.abs(d)))):
            raise SingularProjection("torus coordinate near zero")
        return np.diag(d / np.abs(d))
    if not spec.is_complex:
        M = np.real(M)
    u, s, vh = np.linalg.svd(M)
    if s[-1] <= tolerances.get().rank * s[0]:
        raise SingularProjection(f"smallest singular value {s[-1]:.3e}")
    W = u @ vh
    if spec.family == "SU2":
        W = W / np.sqrt(np.linalg.det(W))
        if np.linalg.norm(-W - M) < np.linalg.norm(W - M):
            W = -W
    elif spec.family == "SO3" and np.linalg.det(W) < 0:
        D = np.eye(n)
        D[-1, -1] = -1.0
        W = u @ D @ vh
    return W


# --------------------------------------------------------------------------
# Centralizer classification


@dataclass(frozen=True)
class OrbitTypeLabel:
    """Conjugacy class of a centralizer, for one group family.

    Ordered by identity component dimension, then order of the component
    group: smaller stabilizers sort first.
    """

    family: str
    symbol: str
    identity_dim: int
    component_order: int

    def __str__(self):
        return self.symbol

    @property
    def sort_key(self):
        return (self.identity_dim, self.component_order, self.symbol)

    def __lt__(self, other):
        return self.sort_key < other.sort_key


@dataclass(frozen=True)
class Centralizer:
    label: OrbitTypeLabel
    algebra: np.ndarray          # rows: orthonormal coordinate vectors
    generators: tuple            # one element per non-identity component


def _commutes(a, b):
    """Commutation test against the rank cutoff, refusing borderline cases."""
    err = np.linalg.norm(a @ b - b @ a)
    cut = tolerances.get().rank
    if cut / 10 < err < cut * 10:
        raise RankAmbiguity(f"commutator norm {err:.3e} too close to cutoff {cut:.1e}")
    return err <= cut


def _commutes_with_all(z, elements):
    return all(_commutes(z, g) for g in elements)


def _half_turn(axis):
    a = axis / np.linalg.norm(axis)
    return 2.0 * np.outer(a, a) - np.eye(3)


def _rotation_axis(R):
    _, _, vh = np.linalg.svd(R - np.eye(3))
    return vh[-1]


def _perpendicular(n):
    trial = np.eye(3)[np.argmin(np.abs(n))]
    m = np.cross(n, trial)
    return m / np.linalg.norm(m)


def _so3_centralizer(elements, algebra):
    """Decision tree for SO(3); returns (symbol, identity_dim, order, generators)."""
    dim = algebra.shape[0]
    if dim == 3:
        return "(SO3)", 3, 1, ()
    if dim == 1:
        # coordinates in the so(3) basis are rotation axes
        m = _perpendicular(algebra[0])
        flip = _half_turn(m)
        if _commutes_with_all(flip, elements):
            return "(O2)", 1, 2, (flip,)
        return "(SO2)", 1, 1, ()
    if dim != 0:
        raise UnsupportedGroup(f"SO(3) centralizer of dimension {dim}")
    # finite centralizer: every non-identity element is a half-turn whose
    # axis is preserved (up to sign) by all holonomies
    axes = [_rotation_axis(g) for g in elements if np.linalg.norm(g - np.eye(3)) > tolerances.get().rank]
    candidates = list(axes)
    for i in range(len(axes)):
        for j in range(i + 1, len(axes)):
            c = np.cross(axes[i], axes[j])
            if np.linalg.norm(c) > 1e-6:
                candidates.append(c / np.linalg.norm(c))
    preserved = []
    for a in candidates:
        if any(abs(abs(np.dot(a, b)) - 1) < 1e-8 for b in preserved):
            continue
        if _commutes_with_all(_half_turn(a), elements):
            preserved.append(a)
    gens = tuple(_half_turn(a) for a in preserved)
    if len(preserved) == 0:
        return "(e)", 0, 1, ()
    if len(preserved) == 1:
        return "(Z2)", 0, 2, gens
    if len(preserved) == 3:
        return "(V)", 0, 4, gens
    raise UnsupportedGroup(f"{len(preserved)} preserved axes in a finite SO(3) centralizer")


def _o2_centralizer(elements, algebra):
    I = np.eye(2)
    reflections = [g for g in elements if np.linalg.det(g) < 0]
    minus = -I
    if algebra.shape[0] == 1:
        F0 = np.diag([1.0, -1.0])
        if _commutes_with_all(F0, elements):
            return "(O2)", 1, 2, (F0,)
        return "(SO2)", 1, 1, ()
    if not reflections:
        raise UnsupportedGroup("finite O(2) centralizer without reflections")
    F = reflections[0]
    if _commutes_with_all(F, elements):
        return "(V)", 0, 4, (minus, F, -F)
    return "(Z2)", 0, 2, (minus,)


def centralizer(spec, elements):
    """Full centralizer of a set of group elements: label, algebra, component representatives."""
    elements = [np.asarray(g) for g in elements]
    algebra = centralizer_algebra(spec, elements)
    dim = algebra.shape[0]
    fam = spec.family
    if fam == "T":
        return Centralizer(OrbitTypeLabel(fam, f"(T^{spec.k})", spec.k, 1), algebra, ())
    if fam == "SU2":
        table = {3: ("(SU2)", 1, ()), 1: ("(T)", 1, ()), 0: ("(Z)", 2, (-np.eye(2, dtype=complex),))}
        if dim not in table:
            raise UnsupportedGroup(f"SU(2) centralizer of dimension {dim}")
        sym, order, gens = table[dim]
        return Centralizer(OrbitTypeLabel(fam, sym, dim, order), algebra, gens)
    if fam == "U2":
        # centralizers in U(n) are connected
        table = {4: "(U2)", 2: "(T2)", 1: "(S1)"}
        if dim not in table:
            raise UnsupportedGroup(f"U(2) centralizer of dimension {dim}")
        return Centralizer(OrbitTypeLabel(fam, table[dim], dim, 1), algebra, ())
    if fam == "SO3":
        sym, idim, order, gens = _so3_centralizer([np.real(g) for g in elements], algebra)
        return Centralizer(OrbitTypeLabel(fam, sym, idim, order), algebra, gens)
    if fam == "O2":
        sym, idim, order, gens = _o2_centralizer([np.real(g) for g in elements], algebra)
        return Centralizer(OrbitTypeLabel(fam, sym, idim, order), algebra, gens)
    if fam == "O3":
        # O(3) = SO(3) x {+-I}; strip the sign and reuse the SO(3) tree
        rot = [np.real(g) * np.sign(np.linalg.det(g)) for g in elements]
        sym, idim, order, gens = _so3_centralizer(rot, algebra)
        gens = gens + (-np.eye(3),)
        label = OrbitTypeLabel(fam, f"{sym}x(Z2)", idim, 2 * order)
        return Centralizer(label, algebra, gens)
    raise UnsupportedGroup(fam)


def classify_centralizer(spec, elements):
    return centralizer(spec, elements).label


def label_vocabulary(spec):
    """All labels the decision tree can produce for ``spec``, in sort order."""
    if spec.family == "T":
        return [OrbitTypeLabel("T", f"(T^{spec.k})", spec.k, 1)]
    so3 = [("(e)", 0, 1), ("(Z2)", 0, 2), ("(V)", 0, 4), ("(SO2)", 1, 1), ("(O2)", 1, 2), ("(SO3)", 3, 1)]
    table = {
        "SU2": [("(Z)", 0, 2), ("(T)", 1, 1), ("(SU2)", 3, 1)],
        "U2": [("(S1)", 1, 1), ("(T2)", 2, 1), ("(U2)", 4, 1)],
        "O2": [("(Z2)", 0, 2), ("(V)", 0, 4), ("(SO2)", 1, 1), ("(O2)", 1, 2)],
        "SO3": so3,
        "O3": [(f"{s}x(Z2)", d, 2 * o) for s, d, o in so3],
    }
    return sorted(OrbitTypeLabel(spec.family, s, d, o) for s, d, o in table[spec.family])
