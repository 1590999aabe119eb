"""Surface group presentation, representations and twisted cohomology.

The fundamental group of a closed genus-``l`` surface is presented with
generators ``x1, y1, ..., xl, yl`` and the single relator
``x1 y1 x1^-1 y1^-1 ... xl yl xl^-1 yl^-1``.  A representation stores the
``2l`` holonomies in that order together with the central element ``c``
that the relator must evaluate to (``c = I`` for flat bundles).

Cochains with values in the Lie algebra are arrays of shape ``(2l, dim)``
(or their flattening of length ``2l*dim``).  They extend to words by the
crossed-homomorphism rule

    u(ab) = u(a) + Ad(rho(a)) u(b),     u(x^-1) = -Ad(rho(x))^-1 u(x),

so ``d0(xi)_i = Ad(rho_i) xi - xi`` and ``d1(u) = u(relator)``.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import tolerances
from ._linalg import null_space, rank
from .errors import InvalidData
from .liegroup import GroupSpec, adjoint_operators

# A word is a tuple of (generator index, exponent) pairs; generator
# index 2j is x_{j+1} and 2j+1 is y_{j+1}.
Word = tuple


@dataclass(frozen=True)
class SurfacePresentation:
    genus: int
    generators: tuple
    relator: Word


def presentation(genus):
    if genus < 1:
        raise ValueError("genus must be at least 1")
    names = tuple(f"{s}{j}" for j in range(1, genus + 1) for s in "xy")
    rel = []
    for j in range(genus):
        x, y = 2 * j, 2 * j + 1
        rel += [(x, 1), (y, 1), (x, -1), (y, -1)]
    return SurfacePresentation(genus, names, tuple(rel))


def word_from_string(text, genus):
    """Parse ``"x1 y1 x1^-1"`` style words."""
    names = presentation(genus).generators
    out = []
    for tok in text.split():
        base, _, ex = tok.partition("^")
        if base not in names:
            raise ValueError(f"unknown generator {base!r}")
        out.append((names.index(base), int(ex) if ex else 1))
    for i, e in out:
        if e not in (1, -1):
            raise ValueError("exponents must be +1 or -1")
    return tuple(out)


def invert_word(word):
    return tuple((i, -e) for i, e in reversed(word))


@dataclass
class BundleData:
    """Topological type: group, genus, central target and component map.

    ``phi`` assigns +1/-1 to each generator and is required exactly for
    the disconnected groups O(2) and O(3); it must be non-trivial.
    """

    spec: GroupSpec
    genus: int
    central: np.ndarray = None
    phi: tuple = None

    def __post_init__(self):
        if self.genus < 1:
            raise InvalidData("genus must be at least 1")
        c = self.spec.identity() if self.central is None else np.asarray(self.central)
        self.central = self.spec.check_member(c, "central target")
        if not self.spec.is_central(self.central) or not self._commutes_with_samples():
            raise InvalidData("central target does not lie in the centre")
        if self.spec.connected:
            if self.phi is not None:
                raise InvalidData(f"{self.spec.name} is connected; no component map allowed")
        else:
            if self.phi is None:
                raise InvalidData(f"{self.spec.name} is disconnected; a component map is required")
            phi = tuple(int(p) for p in self.phi)
            if len(phi) != 2 * self.genus or any(p not in (1, -1) for p in phi):
                raise InvalidData("component map needs one sign per generator")
            if all(p == 1 for p in phi):
                raise InvalidData("component map must be non-trivial (connected total space)")
            self.phi = phi

    def _commutes_with_samples(self, n=8):
        rng = np.random.default_rng(0)
        tol = tolerances.get().group
        for _ in range(n):
            g = self.spec.random_element(rng, component=-1 if not self.spec.connected and rng.random() < 0.5 else 1)
            if np.linalg.norm(g @ self.central - self.central @ g) > tol:
                return False
        return True

    @property
    def components(self):
        return self.phi if self.phi is not None else (1,) * (2 * self.genus)

    @property
    def is_flat(self):
        return np.allclose(self.central, self.spec.identity(), atol=tolerances.get().group)

    def summary(self):
        return {
            "group": self.spec.name,
            "genus": self.genus,
            "central": central_name(self.spec, self.central),
            "phi": list(self.phi) if self.phi is not None else None,
        }


def central_name(spec, c):
    I = spec.identity()
    tol = tolerances.get().group
    if np.linalg.norm(c - I) <= tol:
        return "I"
    if np.linalg.norm(c + I) <= tol:
        return "-I"
    return None


@dataclass
class Representation:
    """A point of the representation variety (or, with ``check=False``, a candidate)."""

    bundle: BundleData
    holonomies: np.ndarray
    check: bool = field(default=True, repr=False)

    def __post_init__(self):
        spec = self.bundle.spec
        n = spec.matrix_size
        hol = np.array(self.holonomies, dtype=spec.dtype)
        if hol.shape != (2 * self.bundle.genus, n, n):
            raise InvalidData(f"expected {2 * self.bundle.genus} matrices of size {n}x{n}")
        self.holonomies = hol
        if self.check:
            self.validate()

    def validate(self):
        spec = self.bundle.spec
        for i, g in enumerate(self.holonomies):
            spec.check_member(g, f"holonomy {i}")
            if spec.component(g) != self.bundle.components[i]:
                raise InvalidData(f"holonomy {i} lies in the wrong component")
        res = residual(self)
        if res > tolerances.get().rep:
            raise InvalidData(f"relator residual {res:.3e} exceeds tolerance")
        return self

    @property
    def spec(self):
        return self.bundle.spec

    @property
    def genus(self):
        return self.bundle.genus

    def conjugate(self, h):
        hol = h @ self.holonomies @ h.conj().T
        return Representation(self.bundle, hol, check=False)

    def with_holonomies(self, hol, check=False):
        return Representation(self.bundle, hol, check=check)


def evaluate_word(rep, word):
    spec = rep.spec
    g = spec.identity()
    for i, e in word:
        h = rep.holonomies[i]
        g = g @ (h if e == 1 else h.conj().T)
    return g


def relator_value(rep):
    return evaluate_word(rep, presentation(rep.genus).relator)


def residual(rep):
    """Frobenius distance ``|| mu(rho) c^-1 - I ||``."""
    M = relator_value(rep) @ rep.bundle.central.conj().T
    return float(np.linalg.norm(M - np.eye(len(M))))


def word_derivative(rep, word, adjoints=None):
    """Blocks ``D_i`` with ``u(word) = sum_i D_i u_i`` for every cochain ``u``.

    Each block is Ad applied to the Fox derivative of ``word`` in the
    i-th generator, accumulated letter by letter from the crossed rule.
    """
    spec = rep.spec
    dim = spec.algebra_dim
    if adjoints is None:
        adjoints = adjoint_operators(spec, rep.holonomies)
    blocks = np.zeros((len(rep.holonomies), dim, dim))
    prefix = np.eye(dim)
    for i, e in word:
        A = adjoints[i]
        if e == 1:
            blocks[i] += prefix
            prefix = prefix @ A
        else:
            prefix = prefix @ A.T
            blocks[i] -= prefix
    return blocks


def crossed_extension(rep, u, word):
    """Value of the cochain ``u`` (shape (2l, dim)) on ``word``."""
    u = np.asarray(u, dtype=float).reshape(len(rep.holonomies), -1)
    blocks = word_derivative(rep, word)
    return np.einsum("iab,ib->a", blocks, u)


def prefix_data(rep, u, word, adjoints=None):
    """Per-letter prefix values ``u(p_{t-1})`` and increments ``Ad(p_{t-1}) u(a_t)``."""
    spec = rep.spec
    dim = spec.algebra_dim
    if adjoints is None:
        adjoints = adjoint_operators(spec, rep.holonomies)
    u = np.asarray(u, dtype=float).reshape(len(rep.holonomies), dim)
    values = np.zeros((len(word), dim))
    steps = np.zeros((len(word), dim))
    prefix = np.eye(dim)
    acc = np.zeros(dim)
    for t, (i, e) in enumerate(word):
        A = adjoints[i]
        values[t] = acc
        if e == 1:
            step = prefix @ u[i]
            prefix = prefix @ A
        else:
            prefix = prefix @ A.T
            step = -prefix @ u[i]
        steps[t] = step
        acc = acc + step
    return values, steps


def differentials(rep):
    """The coboundary maps ``d0: g -> C^1`` and ``d1: C^1 -> g``."""
    spec = rep.spec
    dim = spec.algebra_dim
    adj = adjoint_operators(spec, rep.holonomies)
    d0 = (adj - np.eye(dim)).reshape(-1, dim)
    blocks = word_derivative(rep, presentation(rep.genus).relator, adj)
    d1 = np.concatenate(list(blocks), axis=1)
    return d0, d1


@dataclass
class TwistedCohomology:
    d0: np.ndarray
    d1: np.ndarray
    h0: int
    h1: int
    h2: int
    harmonic0: np.ndarray  # columns: basis of ker d0
    harmonic1: np.ndarray  # columns: basis of ker d1 ∩ (im d0)^⊥
    harmonic2: np.ndarray  # columns: basis of (im d1)^⊥

    @property
    def dims(self):
        return (self.h0, self.h1, self.h2)


def cohomology(rep):
    d0, d1 = differentials(rep)
    n1, dim = d0.shape
    harmonic0 = null_space(d0)
    harmonic1 = null_space(np.vstack([d1, d0.T]))
    harmonic2 = null_space(d1.T)
    r0 = dim - harmonic0.shape[1]
    h1 = (n1 - rank(d1)) - r0
    if h1 != harmonic1.shape[1]:
        raise InvalidData(f"inconsistent H^1 rank ({h1} vs {harmonic1.shape[1]}): d1 d0 != 0?")
    return TwistedCohomology(
        d0=d0,
        d1=d1,
        h0=harmonic0.shape[1],
        h1=h1,
        h2=harmonic2.shape[1],
        harmonic0=harmonic0,
        harmonic1=harmonic1,
        harmonic2=harmonic2,
    )
