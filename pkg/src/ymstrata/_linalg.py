import numpy as np

from . import tolerances
from .errors import RankAmbiguity


def rank_cutoff(s):
    """Absolute cutoff used for a vector of singular values.

    Relative to the largest singular value, floored at 1 so that an
    all-zero operator has rank zero rather than an undefined rank.
    """
    smax = float(s[0]) if len(s) else 0.0
    return tolerances.get().rank * max(smax, 1.0)


def numerical_rank(s, strict=True):
    cutoff = rank_cutoff(s)
    if strict:
        close = (s > cutoff / 10.0) & (s < cutoff * 10.0)
        if np.any(close):
            raise RankAmbiguity(
                f"singular value {s[close][0]:.3e} within a factor 10 of cutoff {cutoff:.3e}",
                singular_values=np.array(s),
                cutoff=cutoff,
            )
    return int(np.sum(s > cutoff))


def null_space(A, strict=True):
    """Orthonormal basis (as columns) of the numerical kernel of ``A``."""
    A = np.atleast_2d(A)
    n = A.shape[1]
    if A.shape[0] == 0:
        return np.eye(n)
    _, s, vh = np.linalg.svd(A)
    r = numerical_rank(s, strict=strict)
    return vh[r:].conj().T


def range_space(A, strict=True):
    """Orthonormal basis (as columns) of the numerical image of ``A``."""
    A = np.atleast_2d(A)
    if A.shape[1] == 0:
        return np.zeros((A.shape[0], 0))
    u, s, _ = np.linalg.svd(A)
    r = numerical_rank(s, strict=strict)
    return u[:, :r]


def rank(A, strict=True):
    A = np.atleast_2d(A)
    if A.size == 0:
        return 0
    return numerical_rank(np.linalg.svd(A, compute_uv=False), strict=strict)
