"""Repo-wide numerical tolerances.

The defaults are frozen; ``override`` swaps them for the duration of a
``with`` block (used by the command line ``--tolerance`` flag).
"""

from __future__ import annotations

import contextvars
from contextlib import contextmanager
from dataclasses import dataclass, fields, replace


@dataclass(frozen=True)
class Tolerances:
    group: float = 1e-10   # group / algebra membership
    num: float = 1e-10     # round trips, orthogonality, antisymmetry
    rank: float = 1e-8     # relative singular value cutoff
    branch: float = 1e-6   # distance of an eigenvalue from -1 for log
    rep: float = 1e-9      # relator residual of a valid representation

    def as_dict(self) -> dict[str, float]:
        return {f.name: getattr(self, f.name) for f in fields(self)}


DEFAULT = Tolerances()
_current: contextvars.ContextVar[Tolerances] = contextvars.ContextVar(
    "ymstrata_tolerances", default=DEFAULT
)


def get() -> Tolerances:
    return _current.get()


@contextmanager
def override(**values: float):
    unknown = set(values) - {f.name for f in fields(Tolerances)}
    if unknown:
        raise KeyError(f"unknown tolerance(s): {sorted(unknown)}")
    token = _current.set(replace(_current.get(), **values))
    try:
        yield _current.get()
    finally:
        _current.reset(token)
