"""Orbit-type classification of representations and stratification census.

A point is classified by the conjugacy class of its centralizer, the
action of that centralizer on the harmonic part of H^1, and the dimension
of the fixed subspace of that action (the local dimension of its orbit
type stratum).
"""

from __future__ import annotations

import contextvars
import logging
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import tolerances
from ._linalg import null_space
from .errors import NoConvergence, UnsupportedGroup, YMStrataError
from .liegroup import OrbitTypeLabel, adjoint_operator, centralizer
from .surface import cohomology
from .variety import SolverConfig, solve, tangent_perturb, targeted_samples

log = logging.getLogger(__name__)

__all__ = [
    "OrbitTypeLabel",
    "PointClassification",
    "CensusReport",
    "stabilizer",
    "is_representation_irreducible",
    "z_action_on_h1",
    "classify_point",
    "census",
]


def stabilizer(rep):
    """Centralizer of the holonomies, with component generators checked to commute."""
    cz = centralizer(rep.spec, rep.holonomies)
    tol = tolerances.get().group
    for z in cz.generators:
        for g in rep.holonomies:
            if np.linalg.norm(z @ g - g @ z) > tol:
                raise UnsupportedGroup("component generator fails to commute with the holonomies")
    return cz


def is_representation_irreducible(rep, cz=None):
    cz = stabilizer(rep) if cz is None else cz
    return cz.algebra.shape[0] == rep.spec.center_dim


@dataclass
class H1Action:
    generators: tuple
    finite: list          # orthogonal matrices on harmonic1 coordinates
    infinitesimal: list   # skew matrices, one per stabilizer algebra basis vector


def _ad_matrix(spec, zeta):
    return np.column_stack([spec.bracket(zeta, e) for e in np.eye(spec.algebra_dim)])


def z_action_on_h1(rep, co=None, cz=None):
    spec = rep.spec
    co = cohomology(rep) if co is None else co
    cz = stabilizer(rep) if cz is None else cz
    H = co.harmonic1
    n = 2 * rep.genus
    finite = [H.T @ np.kron(np.eye(n), adjoint_operator(spec, z)) @ H for z in cz.generators]
    infinitesimal = [H.T @ np.kron(np.eye(n), _ad_matrix(spec, zeta)) @ H for zeta in cz.algebra]
    return H1Action(cz.generators, finite, infinitesimal)


@dataclass
class PointClassification:
    label: OrbitTypeLabel
    stabilizer_algebra: np.ndarray
    component_generators: tuple
    h: tuple
    stratum_dim: int
    irreducible: bool
    nonsingular: bool
    top: bool
    action: H1Action = field(repr=False, default=None)

    def as_dict(self):
        return {
            "label": str(self.label),
            "stabilizer_dim": int(self.stabilizer_algebra.shape[0]),
            "component_group_order": self.label.component_order,
            "h": list(self.h),
            "stratum_dim": self.stratum_dim,
            "irreducible": self.irreducible,
            "nonsingular": self.nonsingular,
            "top": self.top,
        }


def classify_point(rep):
    spec = rep.spec
    co = cohomology(rep)
    cz = stabilizer(rep)
    act = z_action_on_h1(rep, co, cz)
    tol = tolerances.get().num
    h1 = co.h1
    eye = np.eye(h1)
    trivial = all(np.linalg.norm(op - eye) <= tol for op in act.finite) and all(
        np.linalg.norm(op) <= tol for op in act.infinitesimal
    )
    blocks = [op - eye for op in act.finite] + list(act.infinitesimal)
    if h1 == 0:
        fixed = 0
    elif blocks:
        fixed = null_space(np.vstack(blocks)).shape[1]
    else:
        fixed = h1
    irreducible = cz.algebra.shape[0] == spec.center_dim
    # for connected groups the open stratum consists of irreducible points
    # with trivial component action; otherwise use non-singularity alone
    top = trivial and (irreducible or not spec.connected)
    return PointClassification(
        label=cz.label,
        stabilizer_algebra=cz.algebra,
        component_generators=cz.generators,
        h=co.dims,
        stratum_dim=fixed,
        irreducible=irreducible,
        nonsingular=trivial,
        top=top,
        action=act,
    )


# --------------------------------------------------------------------------
# census


@dataclass
class CensusReport:
    bundle: dict
    seed: int
    attempted: int
    random_converged: int
    targeted: int
    failures: list
    points: list                      # (source, seed, PointClassification)
    labels: dict                      # str(label) -> summary dict
    top_label: str = None
    top_rule: str = None
    density: dict = field(default_factory=dict)
    volume: dict = field(default_factory=dict)

    @property
    def converged(self):
        return self.random_converged + self.targeted

    def label_dims(self):
        return {k: v["stratum_dims"] for k, v in self.labels.items()}

    def as_dict(self):
        return {
            "bundle": self.bundle,
            "seed": self.seed,
            "samples": {
                "attempted": self.attempted,
                "converged": self.random_converged,
                "targeted": self.targeted,
                "failures": self.failures,
            },
            "labels": self.labels,
            "top": {"label": self.top_label, "rule": self.top_rule},
            "density": self.density,
            "volume_indicator": self.volume,
            "points": [
                {"source": src, "seed": sd, **pc.as_dict()} for src, sd, pc in self.points
            ],
        }


def _derived_seeds(seed, n):
    if n == 0:
        return []
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(n)]


def _run(fn, items, threads):
    if threads <= 1:
        return [fn(x) for x in items]
    ctx = contextvars.copy_context()
    with ThreadPoolExecutor(max_workers=threads) as pool:
        futures = [pool.submit(ctx.copy().run, fn, x) for x in items]
        return [f.result() for f in futures]


def census(bundle, n_samples, cfg=None, *, targeted=True, density_trials=50,
           density_magnitude=1e-2, volume=True, threads=1):
    """Sample the variety, classify every point and aggregate by orbit type.

    Random solves are complemented by ``targeted_samples`` so that the
    lower strata show up.  For every non-top label one representative
    is perturbed ``density_trials`` times along random cocycles and
    re-solved; the report records where the trials land.
    """
    cfg = SolverConfig() if cfg is None else cfg
    seeds = _derived_seeds(cfg.seed, n_samples)

    def sample(sd):
        try:
            rep = solve(bundle, SolverConfig(cfg.max_iters, cfg.residual_target, sd))
            return rep, classify_point(rep), None
        except NoConvergence as exc:
            return None, None, {"seed": sd, "reason": "no-convergence", "residual": exc.final_residual}
        except YMStrataError as exc:
            return None, None, {"seed": sd, "reason": type(exc).__name__}

    results = _run(sample, seeds, threads)
    points, reps, failures = [], [], []
    for sd, (rep, pc, fail) in zip(seeds, results):
        if fail is not None:
            failures.append(fail)
            continue
        points.append(("random", sd, pc))
        reps.append(rep)
    n_random = len(points)

    n_targeted = 0
    if targeted and n_samples > 0:
        for name, rep in targeted_samples(bundle, seed=cfg.seed):
            try:
                pc = classify_point(rep)
            except YMStrataError as exc:
                failures.append({"seed": None, "source": name, "reason": type(exc).__name__})
                continue
            points.append((name, None, pc))
            reps.append(rep)
            n_targeted += 1

    report = CensusReport(
        bundle=bundle.summary(),
        seed=cfg.seed,
        attempted=n_samples,
        random_converged=n_random,
        targeted=n_targeted,
        failures=failures,
        points=points,
        labels={},
    )
    if not points:
        return report

    by_label = {}
    for (src, sd, pc), rep in zip(points, reps):
        by_label.setdefault(pc.label, []).append((src, sd, pc, rep))
    for label in sorted(by_label):
        entries = by_label[label]
        report.labels[str(label)] = {
            "count": len(entries),
            "stabilizer_dim": label.identity_dim,
            "component_group_order": label.component_order,
            "stratum_dims": sorted({e[2].stratum_dim for e in entries}),
            "h1": sorted({e[2].h[1] for e in entries}),
            "irreducible": sorted({e[2].irreducible for e in entries}),
            "nonsingular_count": sum(e[2].nonsingular for e in entries),
            "top_count": sum(e[2].top for e in entries),
            "examples": [e[1] if e[1] is not None else e[0] for e in entries[:3]],
        }

    top_label, rule = _decide_top(by_label)
    report.top_label, report.top_rule = str(top_label), rule
    for v in report.labels.values():
        v["top"] = False
    report.labels[str(top_label)]["top"] = True

    if density_trials > 0:
        for label in sorted(by_label):
            if label == top_label:
                continue
            rep = by_label[label][0][3]
            base = by_label[label][0][2]
            report.density[str(label)] = _density(
                rep, base, top_label, density_trials, density_magnitude, cfg, threads
            )
    if volume:
        report.volume = _volume_indicator([e[3] for e in by_label[top_label] if e[2].nonsingular])
    return report


def _decide_top(by_label):
    with_top = [lab for lab, es in by_label.items() if any(e[2].top for e in es)]
    if with_top:
        # several labels can only occur through misclassification; keep the most populated
        best = max(with_top, key=lambda lab: (sum(e[2].top for e in by_label[lab]), [-x for x in lab.sort_key[:2]]))
        return best, "irreducible-with-trivial-component-action"
    nonsing = [lab for lab, es in by_label.items() if any(e[2].nonsingular for e in es)]
    pool = nonsing or list(by_label)
    return min(pool), "heuristic-minimal-nonsingular-label"


def _density(rep, base, top_label, trials, magnitude, cfg, threads):
    seeds = _derived_seeds(cfg.seed + 7919, trials)

    def trial(sd):
        try:
            out = tangent_perturb(rep, magnitude, sd, cfg=SolverConfig(cfg.max_iters, cfg.residual_target, sd))
            return classify_point(out)
        except YMStrataError:
            return None

    results = _run(trial, seeds, threads)
    landed = [pc for pc in results if pc is not None]
    return {
        "trials": trials,
        "magnitude": magnitude,
        "failures": trials - len(landed),
        "landed_top": sum(pc.label == top_label for pc in landed),
        "landed_higher_dim": sum(pc.stratum_dim > base.stratum_dim for pc in landed),
        "labels": sorted({str(pc.label) for pc in landed}),
    }


def _volume_indicator(reps, limit=50):
    """Mean and max of |Pf| of the pairing over sampled top points.

    Non-rigorous: only a boundedness indicator, not a volume.
    """
    from .localmodel import symplectic_form

    vals = []
    for rep in reps[:limit]:
        omega = symplectic_form(rep).matrix
        if omega.shape[0] == 0:
            vals.append(1.0)
            continue
        vals.append(float(np.sqrt(abs(np.linalg.det(omega)))))
    if not vals:
        return {"rigorous": False, "samples": 0}
    return {
        "rigorous": False,
        "samples": len(vals),
        "mean_abs_pfaffian": float(np.mean(vals)),
        "max_abs_pfaffian": float(np.max(vals)),
    }
