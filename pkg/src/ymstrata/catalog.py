"""Worked examples, each returning a verification record with measured data.

Every function is deterministic given its seed.  A record passes when
all of its named checks pass; the measured numbers travel along in
``data`` so reports can show what was compared.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import YMStrataError
from .liegroup import O2, O3, SO3, SU2, U2, exp
from .strata import census, classify_point, stabilizer
from .surface import BundleData, Representation, cohomology, residual
from .variety import (
    SolverConfig,
    central_representations,
    central_twist,
    embed_su2_u2,
    klein_four_representation,
    lift_so3_su2,
    project_su2_so3,
    quotient_by_central_torus,
    so3_bundle_type,
    solve,
    torus_representation,
)


@dataclass
class VerificationRecord:
    name: str
    params: dict
    checks: dict = field(default_factory=dict)
    data: dict = field(default_factory=dict)
    notes: list = field(default_factory=list)

    @property
    def passed(self):
        return bool(self.checks) and all(self.checks.values())

    def check(self, key, ok):
        self.checks[key] = bool(ok)
        return bool(ok)

    def as_dict(self):
        return {
            "name": self.name,
            "params": self.params,
            "passed": self.passed,
            "checks": self.checks,
            "data": self.data,
            "notes": self.notes,
        }


def _seeds(seed, n):
    return [int(s) for s in np.random.SeedSequence(seed).generate_state(n)] if n else []


def _solve_many(bundle, n, seed):
    reps, failures = [], 0
    for sd in _seeds(seed, n):
        try:
            reps.append(solve(bundle, SolverConfig(seed=sd)))
        except YMStrataError:
            failures += 1
    return reps, failures


def genus1_torus_model(spec=SU2, n_samples=500, seed=0):
    """Genus one: commuting pairs, generic label the maximal torus, no irreducibles."""
    rec = VerificationRecord("genus1-torus", {"group": spec.name, "samples": n_samples, "seed": seed})
    bundle = BundleData(spec, 1)
    generic = torus_representation(bundle, [0.7, 1.9])
    torus_sym = "(T)" if spec == SU2 else "(SO2)"
    pc = classify_point(generic)
    rec.data["generic_label"] = str(pc.label)
    rec.check("generic pair has torus stabilizer", str(pc.label) == torus_sym)
    weyl_fixed = []
    for a in (0.0, np.pi):
        for b in (0.0, np.pi):
            lab = classify_point(torus_representation(bundle, [a, b])).label
            weyl_fixed.append(str(lab))
            rec.check(f"Weyl-fixed ({a:.2f},{b:.2f}) has larger stabilizer", lab.sort_key > pc.label.sort_key)
    rec.data["weyl_fixed_labels"] = weyl_fixed
    reps, failures = _solve_many(bundle, n_samples, seed)
    irreducible, other_type = 0, 0
    for rep in reps:
        if spec == SO3 and so3_bundle_type(rep) == -1:
            # the non-trivial SO(3) bundle carries isolated Klein-four pairs
            other_type += 1
            continue
        irreducible += classify_point(rep).irreducible
    rec.data.update(solved=len(reps), failures=failures, irreducible=irreducible)
    if spec == SO3:
        rec.data["nontrivial_bundle_samples"] = other_type
        rec.notes.append("samples lifting to c = -I belong to the non-trivial bundle and are excluded")
    rec.check("no irreducible points", irreducible == 0)
    rec.check("solver converged", len(reps) > 0)
    return rec


def su2_strata(genus=2, seed=0):
    """SU(2), genus >= 2: the three orbit types and their dimensions."""
    rec = VerificationRecord("su2-strata", {"genus": genus, "seed": seed})
    bundle = BundleData(SU2, genus)
    irr = solve(bundle, SolverConfig(seed=seed))
    rng = np.random.default_rng(seed)
    tor = torus_representation(bundle, rng.uniform(0.2, 3.0, 2 * genus))
    centrals = central_representations(bundle)
    pcs = {"(Z)": classify_point(irr), "(T)": classify_point(tor), "(SU2)": classify_point(centrals[0])}
    expected = {"(Z)": 6 * genus - 6, "(T)": 2 * genus, "(SU2)": 0}
    for sym, pc in pcs.items():
        rec.check(f"label {sym}", str(pc.label) == sym)
        rec.check(f"dim {sym} = {expected[sym]}", pc.stratum_dim == expected[sym])
    rec.data["dims"] = {k: v.stratum_dim for k, v in pcs.items()}
    rec.data["h"] = {k: list(v.h) for k, v in pcs.items()}
    labels = {str(classify_point(r).label) for r in centrals}
    rec.data["central_count"] = len(centrals)
    rec.check("2^(2l) central points", len(centrals) == 4**genus and labels == {"(SU2)"})
    rec.check("irreducible point is top", pcs["(Z)"].top)
    # Weyl element acts on the torus by complex conjugation
    w = np.array([[0, -1], [1, 0]], dtype=complex)
    conj = w @ tor.holonomies @ w.conj().T
    rec.check("Weyl action is conjugation", np.allclose(conj, tor.holonomies.conj(), atol=1e-12))
    zeta = pcs["(T)"].stabilizer_algebra[0]
    rec.check("torus stabilizer contains the centre", np.allclose(exp(SU2, np.pi * np.sqrt(2) * zeta), -np.eye(2), atol=1e-12))
    return rec


# centralizer correspondence under SU(2) -> SO(3), for the representatives used
SU2_TO_SO3 = {"(SU2)": "(SO3)", "(T)": "(SO2)", "(Z)": "(e)"}


def so3_covering(genus=2, n_points=20, seed=0):
    rec = VerificationRecord("so3-covering", {"genus": genus, "points": n_points, "seed": seed})
    b3 = BundleData(SO3, genus)
    trivial = Representation(b3, np.array([np.eye(3)] * (2 * genus)))
    lifts, c = lift_so3_su2(trivial)
    rec.check("trivial rep has 2^(2l) lifts", len(lifts) == 4**genus)
    rec.check("trivial lifts are central", all(str(classify_point(r).label) == "(SU2)" for r in lifts))
    reps, failures = _solve_many(b3, n_points, seed)
    counts, ctypes, worst = [], [], 0.0
    for rep in reps:
        lifts, c = lift_so3_su2(rep)
        distinct = len({tuple(np.round(r.holonomies.ravel(), 8)) for r in lifts})
        back = max(np.linalg.norm(project_su2_so3(r).holonomies - rep.holonomies) for r in lifts)
        counts.append(distinct)
        ctypes.append("I" if np.allclose(c, np.eye(2)) else "-I")
        worst = max(worst, back)
    rec.data.update(points=len(reps), failures=failures, distinct_lifts=sorted(set(counts)),
                    central_targets={t: ctypes.count(t) for t in sorted(set(ctypes))})
    rec.check("every point has 2^(2l) distinct lifts", counts and all(k == 4**genus for k in counts))
    rec.data["projection_error"] = float(worst)
    rec.check("lifts project back", worst < 1e-12)
    # stratum correspondence on representatives of each SU(2) label
    b2 = BundleData(SU2, genus)
    rng = np.random.default_rng(seed)
    reps2 = {
        "(SU2)": central_representations(b2)[0],
        "(T)": torus_representation(b2, rng.uniform(0.2, 1.4, 2 * genus)),
        "(Z)": solve(b2, SolverConfig(seed=seed)),
    }
    corr = {}
    for sym, r2 in reps2.items():
        image = classify_point(project_su2_so3(r2))
        corr[sym] = str(image.label)
        rec.check(f"{sym} maps to {SU2_TO_SO3[sym]}", str(image.label) == SU2_TO_SO3[sym])
    rec.data["correspondence"] = corr
    irr3 = reps[0] if reps else None
    if irr3 is not None:
        pc3 = classify_point(irr3)
        lift_irr = all(classify_point(r).irreducible for r in lift_so3_su2(irr3)[0])
        rec.check("irreducible SO(3) point has irreducible lifts", pc3.irreducible and lift_irr)
    return rec


def u2_parity(genus=2, parity="even", n_points=20, n_samples=100, seed=0):
    rec = VerificationRecord("u2-parity", {"genus": genus, "parity": parity, "points": n_points, "seed": seed})
    c = np.eye(2, dtype=complex) if parity == "even" else -np.eye(2, dtype=complex)
    bundle = BundleData(U2, genus, c)
    reps, failures = _solve_many(bundle, n_points, seed)
    rng = np.random.default_rng(seed)
    invariant, scalar_ratio, types = True, True, set()
    for rep in reps:
        image = quotient_by_central_torus(rep)
        types.add(so3_bundle_type(image))
        for _ in range(3):
            tw = central_twist(rep, rng.uniform(-np.pi, np.pi, 2 * genus))
            invariant &= np.allclose(quotient_by_central_torus(tw).holonomies, image.holonomies, atol=1e-12)
            ratio = tw.holonomies @ np.swapaxes(rep.holonomies.conj(), 1, 2)
            scalar_ratio &= all(np.allclose(m, m[0, 0] * np.eye(2), atol=1e-12) for m in ratio)
    rec.data.update(points=len(reps), failures=failures, image_bundle_types=sorted(types))
    rec.check("quotient invariant under central twists", invariant and reps)
    rec.check("twists differ by scalars", scalar_ratio)
    want = 1 if parity == "even" else -1
    rec.check("image lies in the expected SO(3) bundle", types == {want})
    b2 = BundleData(SU2, genus, c)
    r2 = solve(b2, SolverConfig(seed=seed))
    diag = np.linalg.norm(quotient_by_central_torus(embed_su2_u2(r2)).holonomies - project_su2_so3(r2).holonomies)
    rec.data["embedded_su2_discrepancy"] = float(diag)
    rec.check("embedded SU(2) consistency", diag < 1e-12)
    if parity == "odd":
        rep = census(bundle, n_samples, SolverConfig(seed=seed), density_trials=0, volume=False)
        rec.data["census_labels"] = sorted(rep.labels)
        rec.data["census_converged"] = rep.random_converged
        rec.check("single stratum", len(rep.labels) == 1)
        rec.check("all points non-singular", all(pc.nonsingular for _, _, pc in rep.points))
    return rec


def o2_variety(genus=2, phi=None, n_points=20, seed=0):
    phi = tuple(phi) if phi is not None else (-1,) + (1,) * (2 * genus - 1)
    rec = VerificationRecord("o2-variety", {"genus": genus, "phi": list(phi), "points": n_points, "seed": seed})
    bundle = BundleData(O2, genus, phi=phi)
    reps, failures = _solve_many(bundle, n_points, seed)
    h = [cohomology(r).dims for r in reps]
    labels = [classify_point(r).label for r in reps]
    rec.data.update(points=len(reps), failures=failures, h=[list(x) for x in sorted(set(h))], labels=sorted({str(x) for x in labels}))
    rec.check("solved all points", len(reps) == n_points)
    rec.check("h0 = 0", all(x[0] == 0 for x in h))
    rec.check(f"h1 = {2 * genus - 2}", all(x[1] == 2 * genus - 2 for x in h))
    rec.check("finite stabilizers", all(lab.identity_dim == 0 for lab in labels))
    comps = all(all(O2.component(g) == p for g, p in zip(r.holonomies, phi)) for r in reps)
    rec.check("holonomies in prescribed components", comps)
    if genus == 1:
        rec.notes.append("genus 1 is the boundary case: h1 = 0, points are isolated")
    return rec


def o3_splitting(genus=2, phi=None, n_points=20, seed=0):
    phi = tuple(phi) if phi is not None else (-1,) + (1,) * (2 * genus - 1)
    rec = VerificationRecord("o3-splitting", {"genus": genus, "phi": list(phi), "points": n_points, "seed": seed})
    bundle = BundleData(O3, genus, phi=phi)
    reps, failures = _solve_many(bundle, n_points, seed)
    b3 = BundleData(SO3, genus)
    round_trip, labels_match, stab_match = True, True, True
    pairs = []
    for rep in reps:
        signs = np.array([np.sign(np.linalg.det(g)) for g in rep.holonomies])
        rot = Representation(b3, rep.holonomies * signs[:, None, None])
        round_trip &= tuple(signs.astype(int)) == phi
        round_trip &= np.allclose(rot.holonomies * signs[:, None, None], rep.holonomies, atol=0)
        l3, l_o3 = classify_point(rot).label, classify_point(rep).label
        pairs.append((str(l3), str(l_o3)))
        labels_match &= str(l_o3) == f"{l3}x(Z2)"
        s3, so3 = stabilizer(rot), stabilizer(rep)
        stab_match &= s3.algebra.shape == so3.algebra.shape and len(so3.generators) == len(s3.generators) + 1
    rec.data.update(points=len(reps), failures=failures, label_pairs=sorted(set(pairs)))
    rec.check("solved all points", len(reps) == n_points)
    rec.check("split and reassemble", round_trip)
    rec.check("stabilizer is SO(3) part times Z/2", stab_match)
    rec.check("labels match SO(3) labels", labels_match)
    # lower strata through the splitting
    for name, r3 in (("trivial", Representation(b3, np.array([np.eye(3)] * (2 * genus)))),
                     ("klein-four", klein_four_representation(b3))):
        sg = np.array(phi, dtype=float)[:, None, None]
        l_o3 = classify_point(Representation(bundle, r3.holonomies * sg)).label
        rec.check(f"{name} labels match", str(l_o3) == f"{classify_point(r3).label}x(Z2)")
    return rec


def ramanathan_example(n=3, genus=2):
    """Irreducible yet singular: the Klein four group in SO(3)."""
    rec = VerificationRecord("ramanathan", {"n": n, "genus": genus})
    if n != 3:
        raise YMStrataError("only n = 3 is supported")
    rep = klein_four_representation(BundleData(SO3, genus))
    pc = classify_point(rep)
    dists = [float(np.linalg.norm(op - np.eye(pc.h[1]))) for op in pc.action.finite]
    rec.data.update(label=str(pc.label), h=list(pc.h), operator_distances=dists,
                    stratum_dim=pc.stratum_dim, residual=residual(rep))
    rec.check("irreducible", pc.irreducible)
    rec.check("stabilizer is the Klein four group", str(pc.label) == "(V)" and len(pc.component_generators) == 3)
    rec.check("h0 = 0", pc.h[0] == 0)
    rec.check(f"h1 = {6 * genus - 6}", pc.h[1] == 6 * genus - 6)
    rec.check("component action non-trivial", max(dists) > 0.5)
    rec.check("singular, not top", not pc.nonsingular and not pc.top)
    if genus == 2:
        rec.notes.append("explicit surjection at genus 2; smaller than the 2l > 2^n bound")
    return rec


CATALOG = {
    "genus1-torus": genus1_torus_model,
    "su2-strata": su2_strata,
    "so3-covering": so3_covering,
    "u2-parity": u2_parity,
    "o2-variety": o2_variety,
    "o3-splitting": o3_splitting,
    "ramanathan": ramanathan_example,
}
