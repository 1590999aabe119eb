"""Command line interface: ``ymstrata {solve,classify,census,catalog}``.

Representations are stored as JSON documents (RepFile) holding each
holonomy as nested lists of real and imaginary parts; Python's shortest
round-trip float repr makes them exact.  Reports (ReportFile) are JSON
with sorted keys, a schema version, library versions and every seed
used, and contain nothing that varies between identical runs.
"""

from __future__ import annotations

import argparse
import inspect
import json
import logging
import sys

import numpy as np
import scipy

from . import __version__, tolerances
from .catalog import CATALOG
from .errors import InvalidData, NoConvergence, UnsupportedGroup, YMStrataError
from .liegroup import group_from_name
from .strata import census, classify_point
from .surface import BundleData, Representation, central_name, residual
from .variety import SolverConfig, solve

log = logging.getLogger("ymstrata")

SCHEMA_VERSION = 1
EXIT_OK, EXIT_FAILED, EXIT_NO_CONVERGENCE, EXIT_USAGE, EXIT_DATA = 0, 1, 2, 64, 65


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


# --------------------------------------------------------------------------
# file formats


def _central_matrix(spec, text):
    if text is None or text == "I":
        return spec.identity()
    if text == "-I":
        return -spec.identity()
    raise UsageError(f"central target must be 'I' or '-I', got {text!r}")


def _encode_matrix(m):
    m = np.asarray(m)
    return {"re": np.real(m).tolist(), "im": np.imag(m).tolist()}


def _decode_matrix(d):
    try:
        re, im = np.array(d["re"], dtype=float), np.array(d["im"], dtype=float)
    except (KeyError, TypeError, ValueError) as exc:
        raise InvalidData(f"malformed matrix entry: {exc}") from None
    if re.shape != im.shape or re.ndim != 2:
        raise InvalidData("matrix real and imaginary parts must be equal-shape 2-d arrays")
    return re + 1j * im


def rep_to_document(rep):
    bundle = rep.bundle
    c = central_name(bundle.spec, bundle.central)
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "representation",
        "group": bundle.spec.name,
        "genus": bundle.genus,
        "central": c if c is not None else _encode_matrix(bundle.central),
        "phi": list(bundle.phi) if bundle.phi is not None else None,
        "holonomies": [_encode_matrix(g) for g in rep.holonomies],
        "residual": residual(rep),
    }


def rep_from_document(doc):
    """Rebuild and validate a representation; raises ``InvalidData``."""
    if not isinstance(doc, dict):
        raise InvalidData("representation file must hold a JSON object")
    try:
        spec = group_from_name(str(doc["group"]))
        genus = int(doc["genus"])
        hol = [_decode_matrix(m) for m in doc["holonomies"]]
    except KeyError as exc:
        raise InvalidData(f"missing field {exc}") from None
    except UnsupportedGroup as exc:
        raise InvalidData(str(exc)) from None
    central = doc.get("central", "I")
    if isinstance(central, dict):
        c = _decode_matrix(central)
    else:
        try:
            c = _central_matrix(spec, central)
        except UsageError as exc:
            raise InvalidData(str(exc)) from None
    if not spec.is_complex:
        if any(np.any(np.imag(g) != 0) for g in hol) or np.any(np.imag(c) != 0):
            raise InvalidData(f"{spec.name} holonomies must be real")
        hol, c = [np.real(g) for g in hol], np.real(c)
    bundle = BundleData(spec, genus, c, doc.get("phi"))
    rep = Representation(bundle, np.array(hol))
    log.info("loaded %s genus %d, residual %.3e", spec.name, genus, residual(rep))
    return rep


def load_rep(path):
    try:
        with open(path) as fh:
            doc = json.load(fh)
    except OSError as exc:
        raise InvalidData(f"cannot read {path}: {exc.strerror}") from None
    except json.JSONDecodeError as exc:
        raise InvalidData(f"{path} is not valid JSON: {exc}") from None
    return rep_from_document(doc)


def _jsonable(x):
    if isinstance(x, np.integer):
        return int(x)
    if isinstance(x, np.floating):
        return float(x)
    if isinstance(x, np.bool_):
        return bool(x)
    if isinstance(x, np.ndarray):
        return x.tolist()
    raise TypeError(f"not serializable: {type(x).__name__}")


def dumps(doc):
    return json.dumps(doc, sort_keys=True, indent=2, default=_jsonable) + "\n"


def _write(text, out):
    if out is None or out == "-":
        sys.stdout.write(text)
    else:
        with open(out, "w") as fh:
            fh.write(text)


def report(command, inputs, seeds, result):
    return {
        "schema_version": SCHEMA_VERSION,
        "kind": "report",
        "command": command,
        "inputs": inputs,
        "seeds": seeds,
        "tolerances": tolerances.get().as_dict(),
        "versions": {
            "ymstrata": __version__,
            "numpy": np.__version__,
            "scipy": scipy.__version__,
            "python": ".".join(map(str, sys.version_info[:3])),
        },
        "result": result,
    }


# --------------------------------------------------------------------------
# commands


def _parse_phi(text):
    if text is None:
        return None
    try:
        return tuple(int(p) for p in text.split(","))
    except ValueError:
        raise UsageError(f"--phi expects comma-separated signs, got {text!r}") from None


def _bundle(args):
    try:
        spec = group_from_name(args.group)
    except UnsupportedGroup as exc:
        raise UsageError(str(exc)) from None
    return BundleData(spec, args.genus, _central_matrix(spec, args.central), _parse_phi(args.phi))


def cmd_solve(args):
    bundle = _bundle(args)
    rep = solve(bundle, SolverConfig(seed=args.seed))
    log.info("converged, residual %.3e", residual(rep))
    _write(dumps(rep_to_document(rep)), args.out)
    return EXIT_OK


def cmd_classify(args):
    rep = load_rep(args.rep_file)
    pc = classify_point(rep)
    result = {"residual": residual(rep), "classification": pc.as_dict()}
    inputs = {"rep_file": args.rep_file, **rep.bundle.summary()}
    _write(dumps(report("classify", inputs, {}, result)), args.out)
    return EXIT_OK


def cmd_census(args):
    bundle = _bundle(args)
    rep = census(bundle, args.samples, SolverConfig(seed=args.seed), threads=args.threads)
    inputs = {**bundle.summary(), "samples": args.samples, "threads": args.threads}
    seeds = {"base": args.seed, "samples": [sd for _, sd, _ in rep.points if sd is not None]}
    _write(dumps(report("census", inputs, seeds, rep.as_dict())), args.out)
    return EXIT_OK


def _catalog_kwargs(fn, args):
    params = inspect.signature(fn).parameters
    kw = {}
    if "genus" in params and args.genus is not None:
        kw["genus"] = args.genus
    if "seed" in params:
        kw["seed"] = args.seed
    if args.samples is not None:
        for name in ("n_samples", "n_points"):
            if name in params:
                kw[name] = args.samples
    if args.phi is not None:
        if "phi" not in params:
            raise UsageError(f"{args.name} takes no --phi")
        kw["phi"] = _parse_phi(args.phi)
    if args.group is not None:
        if "spec" not in params:
            raise UsageError(f"{args.name} takes no --group")
        try:
            kw["spec"] = group_from_name(args.group)
        except UnsupportedGroup as exc:
            raise UsageError(str(exc)) from None
    if args.central is not None:
        if "parity" not in params:
            raise UsageError(f"{args.name} takes no --central")
        _central_matrix(group_from_name("U2"), args.central)
        kw["parity"] = "even" if args.central == "I" else "odd"
    return kw


def cmd_catalog(args):
    fn = CATALOG.get(args.name)
    if fn is None:
        raise UsageError(f"unknown catalog entry {args.name!r}; choose from {', '.join(CATALOG)}")
    kw = _catalog_kwargs(fn, args)
    rec = fn(**kw)
    inputs = {"name": args.name, **{k: (v.name if k == "spec" else v) for k, v in kw.items()}}
    seeds = {"base": args.seed} if "seed" in kw else {}
    _write(dumps(report("catalog", inputs, seeds, rec.as_dict())), args.out)
    return EXIT_OK if rec.passed else EXIT_FAILED


# --------------------------------------------------------------------------
# argument parsing


def _tolerance(text):
    name, sep, value = text.partition("=")
    if not sep:
        raise argparse.ArgumentTypeError(f"expected name=value, got {text!r}")
    if name not in tolerances.DEFAULT.as_dict():
        raise argparse.ArgumentTypeError(f"unknown tolerance {name!r}")
    try:
        v = float(value)
    except ValueError:
        raise argparse.ArgumentTypeError(f"not a number: {value!r}") from None
    if not v > 0:
        raise argparse.ArgumentTypeError("tolerances must be positive")
    return name, v


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="output path (default: standard output)")
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("--threads", type=int, default=1)
    common.add_argument("--tolerance", type=_tolerance, action="append", default=[],
                        metavar="NAME=VALUE", help="override a tolerance (group, num, rank, branch, rep)")
    common.add_argument("-v", "--verbose", action="count", default=0)

    bundle = argparse.ArgumentParser(add_help=False)
    bundle.add_argument("--group", required=True, help="SU2, SO3, U2, O2, O3 or TorusK(k)")
    bundle.add_argument("--genus", type=int, default=2)
    bundle.add_argument("--central", default="I", choices=("I", "-I"))
    bundle.add_argument("--phi", help="component signs per generator, e.g. -1,1,1,1")

    p = _Parser(prog="ymstrata", description=__doc__.splitlines()[0])
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)
    s = sub.add_parser("solve", parents=[common, bundle], help="solve for one representation")
    s.set_defaults(func=cmd_solve)
    s = sub.add_parser("classify", parents=[common], help="classify a representation file")
    s.add_argument("rep_file")
    s.set_defaults(func=cmd_classify)
    s = sub.add_parser("census", parents=[common, bundle], help="sample and stratify")
    s.add_argument("--samples", type=int, default=100)
    s.set_defaults(func=cmd_census)
    s = sub.add_parser("catalog", parents=[common], help="run a worked example")
    s.add_argument("name", help=", ".join(CATALOG))
    s.add_argument("--group")
    s.add_argument("--genus", type=int)
    s.add_argument("--central", choices=("I", "-I"))
    s.add_argument("--phi")
    s.add_argument("--samples", type=int)
    s.set_defaults(func=cmd_catalog)
    return p


def _join_central(argv):
    # argparse reads "-I" as an option; glue it to its flag
    out = []
    for tok in argv:
        if out and out[-1] == "--central" and tok.startswith("-"):
            out[-1] = f"--central={tok}"
        else:
            out.append(tok)
    return out


def main(argv=None):
    parser = build_parser()
    args = parser.parse_args(_join_central(sys.argv[1:] if argv is None else list(argv)))
    level = logging.WARNING - 10 * min(args.verbose, 2)
    logging.basicConfig(stream=sys.stderr, level=level, format="%(levelname)s %(name)s: %(message)s")
    if getattr(args, "samples", None) is not None and args.samples < 0:
        parser.error("--samples must be non-negative")
    if getattr(args, "genus", None) is not None and args.genus < 1:
        parser.error("--genus must be at least 1")
    if args.threads < 1:
        parser.error("--threads must be at least 1")
    try:
        with tolerances.override(**dict(args.tolerance)):
            return args.func(args)
    except UsageError as exc:
        parser.error(str(exc))
    except NoConvergence as exc:
        log.error("%s", exc)
        return EXIT_NO_CONVERGENCE
    except (InvalidData, ValueError) as exc:
        log.error("invalid data: %s", exc)
        return EXIT_DATA
    except YMStrataError as exc:
        log.error("%s: %s", type(exc).__name__, exc)
        return EXIT_DATA


if __name__ == "__main__":
    sys.exit(main())
