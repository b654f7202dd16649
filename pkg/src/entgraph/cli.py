"""Command line interface.

Exit codes: 0 ok, 2 parse error, 3 dimension/norm error, 4 constraint
violation, 5 sampling round-trip mismatch, 6 formula check failure.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ProcessPoolExecutor

from . import __version__
from .concurrence import PURE_EPS, four_concurrence, full_report, pair_concurrence, tri_concurrence
from .errors import BadParamsError, ConstraintViolation, EntgraphError
from .formats import (
    StateFileError,
    dumps,
    graph_document,
    graph_dot,
    num,
    parse_inline,
    parse_state_file,
    report_document,
    report_text,
    write_state_file,
)
from .gsd import GREEK, GREEK_OF, RepresentativeSpec, build_representative, family, predict, sample
from .qcore import normalize
from .taxonomy import EDGE_EPS, REPRESENTATIVE_LABELS, ClassLabel, classify

EXIT_OK = 0
EXIT_PARSE = 2
EXIT_DIMENSION = 3
EXIT_CONSTRAINT = 4
EXIT_MISMATCH = 5
EXIT_CHECK = 6

CHECK_TOL = 1e-9
GLOBAL_DEFAULTS = {"json": False, "seed": 0, "edge_eps": EDGE_EPS, "purity_eps": PURE_EPS}


class CliError(Exception):
    def __init__(self, code, message):
        super().__init__(message)
        self.code = code


def _load_state(args):
    if getattr(args, "amps", None):
        amps, comment = parse_inline(args.amps), None
    else:
        if not args.path:
            raise CliError(EXIT_PARSE, "give a state file path or --amps")
        try:
            text = sys.stdin.read() if args.path == "-" else open(args.path, encoding="utf-8").read()
        except OSError as exc:
            raise CliError(EXIT_PARSE, str(exc)) from None
        amps, comment = parse_state_file(text)
    return normalize(amps), comment


def cmd_analyze(args, out):
    psi, _ = _load_state(args)
    report = classify(psi, edge_eps=args.edge_eps, purity_eps=args.purity_eps)
    doc = report_document(psi, report, args.edge_eps, args.purity_eps)
    out.write(dumps(doc) if args.json else report_text(doc))
    return EXIT_OK


def _parse_assignments(tokens) -> dict:
    """``["alpha=0.6", "ζ=η=0.1"]`` -> ``{"alpha": 0.6, "zeta": 0.1, "eta": 0.1}``."""
    params = {}
    for tok in tokens:
        *names, value = tok.split("=")
        if not names:
            raise CliError(EXIT_PARSE, f"expected name=value, got {tok!r}")
        try:
            x = float(value)
        except ValueError:
            raise CliError(EXIT_PARSE, f"bad number in {tok!r}") from None
        for name in names:
            params[GREEK.get(name.strip(), name.strip())] = x
    return params


def _spec_text(spec) -> str:
    return " ".join(f"{GREEK_OF.get(k, k)}={num(v)!r}" for k, v in spec.params.items())


def _known_label(text: str):
    try:
        return family(text).label
    except BadParamsError as exc:
        raise CliError(EXIT_PARSE, str(exc)) from None


def cmd_make(args, out):
    _known_label(args.label)
    if args.random:
        spec = sample(args.label, args.seed)
    else:
        params = _parse_assignments(args.params)
        spec = (RepresentativeSpec.normalized(args.label, params) if args.normalize
                else RepresentativeSpec(args.label, params))
    psi = build_representative(spec)
    if args.verify:
        got = classify(psi, edge_eps=args.edge_eps, purity_eps=args.purity_eps).label
        if got != spec.label:
            raise CliError(EXIT_MISMATCH, f"built {spec.label} but it classifies as {got}")
    out.write(write_state_file(psi, f"class {spec.label.value}: {_spec_text(spec)}"))
    return EXIT_OK


def _sample_one(job):
    label, seed, index, edge_eps, purity_eps = job
    spec = sample(label, [seed, index])
    report = classify(build_representative(spec), edge_eps=edge_eps, purity_eps=purity_eps)
    weights = list(report.graph.edges.values())
    return index, report.label.value, spec.params, weights


def cmd_sample(args, out):
    if args.count < 1:
        raise CliError(EXIT_PARSE, "count must be at least 1")
    seed = args.seed_pos if args.seed_pos is not None else args.seed
    labels = REPRESENTATIVE_LABELS if args.label == "all" else (_known_label(args.label),)
    rows, failures = [], []
    for label in labels:
        jobs = [(label, seed, i, args.edge_eps, args.purity_eps) for i in range(args.count)]
        if args.workers > 1:
            with ProcessPoolExecutor(args.workers) as pool:
                results = list(pool.map(_sample_one, jobs, chunksize=64))
        else:
            results = [_sample_one(job) for job in jobs]
        ok = 0
        weights = []
        for index, got, params, w in results:
            weights += w
            if got == label.value:
                ok += 1
            else:
                failures.append((label.value, index, got, params))
        rows.append((label.value, ok, len(results),
                     min(weights) if weights else None, max(weights) if weights else None))
    if args.json:
        out.write(dumps({
            "seed": seed,
            "rows": [{"label": r[0], "ok": r[1], "count": r[2],
                      "min_edge": None if r[3] is None else num(r[3]),
                      "max_edge": None if r[4] is None else num(r[4])} for r in rows],
            "mismatches": [{"label": f[0], "draw": f[1], "got": f[2],
                            "params": {k: num(v) for k, v in f[3].items()}} for f in failures],
        }))
    else:
        out.write(f"{'class':<6} {'ok':>11}  {'min edge':>12}  {'max edge':>12}\n")
        for label, ok, count, lo, hi in rows:
            lo_s = "-" if lo is None else f"{lo:.6g}"
            hi_s = "-" if hi is None else f"{hi:.6g}"
            out.write(f"{label:<6} {ok:>5}/{count:<5}  {lo_s:>12}  {hi_s:>12}\n")
    for label, index, got, params in failures:
        sys.stderr.write(f"mismatch: class {label} draw {index} classified {got}; "
                         + " ".join(f"{k}={v!r}" for k, v in params.items()) + "\n")
    return EXIT_MISMATCH if failures else EXIT_OK


def check_rows(draws: int = 200, seed: int = 0):
    """Worst deviation of every closed form against numerics, per class.

    Yields ``(label, formula, max_abs_dev, status)`` with status one of
    ``pass``, ``FAIL``, ``info``.
    """
    for label in REPRESENTATIVE_LABELS:
        fam = family(label)
        dev: dict = {}
        nonzero_ok = True
        ghz_gap = 0.0
        for k in range(draws):
            spec = sample(label, [seed, k])
            psi = build_representative(spec)
            pred = predict(spec)
            for (i, j), value in pred.pairwise.items():
                key = f"C{i}{j}"
                dev[key] = max(dev.get(key, 0.0), abs(pair_concurrence(psi, i, j) - value))
            if fam.n == 3:
                dev["C123"] = max(dev.get("C123", 0.0), abs(tri_concurrence(psi) - pred.global_value))
            else:
                g = four_concurrence(psi)
                nonzero_ok &= (g >= 1e-6) if pred.global_nonzero else (g <= CHECK_TOL)
                if pred.triple_value is not None:
                    key = "C" + "".join(map(str, pred.triple_subset))
                    got = full_report(psi).triples.get(pred.triple_subset, float("nan"))
                    dev[key] = max(dev.get(key, 0.0), abs(got - pred.triple_value))
                if label == ClassLabel.C2G:
                    p = spec.params
                    ghz_gap = max(ghz_gap, abs(g - 2 * p["alpha"] * p["omega"]))
        for key, value in dev.items():
            yield label.value, key, value, "pass" if value <= CHECK_TOL else "FAIL"
        if fam.n == 4:
            claim = "C1234 > 0" if label.value >= "2g" else "C1234 = 0"
            yield label.value, claim, None, "pass" if nonzero_ok else "FAIL"
        if label == ClassLabel.C2G:
            yield (label.value, "C1234 vs 2*alpha*omega", ghz_gap,
                   "info: convention mismatch (7-factor geometric mean with 4/3-normalized 2|2 splits)")


def cmd_check(args, out):
    rows = list(check_rows(args.draws, args.seed))
    if args.json:
        out.write(dumps({"draws": args.draws, "tolerance": CHECK_TOL, "rows": [
            {"class": r[0], "formula": r[1], "max_dev": None if r[2] is None else num(r[2]),
             "status": r[3]} for r in rows]}))
    else:
        out.write(f"{'class':<6} {'formula':<24} {'max |dev|':>12}  status\n")
        for label, formula, value, status in rows:
            v = "-" if value is None else f"{value:.3e}"
            out.write(f"{label:<6} {formula:<24} {v:>12}  {status}\n")
    failed = [r for r in rows if r[3] == "FAIL"]
    return EXIT_CHECK if failed else EXIT_OK


def cmd_export(args, out):
    psi, _ = _load_state(args)
    report = classify(psi, edge_eps=args.edge_eps, purity_eps=args.purity_eps)
    if args.format == "dot":
        out.write(graph_dot(report.graph))
    else:
        out.write(dumps(graph_document(report.graph)))
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False, argument_default=argparse.SUPPRESS)
    common.add_argument("--json", action="store_true", default=argparse.SUPPRESS, help="machine-readable output")
    common.add_argument("--seed", type=int, help="random seed (default 0)")
    common.add_argument("--edge-eps", type=float, help=f"edge/circle cutoff (default {EDGE_EPS:g})")
    common.add_argument("--purity-eps", type=float, help=f"pure-marginal cutoff on 1-Tr(rho^2) (default {PURE_EPS:g})")

    parser = argparse.ArgumentParser(
        prog="entgraph", parents=[common],
        description="Entanglement measures, entangled graphs and class labels of 2-4 qubit pure states.",
    )
    parser.add_argument("--version", action="version", version=f"entgraph {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("analyze", parents=[common], help="classify a state and report all measures")
    p.add_argument("path", nargs="?", help="state file ('-' for stdin)")
    p.add_argument("--amps", help="inline amplitudes, e.g. '1,0,0,1'")
    p.set_defaults(func=cmd_analyze)

    p = sub.add_parser("make", parents=[common], help="write the representative state of a class")
    p.add_argument("label")
    p.add_argument("params", nargs="*", help="assignments such as alpha=0.6 or ζ=η=0.1")
    p.add_argument("--random", action="store_true", help="draw parameters with --seed")
    p.add_argument("--verify", action="store_true", help="classify the result and insist on the label")
    p.add_argument("--normalize", action="store_true", help="rescale parameters to a unit-norm state")
    p.set_defaults(func=cmd_make)

    p = sub.add_parser("sample", parents=[common], help="round-trip random representatives")
    p.add_argument("label", help="class label or 'all'")
    p.add_argument("count", type=int)
    p.add_argument("seed_pos", nargs="?", type=int, metavar="seed")
    p.add_argument("--workers", type=int, default=1)
    p.set_defaults(func=cmd_sample)

    p = sub.add_parser("check", parents=[common], help="verify every closed form numerically")
    p.add_argument("--draws", type=int, default=200)
    p.set_defaults(func=cmd_check)

    p = sub.add_parser("export", parents=[common], help="export the entangled graph")
    p.add_argument("path", nargs="?")
    p.add_argument("--amps")
    p.add_argument("--format", choices=("dot", "json"), default="dot")
    p.set_defaults(func=cmd_export)
    return parser


def main(argv=None, out=None) -> int:
    out = out or sys.stdout
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_PARSE if exc.code else EXIT_OK
    # global flags may sit before or after the subcommand, so defaults are filled in last
    for name, value in GLOBAL_DEFAULTS.items():
        if not hasattr(args, name):
            setattr(args, name, value)
    try:
        return args.func(args, out)
    except CliError as exc:
        sys.stderr.write(f"entgraph: {exc}\n")
        return exc.code
    except StateFileError as exc:
        sys.stderr.write(f"entgraph: {exc}\n")
        return EXIT_PARSE
    except ConstraintViolation as exc:
        sys.stderr.write(f"entgraph: {exc}\n")
        return EXIT_CONSTRAINT
    except BadParamsError as exc:
        sys.stderr.write(f"entgraph: {exc}\n")
        return EXIT_DIMENSION
    except EntgraphError as exc:
        sys.stderr.write(f"entgraph: {exc}\n")
        return EXIT_DIMENSION


def main_entry():
    sys.exit(main())
