"""Command-line entry point: build, verify and report.

Exit status is 0 when every applicable claim holds, 1 when a claim fails or
a search gives up, and 2 for bad input.
"""

from __future__ import annotations

import argparse
import sys
import time

from . import __version__
from .algebra import GeneratingSet, make_group, psl2_canonical
from .constructions import (
    ApproxInstance,
    build_approx,
    build_bounded,
    build_sl2_cayley,
    parse_config,
    sample_good_H,
)
from .errors import BracketFailure, EmlabError, HypothesisFailure, RetryExhausted, SearchExhausted
from .graphcore import petersen_graph, read_graph, write_graph
from .harness import friedman_check, km_check, perturbed_f, run_lemmas
from .harness.empirical import FRIEDMAN_REQUIRED, FRIEDMAN_SLACK, KM_THRESHOLD
from .report import VerificationReport
from .spectra import eigenvalues, to_csv

EXIT_PASS, EXIT_FAIL, EXIT_INPUT = 0, 1, 2


def _int_list(text: str) -> list:
    try:
        vals = [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None
    if not vals:
        raise argparse.ArgumentTypeError("list must be nonempty")
    return vals


def _config(args) -> dict:
    skip = {"func", "command", "out", "format", "graph_out"}
    return {k: v for k, v in sorted(vars(args).items()) if k not in skip}


def _emit(text: str, out) -> None:
    if out:
        with open(out, "w", encoding="utf-8") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


def _measured_csv(measured: dict) -> str:
    lines = ["name,value"]
    for k, v in measured.items():
        lines.append(f"{k},{v:.16e}" if isinstance(v, float) else f"{k},{v}")
    return "\n".join(lines) + "\n"


def _finish(args, kind, params, measured, claims, tolerances, start, spectrum=None) -> int:
    report = VerificationReport(
        kind,
        {**params, "config": _config(args)},
        measured,
        claims,
        tolerances,
        seed=getattr(args, "seed", None),
        wall_clock=time.perf_counter() - start,
    )
    if args.format == "csv":
        _emit(to_csv(spectrum) if spectrum is not None else _measured_csv(measured), args.out)
    else:
        _emit(report.to_json(), args.out)
    return EXIT_PASS if report.passed else EXIT_FAIL


def _finish_build(args, res, start) -> int:
    if getattr(args, "graph_out", None):
        write_graph(res.graph, args.graph_out)
    return _finish(args, res.kind, res.params, res.measured, res.claims, res.tolerances, start, res.spectrum)


def read_psl2_gens(path, q: int) -> GeneratingSet:
    """One matrix per line as ``a b c d`` (row-major); signs are normalized."""
    psl2 = make_group("psl2", q)
    vals = []
    with open(path, encoding="ascii") as fh:
        for line in fh:
            line = line.split("#", 1)[0].strip()
            if line:
                vals.append(psl2_canonical(tuple(int(x) % q for x in line.split()), q))
    return GeneratingSet.from_values(psl2, vals)


def cmd_cayley(args) -> int:
    start = time.perf_counter()
    S0 = read_psl2_gens(args.gens, args.q) if args.gens else None
    res = build_sl2_cayley(args.q, S0, budget=args.budget, seed=args.seed, route=args.route, tol=args.tol)
    return _finish_build(args, res, start)


def cmd_bounded(args) -> int:
    start = time.perf_counter()
    return _finish_build(args, build_bounded(args.q, args.m, tol=args.tol), start)


def cmd_approx(args) -> int:
    start = time.perf_counter()
    if args.ell <= 10:
        raise HypothesisFailure("ell > 10", f"got ell = {args.ell}")
    if args.petersen:
        inst = ApproxInstance.from_graph(petersen_graph(), args.ell, args.eps)
    else:
        inst = sample_good_H(args.n, args.eps, args.seed, args.tries, args.ell)
    res = build_approx(inst, tol=args.tol)
    res.params["H"] = "petersen" if args.petersen else "sampled"
    res.measured.update({k: v for k, v in inst.measured.items() if k == "tries"})
    return _finish_build(args, res, start)


def cmd_spectrum(args) -> int:
    spec = eigenvalues(read_graph(args.input))
    _emit(to_csv(spec), args.out)
    return EXIT_PASS


def cmd_km(args) -> int:
    start = time.perf_counter()
    measured, claims = km_check(args.n, args.samples, args.bins, args.seed, args.threshold)
    return _finish(args, "kesten-mckay", {}, measured, claims, {"l1": args.threshold}, start)


def cmd_friedman(args) -> int:
    start = time.perf_counter()
    measured, claims = friedman_check(args.n, args.samples, args.seed, args.slack, args.required)
    return _finish(args, "friedman", {}, measured, claims, {"slack": args.slack}, start)


def cmd_lemmas(args) -> int:
    start = time.perf_counter()
    kw = {"f": perturbed_f(args.perturb)} if args.perturb is not None else {}
    measured, claims = run_lemmas(args.ell, args.m, **kw)
    return _finish(args, "lemmas", {}, measured, claims, {"finite_difference": 1e-4}, start)


def cmd_run(args) -> int:
    with open(args.config, encoding="utf-8") as fh:
        cfg = parse_config(fh.read())
    kind = cfg.pop("construction")
    argv = [kind]
    rename = {"ells": "ell", "ms": "m"}
    for k, v in cfg.items():
        flag = "--" + rename.get(k, k)
        if isinstance(v, bool):
            if v:
                argv.append(flag)
        elif isinstance(v, list):
            argv += [flag, ",".join(str(x) for x in v)]
        else:
            argv += [flag, str(v)]
    if args.out:
        argv += ["--out", args.out]
    argv += ["--format", args.format]
    return main(argv)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="emlab",
        description="Build graphs with many second eigenvalues and verify their spectra.",
    )
    parser.add_argument("--version", action="version", version=f"%(prog)s {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    def common(p, seed=True):
        p.add_argument("--tol", type=float, default=None,
                       help="eigenvalue clustering tolerance (default: max(1e-8, 1e-12 n lambda1))")
        p.add_argument("--out", default=None, help="output file (default: stdout)")
        p.add_argument("--format", choices=("json", "csv"), default="json")
        if seed:
            p.add_argument("--seed", type=int, default=0)

    p = sub.add_parser("cayley", help="Cayley graph on SL(2,q) x| F_q^2")
    p.add_argument("--q", type=int, default=3)
    p.add_argument("--budget", type=int, default=1000, help="candidate sets tried per search")
    p.add_argument("--route", choices=("auto", "lift", "direct", "augment"), default="auto")
    p.add_argument("--gens", default=None, help="file of PSL(2,q) generators, one 'a b c d' per line")
    p.add_argument("--graph-out", default=None)
    common(p)
    p.set_defaults(func=cmd_cayley)

    p = sub.add_parser("bounded", help="degree-4 subdivided Cayley graph over affine(q)")
    p.add_argument("--q", type=int, required=True)
    p.add_argument("--m", type=int, default=None)
    p.add_argument("--graph-out", default=None)
    common(p, seed=False)
    p.set_defaults(func=cmd_bounded)

    p = sub.add_parser("approx", help="subdivided K4-blowup of a random 3-regular graph")
    p.add_argument("--n", type=int, default=50, help="vertices of the base graph H")
    p.add_argument("--ell", type=int, default=11)
    p.add_argument("--eps", type=float, default=1.0)
    p.add_argument("--tries", type=int, default=100)
    p.add_argument("--petersen", action="store_true", help="use the Petersen graph as H")
    p.add_argument("--graph-out", default=None)
    common(p)
    p.set_defaults(func=cmd_approx)

    p = sub.add_parser("spectrum", help="adjacency spectrum of a graph file as CSV")
    p.add_argument("--in", dest="input", required=True)
    p.add_argument("--out", default=None)
    p.set_defaults(func=cmd_spectrum)

    p = sub.add_parser("km", help="histogram of random 3-regular spectra vs the limiting density")
    p.add_argument("--n", type=int, default=2000)
    p.add_argument("--samples", type=int, default=5)
    p.add_argument("--bins", type=int, default=40)
    p.add_argument("--threshold", type=float, default=KM_THRESHOLD)
    common(p)
    p.set_defaults(func=cmd_km)

    p = sub.add_parser("friedman", help="how often lambda2 of a random 3-regular graph is near 2 sqrt 2")
    p.add_argument("--n", type=int, default=500)
    p.add_argument("--samples", type=int, default=10)
    p.add_argument("--slack", type=float, default=FRIEDMAN_SLACK)
    p.add_argument("--required", type=int, default=FRIEDMAN_REQUIRED)
    common(p)
    p.set_defaults(func=cmd_friedman)

    p = sub.add_parser("lemmas", help="grid checks of the Chebyshev and transfer-function bounds")
    p.add_argument("--ell", type=_int_list, default=[11, 12, 13, 14, 15])
    p.add_argument("--m", type=_int_list, default=[4, 5, 6, 7, 8])
    p.add_argument("--perturb", type=float, default=None, help=argparse.SUPPRESS)
    common(p, seed=False)
    p.set_defaults(func=cmd_lemmas)

    p = sub.add_parser("run", help="run an instance described by a key = value file")
    p.add_argument("config")
    p.add_argument("--out", default=None)
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=cmd_run)
    return parser


def main(argv=None) -> int:
    parser = build_parser()
    args = parser.parse_args(argv)
    try:
        return args.func(args)
    except (SearchExhausted, RetryExhausted, BracketFailure) as exc:
        print(f"emlab: {exc}", file=sys.stderr)
        return EXIT_FAIL
    except (EmlabError, ValueError, OSError) as exc:
        print(f"emlab: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
