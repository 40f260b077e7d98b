"""Command-line front door.

Exit codes branch on mathematical verdicts so shell pipelines can too:
0 certified-true / success, 1 certified-false (or a value-level failure such
as an empty colouring space), 2 undecided at the precision cap, 3 size-cap
exceeded, 64 usage error.  Reports are JSON on stdout, deterministic
byte-for-byte for fixed flags and seeds; wall-clock timing is attached only
with --timings so the default output stays reproducible.
"""

from __future__ import annotations

import argparse
import csv
import json
import os
import sys
import time

from . import __version__
from .bipartite import (
    PreconditionError,
    choosable_certificate,
    half_list_size,
    scan_window_argument,
    threshold_table,
    uncovered_region_scan,
)
from .certificates import CERTIFIED_FALSE, CERTIFIED_TRUE, UNDECIDED
from .coloring import (
    KSpec,
    ListAssignment,
    NoColoringExists,
    SizeCapError,
    chromatic_number,
    count_list_colorings,
    list_chromatic_number,
    uniform_sample_coloring,
)
from .graphs import (
    Graph6Error,
    UnknownGraphError,
    graph_from_json,
    graph_to_json_dict,
    parse_graph6,
    encode_graph6,
    zoo,
)
from .intervals import PrecisionExhausted
from .orientation import alon_tarsi_difference, halved_outdegree_orientation
from .property_p import certify_default_quadruplet, minimal_delta0
from .ratio import ZeroDenominatorError, color_count_ratio

EXIT_TRUE = 0
EXIT_FALSE = 1
EXIT_UNDECIDED = 2
EXIT_SIZE_CAP = 3
EXIT_USAGE = 64

_VERDICT_EXIT = {CERTIFIED_TRUE: EXIT_TRUE, CERTIFIED_FALSE: EXIT_FALSE, UNDECIDED: EXIT_UNDECIDED}


class UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # exit 64 instead of argparse's 2
        raise UsageError(message)


def _report(command: str, parameters: dict, results: dict, seeds: dict | None = None,
            started: float | None = None, timings: bool = False) -> dict:
    rep = {
        "command": command,
        "parameters": parameters,
        "results": results,
        "seeds": seeds or {},
        "tool_version": __version__,
    }
    if timings and started is not None:
        rep["timing_ms"] = round(1000 * (time.monotonic() - started), 3)
    return rep


def _emit(report: dict, out_path: str | None) -> None:
    text = json.dumps(report, indent=2, sort_keys=True)
    if out_path:
        with open(out_path, "w") as fh:
            fh.write(text + "\n")
    else:
        sys.stdout.write(text + "\n")


def _load_graph(args):
    if getattr(args, "zoo", None):
        return zoo(args.zoo)
    path = getattr(args, "infile", None)
    if not path:
        raise UsageError("one of --zoo or --in is required")
    with open(path) as fh:
        text = fh.read().strip()
    if text.startswith("{"):
        return graph_from_json(text)
    return parse_graph6(text)


def _load_lists(spec_text: str, g) -> ListAssignment:
    if spec_text.startswith("uniform:"):
        size = int(spec_text.split(":", 1)[1])
        if size < 0:
            raise UsageError("uniform list size must be non-negative")
        return ListAssignment.uniform(g, range(1, size + 1))
    with open(spec_text) as fh:
        return ListAssignment.from_json_dict(json.load(fh))


# ---------------------------------------------------------------------------
# property-p
# ---------------------------------------------------------------------------


def _cmd_property_p(args) -> int:
    started = time.monotonic()
    if args.delta0 < 1 or args.ell < 1 or args.t < 1:
        raise UsageError("--delta0, --ell, --t must be positive")
    try:
        kspec = KSpec.parse(args.k)
    except ValueError as exc:
        raise UsageError(str(exc))
    params = {"delta0": args.delta0, "ell": args.ell, "t": args.t, "k": kspec.label(),
              "tail_threshold": args.tail_threshold}
    results: dict = {}
    if args.search_min is not None:
        found, cert = minimal_delta0(args.ell, args.t, kspec, args.search_min)
        results["search_min"] = {"scan_limit": args.search_min, "minimal_delta0": found,
                                 "certificate": cert.to_json_dict()}
        code = EXIT_TRUE if found is not None else EXIT_FALSE
    else:
        cert = certify_default_quadruplet(args.delta0, args.ell, args.t, kspec,
                                          tail_threshold=args.tail_threshold)
        results["certificate"] = cert.to_json_dict()
        results["verdict"] = cert.verdict
        code = _VERDICT_EXIT[cert.verdict]
    _emit(_report("property-p certify", params, results,
                  started=started, timings=args.timings), args.out)
    return code


# ---------------------------------------------------------------------------
# bip
# ---------------------------------------------------------------------------


def _cmd_bip_table1(args) -> int:
    started = time.monotonic()
    try:
        rows = threshold_table()
    except PrecisionExhausted as exc:
        _emit(_report("bip table1", {}, {"error": f"ambiguous-ceiling: {exc}"}), args.out)
        return EXIT_UNDECIDED
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["delta_a", "value"])
            w.writerows(rows)
    _emit(_report("bip table1", {}, {"rows": [list(r) for r in rows]},
                  started=started, timings=args.timings), args.out)
    return EXIT_TRUE


def _cmd_bip_certify(args) -> int:
    started = time.monotonic()
    ka = args.ka if args.ka is not None else half_list_size(args.da)
    kb = args.kb if args.kb is not None else half_list_size(args.db)
    try:
        cert = choosable_certificate(args.da, args.db, ka, kb)
    except (PreconditionError, ValueError) as exc:
        raise UsageError(str(exc))
    results = {"verdict": cert.verdict, "certificate": cert.to_json_dict()}
    if cert.verdict == CERTIFIED_TRUE:
        results["condition"] = cert.witness["condition"]
    _emit(_report("bip certify", {"da": args.da, "db": args.db, "ka": ka, "kb": kb},
                  results, started=started, timings=args.timings), args.out)
    return _VERDICT_EXIT[cert.verdict]


def _cmd_bip_scan(args) -> int:
    started = time.monotonic()
    if args.window < 1:
        raise UsageError("--window must be positive")
    threads = args.threads or int(os.environ.get("CHROMACERT_THREADS", "1"))
    scan = uncovered_region_scan(args.window, threads=threads)
    if args.csv:
        with open(args.csv, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["delta_a", "delta_b"])
            w.writerows(scan.pairs)
    results = scan.to_json_dict()
    results["window_argument"] = scan_window_argument(args.window)
    _emit(_report("bip scan", {"window": args.window}, results,
                  started=started, timings=args.timings), args.out)
    return EXIT_UNDECIDED if scan.undecided else EXIT_TRUE


# ---------------------------------------------------------------------------
# graph
# ---------------------------------------------------------------------------


def _chi_bound(delta: int) -> int:
    return (delta + 2) // 2 + 1  # ceil((delta+1)/2) + 1


def _cmd_graph(args) -> int:
    started = time.monotonic()
    sub = args.graph_cmd
    if sub == "zoo":
        g = zoo(args.name)
        results = {"graph6": encode_graph6(g), "json": graph_to_json_dict(g),
                   "n": g.n, "m": g.num_edges(), "max_degree": g.max_degree}
        _emit(_report("graph zoo", {"name": args.name}, results,
                      started=started, timings=args.timings), args.out)
        return EXIT_TRUE

    g = _load_graph(args)
    if sub == "chi":
        chi = chromatic_number(g)
        bound = _chi_bound(g.max_degree)
        results = {"chi": chi, "max_degree": g.max_degree, "bound": bound,
                   "within_bound": chi <= bound, "sharp": chi == bound}
        _emit(_report("graph chi", {"n": g.n}, results,
                      started=started, timings=args.timings), args.out)
        return EXIT_TRUE
    if sub == "chi-list":
        value = list_chromatic_number(g, args.kmax)
        results = {"chi_list": value, "kmax": args.kmax,
                   "exceeded_kmax": value > args.kmax}
        _emit(_report("graph chi-list", {"n": g.n, "kmax": args.kmax}, results,
                      started=started, timings=args.timings), args.out)
        return EXIT_TRUE
    if sub == "count":
        L = _load_lists(args.lists, g)
        count = count_list_colorings(g, L)
        _emit(_report("graph count", {"n": g.n}, {"count": str(count)},
                      started=started, timings=args.timings), args.out)
        return EXIT_TRUE
    if sub == "ratio":
        L = _load_lists(args.lists, g)
        try:
            r = color_count_ratio(g, L, args.vertex)
        except ZeroDenominatorError as exc:
            _emit(_report("graph ratio", {"n": g.n, "vertex": args.vertex},
                          {"error": str(exc)}), args.out)
            return EXIT_FALSE
        results = {"ratio": f"{r.numerator}/{r.denominator}",
                   "num": str(r.numerator), "den": str(r.denominator)}
        _emit(_report("graph ratio", {"n": g.n, "vertex": args.vertex}, results,
                      started=started, timings=args.timings), args.out)
        return EXIT_TRUE
    if sub == "orient":
        orientation, trace = halved_outdegree_orientation(g)
        out = orientation.outdegrees()
        results = {
            "orientation": orientation.to_json_dict(),
            "outdegrees": out,
            "bound_holds": all(out[v] <= (g.degree(v) + 1) // 2 for v in range(g.n)),
            "trace": trace.to_json_dict(),
        }
        _emit(_report("graph orient", {"n": g.n}, results,
                      started=started, timings=args.timings), args.out)
        return EXIT_TRUE
    if sub == "at":
        orientation, _ = halved_outdegree_orientation(g)
        diff = alon_tarsi_difference(orientation)
        results = {"alon_tarsi_difference": str(diff),
                   "orientation": orientation.to_json_dict()}
        _emit(_report("graph at", {"n": g.n}, results,
                      started=started, timings=args.timings), args.out)
        return EXIT_TRUE
    if sub == "sample":
        L = _load_lists(args.lists, g)
        try:
            coloring = uniform_sample_coloring(g, L, args.seed)
        except NoColoringExists as exc:
            _emit(_report("graph sample", {"n": g.n}, {"error": str(exc)},
                          seeds={"seed": args.seed}), args.out)
            return EXIT_FALSE
        results = {"coloring": {str(v): c for v, c in sorted(coloring.items())}}
        _emit(_report("graph sample", {"n": g.n}, results,
                      seeds={"seed": args.seed}, started=started,
                      timings=args.timings), args.out)
        return EXIT_TRUE
    raise UsageError(f"unknown graph subcommand {sub!r}")


# ---------------------------------------------------------------------------
# wiring
# ---------------------------------------------------------------------------


def _build_parser() -> _Parser:
    p = _Parser(prog="chromacert", description=__doc__)
    p.add_argument("--version", action="version", version=f"chromacert {__version__}")
    sub = p.add_subparsers(dest="cmd", required=True)

    pp = sub.add_parser("property-p", help="exact quadruplet certification")
    pps = pp.add_subparsers(dest="pp_cmd", required=True)
    cert = pps.add_parser("certify")
    cert.add_argument("--delta0", type=int, required=True)
    cert.add_argument("--ell", type=int, required=True)
    cert.add_argument("--t", type=int, required=True)
    cert.add_argument("--k", type=str, required=True,
                      help="half | three-quarter | two-thirds | const:N")
    cert.add_argument("--tail-threshold", type=int, default=540)
    cert.add_argument("--search-min", type=int, default=None,
                      help="scan for the minimal delta0 up to this limit")
    cert.add_argument("--out", type=str, default=None)
    cert.add_argument("--timings", action="store_true")
    cert.set_defaults(func=_cmd_property_p)

    bip = sub.add_parser("bip", help="bipartite choosability conditions")
    bips = bip.add_subparsers(dest="bip_cmd", required=True)
    t1 = bips.add_parser("table1")
    t1.add_argument("--csv", type=str, default=None)
    t1.add_argument("--out", type=str, default=None)
    t1.add_argument("--timings", action="store_true")
    t1.set_defaults(func=_cmd_bip_table1)
    bc = bips.add_parser("certify")
    bc.add_argument("--da", type=int, required=True)
    bc.add_argument("--db", type=int, required=True)
    bc.add_argument("--ka", type=int, default=None)
    bc.add_argument("--kb", type=int, default=None)
    bc.add_argument("--out", type=str, default=None)
    bc.add_argument("--timings", action="store_true")
    bc.set_defaults(func=_cmd_bip_certify)
    bs = bips.add_parser("scan")
    bs.add_argument("--window", type=int, required=True)
    bs.add_argument("--threads", type=int, default=None)
    bs.add_argument("--csv", type=str, default=None)
    bs.add_argument("--out", type=str, default=None)
    bs.add_argument("--timings", action="store_true")
    bs.set_defaults(func=_cmd_bip_scan)

    gr = sub.add_parser("graph", help="zoo, colouring and orientation queries")
    grs = gr.add_subparsers(dest="graph_cmd", required=True)

    def graph_sub(name, **extra_flags):
        q = grs.add_parser(name)
        if name == "zoo":
            q.add_argument("--name", type=str, required=True)
        else:
            q.add_argument("--zoo", type=str, default=None)
            q.add_argument("--in", dest="infile", type=str, default=None)
        for flag, kwargs in extra_flags.items():
            q.add_argument(flag, **kwargs)
        q.add_argument("--out", type=str, default=None)
        q.add_argument("--timings", action="store_true")
        q.set_defaults(func=_cmd_graph)
        return q

    graph_sub("zoo")
    graph_sub("chi")
    graph_sub("chi-list", **{"--kmax": dict(type=int, default=4)})
    graph_sub("count", **{"--lists": dict(type=str, required=True)})
    graph_sub("ratio", **{"--lists": dict(type=str, required=True),
                          "--vertex": dict(type=int, required=True)})
    graph_sub("orient")
    graph_sub("at")
    graph_sub("sample", **{"--lists": dict(type=str, required=True),
                           "--seed": dict(type=int, default=0)})
    return p


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (UnknownGraphError, Graph6Error, FileNotFoundError, json.JSONDecodeError,
            ValueError) as exc:
        if isinstance(exc, SizeCapError):
            print(f"size cap: {exc}", file=sys.stderr)
            return EXIT_SIZE_CAP
        print(f"usage error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except PrecisionExhausted as exc:
        print(f"undecided: {exc}", file=sys.stderr)
        return EXIT_UNDECIDED


if __name__ == "__main__":
    sys.exit(main())
