"""Command-line front end.

Exit status: 0 on success, 1 when a check fails, 2 on usage or input errors.
"""

from __future__ import annotations

import argparse
import gzip
import json
import logging
import sys
from pathlib import Path

from . import formats
from .enumeration import (
    GENERATOR_VERSION,
    canonical_form,
    dedupe,
    enumerate_quandles,
    enumerate_quasiorders,
    enumerate_topological_quandles,
)
from .errors import QuandleError
from .quandle import Quandle
from .species import FormalSum, TensorWord, delta, gamma, product_m, xi
from .topological import TopologicalQuandle, make_tq
from .topology import Topology, quotient
from .verify import run_all

log = logging.getLogger("topquandle")


class UsageError(Exception):
    pass


def _read(path: str, fmt: str | None):
    text = sys.stdin.read() if path == "-" else Path(path).read_text()
    return formats.loads(text, None if fmt in (None, "auto") else fmt)


def _as_tq(obj) -> TopologicalQuandle:
    if isinstance(obj, TopologicalQuandle):
        return obj
    if isinstance(obj, Quandle):
        return make_tq(obj)
    raise UsageError(f"expected a quandle or topological quandle, got {type(obj).__name__}")


def _as_topology(obj) -> Topology:
    if isinstance(obj, Topology):
        return obj
    if isinstance(obj, TopologicalQuandle):
        return obj.topology
    raise UsageError(f"expected a topology, got {type(obj).__name__}")


def _emit(obj, fmt: str, out) -> None:
    if fmt == "json":
        out.write(formats.dumps(obj) + "\n")
    elif isinstance(obj, FormalSum):
        out.write(formats.render_sum(obj))
    elif isinstance(obj, TensorWord):
        out.write(formats.render_sum(FormalSum.of(obj)))
    elif isinstance(obj, TopologicalQuandle):
        out.write(formats.format_tq(obj))
    elif isinstance(obj, Quandle):
        out.write(formats.format_matrix(obj))
    elif isinstance(obj, Topology):
        out.write(formats.format_topology(obj))
    else:
        out.write(f"{obj}\n")


def _inputs(args, count: int):
    paths = args.input or []
    if len(paths) != count:
        raise UsageError(f"{args.verb} needs {count} --input path(s), got {len(paths)}")
    return [_read(p, args.input_format) for p in paths]


# -- verbs ---------------------------------------------------------------------------


def cmd_validate(args, out):
    try:
        (obj,) = _inputs(args, 1)
    except QuandleError as exc:
        out.write(f"invalid: {exc}\n")
        return 1
    out.write(f"ok: {type(obj).__name__} on {len(getattr(obj, 'labels', ()))} points\n")
    return 0


def cmd_enumerate(args, out):
    gens = {
        "quandle": enumerate_quandles,
        "topology": enumerate_quasiorders,
        "tq": enumerate_topological_quandles,
    }
    sizes = [args.n] if args.n is not None else list(range(1, args.max_n + 1))
    counts = {}
    lines = []
    for n in sizes:
        objs = list(gens[args.kind](n))
        if args.dedupe:
            objs = dedupe(objs)
        counts[str(n)] = len(objs)
        lines.extend(formats.dumps(o) for o in objs)
    payload = "".join(line + "\n" for line in lines)
    if args.output:
        path = Path(args.output)
        if path.suffix == ".gz":
            with gzip.open(path, "wt") as fh:
                fh.write(payload)
        else:
            path.write_text(payload)
    else:
        out.write(payload)
    if args.manifest:
        manifest = {
            "kind": args.kind,
            "n": sizes,
            "counts": counts,
            "dedupe": args.dedupe,
            "generator_version": GENERATOR_VERSION,
        }
        Path(args.manifest).write_text(json.dumps(manifest, indent=2, sort_keys=True) + "\n")
    for n, c in counts.items():
        log.info("n=%s: %d", n, c)
    return 0


def cmd_delta(args, out):
    (obj,) = _inputs(args, 1)
    _emit(delta(_as_tq(obj), include_trivial=args.include_trivial), args.format or "matrix", out)
    return 0


def cmd_gamma(args, out):
    (obj,) = _inputs(args, 1)
    _emit(gamma(_as_tq(obj)), args.format or "matrix", out)
    return 0


def cmd_product(args, out):
    a, b = _inputs(args, 2)
    _emit(product_m(_as_tq(a), _as_tq(b)), args.format or "matrix", out)
    return 0


def cmd_quotient(args, out):
    a, b = _inputs(args, 2)
    _emit(quotient(_as_topology(a), _as_topology(b)), args.format or "matrix", out)
    return 0


def cmd_xi(args, out):
    (obj,) = _inputs(args, 1)
    if isinstance(obj, FormalSum):
        result = obj.map(xi)
    elif isinstance(obj, TensorWord):
        result = xi(obj)
    else:
        raise UsageError("xi needs a tensor word or formal sum in JSON")
    _emit(result, args.format or "matrix", out)
    return 0


def cmd_canon(args, out):
    (obj,) = _inputs(args, 1)
    out.write(canonical_form(obj).hex() + "\n")
    return 0


def cmd_verify(args, out):
    if not args.all:
        raise UsageError("verify currently supports only --all")
    results = run_all(args.max_n, jobs=args.jobs, structural_n=args.structural_n)
    for r in results:
        out.write(r.line() + "\n")
    failed = [r for r in results if not r.passed]
    for r in failed:
        out.write(f"\ncounterexample for {r.name}:\n")
        _dump_counterexample(r.counterexample, out)
        if "diff" in r.details:
            out.write(r.details["diff"])
    out.write(f"\n{len(results) - len(failed)}/{len(results)} checks passed\n")
    return 1 if failed else 0


def _dump_counterexample(case, out):
    if isinstance(case, TopologicalQuandle):
        out.write(formats.format_tq(case))
    elif isinstance(case, tuple) and case and isinstance(case[0], TopologicalQuandle):
        for tq in case:
            out.write(formats.format_tq(tq) + "--\n")
    else:
        out.write(f"{case!r}\n")


VERBS = {
    "validate": cmd_validate,
    "enumerate": cmd_enumerate,
    "delta": cmd_delta,
    "gamma": cmd_gamma,
    "product": cmd_product,
    "quotient": cmd_quotient,
    "xi": cmd_xi,
    "verify": cmd_verify,
    "canon": cmd_canon,
}


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="topquandle", description=__doc__)
    parser.add_argument("-v", "--verbose", action="store_true")
    sub = parser.add_subparsers(dest="verb", required=True)

    def add(name, help_, inputs=True):
        p = sub.add_parser(name, help=help_)
        if inputs:
            p.add_argument("--input", action="append", metavar="PATH", help="input file ('-' for stdin)")
            p.add_argument("--input-format", choices=["json", "matrix", "auto"], default="auto")
        p.add_argument("--format", choices=["json", "matrix"], default=None, help="output format")
        return p

    add("validate", "parse and check a structure")
    p = add("enumerate", "list every structure of a given size", inputs=False)
    p.add_argument("--kind", choices=["quandle", "topology", "tq"], default="quandle")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--n", type=int)
    g.add_argument("--max-n", type=int, default=3)
    p.add_argument("--dedupe", action="store_true", help="one representative per isomorphism class")
    p.add_argument("--output", help="write line-delimited JSON here (.gz compresses)")
    p.add_argument("--manifest", help="write counts and generator version here")

    p = add("delta", "external coproduct")
    g = p.add_mutually_exclusive_group()
    g.add_argument("--include-trivial", dest="include_trivial", action="store_true")
    g.add_argument("--reduced", dest="include_trivial", action="store_false")
    p.set_defaults(include_trivial=False)

    add("gamma", "internal coproduct")
    add("product", "product m of two topological quandles")
    add("quotient", "quotient T/T' of two topologies")
    add("xi", "apply xi to a mixed tensor word")
    add("canon", "hex canonical form")

    p = add("verify", "run the identity sweeps", inputs=False)
    p.add_argument("--all", action="store_true")
    p.add_argument("--max-n", type=int, default=4)
    p.add_argument("--structural-n", type=int, default=None,
                   help="also run quandle-level lemmas up to this size")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--seed", type=int, default=None, help="reserved for sampled modes; sweeps are exhaustive")
    return parser


def run(argv=None, out=None, err=None) -> int:
    out = out or sys.stdout
    err = err or sys.stderr
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0) and 2
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING, stream=err,
                        format="%(levelname)s %(message)s")
    try:
        return VERBS[args.verb](args, out)
    except UsageError as exc:
        err.write(f"usage error: {exc}\n")
        return 2
    except (QuandleError, OSError) as exc:
        err.write(f"error: {exc}\n")
        return 2


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
