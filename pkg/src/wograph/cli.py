"""Command-line surface.

Six subcommands: `check` (oracle verdict plus witnessing covers), `decide`
(structural deciders, cross-checked against the oracle), `classify`
(family applicability only), `witness` (full machine-readable
certificate), `catalog` (emit a reference graph as a document), and
`fuzz` (random instances through the full cross-validation dispatch).

Exit codes: 0 ok, 2 usage, 3 parse error, 4 capacity exceeded,
5 consistency failure (including an oracle/decider disagreement).
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import math
import sys
from typing import Optional

from .catalog import SPECIAL_NAMES, catalog_graph
from .covers import oracle_unmixed
from .deciders import DECIDERS, FAMILIES, dispatch
from .errors import (
    CapacityError,
    ConsistencyError,
    DocumentError,
    GenerationError,
    PreconditionError,
)
from .generate import FuzzConfig, gen_random
from .graph import WeightedOrientedGraph
from .graphio import GraphDocument, parse_document, serialize

EXIT_OK = 0
EXIT_USAGE = 2
EXIT_PARSE = 3
EXIT_CAPACITY = 4
EXIT_CONSISTENCY = 5


def _read_source(path: str) -> str:
    if path == "-":
        return sys.stdin.read()
    try:
        with open(path, "r", encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise _Usage(f"cannot read {path!r}: {exc.strerror or exc}") from exc


class _Usage(Exception):
    pass


def _load(path: str) -> tuple[GraphDocument, WeightedOrientedGraph]:
    doc = parse_document(_read_source(path))
    return doc, doc.to_graph()


def _jsonable(obj):
    if obj is None or isinstance(obj, (str, int, bool)):
        return obj
    if isinstance(obj, float):
        return obj if math.isfinite(obj) else "infinity"
    if isinstance(obj, (set, frozenset)):
        return sorted(_jsonable(x) for x in obj)
    if isinstance(obj, (list, tuple)):
        return [_jsonable(x) for x in obj]
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in sorted(obj.items(), key=lambda kv: str(kv[0]))}
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        return {
            f.name: _jsonable(getattr(obj, f.name))
            for f in dataclasses.fields(obj)
            if f.repr
        }
    return repr(obj)


def _print_cover(label: str, cover: frozenset) -> None:
    print(f"{label} (size {len(cover)}): {' '.join(sorted(cover))}")


def _cmd_check(args) -> int:
    doc, d = _load(args.file)
    verdict = oracle_unmixed(d)
    print(verdict.status)
    if verdict.status == "mixed" and verdict.witness_pair:
        small, big = sorted(verdict.witness_pair, key=len)
        _print_cover("strong cover", small)
        _print_cover("strong cover", big)
    else:
        sizes = ", ".join(str(s) for s in verdict.cover_sizes)
        print(f"{verdict.strong_count} strong covers, all of size {sizes}")
    if doc.expected is not None and doc.expected != verdict.status:
        raise ConsistencyError(
            f"document expects {doc.expected!r} but the oracle says "
            f"{verdict.status!r}"
        )
    return EXIT_OK


def _report_line(rep) -> str:
    if not rep.applicable:
        note = (rep.certificate or {}).get("note")
        return f"{rep.family}: not applicable" + (f" ({note})" if note else "")
    return f"{rep.family}: {rep.verdict}"


def _cmd_decide(args) -> int:
    doc, d = _load(args.file)
    if args.family != "auto":
        print(_report_line(DECIDERS[args.family](d)))
        return EXIT_OK
    result = dispatch(d)
    for rep in result.reports:
        print(_report_line(rep))
    if result.oracle is not None:
        print(f"oracle: {result.oracle.status}")
    print(f"consensus: {result.consensus}")
    if doc.expected is not None and result.consensus != "unknown" \
            and doc.expected != result.consensus:
        raise ConsistencyError(
            f"document expects {doc.expected!r} but the deciders conclude "
            f"{result.consensus!r}"
        )
    return EXIT_OK


def _cmd_classify(args) -> int:
    _, d = _load(args.file)
    for family in FAMILIES:
        rep = DECIDERS[family](d)
        line = "applicable" if rep.applicable else "not applicable"
        note = None if rep.applicable else (rep.certificate or {}).get("note")
        print(f"{family}: {line}" + (f" ({note})" if note else ""))
    return EXIT_OK


def _cmd_witness(args) -> int:
    _, d = _load(args.file)
    result = dispatch(d)
    payload = {
        "verdict": result.consensus,
        "oracle": _jsonable(result.oracle),
        "reports": [_jsonable(rep) for rep in result.reports],
    }
    print(json.dumps(payload, indent=2))
    return EXIT_OK


def _cmd_catalog(args) -> int:
    g = catalog_graph(args.name)
    arcs = tuple(sorted(tuple(sorted(e)) for e in g.edges))
    doc = GraphDocument(
        vertices=tuple((v, 1) for v in g.sorted_vertices),
        arcs=arcs,
        name=args.name,
    )
    sys.stdout.write(serialize(doc))
    return EXIT_OK


def _parse_range(text: str) -> tuple[int, int]:
    try:
        if ".." in text:
            lo, hi = text.split("..", 1)
            return int(lo), int(hi)
        return int(text), int(text)
    except ValueError:
        raise _Usage(f"bad vertex range {text!r}; expected N or LO..HI") from None


def _cmd_fuzz(args) -> int:
    lo, hi = _parse_range(args.n)
    forbidden = frozenset(
        int(x) for x in args.forbid.split(",") if x.strip()
    ) if args.forbid else frozenset()
    try:
        cfg = FuzzConfig(
            min_vertices=lo,
            max_vertices=hi,
            arc_probability=args.arc_prob,
            weight_probability=args.weight_prob,
            max_weight=args.max_weight,
            forbidden_cycle_lengths=forbidden,
            family=args.family,
            seed=args.seed,
            count=args.count,
        )
    except PreconditionError as exc:
        raise _Usage(str(exc)) from exc

    tally = {"mixed": 0, "unmixed": 0, "unknown": 0}
    disagreements = 0
    for index, d in enumerate(gen_random(cfg)):
        try:
            result = dispatch(d)
        except ConsistencyError as exc:
            disagreements += 1
            print(f"disagreement on instance {index}: {exc}", file=sys.stderr)
            sys.stderr.write(serialize(d))
            continue
        tally[result.consensus] += 1
    print(
        f"{cfg.count} instances: {tally['mixed']} mixed, "
        f"{tally['unmixed']} unmixed, {tally['unknown']} undecided, "
        f"{disagreements} disagreements"
    )
    return EXIT_CONSISTENCY if disagreements else EXIT_OK


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="wograph",
        description="Combinatorial unmixedness checks for weighted oriented graphs.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    def with_file(p):
        p.add_argument("file", help="graph document path, or - for stdin")

    p = sub.add_parser("check", help="brute-force oracle verdict with witnessing covers")
    with_file(p)
    p.set_defaults(fn=_cmd_check)

    p = sub.add_parser("decide", help="structural deciders, cross-checked against the oracle")
    with_file(p)
    p.add_argument("--family", default="auto", choices=("auto", *FAMILIES))
    p.set_defaults(fn=_cmd_decide)

    p = sub.add_parser("classify", help="which decider families apply to the graph")
    with_file(p)
    p.set_defaults(fn=_cmd_classify)

    p = sub.add_parser("witness", help="machine-readable verdict certificate (JSON)")
    with_file(p)
    p.set_defaults(fn=_cmd_witness)

    p = sub.add_parser("catalog", help="emit a reference graph as a document")
    p.add_argument("name", choices=SPECIAL_NAMES)
    p.set_defaults(fn=_cmd_catalog)

    p = sub.add_parser("fuzz", help="random instances through the cross-validation dispatch")
    p.add_argument("--n", default="1..9", help="vertex count or LO..HI range (default 1..9)")
    p.add_argument("--count", type=int, default=100)
    p.add_argument("--seed", type=int, default=0)
    p.add_argument("--arc-prob", type=float, default=0.3)
    p.add_argument("--weight-prob", type=float, default=0.3)
    p.add_argument("--max-weight", type=int, default=2)
    p.add_argument("--forbid", default="", help="comma-separated cycle lengths to reject")
    p.add_argument("--family", default=None, choices=tuple(f for f in FAMILIES if f != "sinks-sufficient"))
    p.set_defaults(fn=_cmd_fuzz)
    return parser


def main(argv: Optional[list[str]] = None) -> int:
    parser = _build_parser()
    args = parser.parse_args(argv)
    try:
        return args.fn(args)
    except _Usage as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except DocumentError as exc:
        print(f"parse error: {exc}", file=sys.stderr)
        return EXIT_PARSE
    except GenerationError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except CapacityError as exc:
        print(f"capacity exceeded: {exc}", file=sys.stderr)
        return EXIT_CAPACITY
    except ConsistencyError as exc:
        print(f"consistency failure: {exc}", file=sys.stderr)
        return EXIT_CONSISTENCY
