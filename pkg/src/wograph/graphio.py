"""Text format for weighted oriented graphs.

One JSON-shaped document per graph: a version tag, a vertex list with
weights, an arc list as [tail, head] pairs, and optional metadata (a name
and an expected verdict). `serialize` always emits the canonical form
(keys in a fixed order, vertices and arcs sorted, two-space indent,
trailing newline), so equal graphs produce byte-identical documents and
parse/serialize round-trips are stable.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Union

from .errors import DocumentError
from .graph import WeightedOrientedGraph

FORMAT_VERSION = "1"
VERDICT_VALUES = ("mixed", "unmixed")

_TOP_KEYS = ("version", "name", "expected", "vertices", "arcs")


@dataclass(frozen=True)
class GraphDocument:
    """Parsed document: the graph data plus optional metadata."""

    vertices: tuple[tuple[str, int], ...]
    arcs: tuple[tuple[str, str], ...]
    name: Optional[str] = None
    expected: Optional[str] = None

    def to_graph(self, *, normalize: bool = True) -> WeightedOrientedGraph:
        ids = tuple(v for v, _ in self.vertices)
        return WeightedOrientedGraph(
            ids, self.arcs, dict(self.vertices), normalize=normalize
        )

    @classmethod
    def from_graph(
        cls,
        d: WeightedOrientedGraph,
        *,
        name: Optional[str] = None,
        expected: Optional[str] = None,
    ) -> "GraphDocument":
        return cls(
            vertices=tuple((v, d.weight(v)) for v in d.sorted_vertices),
            arcs=d.sorted_arcs,
            name=name,
            expected=expected,
        )


def _fail(msg: str, line: Optional[int] = None, column: Optional[int] = None):
    raise DocumentError(msg, line, column)


def _string(obj: dict, key: str) -> str:
    val = obj[key]
    if not isinstance(val, str):
        _fail(f"{key!r} must be a string, got {type(val).__name__}")
    return val


def parse_document(text: str) -> GraphDocument:
    """Parse document text; DocumentError carries line/column on bad syntax."""
    try:
        obj = json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(exc.msg, exc.lineno, exc.colno) from exc

    if not isinstance(obj, dict):
        _fail(f"document must be an object, got {type(obj).__name__}")
    if "version" not in obj:
        _fail("missing 'version' field")
    version = _string(obj, "version")
    if version != FORMAT_VERSION:
        _fail(f"unsupported format version {version!r}; this reader expects {FORMAT_VERSION!r}")
    unknown = set(obj) - set(_TOP_KEYS)
    if unknown:
        _fail(f"unknown field(s): {', '.join(sorted(unknown))}")
    for key in ("vertices", "arcs"):
        if key not in obj:
            _fail(f"missing {key!r} field")
        if not isinstance(obj[key], list):
            _fail(f"{key!r} must be a list, got {type(obj[key]).__name__}")

    name = _string(obj, "name") if "name" in obj else None
    expected = None
    if "expected" in obj:
        expected = _string(obj, "expected")
        if expected not in VERDICT_VALUES:
            _fail(f"'expected' must be one of {list(VERDICT_VALUES)}, got {expected!r}")

    vertices: list[tuple[str, int]] = []
    seen: set[str] = set()
    for i, item in enumerate(obj["vertices"]):
        if not isinstance(item, dict) or set(item) != {"id", "weight"}:
            _fail(f"vertices[{i}] must be an object with exactly 'id' and 'weight'")
        vid, weight = item["id"], item["weight"]
        if not isinstance(vid, str) or not vid:
            _fail(f"vertices[{i}].id must be a non-empty string")
        if not isinstance(weight, int) or isinstance(weight, bool) or weight < 1:
            _fail(f"vertices[{i}].weight must be an integer >= 1, got {weight!r}")
        if vid in seen:
            _fail(f"duplicate vertex id {vid!r}")
        seen.add(vid)
        vertices.append((vid, weight))

    arcs: list[tuple[str, str]] = []
    arcset: set[tuple[str, str]] = set()
    for i, item in enumerate(obj["arcs"]):
        if (
            not isinstance(item, list)
            or len(item) != 2
            or not all(isinstance(x, str) for x in item)
        ):
            _fail(f"arcs[{i}] must be a [tail, head] pair of strings")
        tail, head = item
        for end in (tail, head):
            if end not in seen:
                _fail(f"arcs[{i}] endpoint {end!r} is not a declared vertex")
        if tail == head:
            _fail(f"arcs[{i}] is a self-loop at {tail!r}")
        if (tail, head) in arcset:
            _fail(f"duplicate arc [{tail!r}, {head!r}]")
        if (head, tail) in arcset:
            _fail(
                f"arcs [{head!r}, {tail!r}] and [{tail!r}, {head!r}] are "
                "antiparallel; each edge carries one direction"
            )
        arcset.add((tail, head))
        arcs.append((tail, head))

    return GraphDocument(vertices=tuple(vertices), arcs=tuple(arcs),
                         name=name, expected=expected)


def parse(text: str) -> WeightedOrientedGraph:
    """Parse document text straight to a (normalized) graph."""
    return parse_document(text).to_graph()


def serialize(source: Union[WeightedOrientedGraph, GraphDocument]) -> str:
    """Canonical document text for a graph or document. Byte-stable."""
    if isinstance(source, WeightedOrientedGraph):
        doc = GraphDocument.from_graph(source)
    else:
        doc = GraphDocument(
            vertices=tuple(sorted(source.vertices)),
            arcs=tuple(sorted(source.arcs)),
            name=source.name,
            expected=source.expected,
        )
    # Hand-rolled layout: one vertex and one arc per line keeps fixture
    # files diffable. json.loads accepts any layout; only output is fixed.
    lines = ["{", f'  "version": {json.dumps(FORMAT_VERSION)},']
    if doc.name is not None:
        lines.append(f'  "name": {json.dumps(doc.name)},')
    if doc.expected is not None:
        lines.append(f'  "expected": {json.dumps(doc.expected)},')

    def block(key: str, rows: list[str], last: bool) -> None:
        if rows:
            lines.append(f'  "{key}": [')
            for i, row in enumerate(rows):
                comma = "," if i + 1 < len(rows) else ""
                lines.append(f"    {row}{comma}")
            lines.append("  ]" + ("" if last else ","))
        else:
            lines.append(f'  "{key}": []' + ("" if last else ","))

    block(
        "vertices",
        [
            f'{{"id": {json.dumps(v)}, "weight": {w}}}'
            for v, w in doc.vertices
        ],
        last=False,
    )
    block(
        "arcs",
        [f"[{json.dumps(t)}, {json.dumps(h)}]" for t, h in doc.arcs],
        last=True,
    )
    lines.append("}")
    return "\n".join(lines) + "\n"
