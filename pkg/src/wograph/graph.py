"""Core graph types: weighted oriented graphs and their undirected views.

A weighted oriented graph is a finite simple undirected graph together with
an orientation of every edge and a positive integer weight on every vertex.
Arcs are (tail, head) pairs. Vertex ids are opaque strings; every iteration
order in the package is derived from sorting those strings, so equal graphs
always produce byte-identical output.
"""

from __future__ import annotations

import math
from functools import cached_property
from typing import Iterable, Iterator, Mapping, Optional

from .errors import StructureError, UnknownVertexError

Arc = tuple[str, str]
Edge = tuple[str, str]


def _check_vertex_ids(vertices: Iterable[str]) -> frozenset[str]:
    vs = frozenset(vertices)
    for v in vs:
        if not isinstance(v, str) or not v:
            raise StructureError(f"vertex ids must be non-empty strings, got {v!r}")
    return vs


class WeightedOrientedGraph:
    """Immutable weighted oriented graph.

    Construction validates the structure (no self-loops, no antiparallel
    arc pairs, weights are integers >= 1, arc endpoints known) and, unless
    ``normalize=False`` is passed, resets the weight of every source to 1;
    a vertex with no in-arc contributes the same generator regardless of
    its weight, so normalized form is the canonical input shape.
    """

    def __init__(
        self,
        vertices: Iterable[str],
        arcs: Iterable[Arc] = (),
        weights: Optional[Mapping[str, int]] = None,
        *,
        normalize: bool = True,
    ):
        vs = _check_vertex_ids(vertices)
        arcset = set()
        for arc in arcs:
            tail, head = arc
            if tail == head:
                raise StructureError(f"self-loop at {tail!r}")
            if tail not in vs or head not in vs:
                raise StructureError(f"arc ({tail!r}, {head!r}) touches an unknown vertex")
            if (head, tail) in arcset:
                raise StructureError(
                    f"antiparallel arcs between {tail!r} and {head!r}; "
                    "oriented graphs carry one direction per edge"
                )
            arcset.add((tail, head))

        wmap = {v: 1 for v in vs}
        if weights is not None:
            for v, w in weights.items():
                if v not in vs:
                    raise StructureError(f"weight given for unknown vertex {v!r}")
                if not isinstance(w, int) or isinstance(w, bool) or w < 1:
                    raise StructureError(f"weight of {v!r} must be an integer >= 1, got {w!r}")
                wmap[v] = w

        out: dict[str, set[str]] = {v: set() for v in vs}
        inn: dict[str, set[str]] = {v: set() for v in vs}
        for tail, head in arcset:
            out[tail].add(head)
            inn[head].add(tail)

        if normalize:
            for v in vs:
                if not inn[v]:
                    wmap[v] = 1

        self._vertices = vs
        self._arcs = frozenset(arcset)
        self._weights = wmap
        self._out = {v: frozenset(ns) for v, ns in out.items()}
        self._in = {v: frozenset(ns) for v, ns in inn.items()}
        self._sorted = tuple(sorted(vs))
        self._key = (self._vertices, self._arcs, tuple(sorted(wmap.items())))
        self._hash = hash(self._key)

    # -- identity ---------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, WeightedOrientedGraph):
            return NotImplemented
        return self._key == other._key

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return (
            f"WeightedOrientedGraph({len(self._vertices)} vertices, "
            f"{len(self._arcs)} arcs)"
        )

    # -- basic accessors ---------------------------------------------------

    @property
    def vertices(self) -> frozenset[str]:
        return self._vertices

    @property
    def arcs(self) -> frozenset[Arc]:
        return self._arcs

    @property
    def sorted_vertices(self) -> tuple[str, ...]:
        return self._sorted

    @property
    def sorted_arcs(self) -> tuple[Arc, ...]:
        return tuple(sorted(self._arcs))

    def weight(self, v: str) -> int:
        self._require(v)
        return self._weights[v]

    @property
    def weights(self) -> dict[str, int]:
        return dict(self._weights)

    def _require(self, v: str) -> None:
        if v not in self._vertices:
            raise UnknownVertexError(f"unknown vertex {v!r}")

    # -- neighborhoods -----------------------------------------------------

    def out_nbrs(self, v: str) -> frozenset[str]:
        self._require(v)
        return self._out[v]

    def in_nbrs(self, v: str) -> frozenset[str]:
        self._require(v)
        return self._in[v]

    def nbrs(self, v: str) -> frozenset[str]:
        self._require(v)
        return self._out[v] | self._in[v]

    def closed_nbrs(self, v: str) -> frozenset[str]:
        return self.nbrs(v) | {v}

    def nbrs_of_set(self, vs: Iterable[str]) -> frozenset[str]:
        acc: set[str] = set()
        for v in vs:
            acc |= self.nbrs(v)
        return frozenset(acc)

    def out_nbrs_of_set(self, vs: Iterable[str]) -> frozenset[str]:
        acc: set[str] = set()
        for v in vs:
            acc |= self.out_nbrs(v)
        return frozenset(acc)

    # -- vertex classes ----------------------------------------------------

    def v_plus(self) -> frozenset[str]:
        """Vertices of weight strictly greater than 1."""
        return frozenset(v for v in self._vertices if self._weights[v] > 1)

    def is_sink(self, v: str) -> bool:
        return not self.out_nbrs(v)

    def is_source(self, v: str) -> bool:
        return not self.in_nbrs(v)

    def degree(self, v: str) -> int:
        return len(self.nbrs(v))

    # -- derived graphs ----------------------------------------------------

    def induced(self, sub: Iterable[str]) -> "WeightedOrientedGraph":
        """Induced subgraph on ``sub``; weights carry over verbatim
        (no re-normalization)."""
        subset = frozenset(sub)
        for v in subset:
            self._require(v)
        arcs = [(t, h) for (t, h) in self._arcs if t in subset and h in subset]
        weights = {v: self._weights[v] for v in subset}
        return WeightedOrientedGraph(subset, arcs, weights, normalize=False)

    @cached_property
    def underlying(self) -> "UnderlyingGraph":
        edges = frozenset(tuple(sorted(a)) for a in self._arcs)
        return UnderlyingGraph(self._vertices, edges)


def normalize(d: WeightedOrientedGraph) -> WeightedOrientedGraph:
    """Return ``d`` with every source's weight reset to 1 (idempotent)."""
    if all(d.weight(v) == 1 for v in d.vertices if d.is_source(v)):
        return d
    return WeightedOrientedGraph(d.vertices, d.arcs, d.weights, normalize=True)


class UnderlyingGraph:
    """Simple undirected graph; edges are sorted (u, v) tuples."""

    def __init__(self, vertices: Iterable[str], edges: Iterable[Edge] = ()):
        vs = _check_vertex_ids(vertices)
        es = set()
        for e in edges:
            u, v = e
            if u == v:
                raise StructureError(f"self-loop at {u!r}")
            if u not in vs or v not in vs:
                raise StructureError(f"edge ({u!r}, {v!r}) touches an unknown vertex")
            es.add((u, v) if u < v else (v, u))
        adj: dict[str, set[str]] = {v: set() for v in vs}
        for u, v in es:
            adj[u].add(v)
            adj[v].add(u)
        self._vertices = vs
        self._edges = frozenset(es)
        self._adj = {v: frozenset(ns) for v, ns in adj.items()}
        self._sorted = tuple(sorted(vs))
        self._hash = hash((self._vertices, self._edges))

    def __eq__(self, other):
        if not isinstance(other, UnderlyingGraph):
            return NotImplemented
        return self._vertices == other._vertices and self._edges == other._edges

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"UnderlyingGraph({len(self._vertices)} vertices, {len(self._edges)} edges)"

    @property
    def vertices(self) -> frozenset[str]:
        return self._vertices

    @property
    def edges(self) -> frozenset[Edge]:
        return self._edges

    @property
    def sorted_vertices(self) -> tuple[str, ...]:
        return self._sorted

    @property
    def sorted_edges(self) -> tuple[Edge, ...]:
        return tuple(sorted(self._edges))

    def _require(self, v: str) -> None:
        if v not in self._vertices:
            raise UnknownVertexError(f"unknown vertex {v!r}")

    def nbrs(self, v: str) -> frozenset[str]:
        self._require(v)
        return self._adj[v]

    def closed_nbrs(self, v: str) -> frozenset[str]:
        return self.nbrs(v) | {v}

    def degree(self, v: str) -> int:
        return len(self.nbrs(v))

    def has_edge(self, u: str, v: str) -> bool:
        self._require(u)
        return v in self._adj[u]

    def induced(self, sub: Iterable[str]) -> "UnderlyingGraph":
        subset = frozenset(sub)
        for v in subset:
            self._require(v)
        edges = [e for e in self._edges if e[0] in subset and e[1] in subset]
        return UnderlyingGraph(subset, edges)

    def complement(self) -> "UnderlyingGraph":
        vs = self._sorted
        edges = [
            (u, v)
            for i, u in enumerate(vs)
            for v in vs[i + 1 :]
            if v not in self._adj[u]
        ]
        return UnderlyingGraph(self._vertices, edges)

    def is_complete(self, sub: Optional[Iterable[str]] = None) -> bool:
        vs = sorted(self._vertices if sub is None else frozenset(sub))
        for v in vs:
            self._require(v)
        return all(
            vs[j] in self._adj[vs[i]]
            for i in range(len(vs))
            for j in range(i + 1, len(vs))
        )

    def connected_components(self) -> tuple[frozenset[str], ...]:
        seen: set[str] = set()
        comps = []
        for v in self._sorted:
            if v in seen:
                continue
            comp = {v}
            stack = [v]
            while stack:
                x = stack.pop()
                for y in self._adj[x]:
                    if y not in comp:
                        comp.add(y)
                        stack.append(y)
            seen |= comp
            comps.append(frozenset(comp))
        return tuple(comps)

    def is_connected(self) -> bool:
        return len(self.connected_components()) <= 1

    # -- cycles ------------------------------------------------------------

    def girth(self) -> float:
        """Length of a shortest cycle; ``math.inf`` for forests."""
        best = math.inf
        for root in self._sorted:
            dist = {root: 0}
            parent = {root: None}
            queue = [root]
            while queue:
                nxt = []
                for x in queue:
                    for y in sorted(self._adj[x]):
                        if y not in dist:
                            dist[y] = dist[x] + 1
                            parent[y] = x
                            nxt.append(y)
                        elif parent[x] != y:
                            best = min(best, dist[x] + dist[y] + 1)
                queue = nxt
        return best

    def has_cycle_of_length(self, k: int) -> bool:
        """True iff the graph contains a (not necessarily induced) cycle of
        length exactly ``k``."""
        if k < 3:
            return False

        def extend(start: str, path: list[str], used: set[str]) -> bool:
            if len(path) == k:
                return start in self._adj[path[-1]]
            for y in sorted(self._adj[path[-1]]):
                if y in used or y < start:
                    continue
                # prune: closing edge needs start adjacency at full length only
                path.append(y)
                used.add(y)
                if extend(start, path, used):
                    return True
                used.discard(y)
                path.pop()
            return False

        for start in self._sorted:
            if extend(start, [start], {start}):
                return True
        return False

    def induced_cycles(self, max_len: Optional[int] = None) -> tuple[tuple[str, ...], ...]:
        """All chordless cycles with at most ``max_len`` vertices.

        Each cycle appears once, rotated so its smallest vertex comes first
        and directed so the second vertex is smaller than the last.
        """
        cap = len(self._vertices) if max_len is None else max_len
        found: list[tuple[str, ...]] = []

        def extend(path: list[str]) -> None:
            start = path[0]
            last = path[-1]
            for y in sorted(self._adj[last]):
                if y <= start or y in path:
                    continue
                # keep path chordless: y may touch only `last` among the interior
                if any(y in self._adj[p] for p in path[1:-1]):
                    continue
                closes = start in self._adj[y]
                if closes and len(path) >= 2:
                    if path[1] < y:
                        found.append(tuple(path) + (y,))
                    # any extension past y would carry the chord y-start
                    continue
                if len(path) + 1 < cap:
                    path.append(y)
                    extend(path)
                    path.pop()

        if cap >= 3:
            for start in self._sorted:
                extend([start])
        return tuple(sorted(found, key=lambda c: (len(c), c)))
