"""Recognizers for the graph families the structural criteria quantify over.

Undirected side: simplicial vertices and simplexes, chordal graphs, basic
5-cycles (induced 5-cycles with no edge joining two vertices of degree >= 3),
property (P) for edges and matchings, exact-cover decompositions of V(G) into
simplexes / basic 5-cycles / a property-(P) matching, perfect graphs with
their clique tau-reductions, and isomorphism against the packaged catalog of
exceptional well-covered graphs.

Oriented side: the star-property check for an induced 5-cycle of a weighted
oriented graph.

Everything here is exact search; inputs are expected to be small (the perfect
graph test iterates over all induced subgraphs and refuses more than 16
vertices).
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Optional, Sequence, Union

from .catalog import catalog
from .covers import beta, tau
from .errors import CapacityError, ConsistencyError, PreconditionError
from .graph import Edge, UnderlyingGraph, WeightedOrientedGraph

GraphLike = Union[WeightedOrientedGraph, UnderlyingGraph]

PERFECT_MAX_VERTICES = 16


def _und(graph: GraphLike) -> UnderlyingGraph:
    if isinstance(graph, WeightedOrientedGraph):
        return graph.underlying
    return graph


def _set_key(s: Iterable[str]):
    t = tuple(sorted(s))
    return (len(t), t)


# -- simplicial vertices and chordality --------------------------------------


def simplicial_vertices(graph: GraphLike) -> frozenset[str]:
    """Vertices whose closed neighborhood induces a complete graph."""
    g = _und(graph)
    return frozenset(v for v in g.vertices if g.is_complete(g.closed_nbrs(v)))


def simplexes(graph: GraphLike) -> tuple[frozenset[str], ...]:
    """Distinct closed neighborhoods of simplicial vertices, as vertex sets.

    Two simplicial vertices with the same closed neighborhood contribute one
    simplex.
    """
    g = _und(graph)
    seen = {g.closed_nbrs(v) for v in simplicial_vertices(g)}
    return tuple(sorted(seen, key=_set_key))


def is_simplicial_graph(graph: GraphLike) -> bool:
    """True iff every vertex is simplicial or adjacent to a simplicial one."""
    g = _und(graph)
    simp = simplicial_vertices(g)
    return all(v in simp or g.nbrs(v) & simp for v in g.vertices)


def is_chordal(graph: GraphLike) -> bool:
    """True iff every induced cycle is a triangle."""
    g = _und(graph)
    return all(len(c) == 3 for c in g.induced_cycles())


# -- induced and basic 5-cycles ----------------------------------------------


def _require_induced_5cycle(g: UnderlyingGraph, cycle: Sequence[str]) -> tuple[str, ...]:
    cyc = tuple(cycle)
    if len(cyc) != 5 or len(set(cyc)) != 5:
        raise PreconditionError(f"expected 5 distinct vertices, got {cyc!r}")
    for i, u in enumerate(cyc):
        if not g.has_edge(u, cyc[(i + 1) % 5]):
            raise PreconditionError(
                f"{cyc!r} is not a 5-cycle: {u!r} and {cyc[(i + 1) % 5]!r} not adjacent"
            )
    for i in range(5):
        if g.has_edge(cyc[i], cyc[(i + 2) % 5]):
            raise PreconditionError(
                f"{cyc!r} is not induced: chord between {cyc[i]!r} and {cyc[(i + 2) % 5]!r}"
            )
    return cyc


def _cycle_is_basic(g: UnderlyingGraph, cyc: Sequence[str]) -> bool:
    return all(
        g.degree(cyc[i]) < 3 or g.degree(cyc[(i + 1) % 5]) < 3 for i in range(5)
    )


def basic_five_cycles(graph: GraphLike) -> tuple[tuple[str, ...], ...]:
    """Induced 5-cycles with no edge joining two vertices of degree >= 3.

    Degrees are taken in the whole graph. Cycles come back in the canonical
    rotation used by ``UnderlyingGraph.induced_cycles``.
    """
    g = _und(graph)
    return tuple(
        c
        for c in g.induced_cycles(max_len=5)
        if len(c) == 5 and _cycle_is_basic(g, c)
    )


# -- property (P) -------------------------------------------------------------


def _norm_edge(g: UnderlyingGraph, e: Iterable[str]) -> Edge:
    pair = tuple(e)
    if len(pair) != 2:
        raise PreconditionError(f"an edge needs exactly two endpoints, got {pair!r}")
    u, v = pair
    edge = (u, v) if u < v else (v, u)
    if edge not in g.edges:
        raise PreconditionError(f"{edge!r} is not an edge of the graph")
    return edge


def edge_has_property_P(graph: GraphLike, e: Iterable[str]) -> bool:
    """Property (P) for the edge e = {b, b'}: for every neighbor a of b and
    neighbor a' of b' away from e, the pair {a, a'} is an edge. A common
    neighbor of b and b' (a = a', never an edge) therefore breaks the
    property; pairs where a or a' lies on e itself hold trivially."""
    g = _und(graph)
    b, bp = _norm_edge(g, e)
    ends = {b, bp}
    for a in g.nbrs(b) - ends:
        for ap in g.nbrs(bp) - ends:
            if a == ap or not g.has_edge(a, ap):
                return False
    return True


def matching_has_property_P(graph: GraphLike, matching: Iterable[Iterable[str]]) -> bool:
    """Property (P) for every edge of a matching. Raises if the edges are
    not pairwise disjoint or not all present in the graph."""
    g = _und(graph)
    edges = [_norm_edge(g, e) for e in matching]
    touched: set[str] = set()
    for u, v in edges:
        if u in touched or v in touched:
            raise PreconditionError(f"edges share the vertex {u if u in touched else v!r}")
        touched |= {u, v}
    return all(edge_has_property_P(g, e) for e in edges)


def _property_p_edges(g: UnderlyingGraph) -> tuple[Edge, ...]:
    return tuple(e for e in g.sorted_edges if edge_has_property_P(g, e))


# -- simplex / cycle / matching decompositions --------------------------------


@dataclass(frozen=True)
class SCQDecomposition:
    """A partition of V(G) into simplexes, basic 5-cycles and a matching
    whose edges all have property (P). Existence of such a partition is the
    membership test the tau formula and the related unmixedness criteria
    build on."""

    graph: UnderlyingGraph = field(repr=False)
    simplexes: tuple[frozenset[str], ...]
    basic5cycles: tuple[tuple[str, ...], ...]
    q_matching: tuple[Edge, ...]

    @property
    def blocks(self) -> tuple[frozenset[str], ...]:
        return (
            self.simplexes
            + tuple(frozenset(c) for c in self.basic5cycles)
            + tuple(frozenset(e) for e in self.q_matching)
        )


def _scq_violation(
    g: UnderlyingGraph,
    simp: Sequence[frozenset[str]],
    cycles: Sequence[Sequence[str]],
    matching: Sequence[Edge],
) -> Optional[str]:
    """None if the three collections form a valid decomposition of g,
    otherwise a short reason."""
    legal_simplexes = set(simplexes(g))
    for s in simp:
        if frozenset(s) not in legal_simplexes:
            return f"{sorted(s)} is not a simplex"
    for c in cycles:
        try:
            cyc = _require_induced_5cycle(g, c)
        except PreconditionError as exc:
            return str(exc)
        if not _cycle_is_basic(g, cyc):
            return f"{list(c)} is not a basic 5-cycle"
    touched: set[str] = set()
    for e in matching:
        u, v = e
        edge = (u, v) if u < v else (v, u)
        if edge not in g.edges:
            return f"{edge} is not an edge"
        if u in touched or v in touched:
            return "q_matching is not a matching"
        touched |= {u, v}
        if not edge_has_property_P(g, edge):
            return f"edge {edge} lacks property (P)"
    blocks = (
        [frozenset(s) for s in simp]
        + [frozenset(c) for c in cycles]
        + [frozenset(e) for e in matching]
    )
    covered: set[str] = set()
    for b in blocks:
        if covered & b:
            return "blocks overlap"
        covered |= b
    if covered != set(g.vertices):
        return "blocks do not cover every vertex"
    return None


def _exact_cover(
    universe: frozenset[str], blocks: Sequence[frozenset[str]]
) -> Optional[list[int]]:
    """Indices of pairwise disjoint blocks whose union is the universe, or
    None. Branches on the smallest uncovered vertex, trying blocks in the
    given order, with a dead-state memo."""
    containing: dict[str, list[int]] = {v: [] for v in universe}
    for i, b in enumerate(blocks):
        for v in b:
            containing[v].append(i)
    dead: set[frozenset[str]] = set()
    choice: list[int] = []

    def rec(covered: frozenset[str]) -> bool:
        if covered == universe:
            return True
        if covered in dead:
            return False
        v = min(universe - covered)
        for i in containing[v]:
            b = blocks[i]
            if b & covered:
                continue
            choice.append(i)
            if rec(covered | b):
                return True
            choice.pop()
        dead.add(covered)
        return False

    return choice if rec(frozenset()) else None


def scq_decompose(graph: GraphLike) -> Optional[SCQDecomposition]:
    """Partition V(G) into simplexes, basic 5-cycles and property-(P)
    matching edges, or None if no such partition exists.

    Candidate blocks are all simplexes, all basic 5-cycles and all single
    edges with property (P); an empty matching is fine. Searches in three
    passes — simplexes only, then simplexes and cycles, then everything —
    so the witness uses cycles only when simplexes alone cannot partition
    the graph, and matching edges only as a last resort.
    """
    g = _und(graph)
    t = tau(g)  # capacity check up front: no point searching unvalidatable graphs
    simp_blocks = [("simplex", s, s) for s in simplexes(g)]
    cyc_blocks = [("cycle", frozenset(c), c) for c in basic_five_cycles(g)]
    edge_blocks = [("edge", frozenset(e), e) for e in _property_p_edges(g)]

    phases = (
        simp_blocks,
        simp_blocks + cyc_blocks,
        simp_blocks + cyc_blocks + edge_blocks,
    )
    universe = g.vertices
    for cands in phases:
        chosen = _exact_cover(universe, [b[1] for b in cands])
        if chosen is None:
            continue
        simp = sorted((cands[i][2] for i in chosen if cands[i][0] == "simplex"), key=_set_key)
        cycles = sorted(cands[i][2] for i in chosen if cands[i][0] == "cycle")
        matching = sorted(cands[i][2] for i in chosen if cands[i][0] == "edge")
        dec = SCQDecomposition(g, tuple(simp), tuple(cycles), tuple(matching))
        reason = _scq_violation(g, dec.simplexes, dec.basic5cycles, dec.q_matching)
        if reason is not None:
            raise ConsistencyError(f"search produced an invalid decomposition: {reason}")
        if scq_tau(dec) != t:
            raise ConsistencyError(
                "decomposition size formula disagrees with the cover number"
            )
        return dec
    return None


def scq_tau(dec: SCQDecomposition) -> int:
    """Cover number predicted by a decomposition:
    sum over simplexes of (size - 1), plus 3 per 5-cycle, plus one per
    matching edge. Raises if the decomposition is not valid for its graph."""
    reason = _scq_violation(dec.graph, dec.simplexes, dec.basic5cycles, dec.q_matching)
    if reason is not None:
        raise PreconditionError(f"invalid decomposition: {reason}")
    return (
        sum(len(s) - 1 for s in dec.simplexes)
        + 3 * len(dec.basic5cycles)
        + len(dec.q_matching)
    )


# -- the star-property ---------------------------------------------------------


@dataclass(frozen=True)
class StarCheck:
    """Outcome of the star-property test on one induced 5-cycle. Falsy when
    some clause fails; then ``clause`` is 'star.1' / 'star.2' / 'star.3' and
    ``arc`` is the cycle arc under which it failed."""

    holds: bool
    clause: Optional[str] = None
    arc: Optional[tuple[str, str]] = None

    def __bool__(self) -> bool:
        return self.holds


def star_property(d: WeightedOrientedGraph, cycle: Sequence[str]) -> StarCheck:
    """Check the star-property of an induced 5-cycle of d.

    For every arc (a, b) of the cycle whose tail has weight > 1, label the
    cycle (a', a, b, b', c) in walk order and require:

      star.1  (a', a) is an arc and w(a') = 1;
      star.2  every in-neighbor of a is adjacent to c, and every weighted
              in-neighbor of a is an in-neighbor of c;
      star.3  every neighbor of b' is a neighbor of a' or an out-neighbor
              of a, and every weighted in-neighbor of b' is an in-neighbor
              of a'.

    Vacuously true when no arc of the cycle leaves a weighted vertex.
    """
    g = d.underlying
    cyc = _require_induced_5cycle(g, cycle)
    vplus = d.v_plus()
    for i in range(5):
        u, v = cyc[i], cyc[(i + 1) % 5]
        if (u, v) in d.arcs:
            a, b = u, v
            ap, bp, c = cyc[(i - 1) % 5], cyc[(i + 2) % 5], cyc[(i + 3) % 5]
        else:
            a, b = v, u
            ap, bp, c = cyc[(i + 2) % 5], cyc[(i - 1) % 5], cyc[(i - 2) % 5]
        if a not in vplus:
            continue
        if (ap, a) not in d.arcs or d.weight(ap) != 1:
            return StarCheck(False, "star.1", (a, b))
        if not (
            d.in_nbrs(a) <= g.nbrs(c) and d.in_nbrs(a) & vplus <= d.in_nbrs(c)
        ):
            return StarCheck(False, "star.2", (a, b))
        if not (
            g.nbrs(bp) <= g.nbrs(ap) | d.out_nbrs(a)
            and d.in_nbrs(bp) & vplus <= d.in_nbrs(ap)
        ):
            return StarCheck(False, "star.3", (a, b))
    return StarCheck(True)


# -- perfect graphs and clique tau-reductions ----------------------------------


def _bit_adjacency(g: UnderlyingGraph) -> tuple[tuple[str, ...], list[int]]:
    vs = g.sorted_vertices
    index = {v: i for i, v in enumerate(vs)}
    adj = [0] * len(vs)
    for u, v in g.edges:
        adj[index[u]] |= 1 << index[v]
        adj[index[v]] |= 1 << index[u]
    return vs, adj


def _mask_connected(adj: Sequence[int], mask: int) -> bool:
    seen = mask & -mask
    frontier = seen
    while frontier:
        grown = 0
        m = frontier
        while m:
            low = m & -m
            m ^= low
            grown |= adj[low.bit_length() - 1] & mask
        frontier = grown & ~seen
        seen |= frontier
    return seen == mask


def _mask_colorable(adj: Sequence[int], mask: int, k: int) -> bool:
    verts = [i for i in range(mask.bit_length()) if mask >> i & 1]
    verts.sort(key=lambda i: -(adj[i] & mask).bit_count())
    classes = [0] * k

    def rec(pos: int) -> bool:
        if pos == len(verts):
            return True
        v = verts[pos]
        bit = 1 << v
        opened = False
        for c in range(k):
            if classes[c] & adj[v]:
                continue
            if not classes[c]:
                if opened:
                    break
                opened = True
            classes[c] |= bit
            if rec(pos + 1):
                return True
            classes[c] &= ~bit
        return False

    return rec(0)


def is_perfect(graph: GraphLike) -> bool:
    """True iff the chromatic number equals the clique number on every
    induced subgraph. Checked literally by exhaustive search, so the graph
    must have at most PERFECT_MAX_VERTICES vertices."""
    g = _und(graph)
    n = len(g.vertices)
    if n > PERFECT_MAX_VERTICES:
        raise CapacityError(
            f"perfect graph test iterates all induced subgraphs; "
            f"{n} vertices exceeds the limit of {PERFECT_MAX_VERTICES}"
        )
    if n == 0:
        return True
    _, adj = _bit_adjacency(g)
    # clique[m] = clique number of the subgraph induced by mask m
    clique = [0] * (1 << n)
    for m in range(1, 1 << n):
        low = m & -m
        rest = m ^ low
        v = low.bit_length() - 1
        clique[m] = max(clique[rest], 1 + clique[rest & adj[v]])
    for m in range(1, 1 << n):
        size = m.bit_count()
        w = clique[m]
        # <= 2 vertices, edgeless and complete subgraphs are always fine;
        # components are themselves induced subgraphs, so skip disconnected m
        if size < 3 or w == size or w == 1:
            continue
        if not _mask_connected(adj, m):
            continue
        if not _mask_colorable(adj, m, w):
            return False
    return True


@dataclass(frozen=True)
class CliqueTauReduction:
    """Partition of V(G) into cliques H_1..H_s with s = max stable set size
    and sum(|H_i| - 1) equal to the cover number."""

    cliques: tuple[frozenset[str], ...]


def _color_classes(g: UnderlyingGraph, k: int) -> Optional[list[list[str]]]:
    """Proper coloring of g with at most k colors, as vertex classes, or
    None. Deterministic: vertices in sorted order, first feasible color."""
    vs, adj = _bit_adjacency(g)
    classes = [0] * k

    def rec(pos: int) -> bool:
        if pos == len(vs):
            return True
        bit = 1 << pos
        opened = False
        for c in range(k):
            if classes[c] & adj[pos]:
                continue
            if not classes[c]:
                if opened:
                    break
                opened = True
            classes[c] |= bit
            if rec(pos + 1):
                return True
            classes[c] &= ~bit
        return False

    if not rec(0):
        return None
    return [
        [vs[i] for i in range(len(vs)) if cls >> i & 1]
        for cls in classes
        if cls
    ]


def tau_clique_reduction(graph: GraphLike) -> CliqueTauReduction:
    """Partition the vertices of a perfect graph into s = beta(G) cliques
    whose sizes-minus-one sum to tau(G).

    The cliques are the color classes of an optimal proper coloring of the
    complement. Raises PreconditionError if the graph is not perfect and
    ConsistencyError if the construction misses its own invariants.
    """
    g = _und(graph)
    if not is_perfect(g):
        raise PreconditionError("clique reduction needs a perfect graph")
    s = beta(g)
    classes = _color_classes(g.complement(), s) if s else []
    if classes is None:
        raise ConsistencyError(
            f"complement of a perfect graph refused a {s}-coloring"
        )
    cliques = tuple(sorted((frozenset(c) for c in classes), key=_set_key))
    if len(cliques) != s:
        raise ConsistencyError(
            f"expected {s} cliques, coloring produced {len(cliques)}"
        )
    if sum(len(c) - 1 for c in cliques) != tau(g):
        raise ConsistencyError("clique sizes do not add up to the cover number")
    return CliqueTauReduction(cliques)


# -- catalog isomorphism --------------------------------------------------------


@dataclass(frozen=True, eq=False)
class SpecialGraphId:
    """Catalog match: the name of the catalog graph and a vertex bijection
    from the input graph onto it."""

    name: str
    bijection: dict[str, str]


def _isomorphism(g1: UnderlyingGraph, g2: UnderlyingGraph) -> Optional[dict[str, str]]:
    if len(g1.vertices) != len(g2.vertices) or len(g1.edges) != len(g2.edges):
        return None
    if sorted(map(g1.degree, g1.vertices)) != sorted(map(g2.degree, g2.vertices)):
        return None

    # process vertices so each one after the first touches the mapped prefix
    # when the graph is connected; keeps the candidate lists short
    order: list[str] = []
    remaining = set(g1.vertices)
    while remaining:
        anchored = sorted(
            (v for v in remaining if g1.nbrs(v) & set(order)),
            key=lambda v: (-len(g1.nbrs(v) & set(order)), -g1.degree(v), v),
        )
        pick = anchored[0] if anchored else min(remaining, key=lambda v: (-g1.degree(v), v))
        order.append(pick)
        remaining.discard(pick)

    mapping: dict[str, str] = {}
    used: set[str] = set()

    def candidates(v: str) -> list[str]:
        free = [u for u in g2.sorted_vertices if u not in used and g2.degree(u) == g1.degree(v)]
        if v in free:  # bias self-maps so catalog graphs identify as themselves
            free.remove(v)
            free.insert(0, v)
        return free

    def rec(pos: int) -> bool:
        if pos == len(order):
            return True
        v = order[pos]
        for u in candidates(v):
            if any(
                g1.has_edge(v, w) != g2.has_edge(u, mapping[w]) for w in mapping
            ):
                continue
            mapping[v] = u
            used.add(u)
            if rec(pos + 1):
                return True
            del mapping[v]
            used.discard(u)
        return False

    return dict(mapping) if rec(0) else None


def identify_special(graph: GraphLike) -> Optional[SpecialGraphId]:
    """Match the graph against the packaged catalog of exceptional
    well-covered graphs, returning the catalog name and an isomorphism
    onto the catalog copy, or None."""
    g = _und(graph)
    for entry in catalog():
        mapping = _isomorphism(g, entry.graph)
        if mapping is not None:
            return SpecialGraphId(entry.name, mapping)
    return None
