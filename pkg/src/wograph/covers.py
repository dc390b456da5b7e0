"""Vertex covers and stable sets: enumeration, the L1/L2/L3 partition of a
cover, strong covers, cover strengthening, and the exhaustive unmixedness
oracle.

Terminology, for a cover C of an oriented graph: L1 holds the vertices with
an out-neighbor outside C, L2 the remaining vertices with an in-neighbor
outside C, and L3 the vertices whose whole closed neighborhood lies inside C.
C is *strong* when every L3 vertex receives an arc from a weight>1 vertex of
C \\ L1. Unmixedness of the edge ideal is equivalent to all strong covers
sharing one cardinality, and also to (well-covered + every strong cover has
empty L3); the oracle computes both routes and insists they agree.
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from functools import lru_cache
from typing import Iterable, Iterator, Optional, Union

from .errors import (
    CapacityError,
    ConsistencyError,
    PreconditionError,
    UnknownVertexError,
)
from .graph import UnderlyingGraph, WeightedOrientedGraph

GraphLike = Union[WeightedOrientedGraph, UnderlyingGraph]

DEFAULT_ORACLE_BOUND = 20
ORACLE_BOUND_ENV = "WOGRAPH_ORACLE_BOUND"


def _g(graph: GraphLike) -> UnderlyingGraph:
    if isinstance(graph, WeightedOrientedGraph):
        return graph.underlying
    return graph


def _set_key(s: Iterable[str]):
    t = tuple(sorted(s))
    return (len(t), t)


def _check_known(graph: GraphLike, vs: frozenset[str]) -> None:
    unknown = vs - _g(graph).vertices
    if unknown:
        raise UnknownVertexError(f"unknown vertices {sorted(unknown)}")


def _uncovered_edge(g: UnderlyingGraph, cover: frozenset[str]):
    for u, v in g.sorted_edges:
        if u not in cover and v not in cover:
            return (u, v)
    return None


def _ensure_capacity(graph: GraphLike, bound: Optional[int]) -> None:
    """Exhaustive-search guard shared by every global enumeration here."""
    limit = _oracle_bound() if bound is None else bound
    n = len(_g(graph).vertices)
    if n > limit:
        raise CapacityError(
            f"graph has {n} vertices, oracle bound is {limit} "
            f"(override with {ORACLE_BOUND_ENV} or bound=)"
        )


# -- analysis ---------------------------------------------------------------


@dataclass(frozen=True)
class CoverAnalysis:
    """A vertex cover with its L-partition and strongness flag."""

    cover: frozenset[str]
    l1: frozenset[str]
    l2: frozenset[str]
    l3: frozenset[str]
    strong: bool


@dataclass(frozen=True)
class Verdict:
    """Outcome of the unmixedness oracle.

    ``cover_sizes`` lists the distinct strong-cover cardinalities in
    ascending order (a single entry exactly when unmixed).  For a mixed
    verdict ``witness_pair`` holds two strong covers of different sizes,
    and ``witness_l3_cover``, when present, is a strong cover whose L3
    part is nonempty.  Both re-check with analyze_cover.
    """

    status: str  # "unmixed" | "mixed"
    cover_sizes: tuple[int, ...]
    strong_count: int
    witness_pair: Optional[tuple[frozenset[str], frozenset[str]]] = None
    witness_l3_cover: Optional[frozenset[str]] = None

    @property
    def unmixed(self) -> bool:
        return self.status == "unmixed"


def is_vertex_cover(graph: GraphLike, cover: Iterable[str]) -> bool:
    c = frozenset(cover)
    _check_known(graph, c)
    return _uncovered_edge(_g(graph), c) is None


def analyze_cover(d: WeightedOrientedGraph, cover: Iterable[str]) -> CoverAnalysis:
    c = frozenset(cover)
    _check_known(d, c)
    bad = _uncovered_edge(d.underlying, c)
    if bad is not None:
        raise PreconditionError(f"not a vertex cover: edge {bad} is uncovered")
    l1 = frozenset(x for x in c if d.out_nbrs(x) - c)
    l2 = frozenset(x for x in c - l1 if d.in_nbrs(x) - c)
    l3 = c - l1 - l2
    eligible = c - l1
    strong = all(
        any(y in eligible and d.weight(y) > 1 for y in d.in_nbrs(x)) for x in l3
    )
    return CoverAnalysis(cover=c, l1=l1, l2=l2, l3=l3, strong=strong)


# -- enumeration ------------------------------------------------------------


def _stable_sets(g: UnderlyingGraph) -> list[frozenset[str]]:
    vs = g.sorted_vertices
    acc: list[frozenset[str]] = []
    cur: set[str] = set()

    def rec(i: int) -> None:
        if i == len(vs):
            acc.append(frozenset(cur))
            return
        v = vs[i]
        rec(i + 1)
        if not (g.nbrs(v) & cur):
            cur.add(v)
            rec(i + 1)
            cur.discard(v)

    rec(0)
    return acc


def all_vertex_covers(
    graph: GraphLike, *, bound: Optional[int] = None
) -> Iterator[frozenset[str]]:
    """Every vertex cover, ordered by (cardinality, lexicographic)."""
    _ensure_capacity(graph, bound)
    g = _g(graph)
    covers = [g.vertices - s for s in _stable_sets(g)]
    return iter(sorted(covers, key=_set_key))


def maximal_stable_sets(
    graph: GraphLike, *, bound: Optional[int] = None
) -> Iterator[frozenset[str]]:
    _ensure_capacity(graph, bound)
    g = _g(graph)
    return iter(
        [
            s
            for s in sorted(_stable_sets(g), key=_set_key)
            if all(g.nbrs(v) & s for v in g.vertices - s)
        ]
    )


def minimal_vertex_covers(
    graph: GraphLike, *, bound: Optional[int] = None
) -> Iterator[frozenset[str]]:
    g = _g(graph)
    covers = [g.vertices - s for s in maximal_stable_sets(g, bound=bound)]
    return iter(sorted(covers, key=_set_key))


def strong_vertex_covers(
    d: WeightedOrientedGraph, *, bound: Optional[int] = None
) -> Iterator[frozenset[str]]:
    return iter([an.cover for an in _strong_cover_analyses(d, bound=bound)])


def _strong_cover_analyses(
    d: WeightedOrientedGraph, *, bound: Optional[int] = None
) -> list[CoverAnalysis]:
    return [
        an
        for c in all_vertex_covers(d, bound=bound)
        for an in (analyze_cover(d, c),)
        if an.strong
    ]


# -- classical numbers -------------------------------------------------------


def beta(graph: GraphLike, *, bound: Optional[int] = None) -> int:
    """Stable (independence) number, by branch and bound."""
    _ensure_capacity(graph, bound)
    g = _g(graph)
    best = 0

    def rec(remaining: list[str], size: int) -> None:
        nonlocal best
        if size + len(remaining) <= best:
            return
        if not remaining:
            best = max(best, size)
            return
        rset = set(remaining)
        v = max(remaining, key=lambda u: (len(g.nbrs(u) & rset), u))
        rec([u for u in remaining if u != v and u not in g.nbrs(v)], size + 1)
        rec([u for u in remaining if u != v], size)

    rec(sorted(g.vertices), 0)
    return best


def tau(graph: GraphLike, *, bound: Optional[int] = None) -> int:
    """Cover number; complement identity with the stable number."""
    g = _g(graph)
    return len(g.vertices) - beta(g, bound=bound)


def nu(graph: GraphLike, *, bound: Optional[int] = None) -> int:
    """Matching number, by exhaustive search (correct on odd cycles)."""
    _ensure_capacity(graph, bound)
    g = _g(graph)
    order = g.sorted_vertices

    @lru_cache(maxsize=None)
    def rec(avail: frozenset[str]) -> int:
        pick = None
        for v in order:
            if v in avail and g.nbrs(v) & avail:
                pick = v
                break
        if pick is None:
            return 0
        best = rec(avail - {pick})
        for u in sorted(g.nbrs(pick) & avail):
            cand = 1 + rec(avail - {pick, u})
            if cand > best:
                best = cand
        return best

    result = rec(g.vertices)
    rec.cache_clear()
    return result


def is_konig(graph: GraphLike, *, bound: Optional[int] = None) -> bool:
    return tau(graph, bound=bound) == nu(graph, bound=bound)


def is_well_covered(graph: GraphLike, *, bound: Optional[int] = None) -> bool:
    sizes = {len(s) for s in maximal_stable_sets(graph, bound=bound)}
    return len(sizes) <= 1


# -- oracle -------------------------------------------------------------------


def _oracle_bound() -> int:
    raw = os.environ.get(ORACLE_BOUND_ENV)
    if raw is None:
        return DEFAULT_ORACLE_BOUND
    try:
        return int(raw)
    except ValueError:
        raise PreconditionError(
            f"{ORACLE_BOUND_ENV} must be an integer, got {raw!r}"
        ) from None


def oracle_unmixed(d: WeightedOrientedGraph, bound: Optional[int] = None) -> Verdict:
    """Exhaustive unmixedness decision via strong-cover enumeration.

    Computes the verdict twice (equal strong-cover cardinalities versus
    well-covered + all-L3-empty) and raises ConsistencyError if the two
    characterizations ever disagree.
    """
    limit = _oracle_bound() if bound is None else bound
    _ensure_capacity(d, limit)
    strong = _strong_cover_analyses(d, bound=limit)
    sizes = tuple(sorted({len(an.cover) for an in strong}))
    offender = next((an for an in strong if an.l3), None)
    by_sizes = len(sizes) <= 1
    by_shape = is_well_covered(d, bound=limit) and offender is None
    if by_sizes != by_shape:
        raise ConsistencyError(
            "strong-cover cardinalities and the well-covered/L3 route disagree",
            details={
                "cover_sizes": sizes,
                "well_covered": is_well_covered(d, bound=limit),
                "l3_offender": offender.cover if offender else None,
            },
        )
    if by_sizes:
        return Verdict("unmixed", sizes, len(strong))
    small = strong[0].cover
    large = next(an.cover for an in strong if len(an.cover) == sizes[-1])
    return Verdict(
        "mixed",
        sizes,
        len(strong),
        witness_pair=(small, large),
        witness_l3_cover=offender.cover if offender else None,
    )


# -- strengthening -------------------------------------------------------------


def strengthen(
    d: WeightedOrientedGraph, cover: Iterable[str], a: Iterable[str]
) -> frozenset[str]:
    """Shrink a cover to a strong one while keeping N+(a) inside it.

    Requires a ⊆ V+ and N+(a) ⊆ cover. Repeatedly deletes the smallest
    L3 vertex outside N+(a); the survivors of L3 all receive arcs from a,
    which ends up in C \\ L1, so the result is strong (re-verified here).
    """
    c = frozenset(cover)
    aset = frozenset(a)
    _check_known(d, aset)
    not_plus = {v for v in aset if d.weight(v) <= 1}
    if not_plus:
        raise PreconditionError(
            f"vertices {sorted(not_plus)} have weight 1; the anchor set must "
            "contain only weight>1 vertices"
        )
    na = d.out_nbrs_of_set(aset)
    if not na <= c:
        raise PreconditionError(
            f"out-neighbors {sorted(na - c)} of the anchor set are outside the cover"
        )
    analysis = analyze_cover(d, c)
    while True:
        eligible = sorted(analysis.l3 - na)
        if not eligible:
            break
        c = c - {eligible[0]}
        analysis = analyze_cover(d, c)
    if not analysis.strong:
        raise ConsistencyError(
            "strengthening finished on a non-strong cover",
            details={"cover": c, "l3": analysis.l3},
        )
    return c


# -- mixedness via a stable configuration --------------------------------------


@dataclass(frozen=True)
class StableSetWitness:
    """A mixedness certificate: arcs (z,y),(y,x) with y of weight > 1, one
    chosen partner z_i off each neighbor x_i of x besides y, the resulting
    stable set, and a strong cover holding x in its L3 part."""

    y: str
    x: str
    z: str
    partners: tuple[tuple[str, str], ...]
    stable_set: frozenset[str]
    cover: frozenset[str]


def _complete_partners(
    g: UnderlyingGraph, base: set[str], candidates: list[list[str]]
) -> Optional[tuple[str, ...]]:
    chosen: list[str] = []
    cur = set(base)
    added: list[bool] = []

    def rec(i: int) -> bool:
        if i == len(candidates):
            return True
        for zi in candidates[i]:
            if zi in cur:
                chosen.append(zi)
                added.append(False)
            elif not (g.nbrs(zi) & cur):
                cur.add(zi)
                chosen.append(zi)
                added.append(True)
            else:
                continue
            if rec(i + 1):
                return True
            if added.pop():
                cur.discard(zi)
            chosen.pop()
        return False

    return tuple(chosen) if rec(0) else None


def stable_set_mixed_witness(
    d: WeightedOrientedGraph,
) -> Optional[StableSetWitness]:
    """Search for the stable configuration that forces mixedness.

    Scans arcs (y,x) with weight(y) > 1 and in-neighbors z of y, then tries
    to pick z_i in N(x_i) \\ N+(y) for the other neighbors x_i of x so that
    {z, x, z_1, ..., z_s} is stable. On success the returned cover is built
    by strengthening (minimal cover on the complement of a maximal stable
    superset, plus N+(y)) and provably traps x in L3; absence of a witness
    does NOT imply unmixedness.
    """
    g = d.underlying
    for y in sorted(d.v_plus()):
        outs = sorted(d.out_nbrs(y))
        ins = sorted(d.in_nbrs(y))
        if not outs or not ins:
            continue
        ny_out = d.out_nbrs(y)
        for x in outs:
            others = sorted(d.nbrs(x) - {y})
            candidates = [sorted(g.nbrs(xi) - ny_out) for xi in others]
            if any(not cs for cs in candidates):
                continue
            for z in ins:
                if z in g.nbrs(x):
                    continue
                chosen = _complete_partners(g, {x, z}, candidates)
                if chosen is None:
                    continue
                stable = frozenset({x, z, *chosen})
                maximal = set(stable)
                for v in sorted(d.vertices - stable):
                    if not (g.nbrs(v) & maximal):
                        maximal.add(v)
                cover = (d.vertices - maximal) | ny_out
                strong = strengthen(d, cover, {y})
                final = analyze_cover(d, strong)
                if x not in final.l3:
                    raise ConsistencyError(
                        "stable-configuration cover lost its L3 vertex",
                        details={"x": x, "cover": strong, "l3": final.l3},
                    )
                return StableSetWitness(
                    y=y,
                    x=x,
                    z=z,
                    partners=tuple(zip(others, chosen)),
                    stable_set=stable,
                    cover=strong,
                )
    return None
