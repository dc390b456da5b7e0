"""Root oriented trees, unicycle subgraphs, and star-semi-forests.

A *root oriented tree* (ROT) is an out-arborescence inside the host graph:
every vertex is reachable from the parent along arcs, and weight-1 vertices
may only appear as non-parent leaves (or as the sole vertex of a singleton).
A *unicycle subgraph* is a directed cycle with out-trees hanging off it,
again with weight-1 vertices only in leaf position.  A *star-semi-forest*
is a vertex-disjoint family of ROTs and unicycles together with a witness
vertex outside the forest for every ROT parent; witnesses split into a
stable part W1 and a weight>1 part W2 sending an arc into their parent,
subject to N+(W2 ∪ H̃) ∩ W1 = ∅ where H̃ collects the interior vertices.

The central fact driving the deciders: an induced subgraph K extends to a
strong vertex cover if and only if K carries a generating star-semi-forest
(one whose vertex set is exactly K).  This module implements both sides:
an exhaustive search for such a forest, an independent strong-cover-based
check, and the constructive extraction of a forest from a strong cover.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations
from typing import Iterable, Iterator, Optional

from .covers import all_vertex_covers, analyze_cover, _oracle_bound
from .errors import (
    CapacityError,
    ConsistencyError,
    PreconditionError,
    StructureError,
    UnknownVertexError,
)
from .graph import Arc, WeightedOrientedGraph

DEFAULT_MAX_K = 12


# -- data types ---------------------------------------------------------------


@dataclass(frozen=True)
class RootOrientedTree:
    parent: str
    arcs: tuple[Arc, ...] = ()

    def vertices(self) -> frozenset[str]:
        vs = {self.parent}
        for t, h in self.arcs:
            vs.add(t)
            vs.add(h)
        return frozenset(vs)


@dataclass(frozen=True)
class UnicycleSubgraph:
    cycle: tuple[str, ...]
    arcs: tuple[Arc, ...]

    def vertices(self) -> frozenset[str]:
        vs = set(self.cycle)
        for t, h in self.arcs:
            vs.add(t)
            vs.add(h)
        return frozenset(vs)


@dataclass(frozen=True)
class StarSemiForest:
    """ROTs plus unicycles with the witness apparatus.

    ``w_assign`` pairs every ROT parent with its witness (two parents may
    share one witness); ``w1`` and ``w2`` partition the set of witnesses.
    """

    rots: tuple[RootOrientedTree, ...] = ()
    unicycles: tuple[UnicycleSubgraph, ...] = ()
    w_assign: tuple[tuple[str, str], ...] = ()
    w1: frozenset[str] = frozenset()
    w2: frozenset[str] = frozenset()

    def vertices(self) -> frozenset[str]:
        vs: set[str] = set()
        for t in self.rots:
            vs |= t.vertices()
        for b in self.unicycles:
            vs |= b.vertices()
        return frozenset(vs)

    def arcs(self) -> tuple[Arc, ...]:
        acc: set[Arc] = set()
        for t in self.rots:
            acc.update(t.arcs)
        for b in self.unicycles:
            acc.update(b.arcs)
        return tuple(sorted(acc))

    def witness_map(self) -> dict[str, str]:
        return dict(self.w_assign)

    @property
    def witnesses(self) -> frozenset[str]:
        return frozenset(w for _, w in self.w_assign)


@dataclass(frozen=True)
class Violation:
    clause: str
    message: str
    vertex: Optional[str] = None

    def __str__(self) -> str:
        return f"[{self.clause}] {self.message}"


EMPTY_SEMIFOREST = StarSemiForest()


# -- validation ---------------------------------------------------------------


def _check_arcs_in_host(d: WeightedOrientedGraph, arcs: Iterable[Arc]) -> None:
    for a in arcs:
        if tuple(a) not in d.arcs:
            raise StructureError(f"arc {tuple(a)!r} is not an arc of the host graph")


def _degrees(arcs: Iterable[Arc]) -> Counter:
    deg: Counter = Counter()
    for t, h in arcs:
        deg[t] += 1
        deg[h] += 1
    return deg


def _reachable(seeds: Iterable[str], arcset: Iterable[Arc]) -> set[str]:
    out: dict[str, list[str]] = {}
    for t, h in arcset:
        out.setdefault(t, []).append(h)
    reached = set(seeds)
    stack = list(reached)
    while stack:
        u = stack.pop()
        for x in out.get(u, ()):
            if x not in reached:
                reached.add(x)
                stack.append(x)
    return reached


def validate_rot(d: WeightedOrientedGraph, t: RootOrientedTree) -> Optional[Violation]:
    """None when ``t`` is a valid ROT of ``d``; otherwise the failed clause."""
    arcset = set(map(tuple, t.arcs))
    _check_arcs_in_host(d, arcset)
    if t.parent not in d.vertices:
        raise UnknownVertexError(f"unknown vertex {t.parent!r}")
    verts = t.vertices()
    reached = _reachable([t.parent], arcset)
    if reached != verts:
        missing = min(verts - reached)
        return Violation(
            "path-from-parent",
            f"no oriented path from parent {t.parent!r} to {missing!r}",
            vertex=missing,
        )
    if len(arcset) != len(verts) - 1:
        return Violation(
            "no-cycles",
            f"{len(arcset)} arcs on {len(verts)} vertices is not a tree",
        )
    deg = _degrees(arcset)
    for x in sorted(verts):
        if d.weight(x) == 1:
            ok = (deg[x] == 1 and x != t.parent) or (len(verts) == 1 and x == t.parent)
            if not ok:
                return Violation(
                    "weight-one-degree",
                    f"weight-1 vertex {x!r} must be a non-parent leaf "
                    "(or the sole vertex)",
                    vertex=x,
                )
    return None


def validate_unicycle(
    d: WeightedOrientedGraph, b: UnicycleSubgraph
) -> Optional[Violation]:
    """None when ``b`` is a valid unicycle subgraph of ``d``."""
    arcset = set(map(tuple, b.arcs))
    _check_arcs_in_host(d, arcset)
    cyc = tuple(b.cycle)
    if len(cyc) < 3 or len(set(cyc)) != len(cyc):
        return Violation(
            "cycle-shape", f"{cyc!r} is not a simple cycle of length >= 3"
        )
    for i, u in enumerate(cyc):
        v = cyc[(i + 1) % len(cyc)]
        if (u, v) not in arcset:
            return Violation(
                "cycle-oriented",
                f"cycle arc ({u!r}, {v!r}) is missing from the subgraph",
                vertex=u,
            )
    verts = b.vertices()
    reached = _reachable(cyc, arcset)
    if reached != verts:
        missing = min(verts - reached)
        return Violation(
            "path-from-cycle",
            f"no oriented path from the cycle to {missing!r}",
            vertex=missing,
        )
    if len(arcset) != len(verts):
        return Violation(
            "one-cycle",
            f"{len(arcset)} arcs on {len(verts)} vertices; a unicycle needs "
            "exactly one cycle",
        )
    deg = _degrees(arcset)
    for x in sorted(verts):
        if d.weight(x) == 1 and deg[x] != 1:
            return Violation(
                "weight-one-degree",
                f"weight-1 vertex {x!r} has degree {deg[x]}, expected 1",
                vertex=x,
            )
    return None


def h_tilde(d: WeightedOrientedGraph, h: StarSemiForest) -> frozenset[str]:
    """Interior vertices: degree >= 2 in H, plus parents of degree 1."""
    deg = _degrees(h.arcs())
    out = {x for x in h.vertices() if deg[x] >= 2}
    out |= {t.parent for t in h.rots if deg[t.parent] == 1}
    return frozenset(out)


def validate_semiforest(
    d: WeightedOrientedGraph, h: StarSemiForest
) -> Optional[Violation]:
    """None when ``h`` satisfies every star-semi-forest clause in ``d``."""
    for t in h.rots:
        v = validate_rot(d, t)
        if v is not None:
            return Violation(
                v.clause, f"ROT with parent {t.parent!r}: {v.message}", v.vertex
            )
    for b in h.unicycles:
        v = validate_unicycle(d, b)
        if v is not None:
            return Violation(
                v.clause, f"unicycle on {b.cycle!r}: {v.message}", v.vertex
            )
    seen: set[str] = set()
    for comp in (*h.rots, *h.unicycles):
        vs = comp.vertices()
        overlap = seen & vs
        if overlap:
            x = min(overlap)
            return Violation(
                "partition", f"vertex {x!r} lies in two components", vertex=x
            )
        seen |= vs
    verts = frozenset(seen)

    amap = dict(h.w_assign)
    parents = {t.parent for t in h.rots}
    if set(amap) != parents:
        return Violation(
            "witness-assignment",
            f"witness map covers {sorted(amap)} but the ROT parents are "
            f"{sorted(parents)}",
        )
    for p, w in sorted(amap.items()):
        if w in verts:
            return Violation(
                "witness-inside", f"witness {w!r} lies inside the forest", vertex=w
            )
        if w not in d.nbrs(p):
            return Violation(
                "witness-adjacent",
                f"witness {w!r} is not adjacent to parent {p!r}",
                vertex=w,
            )
    witnesses = frozenset(amap.values())
    if (h.w1 | h.w2) != witnesses or (h.w1 & h.w2):
        return Violation(
            "w1-w2-partition",
            f"W1={sorted(h.w1)} and W2={sorted(h.w2)} do not partition "
            f"W={sorted(witnesses)}",
        )
    for u in sorted(h.w1):
        hit = d.nbrs(u) & h.w1
        if hit:
            return Violation(
                "w1-stable", f"W1 vertices {u!r} and {min(hit)!r} are adjacent",
                vertex=u,
            )
    for w in sorted(h.w2):
        if d.weight(w) <= 1:
            return Violation(
                "w2-weight", f"W2 vertex {w!r} has weight 1", vertex=w
            )
    for p, w in sorted(amap.items()):
        if w in h.w2 and (w, p) not in d.arcs:
            return Violation(
                "w2-arc", f"W2 witness {w!r} has no arc into parent {p!r}", vertex=w
            )
    blocked = d.out_nbrs_of_set(h.w2 | h_tilde(d, h)) & h.w1
    if blocked:
        x = min(blocked)
        return Violation(
            "w1-avoids-outneighbors",
            f"W1 vertex {x!r} is an out-neighbor of W2 ∪ H̃",
            vertex=x,
        )
    return None


# -- compiled search ----------------------------------------------------------


def _bits(m: int) -> Iterator[int]:
    while m:
        b = m & -m
        yield b.bit_length() - 1
        m ^= b


class _Compiled:
    """Bitmask tables for one host graph, with a block-signature cache."""

    __slots__ = ("verts", "index", "out", "inn", "adj", "vplus", "sig_cache")

    def __init__(self, d: WeightedOrientedGraph):
        self.verts = d.sorted_vertices
        self.index = {v: i for i, v in enumerate(self.verts)}
        n = len(self.verts)
        self.out = [0] * n
        self.inn = [0] * n
        self.adj = [0] * n
        for t, h in d.arcs:
            ti, hi = self.index[t], self.index[h]
            self.out[ti] |= 1 << hi
            self.inn[hi] |= 1 << ti
            self.adj[ti] |= 1 << hi
            self.adj[hi] |= 1 << ti
        self.vplus = 0
        for i, v in enumerate(self.verts):
            if d.weight(v) > 1:
                self.vplus |= 1 << i
        self.sig_cache: dict[int, list] = {}


@lru_cache(maxsize=256)
def _compiled(d: WeightedOrientedGraph) -> _Compiled:
    return _Compiled(d)


def _span(c: _Compiled, bmask: int, seeds: int, tails: int) -> int:
    reached = seeds & bmask
    pending = reached & tails
    while pending:
        grow = 0
        m = pending
        while m:
            b = m & -m
            m ^= b
            grow |= c.out[b.bit_length() - 1]
        new = grow & bmask & ~reached
        reached |= new
        pending = new & tails
    return reached


def _minimal_extras(universe: int, phi) -> list[int]:
    """All inclusion-minimal submasks of ``universe`` satisfying monotone phi."""
    if phi(0):
        return [0]
    elems = list(_bits(universe))
    found: list[int] = []
    for size in range(1, len(elems) + 1):
        for combo in combinations(elems, size):
            m = 0
            for i in combo:
                m |= 1 << i
            if any(f & m == f for f in found):
                continue
            if phi(m):
                found.append(m)
    return found


def _directed_cycles(c: _Compiled, mask: int) -> list[tuple[int, ...]]:
    """Simple directed cycles inside ``mask``, each reported once, starting
    at its smallest vertex."""
    res: list[tuple[int, ...]] = []

    def dfs(start: int, cur: int, visited: int, path: list[int]) -> None:
        outs = c.out[cur] & mask
        if outs & (1 << start) and len(path) >= 3:
            res.append(tuple(path))
        m = outs & ~visited
        while m:
            b = m & -m
            m ^= b
            i = b.bit_length() - 1
            if i <= start:
                continue
            path.append(i)
            dfs(start, i, visited | b, path)
            path.pop()

    for s in _bits(mask):
        dfs(s, s, 1 << s, [s])
    return res


def _connected_subsets(c: _Compiled, domain: int, start: int) -> list[int]:
    """All connected submasks of ``domain`` containing vertex ``start``."""
    res: list[int] = []

    def rec(cur: int, banned: int) -> None:
        res.append(cur)
        frontier = 0
        m = cur
        while m:
            b = m & -m
            m ^= b
            frontier |= c.adj[b.bit_length() - 1]
        frontier &= domain & ~cur & ~banned
        ban = banned
        for i in _bits(frontier):
            rec(cur | (1 << i), ban)
            ban |= 1 << i

    rec(1 << start, 0)
    return res


def _signatures(c: _Compiled, bmask: int) -> list[tuple]:
    """Component shapes available on a vertex block.

    A signature is ("rot", parent, interior_mask) or ("uni", cycle,
    interior_mask); interior masks are inclusion-minimal, so they dominate
    every other tree/unicycle on the same block for the downstream
    W1-avoidance constraint.
    """
    cached = c.sig_cache.get(bmask)
    if cached is not None:
        return cached
    sigs: list[tuple] = []
    members = list(_bits(bmask))
    if len(members) == 1:
        sigs.append(("rot", members[0], 0))
        c.sig_cache[bmask] = sigs
        return sigs
    vp = c.vplus & bmask
    for p in members:
        pbit = 1 << p
        if not (pbit & vp):
            continue

        def phi_rot(extra: int, pbit: int = pbit) -> bool:
            return _span(c, bmask, pbit, pbit | extra) == bmask

        for extra in _minimal_extras(vp & ~pbit, phi_rot):
            sigs.append(("rot", p, pbit | extra))
    for cyc in _directed_cycles(c, vp):
        cmask = 0
        for i in cyc:
            cmask |= 1 << i

        def phi_uni(extra: int, cmask: int = cmask) -> bool:
            return _span(c, bmask, cmask, cmask | extra) == bmask

        for extra in _minimal_extras(vp & ~cmask, phi_uni):
            sigs.append(("uni", cyc, cmask | extra))
    c.sig_cache[bmask] = sigs
    return sigs


def _assign_witnesses(c: _Compiled, kmask: int, blocks: list) -> Optional[tuple]:
    parents = sorted(sig[1] for _, sig in blocks if sig[0] == "rot")
    hmask = 0
    for _, sig in blocks:
        hmask |= sig[2]
    out_h = 0
    for i in _bits(hmask):
        out_h |= c.out[i]

    assign: dict[int, int] = {}
    state = {"w1": 0, "w2": 0, "out_w2": 0}

    def rec(i: int) -> bool:
        if i == len(parents):
            return True
        p = parents[i]
        for w in _bits(c.adj[p] & ~kmask):
            b = 1 << w
            if b & state["w1"]:
                assign[p] = w
                if rec(i + 1):
                    return True
                del assign[p]
                continue
            if b & state["w2"]:
                if c.inn[p] & b:
                    assign[p] = w
                    if rec(i + 1):
                        return True
                    del assign[p]
                continue
            # fresh vertex: stable side first
            if (
                not (c.adj[w] & state["w1"])
                and not (b & out_h)
                and not (b & state["out_w2"])
            ):
                state["w1"] |= b
                assign[p] = w
                if rec(i + 1):
                    return True
                state["w1"] &= ~b
                del assign[p]
            if (b & c.vplus) and (c.inn[p] & b) and not (c.out[w] & state["w1"]):
                saved = state["out_w2"]
                state["w2"] |= b
                state["out_w2"] |= c.out[w]
                assign[p] = w
                if rec(i + 1):
                    return True
                state["w2"] &= ~b
                state["out_w2"] = saved
                del assign[p]
        return False

    if rec(0):
        return dict(assign), state["w1"], state["w2"]
    return None


def _grow_arcs(c: _Compiled, bmask: int, seeds: int, tails: int) -> list[tuple[int, int]]:
    """Deterministic BFS arborescence arcs from ``seeds`` spanning ``bmask``,
    using only arc tails inside ``tails``."""
    reached = seeds
    arcs: list[tuple[int, int]] = []
    frontier = seeds & tails
    while frontier:
        new = 0
        for u in sorted(_bits(frontier)):
            for x in sorted(_bits(c.out[u] & bmask & ~reached)):
                if (1 << x) & reached:
                    continue
                arcs.append((u, x))
                reached |= 1 << x
                new |= 1 << x
        frontier = new & tails
    return arcs


def _materialize(
    c: _Compiled,
    blocks: list,
    assignment: tuple,
) -> StarSemiForest:
    assign, w1m, w2m = assignment
    names = c.verts
    rots = []
    unis = []
    pairs = []
    for bmask, sig in blocks:
        if sig[0] == "rot":
            p, interior = sig[1], sig[2]
            arcs = _grow_arcs(c, bmask, 1 << p, interior)
            rots.append(
                RootOrientedTree(
                    parent=names[p],
                    arcs=tuple(sorted((names[a], names[b]) for a, b in arcs)),
                )
            )
            pairs.append((names[p], names[assign[p]]))
        else:
            cyc, interior = sig[1], sig[2]
            cmask = 0
            for i in cyc:
                cmask |= 1 << i
            arcs = [(cyc[i], cyc[(i + 1) % len(cyc)]) for i in range(len(cyc))]
            arcs += _grow_arcs(c, bmask, cmask, interior)
            unis.append(
                UnicycleSubgraph(
                    cycle=tuple(names[i] for i in cyc),
                    arcs=tuple(sorted((names[a], names[b]) for a, b in arcs)),
                )
            )
    return StarSemiForest(
        rots=tuple(rots),
        unicycles=tuple(unis),
        w_assign=tuple(sorted(pairs)),
        w1=frozenset(names[i] for i in _bits(w1m)),
        w2=frozenset(names[i] for i in _bits(w2m)),
    )


def _search(c: _Compiled, kmask: int, allow_unicycles: bool) -> Optional[tuple]:
    blocks: list = []

    def rec(remaining: int) -> Optional[tuple]:
        if not remaining:
            assignment = _assign_witnesses(c, kmask, blocks)
            if assignment is not None:
                return (list(blocks), assignment)
            return None
        start = (remaining & -remaining).bit_length() - 1
        for bmask in _connected_subsets(c, remaining, start):
            for sig in _signatures(c, bmask):
                if sig[0] == "uni":
                    if not allow_unicycles:
                        continue
                elif not (c.adj[sig[1]] & ~kmask):
                    continue  # parent has no witness candidate outside K
                blocks.append((bmask, sig))
                found = rec(remaining & ~bmask)
                if found is not None:
                    return found
                blocks.pop()
        return None

    return rec(kmask)


def exists_generating_semiforest(
    d: WeightedOrientedGraph,
    k: Iterable[str],
    *,
    max_k: int = DEFAULT_MAX_K,
) -> Optional[StarSemiForest]:
    """A validated star-semi-forest whose vertex set is exactly ``k``,
    or None when no such forest exists.

    Backtracking over partitions of ``k`` into connected blocks; all-ROT
    decompositions are tried before any unicycle component is allowed,
    and parents in lexicographic order, so the witness is canonical.
    """
    kset = frozenset(k)
    unknown = kset - d.vertices
    if unknown:
        raise UnknownVertexError(f"unknown vertices {sorted(unknown)}")
    if not kset:
        return EMPTY_SEMIFOREST
    if len(kset) > max_k:
        raise CapacityError(
            f"|K| = {len(kset)} exceeds the search bound {max_k}"
        )
    c = _compiled(d)
    kmask = 0
    for v in kset:
        kmask |= 1 << c.index[v]
    for allow_unicycles in (False, True):
        found = _search(c, kmask, allow_unicycles)
        if found is not None:
            blocks, assignment = found
            h = _materialize(c, blocks, assignment)
            if h.vertices() != kset:
                raise ConsistencyError(
                    "materialized forest does not span K",
                    details={"got": h.vertices(), "want": kset},
                )
            bad = validate_semiforest(d, h)
            if bad is not None:
                raise ConsistencyError(
                    f"search produced an invalid forest: {bad}",
                    details={"violation": bad, "forest": h},
                )
            return h
    return None


# -- the strong-cover side ----------------------------------------------------


def strong_cover_superset_exists(
    d: WeightedOrientedGraph,
    k: Iterable[str],
    bound: Optional[int] = None,
) -> Optional[frozenset[str]]:
    """The (cardinality, lexicographically) first strong cover containing
    ``k``, or None. Independent of the semi-forest search by construction."""
    kset = frozenset(k)
    unknown = kset - d.vertices
    if unknown:
        raise UnknownVertexError(f"unknown vertices {sorted(unknown)}")
    limit = _oracle_bound() if bound is None else bound
    if len(d.vertices) > limit:
        raise CapacityError(
            f"graph has {len(d.vertices)} vertices, enumeration bound is {limit}"
        )
    for cover in all_vertex_covers(d, bound=limit):
        if kset <= cover and analyze_cover(d, cover).strong:
            return cover
    return None


# -- extraction from a strong cover --------------------------------------------


def _grow_maximal_rot(
    d: WeightedOrientedGraph, parent: str, allowed: frozenset[str]
) -> RootOrientedTree:
    verts = {parent}
    arcs: list[Arc] = []
    while True:
        ext = sorted(
            (u, x)
            for u in verts
            if d.weight(u) > 1
            for x in d.out_nbrs(u)
            if x in allowed and x not in verts
        )
        if not ext:
            break
        u, x = ext[0]
        arcs.append((u, x))
        verts.add(x)
    return RootOrientedTree(parent=parent, arcs=tuple(sorted(arcs)))


def _grow_maximal_unicycle(
    d: WeightedOrientedGraph, cycle: tuple[str, ...], allowed: frozenset[str]
) -> UnicycleSubgraph:
    verts = set(cycle)
    arcs: list[Arc] = [
        (cycle[i], cycle[(i + 1) % len(cycle)]) for i in range(len(cycle))
    ]
    while True:
        ext = sorted(
            (u, x)
            for u in verts
            if d.weight(u) > 1
            for x in d.out_nbrs(u)
            if x in allowed and x not in verts
        )
        if not ext:
            break
        u, x = ext[0]
        arcs.append((u, x))
        verts.add(x)
    return UnicycleSubgraph(cycle=cycle, arcs=tuple(sorted(arcs)))


def semiforest_from_strong_cover(
    d: WeightedOrientedGraph,
    k: Iterable[str],
    cover: Iterable[str],
) -> StarSemiForest:
    """Extract a generating star-semi-forest of ``k`` from a strong cover
    containing it.

    Mirrors the constructive recursion: vertices of L1 ∩ K become witness-
    carrying singletons; while unassigned vertices remain, an L2 vertex
    seeds a maximal ROT with its outside in-neighbor as a W1 witness, and
    otherwise an in-neighbor chain through weight>1 cover vertices either
    escapes K (maximal ROT, W2 witness) or closes a cycle (maximal
    unicycle). The result always validates.
    """
    kset = frozenset(k)
    cset = frozenset(cover)
    unknown = kset - d.vertices
    if unknown:
        raise UnknownVertexError(f"unknown vertices {sorted(unknown)}")
    analysis = analyze_cover(d, cset)
    if not analysis.strong:
        raise PreconditionError("the given cover is not strong")
    if not kset <= cset:
        raise PreconditionError(
            f"K is not inside the cover: missing {sorted(kset - cset)}"
        )

    rots: list[RootOrientedTree] = []
    unis: list[UnicycleSubgraph] = []
    pairs: list[tuple[str, str]] = []
    w1: set[str] = set()
    w2: set[str] = set()
    assigned: set[str] = set()

    for v in sorted(analysis.l1 & kset):
        w = min(d.out_nbrs(v) - cset)
        rots.append(RootOrientedTree(parent=v))
        pairs.append((v, w))
        w1.add(w)
        assigned.add(v)

    while assigned != kset:
        rest = frozenset(kset - assigned)
        l2_rest = sorted(analysis.l2 & rest)
        if l2_rest:
            z = l2_rest[0]
            t = _grow_maximal_rot(d, z, rest)
            rots.append(t)
            assigned |= t.vertices()
            pairs.append((z, min(d.in_nbrs(z) - cset)))
            w1.add(pairs[-1][1])
            continue
        # everything left sits in L3; walk in-neighbor chains through
        # weight>1 vertices of C \ L1 until the chain escapes K or cycles
        chain = [min(rest)]
        chain_set = {chain[0]}
        while True:
            head = chain[-1]
            cands = sorted(
                y
                for y in d.in_nbrs(head)
                if y in cset and y not in analysis.l1 and d.weight(y) > 1
            )
            if not cands:
                raise ConsistencyError(
                    "strong cover offers no eligible in-neighbor",
                    details={"vertex": head, "cover": cset},
                )
            y = cands[0]
            if y in chain_set:
                j = chain.index(y)
                cyc = (chain[j],) + tuple(reversed(chain[j + 1 :]))
                pivot = cyc.index(min(cyc))
                cyc = cyc[pivot:] + cyc[:pivot]
                b = _grow_maximal_unicycle(d, cyc, rest)
                unis.append(b)
                assigned |= b.vertices()
                break
            if y not in rest:
                if y in kset:
                    raise ConsistencyError(
                        "in-neighbor chain re-entered an assigned component",
                        details={"vertex": y, "chain": tuple(chain)},
                    )
                t = _grow_maximal_rot(d, head, rest)
                rots.append(t)
                assigned |= t.vertices()
                pairs.append((head, y))
                w2.add(y)
                break
            chain.append(y)
            chain_set.add(y)

    h = StarSemiForest(
        rots=tuple(rots),
        unicycles=tuple(unis),
        w_assign=tuple(sorted(pairs)),
        w1=frozenset(w1),
        w2=frozenset(w2),
    )
    bad = validate_semiforest(d, h)
    if bad is not None:
        raise ConsistencyError(
            f"extraction produced an invalid forest: {bad}",
            details={"violation": bad, "forest": h},
        )
    if h.vertices() != kset:
        raise ConsistencyError(
            "extraction did not span K",
            details={"got": h.vertices(), "want": kset},
        )
    return h
