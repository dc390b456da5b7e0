"""Shared fixtures: brute-force reference oracles and graph builders.

The brute checks below work straight from the definition using only the
raw vertex/arc/weight accessors, so they stay independent of the cover
and semi-forest machinery they are used to cross-check.
"""

from __future__ import annotations

import itertools
from typing import Iterable

import pytest
from hypothesis import strategies as st

from wograph import WeightedOrientedGraph


def wog(arcs, weights=None, extra=(), normalize=False) -> WeightedOrientedGraph:
    """Graph from arcs alone; vertex set inferred, weights default to 1."""
    vertices = sorted({v for a in arcs for v in a} | set(extra) | set(weights or ()))
    return WeightedOrientedGraph(vertices, arcs, weights, normalize=normalize)


def cycle_arcs(names):
    return [(names[i], names[(i + 1) % len(names)]) for i in range(len(names))]


def path_arcs(names):
    return [(names[i], names[i + 1]) for i in range(len(names) - 1)]


# -- brute-force reference implementations ------------------------------------


def und_edges(d) -> set[frozenset[str]]:
    return {frozenset(a) for a in d.arcs}


def brute_is_cover(d, cover) -> bool:
    c = set(cover)
    return all(e & c for e in und_edges(d))


def brute_covers(d) -> list[frozenset[str]]:
    vs = sorted(d.vertices)
    out = []
    for r in range(len(vs) + 1):
        for sub in itertools.combinations(vs, r):
            if brute_is_cover(d, sub):
                out.append(frozenset(sub))
    return out


def brute_l123(d, cover):
    """(L1, L2, L3) straight from the definition."""
    c = frozenset(cover)
    outs = {v: {h for t, h in d.arcs if t == v} for v in d.vertices}
    ins = {v: {t for t, h in d.arcs if h == v} for v in d.vertices}
    l1 = {x for x in c if not outs[x] <= c}
    l2 = {x for x in c - l1 if not ins[x] <= c}
    l3 = c - l1 - l2
    return frozenset(l1), frozenset(l2), frozenset(l3)


def brute_is_strong(d, cover) -> bool:
    c = frozenset(cover)
    l1, _, l3 = brute_l123(d, c)
    for x in l3:
        if not any(
            (y, x) in d.arcs and y in c - l1 and d.weight(y) > 1 for y in d.vertices
        ):
            return False
    return True


def brute_strong_covers(d) -> list[frozenset[str]]:
    return [c for c in brute_covers(d) if brute_is_strong(d, c)]


def brute_unmixed(d) -> bool:
    sizes = {len(c) for c in brute_strong_covers(d)}
    return len(sizes) <= 1


def brute_stable_sets(d) -> list[frozenset[str]]:
    edges = und_edges(d)
    vs = sorted(d.vertices)
    out = []
    for r in range(len(vs) + 1):
        for sub in itertools.combinations(vs, r):
            s = set(sub)
            if all(not e <= s for e in edges):
                out.append(frozenset(sub))
    return out


def brute_beta(d) -> int:
    return max(len(s) for s in brute_stable_sets(d))


def brute_tau(d) -> int:
    return min(len(c) for c in brute_covers(d))


def brute_nu(d) -> int:
    edges = sorted(tuple(sorted(e)) for e in und_edges(d))

    def best(rest: list, used: frozenset) -> int:
        if not rest:
            return 0
        e, *tail = rest
        skip = best(tail, used)
        if used & set(e):
            return skip
        return max(skip, 1 + best(tail, used | set(e)))

    return best(edges, frozenset())


def brute_well_covered(d) -> bool:
    maximal = [
        s
        for s in brute_stable_sets(d)
        if all(
            any(frozenset((s_v, v)) in und_edges(d) for s_v in s)
            for v in d.vertices - s
        )
    ]
    return len({len(s) for s in maximal}) <= 1


def brute_has_property_p(d, e) -> bool:
    u, v = tuple(e)
    edges = und_edges(d)
    ends = {u, v}
    for a in {x for x in d.vertices if frozenset((x, u)) in edges} - ends:
        for ap in {x for x in d.vertices if frozenset((x, v)) in edges} - ends:
            if a == ap or frozenset((a, ap)) not in edges:
                return False
    return True


# -- hypothesis strategy --------------------------------------------------------


@st.composite
def wographs(draw, min_n=1, max_n=6, max_weight=3, normalize=False):
    n = draw(st.integers(min_n, max_n))
    names = [f"v{i}" for i in range(n)]
    arcs = []
    for u, v in itertools.combinations(names, 2):
        kind = draw(st.integers(0, 3))
        if kind == 1:
            arcs.append((u, v))
        elif kind == 2:
            arcs.append((v, u))
    weights = {v: draw(st.integers(1, max_weight)) for v in names}
    return WeightedOrientedGraph(names, arcs, weights, normalize=normalize)


# -- tiny named fixtures ---------------------------------------------------------


@pytest.fixture
def c5():
    return wog(cycle_arcs(["a", "b", "c", "d", "e"]))


@pytest.fixture
def k13_star():
    return wog([("c", "l1"), ("c", "l2"), ("c", "l3")])


def all_orientations(edges: Iterable[tuple[str, str]]):
    """Every orientation of an (undirected) edge list."""
    edges = list(edges)
    for flips in itertools.product((False, True), repeat=len(edges)):
        yield [(v, u) if f else (u, v) for (u, v), f in zip(edges, flips)]
