"""Family-specific unmixedness deciders and the cross-checking dispatcher.

Each decider implements one structural criterion: it first tests whether the
graph belongs to its family (applicability), then decides unmixedness inside
that family and attaches a certificate — a matching, a decomposition, a
clique reduction, a special-graph match, or the witness that breaks a
clause. `dispatch` runs every decider, optionally the exhaustive oracle, and
raises ConsistencyError if any two non-unknown verdicts disagree.

Deciders assume normalized input (sources carry weight 1, the construction
default); on unnormalized graphs the structural criteria and the oracle can
legitimately part ways.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterator, Optional, Sequence

from .covers import Verdict, is_konig, is_well_covered, oracle_unmixed
from .errors import CapacityError, ConsistencyError
from .families import (
    PERFECT_MAX_VERTICES,
    basic_five_cycles,
    edge_has_property_P,
    identify_special,
    is_chordal,
    is_perfect,
    is_simplicial_graph,
    scq_decompose,
    simplexes,
    star_property,
    tau_clique_reduction,
)
from .graph import Edge, UnderlyingGraph, WeightedOrientedGraph
from .semiforest import exists_generating_semiforest

UNMIXED = "unmixed"
MIXED = "mixed"
NOT_APPLICABLE = "not-applicable"
UNKNOWN = "unknown"

FAMILIES = (
    "perfect",
    "konig",
    "scq",
    "simplicial-or-chordal",
    "no-3-5-cycles",
    "no-4-5-cycles",
    "girth-ge-6",
    "girth-ge-5",
    "sinks-sufficient",
)


@dataclass(frozen=True)
class FamilyReport:
    """Verdict of one decider: the family tag, whether the graph lies in the
    family, unmixed/mixed/not-applicable/unknown, and a family-specific
    certificate (dict of witnesses and failing clauses)."""

    family: str
    applicable: bool
    verdict: str
    certificate: Optional[dict] = field(default=None)


def _na(family: str, note: Optional[str] = None) -> FamilyReport:
    cert = {"note": note} if note else None
    return FamilyReport(family, False, NOT_APPLICABLE, cert)


def _vs(s) -> tuple[str, ...]:
    return tuple(sorted(s))


# -- shared clause helpers -----------------------------------------------------


def _non_sink_weighted(d: WeightedOrientedGraph, within) -> tuple[str, ...]:
    vplus = d.v_plus()
    return _vs(v for v in within if v in vplus and d.out_nbrs(v))


def _partition_failure(universe, blocks) -> Optional[str]:
    """None if the blocks partition the universe, else why not."""
    count = {v: 0 for v in universe}
    for b in blocks:
        for v in b:
            count[v] += 1
    missing = _vs(v for v, c in count.items() if c == 0)
    doubled = _vs(v for v, c in count.items() if c > 1)
    if missing:
        return f"vertices in no block: {list(missing)}"
    if doubled:
        return f"vertices in more than one block: {list(doubled)}"
    return None


def _simplex_with_forest(d: WeightedOrientedGraph, simps):
    """First simplex admitting a generating star-semi-forest, with the
    witness, or None."""
    for k in simps:
        h = exists_generating_semiforest(d, k)
        if h is not None:
            return k, h
    return None


def _matching_condition_failure(
    d: WeightedOrientedGraph, pairs: Sequence[Edge]
) -> Optional[dict]:
    """The condition N(b) <= N+(a) whenever a is weighted, {b,b'} is a listed
    pair and b' is an out-neighbor of a. Returns the first failing triple."""
    g = d.underlying
    for a in _vs(d.v_plus()):
        outs = d.out_nbrs(a)
        for u, v in pairs:
            for b, bp in ((u, v), (v, u)):
                if bp in outs and not g.nbrs(b) <= outs:
                    return {"a": a, "b": b, "b_prime": bp, "edge": (u, v)}
    return None


def _perfect_matchings(
    vertices: frozenset[str], edges: Sequence[Edge]
) -> Iterator[tuple[Edge, ...]]:
    """All perfect matchings of the vertex set using only the given edges,
    in lexicographic order."""
    at: dict[str, list[Edge]] = {v: [] for v in vertices}
    for e in sorted(edges):
        at[e[0]].append(e)
        at[e[1]].append(e)
    acc: list[Edge] = []

    def rec(uncovered: frozenset[str]) -> Iterator[tuple[Edge, ...]]:
        if not uncovered:
            yield tuple(acc)
            return
        v = min(uncovered)
        for e in at[v]:
            other = e[1] if e[0] == v else e[0]
            if other == v or other not in uncovered:
                continue
            acc.append(e)
            yield from rec(uncovered - {v, other})
            acc.pop()

    yield from rec(vertices)


def _components(d: WeightedOrientedGraph) -> tuple[frozenset[str], ...]:
    return d.underlying.connected_components()


# -- sufficient condition: weighted vertices are sinks --------------------------


def decide_sinks_sufficient(d: WeightedOrientedGraph) -> FamilyReport:
    """Well-covered graph whose weighted vertices are all sinks: unmixed.
    A sufficient condition only; anything else is unknown."""
    non_sinks = _non_sink_weighted(d, d.vertices)
    if non_sinks:
        cert = {"non_sink_weighted": sorted(non_sinks)}
        return FamilyReport("sinks-sufficient", True, UNKNOWN, cert)
    try:
        covered = is_well_covered(d)
    except CapacityError as exc:
        cert = {"note": f"well-coveredness not checked: {exc}"}
        return FamilyReport("sinks-sufficient", True, UNKNOWN, cert)
    if covered:
        cert = {"weighted_sinks": _vs(d.v_plus())}
        return FamilyReport("sinks-sufficient", True, UNMIXED, cert)
    cert = {"well_covered": False, "non_sink_weighted": []}
    return FamilyReport("sinks-sufficient", True, UNKNOWN, cert)


# -- Koenig graphs ---------------------------------------------------------------


def decide_konig(d: WeightedOrientedGraph) -> FamilyReport:
    """Cover number equals matching number, no isolated vertices. Unmixed
    iff some perfect matching has property (P) for every edge and satisfies
    the out-neighborhood condition."""
    g = d.underlying
    if any(g.degree(v) == 0 for v in g.vertices):
        return _na("konig", "isolated vertices")
    try:
        konig = is_konig(g)
    except CapacityError as exc:
        return _na("konig", f"membership not checked: {exc}")
    if not konig:
        return _na("konig")
    p_edges = [e for e in g.sorted_edges if edge_has_property_P(g, e)]
    candidates = 0
    for p in _perfect_matchings(g.vertices, p_edges):
        candidates += 1
        failure = _matching_condition_failure(d, p)
        if failure is None:
            return FamilyReport("konig", True, UNMIXED, {"matching": p})
    cert = {
        "property_p_perfect_matchings": candidates,
        "reason": (
            "no perfect matching with property (P)"
            if candidates == 0
            else "every property-(P) perfect matching breaks the out-neighborhood condition"
        ),
    }
    return FamilyReport("konig", True, MIXED, cert)


# -- SCQ graphs -------------------------------------------------------------------


def decide_scq(d: WeightedOrientedGraph) -> FamilyReport:
    """Vertices partition into simplexes, basic 5-cycles and a property-(P)
    matching. Unmixed iff every basic 5-cycle has the star-property, no
    simplex has a generating star-semi-forest, and the matching satisfies
    the out-neighborhood condition."""
    g = d.underlying
    try:
        dec = scq_decompose(g)
    except CapacityError as exc:
        return _na("scq", f"membership not checked: {exc}")
    if dec is None:
        return _na("scq")
    base = {"decomposition": dec}
    for cyc in basic_five_cycles(g):
        check = star_property(d, cyc)
        if not check:
            cert = dict(base, failed="star-property", cycle=cyc, check=check)
            return FamilyReport("scq", True, MIXED, cert)
    # an oversized simplex only blocks the semi-forest clause; the cheap
    # matching clause can still convict, so defer the capacity verdict
    skipped = None
    try:
        hit = _simplex_with_forest(d, simplexes(g))
    except CapacityError as exc:
        hit, skipped = None, exc
    if hit is not None:
        k, h = hit
        cert = dict(base, failed="simplex-semiforest", simplex=_vs(k), witness=h)
        return FamilyReport("scq", True, MIXED, cert)
    failure = _matching_condition_failure(d, dec.q_matching)
    if failure is not None:
        cert = dict(base, failed="matching-condition", **failure)
        return FamilyReport("scq", True, MIXED, cert)
    if skipped is not None:
        cert = dict(base, note=f"semi-forest search skipped: {skipped}")
        return FamilyReport("scq", True, UNKNOWN, cert)
    return FamilyReport("scq", True, UNMIXED, base)


# -- simplicial or chordal graphs ---------------------------------------------------


def decide_simplicial_or_chordal(d: WeightedOrientedGraph) -> FamilyReport:
    """Unmixed iff the simplexes partition the vertices and none of them
    admits a generating star-semi-forest."""
    g = d.underlying
    if not (is_simplicial_graph(g) or is_chordal(g)):
        return _na("simplicial-or-chordal")
    simps = simplexes(g)
    base = {"simplexes": tuple(map(_vs, simps))}
    fail = _partition_failure(g.vertices, simps)
    if fail is not None:
        cert = dict(base, failed="simplex-partition", reason=fail)
        return FamilyReport("simplicial-or-chordal", True, MIXED, cert)
    try:
        hit = _simplex_with_forest(d, simps)
    except CapacityError as exc:
        cert = dict(base, note=f"semi-forest search skipped: {exc}")
        return FamilyReport("simplicial-or-chordal", True, UNKNOWN, cert)
    if hit is not None:
        k, h = hit
        cert = dict(base, failed="simplex-semiforest", simplex=_vs(k), witness=h)
        return FamilyReport("simplicial-or-chordal", True, MIXED, cert)
    return FamilyReport("simplicial-or-chordal", True, UNMIXED, base)


# -- perfect graphs ------------------------------------------------------------------


def decide_perfect(d: WeightedOrientedGraph) -> FamilyReport:
    """Unmixed iff no clique of a tau-reduction into cliques admits a
    generating star-semi-forest."""
    g = d.underlying
    if len(g.vertices) > PERFECT_MAX_VERTICES:
        return _na(
            "perfect",
            f"perfect-graph test needs at most {PERFECT_MAX_VERTICES} vertices",
        )
    if not is_perfect(g):
        return _na("perfect")
    try:
        reduction = tau_clique_reduction(g)
        base = {"reduction": reduction}
        hit = _simplex_with_forest(d, reduction.cliques)
    except CapacityError as exc:
        cert = {"note": f"clique reduction not evaluated: {exc}"}
        return FamilyReport("perfect", True, UNKNOWN, cert)
    if hit is not None:
        k, h = hit
        cert = dict(base, failed="clique-semiforest", clique=_vs(k), witness=h)
        return FamilyReport("perfect", True, MIXED, cert)
    return FamilyReport("perfect", True, UNMIXED, base)


# -- graphs with no 3- or 5-cycles ----------------------------------------------------


def decide_no_3_5_cycles(d: WeightedOrientedGraph) -> FamilyReport:
    """Unmixed iff the graph is well-covered and every arc out of a weighted
    vertex y reaches some x with a second neighbor y' whose whole
    neighborhood lies in N+(y)."""
    g = d.underlying
    if g.has_cycle_of_length(3) or g.has_cycle_of_length(5):
        return _na("no-3-5-cycles")
    vplus = d.v_plus()
    for y, x in sorted(d.arcs):
        if y not in vplus:
            continue
        outs = d.out_nbrs(y)
        if not any(g.nbrs(yp) <= outs for yp in g.nbrs(x) - {y}):
            cert = {"failed": "arc-condition", "arc": (y, x)}
            return FamilyReport("no-3-5-cycles", True, MIXED, cert)
    try:
        covered = is_well_covered(g)
    except CapacityError as exc:
        cert = {"note": f"well-coveredness not checked: {exc}"}
        return FamilyReport("no-3-5-cycles", True, UNKNOWN, cert)
    if not covered:
        cert = {"failed": "well-covered"}
        return FamilyReport("no-3-5-cycles", True, MIXED, cert)
    return FamilyReport("no-3-5-cycles", True, UNMIXED, None)


# -- graphs with no 4- or 5-cycles ----------------------------------------------------


def _no45_component(d: WeightedOrientedGraph, comp: frozenset[str]) -> tuple[bool, dict]:
    gc = d.underlying.induced(comp)
    detail: dict = {"component": _vs(comp)}
    match = identify_special(gc)
    if match is not None and match.name in ("C7", "T10"):
        non_sinks = _non_sink_weighted(d, comp)
        detail["special"] = match.name
        if not non_sinks:
            detail["clause"] = "special-with-sinks"
            return True, detail
        detail["non_sink_weighted"] = list(non_sinks)
    simps = simplexes(gc)
    fail = _partition_failure(comp, simps)
    if fail is not None:
        detail["partition_failure"] = fail
        return False, detail
    hit = _simplex_with_forest(d, simps)
    if hit is not None:
        k, h = hit
        detail["simplex"] = _vs(k)
        detail["witness"] = h
        return False, detail
    detail["clause"] = "simplex-partition"
    detail["simplexes"] = tuple(map(_vs, simps))
    return True, detail


def decide_no_4_5_cycles(d: WeightedOrientedGraph) -> FamilyReport:
    """Per connected component: unmixed iff the component is C7 or T10 with
    every weighted vertex a sink, or its simplexes partition it with no
    generating star-semi-forest."""
    g = d.underlying
    if g.has_cycle_of_length(4) or g.has_cycle_of_length(5):
        return _na("no-4-5-cycles")
    details = []
    verdict = UNMIXED
    for comp in _components(d):
        ok, detail = _no45_component(d, comp)
        details.append(detail)
        if not ok:
            verdict = MIXED
    return FamilyReport("no-4-5-cycles", True, verdict, {"components": details})


# -- girth at least 6 ------------------------------------------------------------------


def _pendant_matching(
    d: WeightedOrientedGraph, comp: frozenset[str]
) -> Optional[tuple[tuple[str, str], ...]]:
    """A perfect matching of the component into pairs (x, x') with
    deg(x') = 1 and, when x is weighted, the arc oriented x' -> x.
    Pairs come back labeled (x, x')."""
    g = d.underlying
    vplus = d.v_plus()
    edges = [
        e
        for e in g.sorted_edges
        if e[0] in comp and (g.degree(e[0]) == 1 or g.degree(e[1]) == 1)
    ]

    def label(e: Edge) -> Optional[tuple[str, str]]:
        for x, xp in ((e[0], e[1]), (e[1], e[0])):
            if g.degree(xp) == 1 and (x not in vplus or (xp, x) in d.arcs):
                return (x, xp)
        return None

    for p in _perfect_matchings(comp, edges):
        labeled = [label(e) for e in p]
        if all(pair is not None for pair in labeled):
            return tuple(labeled)  # type: ignore[arg-type]
    return None


def decide_girth_ge_6(d: WeightedOrientedGraph) -> FamilyReport:
    """Per connected component: unmixed iff the component is C7 with every
    weighted vertex a sink, or it has a perfect matching into pendant pairs
    (x, x') with deg(x') = 1, arcs pointing x' -> x at weighted x."""
    g = d.underlying
    if g.girth() < 6 or any(g.degree(v) == 0 for v in g.vertices):
        return _na("girth-ge-6")
    details = []
    verdict = UNMIXED
    for comp in _components(d):
        detail: dict = {"component": _vs(comp)}
        gc = g.induced(comp)
        match = identify_special(gc)
        if match is not None and match.name == "C7":
            detail["special"] = "C7"
            non_sinks = _non_sink_weighted(d, comp)
            if not non_sinks:
                detail["clause"] = "special-with-sinks"
                details.append(detail)
                continue
            detail["non_sink_weighted"] = list(non_sinks)
        matching = _pendant_matching(d, comp)
        if matching is None:
            verdict = MIXED
            detail["failed"] = "no pendant perfect matching with the required arcs"
        else:
            detail["clause"] = "pendant-matching"
            detail["matching"] = matching
        details.append(detail)
    return FamilyReport("girth-ge-6", True, verdict, {"components": details})


# -- girth at least 5 ------------------------------------------------------------------

_SINK_SPECIALS = ("K1", "C7", "Q13", "P13", "P14")
_P10_OUT = {"d1": frozenset({"g1", "b2"}), "d2": frozenset({"g2", "b1"})}


def _girth5_component(d: WeightedOrientedGraph, comp: frozenset[str]) -> tuple[bool, dict]:
    g = d.underlying
    gc = g.induced(comp)
    detail: dict = {"component": _vs(comp)}
    match = identify_special(gc)
    if match is not None:
        detail["special"] = match.name
        if match.name in _SINK_SPECIALS:
            non_sinks = _non_sink_weighted(d, comp)
            if not non_sinks:
                detail["clause"] = "special-with-sinks"
                return True, detail
            detail["non_sink_weighted"] = list(non_sinks)
        if match.name == "P10":
            bij = match.bijection
            bad = None
            for y in _non_sink_weighted(d, comp):
                image = bij[y]
                outs = frozenset(bij[u] for u in d.out_nbrs(y))
                if _P10_OUT.get(image) != outs:
                    bad = {"vertex": y, "image": image, "out_image": _vs(outs)}
                    break
            if bad is None:
                detail["clause"] = "p10-orientation"
                detail["bijection"] = dict(sorted(bij.items()))
                return True, detail
            detail["p10_failure"] = bad
    simps = simplexes(gc)
    cycles = basic_five_cycles(gc)
    blocks = list(simps) + [frozenset(c) for c in cycles]
    fail = _partition_failure(comp, blocks)
    if fail is not None:
        detail["partition_failure"] = fail
        return False, detail
    hit = _simplex_with_forest(d, simps)
    if hit is not None:
        k, h = hit
        detail["simplex"] = _vs(k)
        detail["witness"] = h
        return False, detail
    for cyc in cycles:
        check = star_property(d, cyc)
        if not check:
            detail["cycle"] = cyc
            detail["check"] = check
            return False, detail
    detail["clause"] = "simplex-cycle-partition"
    detail["simplexes"] = tuple(map(_vs, simps))
    detail["basic5cycles"] = cycles
    return True, detail


def decide_girth_ge_5(d: WeightedOrientedGraph) -> FamilyReport:
    """Per connected component: unmixed iff the component is one of the
    exceptional graphs with every weighted vertex a sink, or is P10 with
    the two allowed weighted orientations, or partitions into simplexes
    and basic 5-cycles passing the star-semi-forest and star-property
    checks."""
    g = d.underlying
    if g.girth() < 5:
        return _na("girth-ge-5")
    details = []
    verdict = UNMIXED
    for comp in _components(d):
        ok, detail = _girth5_component(d, comp)
        details.append(detail)
        if not ok:
            verdict = MIXED
    return FamilyReport("girth-ge-5", True, verdict, {"components": details})


# -- dispatch ----------------------------------------------------------------------------

DECIDERS: dict[str, Callable[[WeightedOrientedGraph], FamilyReport]] = {
    "perfect": decide_perfect,
    "konig": decide_konig,
    "scq": decide_scq,
    "simplicial-or-chordal": decide_simplicial_or_chordal,
    "no-3-5-cycles": decide_no_3_5_cycles,
    "no-4-5-cycles": decide_no_4_5_cycles,
    "girth-ge-6": decide_girth_ge_6,
    "girth-ge-5": decide_girth_ge_5,
    "sinks-sufficient": decide_sinks_sufficient,
}


@dataclass(frozen=True)
class DispatchResult:
    """All family reports, the oracle verdict when the graph fits inside the
    enumeration bound, and the consensus (unknown when nothing applied)."""

    reports: tuple[FamilyReport, ...]
    oracle: Optional[Verdict]
    consensus: str


def dispatch(
    d: WeightedOrientedGraph, *, oracle_bound: Optional[int] = None
) -> DispatchResult:
    """Run every decider and, within the vertex bound, the oracle; verify
    that all definite verdicts agree and return them with the consensus."""
    reports = tuple(DECIDERS[name](d) for name in FAMILIES)
    try:
        oracle = oracle_unmixed(d, oracle_bound)
    except CapacityError:
        oracle = None
    verdicts: dict[str, str] = {
        r.family: r.verdict for r in reports if r.verdict in (UNMIXED, MIXED)
    }
    if oracle is not None:
        verdicts["oracle"] = oracle.status
    distinct = set(verdicts.values())
    if len(distinct) > 1:
        raise ConsistencyError(
            "deciders disagree about unmixedness",
            details={"verdicts": verdicts, "reports": reports, "oracle": oracle},
        )
    consensus = distinct.pop() if distinct else UNKNOWN
    return DispatchResult(reports, oracle, consensus)
