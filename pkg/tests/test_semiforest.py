from __future__ import annotations

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from wograph import (
    EMPTY_SEMIFOREST,
    CapacityError,
    PreconditionError,
    RootOrientedTree,
    StarSemiForest,
    StructureError,
    UnicycleSubgraph,
    UnknownVertexError,
    analyze_cover,
    exists_generating_semiforest,
    fixture_graph,
    h_tilde,
    semiforest_from_strong_cover,
    strong_cover_superset_exists,
    strong_vertex_covers,
    validate_rot,
    validate_semiforest,
    validate_unicycle,
)

from conftest import wog, wographs


def _rot(parent, *arcs):
    return RootOrientedTree(parent=parent, arcs=tuple(arcs))


class TestShapes:
    def test_empty_semiforest(self):
        assert EMPTY_SEMIFOREST.vertices() == frozenset()
        assert EMPTY_SEMIFOREST.arcs() == ()
        assert EMPTY_SEMIFOREST.witnesses == frozenset()
        d = wog([("a", "b")])
        assert validate_semiforest(d, EMPTY_SEMIFOREST) is None

    def test_accessors(self):
        d = wog(
            [("a", "b"), ("a", "c"), ("d", "a"), ("x", "y"), ("d", "x")],
            {"a": 2, "x": 2},
        )
        h = StarSemiForest(
            rots=(_rot("a", ("a", "b"), ("a", "c")), _rot("x", ("x", "y"))),
            w_assign=(("a", "d"), ("x", "d")),
            w1=frozenset({"d"}),
        )
        assert h.vertices() == frozenset("abcxy")
        assert h.arcs() == (("a", "b"), ("a", "c"), ("x", "y"))
        assert h.witness_map() == {"a": "d", "x": "d"}
        # two parents sharing one witness is legal
        assert h.witnesses == frozenset({"d"})
        assert validate_semiforest(d, h) is None


class TestRotValidation:
    def test_valid_star(self):
        d = wog([("a", "b"), ("a", "c")], {"a": 2})
        assert validate_rot(d, _rot("a", ("a", "b"), ("a", "c"))) is None

    def test_singleton_weight_one_parent_is_legal(self):
        d = wog([("a", "b")])
        assert validate_rot(d, _rot("b")) is None

    def test_unreachable_vertex(self):
        # both arcs exist in the host but point at the parent
        d = wog([("b", "a"), ("c", "a")], {"a": 2, "b": 2, "c": 2})
        v = validate_rot(d, _rot("a", ("b", "a"), ("c", "a")))
        assert v is not None and v.clause == "path-from-parent"

    def test_cycle_rejected(self):
        d = wog([("a", "b"), ("b", "c"), ("c", "a")], {"a": 2, "b": 2, "c": 2})
        v = validate_rot(d, _rot("a", ("a", "b"), ("b", "c"), ("c", "a")))
        assert v is not None and v.clause == "no-cycles"

    def test_weight_one_parent_of_real_tree(self):
        d = wog([("a", "b")])
        v = validate_rot(d, _rot("a", ("a", "b")))
        assert v is not None and v.clause == "weight-one-degree"
        assert v.vertex == "a"

    def test_weight_one_interior(self):
        d = wog([("a", "b"), ("b", "c")], {"a": 2, "c": 2})
        v = validate_rot(d, _rot("a", ("a", "b"), ("b", "c")))
        assert v is not None and v.clause == "weight-one-degree"
        assert v.vertex == "b"

    def test_arc_outside_host(self):
        d = wog([("a", "b")], {"a": 2})
        with pytest.raises(StructureError):
            validate_rot(d, _rot("a", ("a", "z")))

    def test_unknown_parent(self):
        d = wog([("a", "b")])
        with pytest.raises(UnknownVertexError):
            validate_rot(d, _rot("z"))


class TestUnicycleValidation:
    def test_valid_triangle(self):
        d = wog([("a", "b"), ("b", "c"), ("c", "a")], {"a": 2, "b": 2, "c": 2})
        b = UnicycleSubgraph(
            cycle=("a", "b", "c"),
            arcs=(("a", "b"), ("b", "c"), ("c", "a")),
        )
        assert validate_unicycle(d, b) is None

    def test_pendant_leaf(self):
        arcs = [("a", "b"), ("b", "c"), ("c", "a"), ("c", "z")]
        d = wog(arcs, {"a": 2, "b": 2, "c": 2})
        b = UnicycleSubgraph(cycle=("a", "b", "c"), arcs=tuple(arcs))
        assert validate_unicycle(d, b) is None

    def test_cycle_shape(self):
        d = wog([("a", "b")], {"a": 2, "b": 2})
        v = validate_unicycle(d, UnicycleSubgraph(cycle=("a", "b"), arcs=(("a", "b"),)))
        assert v is not None and v.clause == "cycle-shape"

    def test_cycle_arc_missing(self):
        d = wog([("a", "b"), ("b", "c"), ("c", "a")], {"a": 2, "b": 2, "c": 2})
        b = UnicycleSubgraph(cycle=("a", "b", "c"), arcs=(("a", "b"), ("b", "c")))
        v = validate_unicycle(d, b)
        assert v is not None and v.clause == "cycle-oriented"

    def test_vertex_not_fed_by_cycle(self):
        arcs = [("a", "b"), ("b", "c"), ("c", "a"), ("z", "a")]
        d = wog(arcs, {"a": 2, "b": 2, "c": 2, "z": 2})
        v = validate_unicycle(d, UnicycleSubgraph(cycle=("a", "b", "c"), arcs=tuple(arcs)))
        assert v is not None and v.clause == "path-from-cycle"
        assert v.vertex == "z"

    def test_second_cycle_rejected(self):
        arcs = [("a", "b"), ("b", "c"), ("c", "a"), ("b", "d"), ("d", "a")]
        d = wog(arcs, dict.fromkeys("abcd", 2))
        v = validate_unicycle(d, UnicycleSubgraph(cycle=("a", "b", "c"), arcs=tuple(arcs)))
        assert v is not None and v.clause == "one-cycle"

    def test_weight_one_on_cycle(self):
        d = wog([("a", "b"), ("b", "c"), ("c", "a")], {"a": 2, "b": 2})
        b = UnicycleSubgraph(
            cycle=("a", "b", "c"),
            arcs=(("a", "b"), ("b", "c"), ("c", "a")),
        )
        v = validate_unicycle(d, b)
        assert v is not None and v.clause == "weight-one-degree"
        assert v.vertex == "c"


class TestSemiforestValidation:
    def test_overlapping_components(self):
        d = wog([("b", "a")], {"a": 2})
        h = StarSemiForest(
            rots=(_rot("a"), _rot("a")),
            w_assign=(("a", "b"),),
            w1=frozenset({"b"}),
        )
        v = validate_semiforest(d, h)
        assert v is not None and v.clause == "partition"

    def test_parent_without_witness(self):
        d = wog([("b", "a")], {"a": 2})
        h = StarSemiForest(rots=(_rot("a"),))
        v = validate_semiforest(d, h)
        assert v is not None and v.clause == "witness-assignment"

    def test_witness_inside_forest(self):
        d = wog([("a", "b")], {"a": 2})
        h = StarSemiForest(
            rots=(_rot("a", ("a", "b")),),
            w_assign=(("a", "b"),),
            w1=frozenset({"b"}),
        )
        v = validate_semiforest(d, h)
        assert v is not None and v.clause == "witness-inside"

    def test_witness_not_adjacent(self):
        d = wog([("a", "b")], {"a": 2}, extra=("c",))
        h = StarSemiForest(
            rots=(_rot("a", ("a", "b")),),
            w_assign=(("a", "c"),),
            w1=frozenset({"c"}),
        )
        v = validate_semiforest(d, h)
        assert v is not None and v.clause == "witness-adjacent"

    def test_w1_w2_must_partition_witnesses(self):
        d = wog([("a", "b"), ("c", "a")], {"a": 2, "c": 2})
        rot = _rot("a", ("a", "b"))
        pairs = (("a", "c"),)
        for w1, w2 in [(frozenset(), frozenset()), (frozenset("c"), frozenset("c"))]:
            h = StarSemiForest(rots=(rot,), w_assign=pairs, w1=w1, w2=w2)
            v = validate_semiforest(d, h)
            assert v is not None and v.clause == "w1-w2-partition"

    def test_w1_not_stable(self):
        arcs = [("a", "b"), ("d", "e"), ("c", "a"), ("f", "d"), ("c", "f")]
        d = wog(arcs, {"a": 2, "d": 2})
        h = StarSemiForest(
            rots=(_rot("a", ("a", "b")), _rot("d", ("d", "e"))),
            w_assign=(("a", "c"), ("d", "f")),
            w1=frozenset({"c", "f"}),
        )
        v = validate_semiforest(d, h)
        assert v is not None and v.clause == "w1-stable"

    def test_w2_needs_weight(self):
        d = wog([("a", "b"), ("c", "a")], {"a": 2})
        h = StarSemiForest(
            rots=(_rot("a", ("a", "b")),),
            w_assign=(("a", "c"),),
            w2=frozenset({"c"}),
        )
        v = validate_semiforest(d, h)
        assert v is not None and v.clause == "w2-weight"

    def test_w2_needs_arc_into_parent(self):
        d = wog([("a", "b"), ("a", "c")], {"a": 2, "c": 2})
        h = StarSemiForest(
            rots=(_rot("a", ("a", "b")),),
            w_assign=(("a", "c"),),
            w2=frozenset({"c"}),
        )
        v = validate_semiforest(d, h)
        assert v is not None and v.clause == "w2-arc"

    def test_w1_dominated_by_interior(self):
        d = wog([("a", "b"), ("a", "c")], {"a": 2})
        h = StarSemiForest(
            rots=(_rot("a", ("a", "b")),),
            w_assign=(("a", "c"),),
            w1=frozenset({"c"}),
        )
        v = validate_semiforest(d, h)
        assert v is not None and v.clause == "w1-avoids-outneighbors"
        assert v.vertex == "c"


class TestHTilde:
    def test_bare_cycle_is_all_interior(self):
        d = wog([("a", "b"), ("b", "c"), ("c", "a")], dict.fromkeys("abc", 2))
        h = StarSemiForest(
            unicycles=(
                UnicycleSubgraph(
                    cycle=("a", "b", "c"),
                    arcs=(("a", "b"), ("b", "c"), ("c", "a")),
                ),
            )
        )
        assert h_tilde(d, h) == frozenset("abc")

    def test_singleton_parent_is_not_interior(self):
        d = wog([("b", "a")], {"a": 2})
        h = StarSemiForest(rots=(_rot("a"),), w_assign=(("a", "b"),), w1=frozenset("b"))
        assert h_tilde(d, h) == frozenset()

    def test_degree_one_parent_is_interior(self):
        d = wog([("a", "b"), ("b", "c")], {"a": 2, "b": 2})
        h = StarSemiForest(rots=(_rot("a", ("a", "b"), ("b", "c")),))
        assert h_tilde(d, h) == frozenset({"a", "b"})


class TestFixtureWitnesses:
    def test_d2_triangle_unicycle(self):
        d2 = fixture_graph("d2")
        h = StarSemiForest(
            unicycles=(
                UnicycleSubgraph(
                    cycle=("x1", "x3", "x2"),
                    arcs=(("x1", "x3"), ("x3", "x2"), ("x2", "x1")),
                ),
            )
        )
        assert validate_semiforest(d2, h) is None
        assert h.vertices() == frozenset({"x1", "x2", "x3"})
        assert h_tilde(d2, h) == frozenset({"x1", "x2", "x3"})
        found = exists_generating_semiforest(d2, {"x1", "x2", "x3"})
        assert found is not None
        assert found.vertices() == frozenset({"x1", "x2", "x3"})

    def test_d3_single_rot(self):
        d3 = fixture_graph("d3")
        h = StarSemiForest(
            rots=(_rot("d2", ("d2", "d2p")),),
            w_assign=(("d2", "a"),),
            w2=frozenset({"a"}),
        )
        assert validate_semiforest(d3, h) is None
        found = exists_generating_semiforest(d3, {"d2", "d2p"})
        assert found is not None and found.vertices() == frozenset({"d2", "d2p"})

    def test_d3_other_simplex_has_no_forest(self):
        d3 = fixture_graph("d3")
        assert exists_generating_semiforest(d3, {"d1", "d1p"}) is None
        assert strong_cover_superset_exists(d3, {"d1", "d1p"}) is None

    def test_d1_spanning_semiforest(self):
        d1 = fixture_graph("d1")
        rots = (
            _rot("v1"),
            _rot(
                "v2",
                ("v2", "u14"), ("v2", "u17"), ("u17", "u12"),
                ("u17", "u18"), ("u18", "u21"), ("u18", "u15"),
            ),
            _rot(
                "v3",
                ("v3", "u24"), ("u24", "u25"), ("u24", "u27"),
                ("u25", "u20"), ("u25", "u26"), ("u26", "u23"),
            ),
            _rot("v4", ("v4", "u30"), ("v4", "u33"), ("u33", "u28")),
            _rot("v5", ("v5", "u34"), ("u34", "u36")),
        )
        uni = UnicycleSubgraph(
            cycle=("u03", "u06", "u08", "u09", "u04"),
            arcs=(
                ("u03", "u06"), ("u06", "u08"), ("u08", "u09"),
                ("u09", "u04"), ("u04", "u03"), ("u08", "u11"),
                ("u09", "u10"), ("u10", "u13"), ("u10", "u07"),
                ("u07", "u05"),
            ),
        )
        h = StarSemiForest(
            rots=rots,
            unicycles=(uni,),
            w_assign=(
                ("v1", "w1"), ("v2", "w2"), ("v3", "w2"),
                ("v4", "w4"), ("v5", "w5"),
            ),
            w1=frozenset({"w1", "w5"}),
            w2=frozenset({"w2", "w4"}),
        )
        assert validate_semiforest(d1, h) is None
        k = d1.vertices - {"w1", "w2", "w4", "w5"}
        assert h.vertices() == k
        assert len(h_tilde(d1, h)) == 18


class TestSearch:
    def test_empty_k(self):
        d = wog([("a", "b")])
        assert exists_generating_semiforest(d, ()) is EMPTY_SEMIFOREST
        assert strong_cover_superset_exists(d, ()) is not None

    def test_unknown_vertex(self):
        d = wog([("a", "b")])
        with pytest.raises(UnknownVertexError):
            exists_generating_semiforest(d, {"z"})
        with pytest.raises(UnknownVertexError):
            strong_cover_superset_exists(d, {"z"})

    def test_capacity(self):
        arcs = [(f"v{i}", f"v{i + 1}") for i in range(13)]
        d = wog(arcs, dict.fromkeys((f"v{i}" for i in range(14)), 2), normalize=False)
        k = {f"v{i}" for i in range(13)}
        with pytest.raises(CapacityError):
            exists_generating_semiforest(d, k)
        with pytest.raises(CapacityError):
            exists_generating_semiforest(d, {"v0", "v1", "v2"}, max_k=2)
        path = wog([(f"p{i:02d}", f"p{i + 1:02d}") for i in range(21)])
        with pytest.raises(CapacityError):
            strong_cover_superset_exists(path, {"p00"})
        assert strong_cover_superset_exists(path, {"p00"}, 25) is not None

    def test_isolated_weighted_vertex_has_no_forest(self):
        # a witness must live outside the forest, so K = {isolated} fails
        d = wog([], {"a": 2}, extra=("a",), normalize=False)
        assert exists_generating_semiforest(d, {"a"}) is None
        assert strong_cover_superset_exists(d, {"a"}) is None

    def test_superset_search_returns_smallest_strong_cover(self):
        d2 = fixture_graph("d2")
        k = {"x1", "x2", "x3"}
        cover = strong_cover_superset_exists(d2, k)
        assert cover is not None and k <= cover
        best = min(
            (c for c in strong_vertex_covers(d2) if k <= c),
            key=lambda c: (len(c), tuple(sorted(c))),
        )
        assert cover == best


def _assert_witness_contract(d, k, h):
    """Clauses every accepted witness must satisfy."""
    assert validate_semiforest(d, h) is None
    assert h.vertices() == frozenset(k)
    interior = h_tilde(d, h)
    assert interior <= d.v_plus()
    reach = d.nbrs_of_set(h.w1) | d.out_nbrs_of_set(h.w2 | interior)
    assert h.vertices() <= reach


class TestEquivalence:
    def test_fixture_spot_checks(self):
        d3 = fixture_graph("d3")
        for k in [{"d2", "d2p"}, {"d1", "d1p"}, {"a"}, {"b", "bp"}]:
            forest = exists_generating_semiforest(d3, k)
            cover = strong_cover_superset_exists(d3, k)
            assert (forest is None) == (cover is None)
            if forest is not None:
                _assert_witness_contract(d3, k, forest)

    @settings(max_examples=150, deadline=None)
    @given(data=st.data(), d=wographs(max_n=6, max_weight=2))
    def test_matches_strong_cover_search(self, data, d):
        verts = sorted(d.vertices)
        k = data.draw(st.sets(st.sampled_from(verts), max_size=len(verts)))
        forest = exists_generating_semiforest(d, k)
        cover = strong_cover_superset_exists(d, k)
        assert (forest is None) == (cover is None)
        if forest is not None:
            _assert_witness_contract(d, k, forest)
        if cover is not None:
            assert k <= cover
            assert analyze_cover(d, cover).strong


class TestFromStrongCover:
    def test_paper_cover_for_d2(self):
        d2 = fixture_graph("d2")
        cover = frozenset({"x1", "x2", "x3", "y1", "y2", "y3"})
        k = {"x1", "x2", "x3"}
        h = semiforest_from_strong_cover(d2, k, cover)
        _assert_witness_contract(d2, k, h)

    def test_rejects_weak_cover(self):
        d = wog([("a", "b"), ("b", "c")], {"b": 2})
        # {a, c} is a cover but its L3 is served by nobody
        with pytest.raises(PreconditionError):
            semiforest_from_strong_cover(d, {"a"}, {"a", "b", "c"})

    def test_rejects_k_outside_cover(self):
        d2 = fixture_graph("d2")
        cover = frozenset({"x1", "x2", "x3", "y1", "y2", "y3"})
        with pytest.raises(PreconditionError):
            semiforest_from_strong_cover(d2, {"z1"}, cover)

    @settings(max_examples=80, deadline=None)
    @given(data=st.data(), d=wographs(max_n=6, max_weight=2))
    def test_every_strong_cover_yields_witness(self, data, d):
        covers = list(strong_vertex_covers(d))
        if not covers:
            return
        cover = data.draw(st.sampled_from(covers))
        pool = sorted(cover)
        k = data.draw(st.sets(st.sampled_from(pool), max_size=min(len(pool), 6))) if pool else set()
        h = semiforest_from_strong_cover(d, k, cover)
        _assert_witness_contract(d, k, h)
