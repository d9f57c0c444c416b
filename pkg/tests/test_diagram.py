"""Diagram parsing, braids, resolutions, cube structure."""

import json

import pytest

from khoco import builders
from khoco.diagram import (Crossing, LinkDiagram, connect_sum, disjoint_union,
                           from_braid, mirror, parse_diagram, to_json)
from khoco.errors import (BadBraidWord, MalformedDiagram, OrientationError,
                          UnknownArc)

HOPF_DOC = json.dumps({
    "name": "hopf",
    "crossings": [
        {"under_in": 0, "over_in": 1, "under_out": 3, "over_out": 2, "sign": 1},
        {"under_in": 2, "over_in": 3, "under_out": 1, "over_out": 0, "sign": 1},
    ],
    "free_loops": [],
    "basepoint": None,
    "ray_counts": None,
})


def test_parse_unknot_document():
    doc = json.dumps({"name": "unknot", "crossings": [],
                      "free_loops": [{"ray_count": 0}],
                      "basepoint": None, "ray_counts": None})
    d = parse_diagram(doc)
    assert d.n_crossings == 0
    assert len(d.components()) == 1


def test_parse_hopf_document():
    d = parse_diagram(HOPF_DOC)
    assert d.n_plus == 2 and d.n_minus == 0
    assert len(d.components()) == 2


def test_parse_triple_arc_rejected():
    doc = json.dumps({"crossings": [
        {"under_in": 7, "over_in": 7, "under_out": 7, "over_out": 1, "sign": 1},
    ]})
    with pytest.raises((MalformedDiagram, OrientationError)):
        parse_diagram(doc)


def test_orientation_error_on_double_sink():
    # arc 0 enters two crossings and never leaves one
    with pytest.raises(OrientationError):
        LinkDiagram(crossings=(
            Crossing(under_in=0, over_in=1, under_out=2, over_out=3, sign=1),
            Crossing(under_in=0, over_in=2, under_out=1, over_out=3, sign=1),
        ))


def test_bad_sign_rejected():
    with pytest.raises(OrientationError):
        LinkDiagram(crossings=(
            Crossing(under_in=0, over_in=1, under_out=1, over_out=0, sign=2),))


def test_json_round_trip():
    d = parse_diagram(HOPF_DOC)
    assert parse_diagram(to_json(d)).crossings == d.crossings


def test_braid_hopf():
    d = from_braid("s1 s1", 2)
    assert d.n_plus == 2 and d.n_minus == 0
    assert len(d.components()) == 2


def test_braid_identity_unlink():
    d = from_braid("", 3)
    assert d.n_crossings == 0
    assert len(d.components()) == 3


def test_braid_mixed_signs():
    d = from_braid("s1 s2^-1 s1^-1 s2", 3)
    assert d.n_crossings == 4
    assert d.n_plus == 2 and d.n_minus == 2


def test_braid_bad_generator():
    with pytest.raises(BadBraidWord):
        from_braid("s2", 2)
    with pytest.raises(BadBraidWord):
        from_braid("x1", 3)


def test_mirror_involution():
    d = from_braid("s1 s2^-1 s1^-1 s2", 3)
    m = mirror(d)
    assert all(c.sign == -c2.sign for c, c2 in zip(m.crossings, d.crossings))
    assert mirror(m).crossings == d.crossings
    u = builders.unknot()
    assert mirror(u).crossings == u.crossings


def test_resolve_hopf_circle_counts():
    d = from_braid("s1 s1", 2)
    assert d.resolve((0, 0)).n_circles == 2
    assert d.resolve((1, 0)).n_circles == 1
    assert d.resolve((0, 1)).n_circles == 1
    assert d.resolve((1, 1)).n_circles == 2


def test_cube_edges_hopf():
    d = from_braid("s1 s1", 2)
    edges = d.cube_edges()
    assert len(edges) == 4
    kinds = {(e.from_vertex, e.to_vertex): e.kind for e in edges}
    assert kinds[((0, 0), (1, 0))] == "merge"
    assert kinds[((0, 0), (0, 1))] == "merge"
    assert kinds[((1, 0), (1, 1))] == "split"
    assert kinds[((0, 1), (1, 1))] == "split"


def test_cube_edge_count_and_outgoing():
    d = from_braid("s1 s1 s1", 2)
    edges = d.cube_edges()
    n = d.n_crossings
    assert len(edges) == n * 2 ** (n - 1)
    outgoing = {}
    for e in edges:
        outgoing[e.from_vertex] = outgoing.get(e.from_vertex, 0) + 1
    for u, cnt in outgoing.items():
        assert cnt == sum(1 for b in u if b == 0)


def test_merge_split_dichotomy():
    d = from_braid("s1 s2^-1 s1^-1 s2", 3)
    for e in d.cube_edges():
        du = d.resolve(e.from_vertex).n_circles
        dv = d.resolve(e.to_vertex).n_circles
        assert abs(du - dv) == 1
        assert e.kind == ("merge" if dv < du else "split")


def test_mirror_resolves_at_complement():
    d = from_braid("s1 s2^-1 s1^-1 s2", 3)
    m = mirror(d)
    n = d.n_crossings
    for u_int in range(1 << n):
        u = tuple((u_int >> i) & 1 for i in range(n))
        comp = tuple(1 - b for b in u)
        assert m.resolve(u).circles == d.resolve(comp).circles


def test_disjoint_union_counts():
    d = disjoint_union(builders.unknot(), builders.unknot())
    assert len(d.components()) == 2
    assert d.n_crossings == 0


def test_connect_sum_unknots():
    a = builders.unknot(pointed=True)
    b = builders.unknot(pointed=True)
    c = connect_sum(a, 0, b, 0)
    assert len(c.components()) == 1
    assert c.n_crossings == 0
    assert c.basepoint is not None


def test_connect_sum_hopfs():
    a, b = builders.hopf(), builders.hopf()
    c = connect_sum(a, 0, b, 0)
    assert c.n_crossings == 4
    assert len(c.components()) == 3


def test_connect_sum_unknown_arc():
    with pytest.raises(UnknownArc):
        connect_sum(builders.hopf(), 99, builders.hopf(), 0)


def test_resolution_marks_basepoint_circle():
    d = builders.hopf(pointed=True)
    r = d.resolve((0, 0))
    assert r.marked_circle is not None
    assert d.basepoint in r.circles[r.marked_circle]


def test_annular_flags_parity():
    d = builders.annular_unlink(2)
    r = d.resolve((0, 1))  # the oriented resolution: both circles essential
    assert r.essential_flags == (True, True)
    r0 = d.resolve((0, 0))
    assert r0.essential_flags == (False,)


def test_resolve_independent_of_crossing_order():
    d = from_braid("s1 s2^-1 s1^-1 s2", 3)
    n = d.n_crossings
    perm = [2, 0, 3, 1]
    shuffled = LinkDiagram(crossings=tuple(d.crossings[p] for p in perm),
                           free_loops=d.free_loops)
    for u_int in range(1 << n):
        u = tuple((u_int >> i) & 1 for i in range(n))
        assert shuffled.resolve(tuple(u[p] for p in perm)).circles \
            == d.resolve(u).circles
