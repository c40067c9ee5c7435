import pytest
from hypothesis import given, settings, strategies as st

from termesh import Triangulation, build_all, build_polygon, detect_tips, label
from termesh.traversal import Polyline

import oracles
from conftest import load_data, random_mesh


def test_square_polyline(square):
    L = label(square)
    p = build_polygon(square, L, 0)
    assert p.vertex_ids == [0, 1, 2, 3]
    assert p.tips == [] and p.is_simple
    R = build_all(square, L)
    assert len(R.simple) == 1 and R.non_simple == []


def test_three_frontier_triangle_is_returned_whole():
    T = Triangulation.from_arrays([0, -0.1, 0, 0.1, -1, 0.02, 1, 0], [0, 1, 2, 1, 0, 3])
    L = label(T)
    polys = build_all(T, L).polylines
    assert [sorted(p.vertex_ids) for p in polys] == [[0, 1, 2], [0, 1, 3]]
    assert all(p.source_triangles == [i] for i, p in enumerate(polys))


@pytest.mark.parametrize("ids, tips", [
    ([0, 1, 2, 3], []),
    ([0, 1, 4, 1, 2], [4]),
    ([4, 1, 2, 1], [2, 4]),
    ([7, 8], []),
])
def test_detect_tips(ids, tips):
    assert sorted(detect_tips(ids)) == tips
    assert set(detect_tips(ids)) == oracles.cyclic_tips(ids)


def test_one_tip_fixture():
    T = load_data("tip1")
    L = label(T)
    assert len(L.seeds) == 1
    p = build_polygon(T, L, L.seeds[0])
    assert len(p.tips) == 1 and not p.is_simple
    b = p.tips[0]
    j = p.vertex_ids.index(b)
    ids = p.vertex_ids
    assert ids[j - 1] == ids[(j + 1) % len(ids)]
    assert oracles.polyline_edges(ids) == oracles.region_boundary(T, range(T.n_triangles))


def test_three_tip_fixture_matches_triple_scan():
    T = load_data("tip3")
    p = build_all(T, label(T)).polylines[0]
    assert len(p.tips) == 3
    assert set(p.tips) == oracles.cyclic_tips(p.vertex_ids)


def _check_mesh(T):
    L = label(T)
    R = build_all(T, L)
    assert len(R.polylines) == len(L.seeds)
    assert max(R.visits) <= 3
    seen = sorted(t for p in R.polylines for t in p.source_triangles)
    assert seen == list(range(T.n_triangles))
    for p in R.polylines:
        assert all(p.vertex_ids[k] != p.vertex_ids[k - 1] for k in range(len(p)))
        assert oracles.polyline_edges(p.vertex_ids) == oracles.region_boundary(T, p.source_triangles)
        if p.tips:
            assert not p.is_simple
    groups = {frozenset(p.source_triangles) for p in R.polylines}
    assert groups == oracles.lepp_groups(T)
    assert set(T.triangles.tolist()) == {v for p in R.polylines for v in p.vertex_ids}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10**6), st.integers(3, 250))
def test_regions_boundaries_and_visits(seed, n):
    _check_mesh(random_mesh(n, seed))


def test_nondelaunay_input():
    _check_mesh(load_data("nondelaunay"))


def test_parallel_walk_matches_serial():
    T = random_mesh(3000, 4)
    L = label(T)
    a = build_all(T, L)
    b = build_all(T, L, workers=4)
    assert [p.vertex_ids for p in a.polylines] == [p.vertex_ids for p in b.polylines]
    assert a.visits == b.visits


def test_simple_polylines_are_ccw():
    T = random_mesh(300, 2)
    pts = T.points.tolist()
    for p in build_all(T, label(T)).simple:
        assert oracles.shoelace(pts, p.vertex_ids) > 0
