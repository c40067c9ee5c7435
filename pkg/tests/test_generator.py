import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from termesh import GeometryError, PointSetSpec, delaunay, random_points, validate
from termesh.generator import _sweep, snap_to_square
from termesh.triangulation import boundary_edges

import oracles
from conftest import random_mesh


def test_count_three_gives_seven_points_in_square():
    p = random_points(PointSetSpec(3, seed=11))
    assert p.shape == (7, 2)
    assert ((p >= 0) & (p <= 1)).all()
    assert p[:4].tolist() == [[0, 0], [1, 0], [1, 1], [0, 1]]


def test_snapping_projects_onto_side():
    g = 1e-3
    out = snap_to_square(np.array([[g / 2, 0.4], [0.5, 1 - g / 2], [0.5, 0.5]]), 0.0, 0.0, 1.0, g)
    assert out.tolist() == [[0.0, 0.4], [0.5, 1.0], [0.5, 0.5]]


def test_points_are_reproducible_and_distinct():
    a = random_points(PointSetSpec(1000, seed=42))
    b = random_points(PointSetSpec(1000, seed=42))
    assert a.tobytes() == b.tobytes()
    assert len({tuple(r) for r in a.tolist()}) == len(a)
    assert random_points(PointSetSpec(1000, seed=43)).tobytes() != a.tobytes()


def test_large_gamma_puts_points_on_sides():
    p = random_points(PointSetSpec(500, seed=1, gamma=0.05))
    on_side = (p[:, 0] == 0) | (p[:, 0] == 1) | (p[:, 1] == 0) | (p[:, 1] == 1)
    assert on_side.sum() > 4


def test_unit_square_uses_tie_break_diagonal():
    T = delaunay(np.array([[0, 0], [1, 0], [1, 1], [0, 1.0]]))
    assert T.n_triangles == 2
    shared = set(T.triangle(0)) & set(T.triangle(1))
    assert shared == {0, 2}


def test_corners_plus_centroid_is_a_fan():
    T = delaunay(np.array([[0, 0], [1, 0], [1, 1], [0, 1], [0.5, 0.5]]))
    assert T.n_triangles == 4
    assert all(4 in T.triangle(t) for t in range(4))


def test_fifty_points_pass_circumcircle_oracle():
    T = random_mesh(46, seed=7)
    assert T.n_vertices == 50
    assert oracles.empty_circumcircle_violations(T) == []
    assert validate(T) == []


@pytest.mark.parametrize("pts", [[[0, 0], [1, 1]], [[0, 0], [1, 1], [2, 2], [3, 3]], [[0, 0], [1, 0], [0, 0]]])
def test_degenerate_inputs_raise(pts):
    with pytest.raises(GeometryError):
        delaunay(np.array(pts, dtype=float))


def test_grid_with_many_cocircular_quads():
    g = np.array([[i, j] for i in range(8) for j in range(8)], dtype=float)
    T = delaunay(g)
    assert validate(T) == []
    assert T.n_triangles == 2 * 7 * 7
    assert oracles.empty_circumcircle_violations(T) == []


def test_insertion_order_does_not_break_validity():
    pts = random_points(PointSetSpec(60, seed=5))
    xs, ys = pts[:, 0].tolist(), pts[:, 1].tolist()
    rev = _sweep(xs, ys, order_hook=lambda order: order[::-1])
    assert len(rev.tri) // 3 == delaunay(pts).n_triangles


@settings(max_examples=40, deadline=None)
@given(st.lists(st.tuples(st.integers(0, 30), st.integers(0, 30)), min_size=3, max_size=40, unique=True))
def test_delaunay_property_on_integer_lattice_subsets(raw):
    pts = np.array(raw, dtype=float)
    try:
        T = delaunay(pts)
    except GeometryError:
        # only collinear sets may fail
        d = pts - pts[0]
        cross = d[:, 0][:, None] * d[:, 1][None, :] - d[:, 1][:, None] * d[:, 0][None, :]
        assert not cross.any()
        return
    assert validate(T) == []
    assert oracles.empty_circumcircle_violations(T) == []
    h = len(boundary_edges(T))
    # Euler for a triangulated convex hull, collinear hull points included
    assert T.n_triangles == 2 * (T.n_vertices - 1) - h


@pytest.mark.parametrize("seed", range(5))
def test_euler_relation(seed):
    T = random_mesh(200, seed)
    h = len(boundary_edges(T))
    assert T.n_triangles == 2 * (T.n_vertices - 1) - h
