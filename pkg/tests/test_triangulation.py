import numpy as np
import pytest

from termesh import (BOUNDARY, EdgeKey, ParseError, TopologyError, Triangulation, build_neighbors,
                     load_triangle_files, read_triangle_files, validate, write_triangle_files)
from termesh.errors import GeometryError
from termesh.triangulation import boundary_edges, edge_geometry, normalize_orientation, triangle_areas

SQUARE_NODE = """# unit square
4 2 0 0
1 0.0 0.0
2 1.0 0.0
3 1.0 1.0
4 0.0 1.0
"""
SQUARE_ELE = """2 3 0
1 1 2 3
2 1 3 4   # second triangle
"""


def test_one_based_files_are_rebased(square):
    T = load_triangle_files(SQUARE_NODE, SQUARE_ELE)
    assert T.triangles.tolist() == square.triangles.tolist()
    assert T.neighbors.tolist() == square.neighbors.tolist()


def test_square_neighbors_follow_opposite_vertex_slots(square):
    # triangle 0 = (0,1,2): its edge (2,0) is opposite local vertex 1 and is shared with triangle 1
    assert square.neighbors.tolist() == [BOUNDARY, 1, BOUNDARY, BOUNDARY, BOUNDARY, 0]


def test_neigh_file_is_checked_against_rebuilt_adjacency():
    neigh = "2 3\n1 -1 2 -1\n2 -1 -1 1\n"
    T = load_triangle_files(SQUARE_NODE, SQUARE_ELE, neigh)
    assert T.neighbors.tolist() == [BOUNDARY, 1, BOUNDARY, BOUNDARY, BOUNDARY, 0]
    bad = "2 3\n1 2 -1 -1\n2 -1 -1 1\n"
    with pytest.raises(TopologyError):
        load_triangle_files(SQUARE_NODE, SQUARE_ELE, bad)


def test_clockwise_input_is_reoriented():
    T = Triangulation.from_arrays([0, 0, 1, 0, 0, 1], [0, 2, 1])
    assert triangle_areas(T)[0] > 0
    assert sorted(T.triangles.tolist()) == [0, 1, 2]


def test_normalize_orientation_rejects_zero_area():
    with pytest.raises(GeometryError):
        normalize_orientation(np.array([0, 0, 1, 1, 2, 2.0]), np.array([0, 1, 2]))


@pytest.mark.parametrize("ele, line", [
    ("2 3 0\n1 1 2 3\n2 1 3 x\n", 3),
    ("2 3 0\n1 1 2 3\n2 1 3 9\n", 3),
    ("2 3 0\n1 1 2\n", 2),
])
def test_malformed_ele_reports_line(ele, line):
    with pytest.raises(ParseError) as info:
        load_triangle_files(SQUARE_NODE, ele)
    assert info.value.line == line
    assert info.value.source == ".ele"


def test_missing_rows_reported():
    with pytest.raises(ParseError, match="declares 2 triangles, found 1"):
        load_triangle_files(SQUARE_NODE, "2 3 0\n1 1 2 3\n")


def test_read_files_names_the_path(tmp_path):
    (tmp_path / "a.node").write_text(SQUARE_NODE)
    (tmp_path / "a.ele").write_text("2 3 0\n1 1 2 3\n2 1 3 q\n")
    with pytest.raises(ParseError) as info:
        read_triangle_files(tmp_path / "a.node", tmp_path / "a.ele")
    assert str(info.value).startswith(str(tmp_path / "a.ele") + ":3:")


def test_roundtrip_is_exact(square):
    T = Triangulation.from_arrays([0.1, 0.2, 1 / 3, 0.0, 0.7, 2 / 7, 0.0, 1.0], [0, 1, 2, 0, 2, 3])
    for base in (0, 1):
        node, ele, neigh = write_triangle_files(T, base=base)
        R = load_triangle_files(node, ele, neigh)
        assert R.vertices.tobytes() == T.vertices.tobytes()
        assert R.triangles.tolist() == T.triangles.tolist()
        assert R.neighbors.tolist() == T.neighbors.tolist()


def test_build_neighbors_rejects_nonmanifold_edge():
    with pytest.raises(TopologyError):
        build_neighbors(np.array([0, 1, 2, 1, 0, 3, 0, 1, 4]))


def test_edge_geometry(square):
    key, sq = edge_geometry(square, 0, 1)
    assert key == EdgeKey(0, 2) and sq == 2.0
    with pytest.raises(IndexError):
        edge_geometry(square, 0, 3)


def test_edgekey_is_canonical():
    assert EdgeKey.of(5, 2) == EdgeKey(2, 5)
    with pytest.raises(ValueError):
        EdgeKey.of(1, 1)


def test_validate_clean_and_corrupted(square):
    assert validate(square) == []
    broken = Triangulation(square.vertices.copy(), square.triangles.copy(),
                           np.array([BOUNDARY, 1, BOUNDARY, BOUNDARY, BOUNDARY, BOUNDARY]))
    kinds = {i.kind for i in validate(broken)}
    assert "symmetry" in kinds


def test_boundary_edges_keep_domain_on_left(square):
    assert sorted(boundary_edges(square)) == [(0, 1), (1, 2), (2, 3), (3, 0)]
