import json
import re

import pytest

from termesh import ExportOptions, Triangulation, run_pipeline, write_off, write_stats_json, write_svg, write_vtk
from termesh.io_export import write_meshtxt

from conftest import random_mesh


@pytest.fixture
def square_mesh(square):
    return run_pipeline(square)


def read_off(text):
    lines = text.split("\n")
    assert lines[0] == "OFF"
    nv, nf, _ = map(int, lines[1].split())
    verts = [tuple(map(float, l.split())) for l in lines[2:2 + nv]]
    faces = [list(map(int, l.split()))[1:] for l in lines[2 + nv:2 + nv + nf]]
    return verts, faces


def test_off_square(square_mesh):
    text = write_off(square_mesh.mesh)
    assert text.startswith("OFF\n4 1 0\n")
    assert text.endswith("\n4 0 1 2 3\n")


def test_off_roundtrip_preserves_indexing_and_coordinates():
    T = random_mesh(300, 4)
    r = run_pipeline(T)
    verts, faces = read_off(write_off(r.mesh))
    assert faces == list(r.mesh.polygons())
    assert [v[:2] for v in verts] == [tuple(p) for p in T.points.tolist()]


def test_vtk_sections(square_mesh):
    text = write_vtk(square_mesh.mesh)
    assert text.splitlines()[:5] == ["# vtk DataFile Version 2.0", "termesh polygon mesh", "ASCII",
                                     "DATASET POLYDATA", "POINTS 4 double"]
    assert "POLYGONS 1 5\n4 0 1 2 3\n" in text


def test_vtk_cell_sizes_match_mesh_array():
    r = run_pipeline(random_mesh(200, 2))
    text = write_vtk(r.mesh)
    tail = text.split("POLYGONS ")[1].splitlines()
    nf, size = map(int, tail[0].split())
    assert nf == r.mesh.n_polygons and size == len(r.mesh.mesh_array)
    assert [int(x) for l in tail[1:] for x in l.split()] == r.mesh.mesh_array.tolist()


def test_svg_paths(square_mesh):
    svg = write_svg(square_mesh.mesh)
    paths = re.findall(r'<path d="([^"]*)"', svg)
    assert len(paths) == 1 and paths[0].count("L") == 3 and paths[0].endswith("Z")
    vb = list(map(float, re.search(r'viewBox="([^"]*)"', svg).group(1).split()))
    assert vb == pytest.approx([-0.02, -1.02, 1.04, 1.04])


def test_svg_single_triangle_and_palette():
    r = run_pipeline(Triangulation.from_arrays([0, 0, 1, 0, 0, 1], [0, 1, 2]))
    svg = write_svg(r.mesh, palette=["#ff0000"])
    assert re.findall(r'<path d="M [^"]*"', svg)[0].count("L") == 2
    assert 'fill="#ff0000"' in svg


def test_svg_path_count_on_thousand_points():
    r = run_pipeline(random_mesh(1000, 0))
    assert write_svg(r.mesh).count("<path ") == r.mesh.n_polygons


def test_stats_json_fields():
    r = run_pipeline(random_mesh(100, 0))
    data = json.loads(write_stats_json(r.stats, r.times.as_dict()))
    assert set(data) == {"input_points", "triangle_count", "region_count", "polygon_count", "tip_count",
                         "max_tips_in_one_polygon", "avg_triangles_per_polygon", "avg_vertices_per_polygon",
                         "min_interior_angle", "max_interior_angle", "label_seconds", "traversal_seconds",
                         "repair_seconds", "total_seconds"}
    assert all(data[k] >= 0 for k in data if k.endswith("seconds"))
    assert data["label_seconds"] + data["traversal_seconds"] + data["repair_seconds"] <= data["total_seconds"]


def test_precision_and_meshtxt(square_mesh):
    with pytest.raises(ValueError):
        ExportOptions(precision=5)
    assert write_meshtxt(square_mesh.mesh) == "4 0 1 2 3\n"
    T = Triangulation.from_arrays([0, 0, 1 / 3, 0, 0, 1], [0, 1, 2])
    off6 = write_off(run_pipeline(T).mesh, ExportOptions(precision=6))
    assert "0.333333 0 0" in off6
