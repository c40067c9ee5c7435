"""Text serializers for polygon meshes and run statistics.

Formats:

* OFF: ``OFF``, then ``V F 0``, V coordinate lines ``x y 0``, F face lines
  ``k i1 ... ik``.
* legacy VTK 2.0 ASCII, ``DATASET POLYDATA`` with ``POINTS`` (z = 0) and
  ``POLYGONS F S`` where S counts every integer in the section.
* SVG 1.1: one ``<path>`` per polygon. Mesh y points up, so it is flipped;
  the viewBox is the bounding box grown by 2% of its larger side.
* mesh-array text: the flat mesh array, one polygon per line.
* stats JSON: MeshStats fields plus ``label_seconds``, ``traversal_seconds``,
  ``repair_seconds`` and ``total_seconds``; keys sorted.

Coordinates use ``%.{p}g`` with ``p`` significant digits; 17 round-trips doubles.
"""
from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Optional, Sequence

import numpy as np

from .polymesh import MeshStats, PolyMesh

FORMATS = ("off", "vtk", "svg", "meshtxt", "statsjson")


@dataclass(frozen=True)
class ExportOptions:
    format: str = "off"
    precision: int = 17
    stroke_width: float = 1.0
    canvas_size: int = 800

    def __post_init__(self):
        if self.format not in FORMATS:
            raise ValueError(f"unknown format {self.format!r}; expected one of {FORMATS}")
        if not 6 <= self.precision <= 17:
            raise ValueError(f"precision must be in [6, 17], got {self.precision}")


def _num(x: float, p: int) -> str:
    s = f"{x:.{p}g}"
    return "0" if s == "-0" else s


def _xy_lines(mesh: PolyMesh, p: int, z: bool) -> list[str]:
    xy = mesh.vertices.reshape(-1, 2).tolist()
    tail = " 0" if z else ""
    return [f"{_num(x, p)} {_num(y, p)}{tail}" for x, y in xy]


def _faces(mesh: PolyMesh) -> list[str]:
    return [f"{len(poly)} " + " ".join(map(str, poly)) for poly in mesh.polygons()]


def write_off(mesh: PolyMesh, options: ExportOptions = ExportOptions()) -> str:
    nv = len(mesh.vertices) // 2
    lines = ["OFF", f"{nv} {mesh.n_polygons} 0"]
    lines += _xy_lines(mesh, options.precision, True)
    lines += _faces(mesh)
    return "\n".join(lines) + "\n"


def write_vtk(mesh: PolyMesh, options: ExportOptions = ExportOptions(format="vtk")) -> str:
    nv = len(mesh.vertices) // 2
    lines = ["# vtk DataFile Version 2.0", "termesh polygon mesh", "ASCII", "DATASET POLYDATA",
             f"POINTS {nv} double"]
    lines += _xy_lines(mesh, options.precision, True)
    lines.append(f"POLYGONS {mesh.n_polygons} {len(mesh.mesh_array)}")
    lines += _faces(mesh)
    return "\n".join(lines) + "\n"


def write_meshtxt(mesh: PolyMesh, options: ExportOptions = ExportOptions(format="meshtxt")) -> str:
    return "".join(line + "\n" for line in _faces(mesh))


def write_svg(mesh: PolyMesh, options: ExportOptions = ExportOptions(format="svg"),
              palette: Optional[Sequence[str]] = None) -> str:
    """SVG drawing; ``palette`` colors are cycled over polygons (no fill when omitted)."""
    xy = mesh.vertices.reshape(-1, 2)
    p = options.precision
    lo = xy.min(axis=0)
    hi = xy.max(axis=0)
    span = float(max(hi - lo))
    if span == 0.0:
        span = 1.0
    margin = 0.02 * span
    x0, y0 = float(lo[0]) - margin, -float(hi[1]) - margin
    w = float(hi[0] - lo[0]) + 2 * margin
    h = float(hi[1] - lo[1]) + 2 * margin
    scale = options.canvas_size / max(w, h)
    stroke = options.stroke_width / scale
    out = ['<?xml version="1.0" encoding="UTF-8"?>',
           f'<svg xmlns="http://www.w3.org/2000/svg" version="1.1" '
           f'width="{_num(w * scale, 6)}" height="{_num(h * scale, 6)}" '
           f'viewBox="{_num(x0, p)} {_num(y0, p)} {_num(w, p)} {_num(h, p)}">',
           f'<g stroke="black" stroke-width="{_num(stroke, 6)}" stroke-linejoin="round">']
    for i, poly in enumerate(mesh.polygons()):
        pts = " L ".join(f"{_num(xy[v, 0], p)} {_num(-xy[v, 1], p)}" for v in poly)
        fill = palette[i % len(palette)] if palette else "none"
        out.append(f'<path d="M {pts} Z" fill="{fill}"/>')
    out += ["</g>", "</svg>"]
    return "\n".join(out) + "\n"


def write_stats_json(stats: MeshStats, times: Optional[dict] = None) -> str:
    """Flat JSON object; ``times`` maps ``label_seconds`` etc. to wall-clock seconds."""
    data = stats.as_dict()
    for k, v in (times or {}).items():
        data[k] = float(v)
    for k, v in data.items():
        if isinstance(v, np.generic):
            data[k] = v.item()
    return json.dumps(data, indent=2, sort_keys=True) + "\n"


WRITERS = {"off": write_off, "vtk": write_vtk, "svg": write_svg, "meshtxt": write_meshtxt}
