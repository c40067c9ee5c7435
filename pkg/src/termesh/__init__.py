"""Polygonal meshes built from the terminal-edge regions of a triangulation."""
from .errors import GeometryError, InternalConsistencyError, MeshError, ParseError, TopologyError
from .generator import PointSetSpec, delaunay, random_points
from .io_export import ExportOptions, write_meshtxt, write_off, write_stats_json, write_svg, write_vtk
from .labeling import EdgeClass, EdgeLabels, classify_edges, collect_seeds, label, lepp, longest_edges
from .pipeline import PhaseTimes, PipelineResult, run_pipeline
from .polymesh import MeshStats, PolyMesh, assemble, compute_stats, interior_angles, verify
from .repair import RepairResult, RepairState, repair, split_nonsimple
from .traversal import Polyline, TraversalResult, build_all, build_polygon, detect_tips
from .triangulation import (BOUNDARY, EdgeKey, Triangulation, build_neighbors, load_triangle_files,
                            read_triangle_files, validate, write_triangle_files)

__version__ = "0.1.0"
