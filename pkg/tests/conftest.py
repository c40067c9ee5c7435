from pathlib import Path

import numpy as np
import pytest

from termesh import PointSetSpec, Triangulation, delaunay, random_points, read_triangle_files

DATA = Path(__file__).parent / "data"


def load_data(stem):
    return read_triangle_files(DATA / f"{stem}.node", DATA / f"{stem}.ele", DATA / f"{stem}.neigh")


def random_mesh(n, seed):
    return delaunay(random_points(PointSetSpec(n, seed=seed)))


def fan(center, ring):
    """Triangulation of ``center`` joined to the closed polygon ``ring`` (ccw)."""
    pts = np.array([center] + list(ring), dtype=float)
    k = len(ring)
    tris = []
    for i in range(k):
        tris += [0, 1 + i, 1 + (i + 1) % k]
    return Triangulation.from_arrays(pts.ravel(), tris)


@pytest.fixture
def square():
    return Triangulation.from_arrays([0, 0, 1, 0, 1, 1, 0, 1], [0, 1, 2, 0, 2, 3])


# one line per acceptance criterion, filled in by test_acceptance.py
ACCEPTANCE: dict = {}


def report(number, ok, detail):
    ACCEPTANCE[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'} - {detail}"
    print(ACCEPTANCE[number])
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE:
        terminalreporter.section("acceptance criteria")
        for k in sorted(ACCEPTANCE):
            terminalreporter.write_line(ACCEPTANCE[k])
