import cmath
from pathlib import Path

import pytest

from hypgluing import equations, solver, triangulation
from hypgluing.shapes import ShapeAssignment

FIXTURES = Path(__file__).resolve().parents[1] / "src" / "hypgluing" / "fixtures"
GOLDEN = Path(__file__).resolve().parent / "golden"

# hyperbolic structure of the Borromean complement, one shape per tetrahedron
HALF = (1 + 1j) / 2
BORROMEAN_Z = (HALF, 1 + 1j, 1 + 1j, 1j, 1 + 1j, HALF, 1j, HALF)
REGULAR = cmath.exp(1j * cmath.pi / 3)

# developed vertices with tetrahedron 3 anchored at (0, inf, i, 1)
INF = "inf"
BORROMEAN_TABLE = {
    3: (0, INF, 1j, 1),
    1: (-1, INF, 1j, 0),
    2: (-1j, INF, -1, 0),
    0: (-1j, INF, 0, 1),
    4: (1j, 1, INF, 1 + 2j),
    6: (1 + 2j, 1, INF, 2 + 1j),
    7: (1 + 1j, 1, 1 + 2j, 2 + 1j),
    5: (1 + 1j, 1 + 2j, 1, 1j),
}

# face pairings as printed, before determinant normalization
PAIRING_MATRICES = {
    "3-4": [[2j, 1], [1, 0]],
    "0-5.f2": [[1 + 1j, -1], [1, -1 + 1j]],
    "0-5.f1": [[1 - 2j, 1 + 1j], [-1 - 1j, 1]],
    "1-6.f3": [[1, 2], [0, 1]],
    "1-6.f1": [[2 + 2j, 1], [1, 0]],
    "2-7.f3": [[2, 3 + 1j], [1 - 1j, 2]],
    "2-7.f1": [[3 - 3j, 2], [-2j, 1 - 1j]],
}

ELIMINATIONS = ["d=b a b^-1", "f=a c a^-1", "e=c b c^-1"]


def fixture_path(name):
    return str(FIXTURES / name)


def load(name):
    t = triangulation.parse_triangulation((FIXTURES / f"{name}.tri").read_text(), source=name)
    curves = triangulation.parse_cusp_curves((FIXTURES / f"{name}.curves").read_text(), t)
    return t, curves


@pytest.fixture(scope="session")
def borromean():
    return load("borromean")


@pytest.fixture(scope="session")
def figure8():
    return load("figure8")


@pytest.fixture(scope="session")
def borromean_system(borromean):
    return equations.build_system(*borromean)


@pytest.fixture(scope="session")
def figure8_system(figure8):
    return equations.build_system(*figure8)


@pytest.fixture(scope="session")
def borromean_shapes():
    return ShapeAssignment.from_z(BORROMEAN_Z)


@pytest.fixture(scope="session")
def borromean_solved(borromean_system):
    return solver.solve(borromean_system, solver.SolverConfig())


# one line per acceptance criterion, printed at the end of the run
ACCEPTANCE_LINES = {}


def record(number, ok, detail):
    ACCEPTANCE_LINES[number] = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    return ok


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for n in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(ACCEPTANCE_LINES[n])
