"""Gluing (edge) and completeness (cusp) equations in exponent form.

Every equation is stored as integer exponents of the corner invariants
z, v, w of each tetrahedron.  It is solved in additive form

    sum_t (a_t log z_t + b_t log v_t + c_t log w_t) = i * target

with principal logarithms; the target is 2*pi for edges and 0 for cusps.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .shapes import DegenerateShapeError, ShapeAssignment
from .triangulation import CuspCurve, Triangulation, cusp_classes, edge_classes

__all__ = [
    "GluingEquation",
    "EquationSystem",
    "build_system",
    "holonomy_invariant",
    "residuals",
    "jacobian",
    "angle_sum",
]

_CORNER_INDEX = {"z": 0, "v": 1, "w": 2}


@dataclass(frozen=True)
class GluingEquation:
    kind: str  # "edge" or "cusp"
    exponents: tuple[tuple[int, int, int], ...]
    target_arg: float
    source: str

    def factors(self):
        """Yield (tet, corner, exponent) for every non-zero exponent."""
        for t, triple in enumerate(self.exponents):
            for corner, e in zip("zvw", triple):
                if e:
                    yield t, corner, e

    @property
    def degree(self) -> int:
        return sum(sum(triple) for triple in self.exponents)

    def describe(self) -> str:
        num, den = [], []
        for t, corner, e in self.factors():
            (num if e > 0 else den).extend([f"{corner}{t}"] * abs(e))
        text = " ".join(num) or "1"
        if den:
            text += " / " + " ".join(den)
        return text


@dataclass(frozen=True)
class EquationSystem:
    equations: tuple[GluingEquation, ...]
    n_tets: int

    def __len__(self):
        return len(self.equations)

    @property
    def edge_equations(self):
        return [e for e in self.equations if e.kind == "edge"]

    @property
    def cusp_equations(self):
        return [e for e in self.equations if e.kind == "cusp"]

    def exponent_matrices(self):
        """Integer matrices A, B, C (equations x tetrahedra) for z, v, w."""
        arr = np.array([eq.exponents for eq in self.equations], dtype=int).reshape(
            len(self.equations), self.n_tets, 3)
        return arr[:, :, 0], arr[:, :, 1], arr[:, :, 2]

    @property
    def targets(self) -> np.ndarray:
        return np.array([eq.target_arg for eq in self.equations])


def build_system(t: Triangulation, curves: Sequence[CuspCurve]) -> EquationSystem:
    equations = []
    for ec in edge_classes(t):
        ex = [[0, 0, 0] for _ in range(t.n_tets)]
        for m in ec.members:
            ex[m.tet][_CORNER_INDEX[m.corner]] += 1
        equations.append(GluingEquation(
            "edge", tuple(map(tuple, ex)), 2 * math.pi, f"edge {ec.index}"))
    n_cusps = len(cusp_classes(t))
    per_cusp = {c: 0 for c in range(n_cusps)}
    for curve in curves:
        ex = [[0, 0, 0] for _ in range(t.n_tets)]
        for s in curve.steps:
            ex[s.tet][_CORNER_INDEX[s.corner]] += s.eps
        per_cusp[curve.cusp] += 1
        equations.append(GluingEquation(
            "cusp", tuple(map(tuple, ex)), 0.0, f"cusp {curve.cusp} {curve.name}"))
    missing = [c for c, k in per_cusp.items() if k < 2]
    if missing:
        raise ValueError(f"cusps {missing} need two curves each")
    return EquationSystem(tuple(equations), t.n_tets)


def holonomy_invariant(eq: GluingEquation, s: ShapeAssignment) -> complex:
    """Literal product of corner invariants raised to their exponents."""
    value = complex(1)
    for t, corner, e in eq.factors():
        c = s[t].corner(corner)
        if c == 0 or not cmath.isfinite(c):
            raise DegenerateShapeError(f"degenerate corner {corner}{t}")
        value *= c ** e
    return value


def angle_sum(eq: GluingEquation, s: ShapeAssignment) -> float:
    return math.fsum(e * cmath.phase(s[t].corner(corner)) for t, corner, e in eq.factors())


def _logs(z: np.ndarray):
    if np.any(z.imag <= 0):
        bad = int(np.argmax(z.imag <= 0))
        raise DegenerateShapeError(f"shape of tetrahedron {bad} is not in the upper half-plane")
    log_z = np.log(z)
    log_v = -np.log(1 - z)
    log_w = np.log(z - 1) - log_z
    return log_z, log_v, log_w


def _as_array(s) -> np.ndarray:
    if isinstance(s, ShapeAssignment):
        return np.array(s.z, dtype=complex)
    return np.asarray(s, dtype=complex)


def residuals(sys: EquationSystem, s) -> np.ndarray:
    """Log-form residual of every equation; ``s`` is shapes or an array of z."""
    z = _as_array(s)
    log_z, log_v, log_w = _logs(z)
    A, B, C = sys.exponent_matrices()
    return A @ log_z + B @ log_v + C @ log_w - 1j * sys.targets


def jacobian(sys: EquationSystem, s) -> np.ndarray:
    """Complex derivative of :func:`residuals` with respect to each z."""
    z = _as_array(s)
    _logs(z)
    A, B, C = sys.exponent_matrices()
    return A * (1 / z) + B * (1 / (1 - z)) + C * (1 / (z * (z - 1)))
