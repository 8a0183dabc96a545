"""Ideal tetrahedron shapes: edge invariants, cross-ratios and volume.

Points of the extended complex plane are plain ``complex`` values or the
singleton :data:`INF`.
"""

from __future__ import annotations

import cmath
import math
from fractions import Fraction
from dataclasses import dataclass

__all__ = [
    "INF",
    "is_inf",
    "DegenerateShapeError",
    "ShapeTriple",
    "ShapeAssignment",
    "shape_triple",
    "lobachevsky",
    "tet_volume",
    "tetra_shape_from_vertices",
]


class _Infinity:
    """The point at infinity of the Riemann sphere."""

    _instance = None

    def __new__(cls):
        if cls._instance is None:
            cls._instance = super().__new__(cls)
        return cls._instance

    def __repr__(self):
        return "INF"

    def __str__(self):
        return "inf"

    def __reduce__(self):
        return (_Infinity, ())


INF = _Infinity()


def is_inf(z) -> bool:
    return z is INF


class DegenerateShapeError(ValueError):
    pass


@dataclass(frozen=True)
class ShapeTriple:
    z: complex
    v: complex
    w: complex

    @property
    def geometric(self) -> bool:
        return self.z.imag > 0

    def corner(self, tag: str) -> complex:
        return {"z": self.z, "v": self.v, "w": self.w}[tag]

    def angles(self) -> tuple[float, float, float]:
        return cmath.phase(self.z), cmath.phase(self.v), cmath.phase(self.w)


def shape_triple(z: complex) -> ShapeTriple:
    """Return (z, 1/(1-z), 1-1/z) for a non-degenerate shape ``z``."""
    z = complex(z)
    if not cmath.isfinite(z) or z == 0 or z == 1:
        raise DegenerateShapeError(f"degenerate shape {z!r}")
    return ShapeTriple(z, 1 / (1 - z), 1 - 1 / z)


class ShapeAssignment(tuple):
    """Per-tetrahedron shape triples, indexed by tetrahedron number."""

    def __new__(cls, triples):
        return super().__new__(cls, triples)

    @classmethod
    def from_z(cls, zs) -> "ShapeAssignment":
        return cls(shape_triple(z) for z in zs)

    @property
    def z(self) -> list[complex]:
        return [s.z for s in self]

    @property
    def geometric(self) -> bool:
        return all(s.geometric for s in self)


def _clausen_coefficients(kmax: int = 40) -> list[float]:
    """|B_2k| / (2k (2k+1)!) for k = 1..kmax (Akiyama-Tanigawa Bernoulli numbers)."""
    row = []
    bernoulli = []
    for m in range(2 * kmax + 1):
        row.append(Fraction(1, m + 1))
        for j in range(m, 0, -1):
            row[j - 1] = j * (row[j - 1] - row[j])
        bernoulli.append(row[0])
    return [
        float(abs(bernoulli[2 * k]) / (2 * k * math.factorial(2 * k + 1)))
        for k in range(1, kmax + 1)
    ]


_CLAUSEN = _clausen_coefficients()


def _clausen2(x: float) -> float:
    """Clausen function Cl2(x) = sum sin(n x)/n^2."""
    x = math.remainder(x, 2 * math.pi)  # now in [-pi, pi]
    if x == 0.0:
        return 0.0
    if x < 0:
        return -_clausen2(-x)
    total = x - x * math.log(x)
    x2 = x * x
    power = x * x2
    for c in _CLAUSEN:
        term = c * power
        total += term
        if term < 1e-17:
            break
        power *= x2
    return total


def lobachevsky(theta: float) -> float:
    """Lobachevsky function, -int_0^theta log|2 sin t| dt = Cl2(2 theta)/2."""
    return 0.5 * _clausen2(2.0 * theta)


def tet_volume(s: ShapeTriple) -> float:
    """Hyperbolic volume of a positively oriented ideal tetrahedron."""
    if not s.z.imag > 0:
        raise DegenerateShapeError(f"non-geometric shape {s.z!r}")
    return math.fsum(lobachevsky(a) for a in s.angles())


def _cross_ratio(a, b, c, d) -> complex:
    # ((c - a)(d - b)) / ((d - a)(c - b)); a factor containing INF cancels
    # against its partner in the other half of the fraction.
    num = [(c, a), (d, b)]
    den = [(d, a), (c, b)]
    pts = (a, b, c, d)
    if len(set(map(_point_key, pts))) < 4:
        raise DegenerateShapeError("repeated vertices")
    inf_at = [p for p in pts if p is INF]
    if inf_at:
        num = [pair for pair in num if INF not in pair]
        den = [pair for pair in den if INF not in pair]
    value = complex(1)
    for p, q in num:
        value *= p - q
    for p, q in den:
        value /= p - q
    return value


def _point_key(p):
    return ("inf",) if p is INF else (complex(p).real, complex(p).imag)


def tetra_shape_from_vertices(z0, z1, z2, z3) -> complex:
    """Edge-(0,1) shape of the ideal tetrahedron with vertices z0..z3.

    >>> tetra_shape_from_vertices(0, INF, 1j, 1)
    1j
    """
    return _cross_ratio(z0, z1, z2, z3)
