import cmath
import math

import numpy as np
import pytest

from hypgluing import equations as E
from hypgluing.equations import GluingEquation, EquationSystem
from hypgluing.shapes import DegenerateShapeError, ShapeAssignment
from hypgluing.triangulation import cusp_classes


def _equation(system, text):
    for eq in system.equations:
        if sorted(eq.describe().split()) == sorted(text.split()):
            return eq
    raise LookupError(text)


def test_system_shape(borromean_system, figure8_system):
    assert len(borromean_system.edge_equations) == 8
    assert len(borromean_system.cusp_equations) == 6
    assert len(figure8_system.edge_equations) == 2
    assert [e.degree for e in figure8_system.edge_equations] == [6, 6]


def test_named_equations(borromean_system):
    _equation(borromean_system, "z0 w1 z2 w3 z4 z5 v6 v7")
    meridian = borromean_system.cusp_equations[0]
    assert dict(((t, c), e) for t, c, e in meridian.factors()) == {(4, "z"): 1, (5, "v"): -1}
    assert meridian.describe() == "z4 / v5"


def test_invariants_at_solution(borromean_system, borromean_shapes):
    for eq in borromean_system.equations:
        assert abs(E.holonomy_invariant(eq, borromean_shapes) - 1) < 1e-12
    for eq in borromean_system.edge_equations:
        assert abs(E.angle_sum(eq, borromean_shapes) - 2 * math.pi) < 1e-12
    for eq in borromean_system.cusp_equations:
        assert abs(E.angle_sum(eq, borromean_shapes)) < 1e-12
    assert np.max(np.abs(E.residuals(borromean_system, borromean_shapes))) < 1e-12


def test_second_cusp0_curve_halves(borromean_system, borromean_shapes):
    # numerator and denominator of w4 w1 v7 v0 / (v3 w6 z2 z5) are both -1
    s = borromean_shapes
    num = s[4].w * s[1].w * s[7].v * s[0].v
    den = s[3].v * s[6].w * s[2].z * s[5].z
    assert abs(num + 1) < 1e-12 and abs(den + 1) < 1e-12
    eq = _equation(borromean_system, "v0 w1 w4 v7 / z2 v3 z5 w6")
    assert abs(E.holonomy_invariant(eq, s) - 1) < 1e-12


def test_edge_corner_arguments(borromean_system, borromean_shapes):
    eq = _equation(borromean_system, "z0 w1 z2 w3 z4 z5 v6 v7")
    for t, c, e in eq.factors():
        assert abs(cmath.phase(borromean_shapes[t].corner(c)) - math.pi / 4) < 1e-12


def test_empty_product():
    eq = GluingEquation("cusp", ((0, 0, 0),), 0.0, "empty")
    assert E.holonomy_invariant(eq, ShapeAssignment.from_z([1j])) == 1


def test_figure8_all_i_residual(figure8_system):
    """Compare the log-form residual with direct evaluation of its definition."""
    z = np.array([1j, 1j])
    r = E.residuals(figure8_system, z)
    s = ShapeAssignment.from_z(z)
    for eq, got in zip(figure8_system.equations, r):
        want = sum(e * cmath.log(s[t].corner(c)) for t, c, e in eq.factors()) - 1j * eq.target_arg
        assert abs(got - want) < 1e-12
    # at z = i the corners have arguments pi/2, pi/4, pi/4 so no edge closes up
    assert all(abs(x) > 0.1 for x in r[:2])


def test_jacobian_examples():
    sys1 = EquationSystem((GluingEquation("edge", ((1, 0, 0),), 0.0, "z"),), 1)
    assert abs(E.jacobian(sys1, [1j])[0, 0] - (-1j)) < 1e-15
    sys2 = EquationSystem((GluingEquation("edge", ((0, 1, 0),), 0.0, "v"),), 1)
    assert abs(E.jacobian(sys2, [1 + 1j])[0, 0] - 1j) < 1e-15


def test_jacobian_matches_central_differences():
    rng = np.random.default_rng(3)
    h = 1e-6
    worst = 0.0
    for _ in range(100):
        n = int(rng.integers(1, 6))
        m = int(rng.integers(1, 8))
        eqs = tuple(GluingEquation("edge", tuple(map(tuple, rng.integers(-2, 3, (n, 3)))), 0.0, "r")
                    for _ in range(m))
        sys_ = EquationSystem(eqs, n)
        z = rng.uniform(-2, 2, n) + 1j * rng.uniform(0.3, 2, n)
        J = E.jacobian(sys_, z)
        for k in range(n):
            dz = np.zeros(n, complex)
            dz[k] = h
            fd = (E.residuals(sys_, z + dz) - E.residuals(sys_, z - dz)) / (2 * h)
            worst = max(worst, float(np.max(np.abs(fd - J[:, k]))))
    assert worst < 1e-5


def test_log_form_consistent_with_products(borromean_system):
    rng = np.random.default_rng(5)
    for _ in range(50):
        z = rng.uniform(-2, 2, 8) + 1j * rng.uniform(0.2, 2, 8)
        s = ShapeAssignment.from_z(z)
        r = E.residuals(borromean_system, z)
        for eq, x in zip(borromean_system.equations, r):
            assert abs(cmath.exp(x) - E.holonomy_invariant(eq, s)) < 1e-9 * abs(E.holonomy_invariant(eq, s))
            assert abs(x.imag + eq.target_arg - E.angle_sum(eq, s)) < 1e-12


def test_residuals_reject_lower_half_plane(figure8_system):
    with pytest.raises(DegenerateShapeError):
        E.residuals(figure8_system, [1j, -1j])


def test_missing_curves(borromean):
    t, curves = borromean
    with pytest.raises(ValueError, match="two curves"):
        E.build_system(t, [c for c in curves if c.cusp != 2])
    assert len(cusp_classes(t)) == 3
