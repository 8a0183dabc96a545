import cmath
import time

import numpy as np
import pytest

from hypgluing import equations as E
from hypgluing.equations import EquationSystem, GluingEquation
from hypgluing.solver import SolverConfig, SolverError, solve

from conftest import BORROMEAN_Z, REGULAR


def test_borromean_default_seed(borromean_system):
    t0 = time.perf_counter()
    rep = solve(borromean_system)
    elapsed = time.perf_counter() - t0
    assert rep.iterations < 50
    assert elapsed < 1.0
    assert rep.geometric
    assert max(abs(a - b) for a, b in zip(rep.shapes.z, BORROMEAN_Z)) < 1e-9
    assert rep.final_residual < 1e-12


def test_figure8_default_seed(figure8_system):
    rep = solve(figure8_system)
    assert all(abs(z - REGULAR) < 1e-9 for z in rep.shapes.z)


def test_already_solved_seed(borromean_system):
    rep = solve(borromean_system, SolverConfig(initial=BORROMEAN_Z))
    assert rep.iterations <= 2
    assert rep.final_residual < 1e-12


def test_history_monotone(borromean_system, figure8_system):
    for sys_ in (borromean_system, figure8_system):
        h = solve(sys_).history
        assert all(b <= a for a, b in zip(h, h[1:]))
        assert len(h) == solve(sys_).iterations + 1


def test_deterministic(borromean_system):
    a = solve(borromean_system)
    b = solve(borromean_system)
    assert a.shapes.z == b.shapes.z and a.history == b.history


@pytest.mark.parametrize("seed", [0.3 + 0.6j, -0.5 + 1.5j, 2 + 0.4j])
def test_other_seeds_reach_structure(figure8_system, seed):
    rep = solve(figure8_system, SolverConfig(initial=(seed,)))
    assert np.max(np.abs(E.residuals(figure8_system, rep.shapes))) < 1e-10
    if rep.geometric:
        assert all(abs(z - REGULAR) < 1e-9 for z in rep.shapes.z)


def test_iteration_cap(borromean_system):
    with pytest.raises(SolverError) as info:
        solve(borromean_system, SolverConfig(max_iters=1))
    assert info.value.iterations == 1
    assert info.value.residual > 0


def test_unsolvable_system():
    # arg z = 2 pi has no solution with z in the upper half-plane
    sys_ = EquationSystem((GluingEquation("edge", ((1, 0, 0),), 2 * cmath.pi, "bad"),), 1)
    with pytest.raises(SolverError):
        solve(sys_)


def test_config_validation():
    with pytest.raises(ValueError):
        SolverConfig(tol=0)
    with pytest.raises(ValueError):
        SolverConfig(damping=1.0)
    with pytest.raises(ValueError):
        SolverConfig(initial=(1j, 1j)).seed(3)
    with pytest.raises(SolverError):
        solve(EquationSystem((), 1), SolverConfig(initial=(-1j,)))
