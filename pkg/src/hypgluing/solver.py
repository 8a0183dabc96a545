"""Damped Newton least-squares solver for the gluing system."""

from __future__ import annotations

import logging
from dataclasses import dataclass, field

import numpy as np

from .equations import EquationSystem, jacobian, residuals
from .shapes import ShapeAssignment

__all__ = ["SolverConfig", "SolveReport", "SolverError", "solve"]

log = logging.getLogger(__name__)


class SolverError(RuntimeError):
    def __init__(self, message, iterations=None, residual=None):
        super().__init__(message)
        self.iterations = iterations
        self.residual = residual


@dataclass(frozen=True)
class SolverConfig:
    max_iters: int = 100
    tol: float = 1e-12
    damping: float = 0.5
    max_halvings: int = 30
    initial: tuple[complex, ...] | None = None  # None means every shape starts at i

    def __post_init__(self):
        if not self.tol > 0:
            raise ValueError("tol must be positive")
        if not 0 < self.damping < 1:
            raise ValueError("damping must lie strictly between 0 and 1")
        if self.max_iters < 0:
            raise ValueError("max_iters must be non-negative")

    def seed(self, n_tets: int) -> np.ndarray:
        if self.initial is None:
            return np.full(n_tets, 1j)
        if len(self.initial) == 1:
            return np.full(n_tets, complex(self.initial[0]))
        if len(self.initial) != n_tets:
            raise ValueError(f"seed has {len(self.initial)} shapes, expected {n_tets}")
        return np.array(self.initial, dtype=complex)


@dataclass(frozen=True)
class SolveReport:
    shapes: ShapeAssignment
    iterations: int
    final_residual: float
    geometric: bool
    history: tuple[float, ...] = field(default=(), repr=False)


def solve(sys: EquationSystem, cfg: SolverConfig | None = None) -> SolveReport:
    """Newton iteration on the log-form system, steps from ``lstsq``.

    A step is halved until it keeps every shape in the open upper
    half-plane and does not increase the residual norm.
    """
    cfg = cfg or SolverConfig()
    z = cfg.seed(sys.n_tets)
    if np.any(z.imag <= 0):
        raise SolverError("initial shapes must lie in the upper half-plane")
    r = residuals(sys, z)
    norm = float(np.linalg.norm(r))
    history = [norm]
    it = 0
    while norm > cfg.tol:
        if it >= cfg.max_iters:
            raise SolverError(
                f"no convergence after {it} iterations (residual {norm:.3e})", it, norm)
        J = jacobian(sys, z)
        step = np.linalg.lstsq(J, -r, rcond=None)[0]
        t = 1.0
        for _ in range(cfg.max_halvings + 1):
            trial = z + t * step
            if np.all(trial.imag > 0):
                r_trial = residuals(sys, trial)
                n_trial = float(np.linalg.norm(r_trial))
                if n_trial <= norm:
                    break
            t *= cfg.damping
        else:
            raise SolverError(
                f"step collapse at iteration {it + 1} (residual {norm:.3e})", it, norm)
        it += 1
        if n_trial == norm:
            # no progress possible at this precision
            z, r = trial, r_trial
            history.append(n_trial)
            if norm > cfg.tol:
                raise SolverError(
                    f"stalled at residual {norm:.3e} after {it} iterations", it, norm)
            break
        z, r, norm = trial, r_trial, n_trial
        history.append(norm)
        log.debug("iteration %d: residual %.3e, step scale %g", it, norm, t)
    shapes = ShapeAssignment.from_z(z)
    return SolveReport(shapes, it, norm, shapes.geometric, tuple(history))
