"""Unitary propagation in both pictures and exact expectation derivatives.

Propagators are built from a single eigendecomposition of the Hamiltonian
(diagonalize once, exponentiate phases per sample), and derivatives of
expectation values come from the commutator identity, never from finite
differences, so quadrature is the only discretization error downstream.
hbar = 1 throughout.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np

from .linalg import as_complex_matrix, commutator, hermitian_eig, require_hermitian
from .states import moments, require_state

UNITARITY_ATOL = 1e-10

# Default sampling density for bound integrals.
STEPS_PER_UNIT_TIME = 2000
MIN_GRID_STEPS = 16


@dataclass(frozen=True)
class TimeGrid:
    """Uniform time samples on [0, t_max] with n_steps intervals."""

    t_max: float
    n_steps: int
    points: np.ndarray = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if not (self.t_max > 0.0 and math.isfinite(self.t_max)):
            raise ValueError(f"t_max must be positive and finite, got {self.t_max!r}")
        if int(self.n_steps) != self.n_steps or self.n_steps < 2:
            raise ValueError(f"n_steps must be an integer >= 2, got {self.n_steps!r}")
        object.__setattr__(self, "n_steps", int(self.n_steps))
        object.__setattr__(
            self, "points", np.linspace(0.0, self.t_max, self.n_steps + 1)
        )

    @property
    def dx(self) -> float:
        return self.t_max / self.n_steps

    @classmethod
    def with_resolution(
        cls, t_max: float, steps_per_unit: int = STEPS_PER_UNIT_TIME
    ) -> "TimeGrid":
        """Grid with ~steps_per_unit intervals per unit time, even count."""
        n = max(MIN_GRID_STEPS, math.ceil(t_max * steps_per_unit))
        return cls(t_max, n + n % 2)


@dataclass(frozen=True)
class OperatorTrajectory:
    """Sampled mean, spread and exact time derivative of one observable."""

    grid: TimeGrid
    means: np.ndarray
    std_devs: np.ndarray
    derivatives: np.ndarray

    def __post_init__(self):
        n = self.grid.points.size
        for name in ("means", "std_devs", "derivatives"):
            arr = np.asarray(getattr(self, name), dtype=float)
            if arr.shape != (n,):
                raise ValueError(f"{name} must have one entry per grid point")
            object.__setattr__(self, name, arr)


def propagator_family(h) -> Callable[[float], np.ndarray]:
    """U(t) = exp(-iHt) factory from one eigendecomposition of ``h``."""
    vals, vecs = hermitian_eig(h)
    vecs_h = vecs.conj().T

    def u_of_t(t: float) -> np.ndarray:
        return (vecs * np.exp(-1j * vals * t)) @ vecs_h

    return u_of_t


def propagator(h, t: float) -> np.ndarray:
    """Unitary exp(-iHt)."""
    if not math.isfinite(t):
        raise ValueError(f"time must be finite, got {t!r}")
    return propagator_family(h)(t)


def _require_unitary(u) -> np.ndarray:
    a = as_complex_matrix(u)
    defect = np.max(np.abs(a.conj().T @ a - np.eye(a.shape[0])))
    if defect > UNITARITY_ATOL:
        raise ValueError(f"matrix is not unitary: defect {defect:.3e}")
    return a


def evolve_state(u, psi) -> np.ndarray:
    """Schroedinger step |psi> -> U|psi> (norm preserved)."""
    a = _require_unitary(u)
    v = require_state(psi)
    if a.shape[0] != v.size:
        raise ValueError("dimension mismatch between propagator and state")
    return a @ v


def heisenberg_evolve(u, obs) -> np.ndarray:
    """Heisenberg step O -> U^dag O U (spectrum preserved)."""
    a = _require_unitary(u)
    o = require_hermitian(obs)
    if a.shape != o.shape:
        raise ValueError("dimension mismatch between propagator and observable")
    return a.conj().T @ o @ a


def expectation_derivative(h, obs_t, psi) -> float:
    """d<O>/dt = i <psi| [H, O(t)] |psi>, evaluated exactly.

    Both pictures share this form: in the Heisenberg picture O(t) evolves,
    in the Schroedinger picture ``psi`` is the evolved state and O(t) the
    frozen current operator.
    """
    hm = require_hermitian(h)
    o = require_hermitian(obs_t)
    v = require_state(psi)
    if hm.shape != o.shape or hm.shape[0] != v.size:
        raise ValueError("dimension mismatch in expectation derivative")
    return float((1j * np.vdot(v, commutator(hm, o) @ v)).real)


def track_observable(h, obs0, psi, grid: TimeGrid) -> OperatorTrajectory:
    """Sample mean, spread and derivative of a Heisenberg-evolved observable."""
    hm = require_hermitian(h)
    o0 = require_hermitian(obs0)
    v = require_state(psi)
    if hm.shape != o0.shape or hm.shape[0] != v.size:
        raise ValueError("dimension mismatch in track_observable")
    u_of_t = propagator_family(hm)
    n = grid.points.size
    means = np.empty(n)
    stds = np.empty(n)
    derivs = np.empty(n)
    for k, t in enumerate(grid.points):
        u = u_of_t(t)
        o_t = u.conj().T @ o0 @ u
        m = moments(o_t, v)
        means[k] = m.mean
        stds[k] = m.std_dev
        derivs[k] = expectation_derivative(hm, o_t, v)
    return OperatorTrajectory(grid, means, stds, derivs)
