"""Hand-derived closed forms kept only as cross-check fixtures.

Nothing in the bound pipeline evaluates these; the verify suite and the
tests compare selected samples against them.  Each correction-factor form
below is a single fixed branch of the two-branch relation, so it is only
meaningful where its value lands in [0, 1]; comparisons restrict to those
samples.  Known issues are flagged where they occur:

* the decoupled-battery form (``r_battery_decoupled_printed``) carries
  frequencies of an (omega=2, Omega=2) configuration although it is labeled
  (omega=2, Omega=4); it is retained with a discrepancy marker;
* the first component of the entanglement perpendicular state was recorded
  with ``arctan`` where every other occurrence uses ``arctanh``; it is
  evaluated with ``arctanh`` here.
"""

from __future__ import annotations

import math

import numpy as np

SQRT5 = math.sqrt(5.0)
SQRT10 = math.sqrt(10.0)


def in_range(value: float, atol: float = 1e-12) -> bool:
    """Whether a fixed-branch correction value is usable for comparison."""
    return -atol <= value <= 1.0 + atol


def r_battery_coupled_printed(t: float) -> float:
    """Piecewise r(t) for the coupled battery (omega=2, Omega=1, j=1).

    Branch switches where sin(sqrt(5) t) changes sign, as printed.
    """
    amp = 2.0 * SQRT10 * math.cos(SQRT5 * t) / math.sqrt(9.0 + math.cos(2.0 * SQRT5 * t))
    if math.sin(SQRT5 * t) < 0.0:
        return 0.5 * (2.0 - amp)
    return 0.5 * (2.0 + amp)


def r_battery_coupled_branches(t: float) -> tuple[float, float]:
    """Both branch values of the coupled-battery form."""
    amp = 2.0 * SQRT10 * math.cos(SQRT5 * t) / math.sqrt(9.0 + math.cos(2.0 * SQRT5 * t))
    return 0.5 * (2.0 - amp), 0.5 * (2.0 + amp)


def r_battery_decoupled_printed(t: float) -> tuple[float, float]:
    """Both branch values of the recorded decoupled form (see module notes)."""
    amp = 4.0 * math.cos(2.0 * math.sqrt(2.0) * t) / math.sqrt(
        3.0 + math.cos(4.0 * math.sqrt(2.0) * t)
    )
    return 0.5 * (2.0 - amp), 0.5 * (2.0 + amp)


def r_battery_parallel_printed(t: float) -> float:
    """Single-branch r(t) recorded for the parallel battery (j=0, Omega=1,
    omega=2); exceeds 1 on half of each period."""
    s = math.sin(SQRT5 * t)
    if s == 0.0:
        return math.nan
    amp = (
        2.0
        * SQRT10
        * abs(s)
        * (math.cos(SQRT5 * t) / s)
        / math.sqrt(9.0 + math.cos(2.0 * SQRT5 * t))
    )
    return 0.5 * (2.0 + amp)


def r_entanglement_printed(p: float, theta: float, t: float) -> float:
    """Single-branch correction factor for the entanglement run."""
    alpha = (2.0 * p - 1.0) * math.cos(2.0 * theta * t)
    beta = -1.0 - 4.0 * p * (1.0 - p) + (1.0 - 2.0 * p) ** 2 * math.cos(
        4.0 * theta * t
    )
    at = math.atanh(alpha)
    numerator = (
        abs(
            np.sqrt(complex(-(at**2) * beta)) / math.sqrt(2.0)
            + at
            * math.copysign(1.0, (1.0 - 2.0 * p) * theta)
            * (
                -2.0j * math.sqrt(p * (1.0 - p)) * math.cos(2.0 * theta * t)
                - math.sin(2.0 * theta * t)
            )
        )
        ** 2
    )
    return float(numerator / abs(at**2 * beta))


def perp_entanglement_printed(p: float, theta: float, mu3: float, t: float) -> np.ndarray:
    """Perpendicular state for the entanglement run (arctanh throughout)."""
    arg = (-1.0 + 2.0 * p) * math.cos(2.0 * t * theta)
    at = math.atanh(arg)
    den = np.sqrt(
        complex(
            -(at**2)
            * (-1.0 + 4.0 * (-1.0 + p) * p + (1.0 - 2.0 * p) ** 2 * math.cos(4.0 * t * theta))
        )
    )
    phase = np.exp(-1j * t * mu3)
    c1 = (
        math.sqrt(2.0)
        * phase
        * at
        * (-1.0 + arg)
        * (math.sqrt(p) * math.cos(t * theta) - 1j * math.sqrt(1.0 - p) * math.sin(t * theta))
        / den
    )
    c4 = (
        math.sqrt(2.0)
        * phase
        * at
        * (1.0 + arg)
        * (math.sqrt(1.0 - p) * math.cos(t * theta) - 1j * math.sqrt(p) * math.sin(t * theta))
        / den
    )
    return np.array([c1, 0.0, 0.0, c4], dtype=complex)


def perp_modular_printed(p: float, theta: float, t: float) -> np.ndarray:
    """Perpendicular state for the modular-energy run."""
    g = math.log(-1.0 + 1.0 / p)
    c2 = math.cos(2.0 * theta * t)
    s2 = math.sin(2.0 * theta * t)
    quad = g * g * (-4.0 * (-1.0 + p) * p * c2 * c2 + s2 * s2)
    c1 = (
        g
        * (-2.0 * (-1.0 + p) * math.sqrt(p) * c2 - 1j * math.sqrt(1.0 - p) * s2)
        / math.sqrt(quad)
    )
    c4 = (
        g
        * (-2.0 * math.sqrt((1.0 - p) * p) * c2 + 1j * s2)
        / math.sqrt(quad / p)
    )
    return np.array([c1, 0.0, 0.0, c4], dtype=complex)


def perp_battery_coupled_printed(t: float) -> np.ndarray:
    """Perpendicular state for the coupled battery (omega=2, Omega=1, j=1)."""
    num = (
        2.0
        - 2.0 * math.cos(2.0 * SQRT5 * t)
        - 1j * SQRT5 * math.sin(2.0 * SQRT5 * t)
    )
    den = 2.0 * abs(math.sin(SQRT5 * t)) * math.sqrt(9.0 + math.cos(2.0 * SQRT5 * t))
    z = num / den
    return np.array([0.0, z, z, 0.0], dtype=complex)
