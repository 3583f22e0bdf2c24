"""Acceptance suite: one test per criterion, each printing a PASS line.

Run with ``pytest tests/test_acceptance.py -v -s`` to see the per-criterion
lines.  Preset curves are computed once per session at default resolution
(2000 grid steps per unit time) and shared across criteria.
"""

import math
import time

import numpy as np
import pytest
from conftest import random_hermitian, random_state

from qslbound.bounds import (
    correction_r,
    entanglement_rate_bound,
    norm_rate_comparison,
    qsl_integral,
    uncertainty_check,
)
from qslbound.cli import main
from qslbound.dynamics import (
    TimeGrid,
    expectation_derivative,
    propagator_family,
    track_observable,
)
from qslbound.linalg import IDENTITY_2, SIGMA_X, SIGMA_Z, tensor_product
from qslbound.measures import modular_hamiltonian
from qslbound.presets import PRESETS, build_preset_curves
from qslbound.scenarios import (
    BatteryScenario,
    entanglement_closed_form_reports,
    ergotropy_closed_form,
    ergotropy_closed_form_report,
    ergotropy_trajectory,
    initial_schmidt_state,
    modular_closed_form_reports,
    run_battery_scenario,
)
from qslbound.states import (
    DegenerateObservableError,
    moments,
    reduced_state,
    require_state,
)

PLUS = np.array([1.0, 1.0], dtype=complex) / np.sqrt(2.0)


@pytest.fixture(scope="session")
def preset_curves():
    """All preset curves at default resolution, with wall-clock timings."""
    curves, timings = {}, {}
    for name in sorted(PRESETS):
        start = time.monotonic()
        curves[name] = build_preset_curves(name)
        timings[name] = time.monotonic() - start
    return curves, timings


def report(line):
    print(f"\nACCEPTANCE {line}")


def test_criterion_1_hierarchy_all_presets(preset_curves):
    """T >= t_sqslo >= t_qslo on every grid prefix of every preset."""
    curves, timings = preset_curves
    worst_gap = -math.inf
    for name, entries in curves.items():
        assert timings[name] < 60.0, f"preset {name} took {timings[name]:.1f}s"
        for label, _, curve in entries:
            ts = curve.grid.points
            tol = max(1e-6, 2.0 * curve.quad_error)
            assert np.all(curve.t_sqslo <= ts + tol), f"{name}/{label}: t_sqslo > T"
            assert np.all(
                curve.t_sqslo >= curve.t_qslo - 1e-9
            ), f"{name}/{label}: t_sqslo < t_qslo"
            worst_gap = max(worst_gap, float(np.max(curve.t_sqslo - ts)))
    report(
        "criterion 1 PASS: hierarchy holds for all presets "
        f"(worst t_sqslo - T = {worst_gap:.2e}, slowest preset "
        f"{max(timings.values()):.1f}s)"
    )


def test_criterion_2_entanglement_improvement(preset_curves):
    """The corrected bound strictly improves on the plain one."""
    curves, _ = preset_curves
    _, _, curve = curves["fig2"][0]
    assert np.all(curve.t_sqslo[1:] > curve.t_qslo[1:])
    ratio = float(curve.t_sqslo[-1] / curve.t_qslo[-1])
    assert ratio > 1.05
    report(
        "criterion 2 PASS: corrected bound strictly tighter at every interior "
        f"point; ratio at T=1 is {ratio:.3f} (> 1.05)"
    )


def test_criterion_3_modular_saturation(preset_curves):
    """Modular-energy bound sits on the diagonal within 2%."""
    curves, _ = preset_curves
    worst = 0.0
    for label, params, curve in curves["fig6"]:
        ts = curve.grid.points
        mask = ts >= 0.05
        rel = np.abs(curve.t_sqslo[mask] - ts[mask]) / ts[mask]
        worst = max(worst, float(np.max(rel)))
    assert worst <= 0.02
    report(
        "criterion 3 PASS: modular bound saturated for theta in {0.5, 1.0} "
        f"(max relative gap {worst:.2e})"
    )


def test_criterion_4_battery_saturation_and_overlap(preset_curves):
    """Battery bound saturates; coupled/decoupled overlap; plain bounds of
    parallel and collective charging coincide."""
    curves, _ = preset_curves
    by_label = {label: curve for label, _, curve in curves["fig7"]}
    worst = 0.0
    for label in ("coupled", "decoupled"):
        curve = by_label[label]
        ts = curve.grid.points
        mask = ts >= 0.05
        worst = max(
            worst, float(np.max(np.abs(curve.t_sqslo[mask] - ts[mask]) / ts[mask]))
        )
    assert worst <= 0.02
    a, b = by_label["coupled"], by_label["decoupled"]
    mask = a.grid.points >= 0.05
    overlap = float(
        np.max(np.abs(a.t_sqslo[mask] - b.t_sqslo[mask]) / a.grid.points[mask])
    )
    assert overlap <= 0.02

    grid = TimeGrid.with_resolution(2.0)
    parallel = run_battery_scenario(
        BatteryScenario(omega=2.0, big_omega=1.0, j=0.0, mode="parallel", grid=grid)
    )
    collective = run_battery_scenario(
        BatteryScenario(omega=2.0, big_omega=1.0, j=1.0, mode="collective", grid=grid)
    )
    qslo_gap = float(np.max(np.abs(parallel.t_qslo - collective.t_qslo)))
    assert qslo_gap <= 1e-8
    report(
        "criterion 4 PASS: battery saturation within 2% "
        f"(worst {worst:.2e}), coupled/decoupled overlap {overlap:.2e}, "
        f"parallel-vs-collective plain-bound gap {qslo_gap:.2e}"
    )


def test_criterion_5_closed_form_oracles():
    """Closed forms agree with the numeric pipelines to 1e-8 on 2000-point
    grids; stored energy peaks at 1.6 and never exceeds 4*omega."""
    grid1 = TimeGrid(1.0, 2000)
    grid2 = TimeGrid(2.0, 2000)
    worst = 0.0
    for p in (0.1, 0.3, 0.4):
        for theta in (0.5, 1.0):
            for rep in entanglement_closed_form_reports(p, theta, grid1):
                worst = max(worst, rep.max_abs_error)
            for rep in modular_closed_form_reports(p, theta, grid1):
                worst = max(worst, rep.max_abs_error)
    for omega, big_omega, j in ((2.0, 1.0, 1.0), (2.0, 4.0, 1.0), (2.0, 1.0, 0.0)):
        rep = ergotropy_closed_form_report(omega, big_omega, j, grid2)
        worst = max(worst, rep.max_abs_error)
        assert np.max(rep.numeric) <= 4.0 * omega + 1e-9
    assert worst <= 1e-8

    t_star = math.pi / (2.0 * math.sqrt(5.0))
    assert ergotropy_closed_form(2.0, 1.0, t_star) == pytest.approx(1.6, abs=1e-12)
    traj = ergotropy_trajectory(
        BatteryScenario(omega=2.0, big_omega=1.0, j=1.0, grid=TimeGrid(t_star, 100))
    )
    assert traj.means[-1] == pytest.approx(1.6, abs=1e-8)
    report(
        "criterion 5 PASS: closed forms match pipelines to "
        f"{worst:.2e}; stored-energy peak 1.6 and cap 4*omega respected"
    )


def test_criterion_6_uncertainty_fuzzing():
    """Relation holds for the observable-built perpendicular state and
    saturates for the optimal one, over 1000 random draws per dimension."""
    rng = np.random.default_rng(2024)
    start = time.monotonic()
    worst_violation = -math.inf
    worst_saturation = 0.0
    for d in (2, 4, 8):
        checked = 0
        while checked < 1000:
            a = random_hermitian(rng, d)
            b = random_hermitian(rng, d)
            psi = random_state(rng, d)
            try:
                plain = uncertainty_check(a, b, psi)
                optimal = uncertainty_check(a, b, psi, perp="optimal")
            except DegenerateObservableError:
                continue
            worst_violation = max(worst_violation, plain.rhs - plain.lhs)
            worst_saturation = max(worst_saturation, abs(optimal.lhs - optimal.rhs))
            checked += 1
    elapsed = time.monotonic() - start
    assert worst_violation <= 1e-9
    assert worst_saturation <= 1e-8
    assert elapsed < 30.0
    report(
        "criterion 6 PASS: 3000 random pairs, worst violation "
        f"{worst_violation:.2e}, worst optimal-branch gap {worst_saturation:.2e}, "
        f"{elapsed:.1f}s"
    )


def test_criterion_7_single_qubit_sanity():
    """t_qslo(T) = T within 1e-6 for the plain bound of a precessing spin."""
    grid = TimeGrid.with_resolution(math.pi / 4.0)
    traj = track_observable(SIGMA_Z, SIGMA_X, PLUS, grid)
    curve = qsl_integral(traj, None, moments(SIGMA_Z, PLUS).std_dev)
    worst = float(np.max(np.abs(curve.t_qslo - grid.points)))
    assert worst <= 1e-6
    report(f"criterion 7 PASS: plain bound saturates for sigma_x under sigma_z "
           f"(max |t_qslo - T| = {worst:.2e})")


def test_criterion_8_entanglement_rate_bound():
    """|d entropy/dt| <= 2 sqrt(C_E) dH (1 - r) at every healthy sample, and
    never exceeds the coarse 2 ||H|| log 2 cap."""
    p, theta = 0.1, 1.0
    grid = TimeGrid.with_resolution(1.0)
    psi0 = initial_schmidt_state(p)
    h = theta * tensor_product(SIGMA_X, SIGMA_X)
    u_of_t = propagator_family(h)
    delta_h = moments(h, psi0).std_dev
    cap = 2.0 * norm_rate_comparison(h, 2)
    worst_excess = -math.inf
    worst_cap = -math.inf
    healthy = 0
    for t in grid.points:
        psi_t = require_state(u_of_t(t) @ psi0)
        rho_a = reduced_state(psi_t, (2, 2), "A")
        k_ab = tensor_product(modular_hamiltonian(rho_a), IDENTITY_2)
        m = moments(k_ab, psi_t)
        gamma = expectation_derivative(h, k_ab, psi_t)
        worst_cap = max(worst_cap, abs(gamma) - cap)
        try:
            sample = correction_r(k_ab, h, psi_t)
        except DegenerateObservableError:
            continue
        bound = entanglement_rate_bound(m.variance, delta_h, sample.r)
        worst_excess = max(worst_excess, abs(gamma) - bound)
        healthy += 1
    assert healthy > 0.99 * grid.points.size
    assert worst_excess <= 1e-9
    assert worst_cap <= 1e-9
    report(
        f"criterion 8 PASS: rate bound holds at {healthy} samples "
        f"(worst excess {worst_excess:.2e}); norm cap respected"
    )


def test_criterion_9_determinism(tmp_path):
    """Every preset emits byte-identical CSV across two CLI runs."""
    for name, preset in sorted(PRESETS.items()):
        outputs = []
        for attempt in ("one", "two"):
            out = tmp_path / attempt / f"{name}.csv"
            out.parent.mkdir(exist_ok=True)
            code = main(
                [preset.kind, "--preset", name, "--out", str(out)]
            )
            assert code == 0
            files = sorted(out.parent.glob("*.csv"))
            outputs.append({f.name: f.read_bytes() for f in files})
            for f in files:
                f.unlink()
        assert outputs[0].keys() == outputs[1].keys()
        for key in outputs[0]:
            assert outputs[0][key] == outputs[1][key], f"{name}/{key} differs"
    report("criterion 9 PASS: byte-identical CSV for every preset across two runs")
