"""Canonical figure-reproduction runs for the bundled case studies."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .bounds import BoundCurve
from .dynamics import TimeGrid
from .scenarios import (
    BatteryScenario,
    EntanglementScenario,
    run_battery_scenario,
    run_entanglement_scenario,
    run_modular_scenario,
)


@dataclass(frozen=True)
class PresetRun:
    """One curve of a preset: a label plus the scenario parameters."""

    label: Optional[str]
    params: dict
    t_max: float


@dataclass(frozen=True)
class Preset:
    kind: str
    runs: tuple[PresetRun, ...]


PRESETS: dict[str, Preset] = {
    "fig2": Preset(
        "entanglement",
        (PresetRun(None, {"p": 0.1, "theta": 1.0, "mu3": 0.0}, 1.0),),
    ),
    "fig3": Preset(
        "entanglement",
        tuple(
            PresetRun(f"theta{theta:g}", {"p": 0.1, "theta": theta, "mu3": 0.0}, 1.0)
            for theta in (0.5, 1.0, 1.5, 2.0)
        ),
    ),
    "fig5": Preset(
        "modular",
        (PresetRun(None, {"p": 0.1, "theta": 1.0, "mu3": 0.0}, 1.0),),
    ),
    "fig6": Preset(
        "modular",
        tuple(
            PresetRun(f"theta{theta:g}", {"p": 0.1, "theta": theta, "mu3": 0.0}, 1.0)
            for theta in (0.5, 1.0)
        ),
    ),
    "fig7": Preset(
        "battery",
        (
            PresetRun("coupled", {"omega": 2.0, "Omega": 1.0, "J": 1.0, "mode": "coupled"}, 2.0),
            PresetRun("decoupled", {"omega": 2.0, "Omega": 4.0, "J": 1.0, "mode": "decoupled"}, 2.0),
        ),
    ),
    "fig8": Preset(
        "battery",
        (
            PresetRun("coupled", {"omega": 2.0, "Omega": 1.0, "J": 1.0, "mode": "coupled"}, 6.0),
            PresetRun("decoupled", {"omega": 2.0, "Omega": 4.0, "J": 1.0, "mode": "decoupled"}, 6.0),
        ),
    ),
}


def build_scenario(kind: str, params: dict, grid: TimeGrid):
    if kind in ("entanglement", "modular"):
        return EntanglementScenario(
            p=params["p"], theta=params["theta"], mu3=params.get("mu3", 0.0), grid=grid
        )
    if kind == "battery":
        return BatteryScenario(
            omega=params["omega"],
            big_omega=params["Omega"],
            j=params["J"],
            mode=params.get("mode", "collective"),
            angles=params.get("angles", (0.0, 0.0, 0.0, 0.0)),
            grid=grid,
        )
    raise ValueError(f"unknown scenario kind {kind!r}")


def run_scenario(kind: str, scenario) -> BoundCurve:
    runner = {
        "entanglement": run_entanglement_scenario,
        "modular": run_modular_scenario,
        "battery": run_battery_scenario,
    }[kind]
    return runner(scenario)


def build_preset_curves(
    name: str, n_steps: Optional[int] = None
) -> list[tuple[Optional[str], dict, BoundCurve]]:
    """All curves of a preset as (label, parameters, curve) triples."""
    preset = PRESETS[name]
    out = []
    for run in preset.runs:
        grid = (
            TimeGrid(run.t_max, n_steps)
            if n_steps is not None
            else TimeGrid.with_resolution(run.t_max)
        )
        scenario = build_scenario(preset.kind, run.params, grid)
        out.append((run.label, dict(run.params), run_scenario(preset.kind, scenario)))
    return out
