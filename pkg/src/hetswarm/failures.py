"""Failure catalog and per-agent failure effects.

One :class:`FailureMode` kind per row of the failure-mode mitigation table:
agent loss, communication jamming, GPS denial, sensor degradation and energy
depletion. A mode fires once, at the step equal to its onset, and its effect
persists in the agent state afterwards.
"""

from __future__ import annotations

import dataclasses
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING

if TYPE_CHECKING:
    from hetswarm.model import AgentSpec, AgentState


class FailureKind(str, Enum):
    AGENT_LOSS = "agent-loss"
    COMM_JAM = "comm-jam"
    SENSOR_DEGRADATION = "sensor-degradation"
    GPS_DENIAL = "gps-denial"
    ENERGY_DEPLETION = "energy-depletion"


# failure kind -> (most vulnerable swarm type, heterogeneity mitigation)
MITIGATIONS: dict[FailureKind, tuple[str, str]] = {
    FailureKind.AGENT_LOSS: (
        "Hardware-specialized swarms",
        "Dynamic role reassignment (nature-based)",
    ),
    FailureKind.COMM_JAM: (
        "Centralized, flat topologies",
        "Relay hierarchy; learned jamming-resistant policies",
    ),
    FailureKind.GPS_DENIAL: (
        "Vision/GPS-dependent systems",
        "Multi-modal SLAM; sensor-diverse hardware",
    ),
    FailureKind.SENSOR_DEGRADATION: (
        "Single-modality systems",
        "Cross-modal sensing redundancy",
    ),
    FailureKind.ENERGY_DEPLETION: (
        "Aerial-only swarms",
        "Surface/ground charging platforms",
    ),
}


@dataclass(frozen=True)
class FailureMode:
    """A scheduled failure.

    ``multiplier`` scales communication radii (comm-jam), sensing radii
    (sensor-degradation) or remaining energy (energy-depletion); ``sigma`` is
    the GPS-denial position noise in cells; ``ids`` and ``classes`` select
    the affected agents for agent-loss and sensor-degradation (an empty
    ``classes`` degrades every class).
    """

    kind: FailureKind
    onset: int = 0
    ids: tuple[int, ...] = ()
    multiplier: float = 0.0
    classes: tuple[str, ...] = ()
    sigma: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", FailureKind(self.kind))
        object.__setattr__(self, "ids", tuple(int(i) for i in self.ids))
        object.__setattr__(self, "classes", tuple(str(c) for c in self.classes))

    @property
    def label(self) -> str:
        return f"{self.kind.value}@{self.onset}"

    def check(self, agent_ids: set[int], agent_classes: set[str]) -> list[str]:
        problems = []
        where = f"failure {self.label}"
        # onsets past the horizon are legal no-ops
        if not 0 <= self.onset:
            problems.append(f"{where}: onset must be >= 0")
        if self.kind is FailureKind.AGENT_LOSS:
            if not self.ids:
                problems.append(f"{where}: agent-loss needs at least one id")
            missing = sorted(set(self.ids) - agent_ids)
            if missing:
                problems.append(f"{where}: unknown agent id(s) {missing}")
        if self.kind in (
            FailureKind.COMM_JAM,
            FailureKind.SENSOR_DEGRADATION,
            FailureKind.ENERGY_DEPLETION,
        ) and not 0.0 <= self.multiplier < 1.0:
            problems.append(f"{where}: multiplier must lie in [0, 1)")
        if self.kind is FailureKind.SENSOR_DEGRADATION:
            missing_cls = sorted(set(self.classes) - agent_classes)
            if missing_cls:
                problems.append(f"{where}: no agents of class {missing_cls}")
        if self.kind is FailureKind.GPS_DENIAL and not self.sigma > 0.0:
            problems.append(f"{where}: gps-denial sigma must be positive")
        return problems

    def affects(self, spec: AgentSpec) -> bool:
        if self.kind is FailureKind.AGENT_LOSS:
            return spec.id in self.ids
        if self.kind is FailureKind.SENSOR_DEGRADATION:
            # no class filter means every class
            return not self.classes or spec.agent_class.value in self.classes
        return True


def apply_failure(state: AgentState, spec: AgentSpec, mode: FailureMode, t: int) -> AgentState:
    """Return ``state`` with ``mode`` applied if it fires at step ``t``.

    Modes fire exactly when ``t == mode.onset``; callers visit every step so
    the effect is applied once and carried forward by the state.
    """
    if t != mode.onset or not state.alive or not mode.affects(spec):
        return state
    kind = mode.kind
    if kind is FailureKind.AGENT_LOSS:
        return dataclasses.replace(state, alive=False, velocity=(0.0, 0.0))
    if kind is FailureKind.COMM_JAM:
        return dataclasses.replace(state, comm_radius=state.comm_radius * mode.multiplier)
    if kind is FailureKind.SENSOR_DEGRADATION:
        return dataclasses.replace(
            state, sensing_radius=state.sensing_radius * mode.multiplier
        )
    if kind is FailureKind.GPS_DENIAL:
        return dataclasses.replace(state, gps_sigma=max(state.gps_sigma, mode.sigma))
    # energy depletion
    energy = state.energy * mode.multiplier
    if energy <= 0.0:
        return dataclasses.replace(state, energy=0.0, alive=False, velocity=(0.0, 0.0))
    return dataclasses.replace(state, energy=energy)
