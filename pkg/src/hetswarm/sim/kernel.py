"""Step loop for the coverage, mapping and relay-reach experiments."""

from __future__ import annotations

import dataclasses
import math
from typing import Sequence

import numpy as np

from hetswarm.failures import FailureKind, apply_failure
from hetswarm.model import (
    AgentClass,
    AgentSpec,
    AgentState,
    DisturbanceKind,
    Experiment,
    GridWorld,
    MetricSeries,
    Point,
    PolicyKind,
    Role,
    Scenario,
    validate_scenario,
)
from hetswarm.sim.comm import build_comm_graph, connected_set, mission_reach
from hetswarm.sim.fields import (
    CoverageField,
    KnowledgeMap,
    coverage_ratio,
    covered_set_update,
    knowledge_update,
    map_quality,
)
from hetswarm.sim.policies import CompiledPolicy, clip_speed, compile_policy, speed_partition


class ScenarioError(ValueError):
    """A scenario failed validation; ``violations`` lists every broken rule."""

    def __init__(self, violations: Sequence[str]) -> None:
        super().__init__("invalid scenario: " + "; ".join(violations))
        self.violations = list(violations)


def step_kinematics(
    state: AgentState,
    spec: AgentSpec,
    command: Point,
    dt: float,
    world: GridWorld,
    noise: Point = (0.0, 0.0),
) -> AgentState:
    """Advance one step: ``p + v dt`` clamped to the world, one unit of energy spent.

    ``noise`` is added to the command and the result saturated at max speed.
    Dead agents are returned unchanged.
    """
    if not state.alive:
        return state
    v = clip_speed((command[0] + noise[0], command[1] + noise[1]), spec.max_speed)
    p = world.clamp((state.position[0] + v[0] * dt, state.position[1] + v[1] * dt))
    energy = state.energy - 1.0
    if energy <= 0.0:
        return dataclasses.replace(state, position=p, velocity=(0.0, 0.0), energy=0.0, alive=False)
    return dataclasses.replace(state, position=p, velocity=v, energy=energy)


def mission_performance(
    experiment: Experiment,
    eta: Sequence[float],
    quality: Sequence[float],
    reach: Sequence[float],
    world: GridWorld,
) -> float:
    """Normalized final metric J in [0, 1] for one run."""
    if experiment is Experiment.COVERAGE:
        return eta[-1]
    if experiment is Experiment.MAPPING:
        return quality[-1]
    return max(reach) / world.diagonal if world.diagonal > 0 else 0.0


def _resolve_regions(s: Scenario) -> list:
    regions: list = [None] * len(s.agents)
    sweepers = [
        k
        for k, pol in enumerate(s.policies)
        if pol.kind is PolicyKind.LAWNMOWER and pol.region is None
    ]
    w, h = s.world.width, s.world.height
    if s.experiment is Experiment.MAPPING:
        for k in sweepers:
            if s.agents[k].agent_class is AgentClass.GROUND:
                regions[k] = (0.0, 0.0, float(w - 1), float(max(h // 2 - 1, 0)))
            else:
                regions[k] = (0.0, 0.0, float(w - 1), float(h - 1))
    elif sweepers:
        strips = speed_partition(w, h, [s.agents[k].max_speed for k in sweepers])
        for k, strip in zip(sweepers, strips):
            regions[k] = strip
    return regions


class Simulation:
    """Mutable run state for one scenario; use :func:`run_scenario`."""

    def __init__(self, s: Scenario) -> None:
        self.s = s
        self.world = s.world
        self.specs = list(s.agents)
        regions = _resolve_regions(s)
        self.policies: list[CompiledPolicy] = [
            compile_policy(spec, pol, s.dt, region)
            for spec, pol, region in zip(self.specs, s.policies, regions)
        ]
        self.states: list[AgentState] = []
        for spec, pol, start in zip(self.specs, self.policies, s.starts):
            if start is None:
                start = pol.start if pol.start is not None else s.world.ground
            self.states.append(AgentState.initial(spec, s.world.clamp(start)))

        dist_seq, gps_seq = np.random.SeedSequence(s.seed).spawn(2)
        self.dist_rng = np.random.default_rng(dist_seq)
        self.gps_rng = np.random.default_rng(gps_seq)
        self.sigma = s.disturbance.sigma if s.disturbance.kind is DisturbanceKind.GAUSSIAN else 0.0

        self.ground_range = s.world.ground_range
        self.forwarders = (
            {a.id for a in self.specs if a.role is Role.RELAY}
            if s.forwarding == "relays"
            else None
        )
        self.coverage = CoverageField.empty(s.world)
        self.knowledge: KnowledgeMap | None = None
        self.uav = self.ugv = None
        if s.experiment is Experiment.MAPPING:
            self.uav = next(k for k, a in enumerate(self.specs) if a.agent_class.aerial)
            self.ugv = next(
                (k for k, a in enumerate(self.specs) if a.agent_class is AgentClass.GROUND), None
            )
            self.knowledge = KnowledgeMap.empty(
                len(s.world.obstacles),
                alpha_uav=s.mapping.alpha_uav,
                alpha_ugv=s.mapping.alpha_ugv,
                r_uav=self.specs[self.uav].sensing_radius,
                r_ugv=self.specs[self.ugv].sensing_radius if self.ugv is not None else 0.0,
            )
        self.rows: list[tuple[int, float, float, float, int]] = []

    def apply_failures(self, t: int) -> None:
        for mode in self.s.failures:
            if mode.onset != t:
                continue
            if mode.kind is FailureKind.COMM_JAM:
                self.ground_range *= mode.multiplier
            self.states = [
                apply_failure(st, spec, mode, t) for st, spec in zip(self.states, self.specs)
            ]

    def graph(self):
        return build_comm_graph(self.specs, self.states, self.world, self.ground_range)

    def observe(self, t: int) -> None:
        self.coverage = covered_set_update(self.coverage, self.states, self.world, t)
        if self.knowledge is not None:
            uav = self.states[self.uav]
            ugv = self.states[self.ugv] if self.ugv is not None else None
            km = dataclasses.replace(
                self.knowledge,
                r_uav=uav.sensing_radius,
                r_ugv=ugv.sensing_radius if ugv is not None else 0.0,
            )
            self.knowledge = knowledge_update(km, uav, ugv, self.world)

    def record(self, t: int) -> None:
        quality = map_quality(self.knowledge) if self.knowledge is not None else 0.0
        connected = connected_set(self.graph(), forwarders=self.forwarders)
        positions = {spec.id: st.position for spec, st in zip(self.specs, self.states)}
        reach = mission_reach(connected, positions, self.world)
        alive = sum(st.alive for st in self.states)
        self.rows.append((t, coverage_ratio(self.coverage, self.world), quality, reach, alive))

    def _linked(self, k: int, p: Point, connected: set[int]) -> bool:
        st = self.states[k]
        g = self.world.ground
        if math.hypot(p[0] - g[0], p[1] - g[1]) <= min(self.ground_range, st.comm_radius):
            return True
        me = self.specs[k].id
        for spec, other in zip(self.specs, self.states):
            if spec.id == me or spec.id not in connected or not other.alive:
                continue
            if self.forwarders is not None and spec.id not in self.forwarders:
                continue
            q = other.position
            if math.hypot(p[0] - q[0], p[1] - q[1]) <= min(st.comm_radius, other.comm_radius):
                return True
        return False

    def move(self, t: int) -> None:
        n = len(self.specs)
        # fixed draws every step keep random streams aligned across failure variants
        dist_noise = self.dist_rng.standard_normal((n, 2)) * self.sigma
        gps_noise = self.gps_rng.standard_normal((n, 2))
        advancing = any(p.kind is PolicyKind.ADVANCE for p in self.policies)
        connected = connected_set(self.graph(), forwarders=self.forwarders) if advancing else set()
        dt = self.s.dt
        new_states = []
        for k, (spec, st, pol) in enumerate(zip(self.specs, self.states, self.policies)):
            if not st.alive:
                new_states.append(st)
                continue
            perceived = (
                st.position[0] + st.gps_sigma * gps_noise[k, 0],
                st.position[1] + st.gps_sigma * gps_noise[k, 1],
            )
            if pol.kind is PolicyKind.ADVANCE:
                cmd = self._advance_command(k, t, perceived, connected)
            else:
                cmd = pol.command(t, perceived, dt)
            noise = (float(dist_noise[k, 0]), float(dist_noise[k, 1]))
            new_states.append(step_kinematics(st, spec, cmd, dt, self.world, noise))
        self.states = new_states

    def _advance_command(self, k: int, t: int, perceived: Point, connected: set[int]) -> Point:
        spec, st, pol = self.specs[k], self.states[k], self.policies[k]
        dt = self.s.dt
        if spec.id not in connected:
            g = self.world.ground
            return clip_speed(((g[0] - perceived[0]) / dt, (g[1] - perceived[1]) / dt), spec.max_speed)
        cmd = pol.command(t, perceived, dt)
        nxt = self.world.clamp((st.position[0] + cmd[0] * dt, st.position[1] + cmd[1] * dt))
        return cmd if self._linked(k, nxt, connected) else (0.0, 0.0)

    def run(self) -> MetricSeries:
        self.apply_failures(0)
        # the initial footprint counts toward the first recorded step
        self.observe(0)
        for t in range(1, self.s.horizon + 1):
            self.apply_failures(t)
            self.move(t)
            self.observe(t)
            self.record(t)
        ts, eta, quality, reach, alive = (tuple(col) for col in zip(*self.rows))
        J = mission_performance(self.s.experiment, eta, quality, reach, self.world)
        return MetricSeries(
            scenario_id=self.s.id,
            experiment=self.s.experiment,
            seed=self.s.seed,
            t=ts,
            eta=eta,
            map_quality=quality,
            reach=reach,
            alive_count=alive,
            J=J,
        )


def run_scenario(s: Scenario) -> MetricSeries:
    """Validate and run ``s``; identical scenarios give identical series."""
    violations = validate_scenario(s)
    if violations:
        raise ScenarioError(violations)
    return Simulation(s).run()
