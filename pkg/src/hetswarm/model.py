"""Domain types shared by every part of the simulator.

Coordinates are continuous and measured in cell units. Cell ``(col, row)``
has its center at ``(col, row)``, so a ``width x height`` world spans
``[0, width - 1] x [0, height - 1]``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from enum import Enum

from hetswarm.failures import FailureMode
from hetswarm.heterogeneity import DEFAULT_RANGES, HeterogeneityWeights, NormalizationRanges

Point = tuple[float, float]

GROUND = -1
"""Node id of the ground-control station in interaction graphs."""


class AgentClass(str, Enum):
    AERIAL_ROTOR = "aerial-rotor"
    AERIAL_FIXED_WING = "aerial-fixed-wing"
    GROUND = "ground"
    WATER_SURFACE = "water-surface"
    UNDERWATER = "underwater"

    @property
    def aerial(self) -> bool:
        return self in (AgentClass.AERIAL_ROTOR, AgentClass.AERIAL_FIXED_WING)


class Space(str, Enum):
    AIR = "air"
    GROUND = "ground"
    WATER_SURFACE = "water-surface"
    UNDERWATER = "underwater"


class Role(str, Enum):
    SCOUT = "scout"
    RELAY = "relay"
    MAPPER = "mapper"
    WORKER = "worker"
    RESERVE = "reserve"


CLASS_SPACE = {
    AgentClass.AERIAL_ROTOR: Space.AIR,
    AgentClass.AERIAL_FIXED_WING: Space.AIR,
    AgentClass.GROUND: Space.GROUND,
    AgentClass.WATER_SURFACE: Space.WATER_SURFACE,
    AgentClass.UNDERWATER: Space.UNDERWATER,
}


class Experiment(str, Enum):
    COVERAGE = "coverage"
    MAPPING = "mapping"
    RELAY_REACH = "relay-reach"


class PolicyKind(str, Enum):
    LAWNMOWER = "lawnmower-sweep"
    RELAY_HOLD = "waypoint-relay-hold"
    STATIONARY = "stationary"
    ADVANCE = "frontier-advance"


class DisturbanceKind(str, Enum):
    NONE = "none"
    GAUSSIAN = "gaussian-velocity-noise"


@dataclass(frozen=True)
class AgentSpec:
    """Static capabilities of one agent.

    ``space`` defaults to the space implied by ``agent_class``. A mismatching
    explicit space is reported by :func:`validate_scenario` rather than
    raised here, so invalid specs can still be inspected.
    """

    id: int
    agent_class: AgentClass
    role: Role = Role.WORKER
    max_speed: float = 1.0
    sensing_radius: float = 3.0
    comm_radius: float = 20.0
    energy: float = 1000.0
    alpha: float = 0.5
    space: Space | None = None

    def __post_init__(self) -> None:
        object.__setattr__(self, "agent_class", AgentClass(self.agent_class))
        object.__setattr__(self, "role", Role(self.role))
        space = CLASS_SPACE[self.agent_class] if self.space is None else Space(self.space)
        object.__setattr__(self, "space", space)

    @property
    def capabilities(self) -> frozenset[str]:
        return frozenset({self.agent_class.value, self.space.value, self.role.value})

    def check(self, ranges: NormalizationRanges = DEFAULT_RANGES) -> list[str]:
        where = f"agent {self.id}"
        problems = []
        if not self.max_speed > 0:
            problems.append(f"{where}: max speed must be positive")
        if not self.sensing_radius >= 0:
            problems.append(f"{where}: sensing radius must be nonnegative")
        if not self.comm_radius >= 0:
            problems.append(f"{where}: communication radius must be nonnegative")
        if not self.energy > 0:
            problems.append(f"{where}: energy capacity must be positive")
        if CLASS_SPACE[self.agent_class] is not self.space:
            problems.append(
                f"{where}: class/space mismatch "
                f"({self.agent_class.value} cannot operate in {self.space.value})"
            )
        for name, (lo, hi) in ranges.items():
            value = getattr(self, name)
            if not lo <= value <= hi:
                problems.append(f"{where}: {name} {value} outside normalization range [{lo}, {hi}]")
        return problems


@dataclass(frozen=True)
class AgentState:
    """Dynamic state of one agent.

    ``sensing_radius`` and ``comm_radius`` are the effective radii after any
    failures; ``gps_sigma`` is the noise on the position the agent's own
    policy perceives.
    """

    position: Point
    velocity: Point = (0.0, 0.0)
    alive: bool = True
    energy: float = 1000.0
    sensing_radius: float = 3.0
    comm_radius: float = 20.0
    gps_sigma: float = 0.0

    @classmethod
    def initial(cls, spec: AgentSpec, position: Point) -> AgentState:
        return cls(
            position=(float(position[0]), float(position[1])),
            energy=float(spec.energy),
            sensing_radius=float(spec.sensing_radius),
            comm_radius=float(spec.comm_radius),
        )


@dataclass(frozen=True)
class GridWorld:
    width: int = 100
    height: int = 100
    obstacles: tuple[Point, ...] = ()
    ground: Point = (0.0, 0.0)
    ground_range: float = 20.0

    def __post_init__(self) -> None:
        object.__setattr__(
            self, "obstacles", tuple((float(x), float(y)) for x, y in self.obstacles)
        )
        object.__setattr__(self, "ground", (float(self.ground[0]), float(self.ground[1])))

    @property
    def n_cells(self) -> int:
        return self.width * self.height

    @property
    def diagonal(self) -> float:
        return math.hypot(self.width - 1, self.height - 1)

    def contains(self, p: Point) -> bool:
        return 0.0 <= p[0] <= self.width - 1 and 0.0 <= p[1] <= self.height - 1

    def clamp(self, p: Point) -> Point:
        return (
            min(max(p[0], 0.0), float(self.width - 1)),
            min(max(p[1], 0.0), float(self.height - 1)),
        )

    def check(self) -> list[str]:
        problems = []
        if self.width <= 0 or self.height <= 0:
            problems.append("world: width and height must be positive")
            return problems
        for j, o in enumerate(self.obstacles):
            if not self.contains(o):
                problems.append(f"world: obstacle {j} at {o} out of bounds")
        if len(set(self.obstacles)) != len(self.obstacles):
            problems.append("world: duplicate obstacle positions")
        if not self.contains(self.ground):
            problems.append(f"world: ground node {self.ground} out of bounds")
        if not self.ground_range >= 0:
            problems.append("world: ground range must be nonnegative")
        return problems


@dataclass(frozen=True)
class InteractionGraph:
    """Undirected graph over agent ids plus :data:`GROUND`.

    Edges are stored as ``(lo, hi)`` tuples with ``lo < hi``.
    """

    nodes: tuple[int, ...]
    edges: frozenset[tuple[int, int]]

    def neighbors(self) -> dict[int, list[int]]:
        adj: dict[int, list[int]] = {n: [] for n in self.nodes}
        for a, b in sorted(self.edges):
            adj[a].append(b)
            adj[b].append(a)
        return adj

    def has_edge(self, a: int, b: int) -> bool:
        return (min(a, b), max(a, b)) in self.edges


@dataclass(frozen=True)
class PolicySpec:
    """Movement policy assignment for one agent.

    ``region`` is ``(x0, y0, x1, y1)`` for lawnmower sweeps (``None`` lets the
    kernel partition the world by speed); ``target`` is the hold point of a
    relay or the goal of a frontier advance. ``descending`` starts a sweep at
    the top lane instead of the bottom one.
    """

    kind: PolicyKind = PolicyKind.STATIONARY
    region: tuple[float, float, float, float] | None = None
    lane_spacing: float | None = None
    target: Point | None = None
    descending: bool = False

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", PolicyKind(self.kind))
        if self.region is not None:
            object.__setattr__(self, "region", tuple(float(v) for v in self.region))
        if self.target is not None:
            object.__setattr__(self, "target", (float(self.target[0]), float(self.target[1])))


@dataclass(frozen=True)
class Disturbance:
    kind: DisturbanceKind = DisturbanceKind.NONE
    sigma: float = 0.0

    def __post_init__(self) -> None:
        object.__setattr__(self, "kind", DisturbanceKind(self.kind))


@dataclass(frozen=True)
class MappingParams:
    """Per-step confidence increments for aerial and ground observers."""

    alpha_uav: float = 0.25
    alpha_ugv: float = 0.25


@dataclass(frozen=True)
class TaskSpec:
    position: Point
    requires: frozenset[str] = frozenset()

    def __post_init__(self) -> None:
        object.__setattr__(self, "position", (float(self.position[0]), float(self.position[1])))
        object.__setattr__(self, "requires", frozenset(self.requires))


@dataclass(frozen=True)
class Scenario:
    """A complete, replayable experiment description.

    ``starts`` and ``policies`` are parallel to ``agents``; a ``None`` start
    means the policy picks the start (first sweep waypoint, or the ground
    node for relays and advancing agents).
    """

    id: str
    experiment: Experiment
    agents: tuple[AgentSpec, ...]
    world: GridWorld = field(default_factory=GridWorld)
    policies: tuple[PolicySpec, ...] = ()
    starts: tuple[Point | None, ...] = ()
    dt: float = 1.0
    horizon: int = 600
    seed: int = 0
    disturbance: Disturbance = field(default_factory=Disturbance)
    failures: tuple[FailureMode, ...] = ()
    forwarding: str = "relays"
    mapping: MappingParams = field(default_factory=MappingParams)
    tasks: tuple[TaskSpec, ...] = ()
    task_capacity: int | None = None
    weights: HeterogeneityWeights = field(default_factory=HeterogeneityWeights)
    ranges: NormalizationRanges = field(default_factory=NormalizationRanges)

    def __post_init__(self) -> None:
        object.__setattr__(self, "experiment", Experiment(self.experiment))
        object.__setattr__(self, "agents", tuple(self.agents))
        n = len(self.agents)
        policies = tuple(self.policies) or (PolicySpec(),) * n
        starts = tuple(self.starts) or (None,) * n
        object.__setattr__(self, "policies", policies)
        object.__setattr__(
            self,
            "starts",
            tuple(None if s is None else (float(s[0]), float(s[1])) for s in starts),
        )
        object.__setattr__(self, "failures", tuple(self.failures))
        object.__setattr__(self, "tasks", tuple(self.tasks))


@dataclass(frozen=True)
class MetricSeries:
    """Per-step metric trace of one run; row ``k`` is step ``t[k]``."""

    scenario_id: str
    experiment: Experiment
    seed: int
    t: tuple[int, ...]
    eta: tuple[float, ...]
    map_quality: tuple[float, ...]
    reach: tuple[float, ...]
    alive_count: tuple[int, ...]
    J: float

    def __len__(self) -> int:
        return len(self.t)

    def rows(self):
        return zip(self.t, self.eta, self.map_quality, self.reach, self.alive_count)


def validate_scenario(s: Scenario) -> list[str]:
    """All invariant violations of ``s``; empty when the scenario is runnable."""
    problems: list[str] = []
    if not isinstance(s.horizon, int) or isinstance(s.horizon, bool):
        problems.append("horizon must be an integer number of steps")
    elif not s.horizon > 0:
        problems.append("horizon must be positive")
    if not s.dt > 0:
        problems.append("dt must be positive")
    if not s.agents:
        problems.append("at least one agent is required")
    ids = [a.id for a in s.agents]
    if len(set(ids)) != len(ids):
        problems.append("agent ids must be unique")
    if any(i < 0 for i in ids):
        problems.append("agent ids must be nonnegative")
    if len(s.policies) != len(s.agents) or len(s.starts) != len(s.agents):
        problems.append("policies and starts must match the agent list")
    for a in s.agents:
        problems.extend(a.check(s.ranges))
    problems.extend(s.world.check())

    for a, pol, start in zip(s.agents, s.policies, s.starts):
        where = f"agent {a.id}"
        if start is not None and not s.world.contains(start):
            problems.append(f"{where}: start {start} out of bounds")
        if pol.kind is PolicyKind.STATIONARY and start is None:
            problems.append(f"{where}: stationary policy needs a start position")
        if pol.kind in (PolicyKind.RELAY_HOLD, PolicyKind.ADVANCE):
            if pol.target is None:
                problems.append(f"{where}: {pol.kind.value} policy needs a target")
            elif not s.world.contains(pol.target):
                problems.append(f"{where}: target {pol.target} out of bounds")
        if pol.region is not None:
            x0, y0, x1, y1 = pol.region
            if not (x0 <= x1 and y0 <= y1 and s.world.contains((x0, y0)) and s.world.contains((x1, y1))):
                problems.append(f"{where}: sweep region {pol.region} invalid")
        if pol.lane_spacing is not None and not pol.lane_spacing > 0:
            problems.append(f"{where}: lane spacing must be positive")

    if s.disturbance.kind is DisturbanceKind.GAUSSIAN and not s.disturbance.sigma >= 0:
        problems.append("disturbance sigma must be nonnegative")
    if s.forwarding not in ("relays", "all"):
        problems.append("forwarding must be 'relays' or 'all'")

    classes = {a.agent_class.value for a in s.agents}
    for mode in s.failures:
        problems.extend(mode.check(set(ids), classes))

    if s.experiment is Experiment.MAPPING:
        aerial = [a for a in s.agents if a.agent_class.aerial]
        ground = [a for a in s.agents if a.agent_class is AgentClass.GROUND]
        if len(aerial) != 1:
            problems.append("mapping experiment needs exactly one aerial agent")
        if len(ground) > 1:
            problems.append("mapping experiment allows at most one ground agent")
        if len(aerial) + len(ground) != len(s.agents):
            problems.append("mapping experiment agents must be aerial or ground")
        if not s.world.obstacles:
            problems.append("mapping experiment needs at least one obstacle")
        for name in ("alpha_uav", "alpha_ugv"):
            value = getattr(s.mapping, name)
            if not 0.0 < value <= 1.0:
                problems.append(f"mapping: {name} must lie in (0, 1]")

    if s.task_capacity is not None and s.task_capacity < 1:
        problems.append("task capacity must be at least 1")
    for k, task in enumerate(s.tasks):
        if not s.world.contains(task.position):
            problems.append(f"task {k}: position {task.position} out of bounds")
    return problems
