"""Desk-scale scenario builders for the three experiments and the resilience pair.

Grid sizes, radii and speeds here are simulator defaults chosen so each run
finishes in well under a second; none of them are measured values.
"""

from __future__ import annotations

import numpy as np

from hetswarm.failures import FailureKind, FailureMode
from hetswarm.model import (
    AgentSpec,
    GridWorld,
    Point,
    PolicyKind,
    PolicySpec,
    Scenario,
)

V_SLOW = 1.0
V_FAST = 2.0
SENSE = 3.0
GROUND_RANGE = 20.0
RELAY_RANGE = 15.0


def random_obstacles(width: int, height: int, count: int, seed: int) -> tuple[Point, ...]:
    """``count`` distinct cell centers drawn without replacement."""
    rng = np.random.default_rng(seed)
    cells = rng.choice(width * height, size=count, replace=False)
    return tuple((float(c % width), float(c // width)) for c in sorted(cells.tolist()))


def coverage_team(
    n_agents: int = 10,
    fast_fraction: float = 0.0,
    size: int = 100,
    horizon: int = 600,
    seed: int = 0,
    name: str | None = None,
) -> Scenario:
    """Lawnmower sweepers; the first ``round(fast_fraction * n)`` agents are fast."""
    n_fast = round(fast_fraction * n_agents)
    agents = tuple(
        AgentSpec(
            id=i,
            agent_class="aerial-rotor",
            role="scout",
            max_speed=V_FAST if i < n_fast else V_SLOW,
            sensing_radius=SENSE,
        )
        for i in range(n_agents)
    )
    kind = "hetero" if n_fast else "homo"
    return Scenario(
        id=name or f"coverage-{kind}",
        experiment="coverage",
        agents=agents,
        world=GridWorld(size, size, ground=(0.0, 0.0), ground_range=GROUND_RANGE),
        policies=(PolicySpec(PolicyKind.LAWNMOWER),) * n_agents,
        horizon=horizon,
        seed=seed,
    )


def mapping_team(
    with_ugv: bool = True,
    size: int = 100,
    n_obstacles: int = 40,
    horizon: int = 600,
    seed: int = 0,
    obstacle_seed: int = 7,
) -> Scenario:
    """A UAV sweeping down from the top, optionally helped by a faster UGV
    sweeping the lower half upward."""
    agents = [AgentSpec(0, "aerial-rotor", "mapper", max_speed=1.0, sensing_radius=3.0)]
    if with_ugv:
        agents.append(AgentSpec(1, "ground", "mapper", max_speed=1.5, sensing_radius=2.0))
    return Scenario(
        id="mapping-coop" if with_ugv else "mapping-uav",
        experiment="mapping",
        agents=tuple(agents),
        world=GridWorld(
            size,
            size,
            obstacles=random_obstacles(size, size, n_obstacles, obstacle_seed),
            ground=(0.0, 0.0),
            ground_range=GROUND_RANGE,
        ),
        policies=(PolicySpec(PolicyKind.LAWNMOWER, descending=True),
                  PolicySpec(PolicyKind.LAWNMOWER))[: len(agents)],
        horizon=horizon,
        seed=seed,
    )


def _rover(i: int) -> AgentSpec:
    return AgentSpec(i, "aerial-rotor", "scout", max_speed=1.0, sensing_radius=SENSE,
                     comm_radius=GROUND_RANGE)


def _relay(i: int) -> AgentSpec:
    return AgentSpec(i, "aerial-fixed-wing", "relay", max_speed=1.0, sensing_radius=SENSE,
                     comm_radius=RELAY_RANGE)


def relay_team(
    n_relays: int = 2,
    n_rovers: int = 3,
    size: int = 100,
    horizon: int = 200,
    seed: int = 0,
) -> Scenario:
    """Relays hold a chain on the ground-to-frontier line; rovers advance outward.

    With ``n_relays=0`` the rovers can only talk to ground control directly,
    and ``n_rovers`` is raised by two so both teams have the same headcount
    when called with defaults.
    """
    ground = (5.0, size / 2.0)
    stand_off = RELAY_RANGE - 1.0
    agents, policies = [], []
    for k in range(n_relays):
        agents.append(_relay(k))
        hold = (ground[0] + stand_off * (k + 1), ground[1])
        policies.append(PolicySpec(PolicyKind.RELAY_HOLD, target=hold))
    rovers = n_rovers if n_relays else n_rovers + 2
    for k in range(rovers):
        agents.append(_rover(n_relays + k))
        frac = (k + 1) / (rovers + 1)
        goal = (float(size - 1), (size - 1) * frac)
        policies.append(PolicySpec(PolicyKind.ADVANCE, target=goal))
    return Scenario(
        id="relay-assisted" if n_relays else "relay-direct",
        experiment="relay-reach",
        agents=tuple(agents),
        world=GridWorld(size, size, ground=ground, ground_range=GROUND_RANGE),
        policies=tuple(policies),
        horizon=horizon,
        seed=seed,
    )


def redundancy_pair(size: int = 60, horizon: int = 120, seed: int = 0) -> tuple[Scenario, Scenario]:
    """(two parallel relays, one relay) teams for the relay-loss resilience test.

    Agent 0 is a relay in both teams, so losing it strands the single-relay
    team while the redundant team keeps its second relay.
    """
    ground = (5.0, size / 2.0)
    world = GridWorld(size, size, ground=ground, ground_range=GROUND_RANGE)
    stand_off = RELAY_RANGE - 1.0
    hetero_holds = [(ground[0] + 13.0, ground[1] - 4.0), (ground[0] + 13.0, ground[1] + 4.0)]
    homo_holds = [(ground[0] + stand_off, ground[1])]

    def team(holds, name):
        agents, policies = [], []
        for k, hold in enumerate(holds):
            agents.append(_relay(k))
            policies.append(PolicySpec(PolicyKind.RELAY_HOLD, target=hold))
        for k in range(3 - len(holds) + 1):
            i = len(holds) + k
            agents.append(_rover(i))
            policies.append(PolicySpec(PolicyKind.ADVANCE, target=(float(size - 1), ground[1])))
        return Scenario(
            id=name,
            experiment="relay-reach",
            agents=tuple(agents),
            world=world,
            policies=tuple(policies),
            horizon=horizon,
            seed=seed,
        )

    return team(hetero_holds, "relay-redundant"), team(homo_holds, "relay-single")


def relay_loss(onset: int = 0) -> FailureMode:
    return FailureMode(FailureKind.AGENT_LOSS, onset=onset, ids=(0,))


def catalog(onset: int = 0) -> tuple[FailureMode, ...]:
    """One representative mode per failure-catalog row."""
    return (
        FailureMode(FailureKind.AGENT_LOSS, onset=onset, ids=(0,)),
        FailureMode(FailureKind.COMM_JAM, onset=onset, multiplier=0.5),
        FailureMode(FailureKind.SENSOR_DEGRADATION, onset=onset, multiplier=0.5,
                    classes=("aerial-rotor",)),
        FailureMode(FailureKind.GPS_DENIAL, onset=onset, sigma=0.5),
        FailureMode(FailureKind.ENERGY_DEPLETION, onset=onset, multiplier=0.1),
    )
