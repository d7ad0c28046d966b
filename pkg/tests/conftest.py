from __future__ import annotations

import itertools
import math

import numpy as np
import pytest

from hetswarm.allocation import TaskSet
from hetswarm.model import (
    CLASS_SPACE,
    GROUND,
    AgentClass,
    AgentSpec,
    GridWorld,
    InteractionGraph,
    PolicyKind,
    PolicySpec,
    Role,
    Scenario,
)

CLASSES = list(AgentClass)
ROLES = list(Role)


def random_swarm(rng: np.random.Generator, n: int) -> list[AgentSpec]:
    """``n`` valid agents with attributes drawn inside the default ranges."""
    agents = []
    for i in range(n):
        cls = CLASSES[rng.integers(len(CLASSES))]
        agents.append(
            AgentSpec(
                id=i,
                agent_class=cls,
                role=ROLES[rng.integers(len(ROLES))],
                max_speed=float(rng.uniform(0.1, 2.0)),
                sensing_radius=float(rng.uniform(0.0, 10.0)),
                comm_radius=float(rng.uniform(0.0, 40.0)),
                energy=float(rng.uniform(1.0, 1000.0)),
                alpha=float(rng.uniform(0.0, 1.0)),
                space=CLASS_SPACE[cls],
            )
        )
    return agents


def gower_oracle(a: AgentSpec, b: AgentSpec, kind: str) -> float:
    """Hand-written Gower distance over the default ranges (test oracle)."""
    if kind == "N":
        return ((a.role != b.role) + abs(a.alpha - b.alpha) / 1.0) / 2
    if kind == "H":
        return (
            abs(a.max_speed - b.max_speed) / 2.0
            + abs(a.sensing_radius - b.sensing_radius) / 10.0
            + abs(a.comm_radius - b.comm_radius) / 40.0
            + abs(a.energy - b.energy) / 1000.0
        ) / 4
    return float(a.space != b.space)


def pairwise_oracle(agents, kind: str) -> float:
    """Mean over all ordered pairs i != j, an O(N^2) double loop."""
    n = len(agents)
    total = 0.0
    for i in range(n):
        for j in range(n):
            if i != j:
                total += gower_oracle(agents[i], agents[j], kind)
    return total / (n * (n - 1))


def assignment_oracle(ts: TaskSet) -> float:
    """Exhaustive minimum over every agent-per-task tuple (N^M of them)."""
    n, m = ts.shape
    best = math.inf
    for choice in itertools.product(range(n), repeat=m):
        if not all(ts.feasible[i, j] for j, i in enumerate(choice)):
            continue
        if ts.capacity is not None and max(choice.count(i) for i in set(choice)) > ts.capacity:
            continue
        best = min(best, math.fsum(ts.costs[i, j] for j, i in enumerate(choice)))
    return best


def random_instance(rng, capacity=None, n=None, m=None) -> TaskSet:
    """Random cost matrix (N, M <= 6) where every task has a capable agent."""
    n = n or int(rng.integers(1, 7))
    m = m or int(rng.integers(1, 7))
    costs = rng.uniform(0.0, 10.0, (n, m)).round(int(rng.integers(0, 3)))
    feasible = rng.random((n, m)) < 0.7
    for j in range(m):
        feasible[rng.integers(n), j] = True
    return TaskSet(costs, feasible, tuple(range(n)), capacity)


def twin_posts(horizon=10):
    """Two stationary agents with disjoint r = 2 discs on a 21x11 grid."""
    return Scenario(
        id="posts",
        experiment="coverage",
        agents=(AgentSpec(0, "ground", sensing_radius=2.0), AgentSpec(1, "ground", sensing_radius=2.0)),
        world=GridWorld(21, 11),
        policies=(PolicySpec(PolicyKind.STATIONARY),) * 2,
        starts=((5.0, 5.0), (15.0, 5.0)),
        horizon=horizon,
    )


@pytest.fixture
def rng():
    return np.random.default_rng(12345)


def closure_oracle(g, ground: int) -> set[int]:
    """Nodes reachable from ``ground`` via boolean powers of (I + A)."""
    nodes = list(g.nodes)
    index = {v: k for k, v in enumerate(nodes)}
    n = len(nodes)
    a = np.eye(n, dtype=np.int64)
    for u, v in g.edges:
        a[index[u], index[v]] = a[index[v], index[u]] = 1
    reach = a.copy()
    for _ in range(n):
        reach = np.minimum(reach @ a, 1)
    row = reach[index[ground]]
    return {nodes[k] for k in range(n) if row[k] and nodes[k] != ground}


def random_graph(rng: np.random.Generator, n_max: int = 8):
    """Random interaction graph over a ground node and up to ``n_max - 1`` agents."""
    n = int(rng.integers(1, n_max + 1))
    nodes = (GROUND,) + tuple(range(n - 1))
    p = rng.uniform(0.1, 0.6)
    edges = frozenset(
        (min(u, v), max(u, v))
        for k, u in enumerate(nodes)
        for v in nodes[k + 1 :]
        if rng.random() < p
    )
    return InteractionGraph(nodes, edges)
