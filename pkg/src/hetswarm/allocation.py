"""Capability-constrained task assignment.

Every task goes to exactly one capable agent at minimum total cost. Without a
per-agent capacity the problem separates per task; with a capacity it is a
rectangular assignment problem over agent slots, solved exactly with a
shortest-augmenting-path Hungarian method.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from hetswarm.model import AgentSpec, GridWorld, Point, TaskSpec


class InfeasibleError(ValueError):
    """No assignment satisfies the constraints; ``tasks`` lists the culprits."""

    def __init__(self, message: str, tasks: Sequence[int] = ()) -> None:
        super().__init__(message)
        self.tasks = tuple(tasks)


@dataclass(frozen=True)
class TaskSet:
    """Costs ``costs[i, j]`` for agent ``i`` on task ``j`` with a feasibility mask."""

    costs: np.ndarray
    feasible: np.ndarray
    agent_ids: tuple[int, ...]
    capacity: int | None = None

    def __post_init__(self) -> None:
        costs = np.asarray(self.costs, dtype=float)
        feasible = np.asarray(self.feasible, dtype=bool)
        if costs.ndim != 2 or costs.shape != feasible.shape:
            raise ValueError("cost matrix and feasibility mask must be N x M and equal shape")
        if len(self.agent_ids) != costs.shape[0]:
            raise ValueError("agent_ids must match the cost matrix rows")
        if not np.all(np.isfinite(costs[feasible])):
            raise ValueError("costs must be finite where feasible")
        if self.capacity is not None and self.capacity < 1:
            raise ValueError("capacity must be at least 1")
        orphans = np.flatnonzero(~feasible.any(axis=0))
        if orphans.size:
            raise InfeasibleError(
                f"task(s) {orphans.tolist()} have no capable agent", orphans.tolist()
            )
        object.__setattr__(self, "costs", costs)
        object.__setattr__(self, "feasible", feasible)
        object.__setattr__(self, "agent_ids", tuple(int(i) for i in self.agent_ids))

    @property
    def shape(self) -> tuple[int, int]:
        return self.costs.shape


@dataclass(frozen=True)
class Assignment:
    matrix: np.ndarray
    total_cost: float

    @property
    def agent_for_task(self) -> list[int]:
        """Row index of the agent assigned to each task."""
        return [int(i) for i in self.matrix.argmax(axis=0)]


def build_costs(
    agents: Sequence[AgentSpec],
    tasks: Sequence[TaskSpec],
    world: GridWorld,
    starts: Sequence[Point],
    capacity: int | None = None,
) -> TaskSet:
    """Travel-time costs (steps) and capability feasibility.

    Agent ``i`` can do task ``j`` iff the task's required capabilities are a
    subset of ``{class, space, role}`` of the agent.
    """
    n, m = len(agents), len(tasks)
    costs = np.zeros((n, m))
    feasible = np.zeros((n, m), dtype=bool)
    for j, task in enumerate(tasks):
        if not world.contains(task.position):
            raise ValueError(f"task {j} position {task.position} outside the world")
    for i, (agent, start) in enumerate(zip(agents, starts)):
        caps = agent.capabilities
        for j, task in enumerate(tasks):
            dist = math.hypot(task.position[0] - start[0], task.position[1] - start[1])
            costs[i, j] = dist / agent.max_speed
            feasible[i, j] = task.requires <= caps
    orphans = [j for j in range(m) if not feasible[:, j].any()]
    if orphans:
        needs = "; ".join(f"task {j} needs {sorted(tasks[j].requires)}" for j in orphans)
        raise InfeasibleError(f"no agent is capable of: {needs}", orphans)
    return TaskSet(costs, feasible, tuple(a.id for a in agents), capacity)


def _hungarian(cost: np.ndarray) -> list[int]:
    """Min-cost assignment of every row to a distinct column (rows <= cols).

    Shortest augmenting paths with row/column potentials; returns the column
    chosen for each row.
    """
    n, m = cost.shape
    inf = math.inf
    u = [0.0] * (n + 1)
    v = [0.0] * (m + 1)
    match = [0] * (m + 1)  # match[col] = row (1-based), 0 = free
    way = [0] * (m + 1)
    for row in range(1, n + 1):
        match[0] = row
        j0 = 0
        minv = [inf] * (m + 1)
        used = [False] * (m + 1)
        while True:
            used[j0] = True
            i0 = match[j0]
            delta = inf
            j1 = 0
            for j in range(1, m + 1):
                if used[j]:
                    continue
                cur = cost[i0 - 1, j - 1] - u[i0] - v[j]
                if cur < minv[j]:
                    minv[j] = cur
                    way[j] = j0
                if minv[j] < delta:
                    delta = minv[j]
                    j1 = j
            for j in range(m + 1):
                if used[j]:
                    u[match[j]] += delta
                    v[j] -= delta
                else:
                    minv[j] -= delta
            j0 = j1
            if match[j0] == 0:
                break
        while j0:
            j1 = way[j0]
            match[j0] = match[j1]
            j0 = j1
    result = [0] * n
    for j in range(1, m + 1):
        if match[j]:
            result[match[j] - 1] = j - 1
    return result


def _separable(ts: TaskSet) -> list[int]:
    chosen = []
    ids = np.asarray(ts.agent_ids)
    for j in range(ts.shape[1]):
        rows = np.flatnonzero(ts.feasible[:, j])
        best = ts.costs[rows, j].min()
        ties = rows[ts.costs[rows, j] == best]
        chosen.append(int(ties[np.argmin(ids[ties])]))
    return chosen


def assign_tasks(ts: TaskSet) -> Assignment:
    """Cost-minimal assignment of every task to one capable agent.

    Ties go to the lowest agent id when there is no capacity limit; with a
    capacity the solver's scan order (agent order, then slot) decides.
    """
    n, m = ts.shape
    if ts.capacity is None:
        chosen = _separable(ts)
    else:
        if n * ts.capacity < m:
            raise InfeasibleError(
                f"{m} tasks exceed total capacity {n} x {ts.capacity}", range(m)
            )
        # agent-major slot columns; forbidden pairs priced above any feasible total
        slots = np.repeat(np.arange(n), ts.capacity)
        finite = np.abs(ts.costs[ts.feasible])
        big = (float(finite.sum()) + 1.0) * (m + 1)
        cost = np.where(ts.feasible, ts.costs, big)[slots].T
        cols = _hungarian(cost)
        chosen = [int(slots[c]) for c in cols]
        bad = [j for j, i in enumerate(chosen) if not ts.feasible[i, j]]
        if bad:
            raise InfeasibleError(
                f"task(s) {bad} cannot be assigned within capacity {ts.capacity}", bad
            )
    matrix = np.zeros((n, m), dtype=bool)
    matrix[chosen, np.arange(m)] = True
    total = math.fsum(ts.costs[i, j] for j, i in enumerate(chosen))
    return Assignment(matrix, total)


def constraint_violations(ts: TaskSet, a: Assignment) -> list[str]:
    """Direct matrix check of the one-agent-per-task and capability constraints."""
    problems = []
    per_task = a.matrix.sum(axis=0)
    for j in np.flatnonzero(per_task != 1):
        problems.append(f"task {j} assigned to {per_task[j]} agents")
    for i, j in zip(*np.nonzero(a.matrix & ~ts.feasible)):
        problems.append(f"agent {ts.agent_ids[i]} lacks the capability for task {j}")
    if ts.capacity is not None:
        for i in np.flatnonzero(a.matrix.sum(axis=1) > ts.capacity):
            problems.append(f"agent {ts.agent_ids[i]} exceeds capacity {ts.capacity}")
    return problems
