import itertools
import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import assignment_oracle, random_instance
from hetswarm.allocation import (
    InfeasibleError,
    TaskSet,
    assign_tasks,
    build_costs,
    constraint_violations,
)
from hetswarm.model import AgentSpec, GridWorld, TaskSpec

WORLD = GridWorld(40, 40)


def test_pythagorean_travel_time():
    agent = AgentSpec(0, "aerial-rotor", max_speed=2.0)
    ts = build_costs([agent], [TaskSpec((6.0, 8.0))], WORLD, [(0.0, 0.0)])
    assert ts.costs[0, 0] == 5.0


def test_ground_task_without_ground_agents_is_infeasible():
    swarm = [AgentSpec(i, "aerial-rotor") for i in range(3)]
    with pytest.raises(InfeasibleError) as err:
        build_costs(swarm, [TaskSpec((1.0, 1.0), frozenset({"ground"}))], WORLD, [(0.0, 0.0)] * 3)
    assert err.value.tasks == (0,)
    assert "task 0" in str(err.value)


def test_mixed_matrix_matches_hand_computation():
    agents = [
        AgentSpec(0, "aerial-rotor", role="scout", max_speed=2.0),
        AgentSpec(1, "ground", role="worker", max_speed=1.0),
        AgentSpec(2, "aerial-fixed-wing", role="relay", max_speed=1.5),
    ]
    starts = [(0.0, 0.0), (10.0, 0.0), (0.0, 10.0)]
    tasks = [
        TaskSpec((3.0, 4.0)),
        TaskSpec((10.0, 10.0), frozenset({"ground"})),
        TaskSpec((0.0, 25.0), frozenset({"air", "relay"})),
    ]
    ts = build_costs(agents, tasks, WORLD, starts)
    expected = np.array(
        [
            [5.0 / 2, math.sqrt(200) / 2, 25.0 / 2],
            [math.sqrt(65), 10.0, math.sqrt(725)],
            [math.sqrt(45) / 1.5, 10.0 / 1.5, 15.0 / 1.5],
        ]
    )
    np.testing.assert_allclose(ts.costs, expected, rtol=0, atol=1e-12)
    assert ts.feasible.tolist() == [
        [True, False, False],
        [True, True, False],
        [True, False, True],
    ]
    a = assign_tasks(ts)
    assert a.agent_for_task == [0, 1, 2]
    assert a.total_cost == pytest.approx(2.5 + 10.0 + 10.0)


def test_argmin_of_two():
    ts = TaskSet(np.array([[3.0], [5.0]]), np.ones((2, 1), bool), (0, 1))
    a = assign_tasks(ts)
    assert a.agent_for_task == [0]
    assert a.total_cost == 3.0


def test_only_feasible_agent_wins_regardless_of_cost():
    ts = TaskSet(np.array([[1.0], [99.0]]), np.array([[False], [True]]), (0, 1))
    assert assign_tasks(ts).agent_for_task == [1]


def test_ties_go_to_lowest_id():
    ts = TaskSet(np.array([[2.0], [2.0], [2.0]]), np.ones((3, 1), bool), (7, 3, 5))
    assert assign_tasks(ts).agent_for_task == [1]


def test_seed7_capacity_one_matches_permutations():
    rng = np.random.default_rng(7)
    costs = rng.uniform(0.0, 10.0, (4, 4))
    ts = TaskSet(costs, np.ones((4, 4), bool), (0, 1, 2, 3), capacity=1)
    best = min(
        math.fsum(costs[p[j], j] for j in range(4)) for p in itertools.permutations(range(4))
    )
    a = assign_tasks(ts)
    assert a.total_cost == best
    assert sorted(a.agent_for_task) == [0, 1, 2, 3]


def test_capacity_overflow_is_infeasible():
    ts = TaskSet(np.ones((2, 3)), np.ones((2, 3), bool), (0, 1), capacity=1)
    with pytest.raises(InfeasibleError):
        assign_tasks(ts)


def test_capacity_feasibility_conflict_names_tasks():
    # both tasks need agent 0 but it can take only one
    feasible = np.array([[True, True], [False, False], [False, False]])
    ts = TaskSet(np.ones((3, 2)), feasible, (0, 1, 2), capacity=1)
    with pytest.raises(InfeasibleError) as err:
        assign_tasks(ts)
    assert err.value.tasks


def test_mismatched_shapes_rejected():
    with pytest.raises(ValueError):
        TaskSet(np.ones((2, 2)), np.ones((2, 3), bool), (0, 1))


@pytest.mark.parametrize("capacity", [None, 1, 2])
def test_random_instances_match_enumeration(capacity):
    rng = np.random.default_rng(2024 + (capacity or 0))
    checked = 0
    while checked < 40:
        try:
            ts = random_instance(rng, capacity)
            expected = assignment_oracle(ts)
        except InfeasibleError:
            continue
        if math.isinf(expected):
            with pytest.raises(InfeasibleError):
                assign_tasks(ts)
            continue
        a = assign_tasks(ts)
        assert constraint_violations(ts, a) == []
        assert a.total_cost == expected
        checked += 1


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_assignment_satisfies_constraints(seed):
    ts = random_instance(np.random.default_rng(seed))
    a = assign_tasks(ts)
    assert constraint_violations(ts, a) == []
    assert a.matrix.sum() == ts.shape[1]


@settings(max_examples=60, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), bump=st.floats(0.0, 5.0))
def test_raising_a_cost_never_lowers_optimum(seed, bump):
    rng = np.random.default_rng(seed)
    ts = random_instance(rng, capacity=2, n=4, m=4)
    i, j = int(rng.integers(4)), int(rng.integers(4))
    costs = ts.costs.copy()
    costs[i, j] += bump
    worse = TaskSet(costs, ts.feasible, ts.agent_ids, ts.capacity)
    assert assign_tasks(worse).total_cost >= assign_tasks(ts).total_cost - 1e-12
