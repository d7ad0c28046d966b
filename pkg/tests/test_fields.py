import math

import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from hetswarm.model import AgentState, GridWorld
from hetswarm.sim.fields import (
    CoverageField,
    KnowledgeMap,
    coverage_ratio,
    covered_set_update,
    knowledge_update,
    map_quality,
)

SMALL = GridWorld(11, 11)


def at(x, y, r=2.0, alive=True):
    return AgentState((float(x), float(y)), sensing_radius=r, alive=alive)


def disc_oracle(world, center, r):
    return {
        (c, row)
        for c in range(world.width)
        for row in range(world.height)
        if math.hypot(c - center[0], row - center[1]) <= r
    }


def covered_cells(field):
    rows, cols = np.nonzero(field.covered)
    return set(zip(cols.tolist(), rows.tolist()))


def test_radius_zero_covers_one_cell():
    f = covered_set_update(CoverageField.empty(SMALL), [at(3, 4, r=0.0)], SMALL, 0)
    assert covered_cells(f) == {(3, 4)}


def test_radius_two_disc_has_thirteen_cells():
    f = covered_set_update(CoverageField.empty(SMALL), [at(5, 5)], SMALL, 0)
    # 1 center + 4 at distance 1 + 4 diagonals + 4 at distance 2
    assert f.count == 13
    assert covered_cells(f) == disc_oracle(SMALL, (5, 5), 2.0)
    assert coverage_ratio(f, SMALL) == 13 / 121
    assert coverage_ratio(f, SMALL) == pytest.approx(0.1074, abs=1e-4)


def test_coincident_agents_equal_one_agent():
    one = covered_set_update(CoverageField.empty(SMALL), [at(5, 5)], SMALL, 0)
    two = covered_set_update(CoverageField.empty(SMALL), [at(5, 5), at(5, 5)], SMALL, 0)
    assert np.array_equal(one.covered, two.covered)


def test_dead_agent_covers_nothing():
    f = covered_set_update(CoverageField.empty(SMALL), [at(5, 5, alive=False)], SMALL, 0)
    assert f.count == 0


def test_ratio_bounds():
    empty = CoverageField.empty(SMALL)
    assert coverage_ratio(empty, SMALL) == 0.0
    full = CoverageField(np.ones((11, 11), bool), np.zeros((11, 11), np.int64))
    assert coverage_ratio(full, SMALL) == 1.0


def test_first_covered_step_recorded_once():
    f = covered_set_update(CoverageField.empty(SMALL), [at(5, 5)], SMALL, 3)
    f = covered_set_update(f, [at(6, 5)], SMALL, 4)
    assert f.first_covered[5, 5] == 3
    assert f.first_covered[5, 8] == 4


@settings(max_examples=50, deadline=None)
@given(
    x=st.floats(0, 10), y=st.floats(0, 10), r=st.floats(0, 6),
)
def test_disc_matches_enumeration(x, y, r):
    f = covered_set_update(CoverageField.empty(SMALL), [at(x, y, r)], SMALL, 0)
    assert covered_cells(f) == disc_oracle(SMALL, (x, y), r)


@settings(max_examples=50, deadline=None)
@given(pts=st.lists(st.tuples(st.floats(0, 10), st.floats(0, 10)), min_size=1, max_size=6))
def test_coverage_is_monotone(pts):
    f = CoverageField.empty(SMALL)
    prev = 0.0
    for t, (x, y) in enumerate(pts):
        f = covered_set_update(f, [at(x, y)], SMALL, t)
        eta = coverage_ratio(f, SMALL)
        assert eta >= prev
        prev = eta


OBST = GridWorld(11, 11, obstacles=((5.0, 5.0),))


def test_uav_only_increment():
    km = KnowledgeMap((0.3,), alpha_uav=0.2, alpha_ugv=0.2)
    out = knowledge_update(km, at(5, 6), None, OBST)
    assert out.confidence[0] == pytest.approx(0.5, abs=1e-15)


def test_both_observers_clamp_at_one():
    km = KnowledgeMap((0.9,), alpha_uav=0.2, alpha_ugv=0.2)
    out = knowledge_update(km, at(5, 6), at(5, 4), OBST)
    assert out.confidence[0] == 1.0


def test_saturated_confidence_stays_one():
    km = KnowledgeMap((1.0,), alpha_uav=0.2, alpha_ugv=0.2)
    assert knowledge_update(km, at(5, 6), at(5, 4), OBST).confidence[0] == 1.0


def test_out_of_range_and_dead_observers_add_nothing():
    km = KnowledgeMap((0.4,), alpha_uav=0.2, alpha_ugv=0.2, r_uav=3.0, r_ugv=2.0)
    out = knowledge_update(km, at(0, 0), at(5, 4, alive=False), OBST)
    assert out.confidence == (0.4,)


def test_map_quality_mean():
    assert map_quality(KnowledgeMap((1.0, 0.5, 0.0, 0.5))) == 0.5
    assert map_quality(KnowledgeMap((0.0,) * 4)) == 0.0
    assert map_quality(KnowledgeMap((1.0,) * 4)) == 1.0


@settings(max_examples=50, deadline=None)
@given(
    q=st.lists(st.floats(0, 1), min_size=1, max_size=5),
    a=st.floats(0.01, 1),
    steps=st.integers(1, 8),
)
def test_confidence_monotone_and_bounded(q, a, steps):
    world = GridWorld(11, 11, obstacles=tuple((float(k), 5.0) for k in range(len(q))))
    km = KnowledgeMap(tuple(q), alpha_uav=a, alpha_ugv=a)
    for _ in range(steps):
        nxt = knowledge_update(km, at(2, 5), at(1, 5), world)
        assert all(old <= new <= 1.0 for old, new in zip(km.confidence, nxt.confidence))
        km = nxt
