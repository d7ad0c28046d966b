import dataclasses
import math

import numpy as np
import pytest

from conftest import twin_posts
from hetswarm import presets
from hetswarm.failures import MITIGATIONS, FailureKind, FailureMode, apply_failure
from hetswarm.model import AgentSpec, AgentState, Disturbance
from hetswarm.resilience import (
    ADVICE,
    UndefinedIndexError,
    advise,
    compare_resilience,
    ensemble_seeds,
    nominal_performance,
    resilience_index,
)
from hetswarm.sim.kernel import run_scenario


def loss(onset, *ids):
    return FailureMode(FailureKind.AGENT_LOSS, onset=onset, ids=ids)


def test_half_and_full_ratios_average_to_three_quarters():
    s = twin_posts()
    report = resilience_index(s, [loss(s.horizon + 1, 0), loss(0, 0)])
    assert report.J_nom == 26 / 231
    assert [r for _, r in report.ratios] == [1.0, 0.5]
    assert report.R == 0.75


def test_no_op_failures_give_exactly_one():
    s = presets.coverage_team(4, 0.5, size=30, horizon=50)
    late = [dataclasses.replace(m, onset=51) for m in presets.catalog()]
    report = resilience_index(s, late)
    assert all(j == report.J_nom for _, j in report.J_f)
    assert report.R == 1.0


def test_total_loss_gives_zero():
    s = twin_posts()
    assert resilience_index(s, [loss(0, 0, 1)]).R == 0.0


def test_empty_failure_set_is_undefined():
    with pytest.raises(UndefinedIndexError):
        resilience_index(twin_posts(), [])


def test_zero_nominal_performance_is_undefined():
    s = dataclasses.replace(
        presets.relay_team(horizon=10),
        world=dataclasses.replace(presets.relay_team().world, ground_range=0.0),
    )
    with pytest.raises(UndefinedIndexError, match="longer horizon"):
        resilience_index(s, [loss(0, 0)])


def test_deterministic_nominal_ignores_ensemble_size():
    s = presets.coverage_team(3, size=20, horizon=20)
    assert ensemble_seeds(s, 16) == (0,)
    assert nominal_performance(s, 16) == run_scenario(s).J


def test_full_sweep_gives_unit_nominal():
    assert nominal_performance(presets.coverage_team(4, size=20, horizon=200)) == 1.0


def test_nominal_rejects_failure_schedule():
    s = dataclasses.replace(twin_posts(), failures=(loss(0, 0),))
    with pytest.raises(ValueError):
        nominal_performance(s)


def test_small_ensemble_agrees_with_large_one():
    s = dataclasses.replace(
        presets.coverage_team(3, 0.34, size=20, horizon=30),
        disturbance=Disturbance("gaussian-velocity-noise", 0.1),
        seed=1000,
    )
    big = np.array([run_scenario(dataclasses.replace(s, seed=1000 + k)).J for k in range(256)])
    se16 = big.std(ddof=1) / math.sqrt(16)
    small = nominal_performance(dataclasses.replace(s, seed=5000), 16)
    assert abs(small - big.mean()) <= 3 * se16


def test_identical_pair_gives_equal_reports_and_no_verdict():
    s = presets.redundancy_pair()[0]
    cmp = compare_resilience(s, s, [presets.relay_loss()])
    assert cmp.hetero == cmp.homo
    assert not cmp.verdict


def test_redundant_relays_are_more_resilient():
    hetero, homo = presets.redundancy_pair()
    cmp = compare_resilience(hetero, homo, [presets.relay_loss()])
    assert cmp.verdict
    assert cmp.hetero.R > cmp.homo.R


def test_catalog_ratios_bounded_by_one():
    s = presets.coverage_team(5, 0.4, size=40, horizon=120)
    report = resilience_index(s, presets.catalog(), k=4)
    assert len(report.J_f) == len(FailureKind)
    assert all(r <= 1 + 1e-9 for _, r in report.ratios)
    assert report.R <= 1 + 1e-9


@pytest.mark.parametrize(
    "text, expected",
    [
        ("uniform environment, dynamic roles", "Nature-based"),
        ("Multi-environment coverage required", "Operational-space + Hardware"),
        ("ADVERSARIAL ENVIRONMENT, JAMMING RISK", "Nature-based (learned, decentralized)"),
    ],
)
def test_advice_rows(text, expected):
    assert advise(text) == expected


def test_unknown_characteristic_raises():
    with pytest.raises(KeyError):
        advise("underground tunnels")
    assert len(ADVICE) == 7


def test_every_failure_kind_has_a_mitigation():
    assert set(MITIGATIONS) == set(FailureKind)


SPEC = AgentSpec(3, "aerial-rotor", comm_radius=20.0, sensing_radius=4.0, energy=500.0)
STATE = AgentState.initial(SPEC, (10.0, 10.0))


@pytest.mark.parametrize(
    "mode, check",
    [
        (FailureMode("agent-loss", ids=(3,)), lambda s: not s.alive),
        (FailureMode("comm-jam", multiplier=0.25), lambda s: s.comm_radius == 5.0),
        (FailureMode("sensor-degradation", multiplier=0.5), lambda s: s.sensing_radius == 2.0),
        (FailureMode("gps-denial", sigma=0.7), lambda s: s.gps_sigma == 0.7),
        (FailureMode("energy-depletion", multiplier=0.1), lambda s: s.energy == 50.0),
    ],
)
def test_apply_failure_effects(mode, check):
    assert check(apply_failure(STATE, SPEC, mode, 0))
    assert apply_failure(STATE, SPEC, mode, 1) == STATE


def test_targeting_by_id_and_class():
    other = FailureMode("agent-loss", ids=(4,))
    assert apply_failure(STATE, SPEC, other, 0) == STATE
    ground_only = FailureMode("sensor-degradation", multiplier=0.5, classes=("ground",))
    assert apply_failure(STATE, SPEC, ground_only, 0) == STATE


def test_failure_mode_validation():
    assert FailureMode("comm-jam", multiplier=1.5).check({0}, {"ground"})
    assert FailureMode("gps-denial").check({0}, {"ground"})
    assert FailureMode("comm-jam", onset=10**6, multiplier=0.5).check({0}, {"ground"}) == []
    assert FailureMode("agent-loss", ids=(9,)).check({0, 1}, {"ground"})
