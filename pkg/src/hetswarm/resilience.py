"""Nominal vs. degraded performance and the resilience index.

J for one run is the normalized final metric of its experiment (see
:func:`hetswarm.sim.kernel.mission_performance`). Ensembles use seeds
``seed, seed + 1, ..., seed + K - 1``, and every failure variant reuses the
same seeds as the nominal ensemble (common random numbers).
"""

from __future__ import annotations

import dataclasses
import math
from dataclasses import dataclass
from typing import Sequence

from hetswarm.failures import FailureKind, FailureMode
from hetswarm.model import DisturbanceKind, Scenario
from hetswarm.sim.kernel import run_scenario


class UndefinedIndexError(ValueError):
    """The resilience index cannot be formed (zero nominal performance or no failures)."""


@dataclass(frozen=True)
class ResilienceReport:
    scenario_id: str
    J_nom: float
    J_f: tuple[tuple[str, float], ...]
    R: float
    ensemble_size: int
    seeds: tuple[int, ...]

    @property
    def ratios(self) -> tuple[tuple[str, float], ...]:
        return tuple((label, j / self.J_nom) for label, j in self.J_f)


def _stochastic(s: Scenario) -> bool:
    noisy = s.disturbance.kind is DisturbanceKind.GAUSSIAN and s.disturbance.sigma > 0
    return noisy or any(f.kind is FailureKind.GPS_DENIAL for f in s.failures)


def ensemble_seeds(s: Scenario, k: int) -> tuple[int, ...]:
    """Seeds actually run: all ``k`` for stochastic scenarios, else just one."""
    if k < 1:
        raise ValueError("ensemble size must be at least 1")
    return tuple(range(s.seed, s.seed + k)) if _stochastic(s) else (s.seed,)


def expected_performance(s: Scenario, k: int) -> float:
    """Mean J over the seed ensemble of ``s`` (failure schedule included)."""
    seeds = ensemble_seeds(s, k)
    values = [run_scenario(dataclasses.replace(s, seed=seed)).J for seed in seeds]
    return math.fsum(values) / len(values)


def nominal_performance(s: Scenario, k: int = 1) -> float:
    """Expected J without failures.

    Deterministic scenarios run once, so the result equals the single run's J
    for any ``k``.
    """
    if s.failures:
        raise ValueError("nominal performance needs a scenario without a failure schedule")
    return expected_performance(s, k)


def resilience_index(s: Scenario, failures: Sequence[FailureMode], k: int = 1) -> ResilienceReport:
    """Mean over failure modes of J under that failure divided by J_nom."""
    if not failures:
        raise UndefinedIndexError("the failure set must be nonempty")
    base = dataclasses.replace(s, failures=())
    j_nom = nominal_performance(base, k)
    if not j_nom > 0.0:
        raise UndefinedIndexError(
            f"J_nom = {j_nom} for scenario {s.id!r}; the index divides by it "
            "(try a longer horizon)"
        )
    j_f = tuple(
        (mode.label, expected_performance(dataclasses.replace(base, failures=(mode,)), k))
        for mode in failures
    )
    r = math.fsum(j / j_nom for _, j in j_f) / len(j_f)
    seeds = sorted(
        set(ensemble_seeds(base, k)).union(
            *(ensemble_seeds(dataclasses.replace(base, failures=(m,)), k) for m in failures)
        )
    )
    return ResilienceReport(s.id, j_nom, j_f, r, k, tuple(seeds))


@dataclass(frozen=True)
class Comparison:
    hetero: ResilienceReport
    homo: ResilienceReport

    @property
    def verdict(self) -> bool:
        """True when the heterogeneous configuration is strictly more resilient."""
        return self.hetero.R > self.homo.R


def compare_resilience(
    hetero: Scenario, homo: Scenario, failures: Sequence[FailureMode], k: int = 1
) -> Comparison:
    return Comparison(resilience_index(hetero, failures, k), resilience_index(homo, failures, k))


# mission characteristic -> recommended heterogeneity type
ADVICE: dict[str, str] = {
    "Uniform environment, dynamic roles": "Nature-based",
    "Hardware replacement speed critical": "Nature-based",
    "Multi-environment coverage required": "Operational-space + Hardware",
    "Sensing diversity needed": "Hardware-based",
    "Strict energy/logistics constraints": "Nature-based or single-space hardware",
    "Large geographic area, communication relay needed": "Hardware-based (fixed-wing + rotorcraft)",
    "Adversarial environment, jamming risk": "Nature-based (learned, decentralized)",
}


def advise(characteristic: str) -> str:
    """Recommended heterogeneity type for a mission characteristic (case-insensitive)."""
    wanted = " ".join(characteristic.split()).lower()
    for key, value in ADVICE.items():
        if key.lower() == wanted:
            return value
    known = "; ".join(ADVICE)
    raise KeyError(f"unknown mission characteristic {characteristic!r}; known: {known}")
