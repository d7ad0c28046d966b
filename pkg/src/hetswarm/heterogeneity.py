"""Swarm heterogeneity from per-agent feature vectors.

Each agent carries three attribute groups:

* nature (N): role (categorical) and the collision-tolerance scalar ``alpha``
* hardware (H): max speed, sensing radius, communication radius, energy
* operational space (O): the space label (categorical)

Distances inside a group are Gower distances: numeric attributes are
min-max normalized over declared ranges and compared by absolute
difference, categorical attributes contribute 0/1 on mismatch, and the
group distance is the mean over its attributes.
"""

from __future__ import annotations

import itertools
import math
import warnings
from dataclasses import dataclass
from enum import Enum
from typing import TYPE_CHECKING, Sequence

if TYPE_CHECKING:
    from hetswarm.model import AgentSpec


class FeatureKind(str, Enum):
    NATURE = "N"
    HARDWARE = "H"
    OPERATIONAL = "O"


class HeterogeneityWarning(UserWarning):
    """Raised (as a warning) when a measure is undefined and reported as zero."""


@dataclass(frozen=True)
class NormalizationRanges:
    """Declared (low, high) ranges for each numeric attribute."""

    alpha: tuple[float, float] = (0.0, 1.0)
    max_speed: tuple[float, float] = (0.0, 2.0)
    sensing_radius: tuple[float, float] = (0.0, 10.0)
    comm_radius: tuple[float, float] = (0.0, 40.0)
    energy: tuple[float, float] = (0.0, 1000.0)

    def items(self) -> list[tuple[str, tuple[float, float]]]:
        return [
            ("alpha", self.alpha),
            ("max_speed", self.max_speed),
            ("sensing_radius", self.sensing_radius),
            ("comm_radius", self.comm_radius),
            ("energy", self.energy),
        ]


DEFAULT_RANGES = NormalizationRanges()

HARDWARE_ATTRIBUTES = ("max_speed", "sensing_radius", "comm_radius", "energy")


@dataclass(frozen=True)
class HeterogeneityWeights:
    alpha_N: float = 1.0
    alpha_H: float = 1.0
    alpha_O: float = 1.0

    def __post_init__(self) -> None:
        for name in ("alpha_N", "alpha_H", "alpha_O"):
            value = getattr(self, name)
            if not value >= 0.0:
                raise ValueError(f"weight {name} must be nonnegative, got {value!r}")


@dataclass(frozen=True)
class HeterogeneityReport:
    H_N: float
    H_H: float
    H_O: float
    H_total: float

    @property
    def multi_space(self) -> bool:
        return self.H_O > 0.0

    @property
    def homogeneous(self) -> bool:
        return self.H_total == 0.0


def _scaled(value: float, bounds: tuple[float, float]) -> float:
    lo, hi = bounds
    return (value - lo) / (hi - lo)


def feature_distance(
    a: AgentSpec,
    b: AgentSpec,
    kind: FeatureKind | str,
    ranges: NormalizationRanges = DEFAULT_RANGES,
) -> float:
    """Gower distance between the ``kind`` attribute groups of two agents."""
    kind = FeatureKind(kind)
    if kind is FeatureKind.NATURE:
        terms = [
            0.0 if a.role == b.role else 1.0,
            abs(_scaled(a.alpha, ranges.alpha) - _scaled(b.alpha, ranges.alpha)),
        ]
    elif kind is FeatureKind.HARDWARE:
        terms = [
            abs(
                _scaled(getattr(a, name), getattr(ranges, name))
                - _scaled(getattr(b, name), getattr(ranges, name))
            )
            for name in HARDWARE_ATTRIBUTES
        ]
    else:
        terms = [0.0 if a.space == b.space else 1.0]
    return math.fsum(terms) / len(terms)


def heterogeneity_measure(
    agents: Sequence[AgentSpec],
    kind: FeatureKind | str,
    ranges: NormalizationRanges = DEFAULT_RANGES,
) -> float:
    """Average pairwise feature distance over all unordered agent pairs.

    Fewer than two agents have no pairwise diversity; the result is 0.0 and a
    :class:`HeterogeneityWarning` is emitted.
    """
    n = len(agents)
    if n < 2:
        warnings.warn(
            f"heterogeneity undefined for {n} agent(s); reporting 0.0",
            HeterogeneityWarning,
            stacklevel=2,
        )
        return 0.0
    total = math.fsum(
        feature_distance(a, b, kind, ranges) for a, b in itertools.combinations(agents, 2)
    )
    return 2.0 * total / (n * (n - 1))


def total_heterogeneity(
    agents: Sequence[AgentSpec],
    weights: HeterogeneityWeights = HeterogeneityWeights(),
    ranges: NormalizationRanges = DEFAULT_RANGES,
) -> HeterogeneityReport:
    h_n = heterogeneity_measure(agents, FeatureKind.NATURE, ranges)
    h_h = heterogeneity_measure(agents, FeatureKind.HARDWARE, ranges)
    h_o = heterogeneity_measure(agents, FeatureKind.OPERATIONAL, ranges)
    h_total = weights.alpha_N * h_n + weights.alpha_H * h_h + weights.alpha_O * h_o
    return HeterogeneityReport(H_N=h_n, H_H=h_h, H_O=h_o, H_total=h_total)


def classify(report: HeterogeneityReport) -> str:
    """One-line single/multi-space classification used in summaries."""
    space = "multi-space" if report.multi_space else "single-space"
    if report.homogeneous:
        return f"{space}, homogeneous (H_total = 0)"
    return f"{space}, heterogeneous (H_total = {report.H_total:.6g})"
