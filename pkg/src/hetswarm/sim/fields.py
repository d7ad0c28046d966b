"""Coverage accounting and obstacle-knowledge mapping."""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable

import numpy as np

from hetswarm.model import AgentState, GridWorld, Point


@dataclass(frozen=True)
class CoverageField:
    """Per-cell covered flags (indexed ``[row, col]``) and first-covered step."""

    covered: np.ndarray
    first_covered: np.ndarray

    @classmethod
    def empty(cls, world: GridWorld) -> CoverageField:
        shape = (world.height, world.width)
        return cls(np.zeros(shape, dtype=bool), np.full(shape, -1, dtype=np.int64))

    @property
    def count(self) -> int:
        return int(self.covered.sum())


def disc_mask(world: GridWorld, center: Point, radius: float):
    """Slices and boolean mask of cell centers within ``radius`` of ``center``."""
    cx, cy = center
    # one cell of slack so float rounding in the box never drops a cell the mask keeps
    c0 = max(0, math.ceil(cx - radius) - 1)
    c1 = min(world.width - 1, math.floor(cx + radius) + 1)
    r0 = max(0, math.ceil(cy - radius) - 1)
    r1 = min(world.height - 1, math.floor(cy + radius) + 1)
    if c0 > c1 or r0 > r1:
        return None
    cols = np.arange(c0, c1 + 1, dtype=float)
    rows = np.arange(r0, r1 + 1, dtype=float)
    dist = np.hypot(cols[None, :] - cx, rows[:, None] - cy)
    return (slice(r0, r1 + 1), slice(c0, c1 + 1)), dist <= radius


def covered_set_update(
    field: CoverageField, agents: Iterable[AgentState], world: GridWorld, t: int
) -> CoverageField:
    """Mark every cell within the sensing disc of an alive agent as covered."""
    covered = field.covered.copy()
    first = field.first_covered.copy()
    for state in agents:
        if not state.alive:
            continue
        hit = disc_mask(world, state.position, state.sensing_radius)
        if hit is None:
            continue
        window, mask = hit
        fresh = mask & ~covered[window]
        covered[window] |= mask
        first[window][fresh] = t
    return CoverageField(covered, first)


def coverage_ratio(field: CoverageField, world: GridWorld) -> float:
    return field.count / world.n_cells


@dataclass(frozen=True)
class KnowledgeMap:
    """Per-obstacle mapping confidence with the two observers' parameters."""

    confidence: tuple[float, ...]
    alpha_uav: float = 0.25
    alpha_ugv: float = 0.25
    r_uav: float = 3.0
    r_ugv: float = 2.0

    @classmethod
    def empty(cls, n_obstacles: int, **params) -> KnowledgeMap:
        return cls((0.0,) * n_obstacles, **params)


def _within(o: Point, p: Point, r: float) -> bool:
    return math.hypot(o[0] - p[0], o[1] - p[1]) <= r


def knowledge_update(
    km: KnowledgeMap,
    uav: AgentState | None,
    ugv: AgentState | None,
    world: GridWorld,
) -> KnowledgeMap:
    """One clamped confidence increment per observer that sees each obstacle.

    A missing or dead observer contributes nothing.
    """
    uav_pos = uav.position if uav is not None and uav.alive else None
    ugv_pos = ugv.position if ugv is not None and ugv.alive else None
    updated = []
    for q, o in zip(km.confidence, world.obstacles):
        gain = 0.0
        if uav_pos is not None and _within(o, uav_pos, km.r_uav):
            gain += km.alpha_uav
        if ugv_pos is not None and _within(o, ugv_pos, km.r_ugv):
            gain += km.alpha_ugv
        updated.append(min(1.0, q + gain))
    return KnowledgeMap(tuple(updated), km.alpha_uav, km.alpha_ugv, km.r_uav, km.r_ugv)


def map_quality(km: KnowledgeMap) -> float:
    if not km.confidence:
        return 0.0
    return math.fsum(km.confidence) / len(km.confidence)
