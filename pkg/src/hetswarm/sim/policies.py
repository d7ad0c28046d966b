"""Deterministic movement policies.

A compiled policy turns (step index, perceived position) into a commanded
velocity whose norm never exceeds the agent's max speed. Sweeps follow a
boustrophedon path sampled at full speed, so the target point at step ``t``
is a pure function of ``t``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from hetswarm.model import AgentSpec, Point, PolicyKind, PolicySpec

Region = tuple[float, float, float, float]


def clip_speed(v: Point, max_speed: float) -> Point:
    """Scale ``v`` down so that ``hypot(*v) <= max_speed`` holds exactly."""
    norm = math.hypot(v[0], v[1])
    if norm <= max_speed:
        return v
    scale = max_speed / norm
    while math.hypot(v[0] * scale, v[1] * scale) > max_speed:
        scale = math.nextafter(scale, 0.0)
    return (v[0] * scale, v[1] * scale)


def default_lane_spacing(sensing_radius: float, step_length: float) -> float:
    """Widest odd lane spacing whose swath is fully covered at this step length.

    Consecutive samples along a lane are ``step_length`` apart, so a cell at
    lateral offset ``dy`` is guaranteed covered when
    ``dy**2 + (step_length / 2)**2 <= r**2``.
    """
    half_sq = sensing_radius**2 - (step_length / 2.0) ** 2
    if half_sq < 0:
        return 1.0
    return 2.0 * math.floor(math.sqrt(half_sq)) + 1.0


def _lanes(lo: float, hi: float, half: float, spacing: float) -> list[float]:
    if hi - lo <= 2 * half:
        return [(lo + hi) / 2.0]
    lanes = []
    y = lo + half
    while True:
        lanes.append(min(y, hi - half))
        if y >= hi - half:
            return lanes
        y += spacing


def sweep_waypoints(region: Region, spacing: float, descending: bool = False) -> list[Point]:
    """Boustrophedon waypoints over ``region`` with horizontal lanes."""
    x0, y0, x1, y1 = region
    half = (spacing - 1.0) / 2.0
    xa, xb = (x0 + half, x1 - half) if x1 - x0 > 2 * half else ((x0 + x1) / 2,) * 2
    lanes = _lanes(y0, y1, half, spacing)
    if descending:
        lanes = [y0 + y1 - y for y in lanes]
    points: list[Point] = []
    for k, y in enumerate(lanes):
        ends = [(xa, y), (xb, y)]
        points.extend(ends if k % 2 == 0 else ends[::-1])
    deduped = [points[0]]
    for p in points[1:]:
        if p != deduped[-1]:
            deduped.append(p)
    return deduped


def sweep_samples(waypoints: Sequence[Point], step_length: float) -> tuple[Point, ...]:
    """Positions at the end of each step along ``waypoints``.

    Steps never cut a corner: a step that would pass a waypoint ends on it,
    so every waypoint is visited.
    """
    samples = [waypoints[0]]
    for a, b in zip(waypoints, waypoints[1:]):
        seg = math.hypot(b[0] - a[0], b[1] - a[1])
        n = math.ceil(seg / step_length - 1e-9)
        for k in range(1, n):
            f = k * step_length / seg
            samples.append((a[0] + f * (b[0] - a[0]), a[1] + f * (b[1] - a[1])))
        samples.append(b)
    return tuple(samples)


def speed_partition(width: int, height: int, speeds: Sequence[float]) -> list[Region]:
    """Split the columns into vertical strips with widths proportional to speed."""
    weights = [Fraction(s).limit_denominator(10**6) for s in speeds]
    total = sum(weights)
    bounds = [0]
    running = Fraction(0)
    for w in weights:
        running += w
        bounds.append(round(width * running / total))
    regions = []
    for lo, hi in zip(bounds, bounds[1:]):
        hi = max(hi, lo + 1)
        regions.append((float(lo), 0.0, float(min(hi, width) - 1), float(height - 1)))
    return regions


@dataclass(frozen=True)
class CompiledPolicy:
    kind: PolicyKind
    max_speed: float
    path: tuple[Point, ...] | None = None
    target: Point | None = None

    @property
    def start(self) -> Point | None:
        return self.path[0] if self.path is not None else None

    def command(self, t: int, perceived: Point, dt: float) -> Point:
        """Velocity for the move that ends at step ``t``."""
        if self.kind is PolicyKind.STATIONARY:
            return (0.0, 0.0)
        if self.kind is PolicyKind.LAWNMOWER:
            goal = self.path[min(t, len(self.path) - 1)]
        else:
            goal = self.target
        return clip_speed(
            ((goal[0] - perceived[0]) / dt, (goal[1] - perceived[1]) / dt), self.max_speed
        )


def compile_policy(
    spec: AgentSpec, policy: PolicySpec, dt: float, region: Region | None = None
) -> CompiledPolicy:
    if policy.kind is PolicyKind.LAWNMOWER:
        region = policy.region or region
        if region is None:
            raise ValueError(f"agent {spec.id}: lawnmower sweep has no region")
        spacing = policy.lane_spacing or default_lane_spacing(
            spec.sensing_radius, spec.max_speed * dt
        )
        path = sweep_samples(
            sweep_waypoints(region, spacing, policy.descending), spec.max_speed * dt
        )
        return CompiledPolicy(policy.kind, spec.max_speed, path=path)
    return CompiledPolicy(policy.kind, spec.max_speed, target=policy.target)
