"""Communication graph, multi-hop connectivity to ground control, mission reach."""

from __future__ import annotations

import math
from collections import deque
from typing import Collection, Sequence

from hetswarm.model import GROUND, AgentSpec, AgentState, GridWorld, InteractionGraph, Point


def _dist(a: Point, b: Point) -> float:
    return math.hypot(a[0] - b[0], a[1] - b[1])


def build_comm_graph(
    specs: Sequence[AgentSpec],
    states: Sequence[AgentState],
    world: GridWorld,
    ground_range: float | None = None,
) -> InteractionGraph:
    """Edges between alive nodes closer than the smaller of their two ranges.

    Agent ranges come from the (possibly degraded) states; the ground node
    uses ``ground_range`` or ``world.ground_range`` and is always alive.
    """
    g_range = world.ground_range if ground_range is None else ground_range
    nodes = (GROUND,) + tuple(s.id for s in specs)
    live = [(spec.id, st) for spec, st in zip(specs, states) if st.alive]
    edges = set()
    for k, (i, si) in enumerate(live):
        if _dist(si.position, world.ground) <= min(g_range, si.comm_radius):
            edges.add((GROUND, i) if GROUND < i else (i, GROUND))
        for j, sj in live[k + 1 :]:
            if _dist(si.position, sj.position) <= min(si.comm_radius, sj.comm_radius):
                edges.add((min(i, j), max(i, j)))
    return InteractionGraph(nodes, frozenset(edges))


def connected_set(
    g: InteractionGraph,
    ground: int = GROUND,
    forwarders: Collection[int] | None = None,
) -> set[int]:
    """Agents with a multi-hop path to ``ground`` (breadth-first search).

    With ``forwarders`` given, only the ground node and those agents relay
    traffic; any other agent can still be the endpoint of a path.
    """
    adj = g.neighbors()
    seen = {ground}
    queue = deque([ground])
    while queue:
        node = queue.popleft()
        if node != ground and forwarders is not None and node not in forwarders:
            continue
        for nxt in adj.get(node, ()):
            if nxt not in seen:
                seen.add(nxt)
                queue.append(nxt)
    seen.discard(ground)
    return seen


def mission_reach(
    connected: Collection[int],
    positions: dict[int, Point],
    world: GridWorld,
) -> float:
    """Largest ground-control distance over the connected agents (0 if none)."""
    return max((_dist(positions[i], world.ground) for i in connected), default=0.0)
