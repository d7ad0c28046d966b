import numpy as np
import pytest
from hypothesis import given, settings, strategies as st

from conftest import closure_oracle, random_graph
from hetswarm.model import GROUND, AgentSpec, AgentState, GridWorld, InteractionGraph
from hetswarm.sim.comm import build_comm_graph, connected_set, mission_reach

WORLD = GridWorld(50, 50, ground=(0.0, 0.0), ground_range=10.0)


def pair(r1, r2, d=5.0, alive2=True):
    specs = [AgentSpec(0, "ground", comm_radius=r1), AgentSpec(1, "ground", comm_radius=r2)]
    states = [
        AgentState((30.0, 30.0), comm_radius=r1),
        AgentState((30.0 + d, 30.0), comm_radius=r2, alive=alive2),
    ]
    return build_comm_graph(specs, states, WORLD)


def test_equal_ranges_link():
    assert pair(6.0, 6.0).has_edge(0, 1)


def test_min_range_rule_drops_edge():
    assert not pair(6.0, 4.0).has_edge(0, 1)


def test_dead_agent_has_no_edges():
    g = pair(6.0, 6.0, alive2=False)
    assert all(1 not in e for e in g.edges)


def chain():
    # ground at origin, relay 8 out, scout 16 out; ground range 10
    specs = [
        AgentSpec(0, "aerial-rotor", role="relay", comm_radius=10.0),
        AgentSpec(1, "ground", role="scout", comm_radius=10.0),
    ]
    states = [
        AgentState((8.0, 0.0), comm_radius=10.0),
        AgentState((16.0, 0.0), comm_radius=10.0),
    ]
    return specs, states


def test_chain_reaches_scout_through_relay():
    specs, states = chain()
    g = build_comm_graph(specs, states, WORLD)
    assert not g.has_edge(GROUND, 1)
    assert connected_set(g) == {0, 1}
    assert connected_set(g, forwarders={0}) == {0, 1}
    assert mission_reach({0, 1}, {0: (8.0, 0.0), 1: (16.0, 0.0)}, WORLD) == 16.0


def test_chain_breaks_when_relay_dies():
    specs, states = chain()
    states[0] = AgentState((8.0, 0.0), comm_radius=10.0, alive=False)
    assert connected_set(build_comm_graph(specs, states, WORLD)) == set()


def test_non_forwarders_do_not_relay():
    specs, states = chain()
    g = build_comm_graph(specs, states, WORLD)
    assert connected_set(g, forwarders=set()) == {0}


def test_empty_and_clique():
    nodes = (GROUND, 0, 1, 2)
    assert connected_set(InteractionGraph(nodes, frozenset())) == set()
    clique = frozenset((a, b) for a in nodes for b in nodes if a < b)
    assert connected_set(InteractionGraph(nodes, clique)) == {0, 1, 2}


def test_reach_values():
    assert mission_reach(set(), {}, WORLD) == 0.0
    assert mission_reach({3}, {3: (7.2, 0.0)}, WORLD) == pytest.approx(7.2)


@settings(max_examples=100, deadline=None)
@given(seed=st.integers(0, 2**32 - 1))
def test_bfs_matches_matrix_closure(seed):
    g = random_graph(np.random.default_rng(seed))
    assert connected_set(g) == closure_oracle(g, GROUND)


@settings(max_examples=50, deadline=None)
@given(seed=st.integers(0, 2**32 - 1), n=st.integers(1, 8))
def test_geometric_graph_is_symmetric_and_alive_only(seed, n):
    rng = np.random.default_rng(seed)
    specs = [AgentSpec(i, "ground", comm_radius=float(rng.uniform(0, 30))) for i in range(n)]
    states = [
        AgentState(
            (float(rng.uniform(0, 49)), float(rng.uniform(0, 49))),
            comm_radius=s.comm_radius,
            alive=bool(rng.random() < 0.8),
        )
        for s in specs
    ]
    g = build_comm_graph(specs, states, WORLD)
    adj = g.neighbors()
    for a, nbrs in adj.items():
        for b in nbrs:
            assert a in adj[b]
    dead = {s.id for s, st in zip(specs, states) if not st.alive}
    assert not any(set(e) & dead for e in g.edges)
    assert connected_set(g) <= {s.id for s in specs} - dead
