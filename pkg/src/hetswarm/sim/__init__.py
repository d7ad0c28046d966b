from hetswarm.sim.comm import build_comm_graph, connected_set, mission_reach
from hetswarm.sim.fields import (
    CoverageField,
    KnowledgeMap,
    coverage_ratio,
    covered_set_update,
    knowledge_update,
    map_quality,
)
from hetswarm.sim.kernel import ScenarioError, mission_performance, run_scenario, step_kinematics

__all__ = [
    "CoverageField",
    "KnowledgeMap",
    "ScenarioError",
    "build_comm_graph",
    "connected_set",
    "coverage_ratio",
    "covered_set_update",
    "knowledge_update",
    "map_quality",
    "mission_performance",
    "mission_reach",
    "run_scenario",
    "step_kinematics",
]
