"""Write the desk-scale scenario corpus to scenarios/ as TOML files."""

from __future__ import annotations

import argparse
import dataclasses
from pathlib import Path

from hetswarm import presets
from hetswarm.model import AgentSpec, Disturbance, GridWorld, PolicySpec, Scenario, TaskSpec
from hetswarm.scenario_file import failures_to_toml, scenario_to_toml


def mixed_tasks() -> Scenario:
    agents = (
        AgentSpec(0, "aerial-rotor", "scout", max_speed=2.0),
        AgentSpec(1, "ground", "worker", max_speed=1.0, sensing_radius=2.0),
        AgentSpec(2, "aerial-fixed-wing", "relay", max_speed=1.5, comm_radius=15.0),
    )
    starts = ((0.0, 0.0), (10.0, 0.0), (0.0, 10.0))
    tasks = (
        TaskSpec((6.0, 8.0), {"air"}),
        TaskSpec((20.0, 5.0), {"ground"}),
        TaskSpec((15.0, 15.0), {"relay"}),
    )
    return Scenario(
        id="mixed-tasks",
        experiment="coverage",
        agents=agents,
        world=GridWorld(40, 40),
        policies=tuple(PolicySpec("stationary") for _ in agents),
        starts=starts,
        horizon=20,
        tasks=tasks,
        task_capacity=1,
    )


def corpus() -> dict[str, Scenario]:
    redundant, single = presets.redundancy_pair()
    return {
        "coverage_homo": presets.coverage_team(fast_fraction=0.0),
        "coverage_hetero": presets.coverage_team(fast_fraction=0.3),
        "coverage_noisy": dataclasses.replace(
            presets.coverage_team(fast_fraction=0.3, name="coverage-noisy"),
            disturbance=Disturbance("gaussian-velocity-noise", 0.1),
        ),
        "mapping_uav": presets.mapping_team(with_ugv=False),
        "mapping_coop": presets.mapping_team(with_ugv=True),
        "relay_direct": presets.relay_team(n_relays=0),
        "relay_assisted": presets.relay_team(n_relays=2),
        "relay_redundant": redundant,
        "relay_single": single,
        "mixed_tasks": mixed_tasks(),
    }


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--out", default=Path(__file__).resolve().parents[1] / "scenarios")
    args = parser.parse_args()
    out = Path(args.out)
    out.mkdir(parents=True, exist_ok=True)
    for name, scenario in corpus().items():
        (out / f"{name}.toml").write_text(scenario_to_toml(scenario), encoding="utf-8")
    (out / "failures_relay_loss.toml").write_text(
        failures_to_toml([presets.relay_loss()]), encoding="utf-8"
    )
    (out / "failures_catalog.toml").write_text(
        failures_to_toml(presets.catalog()), encoding="utf-8"
    )
    print(f"wrote {len(corpus()) + 2} files to {out}")


if __name__ == "__main__":
    main()
