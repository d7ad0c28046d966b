"""Run the three desk-scale experiments and the resilience pair, writing plot-ready CSVs.

    python3 scripts/run_experiments.py --out results

Output layout (see the README cookbook for plotting):

    coverage/   comparison.csv plus one series per team, and fast_fraction.csv
    mapping/    comparison.csv plus one series per team
    relay/      comparison.csv plus one series per team
    resilience/ resilience_hetero.csv, resilience_homo.csv, catalog.csv
"""

from __future__ import annotations

import argparse
import csv
import math
from pathlib import Path

from hetswarm import presets
from hetswarm.report import emit_comparison, emit_resilience, emit_series, fmt
from hetswarm.resilience import compare_resilience, resilience_index
from hetswarm.sim.kernel import run_scenario


def pair(hetero, homo, out: Path) -> None:
    a, b = run_scenario(hetero), run_scenario(homo)
    emit_series(a, out)
    emit_series(b, out)
    emit_comparison(a, b, out)
    print(f"{out.name}: J hetero {fmt(a.J)}, homo {fmt(b.J)}")


def fast_fraction_sweep(out: Path, n_agents: int = 10) -> None:
    """Time to 90% coverage against the share of fast agents."""
    rows = []
    for n_fast in range(n_agents + 1):
        ms = run_scenario(presets.coverage_team(n_agents, n_fast / n_agents))
        t90 = next((t for t, e in zip(ms.t, ms.eta) if e >= 0.9), math.inf)
        rows.append((fmt(n_fast / n_agents), str(t90), fmt(ms.J)))
    with (out / "fast_fraction.csv").open("w", newline="") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(("fast_fraction", "t_eta_0.9", "eta_T"))
        writer.writerows(rows)


def main() -> None:
    parser = argparse.ArgumentParser(description=__doc__.split("\n\n")[0])
    parser.add_argument("--out", default="results")
    parser.add_argument("--ensemble", type=int, default=16)
    args = parser.parse_args()
    root = Path(args.out)
    dirs = {name: root / name for name in ("coverage", "mapping", "relay", "resilience")}
    for d in dirs.values():
        d.mkdir(parents=True, exist_ok=True)

    pair(presets.coverage_team(10, 0.3), presets.coverage_team(10, 0.0), dirs["coverage"])
    fast_fraction_sweep(dirs["coverage"])
    pair(presets.mapping_team(True), presets.mapping_team(False), dirs["mapping"])
    pair(presets.relay_team(2), presets.relay_team(0), dirs["relay"])

    hetero, homo = presets.redundancy_pair()
    cmp = compare_resilience(hetero, homo, [presets.relay_loss()], args.ensemble)
    emit_resilience(cmp.hetero, dirs["resilience"], "resilience_hetero.csv")
    emit_resilience(cmp.homo, dirs["resilience"], "resilience_homo.csv")
    report = resilience_index(presets.coverage_team(10, 0.3), presets.catalog(), args.ensemble)
    emit_resilience(report, dirs["resilience"], "catalog.csv")
    print(f"resilience: R hetero {fmt(cmp.hetero.R)}, homo {fmt(cmp.homo.R)}; "
          f"catalog R {fmt(report.R)}")


if __name__ == "__main__":
    main()
