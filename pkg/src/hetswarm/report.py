"""CSV time series and plain-text summaries.

All files use LF line endings and print floats with 6 significant digits, so
identical inputs always give byte-identical outputs.
"""

from __future__ import annotations

import csv
from pathlib import Path
from typing import Iterable, Sequence

from hetswarm.allocation import Assignment, TaskSet
from hetswarm.heterogeneity import HeterogeneityReport, classify
from hetswarm.model import MetricSeries, Scenario
from hetswarm.resilience import Comparison, ResilienceReport

SERIES_COLUMNS = ("t", "eta", "map_quality", "reach", "alive_count")


def fmt(x: float) -> str:
    return f"{x:.6g}"


def _write(path: Path, header: Sequence[str], rows: Iterable[Sequence[str]]) -> Path:
    path.parent.mkdir(parents=True, exist_ok=True)
    with path.open("w", newline="", encoding="utf-8") as fh:
        writer = csv.writer(fh, lineterminator="\n")
        writer.writerow(header)
        writer.writerows(rows)
    return path


def series_filename(ms: MetricSeries) -> str:
    return f"{ms.scenario_id}_seed{ms.seed}.csv"


def emit_series(ms: MetricSeries, directory: str | Path) -> Path:
    rows = (
        (str(t), fmt(eta), fmt(q), fmt(rho), str(alive))
        for t, eta, q, rho, alive in ms.rows()
    )
    return _write(Path(directory) / series_filename(ms), SERIES_COLUMNS, rows)


def emit_comparison(hetero: MetricSeries, homo: MetricSeries, directory: str | Path) -> Path:
    """Outer join of two runs on ``t`` with ``_hetero`` / ``_homo`` columns."""
    metrics = SERIES_COLUMNS[1:]
    header = ["t"] + [f"{m}_{side}" for m in metrics for side in ("hetero", "homo")]
    by_t = [
        {row[0]: row[1:] for row in ms.rows()} for ms in (hetero, homo)
    ]
    rows = []
    for t in sorted(set(by_t[0]) | set(by_t[1])):
        out = [str(t)]
        for k, metric in enumerate(metrics):
            for side in by_t:
                if t not in side:
                    out.append("")
                elif metric == "alive_count":
                    out.append(str(side[t][k]))
                else:
                    out.append(fmt(side[t][k]))
        rows.append(out)
    return _write(Path(directory) / "comparison.csv", header, rows)


def emit_resilience(report: ResilienceReport, directory: str | Path, name: str | None = None) -> Path:
    rows = [
        (label.split("@")[0], label.split("@")[1], fmt(j), fmt(j / report.J_nom))
        for label, j in report.J_f
    ]
    filename = name or f"resilience_{report.scenario_id}.csv"
    return _write(Path(directory) / filename, ("failure_kind", "onset", "J_f", "ratio"), rows)


def _block(title: str, pairs: Iterable[tuple[str, str]]) -> list[str]:
    return [f"[{title}]"] + [f"{k} = {v}" for k, v in pairs]


def heterogeneity_block(report: HeterogeneityReport) -> list[str]:
    lines = _block(
        "heterogeneity",
        [
            ("H_N", fmt(report.H_N)),
            ("H_H", fmt(report.H_H)),
            ("H_O", fmt(report.H_O)),
            ("H_total", fmt(report.H_total)),
        ],
    )
    lines.append(f"classification: {classify(report)}")
    return lines


def assignment_block(ts: TaskSet, assignment: Assignment) -> list[str]:
    lines = ["[assignment]"]
    for j, i in enumerate(assignment.agent_for_task):
        lines.append(f"task {j} -> agent {ts.agent_ids[i]} cost {fmt(ts.costs[i, j])}")
    lines.append(f"total_cost = {fmt(assignment.total_cost)}")
    return lines


def metrics_block(ms: MetricSeries) -> list[str]:
    return _block(
        f"metrics {ms.scenario_id}",
        [
            ("experiment", ms.experiment.value),
            ("seed", str(ms.seed)),
            ("steps", str(len(ms))),
            ("eta_final", fmt(ms.eta[-1])),
            ("map_quality_final", fmt(ms.map_quality[-1])),
            ("reach_max", fmt(max(ms.reach))),
            ("alive_final", str(ms.alive_count[-1])),
            ("J", fmt(ms.J)),
        ],
    )


def resilience_block(report: ResilienceReport) -> list[str]:
    pairs = [("J_nom", fmt(report.J_nom))]
    pairs += [(f"J_f[{label}]", fmt(j)) for label, j in report.J_f]
    pairs += [
        ("R", fmt(report.R)),
        ("ensemble_size", str(report.ensemble_size)),
        ("seeds", " ".join(map(str, report.seeds))),
    ]
    return _block(f"resilience {report.scenario_id}", pairs)


def verdict_line(cmp: Comparison) -> str:
    relation = ">" if cmp.verdict else "<="
    outcome = "heterogeneous more resilient" if cmp.verdict else "no resilience gain"
    return (
        f"verdict: R_hetero = {fmt(cmp.hetero.R)} {relation} "
        f"R_homo = {fmt(cmp.homo.R)} -> {outcome}"
    )


def summarize(
    scenario: Scenario,
    heterogeneity: HeterogeneityReport | None = None,
    tasks: tuple[TaskSet, Assignment] | None = None,
    series: Sequence[MetricSeries] = (),
    resilience: Sequence[ResilienceReport] = (),
    comparison: Comparison | None = None,
) -> str:
    """Structured text report; sections appear only for the inputs given."""
    lines = [
        f"scenario: {scenario.id} ({scenario.experiment.value}, "
        f"{len(scenario.agents)} agents, T = {scenario.horizon}, seed = {scenario.seed})"
    ]
    blocks = []
    if heterogeneity is not None:
        blocks.append(heterogeneity_block(heterogeneity))
    if tasks is not None:
        blocks.append(assignment_block(*tasks))
    blocks.extend(metrics_block(ms) for ms in series)
    blocks.extend(resilience_block(r) for r in resilience)
    if comparison is not None:
        blocks.append([verdict_line(comparison)])
    for block in blocks:
        lines.append("")
        lines.extend(block)
    return "\n".join(lines) + "\n"
