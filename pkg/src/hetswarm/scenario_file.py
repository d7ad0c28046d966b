"""TOML scenario files.

One scenario per file. Only ``experiment`` and at least one ``[[agents]]``
entry are required; every other key falls back to the simulator defaults.
Unknown keys are rejected. Schema::

    id = "coverage-hetero"          # default: file stem
    experiment = "coverage"         # coverage | mapping | relay-reach
    horizon = 600                   # steps
    dt = 1.0
    seed = 0
    forwarding = "relays"           # relays | all: which agents relay traffic
    task_capacity = 1               # optional max tasks per agent

    [world]
    width = 100
    height = 100
    ground = [0.0, 0.0]             # ground-control node
    ground_range = 20.0
    obstacles = [[3.0, 4.0]]        # explicit obstacle cells, and/or
    random_obstacles = { count = 40, seed = 7 }

    [disturbance]
    kind = "none"                   # none | gaussian-velocity-noise
    sigma = 0.0

    [mapping]
    alpha_uav = 0.25
    alpha_ugv = 0.25

    [heterogeneity]                 # weights of the three measures
    alpha_N = 1.0
    alpha_H = 1.0
    alpha_O = 1.0

    [normalization]                 # declared [low, high] per numeric attribute
    alpha = [0.0, 1.0]
    max_speed = [0.0, 2.0]
    sensing_radius = [0.0, 10.0]
    comm_radius = [0.0, 40.0]
    energy = [0.0, 1000.0]

    [[agents]]
    id = 0
    class = "aerial-rotor"          # aerial-rotor | aerial-fixed-wing | ground | water-surface | underwater
    role = "scout"                  # scout | relay | mapper | worker | reserve
    space = "air"                   # default: implied by class
    max_speed = 1.0
    sensing_radius = 3.0
    comm_radius = 20.0
    energy = 1000.0
    alpha = 0.5
    start = [0.0, 0.0]              # default: chosen by the policy
    policy = "lawnmower-sweep"      # default; or waypoint-relay-hold | stationary | frontier-advance
    region = [0.0, 0.0, 99.0, 99.0] # sweep region x0, y0, x1, y1
    lane_spacing = 5.0
    descending = false
    target = [50.0, 50.0]           # relay hold point or advance goal

    [[tasks]]
    position = [6.0, 8.0]
    requires = ["ground"]

    [[failures]]
    kind = "agent-loss"             # agent-loss | comm-jam | sensor-degradation | gps-denial | energy-depletion
    onset = 0
    ids = [0]
    multiplier = 0.5
    classes = ["aerial-rotor"]
    sigma = 0.5

A failures file for the ``resilience`` command holds only ``[[failures]]``.
"""

from __future__ import annotations

import dataclasses
import re
from pathlib import Path
from typing import Any

import tomli
import tomli_w

from hetswarm.failures import FailureMode
from hetswarm.heterogeneity import HeterogeneityWeights, NormalizationRanges
from hetswarm.model import (
    AgentSpec,
    Disturbance,
    GridWorld,
    MappingParams,
    PolicyKind,
    PolicySpec,
    Scenario,
    TaskSpec,
    validate_scenario,
)
from hetswarm.presets import random_obstacles
from hetswarm.sim.kernel import ScenarioError


class ScenarioParseError(ValueError):
    def __init__(self, message: str, path: str | Path | None = None, line: int | None = None):
        where = str(path) if path is not None else "<scenario>"
        if line is not None:
            where += f":{line}"
        super().__init__(f"{where}: {message}")
        self.path = path
        self.line = line


TOP_KEYS = {
    "id", "experiment", "horizon", "dt", "seed", "forwarding", "task_capacity",
    "world", "disturbance", "mapping", "heterogeneity", "normalization",
    "agents", "tasks", "failures",
}
WORLD_KEYS = {"width", "height", "ground", "ground_range", "obstacles", "random_obstacles"}
AGENT_KEYS = {
    "id", "class", "role", "space", "max_speed", "sensing_radius", "comm_radius",
    "energy", "alpha", "start", "policy", "region", "lane_spacing", "descending", "target",
}
TASK_KEYS = {"position", "requires"}
FAILURE_KEYS = {"kind", "onset", "ids", "multiplier", "classes", "sigma"}
TABLE_KEYS = {
    "disturbance": {"kind", "sigma"},
    "mapping": {"alpha_uav", "alpha_ugv"},
    "heterogeneity": {"alpha_N", "alpha_H", "alpha_O"},
    "normalization": {"alpha", "max_speed", "sensing_radius", "comm_radius", "energy"},
}


class _Reader:
    def __init__(self, text: str, path: str | Path | None) -> None:
        self.lines = text.splitlines()
        self.path = path

    def line_of(self, key: str) -> int | None:
        pattern = re.compile(rf"^\s*(\[\[?\s*{re.escape(key)}\s*\]\]?|{re.escape(key)}\s*=)")
        for n, line in enumerate(self.lines, start=1):
            if pattern.match(line):
                return n
        return None

    def fail(self, message: str, key: str | None = None):
        line = self.line_of(key) if key else None
        raise ScenarioParseError(message, self.path, line)

    def check_keys(self, table: dict, allowed: set[str], where: str) -> None:
        for key in table:
            if key not in allowed:
                self.fail(f"unknown key {key!r} in {where}", key)

    def table(self, doc: dict, key: str) -> dict:
        value = doc.get(key, {})
        if not isinstance(value, dict):
            self.fail(f"{key!r} must be a table", key)
        return value

    def tables(self, doc: dict, key: str) -> list[dict]:
        value = doc.get(key, [])
        if not isinstance(value, list) or not all(isinstance(v, dict) for v in value):
            self.fail(f"{key!r} must be an array of tables ([[{key}]])", key)
        return value


def _point(value: Any) -> tuple[float, float]:
    x, y = value
    return (float(x), float(y))


def _build(reader: _Reader, key: str, factory, **kwargs):
    try:
        return factory(**kwargs)
    except (TypeError, ValueError, KeyError) as exc:
        reader.fail(f"bad {key}: {exc}", key)


def _failures(reader: _Reader, entries: list[dict]) -> tuple[FailureMode, ...]:
    modes = []
    for entry in entries:
        reader.check_keys(entry, FAILURE_KEYS, "[[failures]]")
        if "kind" not in entry:
            reader.fail("failure entry needs a 'kind'", "failures")
        modes.append(_build(reader, "kind", FailureMode, **entry))
    return tuple(modes)


def scenario_from_toml(text: str, path: str | Path | None = None, validate: bool = True) -> Scenario:
    reader = _Reader(text, path)
    try:
        doc = tomli.loads(text)
    except tomli.TOMLDecodeError as exc:
        match = re.search(r"line (\d+)", str(exc))
        raise ScenarioParseError(str(exc), path, int(match.group(1)) if match else None) from exc

    reader.check_keys(doc, TOP_KEYS, "top level")
    if "experiment" not in doc:
        reader.fail("missing required key 'experiment'")
    agents_raw = reader.tables(doc, "agents")
    if not agents_raw:
        reader.fail("at least one [[agents]] entry is required")

    world_raw = reader.table(doc, "world")
    reader.check_keys(world_raw, WORLD_KEYS, "[world]")
    w_kwargs = {k: world_raw[k] for k in ("width", "height", "ground_range") if k in world_raw}
    if "ground" in world_raw:
        w_kwargs["ground"] = _point(world_raw["ground"])
    obstacles = [_point(o) for o in world_raw.get("obstacles", [])]
    if "random_obstacles" in world_raw:
        spec = world_raw["random_obstacles"]
        if not isinstance(spec, dict) or set(spec) - {"count", "seed"} or "count" not in spec:
            reader.fail("random_obstacles must be { count = N, seed = S }", "random_obstacles")
        obstacles.extend(
            random_obstacles(
                int(w_kwargs.get("width", 100)),
                int(w_kwargs.get("height", 100)),
                int(spec["count"]),
                int(spec.get("seed", 0)),
            )
        )
    world = _build(reader, "world", GridWorld, obstacles=tuple(obstacles), **w_kwargs)

    sections = {}
    for name, allowed in TABLE_KEYS.items():
        raw = reader.table(doc, name)
        reader.check_keys(raw, allowed, f"[{name}]")
        sections[name] = raw
    disturbance = _build(reader, "disturbance", Disturbance, **sections["disturbance"])
    mapping = _build(reader, "mapping", MappingParams, **sections["mapping"])
    weights = _build(reader, "heterogeneity", HeterogeneityWeights, **sections["heterogeneity"])
    ranges = _build(
        reader,
        "normalization",
        NormalizationRanges,
        **{k: _point(v) for k, v in sections["normalization"].items()},
    )

    agents, policies, starts = [], [], []
    for k, entry in enumerate(agents_raw):
        reader.check_keys(entry, AGENT_KEYS, f"[[agents]] #{k}")
        if "class" not in entry:
            reader.fail(f"agent #{k} needs a 'class'", "agents")
        spec_kwargs = {
            key: entry[key]
            for key in ("role", "space", "max_speed", "sensing_radius", "comm_radius", "energy", "alpha")
            if key in entry
        }
        agents.append(
            _build(reader, "class", AgentSpec, id=entry.get("id", k), agent_class=entry["class"], **spec_kwargs)
        )
        # sweeping needs no start or target, so a bare agent entry is runnable
        pol_kwargs: dict[str, Any] = {"kind": entry.get("policy", PolicyKind.LAWNMOWER.value)}
        if "region" in entry:
            pol_kwargs["region"] = tuple(entry["region"])
        if "target" in entry:
            pol_kwargs["target"] = _point(entry["target"])
        for key in ("lane_spacing", "descending"):
            if key in entry:
                pol_kwargs[key] = entry[key]
        policies.append(_build(reader, "policy", PolicySpec, **pol_kwargs))
        starts.append(_point(entry["start"]) if "start" in entry else None)

    tasks = []
    for entry in reader.tables(doc, "tasks"):
        reader.check_keys(entry, TASK_KEYS, "[[tasks]]")
        if "position" not in entry:
            reader.fail("task needs a 'position'", "tasks")
        tasks.append(
            TaskSpec(_point(entry["position"]), frozenset(entry.get("requires", ())))
        )

    top = {k: doc[k] for k in ("horizon", "dt", "seed", "forwarding", "task_capacity") if k in doc}
    default_id = Path(path).stem if path is not None else "scenario"
    scenario = _build(
        reader,
        "experiment",
        Scenario,
        id=str(doc.get("id", default_id)),
        experiment=doc["experiment"],
        agents=tuple(agents),
        world=world,
        policies=tuple(policies),
        starts=tuple(starts),
        disturbance=disturbance,
        failures=_failures(reader, reader.tables(doc, "failures")),
        mapping=mapping,
        tasks=tuple(tasks),
        weights=weights,
        ranges=ranges,
        **top,
    )
    if validate:
        violations = validate_scenario(scenario)
        if violations:
            raise ScenarioError(violations)
    return scenario


def parse_scenario_file(path: str | Path, validate: bool = True) -> Scenario:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise ScenarioParseError(f"cannot read file: {exc.strerror}", path) from exc
    return scenario_from_toml(text, path, validate)


def parse_failures_file(path: str | Path) -> tuple[FailureMode, ...]:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
        doc = tomli.loads(text)
    except OSError as exc:
        raise ScenarioParseError(f"cannot read file: {exc.strerror}", path) from exc
    except tomli.TOMLDecodeError as exc:
        raise ScenarioParseError(str(exc), path) from exc
    reader = _Reader(text, path)
    reader.check_keys(doc, {"failures"}, "failures file")
    return _failures(reader, reader.tables(doc, "failures"))


def _failure_dict(mode: FailureMode) -> dict:
    out: dict[str, Any] = {"kind": mode.kind.value, "onset": mode.onset}
    defaults = FailureMode(mode.kind)
    for key in ("ids", "multiplier", "classes", "sigma"):
        value = getattr(mode, key)
        if value != getattr(defaults, key):
            out[key] = list(value) if isinstance(value, tuple) else value
    return out


def scenario_to_dict(s: Scenario) -> dict:
    """Plain-data form of ``s`` that :func:`scenario_from_toml` reads back equal."""
    world = {
        "width": s.world.width,
        "height": s.world.height,
        "ground": list(s.world.ground),
        "ground_range": s.world.ground_range,
    }
    if s.world.obstacles:
        world["obstacles"] = [list(o) for o in s.world.obstacles]
    doc: dict[str, Any] = {
        "id": s.id,
        "experiment": s.experiment.value,
        "horizon": s.horizon,
        "dt": s.dt,
        "seed": s.seed,
        "forwarding": s.forwarding,
    }
    if s.task_capacity is not None:
        doc["task_capacity"] = s.task_capacity
    doc["world"] = world
    doc["disturbance"] = {"kind": s.disturbance.kind.value, "sigma": s.disturbance.sigma}
    doc["mapping"] = dataclasses.asdict(s.mapping)
    doc["heterogeneity"] = dataclasses.asdict(s.weights)
    doc["normalization"] = {k: list(v) for k, v in s.ranges.items()}
    agents = []
    for a, pol, start in zip(s.agents, s.policies, s.starts):
        entry: dict[str, Any] = {
            "id": a.id,
            "class": a.agent_class.value,
            "role": a.role.value,
            "space": a.space.value,
            "max_speed": a.max_speed,
            "sensing_radius": a.sensing_radius,
            "comm_radius": a.comm_radius,
            "energy": a.energy,
            "alpha": a.alpha,
            "policy": pol.kind.value,
        }
        if start is not None:
            entry["start"] = list(start)
        if pol.region is not None:
            entry["region"] = list(pol.region)
        if pol.lane_spacing is not None:
            entry["lane_spacing"] = pol.lane_spacing
        if pol.descending:
            entry["descending"] = True
        if pol.target is not None:
            entry["target"] = list(pol.target)
        agents.append(entry)
    doc["agents"] = agents
    if s.tasks:
        doc["tasks"] = [
            {"position": list(t.position), "requires": sorted(t.requires)} for t in s.tasks
        ]
    if s.failures:
        doc["failures"] = [_failure_dict(m) for m in s.failures]
    return doc


def scenario_to_toml(s: Scenario) -> str:
    return tomli_w.dumps(scenario_to_dict(s))


def failures_to_toml(modes) -> str:
    return tomli_w.dumps({"failures": [_failure_dict(m) for m in modes]})
