"""Scenario files: one flat JSON object per engagement."""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field
from importlib import resources
from pathlib import Path

from .geometry import GameState
from .kind import project_to_barrier
from .sim import AttackerStrategy, SimConfig, StrategySpec, TeamStrategy


class ScenarioError(ValueError):
    """Malformed scenario document; the message names the offending field."""


ALLOWED_KEYS = {
    "name", "description", "T", "A", "D", "alpha",
    "attacker", "team", "attacker_heading", "target_heading", "defender_heading",
    "dt", "capture_radius", "max_time", "on_barrier_tol", "snap_to_barrier",
    "window", "resolution", "samples", "seed", "tolerance", "out", "format",
}
REQUIRED_KEYS = ("A", "D", "alpha")


@dataclass
class Scenario:
    state: GameState
    strategy: StrategySpec
    sim: SimConfig
    name: str = ""
    snap_displacement: float = 0.0
    raw: dict = field(default_factory=dict)
    window: tuple | None = None
    resolution: tuple = (201, 201)
    samples: int | None = None
    seed: int | None = None
    tolerance: float | None = None
    out: str | None = None
    format: str | None = None


def _pair(doc, key):
    v = doc[key]
    if not (isinstance(v, (list, tuple)) and len(v) == 2
            and all(isinstance(c, (int, float)) and not isinstance(c, bool) for c in v)):
        raise ScenarioError(f"field '{key}': expected a pair of numbers, got {v!r}")
    if not all(math.isfinite(c) for c in v):
        raise ScenarioError(f"field '{key}': coordinates must be finite")
    return (float(v[0]), float(v[1]))


def _number(doc, key, default=None, kind=float):
    if key not in doc:
        return default
    v = doc[key]
    if isinstance(v, bool) or not isinstance(v, (int, float)):
        raise ScenarioError(f"field '{key}': expected a number, got {v!r}")
    if kind is int and float(v) != int(v):
        raise ScenarioError(f"field '{key}': expected an integer, got {v!r}")
    return kind(v)


def parse_scenario(doc: dict, need_target: bool = True) -> Scenario:
    if not isinstance(doc, dict):
        raise ScenarioError("scenario must be a JSON object")
    unknown = sorted(set(doc) - ALLOWED_KEYS)
    if unknown:
        raise ScenarioError(f"unknown field(s): {', '.join(unknown)}")
    required = REQUIRED_KEYS + (("T",) if need_target else ())
    for k in required:
        if k not in doc:
            raise ScenarioError(f"field '{k}': missing")
    T = _pair(doc, "T") if "T" in doc else (0.0, 0.0)
    A, D = _pair(doc, "A"), _pair(doc, "D")
    try:
        state = GameState.from_points(T, A, D, _number(doc, "alpha"))
    except ValueError as e:
        raise ScenarioError(f"field 'alpha': {e}") from None
    disp = 0.0
    if doc.get("snap_to_barrier", False):
        if not isinstance(doc["snap_to_barrier"], bool):
            raise ScenarioError("field 'snap_to_barrier': expected true or false")
        snapped = project_to_barrier(state)
        disp = state.T.dist(snapped.T)
        state = snapped
    try:
        strat = StrategySpec(
            attacker=AttackerStrategy(doc.get("attacker", "CdgOptimal")),
            team=TeamStrategy(doc.get("team", "CdgOptimal")),
            attacker_heading=_number(doc, "attacker_heading", 0.0),
            target_heading=_number(doc, "target_heading", 0.0),
            defender_heading=_number(doc, "defender_heading", 0.0),
        )
    except ValueError as e:
        raise ScenarioError(f"strategy: {e}") from None
    try:
        sim = SimConfig(dt=_number(doc, "dt", 1e-3),
                        capture_radius=_number(doc, "capture_radius", 1e-3),
                        max_time=_number(doc, "max_time", 50.0),
                        on_barrier_tol=_number(doc, "on_barrier_tol"))
    except ValueError as e:
        raise ScenarioError(f"simulation settings: {e}") from None
    window = None
    if "window" in doc:
        w = doc["window"]
        if not (isinstance(w, list) and len(w) == 4 and all(isinstance(c, (int, float)) for c in w)):
            raise ScenarioError("field 'window': expected [xmin, xmax, ymin, ymax]")
        window = tuple(float(c) for c in w)
    resolution = (201, 201)
    if "resolution" in doc:
        r = doc["resolution"]
        if not (isinstance(r, list) and len(r) == 2 and all(isinstance(c, int) and c >= 2 for c in r)):
            raise ScenarioError("field 'resolution': expected [nx, ny] with integers >= 2")
        resolution = tuple(r)
    fmt = doc.get("format")
    if fmt is not None and fmt not in ("csv", "json"):
        raise ScenarioError(f"field 'format': expected 'csv' or 'json', got {fmt!r}")
    return Scenario(state=state, strategy=strat, sim=sim, name=str(doc.get("name", "")),
                    snap_displacement=disp, raw=dict(doc), window=window, resolution=resolution,
                    samples=_number(doc, "samples", kind=int), seed=_number(doc, "seed", kind=int),
                    tolerance=_number(doc, "tolerance"), out=doc.get("out"), format=fmt)


def load_scenario(path, need_target: bool = True) -> Scenario:
    p = Path(path)
    try:
        text = p.read_text()
    except OSError as e:
        raise ScenarioError(f"{p}: cannot read ({e.strerror})") from None
    try:
        doc = json.loads(text)
    except json.JSONDecodeError as e:
        raise ScenarioError(f"{p}: line {e.lineno}, column {e.colno}: {e.msg}") from None
    try:
        return parse_scenario(doc, need_target)
    except ScenarioError as e:
        raise ScenarioError(f"{p}: {e}") from None


def bundled_scenarios() -> list[str]:
    root = resources.files("tadgame") / "scenarios"
    return sorted(p.name[:-5] for p in root.iterdir() if p.name.endswith(".json"))


def bundled_path(name: str) -> Path:
    """Path of a scenario shipped with the package (name without .json)."""
    p = resources.files("tadgame") / "scenarios" / f"{name}.json"
    return Path(str(p))
