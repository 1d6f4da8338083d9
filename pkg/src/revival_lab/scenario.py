"""Declarative run descriptions: JSON scenario parsing and execution.

A scenario names a spectrum model, one packet per quantum number, a time
window, detection settings and the artifacts to write::

    {
      "model": {"kind": "Box1D", "mass": 1, "length": 3.141592653589793},
      "packet": {"nbar": 10, "sigma": 1.5},
      "time": {"t_end": "1.05 t_rev", "samples": 4096},
      "outputs": {"series": "series.csv", "events": "events.csv"}
    }

``t_end`` (and ``analysis.min_separation``) may be a number or a multiple of
a named time scale such as ``"2 t_rev"``. Two-dimensional models take a list
of two packet blocks and offer the scales ``t_cl_1``, ``t_cl_2``,
``t_rev_1``, ``t_rev_2`` and, for commensurate revival times, ``t_common``.
Unknown keys anywhere are rejected.
"""

from __future__ import annotations

import json
import math
import re
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Optional, Union

from .analysis import commensurate, common_revival, detect_revivals, tune_box_ratio
from .artifacts import write_carpet_pgm, write_events_csv, write_series_csv
from .dynamics import TimeGrid, autocorrelation, autocorrelation_2d, carpet
from .errors import RevivalError
from .spectrum import (
    Box1D,
    Box2D,
    Harmonic,
    Polynomial,
    Rydberg,
    SeparableSum,
    SpectrumModel,
    SpectrumModel2D,
    time_scales,
    time_scales_2d,
)
from .wavepacket import PacketSpec, gaussian_coefficients, product_coefficients_2d

__all__ = [
    "ScenarioError",
    "ScenarioSyntaxError",
    "UnknownModelKindError",
    "AbsentScaleError",
    "MissingFieldError",
    "UnknownKeyError",
    "Scenario",
    "RunReport",
    "parse_scenario",
    "load_scenario",
    "run_scenario",
    "build_model",
    "DEFAULTS",
]

DEFAULTS = {"samples": 4096, "q_max": 10, "min_height": 0.5, "tol": 0.01}
PACKET_WIDTH = 10.0  # default support: nbar +/- 10 sigma, clipped at the model floor


class ScenarioError(RevivalError, ValueError):
    """Any rejection of a scenario document."""


class ScenarioSyntaxError(ScenarioError):
    def __init__(self, message, line, column):
        super().__init__(f"{message} (line {line}, column {column})")
        self.line = line
        self.column = column


class UnknownModelKindError(ScenarioError):
    def __init__(self, kind):
        super().__init__(f"unknown model kind {kind!r}")
        self.kind = kind


class AbsentScaleError(ScenarioError):
    def __init__(self, name, available):
        super().__init__(
            f"time scale {name!r} is not defined for this model and packet "
            f"(available: {', '.join(sorted(available)) or 'none'})"
        )
        self.name = name


class MissingFieldError(ScenarioError):
    def __init__(self, path):
        super().__init__(f"missing required field {path!r}")
        self.path = path


class UnknownKeyError(ScenarioError):
    def __init__(self, path, keys):
        super().__init__(f"unknown key(s) in {path}: {', '.join(sorted(keys))}")
        self.keys = sorted(keys)


@dataclass(frozen=True)
class Scenario:
    model: Union[SpectrumModel, SpectrumModel2D]
    packets: tuple
    grid: TimeGrid
    scales: dict
    min_height: float
    min_separation: float
    q_max: int
    tol: float
    label_scale: Optional[str]
    series_path: Optional[Path] = None
    events_path: Optional[Path] = None
    carpet_path: Optional[Path] = None
    x_samples: Optional[int] = None

    @property
    def is_2d(self):
        return isinstance(self.model, SpectrumModel2D)

    @property
    def t_label(self):
        return None if self.label_scale is None else self.scales[self.label_scale]


@dataclass
class RunReport:
    written: list = field(default_factory=list)
    samples: int = 0
    events: int = 0
    scales: dict = field(default_factory=dict)
    label_scale: Optional[str] = None


# ---------------------------------------------------------------- validation


def _obj(value, path):
    if not isinstance(value, dict):
        raise ScenarioError(f"{path} must be an object")
    return value


def _keys(block, path, required=(), optional=()):
    unknown = set(block) - set(required) - set(optional)
    if unknown:
        raise UnknownKeyError(path, unknown)
    for key in required:
        if key not in block:
            raise MissingFieldError(f"{path}.{key}")


def _number(value, path, positive=False):
    if isinstance(value, bool) or not isinstance(value, (int, float)) or not math.isfinite(value):
        raise ScenarioError(f"{path} must be a finite number, got {value!r}")
    if positive and not value > 0:
        raise ScenarioError(f"{path} must be positive, got {value!r}")
    return float(value)


def _integer(value, path, minimum):
    if isinstance(value, bool) or not isinstance(value, int) or value < minimum:
        raise ScenarioError(f"{path} must be an integer >= {minimum}, got {value!r}")
    return value


def _ratio(value, path):
    if isinstance(value, str) and re.fullmatch(r"\s*\d+\s*/\s*\d+\s*", value):
        p, q = (int(s) for s in value.split("/"))
        if p >= 1 and q >= 1:
            return Fraction(p, q)
    raise ScenarioError(f"{path} must be a ratio 'p/q' with p, q >= 1, got {value!r}")


_MODELS_1D = ("Harmonic", "Box1D", "Rydberg", "Polynomial")
_MODELS_2D = ("Box2D", "SeparableSum")


def build_model(spec, path="model"):
    """Model object from a ``{"kind": ..., <params>}`` block."""
    spec = _obj(spec, path)
    if "kind" not in spec:
        raise MissingFieldError(f"{path}.kind")
    kind = spec["kind"]
    if kind not in _MODELS_1D + _MODELS_2D:
        raise UnknownModelKindError(kind)
    try:
        if kind == "Harmonic":
            _keys(spec, path, ("kind", "omega"))
            return Harmonic(_number(spec["omega"], f"{path}.omega", positive=True))
        if kind == "Box1D":
            _keys(spec, path, ("kind", "length"), ("mass",))
            return Box1D(
                _number(spec.get("mass", 1.0), f"{path}.mass", positive=True),
                _number(spec["length"], f"{path}.length", positive=True),
            )
        if kind == "Rydberg":
            _keys(spec, path, ("kind",))
            return Rydberg()
        if kind == "Polynomial":
            _keys(spec, path, ("kind", "coefficients"))
            coeffs = spec["coefficients"]
            if not isinstance(coeffs, list) or not 1 <= len(coeffs) <= 4:
                raise ScenarioError(f"{path}.coefficients must be a list of 1 to 4 numbers")
            return Polynomial(tuple(_number(c, f"{path}.coefficients[{i}]") for i, c in enumerate(coeffs)))
        if kind == "Box2D":
            _keys(spec, path, ("kind", "length_2"), ("mass", "length_1", "ratio"))
            if ("length_1" in spec) == ("ratio" in spec):
                raise ScenarioError(f"{path} needs exactly one of 'length_1' or 'ratio'")
            length_2 = _number(spec["length_2"], f"{path}.length_2", positive=True)
            if "ratio" in spec:
                length_1 = length_2 * tune_box_ratio(_ratio(spec["ratio"], f"{path}.ratio"))
            else:
                length_1 = _number(spec["length_1"], f"{path}.length_1", positive=True)
            return Box2D(_number(spec.get("mass", 1.0), f"{path}.mass", positive=True), length_1, length_2)
        # SeparableSum
        _keys(spec, path, ("kind", "models"))
        parts = spec["models"]
        if not isinstance(parts, list) or len(parts) != 2:
            raise ScenarioError(f"{path}.models must list exactly two 1D models")
        first, second = (build_model(p, f"{path}.models[{i}]") for i, p in enumerate(parts))
        if isinstance(first, SpectrumModel2D) or isinstance(second, SpectrumModel2D):
            raise ScenarioError(f"{path}.models must be one-dimensional")
        return SeparableSum(first, second)
    except ScenarioError:
        raise
    except ValueError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc


def _packet(block, path, floor):
    block = _obj(block, path)
    _keys(block, path, ("nbar", "sigma"), ("n_min", "n_max"))
    nbar = _number(block["nbar"], f"{path}.nbar", positive=True)
    sigma = _number(block["sigma"], f"{path}.sigma", positive=True)
    default = PacketSpec.around(nbar, sigma, PACKET_WIDTH, floor) if nbar >= floor else None
    n_min = _integer(block["n_min"], f"{path}.n_min", floor) if "n_min" in block else None
    n_max = _integer(block["n_max"], f"{path}.n_max", floor) if "n_max" in block else None
    if default is None and (n_min is None or n_max is None):
        raise ScenarioError(f"{path}.nbar={nbar} lies below the model floor {floor}")
    try:
        return PacketSpec(
            nbar,
            sigma,
            default.n_min if n_min is None else n_min,
            default.n_max if n_max is None else n_max,
        )
    except ValueError as exc:
        raise ScenarioError(f"{path}: {exc}") from exc


_SCALE_EXPR = re.compile(r"\s*(?:([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\s*\*?\s*)?([A-Za-z_]\w*)\s*")


def _time_value(value, path, scales):
    if isinstance(value, str):
        m = _SCALE_EXPR.fullmatch(value)
        if m is None:
            raise ScenarioError(f"{path} must be a number or '<multiple> <scale>', got {value!r}")
        factor = float(m.group(1)) if m.group(1) else 1.0
        name = m.group(2)
        if scales.get(name) is None:
            raise AbsentScaleError(name, [k for k, v in scales.items() if v is not None])
        return factor * scales[name]
    return _number(value, path)


def _available_scales(model, packets, q_max):
    if isinstance(model, SpectrumModel2D):
        ts = time_scales_2d(model, packets[0].nbar, packets[1].nbar)
        scales = ts.as_dict()
        t1, t2 = ts.t_rev_1, ts.t_rev_2
        scales["t_common"] = None
        if t1 is not None and t2 is not None:
            ratio = commensurate(t1, t2, q_max, tol=1e-9 * max(t1 / t2, t2 / t1))
            if ratio is not None:
                scales["t_common"] = common_revival(t1, t2, ratio)
        return scales
    return time_scales(model, packets[0].nbar).as_dict()


def parse_scenario(document: str, base_dir=None) -> Scenario:
    """Validate a JSON scenario document and fill in defaults.

    Relative output paths are resolved against ``base_dir`` (default: the
    current directory). Every rejection is a :class:`ScenarioError`.
    """
    try:
        raw = json.loads(document)
    except json.JSONDecodeError as exc:
        raise ScenarioSyntaxError(exc.msg, exc.lineno, exc.colno) from exc
    raw = _obj(raw, "scenario")
    _keys(raw, "scenario", ("model", "packet", "time", "outputs"), ("analysis", "carpet"))

    model = build_model(raw["model"])
    is_2d = isinstance(model, SpectrumModel2D)

    packet_block = raw["packet"]
    if is_2d:
        if not isinstance(packet_block, list) or len(packet_block) != 2:
            raise ScenarioError("packet must be a list of two blocks for a two-dimensional model")
        floors = model.n_floors
        packets = tuple(_packet(b, f"packet[{i}]", floors[i]) for i, b in enumerate(packet_block))
    else:
        if isinstance(packet_block, list):
            raise ScenarioError("packet must be a single block for a one-dimensional model")
        packets = (_packet(packet_block, "packet", model.n_floor),)

    analysis = _obj(raw.get("analysis", {}), "analysis")
    _keys(analysis, "analysis", (), ("min_height", "min_separation", "q_max", "tol", "label_against"))
    q_max = _integer(analysis.get("q_max", DEFAULTS["q_max"]), "analysis.q_max", 1)
    tol = _number(analysis.get("tol", DEFAULTS["tol"]), "analysis.tol")
    min_height = _number(analysis.get("min_height", DEFAULTS["min_height"]), "analysis.min_height")
    if not 0 < min_height < 1:
        raise ScenarioError(f"analysis.min_height must lie in (0, 1), got {min_height}")

    try:
        scales = _available_scales(model, packets, q_max)
    except RevivalError as exc:
        raise ScenarioError(str(exc)) from exc

    time_block = _obj(raw["time"], "time")
    _keys(time_block, "time", ("t_end",), ("t_start", "samples"))
    samples = _integer(time_block.get("samples", DEFAULTS["samples"]), "time.samples", 2)
    t_start = _number(time_block.get("t_start", 0.0), "time.t_start")
    if t_start < 0:
        raise ScenarioError("time.t_start must be >= 0")
    t_end = _time_value(time_block["t_end"], "time.t_end", scales)
    if not t_end > t_start:
        raise ScenarioError(f"time.t_end={t_end} must exceed time.t_start={t_start}")
    grid = TimeGrid(t_start, t_end, samples)

    if "min_separation" in analysis:
        min_sep = _time_value(analysis["min_separation"], "analysis.min_separation", scales)
        if min_sep < grid.spacing * (1 - 1e-12):
            raise ScenarioError(f"analysis.min_separation={min_sep} is below the grid spacing {grid.spacing}")
    else:
        periods = [scales.get(k) for k in ("t_cl", "t_cl_1", "t_cl_2") if scales.get(k) is not None]
        min_sep = max(min(periods) / 2.0, grid.spacing) if periods else grid.spacing

    if "label_against" in analysis:
        label = analysis["label_against"]
        if label is not None:
            if not isinstance(label, str) or scales.get(label) is None:
                raise AbsentScaleError(str(label), [k for k, v in scales.items() if v is not None])
    else:
        label = "t_common" if is_2d else "t_rev"
        if scales.get(label) is None:
            label = None

    outputs = _obj(raw["outputs"], "outputs")
    _keys(outputs, "outputs", (), ("series", "events", "carpet"))
    base = Path(base_dir) if base_dir is not None else Path.cwd()
    paths = {}
    for key in ("series", "events", "carpet"):
        if key in outputs:
            value = outputs[key]
            if not isinstance(value, str) or not value:
                raise ScenarioError(f"outputs.{key} must be a nonempty path string")
            paths[key] = base / value
    if not paths:
        raise ScenarioError("outputs must request at least one of 'series', 'events', 'carpet'")

    x_samples = None
    if "carpet" in paths:
        if not isinstance(model, Box1D):
            raise ScenarioError("carpet output is only available for Box1D models")
        if "carpet" not in raw:
            raise MissingFieldError("carpet.x_samples")
        carpet_block = _obj(raw["carpet"], "carpet")
        _keys(carpet_block, "carpet", ("x_samples",))
        x_samples = _integer(carpet_block["x_samples"], "carpet.x_samples", 2)
    elif "carpet" in raw:
        raise ScenarioError("carpet settings given but outputs.carpet is not requested")

    return Scenario(
        model=model,
        packets=packets,
        grid=grid,
        scales=scales,
        min_height=min_height,
        min_separation=min_sep,
        q_max=q_max,
        tol=tol,
        label_scale=label,
        series_path=paths.get("series"),
        events_path=paths.get("events"),
        carpet_path=paths.get("carpet"),
        x_samples=x_samples,
    )


def load_scenario(path) -> Scenario:
    """Parse a scenario file; relative outputs land next to it."""
    path = Path(path)
    return parse_scenario(path.read_text(encoding="utf-8"), base_dir=path.parent)


def run_scenario(scenario: Scenario) -> RunReport:
    """Evaluate the scenario and write every requested artifact."""
    if scenario.is_2d:
        coeffs = product_coefficients_2d(*scenario.packets)
        series = autocorrelation_2d(coeffs, scenario.model, scenario.grid)
    else:
        coeffs = gaussian_coefficients(scenario.packets[0])
        series = autocorrelation(coeffs, scenario.model, scenario.grid)

    events = detect_revivals(
        series,
        scenario.min_height,
        scenario.min_separation,
        t_rev=scenario.t_label,
        q_max=scenario.q_max,
        tol=scenario.tol,
    )
    density = None
    if scenario.carpet_path is not None:
        model = scenario.model
        density = carpet(coeffs, model.mass, model.length, scenario.x_samples, scenario.grid)

    report = RunReport(
        samples=len(series),
        events=len(events),
        scales={k: v for k, v in scenario.scales.items() if v is not None},
        label_scale=scenario.label_scale,
    )
    if scenario.series_path is not None:
        report.written.append(write_series_csv(series, scenario.series_path))
    if scenario.events_path is not None:
        report.written.append(write_events_csv(events, scenario.events_path))
    if density is not None:
        report.written.append(write_carpet_pgm(density, scenario.carpet_path))
    return report
