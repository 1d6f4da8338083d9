"""``revival-lab`` command line.

    revival-lab run <scenario.json>
    revival-lab timescales --model <kind> --params k=v,... --nbar <x>[,<y>]
    revival-lab tune2d --ratio p/q

Exit codes: 0 success, 2 scenario/argument validation error,
3 runtime or domain error, 4 I/O error.
"""

from __future__ import annotations

import argparse
import sys

from .analysis import tune_box_ratio
from .artifacts import format_float
from .errors import RevivalError
from .scenario import ScenarioError, _ratio, build_model, load_scenario, run_scenario
from .spectrum import SpectrumModel2D, time_scales, time_scales_2d

EXIT_OK = 0
EXIT_VALIDATION = 2
EXIT_RUNTIME = 3
EXIT_IO = 4


def _parse_params(text):
    params = {}
    if not text:
        return params
    for item in text.split(","):
        key, sep, value = item.partition("=")
        if not sep or not key.strip():
            raise ScenarioError(f"--params entries must look like key=value, got {item!r}")
        try:
            params[key.strip()] = float(value)
        except ValueError:
            raise ScenarioError(f"--params value for {key.strip()!r} is not a number: {value!r}") from None
    return params


def _model_from_cli(kind, params):
    spec = {"kind": kind}
    if kind == "Polynomial":
        coeffs = [params.pop(f"a{i}", 0.0) for i in range(4)]
        spec["coefficients"] = coeffs
    spec.update(params)
    return build_model(spec)


def _cmd_run(args):
    scenario = load_scenario(args.scenario)
    report = run_scenario(scenario)
    for path in report.written:
        print(f"wrote {path}")
    print(f"samples={report.samples} events={report.events} label_against={report.label_scale or ''}")
    for name, value in report.scales.items():
        print(f"{name}={format_float(value)}")
    return EXIT_OK


def _cmd_timescales(args):
    model = _model_from_cli(args.model, _parse_params(args.params))
    try:
        nbars = [float(x) for x in args.nbar.split(",")]
    except ValueError:
        raise ScenarioError(f"--nbar must be a number or a comma-separated pair, got {args.nbar!r}") from None
    if isinstance(model, SpectrumModel2D):
        if len(nbars) != 2:
            raise ScenarioError("two-dimensional models need --nbar n1,n2")
        scales = time_scales_2d(model, *nbars).as_dict()
    else:
        if len(nbars) != 1:
            raise ScenarioError("one-dimensional models need a single --nbar value")
        scales = time_scales(model, nbars[0]).as_dict()
    for name, value in scales.items():
        print(f"{name},{'absent' if value is None else format_float(value)}")
    return EXIT_OK


def _cmd_tune2d(args):
    print(format_float(tune_box_ratio(_ratio(args.ratio, "--ratio"))))
    return EXIT_OK


def build_parser():
    parser = argparse.ArgumentParser(prog="revival-lab", description="Wave-packet revival toolkit")
    sub = parser.add_subparsers(dest="command", required=True)

    run = sub.add_parser("run", help="run a JSON scenario and write its artifacts")
    run.add_argument("scenario", help="path to the scenario document")
    run.set_defaults(func=_cmd_run)

    ts = sub.add_parser("timescales", help="print t_cl, t_rev, t_sr (or their 2D counterparts)")
    ts.add_argument("--model", required=True, help="Harmonic, Box1D, Rydberg, Polynomial or Box2D")
    ts.add_argument("--params", default="", help="model parameters as k=v,... (Polynomial: a0..a3)")
    ts.add_argument("--nbar", required=True, help="mean quantum number, or n1,n2 for Box2D")
    ts.set_defaults(func=_cmd_timescales)

    tune = sub.add_parser("tune2d", help="box side ratio L1/L2 for a revival-time ratio p/q")
    tune.add_argument("--ratio", required=True, help="target t_rev,1/t_rev,2 as p/q")
    tune.set_defaults(func=_cmd_tune2d)
    return parser


def main(argv=None):
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except ScenarioError as exc:
        print(f"revival-lab: invalid input: {exc}", file=sys.stderr)
        return EXIT_VALIDATION
    except OSError as exc:
        print(f"revival-lab: I/O error: {exc}", file=sys.stderr)
        return EXIT_IO
    except (RevivalError, ValueError) as exc:
        print(f"revival-lab: error: {exc}", file=sys.stderr)
        return EXIT_RUNTIME


if __name__ == "__main__":
    sys.exit(main())
