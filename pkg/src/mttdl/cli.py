"""Command-line front end.

Subcommands: predict, simulate, compare, tables, sweep, reliability, ure,
rebuild-floor.  Every invocation is a pure function of its flags, an optional
JSON config file, and the seed: identical invocations print identical bytes.
Flag precedence is explicit flags > config file > built-in defaults.  Exit
codes: 0 success, 2 flag/validation errors, 1 computation errors.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from typing import Any, Callable

from .errors import (
    InvalidArgumentError,
    InvalidConfigError,
    MttdlError,
)
from .formatting import NUMBER_FORMATS, format_quantity, parse_rate, parse_size
from .harness import (
    SweepSpec,
    compare_models,
    render_comparison_rows,
    render_table_result,
    reproduce_reference_tables,
    rows_to_csv,
    rows_to_json,
    run_sweep,
)
from .models import (
    MODEL_NAMES,
    SystemConfig,
    predict,
    rebuild_time_floor,
    reliability_at,
    ure_survival_probability,
)
from .sim import SimulationSpec, run_simulation

_FORMATS = ("table", "json", "csv")


def _add_config_flags(sub: argparse.ArgumentParser) -> None:
    sub.add_argument("--n", type=int, help="total number of devices")
    sub.add_argument("--k", type=int, help="devices required to stay operational")
    sub.add_argument("--mttf", type=float, help="per-device mean time to failure")
    sub.add_argument("--mttr", type=float, help="per-device mean time to repair")


def _add_common_flags(sub: argparse.ArgumentParser, formats=_FORMATS) -> None:
    sub.add_argument("--config", help="JSON file supplying defaults for any flag")
    sub.add_argument("--format", choices=formats, help="output format")
    sub.add_argument(
        "--number-format",
        dest="number_format",
        choices=NUMBER_FORMATS,
        help="how to render time quantities in table output",
    )


def _build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="mttdl",
        description="MTTDL models and Monte Carlo validation for k-of-n repairable systems",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("predict", help="closed-form MTTDL for one configuration")
    _add_config_flags(p)
    p.add_argument("--model", choices=MODEL_NAMES + ("all",), help="model to evaluate")
    p.add_argument(
        "--decade-factor",
        dest="decade_factor",
        type=float,
        help="per-failure likelihood multiplier for correlated-chen",
    )
    _add_common_flags(p)

    p = sub.add_parser("simulate", help="Monte Carlo MTTDL estimate")
    _add_config_flags(p)
    p.add_argument("--iterations", type=int, help="number of independent trials")
    p.add_argument("--seed", type=int, help="64-bit master seed")
    p.add_argument("--parallelism", type=int, help="worker processes (never changes results)")
    _add_common_flags(p)

    p = sub.add_parser("compare", help="predictions vs one shared simulation run")
    _add_config_flags(p)
    p.add_argument("--models", help="comma-separated model list, or 'all'")
    p.add_argument("--iterations", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--parallelism", type=int)
    _add_common_flags(p)

    p = sub.add_parser("tables", help="reproduce the five reference comparison tables")
    p.add_argument("--iterations", type=int, help="trials per high-ratio row")
    p.add_argument(
        "--low-ratio-iterations",
        dest="low_ratio_iterations",
        type=int,
        help="trials per low-ratio row",
    )
    p.add_argument("--seed", type=int)
    p.add_argument("--parallelism", type=int)
    p.add_argument(
        "--simulate",
        action=argparse.BooleanOptionalAction,
        help="--no-simulate prints the predicted columns only",
    )
    _add_common_flags(p)

    p = sub.add_parser("sweep", help="cartesian parameter sweep")
    p.add_argument("--n", help="values: '4,8,16' or '4..16' or '4..16:2'")
    p.add_argument("--k", help="values, same syntax as --n")
    p.add_argument("--mttf", help="values: '100,1000' or '100..1000:100'")
    p.add_argument("--mttr", help="values, same syntax as --mttf")
    p.add_argument("--models", help="comma-separated model list, or 'all'")
    p.add_argument("--simulate", action=argparse.BooleanOptionalAction)
    p.add_argument("--iterations", type=int)
    p.add_argument("--seed", type=int)
    p.add_argument("--parallelism", type=int)
    _add_common_flags(p)

    p = sub.add_parser("reliability", help="survival probability exp(-t/MTTDL)")
    p.add_argument("--mttdl", type=float, help="mean time to data loss")
    p.add_argument("--time", type=float, help="mission time, same units as --mttdl")
    _add_common_flags(p, formats=("table", "json"))

    p = sub.add_parser("ure", help="probability of an error-free bulk read")
    p.add_argument("--ber", type=float, help="unrecoverable read error rate per bit")
    p.add_argument("--bits", type=float, help="bits read")
    p.add_argument("--capacity", help="per-device capacity (SI suffixes: 1TB)")
    p.add_argument(
        "--stripe-width",
        dest="stripe_width",
        type=int,
        help="devices read in full during a rebuild",
    )
    _add_common_flags(p, formats=("table", "json"))

    p = sub.add_parser("rebuild-floor", help="minimum rebuild hours: capacity / rate")
    p.add_argument("--capacity", help="device capacity (SI suffixes: 1TB)")
    p.add_argument("--rate", help="sustained I/O rate (SI suffixes: 100MB/s)")
    _add_common_flags(p, formats=("table", "json"))

    return parser


_DEFAULTS: dict[str, dict[str, Any]] = {
    "predict": {
        "n": None,
        "k": None,
        "mttf": None,
        "mttr": None,
        "model": "all",
        "decade_factor": 10.0,
        "format": "table",
        "number_format": "sci",
    },
    "simulate": {
        "n": None,
        "k": None,
        "mttf": None,
        "mttr": None,
        "iterations": 2000,
        "seed": 0,
        "parallelism": 1,
        "format": "table",
        "number_format": "auto",
    },
    "compare": {
        "n": None,
        "k": None,
        "mttf": None,
        "mttr": None,
        "models": "all",
        "iterations": 2000,
        "seed": 0,
        "parallelism": 1,
        "format": "table",
        "number_format": "auto",
    },
    "tables": {
        "iterations": None,
        "low_ratio_iterations": None,
        "seed": 0,
        "parallelism": 1,
        "simulate": True,
        "format": "table",
        "number_format": None,
    },
    "sweep": {
        "n": None,
        "k": None,
        "mttf": None,
        "mttr": None,
        "models": "chen,angus,angus-simplified,markov",
        "simulate": False,
        "iterations": 2000,
        "seed": 0,
        "parallelism": 1,
        "format": "table",
        "number_format": "auto",
    },
    "reliability": {"mttdl": None, "time": None, "format": "table"},
    "ure": {
        "ber": None,
        "bits": None,
        "capacity": None,
        "stripe_width": None,
        "format": "table",
    },
    "rebuild-floor": {"capacity": None, "rate": None, "format": "table"},
}


def _merge_options(args: argparse.Namespace) -> dict[str, Any]:
    """built-in defaults < config file < explicit flags."""
    values = dict(_DEFAULTS[args.command])
    config_path = getattr(args, "config", None)
    if config_path:
        try:
            with open(config_path, encoding="utf-8") as handle:
                loaded = json.load(handle)
        except OSError as exc:
            raise InvalidArgumentError(f"cannot read config file: {exc}") from exc
        except json.JSONDecodeError as exc:
            raise InvalidArgumentError(f"config file is not valid JSON: {exc}") from exc
        if not isinstance(loaded, dict):
            raise InvalidArgumentError("config file must contain a JSON object")
        for key, value in loaded.items():
            dest = key.replace("-", "_")
            if dest not in values:
                raise InvalidArgumentError(
                    f"config key {key!r} is not a flag of {args.command!r}"
                )
            values[dest] = value
    for dest in values:
        flag_value = getattr(args, dest, None)
        if flag_value is not None:
            values[dest] = flag_value
    return values


def _require(options: dict[str, Any], *names: str) -> None:
    missing = [name for name in names if options[name] is None]
    if missing:
        flags = ", ".join("--" + name.replace("_", "-") for name in missing)
        raise InvalidArgumentError(f"missing required flag(s): {flags}")


def _system_config(options: dict[str, Any]) -> SystemConfig:
    _require(options, "n", "k", "mttf", "mttr")
    return SystemConfig(
        int(options["n"]), int(options["k"]), options["mttf"], options["mttr"]
    )


def _parse_values(text: str, cast: Callable[[str], Any]) -> tuple:
    """Parse '1,2,3' or 'lo..hi' or 'lo..hi:step' into a tuple of values."""
    text = str(text).strip()
    if ".." in text:
        span, _, step_text = text.partition(":")
        lo_text, _, hi_text = span.partition("..")
        lo, hi = cast(lo_text), cast(hi_text)
        step = cast(step_text) if step_text else cast("1")
        if step <= 0:
            raise InvalidArgumentError("range step must be positive")
        values = []
        value = lo
        while value <= hi * (1 + 1e-12):
            values.append(value)
            value = value + step
        return tuple(values)
    return tuple(cast(part) for part in text.split(",") if part != "")


def _parse_models(text: str) -> tuple[str, ...]:
    if text == "all":
        return MODEL_NAMES
    return tuple(part.strip() for part in str(text).split(",") if part.strip())


def _emit_rows(rows, fmt: str, number_format: str) -> None:
    if fmt == "csv":
        sys.stdout.write(rows_to_csv(rows))
    elif fmt == "json":
        print(rows_to_json(rows))
    else:
        print(render_comparison_rows(rows, number_format))


def _cmd_predict(options: dict[str, Any]) -> int:
    cfg = _system_config(options)
    model = options["model"]
    factor = float(options["decade_factor"])
    names = MODEL_NAMES if model == "all" else (model,)
    rows = [
        dataclasses.replace(
            row, predicted=predict(cfg, row.model, decade_factor=factor).mttdl
        )
        if row.model == "correlated-chen"
        else row
        for row in compare_models(cfg, names)
    ]
    if model != "all" and options["format"] == "table":
        print(format_quantity(rows[0].predicted, options["number_format"]))
    elif model != "all" and options["format"] == "json":
        print(json.dumps({"model": rows[0].model, "mttdl": rows[0].predicted}))
    else:
        _emit_rows(rows, options["format"], options["number_format"])
    return 0


def _cmd_simulate(options: dict[str, Any]) -> int:
    cfg = _system_config(options)
    spec = SimulationSpec(
        cfg,
        int(options["iterations"]),
        int(options["seed"]),
        int(options["parallelism"]),
    )
    result = run_simulation(spec)
    if options["format"] == "json":
        print(json.dumps(dataclasses.asdict(result)))
        return 0
    if options["format"] == "csv":
        print("mean,sample_stddev,stderr,ci95_low,ci95_high,iterations,seed,rng_name")
        print(
            f"{result.mean!r},{result.sample_stddev!r},{result.stderr!r},"
            f"{result.ci95_low!r},{result.ci95_high!r},{result.iterations},"
            f"{result.seed},{result.rng_name}"
        )
        return 0
    nf = options["number_format"]
    print(f"mean        {format_quantity(result.mean, nf)}")
    print(f"stddev      {format_quantity(result.sample_stddev, nf)}")
    print(f"stderr      {format_quantity(result.stderr, nf)}")
    print(
        f"ci95        [{format_quantity(result.ci95_low, nf)}, "
        f"{format_quantity(result.ci95_high, nf)}]"
    )
    print(f"iterations  {result.iterations}")
    print(f"seed        {result.seed}")
    print(f"rng         {result.rng_name}")
    if result.degenerate:
        print("note        single trial: dispersion statistics are undefined")
    return 0


def _cmd_compare(options: dict[str, Any]) -> int:
    cfg = _system_config(options)
    rows = compare_models(
        cfg,
        _parse_models(options["models"]),
        iterations=int(options["iterations"]),
        seed=int(options["seed"]),
        parallelism=int(options["parallelism"]),
    )
    _emit_rows(rows, options["format"], options["number_format"])
    return 0


def _cmd_tables(options: dict[str, Any]) -> int:
    results = reproduce_reference_tables(
        high_ratio_iterations=None if options["iterations"] is None else int(options["iterations"]),
        low_ratio_iterations=None
        if options["low_ratio_iterations"] is None
        else int(options["low_ratio_iterations"]),
        seed=int(options["seed"]),
        parallelism=int(options["parallelism"]),
        simulate=bool(options["simulate"]),
    )
    if options["format"] == "table":
        print("\n\n".join(render_table_result(result) for result in results))
    else:
        rows = [row for result in results for row in result.rows]
        _emit_rows(rows, options["format"], "auto")
    return 0


def _cmd_sweep(options: dict[str, Any]) -> int:
    _require(options, "n", "k", "mttf", "mttr")
    spec = SweepSpec(
        ns=_parse_values(options["n"], int),
        ks=_parse_values(options["k"], int),
        mttfs=_parse_values(options["mttf"], float),
        mttrs=_parse_values(options["mttr"], float),
        models=_parse_models(options["models"]),
        simulate=bool(options["simulate"]),
        iterations=int(options["iterations"]),
        seed=int(options["seed"]),
        parallelism=int(options["parallelism"]),
    )
    result = run_sweep(spec)
    for (n, k, mttf, mttr), reason in result.skipped:
        print(
            f"mttdl: skipped n={n} k={k} mttf={mttf:g} mttr={mttr:g}: {reason}",
            file=sys.stderr,
        )
    _emit_rows(result.rows, options["format"], options["number_format"])
    return 0


def _cmd_reliability(options: dict[str, Any]) -> int:
    _require(options, "mttdl", "time")
    probability = reliability_at(options["mttdl"], options["time"])
    if options["format"] == "json":
        print(json.dumps({"reliability": probability}))
    else:
        print(f"{probability:.4f}")
    return 0


def _cmd_ure(options: dict[str, Any]) -> int:
    _require(options, "ber")
    if options["bits"] is not None:
        if options["capacity"] is not None:
            raise InvalidArgumentError("give either --bits or --capacity, not both")
        bits = float(options["bits"])
    else:
        _require(options, "capacity", "stripe_width")
        bits = parse_size(options["capacity"]) * 8.0 * int(options["stripe_width"])
    probability = ure_survival_probability(options["ber"], bits)
    if options["format"] == "json":
        print(json.dumps({"survival_probability": probability, "bits": bits}))
    else:
        print(f"{probability:.4f}")
    return 0


def _cmd_rebuild_floor(options: dict[str, Any]) -> int:
    _require(options, "capacity", "rate")
    hours = rebuild_time_floor(parse_size(options["capacity"]), parse_rate(options["rate"]))
    if options["format"] == "json":
        print(json.dumps({"hours": hours}))
    else:
        print(f"{hours:.2f} h")
    return 0


_COMMANDS = {
    "predict": _cmd_predict,
    "simulate": _cmd_simulate,
    "compare": _cmd_compare,
    "tables": _cmd_tables,
    "sweep": _cmd_sweep,
    "reliability": _cmd_reliability,
    "ure": _cmd_ure,
    "rebuild-floor": _cmd_rebuild_floor,
}


def main(argv: list[str] | None = None) -> int:
    try:
        args = _build_parser().parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        options = _merge_options(args)
        return _COMMANDS[args.command](options)
    except (InvalidArgumentError, InvalidConfigError) as exc:
        print(f"mttdl: error: {exc}", file=sys.stderr)
        return 2
    except MttdlError as exc:
        print(f"mttdl: error: {exc}", file=sys.stderr)
        return 1
