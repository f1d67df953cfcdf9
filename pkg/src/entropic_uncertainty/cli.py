"""Command-line front end: sweeps from config files, figure presets, witness
thresholds, capacity curves and the closed-form cross-check report.

Exit codes: 0 success, 2 configuration problem, 3 numeric failure (an
unphysical state or an out-of-range solve), 4 I/O failure.
"""

from __future__ import annotations

import argparse
import sys

import numpy as np

from .applications import capacity_curves, witness_threshold
from .states import BellDiagonalCoeffs
from .sweep import (
    ConfigError,
    NumericError,
    SweepConfig,
    emit_csv,
    errata_report,
    render_csv,
    run_sweep,
    with_rate_lambda,
)

EXIT_OK = 0
EXIT_CONFIG = 2
EXIT_NUMERIC = 3
EXIT_IO = 4

FIG1_COEFFS = (-0.5, 0.4, 0.8)
MAX_PURITY_WITNESS = (-1.0, 1.0, 1.0)
MAX_PURITY_CAPACITY = (1.0, 1.0, -1.0)
PRESET_NAMES = ("fig1", "fig2", "fig3", "fig4", "fig5", "fig6")

_CONFIG_KEYS = {
    "channel",
    "c1",
    "c2",
    "c3",
    "param_start",
    "param_stop",
    "param_points",
    "steering_kind",
    "steering_strength",
    "steering_strengths",
    "rate_lambda",
    "outputs",
}


def parse_config_text(text: str, source: str = "<config>") -> SweepConfig:
    """Parse the flat key = value sweep format; '#' starts a comment."""
    problems: list[str] = []
    pairs: dict[str, str] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        if "=" not in line:
            problems.append(f"{source}:{lineno}: expected 'key = value', got {line!r}")
            continue
        key, value = (part.strip() for part in line.split("=", 1))
        if key not in _CONFIG_KEYS:
            problems.append(f"{source}:{lineno}: unknown key {key!r}")
            continue
        if key in pairs:
            problems.append(f"{source}:{lineno}: duplicate key {key!r}")
            continue
        pairs[key] = value

    def get_float(key: str, default=None):
        if key not in pairs:
            if default is None:
                problems.append(f"{source}: missing required key {key!r}")
            return default
        try:
            return float(pairs[key])
        except ValueError:
            problems.append(f"{source}: key {key!r} = {pairs[key]!r} is not a number")
            return default

    channel = pairs.get("channel", "")
    if "channel" not in pairs:
        problems.append(f"{source}: missing required key 'channel'")
    c1 = get_float("c1")
    c2 = get_float("c2")
    c3 = get_float("c3")
    start = get_float("param_start", 0.0)
    stop = get_float("param_stop", 1.0)
    points = 0
    if "param_points" in pairs:
        try:
            points = int(pairs["param_points"])
        except ValueError:
            problems.append(
                f"{source}: key 'param_points' = {pairs['param_points']!r} is not an integer"
            )
    else:
        points = 101
    rate = get_float("rate_lambda", None) if "rate_lambda" in pairs else None
    kind = pairs.get("steering_kind")
    strengths: tuple[float, ...] = ()
    if "steering_strength" in pairs and "steering_strengths" in pairs:
        problems.append(
            f"{source}: give either 'steering_strength' or 'steering_strengths', not both"
        )
    raw_strengths = pairs.get("steering_strengths", pairs.get("steering_strength"))
    if raw_strengths is not None:
        try:
            strengths = tuple(float(tok) for tok in raw_strengths.split(",") if tok.strip())
        except ValueError:
            problems.append(f"{source}: bad steering strength list {raw_strengths!r}")
    outputs = tuple(
        tok.strip() for tok in pairs.get("outputs", "u,berta,pati,adabi").split(",") if tok.strip()
    )
    if problems:
        raise ConfigError(problems)
    cfg = SweepConfig(
        channel=channel,
        c1=c1,
        c2=c2,
        c3=c3,
        param_start=start,
        param_stop=stop,
        param_points=points,
        steering_kind=kind,
        steering_strengths=strengths,
        rate_lambda=rate,
        outputs=outputs,
    )
    more = cfg.validate()
    if more:
        raise ConfigError(more)
    return cfg


def parse_config_file(path: str) -> SweepConfig:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_config_text(fh.read(), source=path)


def preset_rows(name: str):
    """Rows reproducing one figure's data, caption parameters included."""
    if name == "fig1":
        return run_sweep(SweepConfig("AD", *FIG1_COEFFS, 0.0, 1.0, 101))
    if name == "fig2":
        return run_sweep(SweepConfig("BPF", *FIG1_COEFFS, 0.0, 1.0, 101))
    if name == "fig3":
        rows = run_sweep(
            SweepConfig(
                "AD", *FIG1_COEFFS, 0.0, 1.0, 101,
                steering_kind="filter",
                steering_strengths=(0.2, 0.3, 0.4, 0.5),
                outputs=("u",),
            )
        )
        rows += run_sweep(
            SweepConfig(
                "AD", *FIG1_COEFFS, 0.0, 1.0, 101,
                steering_kind="weak",
                steering_strengths=(0.0, 0.4, 0.6, 0.8),
                outputs=("u",),
            )
        )
        return rows
    if name == "fig4":
        rows = run_sweep(
            SweepConfig(
                "BPF", *FIG1_COEFFS, 0.0, 1.0, 101,
                steering_kind="filter",
                steering_strengths=(0.1, 0.25, 0.5),
                outputs=("u",),
            )
        )
        rows += run_sweep(
            SweepConfig(
                "BPF", *FIG1_COEFFS, 0.0, 1.0, 101,
                steering_kind="weak",
                steering_strengths=(0.0, 0.4, 0.7),
                outputs=("u",),
            )
        )
        return rows
    if name == "fig5":
        rows = []
        for channel in ("AD", "BPF"):
            rows += run_sweep(
                SweepConfig(
                    channel, *MAX_PURITY_WITNESS, 0.0, 1.0, 101,
                    steering_kind="weak",
                    steering_strengths=(0.0, 0.4, 0.8),
                    outputs=("u", "witness"),
                )
            )
        return rows
    if name == "fig6":
        rows = []
        for rate in (0.1, 0.3, 0.7):
            rows += run_sweep(
                SweepConfig(
                    "AD", *MAX_PURITY_CAPACITY, 0.0, 10.0, 101,
                    rate_lambda=rate,
                    outputs=("capacity",),
                )
            )
        bpf = run_sweep(
            SweepConfig("BPF", *MAX_PURITY_CAPACITY, 0.0, 1.0, 101, outputs=("capacity",))
        )
        rows += with_rate_lambda(bpf, 0.0)  # 0 marks the direct p sweep
        return rows
    raise ConfigError([f"unknown preset {name!r} (expected one of {PRESET_NAMES})"])


def _write_text(text: str, out: str | None) -> None:
    if out is None:
        sys.stdout.write(text)
        return
    with open(out, "w", encoding="utf-8", newline="\n") as fh:
        fh.write(text)


def _coeffs_from_args(args, default) -> BellDiagonalCoeffs:
    c1 = args.c1 if args.c1 is not None else default[0]
    c2 = args.c2 if args.c2 is not None else default[1]
    c3 = args.c3 if args.c3 is not None else default[2]
    return BellDiagonalCoeffs(c1, c2, c3)


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="eur",
        description="Entropic-uncertainty dynamics for two-qubit states under one-sided noise.",
    )
    sub = parser.add_subparsers(dest="command", required=True)

    p_sweep = sub.add_parser("sweep", help="run a sweep described by a config file")
    p_sweep.add_argument("--config", required=True, help="flat key = value config file")
    p_sweep.add_argument("--out", default=None, help="output CSV path (default stdout)")

    p_preset = sub.add_parser("preset", help="reproduce a figure's data grid")
    p_preset.add_argument("name", choices=PRESET_NAMES)
    p_preset.add_argument("--out", default=None, help="output CSV path (default stdout)")

    p_wit = sub.add_parser("witness", help="solve the witness noise threshold")
    p_wit.add_argument("--channel", required=True, choices=("AD", "BPF"))
    p_wit.add_argument("--c1", type=float, required=True)
    p_wit.add_argument("--c2", type=float, required=True)
    p_wit.add_argument("--c3", type=float, required=True)
    p_wit.add_argument("--s", type=float, default=0.0, help="weak-measurement strength")

    p_cap = sub.add_parser("capacity", help="emit a channel-capacity curve")
    p_cap.add_argument("--channel", required=True, choices=("AD", "BPF"))
    p_cap.add_argument("--lambda", dest="rate_lambda", type=float, default=None,
                       help="decay rate; sweeps time in [0, 10] instead of d")
    p_cap.add_argument("--c1", type=float, default=None)
    p_cap.add_argument("--c2", type=float, default=None)
    p_cap.add_argument("--c3", type=float, default=None)
    p_cap.add_argument("--points", type=int, default=101)
    p_cap.add_argument("--out", default=None)

    p_err = sub.add_parser("errata", help="closed-form vs pipeline gap report")
    p_err.add_argument("--channel", required=True, choices=("AD", "BPF"))
    p_err.add_argument("--c1", type=float, default=None)
    p_err.add_argument("--c2", type=float, default=None)
    p_err.add_argument("--c3", type=float, default=None)
    p_err.add_argument("--points", type=int, default=101)
    p_err.add_argument("--out", default=None)
    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        if args.command == "sweep":
            cfg = parse_config_file(args.config)
            rows = run_sweep(cfg)
            if args.out is None:
                _write_text(render_csv(rows), None)
            else:
                emit_csv(rows, args.out)
        elif args.command == "preset":
            rows = preset_rows(args.name)
            _write_text(render_csv(rows), args.out)
        elif args.command == "witness":
            if not 0.0 <= args.s < 1.0:
                raise ConfigError([f"--s {args.s} outside [0, 1)"])
            coeffs = BellDiagonalCoeffs(args.c1, args.c2, args.c3)
            result = witness_threshold(args.channel, coeffs, s=args.s)
            _write_text(
                "".join(
                    f"{key}={value}\n"
                    for key, value in (
                        ("channel", args.channel),
                        ("parameter", result.parameter_name),
                        ("critical_value", f"{result.critical_value:.6f}"),
                        ("steering_s", f"{result.steering_strength_s:g}"),
                        ("window", result.window),
                    )
                ),
                None,
            )
        elif args.command == "capacity":
            coeffs = _coeffs_from_args(args, MAX_PURITY_CAPACITY)
            if args.points < 2:
                raise ConfigError([f"--points {args.points} < 2"])
            if args.rate_lambda is not None and args.rate_lambda <= 0.0:
                raise ConfigError([f"--lambda {args.rate_lambda} must be positive"])
            if args.rate_lambda is not None and args.channel != "AD":
                raise ConfigError(["--lambda only applies to the AD channel"])
            stop = 10.0 if args.rate_lambda is not None else 1.0
            schedule = np.linspace(0.0, stop, args.points)
            curve = capacity_curves(args.channel, coeffs, schedule, args.rate_lambda)
            lines = ["param,capacity"]
            lines += [f"{x:.12g},{c:.12g}" for x, c in curve]
            _write_text("\n".join(lines) + "\n", args.out)
        elif args.command == "errata":
            coeffs = _coeffs_from_args(args, FIG1_COEFFS)
            if args.points < 1:
                raise ConfigError([f"--points {args.points} < 1"])
            grid = np.linspace(0.0, 1.0, args.points)
            _write_text(errata_report(coeffs, args.channel, grid), args.out)
    except ConfigError as exc:
        print(exc, file=sys.stderr)
        return EXIT_CONFIG
    except FileNotFoundError as exc:
        print(exc, file=sys.stderr)
        return EXIT_IO
    except (NumericError, ValueError, ArithmeticError) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    except OSError as exc:
        print(exc, file=sys.stderr)
        return EXIT_IO
    return EXIT_OK


def entry() -> None:
    sys.exit(main())


if __name__ == "__main__":
    entry()
