"""Deterministic parameter sweeps with CSV output and the cross-check report.

A sweep walks a noise-parameter grid for one channel, optionally applies a
steering operation to each evolved state, evaluates the requested quantities
and emits rows in grid order.  Output is byte-stable across runs and across
worker counts (grid points are independent pure computations; rows are always
assembled in order).
"""

from __future__ import annotations

import math
import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, replace

import numpy as np

from .applications import channel_capacity
from .bounds import (
    ad_closed_form_u,
    berta_bound,
    bpf_closed_forms,
    complementarity_c,
    uncertainty_lhs,
)
from .channels import (
    SteeringOp,
    ad_kraus,
    apply_one_sided,
    apply_steering,
    bpf_kraus,
    d_of_t,
    filter_op,
    weak_op,
)
from .linalg import BOUND_ORDER_ATOL, PSD_ATOL
from .measures import (
    classical_correlation,
    discord_xstate_closed,
    holevo_quantity,
    min_conditional_entropy_over_measurements,
    mutual_information,
    quantum_discord,
    sigma_x_basis,
    sigma_z_basis,
)
from .states import BellDiagonalCoeffs, as_xstate, bell_diagonal_density

OUTPUT_TAGS = (
    "u",
    "berta",
    "pati",
    "adabi",
    "tightness",
    "discord",
    "s_min",
    "capacity",
    "witness",
)
CHANNEL_FAMILIES = ("AD", "BPF")
STEERING_KINDS = ("filter", "weak")
THREADS_ENV_VAR = "EUR_THREADS"


class ConfigError(ValueError):
    """Invalid sweep configuration; collects every violation found."""

    def __init__(self, problems):
        self.problems = tuple(problems)
        super().__init__("invalid sweep configuration:\n" + "\n".join(
            f"  - {p}" for p in self.problems
        ))


class NumericError(RuntimeError):
    """An unphysical state or non-finite quantity was produced mid-sweep."""


@dataclass(frozen=True)
class SweepConfig:
    channel: str
    c1: float
    c2: float
    c3: float
    param_start: float
    param_stop: float
    param_points: int
    steering_kind: str | None = None
    steering_strengths: tuple[float, ...] = ()
    rate_lambda: float | None = None
    outputs: tuple[str, ...] = ("u", "berta", "pati", "adabi")

    def validate(self) -> list[str]:
        problems = []
        if self.channel not in CHANNEL_FAMILIES:
            problems.append(f"channel {self.channel!r} not one of {CHANNEL_FAMILIES}")
        if not self.outputs:
            problems.append("outputs list is empty")
        for tag in self.outputs:
            if tag not in OUTPUT_TAGS:
                problems.append(f"unknown output tag {tag!r}")
        if self.param_points < 2:
            problems.append(f"param_points = {self.param_points} < 2")
        if self.rate_lambda is None:
            for name, v in (("param_start", self.param_start), ("param_stop", self.param_stop)):
                if not 0.0 <= v <= 1.0:
                    problems.append(f"{name} = {v!r} outside [0, 1]")
        else:
            if self.channel == "BPF":
                problems.append("rate_lambda only applies to the AD channel")
            if self.rate_lambda <= 0.0:
                problems.append(f"rate_lambda = {self.rate_lambda!r} must be positive")
            for name, v in (("param_start", self.param_start), ("param_stop", self.param_stop)):
                if v < 0.0:
                    problems.append(f"{name} = {v!r} must be nonnegative (time grid)")
        if self.param_stop < self.param_start:
            problems.append("param_stop is smaller than param_start")
        if self.steering_strengths and self.steering_kind not in STEERING_KINDS:
            problems.append(
                f"steering_kind {self.steering_kind!r} not one of {STEERING_KINDS}"
            )
        if self.steering_kind in STEERING_KINDS and not self.steering_strengths:
            problems.append("steering_kind given but no steering_strengths")
        for s in self.steering_strengths:
            if self.steering_kind == "filter" and not 0.0 < s < 1.0:
                problems.append(f"filter strength {s!r} outside (0, 1)")
            if self.steering_kind == "weak" and not 0.0 <= s < 1.0:
                problems.append(f"weak strength {s!r} outside [0, 1)")
        coeffs_in_range = True
        for name, v in (("c1", self.c1), ("c2", self.c2), ("c3", self.c3)):
            if abs(v) > 1.0 + PSD_ATOL:
                problems.append(f"{name} = {v!r} outside [-1, 1]")
                coeffs_in_range = False
        if coeffs_in_range:
            try:
                BellDiagonalCoeffs(self.c1, self.c2, self.c3)
            except ValueError as exc:
                problems.append(str(exc))
        return problems

    def coeffs(self) -> BellDiagonalCoeffs:
        return BellDiagonalCoeffs(self.c1, self.c2, self.c3)


@dataclass(frozen=True)
class SweepRow:
    """One grid point: the inputs that produced it plus the requested values."""

    channel: str
    param: float
    c1: float
    c2: float
    c3: float
    steer_kind: str | None
    steer_strength: float | None
    rate_lambda: float | None
    quantities: tuple[tuple[str, float], ...]


def expand_output_columns(outputs) -> list[str]:
    cols = []
    for tag in outputs:
        if tag == "tightness":
            cols += ["tightness_berta", "tightness_pati", "tightness_adabi"]
        else:
            cols.append(tag)
    return cols


def _steering_op(kind: str, strength: float) -> SteeringOp:
    return filter_op(strength) if kind == "filter" else weak_op(strength)


def _evaluate_point(cfg: SweepConfig, rho0, bases, strength, x: float) -> SweepRow:
    b1, b2 = bases
    param = d_of_t(cfg.rate_lambda, x) if cfg.rate_lambda is not None else x
    channel = ad_kraus(param) if cfg.channel == "AD" else bpf_kraus(param)
    try:
        state = apply_one_sided(channel, rho0, side="A")
        if strength is not None:
            state = apply_steering(_steering_op(cfg.steering_kind, strength), state, side="A")
        cache: dict[str, float] = {}

        def u() -> float:
            if "u" not in cache:
                cache["u"] = uncertainty_lhs(state, b1, b2)
            return cache["u"]

        def berta() -> float:
            if "berta" not in cache:
                cache["berta"] = berta_bound(state, complementarity_c(b1, b2))
            return cache["berta"]

        def pati() -> float:
            if "pati" not in cache:
                j = classical_correlation(state, "A")
                cache["discord"] = max(0.0, mutual_information(state) - j)
                cache["pati"] = berta() + max(0.0, cache["discord"] - j)
            return cache["pati"]

        def adabi() -> float:
            if "adabi" not in cache:
                delta = (
                    mutual_information(state)
                    - holevo_quantity(state, b1)
                    - holevo_quantity(state, b2)
                )
                cache["adabi"] = berta() + max(0.0, delta)
            return cache["adabi"]

        values: list[tuple[str, float]] = []
        for tag in cfg.outputs:
            if tag == "u":
                values.append(("u", u()))
            elif tag == "berta":
                values.append(("berta", berta()))
            elif tag == "pati":
                values.append(("pati", pati()))
            elif tag == "adabi":
                values.append(("adabi", adabi()))
            elif tag == "tightness":
                values.append(("tightness_berta", u() - berta()))
                values.append(("tightness_pati", u() - pati()))
                values.append(("tightness_adabi", u() - adabi()))
            elif tag == "discord":
                pati()
                values.append(("discord", cache["discord"]))
            elif tag == "s_min":
                values.append(
                    ("s_min", min_conditional_entropy_over_measurements(state, "B"))
                )
            elif tag == "capacity":
                values.append(("capacity", channel_capacity(state)))
            elif tag == "witness":
                witnessed = u() < 1.0 - BOUND_ORDER_ATOL
                values.append(("witness", 1.0 if witnessed else 0.0))
    except (ValueError, ArithmeticError) as exc:
        raise NumericError(f"sweep point param={x!r} failed: {exc}") from exc
    for name, v in values:
        if not math.isfinite(v):
            raise NumericError(f"quantity {name} is not finite at param={x!r}")
    return SweepRow(
        channel=cfg.channel,
        param=x,
        c1=cfg.c1,
        c2=cfg.c2,
        c3=cfg.c3,
        steer_kind=cfg.steering_kind if strength is not None else None,
        steer_strength=strength,
        rate_lambda=cfg.rate_lambda,
        quantities=tuple(values),
    )


def worker_count() -> int:
    """Worker override from the environment; default is serial evaluation."""
    raw = os.environ.get(THREADS_ENV_VAR)
    if raw is None:
        return 1
    try:
        n = int(raw)
    except ValueError as exc:
        raise ConfigError([f"{THREADS_ENV_VAR} = {raw!r} is not an integer"]) from exc
    return max(1, n)


def run_sweep(cfg: SweepConfig) -> list[SweepRow]:
    """Evaluate the grid in order; identical output for any worker count."""
    problems = cfg.validate()
    if problems:
        raise ConfigError(problems)
    rho0 = bell_diagonal_density(cfg.coeffs())
    bases = (sigma_x_basis(), sigma_z_basis())
    grid = [float(x) for x in np.linspace(cfg.param_start, cfg.param_stop, cfg.param_points)]
    strengths = cfg.steering_strengths if cfg.steering_strengths else (None,)
    jobs = [(s, x) for s in strengths for x in grid]
    workers = worker_count()
    if workers == 1:
        return [_evaluate_point(cfg, rho0, bases, s, x) for s, x in jobs]
    with ThreadPoolExecutor(max_workers=workers) as pool:
        return list(pool.map(lambda job: _evaluate_point(cfg, rho0, bases, *job), jobs))


def _format_number(v: float) -> str:
    if not math.isfinite(v):
        raise NumericError(f"refusing to emit non-finite value {v!r}")
    if v == 0.0:
        v = 0.0  # normalize -0.0
    return f"{v:.12g}"


def row_columns(row: SweepRow) -> list[str]:
    cols = ["channel", "param", "C1", "C2", "C3"]
    if row.steer_kind is not None:
        cols += ["steer_kind", "steer_strength"]
    if row.rate_lambda is not None:
        cols += ["rate_lambda"]
    return cols + [name for name, _ in row.quantities]


def _row_values(row: SweepRow) -> list[str]:
    vals = [
        row.channel,
        _format_number(row.param),
        _format_number(row.c1),
        _format_number(row.c2),
        _format_number(row.c3),
    ]
    if row.steer_kind is not None:
        vals += [row.steer_kind, _format_number(row.steer_strength)]
    if row.rate_lambda is not None:
        vals += [_format_number(row.rate_lambda)]
    return vals + [_format_number(v) for _, v in row.quantities]


def render_csv(rows) -> str:
    """CSV text for a list of rows sharing one schema."""
    rows = list(rows)
    if not rows:
        raise ValueError("no rows to emit")
    header = row_columns(rows[0])
    lines = [",".join(header)]
    for row in rows:
        if row_columns(row) != header:
            raise ValueError("rows do not share a single column schema")
        lines.append(",".join(_row_values(row)))
    return "\n".join(lines) + "\n"


def emit_csv(rows, destination) -> None:
    """Write rows as CSV to a path or file-like destination."""
    text = render_csv(rows)
    if hasattr(destination, "write"):
        destination.write(text)
        return
    try:
        with open(destination, "w", encoding="utf-8", newline="\n") as fh:
            fh.write(text)
    except OSError as exc:
        raise OSError(f"cannot write CSV to {destination!r}: {exc}") from exc


def with_rate_lambda(rows, rate_lambda: float) -> list[SweepRow]:
    """Stamp a rate column onto rows (used when presets mix parametrizations)."""
    return [replace(row, rate_lambda=rate_lambda) for row in rows]


def errata_report(coeffs: BellDiagonalCoeffs, channel: str, grid) -> str:
    """Compare the published closed forms against the pipeline over a grid.

    Reports, per formula, the largest absolute gap and where it occurs; points
    where a closed form is not evaluable are counted, not scored.
    """
    if channel not in CHANNEL_FAMILIES:
        raise ValueError(f"unknown channel family {channel!r}")
    grid = [float(x) for x in grid]
    if not grid:
        raise ValueError("empty parameter grid")
    rho0 = bell_diagonal_density(coeffs)
    b1, b2 = sigma_x_basis(), sigma_z_basis()

    gaps: dict[str, tuple[float, float]] = {}
    skipped: dict[str, int] = {}

    def record(name: str, gap: float | None, x: float):
        if gap is None:
            skipped[name] = skipped.get(name, 0) + 1
            return
        best = gaps.get(name)
        if best is None or gap > best[0]:
            gaps[name] = (gap, x)

    for x in grid:
        ch = ad_kraus(x) if channel == "AD" else bpf_kraus(x)
        state = apply_one_sided(ch, rho0, side="A")
        u_pipeline = uncertainty_lhs(state, b1, b2)
        if channel == "AD":
            closed_u = ad_closed_form_u(coeffs, x)
            record(
                "evolved-state uncertainty (closed form)",
                None if closed_u is None else abs(closed_u - u_pipeline),
                x,
            )
        else:
            closed_u, closed_bound = bpf_closed_forms(coeffs, x)
            record(
                "evolved-state uncertainty (closed form)",
                abs(closed_u - u_pipeline),
                x,
            )
            berta = berta_bound(state, complementarity_c(b1, b2))
            record("uncertainty lower bound (closed form)", abs(closed_bound - berta), x)
        closed_d = discord_xstate_closed(as_xstate(state))
        numeric_d = quantum_discord(state, measured_side="B")
        record("x-state discord (closed form)", abs(closed_d - numeric_d), x)

    names = sorted(set(gaps) | set(skipped))
    width = max(len(n) for n in names) + 2
    lines = [
        "closed-form cross-check report",
        f"channel: {channel}   coeffs: C1={coeffs.c1:g} C2={coeffs.c2:g} C3={coeffs.c3:g}",
        f"grid: {len(grid)} points in [{min(grid):g}, {max(grid):g}]",
        "",
        f"{'formula'.ljust(width)}{'max |gap|':>12}  {'at param':>10}  skipped",
    ]
    for name in names:
        gap = gaps.get(name)
        n_skip = skipped.get(name, 0)
        if gap is None:
            lines.append(f"{name.ljust(width)}{'n/a':>12}  {'n/a':>10}  {n_skip}")
        else:
            lines.append(
                f"{name.ljust(width)}{gap[0]:>12.3e}  {gap[1]:>10.6g}  {n_skip}"
            )
    return "\n".join(lines) + "\n"
