"""Entanglement witnessing via the uncertainty criterion, and channel capacity.

The witness protocol optionally protects the travelling qubit with a weak
measurement *before* it enters the noise channel; that is the ordering under
which a stronger weak measurement enlarges the witnessed noise window.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .channels import ad_kraus, apply_one_sided, apply_steering, bpf_kraus, d_of_t, weak_op
from .linalg import BOUND_ORDER_ATOL, partial_trace, validate_density
from .measures import (
    ProjectiveBasis,
    mutual_information,
    sigma_x_basis,
    sigma_z_basis,
    von_neumann_entropy,
)
from .bounds import berta_bound, complementarity_c, uncertainty_lhs
from .states import BellDiagonalCoeffs, bell_diagonal_density

_BISECTION_TOL = 1e-7
_BRACKET_SCAN_POINTS = 101
_STRADDLE_STEP = 1e-4
_CAPACITY_IDENTITY_ATOL = 1e-10


@dataclass(frozen=True)
class WitnessResult:
    """Verdict of the entropic witness U < log2(1/c)."""

    u_value: float
    threshold: float
    entangled_witnessed: bool


@dataclass(frozen=True)
class ThresholdResult:
    """Critical noise parameter below which the witness still fires."""

    parameter_name: str
    critical_value: float
    steering_strength_s: float
    window: str


def witness_verdict(
    rho,
    b1: ProjectiveBasis,
    b2: ProjectiveBasis,
    measured_side: str = "A",
    memory_side: str = "B",
) -> WitnessResult:
    """Strict-inequality witness: boundary equality counts as not witnessed."""
    threshold = math.log2(1.0 / complementarity_c(b1, b2))
    u = uncertainty_lhs(rho, b1, b2, measured_side, memory_side)
    return WitnessResult(
        u_value=u,
        threshold=threshold,
        entangled_witnessed=u < threshold - BOUND_ORDER_ATOL,
    )


def _witness_u_of_param(channel_family: str, coeffs: BellDiagonalCoeffs, s: float):
    rho0 = bell_diagonal_density(coeffs)
    if s > 0.0:
        rho0 = apply_steering(weak_op(s), rho0, side="A")
    b1, b2 = sigma_x_basis(), sigma_z_basis()

    def u(x: float) -> float:
        channel = ad_kraus(x) if channel_family == "AD" else bpf_kraus(x)
        evolved = apply_one_sided(channel, rho0, side="A")
        return uncertainty_lhs(evolved, b1, b2)

    return u


def witness_threshold(
    channel_family: str, coeffs: BellDiagonalCoeffs, s: float = 0.0
) -> ThresholdResult:
    """Bisect U(parameter) = log2(1/c) for the witness crossing point.

    For the damping channel the witnessed window is [0, d_m); for the flip
    channel the solve runs on [0, 1/2] and the mirrored upper window follows
    from the p <-> 1 - p symmetry of the channel.
    """
    if channel_family not in ("AD", "BPF"):
        raise ValueError(f"unknown channel family {channel_family!r}")
    u = _witness_u_of_param(channel_family, coeffs, s)
    threshold = 1.0  # log2(1/c) for the sigma_x / sigma_z pair
    hi_end = 1.0 if channel_family == "AD" else 0.5

    xs = np.linspace(0.0, hi_end, _BRACKET_SCAN_POINTS)
    values = [u(float(x)) for x in xs]
    bracket = None
    for i in range(1, len(xs)):
        if values[i - 1] < threshold <= values[i]:
            bracket = (float(xs[i - 1]), float(xs[i]))
            break
    if bracket is None:
        raise ValueError("no threshold in range")
    lo, hi = bracket
    while hi - lo > _BISECTION_TOL:
        mid = 0.5 * (lo + hi)
        if u(mid) < threshold:
            lo = mid
        else:
            hi = mid
    critical = 0.5 * (lo + hi)
    below = u(max(critical - _STRADDLE_STEP, 0.0))
    above = u(min(critical + _STRADDLE_STEP, hi_end))
    if not (below < threshold < above):
        raise ArithmeticError(
            f"threshold bracketing check failed around {critical!r}"
        )
    if channel_family == "AD":
        return ThresholdResult(
            parameter_name="d",
            critical_value=critical,
            steering_strength_s=s,
            window=f"[0, {critical:.6f})",
        )
    return ThresholdResult(
        parameter_name="p",
        critical_value=critical,
        steering_strength_s=s,
        window=f"[0, {critical:.6f}) U ({1.0 - critical:.6f}, 1]",
    )


def channel_capacity(rho) -> float:
    """Mutual information of the evolved state, cross-checked against the
    equivalent bound form S(rho_A) - U_b + 1 at complementarity 1/2."""
    rho = validate_density(rho)
    capacity = mutual_information(rho)
    bound_form = (
        von_neumann_entropy(partial_trace(rho, "A"))
        - berta_bound(rho, 0.5)
        + 1.0
    )
    if abs(capacity - bound_form) > _CAPACITY_IDENTITY_ATOL:
        raise ArithmeticError(
            f"capacity forms disagree: {capacity!r} vs {bound_form!r}"
        )
    return capacity


def capacity_curves(
    channel_family: str,
    coeffs: BellDiagonalCoeffs,
    schedule,
    rate_lambda: float | None = None,
) -> list[tuple[float, float]]:
    """Capacity along a parameter schedule.

    ``schedule`` holds damping/flip parameters directly, or times when
    ``rate_lambda`` is given (damping channel only).
    """
    if channel_family not in ("AD", "BPF"):
        raise ValueError(f"unknown channel family {channel_family!r}")
    if rate_lambda is not None and channel_family != "AD":
        raise ValueError("a decay rate only parametrizes the damping channel")
    rho0 = bell_diagonal_density(coeffs)
    curve = []
    for x in schedule:
        x = float(x)
        param = d_of_t(rate_lambda, x) if rate_lambda is not None else x
        channel = ad_kraus(param) if channel_family == "AD" else bpf_kraus(param)
        evolved = apply_one_sided(channel, rho0, side="A")
        curve.append((x, channel_capacity(evolved)))
    return curve
