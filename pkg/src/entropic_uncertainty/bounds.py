"""Measurement-uncertainty left-hand side, its three lower bounds, and the
published closed-form expressions kept as cross-checks.

The numerical pipeline (build state, evolve, measure, take entropies) is the
ground truth everywhere.  The closed-form evolved spectra are exact and used
directly in tests; the closed-form uncertainty expressions are transcriptions
with known defects, so they are only ever *compared* against the pipeline and
their gaps reported, never asserted.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import BOUND_ORDER_ATOL, validate_density
from .measures import (
    ProjectiveBasis,
    binary_entropy,
    classical_correlation,
    conditional_entropy_after_measurement,
    holevo_quantity,
    min_conditional_entropy_over_measurements,
    mutual_information,
    quantum_conditional_entropy,
)
from .states import BellDiagonalCoeffs

SPMC_ATOL = 1e-12
_EDGE = 1.0 - 1e-12


def complementarity_c(b1: ProjectiveBasis, b2: ProjectiveBasis) -> float:
    """Largest squared overlap max_{i,j} |<x_i|z_j>|^2 between two bases."""
    best = 0.0
    for p in b1.projectors:
        for q in b2.projectors:
            best = max(best, float(np.trace(p @ q).real))
    return min(max(best, 0.0), 1.0)


def uncertainty_lhs(
    rho,
    b1: ProjectiveBasis,
    b2: ProjectiveBasis,
    measured_side: str = "A",
    memory_side: str = "B",
) -> float:
    """S(b1 | memory) + S(b2 | memory), the measured uncertainty."""
    return conditional_entropy_after_measurement(
        rho, b1, measured_side, memory_side
    ) + conditional_entropy_after_measurement(rho, b2, measured_side, memory_side)


def berta_bound(rho, c: float, memory_side: str = "B") -> float:
    """log2(1/c) + S(rho) - S(rho_memory)."""
    if not 0.0 < c <= 1.0:
        raise ValueError(f"complementarity c = {c!r} outside (0, 1]")
    return math.log2(1.0 / c) + quantum_conditional_entropy(rho, memory_side)


def pati_bound(
    rho, c: float, measured_side: str = "A", memory_side: str = "B"
) -> float:
    """Berta bound plus max{0, discord - classical correlation}."""
    j = classical_correlation(rho, measured_side)
    d = max(0.0, mutual_information(rho) - j)
    return berta_bound(rho, c, memory_side) + max(0.0, d - j)


def adabi_bound(
    rho,
    c: float,
    b1: ProjectiveBasis,
    b2: ProjectiveBasis,
    measured_side: str = "A",
    memory_side: str = "B",
) -> float:
    """Berta bound plus max{0, mutual information - both Holevo quantities}."""
    delta = (
        mutual_information(rho)
        - holevo_quantity(rho, b1, measured_side, memory_side)
        - holevo_quantity(rho, b2, measured_side, memory_side)
    )
    return berta_bound(rho, c, memory_side) + max(0.0, delta)


def tightness(u_lhs: float, bound: float) -> float:
    """Gap between the measured uncertainty and a lower bound."""
    return u_lhs - bound


def spmc_satisfied(
    coeffs: BellDiagonalCoeffs, i: int, j: int, k: int, atol: float = SPMC_ATOL
) -> bool:
    """True when c_i = -c_j * c_k, the saturation condition for measuring
    the j and k Pauli axes."""
    if sorted((i, j, k)) != [1, 2, 3]:
        raise ValueError(f"axis indices {(i, j, k)!r} must be a permutation of 1, 2, 3")
    c = coeffs.as_tuple()
    return abs(c[i - 1] + c[j - 1] * c[k - 1]) <= atol


@dataclass(frozen=True)
class BoundReport:
    """Everything a sweep point reports: uncertainty, bounds, gaps, correlations."""

    u_lhs: float
    berta: float
    pati: float
    adabi: float
    tightness_berta: float
    tightness_pati: float
    tightness_adabi: float
    discord: float
    s_min_cond: float
    complementarity_c: float

    def __post_init__(self):
        pairs = (
            ("berta", self.berta, "pati", self.pati),
            ("pati", self.pati, "adabi", self.adabi),
            ("adabi", self.adabi, "u_lhs", self.u_lhs),
        )
        for lo_name, lo, hi_name, hi in pairs:
            if lo > hi + BOUND_ORDER_ATOL:
                raise ValueError(
                    f"bound ordering violated: {lo_name} = {lo!r} > {hi_name} = {hi!r}"
                )


def bound_report(
    rho,
    b1: ProjectiveBasis,
    b2: ProjectiveBasis,
    measured_side: str = "A",
    memory_side: str = "B",
) -> BoundReport:
    """Evaluate the uncertainty, all three bounds and the correlation measures."""
    rho = validate_density(rho)
    c = complementarity_c(b1, b2)
    u = uncertainty_lhs(rho, b1, b2, measured_side, memory_side)
    berta = berta_bound(rho, c, memory_side)
    j = classical_correlation(rho, measured_side)
    mut = mutual_information(rho)
    discord = max(0.0, mut - j)
    pati = berta + max(0.0, discord - j)
    delta = (
        mut
        - holevo_quantity(rho, b1, measured_side, memory_side)
        - holevo_quantity(rho, b2, measured_side, memory_side)
    )
    adabi = berta + max(0.0, delta)
    s_min = min_conditional_entropy_over_measurements(rho, measured_side=memory_side)
    return BoundReport(
        u_lhs=u,
        berta=berta,
        pati=pati,
        adabi=adabi,
        tightness_berta=tightness(u, berta),
        tightness_pati=tightness(u, pati),
        tightness_adabi=tightness(u, adabi),
        discord=discord,
        s_min_cond=s_min,
        complementarity_c=c,
    )


# --- published closed forms, kept verbatim as cross-checks -------------------


def ad_closed_form_spectrum(coeffs: BellDiagonalCoeffs, d: float) -> np.ndarray:
    """Printed eigenvalues of the damping-evolved state (exact), descending."""
    c1, c2, c3 = coeffs.as_tuple()
    rad_plus = (
        c1 * c1
        + 2.0 * c1 * c2
        + c2 * c2
        - c1 * c1 * d
        - 2.0 * c1 * c2 * d
        - c2 * c2 * d
        + d * d
    )
    rad_minus = (
        c1 * c1
        - 2.0 * c1 * c2
        + c2 * c2
        - c1 * c1 * d
        + 2.0 * c1 * c2 * d
        - c2 * c2 * d
        + d * d
    )
    sq_plus = math.sqrt(max(rad_plus, 0.0))
    sq_minus = math.sqrt(max(rad_minus, 0.0))
    vals = np.array(
        [
            (1.0 - c3 + c3 * d - sq_plus) / 4.0,
            (1.0 - c3 + c3 * d + sq_plus) / 4.0,
            (1.0 + c3 - c3 * d - sq_minus) / 4.0,
            (1.0 + c3 - c3 * d + sq_minus) / 4.0,
        ]
    )
    return np.sort(vals)[::-1]


def bpf_closed_form_spectrum(coeffs: BellDiagonalCoeffs, p: float) -> np.ndarray:
    """Printed eigenvalues of the flip-evolved state (exact), descending."""
    c1, c2, c3 = coeffs.as_tuple()
    vals = np.array(
        [
            (1.0 + c1 - c2 + c3 - 2.0 * c1 * p - 2.0 * c3 * p) / 4.0,
            (1.0 - c1 + c2 + c3 + 2.0 * c1 * p - 2.0 * c3 * p) / 4.0,
            (1.0 + c1 + c2 - c3 - 2.0 * c1 * p + 2.0 * c3 * p) / 4.0,
            (1.0 - c1 - c2 - c3 + 2.0 * c1 * p + 2.0 * c3 * p) / 4.0,
        ]
    )
    return np.sort(vals)[::-1]


def _one_minus_h(x: float) -> float:
    """x * arctanh2(x) + log2(1 - x^2) / 2, evaluated stably as 1 - h((1+x)/2)."""
    return 1.0 - binary_entropy((1.0 + x) / 2.0)


def ad_closed_form_u(coeffs: BellDiagonalCoeffs, d: float) -> float | None:
    """Printed closed form for the damping-channel uncertainty.

    Returns None where the expression leaves its domain or diverges (the
    printed formula has unpaired logarithms at the edges).  Known to disagree
    with the pipeline away from trivial points; use for gap reporting only.
    """
    c1, c2, c3 = coeffs.as_tuple()
    radicand = -(c1 - c2) * (c1 + c2) * (-1.0 + d)
    if radicand < 0.0:
        return None
    mu1 = math.sqrt(radicand)
    mu2 = c3 + d - c3 * d
    mu3 = c3 - c3 * d - d
    if mu1 >= _EDGE or mu2 <= -_EDGE or abs(mu3) >= _EDGE or abs(mu2) > 1.0:
        return None
    # grouped, divergence-free rearrangement of the printed terms
    g1 = 4.0 * _one_minus_h(mu1) - 2.0 * math.log2(1.0 - mu1)
    g2 = 2.0 * _one_minus_h(mu2) + 2.0 * math.log2(1.0 + mu2)
    g3 = -2.0 * _one_minus_h(mu3) + 2.0 * math.log2(1.0 - mu3 * mu3)
    return -0.25 * (g1 + g2 + g3)


def bpf_closed_forms(coeffs: BellDiagonalCoeffs, p: float) -> tuple[float, float]:
    """Printed closed forms (uncertainty, lower bound) for the flip channel.

    The bound expression reduces to the joint-state entropy and is exact; the
    uncertainty expression carries a sign defect and is reported, not trusted.
    """
    c1, c2, c3 = coeffs.as_tuple()
    nu1 = c1 - 2.0 * c1 * p
    nu2 = c3 - 2.0 * c3 * p
    u = 2.0 - binary_entropy((1.0 + nu1) / 2.0) - binary_entropy((1.0 + nu2) / 2.0)
    zetas = bpf_closed_form_spectrum(coeffs, p) * 4.0
    bound = 0.0
    for z in zetas:
        if z > 0.0:
            bound -= 0.25 * z * math.log2(z / 4.0)
    return u, bound
