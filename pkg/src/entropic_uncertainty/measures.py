"""Entropies and correlation measures for two-qubit states with a memory qubit.

All entropies are in bits (base-2 logarithms).  Measurement-optimized
quantities (classical correlation, discord, minimal conditional entropy)
restrict the optimization to rank-1 projective measurements parametrized by a
Bloch direction; the optimizer runs a 1-degree grid followed by
coordinate-wise golden-section refinement, which is deterministic and, for the
Bell-diagonal family, provably lands on a Pauli axis.

Side conventions: ``classical_correlation`` and ``quantum_discord`` measure
qubit A by default (the qubit exposed to noise), while
``min_conditional_entropy_over_measurements`` defaults to measuring the memory
qubit B and averaging the entropy of the unmeasured qubit A.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .linalg import (
    COMPLETENESS_ATOL,
    HERMITIAN_ATOL,
    I2,
    PAULI_X,
    PAULI_Y,
    PAULI_Z,
    PAULIS,
    POSTSELECT_MIN_PROB,
    PSD_ATOL,
    TRACE_ATOL,
    as_matrix,
    conjugate_sandwich,
    density_spectrum,
    partial_trace,
    tensor_product,
    validate_density,
)
from .states import XState

_GOLDEN_RATIO_CONJ = (math.sqrt(5.0) - 1.0) / 2.0
_ANGLE_TOL = 1e-10
_GRID_THETAS = np.linspace(0.0, math.pi, 181)
_GRID_PHIS = np.linspace(0.0, 2.0 * math.pi, 361)
_GRID_STEP = math.pi / 180.0
_SIN_T = np.sin(_GRID_THETAS)[:, None]
_NX = _SIN_T * np.cos(_GRID_PHIS)[None, :]
_NY = _SIN_T * np.sin(_GRID_PHIS)[None, :]
_NZ = np.cos(_GRID_THETAS)[:, None]


def _other_side(side: str) -> str:
    if side == "A":
        return "B"
    if side == "B":
        return "A"
    raise ValueError(f"unknown subsystem tag {side!r} (expected 'A' or 'B')")


def binary_entropy(q: float) -> float:
    """Entropy in bits of a (q, 1 - q) distribution."""
    if q < -PSD_ATOL or q > 1.0 + PSD_ATOL:
        raise ValueError(f"probability {q!r} outside [0, 1]")
    q = min(max(q, 0.0), 1.0)
    out = 0.0
    for x in (q, 1.0 - q):
        if x > 0.0:
            out -= x * math.log2(x)
    return out


def shannon_entropy(probabilities) -> float:
    """Shannon entropy in bits; zero probabilities contribute nothing."""
    p = np.asarray(probabilities, dtype=float)
    if p.size and float(p.min()) < -PSD_ATOL:
        raise ValueError(f"negative probability {float(p.min())!r}")
    total = float(p.sum())
    if abs(total - 1.0) > TRACE_ATOL:
        raise ValueError(f"probabilities sum to {total!r}, expected 1")
    p = np.clip(p, 0.0, 1.0)
    mask = p > 0.0
    return float(-(p[mask] * np.log2(p[mask])).sum())


def von_neumann_entropy(rho) -> float:
    """Entropy in bits of a density matrix's spectrum."""
    return shannon_entropy(density_spectrum(rho))


@dataclass(frozen=True)
class BlochDirection:
    """Measurement direction on the Bloch sphere (theta polar, phi azimuthal)."""

    theta: float
    phi: float

    def __post_init__(self):
        if not 0.0 <= self.theta <= math.pi:
            raise ValueError(f"theta = {self.theta!r} outside [0, pi]")
        if not 0.0 <= self.phi < 2.0 * math.pi:
            raise ValueError(f"phi = {self.phi!r} outside [0, 2*pi)")

    def unit_vector(self) -> tuple[float, float, float]:
        st = math.sin(self.theta)
        return (
            st * math.cos(self.phi),
            st * math.sin(self.phi),
            math.cos(self.theta),
        )


@dataclass(frozen=True, eq=False)
class ProjectiveBasis:
    """Two orthogonal rank-1 projectors forming a complete qubit measurement."""

    projectors: tuple[np.ndarray, np.ndarray]
    label: str = ""

    def __post_init__(self):
        projs = tuple(as_matrix(p) for p in self.projectors)
        object.__setattr__(self, "projectors", projs)
        if len(projs) != 2:
            raise ValueError("a qubit basis needs exactly two projectors")
        for p in projs:
            if p.shape != (2, 2):
                raise ValueError(f"projector has shape {p.shape}, expected (2, 2)")
            if float(np.abs(p - p.conj().T).max()) > HERMITIAN_ATOL:
                raise ValueError("projector is not Hermitian")
            if float(np.abs(p @ p - p).max()) > HERMITIAN_ATOL:
                raise ValueError("projector is not idempotent")
        defect = float(np.abs(projs[0] + projs[1] - I2).max())
        if defect > COMPLETENESS_ATOL:
            raise ValueError(f"projectors do not sum to identity (defect {defect:.3e})")


def bloch_basis(direction: BlochDirection, label: str = "") -> ProjectiveBasis:
    """Projective basis along a Bloch direction: (I +/- n.sigma) / 2."""
    nx, ny, nz = direction.unit_vector()
    spin = nx * PAULI_X + ny * PAULI_Y + nz * PAULI_Z
    plus = 0.5 * (I2 + spin)
    minus = 0.5 * (I2 - spin)
    return ProjectiveBasis(projectors=(plus, minus), label=label)


def sigma_x_basis() -> ProjectiveBasis:
    return bloch_basis(BlochDirection(math.pi / 2.0, 0.0), label="x")


def sigma_y_basis() -> ProjectiveBasis:
    return bloch_basis(BlochDirection(math.pi / 2.0, math.pi / 2.0), label="y")


def sigma_z_basis() -> ProjectiveBasis:
    return bloch_basis(BlochDirection(0.0, 0.0), label="z")


def _embed(op: np.ndarray, side: str) -> np.ndarray:
    if side == "A":
        return tensor_product(op, I2)
    if side == "B":
        return tensor_product(I2, op)
    raise ValueError(f"unknown subsystem tag {side!r}")


def post_measurement_state(rho, basis: ProjectiveBasis, side: str = "A") -> np.ndarray:
    """Dephased state sum_x (P_x)_side rho (P_x)_side after measuring one qubit."""
    rho = validate_density(rho)
    if rho.shape != (4, 4):
        raise ValueError("not a two-qubit state")
    out = np.zeros((4, 4), dtype=complex)
    for p in basis.projectors:
        out += conjugate_sandwich(_embed(p, side), rho)
    return out


def conditional_entropy_after_measurement(
    rho, basis: ProjectiveBasis, measured_side: str = "A", memory_side: str = "B"
) -> float:
    """S(measured register | memory) = S(post-measurement state) - S(memory)."""
    if measured_side == memory_side:
        raise ValueError("measured and memory side must differ")
    pm = post_measurement_state(rho, basis, side=measured_side)
    return von_neumann_entropy(pm) - von_neumann_entropy(
        partial_trace(pm, memory_side)
    )


def quantum_conditional_entropy(rho, conditioning_side: str = "B") -> float:
    """S(rho) - S(rho_conditioning); negative values signal entanglement."""
    rho = validate_density(rho)
    return von_neumann_entropy(rho) - von_neumann_entropy(
        partial_trace(rho, conditioning_side)
    )


def mutual_information(rho) -> float:
    """S(rho_A) + S(rho_B) - S(rho_AB)."""
    rho = validate_density(rho)
    return (
        von_neumann_entropy(partial_trace(rho, "A"))
        + von_neumann_entropy(partial_trace(rho, "B"))
        - von_neumann_entropy(rho)
    )


def holevo_quantity(
    rho, basis: ProjectiveBasis, measured_side: str = "A", memory_side: str = "B"
) -> float:
    """Accessible-information bound S(rho_mem) - sum_i p_i S(rho_mem | outcome i)."""
    if measured_side == memory_side:
        raise ValueError("measured and memory side must differ")
    rho = validate_density(rho)
    total = von_neumann_entropy(partial_trace(rho, memory_side))
    for p in basis.projectors:
        branch = conjugate_sandwich(_embed(p, measured_side), rho)
        prob = float(np.trace(branch).real)
        if prob <= POSTSELECT_MIN_PROB:
            continue
        total -= prob * von_neumann_entropy(partial_trace(branch, memory_side) / prob)
    return total


class _CrossMoments:
    """Scalar components of rho_other and Tr_measured[(sigma_j)_measured rho].

    Measuring along direction n with projectors (I +/- n.sigma)/2 leaves the
    unmeasured qubit in (rho_other +/- sum_j n_j R_j) / 2 unnormalized, so the
    whole measurement sweep reduces to 2x2 closed forms in these moments.
    """

    __slots__ = ("b00", "b11", "b01", "r00", "r11", "r01")

    def __init__(self, rho: np.ndarray, measured_side: str):
        other = partial_trace(rho, _other_side(measured_side))
        r = rho.reshape(2, 2, 2, 2)
        mats = []
        for sigma in PAULIS:
            if measured_side == "A":
                mats.append(np.einsum("ij,jbic->bc", sigma, r))
            else:
                mats.append(np.einsum("ij,ajci->ac", sigma, r))
        self.b00 = float(other[0, 0].real)
        self.b11 = float(other[1, 1].real)
        self.b01 = complex(other[0, 1])
        self.r00 = tuple(float(m[0, 0].real) for m in mats)
        self.r11 = tuple(float(m[1, 1].real) for m in mats)
        self.r01 = tuple(complex(m[0, 1]) for m in mats)


def _neg_xlog2x(x: np.ndarray) -> np.ndarray:
    return np.where(x > 0.0, -x * np.log2(np.where(x > 0.0, x, 1.0)), 0.0)


def _avg_branch_entropy_grid(mom: _CrossMoments) -> np.ndarray:
    g00 = _NX * mom.r00[0] + _NY * mom.r00[1] + _NZ * mom.r00[2]
    g11 = _NX * mom.r11[0] + _NY * mom.r11[1] + _NZ * mom.r11[2]
    g01 = _NX * mom.r01[0] + _NY * mom.r01[1] + _NZ * mom.r01[2]
    total = np.zeros_like(g00)
    for sign in (1.0, -1.0):
        m00 = 0.5 * (mom.b00 + sign * g00)
        m11 = 0.5 * (mom.b11 + sign * g11)
        m01 = 0.5 * (mom.b01 + sign * g01)
        t = m00 + m11
        disc = np.sqrt((m00 - m11) ** 2 + 4.0 * np.abs(m01) ** 2)
        lam1 = np.maximum(0.5 * (t + disc), 0.0)
        lam2 = np.maximum(0.5 * (t - disc), 0.0)
        contrib = _neg_xlog2x(lam1) + _neg_xlog2x(lam2) - _neg_xlog2x(t)
        total += np.where(t > POSTSELECT_MIN_PROB, contrib, 0.0)
    return total


def _avg_branch_entropy_at(mom: _CrossMoments, theta: float, phi: float) -> float:
    st = math.sin(theta)
    nx = st * math.cos(phi)
    ny = st * math.sin(phi)
    nz = math.cos(theta)
    g00 = nx * mom.r00[0] + ny * mom.r00[1] + nz * mom.r00[2]
    g11 = nx * mom.r11[0] + ny * mom.r11[1] + nz * mom.r11[2]
    g01 = nx * mom.r01[0] + ny * mom.r01[1] + nz * mom.r01[2]
    total = 0.0
    for sign in (1.0, -1.0):
        m00 = 0.5 * (mom.b00 + sign * g00)
        m11 = 0.5 * (mom.b11 + sign * g11)
        m01 = 0.5 * (mom.b01 + sign * g01)
        t = m00 + m11
        if t <= POSTSELECT_MIN_PROB:
            continue
        disc = math.hypot(m00 - m11, 2.0 * abs(m01))
        for lam in (0.5 * (t + disc), 0.5 * (t - disc)):
            if lam > 0.0:
                total -= lam * math.log2(lam)
        total += t * math.log2(t)
    return total


def _golden_section(f, lo: float, hi: float) -> tuple[float, float]:
    """Deterministic golden-section minimum of f on [lo, hi]."""
    if hi - lo <= _ANGLE_TOL:
        mid = 0.5 * (lo + hi)
        return mid, f(mid)
    span = hi - lo
    c = hi - _GOLDEN_RATIO_CONJ * span
    d = lo + _GOLDEN_RATIO_CONJ * span
    fc, fd = f(c), f(d)
    while span > _ANGLE_TOL:
        if fc < fd:
            hi, d, fd = d, c, fc
            span = hi - lo
            c = hi - _GOLDEN_RATIO_CONJ * span
            fc = f(c)
        else:
            lo, c, fc = c, d, fd
            span = hi - lo
            d = lo + _GOLDEN_RATIO_CONJ * span
            fd = f(d)
    return (c, fc) if fc < fd else (d, fd)


def _canonical_angles(theta: float, phi: float) -> tuple[float, float]:
    theta = math.fmod(theta, 2.0 * math.pi)
    if theta < 0.0:
        theta, phi = -theta, phi + math.pi
    if theta > math.pi:
        theta, phi = 2.0 * math.pi - theta, phi + math.pi
    phi = math.fmod(phi, 2.0 * math.pi)
    if phi < 0.0:
        phi += 2.0 * math.pi
    if phi >= 2.0 * math.pi:
        phi = 0.0
    return theta, phi


def _minimize_avg_branch_entropy(
    rho: np.ndarray, measured_side: str
) -> tuple[float, BlochDirection]:
    mom = _CrossMoments(rho, measured_side)
    grid = _avg_branch_entropy_grid(mom)
    flat = int(np.argmin(grid))  # first minimum: smallest theta, then smallest phi
    ti, pj = divmod(flat, grid.shape[1])
    theta = float(_GRID_THETAS[ti])
    phi = float(_GRID_PHIS[pj])
    value = float(grid[ti, pj])
    # the trig parametrization is valid and smooth for any real angles, so the
    # refinement brackets are left unclipped; angles are canonicalized at the
    # end (crucial when the optimum sits across the phi seam or a pole)
    for _ in range(3):
        x, fx = _golden_section(
            lambda t: _avg_branch_entropy_at(mom, t, phi),
            theta - _GRID_STEP,
            theta + _GRID_STEP,
        )
        if fx < value:
            theta, value = x, fx
        x, fx = _golden_section(
            lambda p: _avg_branch_entropy_at(mom, theta, p),
            phi - _GRID_STEP,
            phi + _GRID_STEP,
        )
        if fx < value:
            phi, value = x, fx
    theta, phi = _canonical_angles(theta, phi)
    return value, BlochDirection(theta, phi)


def min_conditional_entropy_over_measurements(rho, measured_side: str = "B") -> float:
    """Minimum over projective measurements of the average entropy left on the
    unmeasured qubit."""
    rho = validate_density(rho)
    if rho.shape != (4, 4):
        raise ValueError("not a two-qubit state")
    value, _ = _minimize_avg_branch_entropy(rho, measured_side)
    return value


def classical_correlation(rho, measured_side: str = "A") -> float:
    """Max over measurements of S(rho_other) - sum_i p_i S(rho_other | i)."""
    rho = validate_density(rho)
    if rho.shape != (4, 4):
        raise ValueError("not a two-qubit state")
    other = partial_trace(rho, _other_side(measured_side))
    value, _ = _minimize_avg_branch_entropy(rho, measured_side)
    return von_neumann_entropy(other) - value


def quantum_discord(rho, measured_side: str = "A") -> float:
    """Mutual information minus classical correlation, floored at zero."""
    value = mutual_information(rho) - classical_correlation(rho, measured_side)
    return max(0.0, value)


def discord_xstate_closed(x: XState) -> float:
    """Fast closed-form discord of an X state (measurement on the memory qubit).

    Takes the better of the optimal equatorial measurement and the z
    measurement; this covers the X-state family except for a small parameter
    region where a tilted measurement wins, so the sweep-based
    ``quantum_discord`` stays the ground truth.
    """
    pops = x.populations()
    gamma = 0.5 * (
        1.0
        + math.sqrt(
            (1.0 - 2.0 * (x.d33 + x.d44)) ** 2
            + 4.0 * (abs(x.a14) + abs(x.a23)) ** 2
        )
    )
    p1 = binary_entropy(min(gamma, 1.0))
    p2 = sum(-p * math.log2(p) for p in pops if p > 0.0) - binary_entropy(
        x.d11 + x.d33
    )
    s_memory = binary_entropy(x.d11 + x.d33)
    s_joint = von_neumann_entropy(x.to_matrix())
    return min(p1, p2) + s_memory - s_joint
