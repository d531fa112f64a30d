"""Smoothing-free recovery through transform degeneracy at one frequency.

A sequence whose transform and its first m derivatives vanish at a chosen
frequency omega0 is fully determined on a block of m+1 consecutive indices
by the rest of its samples.  The recovered block is the unique fill that
makes the completed sequence degenerate of order m at omega0: it solves
B(omega0) y = z, where B collects the derivative coefficients of the gap
samples and z those of the observed trace (negated).
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionTooLarge, MissingGroundTruth, SingularSystem
from .opnorms import MAX_DIM, spectral_norm
from .sequences import FiniteSequence, GapSpec, SpectralProbe, overlay_gap, z_derivatives

__all__ = [
    "ConstraintMatrix",
    "DegRecoveryResult",
    "constraint_matrix",
    "recover_deg",
    "recover_deg_single",
    "minimax_error_identity",
]

_RESIDUAL_TOL = 1e-10


@dataclass(frozen=True)
class ConstraintMatrix:
    """Derivative coefficients of the gap samples at one frequency.

    entries[p][k] = (-i(s+k))^p * e^{-i omega (s+k)}; nonsingular for every
    omega (Vandermonde structure up to a diagonal phase).
    """

    omega: float
    entries: np.ndarray


def _check_omega(omega: float) -> float:
    omega = float(omega)
    if not (-np.pi < omega <= np.pi):
        raise ValueError(f"probe frequency must lie in (-pi, pi], got {omega}")
    return omega


def constraint_matrix(omega: float, gap: GapSpec) -> ConstraintMatrix:
    """Build B(omega) for the gap block; powers accumulate by repeated multiplication."""
    omega = _check_omega(omega)
    gap.require_normalized()
    k_idx = gap.s + np.arange(gap.m + 1)
    base = -1j * k_idx
    row = np.exp(-1j * omega * k_idx)
    entries = np.empty((gap.m + 1, gap.m + 1), dtype=np.complex128)
    entries[0] = row
    for p in range(1, gap.m + 1):
        row = row * base
        entries[p] = row
    return ConstraintMatrix(omega=omega, entries=entries)


@dataclass(frozen=True)
class DegRecoveryResult:
    """Recovered gap values plus the degeneracy certificate.

    residual_probe holds the transform derivatives of the completed
    sequence at the probe frequency; all entries vanish (to solver
    tolerance) by construction.
    """

    recovered: np.ndarray
    rhs: np.ndarray
    residual_probe: SpectralProbe
    condition_estimate: float


def recover_deg(
    x_obs: FiniteSequence,
    gap: GapSpec,
    omega0: float,
    *,
    allow_high_order: bool = False,
) -> DegRecoveryResult:
    """Recover the gap block so the completed sequence degenerates at omega0.

    Any samples the input stores at gap indices are ignored.  The
    constraint system grows ill-conditioned with the block length, so
    orders beyond m = 16 are refused unless ``allow_high_order`` is set;
    the condition estimate in the result makes the trade-off visible.
    """
    omega0 = _check_omega(omega0)
    gap.require_normalized()
    if gap.m + 1 > MAX_DIM and not allow_high_order:
        raise DimensionTooLarge(
            f"gap order m={gap.m} exceeds {MAX_DIM - 1}; "
            "pass allow_high_order=True to override"
        )
    probe = z_derivatives(x_obs, omega0, gap.m, exclude=gap)
    z = -probe.derivs
    B = constraint_matrix(omega0, gap).entries
    try:
        y = np.linalg.solve(B, z)
    except np.linalg.LinAlgError as exc:
        raise SingularSystem(f"degeneracy constraint system: {exc}") from exc
    residual = np.abs(B @ y - z).max()
    if not residual <= _RESIDUAL_TOL * (1.0 + np.abs(z).max(initial=0.0)):
        raise SingularSystem(
            f"degeneracy constraint system: effective rank loss (residual {residual:.3e})"
        )
    completed = overlay_gap(x_obs, gap, y)
    cond = spectral_norm(B) * spectral_norm(np.linalg.inv(B))
    return DegRecoveryResult(
        recovered=y,
        rhs=z,
        residual_probe=z_derivatives(completed, omega0, gap.m),
        condition_estimate=cond,
    )


def recover_deg_single(x_obs: FiniteSequence, s: int, omega0: float) -> complex:
    """Closed form for a single missing sample: minus the phase-twisted sum.

    At omega0 = pi this is the alternating sum -sum_t (-1)^{t-s} x(t).
    Independent of the matrix path in :func:`recover_deg`.
    """
    omega0 = _check_omega(omega0)
    if x_obs.is_empty:
        return 0.0 + 0.0j
    idx = x_obs.indices
    vals = x_obs.values
    keep = idx != s
    return complex(-np.sum(np.exp(1j * omega0 * (s - idx[keep])) * vals[keep]))


def minimax_error_identity(
    x_full: FiniteSequence, s: int, omega0: float
) -> tuple[complex, complex]:
    """Estimation error versus the transform value at the probe frequency.

    Removes the sample at s, recovers it from the rest, and returns
    (estimate - truth, X(e^{i omega0}) of the full sequence).  The two are
    locked together: error = -e^{i omega0 s} * probe, so the worst-case
    error over sequences with |X(e^{i omega0})| <= sigma is exactly sigma.
    """
    omega0 = _check_omega(omega0)
    if x_full.is_empty or not (x_full.start <= s <= x_full.end):
        raise MissingGroundTruth(f"sequence stores no sample at index {s}")
    estimate = recover_deg_single(x_full, s, omega0)
    error = estimate - x_full.at(s)
    probe = complex(z_derivatives(x_full, omega0, 0).derivs[0])
    return error, probe
