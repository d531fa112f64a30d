"""Numerical verification of the noise/truncation robustness bounds.

Each check recomputes a recovery with and without a perturbation and
compares the observed deviation against the a-priori operator-norm bound.
The right-hand sides always use certified upper bounds, so a violation
(beyond floating-point slack) would falsify the underlying inequality.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .bandlimited import recover_bl
from .degenerate import constraint_matrix, recover_deg
from .errors import ScenarioMismatch
from .generators import gap_free_noise, synth_ell1
from .lowpass import Kernel, gap_matrix
from .opnorms import inf_input_upper, op_norm, vec_norm
from .sequences import (
    FiniteSequence,
    GapSpec,
    add,
    clear_gap,
    norm,
    normalize_norm_order,
    weighted_moment,
)

__all__ = [
    "BLScenario",
    "DegScenario",
    "BoundCheck",
    "BoundReport",
    "check_r1_bound",
    "check_r2_bound",
    "random_bl_scenario",
    "random_deg_scenario",
]

SLACK = 1e-9


@dataclass(frozen=True)
class BLScenario:
    """Band-limited recovery instance: clean observations plus additive noise."""

    clean: FiniteSequence
    noise: FiniteSequence
    gap: GapSpec
    kernel: Kernel


@dataclass(frozen=True)
class DegScenario:
    """Degeneracy recovery instance: clean observations plus additive noise."""

    clean: FiniteSequence
    noise: FiniteSequence
    gap: GapSpec
    omega0: float


@dataclass(frozen=True)
class BoundCheck:
    name: str
    lhs: float
    rhs: float
    holds: bool


@dataclass(frozen=True)
class BoundReport:
    """Primary inequality plus every individual check that was run."""

    lhs: float
    rhs: float
    holds: bool
    checks: tuple[BoundCheck, ...]


def _make_check(name: str, lhs: float, rhs: float) -> BoundCheck:
    return BoundCheck(name=name, lhs=lhs, rhs=rhs, holds=lhs <= rhs * (1.0 + SLACK))


def _validate_scenario(clean: FiniteSequence, noise: FiniteSequence, gap: GapSpec) -> None:
    for label, seq in (("clean observations", clean), ("noise", noise)):
        if seq.is_empty:
            continue
        idx = seq.indices
        on_gap = (idx >= gap.s) & (idx <= gap.s + gap.m)
        if np.any(seq.values[on_gap] != 0.0):
            raise ScenarioMismatch(f"{label} must vanish on the gap block")


def check_r1_bound(scenario: BLScenario, theta=2) -> BoundReport:
    """Noise gain of the band-limited recovery against its operator-norm bound.

    The deviation of the recovered block under observation noise eta is
    bounded by ||(I-A)^{-1}||_{2,theta} * ||eta||_2; for a single-sample
    gap the prefactor collapses to cutoff/(pi - cutoff).
    """
    theta = normalize_norm_order(theta)
    _validate_scenario(scenario.clean, scenario.noise, scenario.gap)
    base = recover_bl(scenario.clean, scenario.gap, scenario.kernel)
    noisy = recover_bl(add(scenario.clean, scenario.noise), scenario.gap, scenario.kernel)
    deviation = vec_norm(base.recovered - noisy.recovered, theta)

    M = np.eye(scenario.gap.m + 1) - gap_matrix(scenario.kernel, scenario.gap.m).entries
    gain = op_norm(np.linalg.inv(M), 2, theta, matrix_id="bl-gap-inverse").value
    noise_l2 = norm(scenario.noise, 2)
    checks = [_make_check("noise-gain", deviation, gain * noise_l2)]
    if scenario.gap.m == 0:
        w = scenario.kernel.omega_cap
        checks.append(
            _make_check("single-sample-noise-gain", deviation, w / (np.pi - w) * noise_l2)
        )
    primary = checks[0]
    return BoundReport(
        lhs=primary.lhs,
        rhs=primary.rhs,
        holds=all(c.holds for c in checks),
        checks=tuple(checks),
    )


def check_r2_bound(scenario: DegScenario, theta=2) -> BoundReport:
    """Size and noise-gain bounds for the degeneracy recovery.

    The recovered block is bounded by an upper bound on
    ||B(omega0)^{-1}||_{inf,theta} times the m-weighted absolute moment of
    the observations; the same prefactor against the moment of the noise
    bounds the deviation.  For a single-sample gap the size bound is just
    the l1 norm of the observations and the deviation bound the l1 norm of
    the noise.
    """
    theta = normalize_norm_order(theta)
    _validate_scenario(scenario.clean, scenario.noise, scenario.gap)
    base = recover_deg(scenario.clean, scenario.gap, scenario.omega0)
    noisy = recover_deg(add(scenario.clean, scenario.noise), scenario.gap, scenario.omega0)

    B = constraint_matrix(scenario.omega0, scenario.gap).entries
    prefactor = inf_input_upper(np.linalg.inv(B), theta)
    m = scenario.gap.m

    size = vec_norm(base.recovered, theta)
    deviation = vec_norm(base.recovered - noisy.recovered, theta)
    checks = [
        _make_check("output-size", size, prefactor * weighted_moment(scenario.clean, m)),
        _make_check("noise-gain", deviation, prefactor * weighted_moment(scenario.noise, m)),
    ]
    if m == 0:
        checks.append(
            _make_check("single-sample-noise-sum", deviation, norm(scenario.noise, 1))
        )
    primary = checks[0]
    return BoundReport(
        lhs=primary.lhs,
        rhs=primary.rhs,
        holds=all(c.holds for c in checks),
        checks=tuple(checks),
    )


# --- seeded scenario factories (used by the verification suites) ---------


def _random_instance(seed, noise_level: float, radius: int):
    rng = np.random.default_rng(seed)
    m = int(rng.integers(0, 4))
    gap = GapSpec(0, m) if m > 0 else GapSpec(int(rng.integers(-5, 6)), 0)
    path = synth_ell1(radius, rng)
    clean = clear_gap(path, gap)
    noise = gap_free_noise(clean, gap, noise_level, rng)
    return rng, gap, clean, noise


def random_bl_scenario(seed, noise_level: float = 0.05, radius: int = 60) -> BLScenario:
    """Seeded scenario with random gap order in 0..3 and a random moderate cutoff."""
    rng, gap, clean, noise = _random_instance(seed, noise_level, radius)
    cutoff = rng.uniform(0.1, 0.8) * np.pi
    return BLScenario(clean=clean, noise=noise, gap=gap, kernel=Kernel(cutoff))


def random_deg_scenario(seed, noise_level: float = 0.05, radius: int = 60) -> DegScenario:
    """Seeded scenario with random gap order in 0..3 and a random probe frequency."""
    rng, gap, clean, noise = _random_instance(seed, noise_level, radius)
    omega0 = float(rng.uniform(-np.pi, np.pi))
    if omega0 <= -np.pi:
        omega0 = np.pi
    return DegScenario(clean=clean, noise=noise, gap=gap, omega0=omega0)
