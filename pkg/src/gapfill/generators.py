"""Synthesizers for test signals: band-limited mixtures, summable random
paths, degenerate completions, calibrated noise, and truncation."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Union

import numpy as np

from .degenerate import recover_deg
from .sequences import FiniteSequence, GapSpec, norm, overlay_gap

__all__ = [
    "BLAtomSpec",
    "synth_bandlimited",
    "random_atoms",
    "synth_ell1",
    "make_degenerate",
    "add_noise",
    "gap_free_noise",
    "truncate",
]

SeedLike = Union[int, np.random.Generator]


@dataclass(frozen=True)
class BLAtomSpec:
    """Mixture of shifted sinc atoms: x(t) = sum_j c_j sinc(cutoff*(t - tau_j)).

    Sampling such a mixture on the integers gives a sequence whose
    transform vanishes outside [-cutoff, cutoff], so it is exactly
    band-limited for any cutoff below pi.
    """

    cutoff: float
    atoms: tuple[tuple[float, complex], ...]

    def __post_init__(self) -> None:
        if not (0.0 < self.cutoff < np.pi):
            raise ValueError(f"cutoff must lie in (0, pi), got {self.cutoff}")
        atoms = tuple((float(c), complex(w)) for c, w in self.atoms)
        if not atoms:
            raise ValueError("at least one atom is required")
        object.__setattr__(self, "atoms", atoms)
        object.__setattr__(self, "cutoff", float(self.cutoff))


def synth_bandlimited(spec: BLAtomSpec, window: range) -> FiniteSequence:
    """Sample the atom mixture on a contiguous integer window."""
    if len(window) == 0:
        return FiniteSequence()
    if window.step != 1:
        raise ValueError("window must have step 1")
    t = np.arange(window.start, window.stop, dtype=np.float64)
    x = np.zeros(t.size, dtype=np.complex128)
    for center, weight in spec.atoms:
        x += weight * np.sinc(spec.cutoff * (t - center) / np.pi)
    return FiniteSequence(window.start, x)


def random_atoms(
    cutoff: float,
    n_atoms: int,
    center_span: float,
    seed: SeedLike,
    real_weights: bool = False,
) -> BLAtomSpec:
    """Random atom mixture: centers uniform on [-span, span], Gaussian weights."""
    rng = np.random.default_rng(seed)
    centers = rng.uniform(-center_span, center_span, size=n_atoms)
    if real_weights:
        weights = rng.standard_normal(n_atoms).astype(np.complex128)
    else:
        weights = (rng.standard_normal(n_atoms) + 1j * rng.standard_normal(n_atoms)) / np.sqrt(2)
    return BLAtomSpec(cutoff=float(cutoff), atoms=tuple(zip(centers, weights)))


def synth_ell1(
    radius: int,
    seed: SeedLike,
    decay: float = 2.0,
    real_values: bool = False,
) -> FiniteSequence:
    """Gaussian white sequence shaped by the envelope (1 + |t|)^-decay.

    With decay > 1 the result is absolutely summable with comfortably
    finite weighted moments, the regime the degeneracy solver targets.
    """
    if radius < 0:
        raise ValueError("radius must be non-negative")
    rng = np.random.default_rng(seed)
    t = np.arange(-radius, radius + 1)
    if real_values:
        g = rng.standard_normal(t.size).astype(np.complex128)
    else:
        g = (rng.standard_normal(t.size) + 1j * rng.standard_normal(t.size)) / np.sqrt(2)
    return FiniteSequence(-radius, g / (1.0 + np.abs(t)) ** decay)


def make_degenerate(x: FiniteSequence, gap: GapSpec, omega0: float) -> FiniteSequence:
    """Overwrite the gap block so the transform derivatives vanish at omega0.

    Only the m+1 gap samples change; the result carries an exactly
    recoverable block.  Already-degenerate input comes back unchanged (up
    to solver tolerance).
    """
    result = recover_deg(x, gap, omega0)
    return overlay_gap(x, gap, result.recovered)


def add_noise(
    x: FiniteSequence,
    level: float,
    seed: SeedLike,
    real_values: bool = False,
) -> tuple[FiniteSequence, FiniteSequence]:
    """Add i.i.d. Gaussian noise rescaled so ||eta||_2 = level * ||x||_2 exactly.

    Returns (x + eta, eta).  Deterministic for a given seed; level 0 (or an
    empty/zero input) yields zero noise.
    """
    if level < 0:
        raise ValueError("noise level must be non-negative")
    if x.is_empty:
        return x, x
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal(len(x)) + 1j * rng.standard_normal(len(x))
    if real_values:
        raw = raw.real.astype(np.complex128)
    target = level * norm(x, 2)
    raw_norm = np.linalg.norm(raw)
    if target == 0.0 or raw_norm == 0.0:
        eta = FiniteSequence(x.start, np.zeros(len(x), dtype=np.complex128))
        return x, eta
    eta = FiniteSequence(x.start, raw * (target / raw_norm))
    return FiniteSequence(x.start, x.values + eta.values), eta


def gap_free_noise(
    x: FiniteSequence,
    gap: GapSpec,
    level: float,
    seed: SeedLike,
    real_values: bool = False,
) -> FiniteSequence:
    """Noise on the observation window only: zero at the gap, ||eta||_2 = level * ||x||_2."""
    if level < 0:
        raise ValueError("noise level must be non-negative")
    if x.is_empty:
        return x
    rng = np.random.default_rng(seed)
    raw = rng.standard_normal(len(x)) + 1j * rng.standard_normal(len(x))
    if real_values:
        raw = raw.real.astype(np.complex128)
    idx = x.indices
    raw[(idx >= gap.s) & (idx <= gap.s + gap.m)] = 0.0
    target = level * norm(x, 2)
    raw_norm = np.linalg.norm(raw)
    if target == 0.0 or raw_norm == 0.0:
        return FiniteSequence(x.start, np.zeros(len(x), dtype=np.complex128))
    return FiniteSequence(x.start, raw * (target / raw_norm))


def truncate(x: FiniteSequence, q: int) -> tuple[FiniteSequence, FiniteSequence]:
    """Split x into the window |t| <= q and the discarded tail |t| > q."""
    if q < 1:
        raise ValueError("truncation radius must be at least 1")
    if x.is_empty:
        return x, x
    idx = x.indices
    inside = np.abs(idx) <= q
    if inside.all():
        return x, FiniteSequence()
    if not inside.any():
        return FiniteSequence(), x
    kept_vals = x.values[inside]
    kept = FiniteSequence(int(idx[inside][0]), kept_vals)
    tail_vals = x.values.copy()
    tail_vals[inside] = 0.0
    # trim all-zero margins so the tail window is tight
    nz = np.nonzero(~inside)[0]
    lo, hi = nz[0], nz[-1]
    tail = FiniteSequence(int(idx[lo]), tail_vals[lo : hi + 1])
    return kept, tail
