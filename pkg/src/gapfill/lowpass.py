"""Ideal low-pass kernel, direct truncated convolution, and the gap Gram matrix."""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .sequences import FiniteSequence, GapSpec

__all__ = ["Kernel", "GapMatrix", "kernel_value", "convolve_at", "convolve_lowpass", "gap_matrix"]

_CHUNK = 4096  # output samples per convolution block, bounds the shift matrix size


@dataclass(frozen=True)
class Kernel:
    """Ideal low-pass impulse response h(t) = cutoff * sinc(cutoff*t) / pi.

    The cutoff must lie strictly inside (0, pi): at cutoff = pi the
    single-sample recovery operator degenerates.
    """

    omega_cap: float

    def __post_init__(self) -> None:
        w = float(self.omega_cap)
        if not (0.0 < w < np.pi):
            raise ValueError(f"cutoff must lie in (0, pi), got {w}")
        object.__setattr__(self, "omega_cap", w)


@dataclass(frozen=True)
class GapMatrix:
    """Kernel values h(k - p) on the gap block; real symmetric Toeplitz."""

    entries: np.ndarray


def kernel_value(kernel: Kernel, t):
    """h(t) for integer t (scalar or array); h(0) = cutoff/pi exactly."""
    w = kernel.omega_cap
    out = (w / np.pi) * np.sinc(w * np.asarray(t, dtype=np.float64) / np.pi)
    return float(out) if np.ndim(t) == 0 else out


def convolve_at(
    kernel: Kernel,
    x: FiniteSequence,
    targets: np.ndarray,
    exclude: GapSpec | None = None,
) -> np.ndarray:
    """(h o x)(t) at the requested integer targets, by direct summation.

    Samples inside ``exclude`` contribute nothing.  Direct O(n * |targets|)
    evaluation keeps the summation order deterministic.
    """
    targets = np.atleast_1d(np.asarray(targets, dtype=np.int64))
    out = np.zeros(targets.size, dtype=np.complex128)
    if x.is_empty:
        return out
    idx = x.indices
    vals = x.values
    if exclude is not None:
        keep = (idx < exclude.s) | (idx > exclude.s + exclude.m)
        idx = idx[keep]
        vals = vals[keep]
    if idx.size == 0:
        return out
    for lo in range(0, targets.size, _CHUNK):
        block = targets[lo : lo + _CHUNK]
        shifts = block[:, None] - idx[None, :]
        out[lo : lo + _CHUNK] = kernel_value(kernel, shifts) @ vals
    return out


def convolve_lowpass(kernel: Kernel, x: FiniteSequence, out_indices: range) -> FiniteSequence:
    """Low-pass x and sample the result on a contiguous index range."""
    if len(out_indices) == 0:
        return FiniteSequence()
    if out_indices.step != 1:
        raise ValueError("output range must have step 1")
    vals = convolve_at(kernel, x, np.arange(out_indices.start, out_indices.stop))
    return FiniteSequence(out_indices.start, vals)


def gap_matrix(kernel: Kernel, m: int) -> GapMatrix:
    """Gram matrix h(k - p) for k, p = 0..m, filled from |k - p| so symmetry is exact."""
    if m < 0:
        raise ValueError("gap order m must be non-negative")
    r = np.arange(m + 1)
    lags = kernel_value(kernel, np.arange(m + 1))
    return GapMatrix(entries=lags[np.abs(r[:, None] - r[None, :])])
