"""Finite-support complex sequences and their basic spectral machinery.

A sequence is stored as a dense window: an integer start index plus a
contiguous block of complex samples.  Everything outside the window is an
implicit zero.  Infinite sequences are represented by truncating them to
such a window; all downstream accuracy statements are parameterized by the
truncation radius.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field
from pathlib import Path
from typing import Iterable, Union

import numpy as np

from .errors import InvalidGap

__all__ = [
    "FiniteSequence",
    "GapSpec",
    "SpectralProbe",
    "from_pairs",
    "norm",
    "weighted_moment",
    "z_derivatives",
    "add",
    "subtract",
    "scale",
    "overlay_gap",
    "clear_gap",
    "read_sequence_csv",
    "write_sequence_csv",
]


def _empty_values() -> np.ndarray:
    return np.zeros(0, dtype=np.complex128)


@dataclass(frozen=True)
class FiniteSequence:
    """Complex samples x(start), x(start+1), ..., zero outside the window.

    The canonical empty sequence has no samples and start == 0.  Samples
    must be finite; NaN/Inf components are rejected on construction.
    """

    start: int = 0
    values: np.ndarray = field(default_factory=_empty_values)

    def __post_init__(self) -> None:
        vals = np.atleast_1d(np.asarray(self.values, dtype=np.complex128))
        if vals.ndim != 1:
            raise ValueError("values must be one-dimensional")
        if vals.size and not np.all(np.isfinite(vals)):
            raise ValueError("all samples must be finite")
        object.__setattr__(self, "values", vals)
        object.__setattr__(self, "start", 0 if vals.size == 0 else int(self.start))

    @property
    def end(self) -> int:
        """Index of the last stored sample (start - 1 when empty)."""
        return self.start + len(self.values) - 1

    @property
    def indices(self) -> np.ndarray:
        return self.start + np.arange(len(self.values))

    @property
    def is_empty(self) -> bool:
        return len(self.values) == 0

    def __len__(self) -> int:
        return len(self.values)

    def at(self, t: int) -> complex:
        """Sample value at index t (implicit zeros outside the window)."""
        if self.is_empty or t < self.start or t > self.end:
            return 0.0 + 0.0j
        return complex(self.values[t - self.start])


@dataclass(frozen=True)
class GapSpec:
    """Missing block {s, s+1, ..., s+m}; the block length is m+1."""

    s: int
    m: int

    def __post_init__(self) -> None:
        if self.m < 0:
            raise ValueError("gap order m must be non-negative")

    @property
    def indices(self) -> range:
        return range(self.s, self.s + self.m + 1)

    def require_normalized(self) -> None:
        """Solvers for m > 0 assume the block starts at the origin."""
        if self.m > 0 and self.s != 0:
            raise InvalidGap(
                f"multi-sample gaps must start at index 0 (got s={self.s}, m={self.m})"
            )


@dataclass(frozen=True)
class SpectralProbe:
    """Transform derivative values d^p X / d omega^p at a single frequency.

    Entry p of ``derivs`` is the p-th derivative in omega of the
    sequence's transform evaluated on the unit circle; entry 0 is the
    transform value itself.
    """

    omega: float
    derivs: np.ndarray

    def __post_init__(self) -> None:
        d = np.atleast_1d(np.asarray(self.derivs, dtype=np.complex128))
        if d.size == 0:
            raise ValueError("derivs must hold at least the order-zero entry")
        object.__setattr__(self, "derivs", d)
        object.__setattr__(self, "omega", float(self.omega))

    @property
    def order(self) -> int:
        return len(self.derivs) - 1


def from_pairs(pairs: Iterable[tuple[int, complex]]) -> FiniteSequence:
    """Build a sequence from (index, value) pairs; unlisted indices are zero."""
    items = sorted((int(t), complex(v)) for t, v in pairs)
    if not items:
        return FiniteSequence()
    lo = items[0][0]
    hi = items[-1][0]
    vals = np.zeros(hi - lo + 1, dtype=np.complex128)
    for t, v in items:
        vals[t - lo] = v
    return FiniteSequence(lo, vals)


_NORM_ALIASES: dict[object, float] = {
    1: 1.0,
    2: 2.0,
    np.inf: np.inf,
    "1": 1.0,
    "2": 2.0,
    "inf": np.inf,
}


def normalize_norm_order(r: Union[int, float, str]) -> float:
    """Map the accepted spellings of a norm order onto {1.0, 2.0, inf}."""
    try:
        return _NORM_ALIASES[r]
    except (KeyError, TypeError):
        raise ValueError(f"norm order must be one of 1, 2, inf (got {r!r})") from None


def norm(x: FiniteSequence, r: Union[int, float, str]) -> float:
    """Sequence norm over the stored support for r in {1, 2, inf}."""
    r = normalize_norm_order(r)
    if x.is_empty:
        return 0.0
    mags = np.abs(x.values)
    if r == 1.0:
        return float(mags.sum())
    if r == 2.0:
        return float(np.sqrt(np.sum(mags * mags)))
    return float(mags.max())


def weighted_moment(x: FiniteSequence, m: int) -> float:
    """Sum of |t|^m |x(t)| over the stored support."""
    if m < 0:
        raise ValueError("moment order must be non-negative")
    if x.is_empty:
        return 0.0
    return float(np.sum(np.abs(x.indices) ** m * np.abs(x.values)))


def z_derivatives(
    x: FiniteSequence,
    omega: float,
    m: int,
    exclude: GapSpec | None = None,
) -> SpectralProbe:
    """Evaluate sum_t (-it)^p e^{-i omega t} x(t) for p = 0..m.

    Entry p is the p-th omega-derivative of the transform on the unit
    circle.  Indices inside ``exclude`` are skipped, which is how solvers
    restrict the sum to the observed trace.  The power (-it)^p is built by
    repeated multiplication per term.
    """
    if m < 0:
        raise ValueError("derivative order must be non-negative")
    derivs = np.zeros(m + 1, dtype=np.complex128)
    idx = x.indices
    vals = x.values
    if exclude is not None and not x.is_empty:
        keep = (idx < exclude.s) | (idx > exclude.s + exclude.m)
        idx = idx[keep]
        vals = vals[keep]
    if idx.size:
        term = np.exp(-1j * float(omega) * idx) * vals
        base = -1j * idx
        derivs[0] = term.sum()
        for p in range(1, m + 1):
            term = term * base
            derivs[p] = term.sum()
    return SpectralProbe(omega=float(omega), derivs=derivs)


def _merged_window(x: FiniteSequence, y: FiniteSequence) -> tuple[int, np.ndarray, np.ndarray]:
    lo = min(x.start, y.start)
    hi = max(x.end, y.end)
    xv = np.zeros(hi - lo + 1, dtype=np.complex128)
    yv = np.zeros(hi - lo + 1, dtype=np.complex128)
    xv[x.start - lo : x.start - lo + len(x)] = x.values
    yv[y.start - lo : y.start - lo + len(y)] = y.values
    return lo, xv, yv


def add(x: FiniteSequence, y: FiniteSequence) -> FiniteSequence:
    """Pointwise sum on the union of the two windows."""
    if x.is_empty:
        return y
    if y.is_empty:
        return x
    lo, xv, yv = _merged_window(x, y)
    return FiniteSequence(lo, xv + yv)


def subtract(x: FiniteSequence, y: FiniteSequence) -> FiniteSequence:
    return add(x, scale(y, -1.0))


def scale(x: FiniteSequence, c: complex) -> FiniteSequence:
    if x.is_empty:
        return x
    return FiniteSequence(x.start, x.values * complex(c))


def overlay_gap(
    x: FiniteSequence, gap: GapSpec, fill: Iterable[complex]
) -> FiniteSequence:
    """Return x with the gap samples overwritten by ``fill``.

    The window grows as needed so every gap index is stored.
    """
    fill_arr = np.atleast_1d(np.asarray(list(fill), dtype=np.complex128))
    if fill_arr.size != gap.m + 1:
        raise ValueError(f"fill must supply {gap.m + 1} values, got {fill_arr.size}")
    if not np.all(np.isfinite(fill_arr)):
        raise ValueError("fill values must be finite")
    if x.is_empty:
        return FiniteSequence(gap.s, fill_arr)
    lo = min(x.start, gap.s)
    hi = max(x.end, gap.s + gap.m)
    vals = np.zeros(hi - lo + 1, dtype=np.complex128)
    vals[x.start - lo : x.start - lo + len(x)] = x.values
    vals[gap.s - lo : gap.s - lo + gap.m + 1] = fill_arr
    return FiniteSequence(lo, vals)


def clear_gap(x: FiniteSequence, gap: GapSpec) -> FiniteSequence:
    """Zero out the gap samples (stored zeros if the window covers them)."""
    if x.is_empty:
        return x
    out = x.values.copy()
    idx = x.indices
    out[(idx >= gap.s) & (idx <= gap.s + gap.m)] = 0.0
    return FiniteSequence(x.start, out)


# --- CSV interchange -----------------------------------------------------
#
# Format: header ``t,re,im``, one row per stored sample, indices strictly
# increasing.  Missing indices inside the covered range read back as zeros.
# Values are written with 17 significant digits, which round-trips IEEE
# doubles exactly.

_CSV_HEADER = ["t", "re", "im"]


def write_sequence_csv(x: FiniteSequence, path: Union[str, Path]) -> None:
    with open(path, "w", newline="", encoding="utf-8") as fh:
        w = csv.writer(fh)
        w.writerow(_CSV_HEADER)
        for t, v in zip(x.indices, x.values):
            w.writerow([int(t), format(v.real, ".17g"), format(v.imag, ".17g")])


def read_sequence_csv(path: Union[str, Path]) -> FiniteSequence:
    """Parse a sequence CSV; malformed content reports the offending row."""
    pairs: list[tuple[int, complex]] = []
    with open(path, "r", newline="", encoding="utf-8") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None:
            return FiniteSequence()
        if [c.strip().lower() for c in header] != _CSV_HEADER:
            raise ValueError(f"row 1: expected header 't,re,im', got {','.join(header)}")
        prev_t: int | None = None
        for lineno, row in enumerate(reader, start=2):
            if not row or (len(row) == 1 and not row[0].strip()):
                continue
            if len(row) != 3:
                raise ValueError(f"row {lineno}: expected 3 fields, got {len(row)}")
            try:
                t = int(row[0])
                re = float(row[1])
                im = float(row[2])
            except ValueError as exc:
                raise ValueError(f"row {lineno}: {exc}") from None
            if not (np.isfinite(re) and np.isfinite(im)):
                raise ValueError(f"row {lineno}: sample must be finite")
            if prev_t is not None and t <= prev_t:
                raise ValueError(f"row {lineno}: indices must be strictly increasing")
            prev_t = t
            pairs.append((t, complex(re, im)))
    return from_pairs(pairs)
