"""Seeded experiment runner comparing the recovery methods on synthetic paths.

A run draws independent random paths, deletes the gap block, applies each
configured method to the observed trace, and records per-trial errors
together with the applicable a-priori size bound.  Results are emitted as
delimited rows plus a JSON summary; everything is deterministic given the
configuration seed.
"""

from __future__ import annotations

import csv
import json
import re
from dataclasses import dataclass
from pathlib import Path
from typing import IO, Union

import numpy as np

from .bandlimited import recover_bl, recover_bl_single
from .degenerate import constraint_matrix, recover_deg, recover_deg_single
from .errors import EmptyInput, GapfillError
from .generators import gap_free_noise, make_degenerate, random_atoms, synth_bandlimited, synth_ell1
from .lowpass import Kernel, gap_matrix
from .opnorms import inf_input_upper, op_norm, vec_norm
from .sequences import FiniteSequence, GapSpec, add, clear_gap, norm, weighted_moment

__all__ = [
    "MethodSpec",
    "ExperimentConfig",
    "MethodOutcome",
    "TrialRecord",
    "parse_angle",
    "format_angle",
    "config_from_dict",
    "load_config",
    "run_experiment",
    "summarize",
    "write_records_csv",
    "write_summary_json",
]

BOUND_SLACK = 1e-9

_GENERATORS = ("bl", "noisy-bl", "ell1", "degenerate")
_BL_KINDS = ("bl-single", "bl-solve")
_DEG_KINDS = ("deg-single", "deg-solve")

_ANGLE_RE = re.compile(
    r"^\s*([+-]?(?:\d+\.?\d*|\.\d+)(?:[eE][+-]?\d+)?)?\s*pi\s*(?:/\s*(\d+\.?\d*))?\s*$",
    re.IGNORECASE,
)


def parse_angle(value) -> float:
    """Angle in radians from a number or a pi-multiple string like '0.1pi' or 'pi/2'."""
    if isinstance(value, (int, float)) and not isinstance(value, bool):
        return float(value)
    text = str(value)
    match = _ANGLE_RE.match(text)
    if match:
        coef = float(match.group(1)) if match.group(1) else 1.0
        div = float(match.group(2)) if match.group(2) else 1.0
        return coef * np.pi / div
    try:
        return float(text)
    except ValueError:
        raise ValueError(f"cannot parse angle {value!r}") from None


def format_angle(radians: float) -> str:
    return f"{radians / np.pi:g}pi"


@dataclass(frozen=True)
class MethodSpec:
    """One recovery method: kind plus its single numeric parameter.

    kinds: 'bl-single' / 'bl-solve' use the low-pass cutoff, 'deg-single' /
    'deg-solve' use the probe frequency.  The *-single kinds are the closed
    forms for a one-sample gap; the *-solve kinds run the full block system.
    """

    kind: str
    param: float

    def __post_init__(self) -> None:
        if self.kind not in _BL_KINDS + _DEG_KINDS:
            raise ValueError(f"unknown method kind {self.kind!r}")
        p = float(self.param)
        if self.kind in _BL_KINDS and not (0.0 < p < np.pi):
            raise ValueError(f"{self.kind}: cutoff must lie in (0, pi), got {p}")
        if self.kind in _DEG_KINDS and not (-np.pi < p <= np.pi):
            raise ValueError(f"{self.kind}: probe frequency must lie in (-pi, pi], got {p}")
        object.__setattr__(self, "param", p)

    @property
    def label(self) -> str:
        return f"{self.kind}({format_angle(self.param)})"


@dataclass(frozen=True)
class ExperimentConfig:
    """Full description of a seeded experiment.

    generator: 'bl' (band-limited atom mixtures), 'noisy-bl' (same plus
    observation noise at noise_level), 'ell1' (summable random paths, noisy
    when noise_level > 0), or 'degenerate' (ell1 paths with the gap block
    rewritten to degenerate at frequency pi, so a pi-probe method is exact
    when the observation window covers the whole path).  Paths are
    synthesized on |t| <= q and observed on a centered window of n_obs
    indices with the gap removed.
    """

    generator: str
    cutoff_true: float
    gap: GapSpec
    methods: tuple[MethodSpec, ...]
    q: int = 50
    n_obs: int = 100
    noise_level: float = 0.0
    trials: int = 50
    seed: int = 0

    def __post_init__(self) -> None:
        if self.generator not in _GENERATORS:
            raise ValueError(f"generator must be one of {_GENERATORS}, got {self.generator!r}")
        if self.generator in ("bl", "noisy-bl") and not (0.0 < self.cutoff_true < np.pi):
            raise ValueError("cutoff_true must lie in (0, pi) for band-limited generators")
        if self.generator == "noisy-bl" and self.noise_level <= 0.0:
            raise ValueError("the noisy-bl generator requires noise_level > 0")
        if self.noise_level < 0.0:
            raise ValueError("noise_level must be non-negative")
        if self.trials < 1:
            raise ValueError("trials must be at least 1")
        if self.q < 1:
            raise ValueError("truncation radius q must be at least 1")
        if self.n_obs < 2 * self.gap.m + 2:
            raise ValueError("n_obs must be at least 2m + 2")
        if not self.methods:
            raise ValueError("at least one method is required")
        for ms in self.methods:
            if ms.kind.endswith("-single") and self.gap.m != 0:
                raise ValueError(f"{ms.kind} handles only single-sample gaps (m=0)")
        self.gap.require_normalized()
        window = self.obs_window
        if self.gap.s < window.start or self.gap.s + self.gap.m >= window.stop:
            raise ValueError("the gap block must lie inside the observation window")
        if self.gap.s < -self.q or self.gap.s + self.gap.m > self.q:
            raise ValueError("the gap block must lie inside the synthesis window |t| <= q")

    @property
    def obs_window(self) -> range:
        lo = -(self.n_obs // 2)
        return range(lo, lo + self.n_obs)


@dataclass(frozen=True)
class MethodOutcome:
    """Per-trial result of one method: recovered block, error, size bound."""

    method: MethodSpec
    recovered: np.ndarray | None
    err_abs: float
    bound: float
    holds: bool
    note: str = ""


@dataclass(frozen=True)
class TrialRecord:
    trial: int
    truth: np.ndarray
    outcomes: tuple[MethodOutcome, ...]


def config_from_dict(data: dict) -> ExperimentConfig:
    """Build a config from the JSON document schema (see README)."""
    try:
        generator = data["generator"]
        methods = []
        for entry in data["methods"]:
            kind = entry["kind"]
            if "param" in entry:
                raw = entry["param"]
            elif kind in _BL_KINDS:
                raw = entry["cutoff"]
            else:
                raw = entry["omega0"]
            methods.append(MethodSpec(kind=kind, param=parse_angle(raw)))
        gap_d = data.get("gap", {"s": 0, "m": 0})
        return ExperimentConfig(
            generator=generator,
            cutoff_true=parse_angle(data.get("cutoff_true", 0.1 * np.pi)),
            gap=GapSpec(int(gap_d.get("s", 0)), int(gap_d.get("m", 0))),
            methods=tuple(methods),
            q=int(data.get("q", 50)),
            n_obs=int(data.get("n_obs", 100)),
            noise_level=float(data.get("noise_level", 0.0)),
            trials=int(data.get("trials", 50)),
            seed=int(data.get("seed", 0)),
        )
    except KeyError as exc:
        raise ValueError(f"experiment config is missing key {exc}") from None


def load_config(path: Union[str, Path]) -> ExperimentConfig:
    with open(path, "r", encoding="utf-8") as fh:
        try:
            data = json.load(fh)
        except json.JSONDecodeError as exc:
            raise ValueError(f"{path}: {exc}") from None
    return config_from_dict(data)


def config_as_dict(cfg: ExperimentConfig) -> dict:
    return {
        "generator": cfg.generator,
        "cutoff_true": cfg.cutoff_true,
        "gap": {"s": cfg.gap.s, "m": cfg.gap.m},
        "methods": [{"kind": ms.kind, "param": ms.param} for ms in cfg.methods],
        "q": cfg.q,
        "n_obs": cfg.n_obs,
        "noise_level": cfg.noise_level,
        "trials": cfg.trials,
        "seed": cfg.seed,
    }


def _generate_truth(cfg: ExperimentConfig, rng: np.random.Generator) -> FiniteSequence:
    window = range(-cfg.q, cfg.q + 1)
    if cfg.generator in ("bl", "noisy-bl"):
        spec = random_atoms(cfg.cutoff_true, n_atoms=8, center_span=cfg.q / 2, seed=rng)
        return synth_bandlimited(spec, window)
    path = synth_ell1(cfg.q, rng)
    if cfg.generator == "degenerate":
        path = make_degenerate(path, cfg.gap, np.pi)
    return path


def _observe(cfg: ExperimentConfig, truth: FiniteSequence, rng: np.random.Generator) -> FiniteSequence:
    window = cfg.obs_window
    lo = max(window.start, truth.start)
    hi = min(window.stop - 1, truth.end)
    observed = FiniteSequence(lo, truth.values[lo - truth.start : hi - truth.start + 1])
    observed = clear_gap(observed, cfg.gap)
    noisy = cfg.generator == "noisy-bl" or (
        cfg.generator in ("ell1", "degenerate") and cfg.noise_level > 0
    )
    if noisy:
        observed = add(observed, gap_free_noise(observed, cfg.gap, cfg.noise_level, rng))
    return observed


def _size_bound(ms: MethodSpec, observed: FiniteSequence, gap: GapSpec) -> float:
    """A-priori bound on the max-norm of the recovered block."""
    if ms.kind in _BL_KINDS:
        M = np.eye(gap.m + 1) - gap_matrix(Kernel(ms.param), gap.m).entries
        gain = op_norm(np.linalg.inv(M), 2, np.inf, matrix_id="bl-gap-inverse").value
        return gain * norm(observed, 2)
    B = constraint_matrix(ms.param, gap).entries
    return inf_input_upper(np.linalg.inv(B), np.inf) * weighted_moment(observed, gap.m)


def _apply_method(
    ms: MethodSpec, observed: FiniteSequence, gap: GapSpec, truth_gap: np.ndarray
) -> MethodOutcome:
    try:
        if ms.kind == "bl-single":
            rec = np.array([recover_bl_single(observed, gap.s, Kernel(ms.param))])
        elif ms.kind == "bl-solve":
            rec = recover_bl(observed, gap, Kernel(ms.param)).recovered
        elif ms.kind == "deg-single":
            rec = np.array([recover_deg_single(observed, gap.s, ms.param)])
        else:
            rec = recover_deg(observed, gap, ms.param).recovered
        bound = _size_bound(ms, observed, gap)
    except GapfillError as exc:
        return MethodOutcome(
            method=ms,
            recovered=None,
            err_abs=float("nan"),
            bound=float("nan"),
            holds=False,
            note=str(exc),
        )
    err = float(np.max(np.abs(rec - truth_gap)))
    holds = vec_norm(rec, np.inf) <= bound * (1.0 + BOUND_SLACK)
    return MethodOutcome(method=ms, recovered=rec, err_abs=err, bound=bound, holds=holds)


def run_experiment(cfg: ExperimentConfig) -> list[TrialRecord]:
    """Run all trials; solver failures are recorded per trial, never fatal."""
    records: list[TrialRecord] = []
    for trial, child in enumerate(np.random.SeedSequence(cfg.seed).spawn(cfg.trials)):
        rng = np.random.default_rng(child)
        truth = _generate_truth(cfg, rng)
        truth_gap = np.array([truth.at(t) for t in cfg.gap.indices])
        observed = _observe(cfg, truth, rng)
        outcomes = tuple(
            _apply_method(ms, observed, cfg.gap, truth_gap) for ms in cfg.methods
        )
        records.append(TrialRecord(trial=trial, truth=truth_gap, outcomes=outcomes))
    return records


def summarize(records: list[TrialRecord]) -> dict:
    """Per-method error statistics and bound-violation counts (JSON-ready)."""
    if not records:
        raise EmptyInput("no trial records to summarize")
    by_method: dict[str, list[MethodOutcome]] = {}
    for record in records:
        for outcome in record.outcomes:
            by_method.setdefault(outcome.method.label, []).append(outcome)
    summary: dict[str, dict] = {}
    for label, outcomes in by_method.items():
        errs = [oc.err_abs for oc in outcomes if oc.recovered is not None]
        summary[label] = {
            "trials": len(outcomes),
            "failures": sum(1 for oc in outcomes if oc.recovered is None),
            "mean_err": float(np.mean(errs)) if errs else None,
            "median_err": float(np.median(errs)) if errs else None,
            "max_err": float(np.max(errs)) if errs else None,
            "bound_violations": sum(
                1 for oc in outcomes if oc.recovered is not None and not oc.holds
            ),
        }
    return summary


def _fmt(value: float) -> str:
    return format(value, ".17g")


def write_records_csv(records: list[TrialRecord], dest: Union[str, Path, IO[str]]) -> None:
    """One row per trial per method: trial,method,param,err_abs,bound,holds."""
    own = not hasattr(dest, "write")
    fh = open(dest, "w", newline="", encoding="utf-8") if own else dest
    try:
        w = csv.writer(fh)
        w.writerow(["trial", "method", "param", "err_abs", "bound", "holds"])
        for record in records:
            for oc in record.outcomes:
                w.writerow(
                    [
                        record.trial,
                        oc.method.kind,
                        _fmt(oc.method.param),
                        _fmt(oc.err_abs),
                        _fmt(oc.bound),
                        "true" if oc.holds else "false",
                    ]
                )
    finally:
        if own:
            fh.close()


def write_summary_json(
    cfg: ExperimentConfig, summary: dict, dest: Union[str, Path, IO[str]]
) -> None:
    doc = {"config": config_as_dict(cfg), "methods": summary}
    own = not hasattr(dest, "write")
    fh = open(dest, "w", encoding="utf-8") if own else dest
    try:
        json.dump(doc, fh, indent=2)
        fh.write("\n")
    finally:
        if own:
            fh.close()
