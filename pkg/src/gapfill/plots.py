"""Report figures for experiment runs, rendered straight to image files."""

from __future__ import annotations

import re
from pathlib import Path
from typing import Union

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

from .errors import EmptyInput
from .harness import TrialRecord

__all__ = ["render_experiment_figures"]

_RC = {
    "figure.figsize": (7.2, 4.2),
    "figure.dpi": 130,
    "axes.grid": True,
    "grid.alpha": 0.35,
    "axes.axisbelow": True,
    "font.size": 10,
    "legend.fontsize": 9,
}


def _slug(label: str) -> str:
    return re.sub(r"[^A-Za-z0-9.]+", "-", label).strip("-")


def _by_method(records: list[TrialRecord]) -> dict[str, list]:
    table: dict[str, list] = {}
    for record in records:
        for outcome in record.outcomes:
            table.setdefault(outcome.method.label, []).append(outcome)
    return table


def render_experiment_figures(
    records: list[TrialRecord],
    out_dir: Union[str, Path],
    prefix: str = "experiment",
) -> list[Path]:
    """Write one error-comparison figure plus one truth-vs-recovered figure
    per method; returns the created file paths."""
    if not records:
        raise EmptyInput("no trial records to plot")
    out_dir = Path(out_dir)
    out_dir.mkdir(parents=True, exist_ok=True)
    trials = [record.trial for record in records]
    table = _by_method(records)
    written: list[Path] = []

    with plt.rc_context(_RC):
        fig, ax = plt.subplots()
        for label, outcomes in table.items():
            errs = [oc.err_abs if oc.recovered is not None else np.nan for oc in outcomes]
            ax.semilogy(trials, errs, marker="o", markersize=3.5, linewidth=0.8, label=label)
        ax.set_xlabel("trial")
        ax.set_ylabel("absolute recovery error")
        ax.set_title("per-trial recovery error by method")
        ax.legend()
        fig.tight_layout()
        path = out_dir / f"{prefix}_errors.png"
        fig.savefig(path)
        plt.close(fig)
        written.append(path)

        truth_first = [record.truth[0].real for record in records]
        for label, outcomes in table.items():
            fig, ax = plt.subplots()
            rec_first = [
                oc.recovered[0].real if oc.recovered is not None else np.nan
                for oc in outcomes
            ]
            ax.plot(trials, truth_first, linewidth=1.0, color="0.35", label="true value")
            ax.plot(
                trials,
                rec_first,
                marker="x",
                markersize=4.5,
                linestyle="none",
                color="C3",
                label="recovered",
            )
            ax.set_xlabel("trial")
            ax.set_ylabel("Re x(s)")
            ax.set_title(f"recovered first gap sample: {label}")
            ax.legend()
            fig.tight_layout()
            path = out_dir / f"{prefix}_recovered_{_slug(label)}.png"
            fig.savefig(path)
            plt.close(fig)
            written.append(path)
    return written
