"""Command-line front end: recovery, generation, experiments, and norm reports.

Exit codes: 0 success, 1 usage/input error, 2 numeric failure.
Angles are accepted as pi-multiples ('0.1pi', 'pi', 'pi/2') or raw radians.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import sys
from pathlib import Path

import numpy as np

from .bandlimited import recover_bl
from .degenerate import constraint_matrix, recover_deg
from .errors import (
    DimensionTooLarge,
    EmptyInput,
    InvalidGap,
    MissingGroundTruth,
    ScenarioMismatch,
    SingularSystem,
)
from .generators import make_degenerate, random_atoms, synth_bandlimited, synth_ell1
from .harness import (
    format_angle,
    load_config,
    parse_angle,
    run_experiment,
    summarize,
    write_records_csv,
    write_summary_json,
)
from .lowpass import Kernel, gap_matrix
from .opnorms import inf_input_upper, op_norm
from .sequences import FiniteSequence, GapSpec, read_sequence_csv, write_sequence_csv

DEFAULT_SEED = 0

_NORM_NAMES = ("1", "2", "inf")


class _UsageError(Exception):
    pass


class _Parser(argparse.ArgumentParser):
    def error(self, message):  # argparse default exits with code 2
        raise _UsageError(message)


def _angle(text: str) -> float:
    try:
        return parse_angle(text)
    except ValueError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


def _emit(text: str, out: str | None) -> None:
    if out:
        Path(out).write_text(text, encoding="utf-8")
    else:
        sys.stdout.write(text)


def _complex_rows(start: int, values: np.ndarray) -> list[dict]:
    return [
        {"t": start + k, "re": float(v.real), "im": float(v.imag)}
        for k, v in enumerate(values)
    ]


def _rows_as_csv(rows: list[dict]) -> str:
    lines = ["t,re,im"]
    for row in rows:
        lines.append(
            f"{row['t']},{format(row['re'], '.17g')},{format(row['im'], '.17g')}"
        )
    return "\n".join(lines) + "\n"


def _cmd_recover_bl(args) -> int:
    x = read_sequence_csv(args.infile)
    gap = GapSpec(args.gap, args.m)
    result = recover_bl(x, gap, Kernel(args.cutoff))
    rows = _complex_rows(gap.s, result.recovered)
    if args.format == "csv":
        _emit(_rows_as_csv(rows), args.out)
    else:
        doc = {
            "scheme": "bl",
            "gap": {"s": gap.s, "m": gap.m},
            "cutoff": args.cutoff,
            "recovered": rows,
            "condition_estimate": result.condition_estimate,
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def _cmd_recover_deg(args) -> int:
    x = read_sequence_csv(args.infile)
    gap = GapSpec(args.gap, args.m)
    result = recover_deg(x, gap, args.omega0)
    rows = _complex_rows(gap.s, result.recovered)
    if args.format == "csv":
        _emit(_rows_as_csv(rows), args.out)
    else:
        doc = {
            "scheme": "deg",
            "gap": {"s": gap.s, "m": gap.m},
            "omega0": args.omega0,
            "recovered": rows,
            "condition_estimate": result.condition_estimate,
            "residual_probe_max": float(np.abs(result.residual_probe.derivs).max()),
        }
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    return 0


def _cmd_generate(args) -> int:
    window = range(-args.radius, args.radius + 1)
    if args.kind == "bl":
        spec = random_atoms(
            args.cutoff,
            n_atoms=args.atoms,
            center_span=args.center_span if args.center_span is not None else args.radius / 2,
            seed=args.seed,
            real_weights=args.real,
        )
        seq = synth_bandlimited(spec, window)
    elif args.kind == "ell1":
        seq = synth_ell1(args.radius, args.seed, decay=args.decay, real_values=args.real)
    else:  # degenerate
        base = synth_ell1(args.radius, args.seed, decay=args.decay, real_values=args.real)
        seq = make_degenerate(base, GapSpec(args.gap, args.m), args.omega0)
    if args.out:
        write_sequence_csv(seq, args.out)
    else:
        rows = _complex_rows(seq.start, seq.values)
        sys.stdout.write(_rows_as_csv(rows))
    return 0


def _cmd_experiment(args) -> int:
    cfg = load_config(args.config)
    if args.seed is not None:
        cfg = dataclasses.replace(cfg, seed=args.seed)
    records = run_experiment(cfg)
    if args.out:
        write_records_csv(records, args.out)
    else:
        write_records_csv(records, sys.stdout)
    summary = summarize(records)
    if args.summary:
        write_summary_json(cfg, summary, args.summary)
    for label, stats in summary.items():
        if stats["mean_err"] is None:
            print(f"{label}: all {stats['failures']} trials failed", file=sys.stderr)
        else:
            print(
                f"{label}: mean_err={stats['mean_err']:.6g} max_err={stats['max_err']:.6g} "
                f"violations={stats['bound_violations']}",
                file=sys.stderr,
            )
    plot_dir = None
    if not args.no_plots:
        if args.plot_dir:
            plot_dir = Path(args.plot_dir)
        elif args.out:
            plot_dir = Path(args.out).resolve().parent
    if plot_dir is not None:
        from .plots import render_experiment_figures

        for path in render_experiment_figures(records, plot_dir):
            print(f"wrote figure {path}", file=sys.stderr)
    return 0


def _cmd_bounds(args) -> int:
    gap = GapSpec(0, args.m)
    if args.scheme == "bl":
        if args.cutoff is None:
            raise _UsageError("--cutoff is required for --scheme bl")
        M = np.eye(args.m + 1) - gap_matrix(Kernel(args.cutoff), args.m).entries
        matrix_id = f"bl-gap-inverse(cutoff={format_angle(args.cutoff)};m={args.m})"
    else:
        omega0 = args.omega0 if args.omega0 is not None else np.pi
        M = constraint_matrix(omega0, gap).entries
        matrix_id = f"deg-constraint-inverse(omega0={format_angle(omega0)};m={args.m})"
    inv = np.linalg.inv(M)

    froms = [args.from_norm] if args.from_norm else list(_NORM_NAMES)
    tos = [args.to_norm] if args.to_norm else list(_NORM_NAMES)
    reports = []
    for r1 in froms:
        for r2 in tos:
            rep = op_norm(inv, r1, r2, matrix_id=matrix_id)
            upper = inf_input_upper(inv, r2) if rep.from_norm == np.inf else None
            reports.append((rep, upper))

    def name(r: float) -> str:
        return "inf" if r == np.inf else str(int(r))

    if args.format == "json":
        doc = [
            {
                "matrix": rep.matrix_id,
                "from": name(rep.from_norm),
                "to": name(rep.to_norm),
                "value": rep.value,
                "method": rep.method,
                "upper_bound": upper,
            }
            for rep, upper in reports
        ]
        _emit(json.dumps(doc, indent=2) + "\n", args.out)
    else:
        lines = ["matrix,from,to,value,method,upper_bound"]
        for rep, upper in reports:
            up = "" if upper is None else format(upper, ".17g")
            lines.append(
                f"{rep.matrix_id},{name(rep.from_norm)},{name(rep.to_norm)},"
                f"{format(rep.value, '.17g')},{rep.method},{up}"
            )
        _emit("\n".join(lines) + "\n", args.out)
    return 0


def _build_parser() -> _Parser:
    parser = _Parser(prog="gapfill", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("recover-bl", help="recover a gap block by band-limited smoothing")
    p.add_argument("--in", dest="infile", required=True, help="input sequence CSV (t,re,im)")
    p.add_argument("--gap", type=int, required=True, help="first missing index s")
    p.add_argument("--m", type=int, default=0, help="gap order (block length m+1)")
    p.add_argument("--cutoff", type=_angle, required=True, help="low-pass cutoff in (0, pi)")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_recover_bl)

    p = sub.add_parser("recover-deg", help="recover a gap block by transform degeneracy")
    p.add_argument("--in", dest="infile", required=True, help="input sequence CSV (t,re,im)")
    p.add_argument("--gap", type=int, required=True, help="first missing index s")
    p.add_argument("--m", type=int, default=0, help="gap order (block length m+1)")
    p.add_argument("--omega0", type=_angle, default=np.pi, help="probe frequency in (-pi, pi]")
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("json", "csv"), default="json")
    p.set_defaults(func=_cmd_recover_deg)

    p = sub.add_parser("generate", help="synthesize a test sequence CSV")
    p.add_argument("--kind", choices=("bl", "ell1", "degenerate"), required=True)
    p.add_argument("--radius", type=int, default=200, help="window half-width")
    p.add_argument("--cutoff", type=_angle, default=0.1 * np.pi, help="band for --kind bl")
    p.add_argument("--atoms", type=int, default=8, help="atom count for --kind bl")
    p.add_argument("--center-span", type=float, default=None, help="atom center range")
    p.add_argument("--gap", type=int, default=0, help="gap start for --kind degenerate")
    p.add_argument("--m", type=int, default=0, help="gap order for --kind degenerate")
    p.add_argument("--omega0", type=_angle, default=np.pi, help="probe for --kind degenerate")
    p.add_argument("--decay", type=float, default=2.0, help="envelope exponent for ell1 paths")
    p.add_argument("--real", action="store_true", help="real-valued output")
    p.add_argument("--seed", type=int, default=DEFAULT_SEED)
    p.add_argument("--out", help="output CSV (default: stdout)")
    p.set_defaults(func=_cmd_generate)

    p = sub.add_parser("experiment", help="run a seeded method-comparison experiment")
    p.add_argument("--config", required=True, help="experiment JSON config")
    p.add_argument("--out", help="per-trial CSV output (default: stdout)")
    p.add_argument("--summary", help="JSON summary output path")
    p.add_argument("--seed", type=int, default=None, help="override the config seed")
    p.add_argument("--plot-dir", help="directory for report figures")
    p.add_argument(
        "--no-plots",
        action="store_true",
        help="skip figure rendering (default renders next to --out)",
    )
    p.set_defaults(func=_cmd_experiment)

    p = sub.add_parser("bounds", help="operator-norm reports for a recovery map")
    p.add_argument("--scheme", choices=("bl", "deg"), required=True)
    p.add_argument("--m", type=int, default=0)
    p.add_argument("--cutoff", type=_angle, default=None, help="cutoff for --scheme bl")
    p.add_argument("--omega0", type=_angle, default=None, help="probe for --scheme deg")
    p.add_argument("--from-norm", dest="from_norm", choices=_NORM_NAMES, default=None)
    p.add_argument("--to-norm", dest="to_norm", choices=_NORM_NAMES, default=None)
    p.add_argument("--out", help="output file (default: stdout)")
    p.add_argument("--format", choices=("csv", "json"), default="csv")
    p.set_defaults(func=_cmd_bounds)

    return parser


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
        return args.func(args)
    except _UsageError as exc:
        print(f"usage error: {exc}", file=sys.stderr)
        return 1
    except (SingularSystem, DimensionTooLarge) as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return 2
    except (
        ValueError,
        OSError,
        InvalidGap,
        ScenarioMismatch,
        MissingGroundTruth,
        EmptyInput,
    ) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1


if __name__ == "__main__":
    sys.exit(main())
