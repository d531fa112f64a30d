import io
import json

import numpy as np
import pytest

from gapfill import EmptyInput, ExperimentConfig, GapSpec, MethodSpec
from gapfill.harness import (
    config_from_dict,
    format_angle,
    load_config,
    parse_angle,
    run_experiment,
    summarize,
    write_records_csv,
    write_summary_json,
)

FIG1_DICT = {
    "generator": "bl",
    "cutoff_true": "0.1pi",
    "gap": {"s": 0, "m": 0},
    "methods": [
        {"kind": "bl-single", "cutoff": "0.1pi"},
        {"kind": "bl-single", "cutoff": "0.05pi"},
        {"kind": "deg-single", "omega0": "pi"},
    ],
    "q": 50,
    "n_obs": 100,
    "noise_level": 0.0,
    "trials": 10,
    "seed": 20260810,
}


def small_config(**overrides):
    data = dict(FIG1_DICT)
    data.update(overrides)
    return config_from_dict(data)


# --- angles ----------------------------------------------------------------


def test_parse_angle_forms():
    assert parse_angle("0.1pi") == pytest.approx(0.1 * np.pi)
    assert parse_angle("pi") == pytest.approx(np.pi)
    assert parse_angle("PI/2") == pytest.approx(np.pi / 2)
    assert parse_angle("-0.5pi") == pytest.approx(-0.5 * np.pi)
    assert parse_angle("1.57") == pytest.approx(1.57)
    assert parse_angle(2.0) == 2.0
    assert parse_angle(1) == 1.0
    with pytest.raises(ValueError):
        parse_angle("two pi")


def test_format_angle_round_trip():
    assert parse_angle(format_angle(0.1 * np.pi)) == pytest.approx(0.1 * np.pi)


# --- configuration ----------------------------------------------------------


def test_method_spec_validation():
    with pytest.raises(ValueError):
        MethodSpec("bl-single", np.pi)  # cutoff out of range
    with pytest.raises(ValueError):
        MethodSpec("deg-single", 4.0)  # probe out of range
    with pytest.raises(ValueError):
        MethodSpec("nearest-neighbor", 1.0)
    assert MethodSpec("bl-solve", 0.3).label == format_angle(0.3).join(["bl-solve(", ")"])


def test_config_validation():
    with pytest.raises(ValueError):
        small_config(generator="white")
    with pytest.raises(ValueError):
        small_config(trials=0)
    with pytest.raises(ValueError):
        small_config(generator="noisy-bl")  # needs noise_level > 0
    with pytest.raises(ValueError):
        small_config(gap={"s": 0, "m": 1})  # single methods need m == 0
    with pytest.raises(ValueError):
        config_from_dict(
            {
                "generator": "ell1",
                "gap": {"s": 0, "m": 4},
                "methods": [{"kind": "deg-solve", "omega0": "pi"}],
                "n_obs": 8,  # below 2m + 2
            }
        )
    with pytest.raises(ValueError):
        config_from_dict({"generator": "bl"})  # methods missing


def test_config_file_round_trip(tmp_path):
    path = tmp_path / "cfg.json"
    path.write_text(json.dumps(FIG1_DICT))
    cfg = load_config(path)
    assert cfg.generator == "bl"
    assert cfg.gap == GapSpec(0, 0)
    assert cfg.methods[0].param == pytest.approx(0.1 * np.pi)
    assert cfg.obs_window == range(-50, 50)
    with pytest.raises(ValueError):
        bad = tmp_path / "bad.json"
        bad.write_text("{not json")
        load_config(bad)


# --- execution ---------------------------------------------------------------


def test_run_is_deterministic():
    cfg = small_config(trials=6)
    recs1 = run_experiment(cfg)
    recs2 = run_experiment(cfg)
    buf1, buf2 = io.StringIO(), io.StringIO()
    write_records_csv(recs1, buf1)
    write_records_csv(recs2, buf2)
    assert buf1.getvalue() == buf2.getvalue()
    s1, s2 = io.StringIO(), io.StringIO()
    write_summary_json(cfg, summarize(recs1), s1)
    write_summary_json(cfg, summarize(recs2), s2)
    assert s1.getvalue() == s2.getvalue()


def test_record_structure_and_csv_shape():
    cfg = small_config(trials=5)
    records = run_experiment(cfg)
    assert len(records) == 5
    for rec in records:
        assert len(rec.outcomes) == 3
        for oc in rec.outcomes:
            assert oc.recovered is not None
            assert oc.err_abs >= 0.0
            assert oc.holds
    buf = io.StringIO()
    write_records_csv(records, buf)
    lines = buf.getvalue().strip().splitlines()
    assert lines[0] == "trial,method,param,err_abs,bound,holds"
    assert len(lines) == 1 + 5 * 3


def test_summary_counts_and_empty_input():
    cfg = small_config(trials=4)
    summary = summarize(run_experiment(cfg))
    assert set(summary) == {
        "bl-single(0.1pi)",
        "bl-single(0.05pi)",
        "deg-single(1pi)",
    }
    for stats in summary.values():
        assert stats["trials"] == 4
        assert stats["failures"] == 0
        assert stats["bound_violations"] == 0
        assert stats["max_err"] >= stats["median_err"] >= 0.0
    with pytest.raises(EmptyInput):
        summarize([])


def test_degenerate_generator_is_exactly_recoverable():
    cfg = config_from_dict(
        {
            "generator": "degenerate",
            "gap": {"s": 0, "m": 2},
            "methods": [{"kind": "deg-solve", "omega0": "pi"}],
            "q": 50,
            "n_obs": 101,  # window covers the whole synthesis support
            "trials": 1,
            "seed": 5,
        }
    )
    records = run_experiment(cfg)
    assert records[0].outcomes[0].err_abs <= 1e-10


def test_single_record_summary_degenerates():
    cfg = small_config(trials=1)
    summary = summarize(run_experiment(cfg))
    for stats in summary.values():
        assert stats["mean_err"] == stats["median_err"] == stats["max_err"]


def test_qualitative_orderings_small():
    # correct cutoff beats the probe method, which beats a too-small cutoff
    cfg = small_config(trials=20)
    summary = summarize(run_experiment(cfg))
    right = summary["bl-single(0.1pi)"]["mean_err"]
    small = summary["bl-single(0.05pi)"]["mean_err"]
    probe = summary["deg-single(1pi)"]["mean_err"]
    assert right < probe < small

    noisy = summarize(
        run_experiment(small_config(generator="noisy-bl", noise_level=0.05, trials=20))
    )
    assert noisy["bl-single(0.1pi)"]["mean_err"] < noisy["deg-single(1pi)"]["mean_err"]


def test_mean_error_shrinks_with_synthesis_radius():
    # wider truncation means more observed members for the weighted sums
    means = []
    for q in (25, 50, 100):
        cfg = config_from_dict(
            {
                "generator": "bl",
                "cutoff_true": "0.1pi",
                "gap": {"s": 0, "m": 0},
                "methods": [{"kind": "bl-single", "cutoff": "0.1pi"}],
                "q": q,
                "n_obs": 2 * q + 1,
                "trials": 30,
                "seed": 77,
            }
        )
        means.append(summarize(run_experiment(cfg))["bl-single(0.1pi)"]["mean_err"])
    assert means[0] > means[1] > means[2]


def test_summarize_trivial_records():
    from gapfill.harness import MethodOutcome, TrialRecord

    ms = MethodSpec("deg-single", np.pi)
    rec = np.zeros(1, complex)
    records = [
        TrialRecord(
            trial=i,
            truth=rec,
            outcomes=(
                MethodOutcome(method=ms, recovered=rec, err_abs=0.0, bound=1.0, holds=i != 2),
            ),
        )
        for i in range(3)
    ]
    stats = summarize(records)["deg-single(1pi)"]
    assert stats["mean_err"] == stats["median_err"] == stats["max_err"] == 0.0
    # the violation counter ticks exactly when a bound check failed
    assert stats["bound_violations"] == 1


def test_solver_failures_are_recorded_not_raised():
    # a block of 17 samples makes the constraint system lose rank at
    # working precision; the harness must log it per trial and keep going
    cfg = config_from_dict(
        {
            "generator": "ell1",
            "gap": {"s": 0, "m": 16},
            "methods": [{"kind": "deg-solve", "omega0": "pi"}],
            "q": 50,
            "n_obs": 100,
            "trials": 2,
            "seed": 1,
        }
    )
    records = run_experiment(cfg)
    outcomes = [oc for rec in records for oc in rec.outcomes]
    assert all(oc.recovered is None and oc.note for oc in outcomes)
    stats = summarize(records)["deg-solve(1pi)"]
    assert stats["failures"] == 2
    assert stats["mean_err"] is None
