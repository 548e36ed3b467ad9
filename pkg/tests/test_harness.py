from __future__ import annotations

import json

import pytest

from mdkpvqe.estimators import EstimatorConfig, EstimatorKind
from mdkpvqe.harness import (
    HarnessError,
    bench,
    csv_trial_rows,
    optimality_gap,
    reports_to_csv,
    reports_to_json,
    summary_stats,
)
from mdkpvqe.instances import bundled_instance
from mdkpvqe.vqe import VqeConfig


class TestOptimalityGap:
    def test_exact(self):
        assert optimality_gap(4, 4) == 0.0

    def test_empty_solution(self):
        assert optimality_gap(0, 4) == 1.0

    def test_partial(self):
        assert optimality_gap(3, 4) == 0.25

    def test_nonpositive_truth(self):
        with pytest.raises(HarnessError):
            optimality_gap(1, 0)

    def test_better_than_oracle_is_hard_error(self):
        with pytest.raises(HarnessError, match="oracle"):
            optimality_gap(5, 4)


class TestStats:
    def test_median_interpolation(self):
        stats = summary_stats([1.0, 2.0, 3.0, 4.0])
        assert stats.median == 2.5
        assert stats.mean == 2.5
        assert stats.min == 1.0
        assert stats.max == 4.0
        assert stats.iqr == pytest.approx(1.5)

    def test_empty(self):
        assert summary_stats([]) is None


def small_vqe_config(seed=3):
    return VqeConfig(
        estimator=EstimatorConfig(EstimatorKind.CVAR, alpha=0.1, shots=100),
        trials=2,
        maxfev=150,
        xtol=1e-3,
        shots=100,
        seed=seed,
    )


ESTIMATORS = (
    EstimatorConfig(EstimatorKind.FS, shots=100),
    EstimatorConfig(EstimatorKind.CVAR, alpha=0.1, shots=100),
)


@pytest.fixture(scope="module")
def toy_bench():
    from mdkpvqe.instances import MdkpInstance

    toy = MdkpInstance("toy", 2, 1, (3, 4), ((2, 3),), (4,), known_optimum=4)
    return bench([toy], ["custom", "slack"], ESTIMATORS, small_vqe_config())


class TestBench:
    def test_row_counting_contract(self, toy_bench):
        reports, skipped = toy_bench
        assert len(reports) == 4  # 1 instance x 2 formulations x 2 estimators
        assert not skipped
        assert all(len(r.per_trial) == 2 for r in reports)

    def test_slack_report_uses_five_qubits(self, toy_bench):
        reports, _ = toy_bench
        slack = [r for r in reports if r.formulation == "slack"]
        assert all(r.qubits == 5 for r in slack)

    def test_gap_in_unit_interval(self, toy_bench):
        reports, _ = toy_bench
        for rep in reports:
            for row in rep.per_trial:
                if row.feasible:
                    assert 0.0 <= row.gap <= 1.0

    def test_cap_skip_reason(self):
        pet7 = bundled_instance("pet7")
        reports, skipped = bench(
            [pet7], ["custom"], ESTIMATORS, small_vqe_config(), cap=26
        )
        assert reports == []
        assert len(skipped) == 1
        assert skipped[0].skipped_reason == "qubit_cap"
        assert skipped[0].qubits == 50

    def test_csv_json_information_equivalent(self, toy_bench):
        reports, skipped = toy_bench
        cfg = small_vqe_config()
        rows = csv_trial_rows(reports_to_csv(reports, cfg, skipped))
        payload = json.loads(reports_to_json(reports, cfg, skipped))
        json_rows = [
            (
                rep["instance"], rep["formulation"], rep["estimator"],
                trial["trial"], trial["feasible"], trial["nfev"],
                trial["gap"], trial["final_estimate"],
            )
            for rep in payload["reports"]
            for trial in rep["per_trial"]
        ]
        assert len(rows) == len(json_rows)
        for row, jrow in zip(rows, json_rows):
            assert (row["instance"], row["formulation"], row["estimator"]) == jrow[:3]
            assert int(row["trial"]) == jrow[3]
            assert bool(int(row["feasible"])) == jrow[4]
            assert int(row["nfev"]) == jrow[5]
            gap = float(row["gap"]) if row["gap"] else None
            assert gap == jrow[6]
            assert float(row["final_estimate"]) == jrow[7]

    def test_csv_embeds_config_header(self, toy_bench):
        reports, skipped = toy_bench
        text = reports_to_csv(reports, small_vqe_config(), skipped)
        first = text.splitlines()[0]
        assert first.startswith("# config:")
        assert json.loads(first.removeprefix("# config:"))["seed"] == 3

    def test_rerun_reproduces_csv_bytes(self):
        from mdkpvqe.instances import MdkpInstance

        toy = MdkpInstance("toy", 2, 1, (3, 4), ((2, 3),), (4,), known_optimum=4)
        texts = []
        for _ in range(2):
            reports, skipped = bench(
                [toy], ["custom"], ESTIMATORS, small_vqe_config()
            )
            texts.append(reports_to_csv(reports, small_vqe_config(), skipped))
        assert texts[0] == texts[1]
