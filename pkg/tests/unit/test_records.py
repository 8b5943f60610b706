from fractions import Fraction

import numpy as np

from gt_flow.records import ResultRecord, exact_check, experiment_id, is_decreasing_ladder
from gt_flow.records import ladder_check, plain, threshold_check, tolerance_check


def test_checks():
    assert exact_check("a", "anchor", Fraction(1, 2), Fraction(2, 4)).passed
    assert not exact_check("a", "anchor", 1, 2).passed

    assert tolerance_check("b", "anchor", 1.0 + 1e-9, 1.0, 1e-8).passed
    assert not tolerance_check("b", "anchor", 101.0, 100.0, 1e-3).passed
    assert tolerance_check("b", "anchor", 101.0, 100.0, 1e-2, relative=True).passed
    assert not tolerance_check("b", "anchor", float("nan"), 1.0, 1.0).passed

    assert threshold_check("c", "anchor", 0.96, 0.95).passed
    assert not threshold_check("c", "anchor", 0.9, 0.95).passed


def test_decreasing_ladder():
    assert is_decreasing_ladder([1.0, 0.5, 0.25], 0.1)
    assert is_decreasing_ladder([1.0, 1.05, 0.5], 0.1)
    assert is_decreasing_ladder([0.0, 0.0, 0.0], 0.1)
    assert not is_decreasing_ladder([1.0, 1.05, 1.1], 0.1)
    assert not is_decreasing_ladder([1.0, 2.0], 0.1)
    assert ladder_check("d", "anchor", [np.float64(0.3), 0.1], 0.1).value == [0.3, 0.1]


def test_plain():
    assert plain(Fraction(3)) == 3
    assert plain(Fraction(1, 3)) == "1/3"
    assert plain(np.float64(0.5)) == 0.5
    assert plain({1: (Fraction(1, 2), np.int64(2))}) == {"1": ["1/2", 2]}


def test_result_record():
    assert experiment_id("verify", {"a": 1, "b": 2}) == experiment_id("verify", {"b": 2, "a": 1})
    assert experiment_id("verify", {"a": 1}) != experiment_id("verify", {"a": 2})
    assert experiment_id("verify", {"a": 1}).startswith("verify-")

    record = ResultRecord("verify-0", "verify")
    assert record.passed
    record.checks.append(exact_check("good", "anchor", 1, 1))
    record.checks.append(exact_check("bad", "anchor", 1, 2))
    assert not record.passed
    assert record.failing == ["bad"]

    content = record.to_dict()
    assert content["passed"] is False
    assert len(content["checks"]) == 2
