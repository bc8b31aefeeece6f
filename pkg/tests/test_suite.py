import pytest

from specwres import suite


def test_unknown_group():
    with pytest.raises(KeyError):
        suite.run(["nope"])


def test_summary_structure():
    checks = suite.run(["clifford"], suite.SuiteConfig(ns=(2,)))
    s = suite.summary(checks)
    assert s["passed"] and not s["failed"]
    assert all(c["passed"] for c in s["groups"]["clifford"]["checks"].values())


def test_check_pass_logic():
    assert suite.Check("g", "a", 1e-10, 1e-9).passed
    assert not suite.Check("g", "a", float("nan"), 1e-9).passed
    assert not suite.Check("g", "a", 1.0, 1e-9).passed


def test_same_seed_same_residuals():
    cfg = suite.SuiteConfig(ns=(2, 4), count=3, seed=9)
    a = suite.summary(suite.run(["spin-traces", "grading"], cfg))
    b = suite.summary(suite.run(["spin-traces", "grading"], cfg))
    assert a == b


def test_rel_floor():
    assert suite.rel(1e-3, 0.0) == pytest.approx(1e-3)
    assert suite.rel(200.0, 100.0) == pytest.approx(0.5)
