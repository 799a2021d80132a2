"""Reference-table reproduction checks."""

from g2ml.report import (check_counts, check_height1, check_l2_points,
                         check_l3_audit, run_table_checks)


def test_counts_pass():
    check = check_counts()
    assert check.status == "PASS"


def test_height1_pass():
    check = check_height1()
    assert check.status == "PASS"
    assert "27 classes" in check.summary


def test_l2_audit_reports_discrepancy():
    check = check_l2_points(workers=2)
    assert check.status == "AUDIT"
    assert any("height <= 2" in d for d in check.details)


def test_l3_audit_details():
    check = check_l3_audit()
    assert check.status == "AUDIT"
    assert any("44 printed rows, 39 distinct" in d for d in check.details)
    repeats = [d for d in check.details if "repeats row" in d]
    assert len(repeats) == 5
    assert any("abstract=44" in d and "lemma=46" in d for d in check.details)


def test_run_all_statuses():
    checks = run_table_checks(workers=2)
    assert [c.status for c in checks] == ["PASS", "PASS", "AUDIT", "AUDIT"]
