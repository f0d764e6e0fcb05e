"""Acceptance gate: the ten headline checks, one pass/fail line each.

Each test defers to conekit.certify so the command line `conekit paper-check`
and this suite exercise the identical code path.  A failure prints the
structured details of the criterion that broke.
"""

import json

import pytest

from conekit.certify import CRITERIA, run_criterion


def _check(number: int) -> None:
    out = run_criterion(number)
    limit = out["limit_seconds"]
    budget = f" ({out['elapsed_seconds']}s < {limit}s)" if limit else ""
    status = "PASS" if out["passed"] else "FAIL"
    print(f"{status} {out['criterion']} {out['slug']}{budget}")
    if not out["passed"]:
        print(json.dumps(out["details"], indent=2, default=str))
    assert out["passed"], f"criterion {number} ({out['slug']}) failed"
    assert out["within_limit"], f"criterion {number} exceeded {limit}s"


def test_criterion_01_staircase_cone_reproduction():
    _check(1)


def test_criterion_02_adapted_equality():
    _check(2)


def test_criterion_03_containment():
    _check(3)


def test_criterion_04_cone_structure():
    _check(4)


def test_criterion_05_rank2_multiplicities():
    _check(5)


def test_criterion_06_hall_agreement():
    _check(6)


def test_criterion_07_root_sum_identity():
    _check(7)


def test_criterion_08_ktheory_duality():
    _check(8)


def test_criterion_09_superfluous_filter():
    _check(9)


def test_criterion_10_tropical_membership():
    _check(10)


def test_criteria_table_is_complete():
    numbers = [entry[0] for entry in CRITERIA]
    assert numbers == list(range(1, 11))
