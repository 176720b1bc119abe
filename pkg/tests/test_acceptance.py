"""Acceptance gate: one test per criterion, at the stated sizes and time limits.

A summary line per criterion is printed at the end of the session (see
conftest), or directly when run as ``python tests/test_acceptance.py``.
"""

import time

import pytest

from dynbounds import suites
from dynbounds.cli import main

RESULTS: dict[int, str] = {}

LIMITS = {1: 30, 2: 300, 3: 600 + 3600, 4: None, 5: 60, 6: 120, 7: 120, 8: 60, 9: 300, 10: 300, 11: None}


def _judge(n, check, stress=False):
    cfg = suites.RunConfig(stress=stress)
    limit = LIMITS[n]
    t0 = time.perf_counter()
    rep = check(cfg, suites.Budget(limit))
    dt = time.perf_counter() - t0
    ok = rep["verdict"] == suites.PASS and (limit is None or dt < limit)
    detail = f"{len(rep['cases'])} cases, {len(rep['violations'])} violations, {dt:.1f}s"
    if rep["verdict"] == suites.SKIPPED:
        detail += ", budget exceeded"
    RESULTS[n] = f"criterion {n:2}: {'PASS' if ok else 'FAIL'} ({detail})"
    return ok, rep


def _first_violation(rep):
    return rep["violations"][0] if rep["violations"] else None


def test_c01_node_gadget():
    ok, rep = _judge(1, suites.check_node_gadgets)
    assert ok, _first_violation(rep)


def test_c02_clique_gadget():
    ok, rep = _judge(2, suites.check_clique_gadgets)
    assert ok, _first_violation(rep)


def test_c03_unweighted_embedding():
    # includes the n=3 stress tier
    ok, rep = _judge(3, suites.check_uted_embedding, stress=True)
    assert ok, _first_violation(rep)


def test_c04_unweighted_driver():
    ok, rep = _judge(4, suites.check_uted_driver)
    assert ok, _first_violation(rep)


def test_c05_weighted_base():
    ok, rep = _judge(5, suites.check_wted_base)
    assert ok, _first_violation(rep)


def test_c06_weighted_dynamic():
    ok, rep = _judge(6, suites.check_wted_dynamic)
    assert ok, _first_violation(rep)


def test_c07_weighted_driver():
    ok, rep = _judge(7, suites.check_wted_driver)
    assert ok, _first_violation(rep)


def test_c08_folding():
    ok, rep = _judge(8, suites.check_folding)
    assert ok, _first_violation(rep)


def test_c09_ted_certification():
    ok, rep = _judge(9, suites.check_ted)
    assert ok, _first_violation(rep)


def test_c10_online():
    ok, rep = _judge(10, suites.check_online)
    assert ok, _first_violation(rep)


def test_c11_determinism(tmp_path, capsys):
    t0 = time.perf_counter()
    for d in ("first", "second"):
        main(["verify-all", "--seed", "7", "--out", str(tmp_path / d)])
    capsys.readouterr()
    names = sorted(p.name for p in (tmp_path / "first").iterdir() if p.name != "timings.json")
    same = [(tmp_path / "first" / n).read_bytes() == (tmp_path / "second" / n).read_bytes() for n in names]
    ok = len(names) == len(suites.SUITES) + 1 and all(same)
    RESULTS[11] = (f"criterion 11: {'PASS' if ok else 'FAIL'} ({len(names)} report files, "
                   f"{sum(same)} identical, {time.perf_counter() - t0:.1f}s)")
    assert ok


if __name__ == "__main__":
    import sys

    sys.exit(pytest.main([__file__, "-q"]))
