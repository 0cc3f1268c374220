"""Smoke test for the realclass Python module.

Build first with `pip install --no-build-isolation -e crates/py`, then run
`python -m pytest python/smoke_test.py`.
"""

import pytest

import realclass


def test_count():
    assert realclass.count("SL", 2, 7, "real")["total"] == 7
    assert realclass.count("PGL", 5, 3, "real")["total"] == 28
    r = realclass.count("SLQ", 4, 5, "strongly_real", y=2)
    assert r["total"] == 57
    assert sum(r["per_nu"].values()) == 57


def test_verify():
    r = realclass.verify("PSL", 2, 7, "real")
    assert r["match"] and r["oracle"] == r["formula"] == 4


def test_genfun():
    assert realclass.genfun_real_gl(3, 6)[:6] == [1, 2, 6, 12, 30, 56]
    assert realclass.genfun_real_gl(2, 0) == [1]


def test_table13():
    rows = realclass.table13(2)
    assert len(rows) == 10
    assert all(r["match"] for r in rows)


def test_enumerate_labels():
    assert len(realclass.enumerate_labels(2, 3, "real")) == 6
    assert len(realclass.enumerate_labels(2, 3, "zeta_real")) == 4
    (nu, polys, det), = realclass.enumerate_labels(1, 2)
    assert nu == [1] and polys == [[1, 1]] and det == 1


def test_delta():
    assert realclass.delta(7, 3) == 3
    assert realclass.delta(9, 4) == 4


def test_errors():
    with pytest.raises(ValueError):
        realclass.count("GL", 2, 6, "real")
    with pytest.raises(ValueError):
        realclass.count("PGL", 2, 5, "zeta_real")
    with pytest.raises(realclass.BudgetExceeded):
        realclass.verify("SL", 4, 3, "real", cap=1000)
