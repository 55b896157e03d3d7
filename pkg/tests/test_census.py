import json
from fractions import Fraction

import pytest

from enriques_mukai.census import (
    CensusRow,
    census,
    census_lines,
    e8_determinant_from_roots,
    oracle_check,
    oracle_gram,
    summarize,
)
from enriques_mukai.config import CensusBounds
from enriques_mukai.lattice import GRAM, SurfaceContext


def test_small_box_contains_fixed_points():
    rows = {(r.vector.r, r.vector.c1.free, r.vector.s, r.vector.kappa): r for r in census(CensusBounds(2, 2, 0))}
    zero = (0,) * 10
    assert not rows[(2, zero, 0, 0)].verdict.nonempty
    assert rows[(2, zero, 0, 1)].verdict.nonempty
    assert rows[(2, zero, 0, 1)].canonical["kappa"] == 1


def test_zero_box_is_empty():
    assert list(census(CensusBounds(0, 0, 0))) == []


def test_order_and_json():
    lines = list(census_lines(CensusBounds(3, 3, 0)))
    keys = [(d["r"], d["s"], d["kappa"]) for d in map(json.loads, lines)]
    assert keys == sorted(keys)
    d = json.loads(lines[0])
    assert set(d) == {"r", "c1", "s", "kappa", "ell", "square", "primitive", "verdict", "canonical"}


def test_parallel_output_identical():
    bounds = CensusBounds(4, 4, 0)
    assert list(census_lines(bounds, jobs=2)) == list(census_lines(bounds))


def test_nodal_census_runs():
    ctx = SurfaceContext(nodal=True)
    rows = list(census(CensusBounds(2, 2, 0), ctx))
    assert all(isinstance(r, CensusRow) for r in rows)


def test_summary_counts():
    rows = list(census(CensusBounds(2, 2, 0)))
    summary = summarize(rows)
    assert sum(x["count"] for x in summary) == len(rows)
    assert summarize(json.loads(r.to_json()) for r in rows) == summary


def test_oracle_gram_matches_engine():
    assert oracle_gram() == [list(row) for row in GRAM]
    assert e8_determinant_from_roots() == Fraction(1)


@pytest.mark.slow
def test_oracle_clean_run():
    rep = oracle_check(CensusBounds(0, 0, 1))
    assert rep.ok and rep.vectors == 3**10 - 1


def test_oracle_catches_perturbation():
    rep = oracle_check(CensusBounds(0, 0, 1), perturb=(2, 3, 1), stop_after=5)
    assert not rep.ok and rep.violations[0]["kind"] == "square"


@pytest.mark.slow
def test_rank_le_one_threshold():
    """Every rank <= 1 row of the (1, 1, 1) box obeys the l = 1 threshold."""
    for row in census(CensusBounds(1, 1, 1)):
        v = row.vector
        if not row.primitive:
            assert not row.verdict.nonempty
            continue
        assert row.ell == 1
        if v.r == 1:
            assert row.verdict.nonempty == (row.square >= -1)
            assert row.canonical["r"] == 1 and row.canonical["s"] == row.square
