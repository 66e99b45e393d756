import csv
from fractions import Fraction
import io
import json

import pytest
from hypothesis import assume, given, settings, strategies as st

from rba6 import sieve
from rba6.realize import construct
from rba6.spectrum import ParameterSet, validate
from rba6.tensor import lambda_tensor


def P(d, p):
    return ParameterSet(tuple(d), tuple(p))


def test_canonicalize_sorts_symmetric_slots():
    assert sieve.canonicalize(P((2, 8, 2, 4), (-1, -1, -1, 1))) == P((8, 2, 2, 4), (-1, -1, -1, 1))
    a = sieve.canonicalize(P((4, 1, 4, 4), (-1, 2, 2, -2)))
    b = sieve.canonicalize(P((1, 4, 4, 4), (2, -1, 2, -2)))
    assert a == b
    assert sieve.canonicalize(a) == a


def test_prune_examples():
    assert sieve.prune(20, (10, 10))
    assert not sieve.prune(30, (10, 10))
    assert sieve.prune(30, (2, 2), (3,))  # |phi| > delta
    # all four ratios equal: commutative degeneration
    assert sieve.prune(30, (5, 5, 5, 5), tuple([Fraction(-1, 25)] * 4))
    assert not sieve.prune(21, (2, 2, 8, 4), (-1, -1, -1, 1))


def test_join_keeps_known_row():
    assert ((8, 2, 2, 4), (-1, -1, -1, 1)) in sieve.join_order(21)


def test_smallest_order_is_s3():
    recs = sieve.enumerate_census(6)
    assert len(recs) == 1
    assert recs[0].params == P((1, 1, 1, 1), (-1, -1, -1, 1))
    assert recs[0].table_algebra


@st.composite
def integer_sets(draw, max_delta=10):
    d = [draw(st.integers(1, max_delta)) for _ in range(4)]
    p = [draw(st.integers(-x, x)) for x in d[:3]]
    rest = -1 - sum(p)
    assume(rest % 2 == 0 and abs(rest // 2) <= d[3])
    params = P(d, p + [rest // 2])
    assume(validate(params) is None)
    return params


@settings(max_examples=80)
@given(integer_sets())
def test_screen_agrees_with_surd_tensor(params):
    b = construct(params)
    t = lambda_tensor(b)
    res = sieve.lambda_screen(params.delta, params.phi)
    assert (res is not None) == t.is_integral
    if res is not None:
        assert res[1] == t.is_table_algebra


@pytest.mark.parametrize("row", [r for r in sieve.reference_rows() if r["n"] <= 100][::7])
def test_screen_accepts_reference_rows(row):
    params = ParameterSet(row["delta"], row["phi"])
    res = sieve.lambda_screen(params.delta, params.phi)
    assert res is not None
    if row["table_algebra"] is not None:
        assert res[1] == row["table_algebra"]


def test_pruned_matches_bruteforce_small():
    assert sieve.candidates(20) == sieve.enumerate_bruteforce(20)


def test_output_is_deterministic_across_job_counts():
    one = sieve.format_census(sieve.enumerate_census(36, jobs=1), "json")
    two = sieve.format_census(sieve.enumerate_census(36, jobs=2), "json")
    assert one == two


def test_formats():
    recs = sieve.enumerate_census(21)
    doc = json.loads(sieve.format_census(recs, "json"))
    assert doc["schema"] == 1 and doc["count"] == len(recs)
    rows = list(csv.reader(io.StringIO(sieve.format_census(recs, "csv"))))
    assert rows[0][0] == "n" and len(rows) == len(recs) + 1
    md = sieve.format_census(recs, "md").splitlines()
    assert md[0].startswith("| n |") and len(md) == len(recs) + 2
    with pytest.raises(ValueError):
        sieve.format_census(recs, "xml")


def test_records_are_canonical_and_sorted():
    recs = sieve.enumerate_census(50)
    keys = [r.key() for r in recs]
    assert keys == sorted(keys)
    assert all(sieve.canonicalize(r.params) == r.params for r in recs)
    assert all(r.integral for r in recs)


def test_reference_view_drops_large_circle_products():
    recs = sieve.enumerate_census(60, min_order=50)
    view = sieve.reference_view(recs)
    dropped = [r for r in recs if r not in view]
    assert dropped and all(r.family.tag == "E∘K-wreath" and r.n > 50 for r in dropped)


def test_reference_erratum_applied():
    printed = {sieve.reference_key(r) for r in sieve.reference_rows(corrected=False)}
    fixed = {sieve.reference_key(r) for r in sieve.reference_rows()}
    assert len(printed) == len(fixed) == 84
    assert printed ^ fixed  # exactly one row differs
    assert len(printed ^ fixed) == 2


def test_prune_never_cuts_a_candidate():
    for n, d, p, _ in sieve.candidates(60):
        for k in range(5):
            assert not sieve.prune(n, d[:k], p[:k]), (d, p, k)
        assert sieve.prune(n - 1, d, p)
