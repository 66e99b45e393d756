from fractions import Fraction

import pytest
from hypothesis import assume, given, strategies as st

from rba6.spectrum import ParameterSet, character_table, parse_params, validate


def P(d, p):
    return ParameterSet(tuple(d), tuple(p))


def test_s3_is_valid():
    assert validate(P((1, 1, 1, 1), (-1, -1, -1, 1))) is None


def test_linear_relation_rejected():
    reason = validate(P((1, 1, 1, 1), (-1, -1, -1, 2)))
    assert reason is not None and "linear relation" in reason


@pytest.mark.parametrize("phi", [Fraction(-5, 21), Fraction(-1, 5)])
def test_equal_ratios_rejected_as_commutative(phi):
    reason = validate(P((5, 5, 5, 5), (phi,) * 4))
    assert reason is not None and "commutative" in reason


def test_nonpositive_degree_rejected():
    assert "positive" in validate(P((0, 1, 1, 1), (-1, -1, -1, 1)))


def test_character_table_s3():
    t = character_table(P((1, 1, 1, 1), (-1, -1, -1, 1)))
    assert t.n == 6
    assert (t.m_phi, t.m_chi) == (1, 2)
    assert t.chi == (2, 0, 0, 0, -1, -1)


@pytest.mark.parametrize(
    "d, p, n, mults",
    [
        ((2, 2, 8, 4), (-1, -1, -1, 1), 21, (8, 6)),
        ((6, 10, 15, 5), (-1, 0, 0, 0), 42, (36, Fraction(5, 2))),
        ((10, 10, 20, 20), (1, 1, -7, 2), 81, (20, 30)),
    ],
)
def test_character_table_rows(d, p, n, mults):
    t = character_table(P(d, p))
    assert t.n == n
    assert (t.m_phi, t.m_chi) == mults


def test_character_table_rejects_invalid():
    with pytest.raises(ValueError):
        character_table(P((1, 1, 1, 1), (0, 0, 0, 0)))


def test_parse_params_round_trip():
    p = parse_params("2,2,8,4;-1,-1,-1,1")
    assert p == P((2, 2, 8, 4), (-1, -1, -1, 1))
    assert parse_params(str(p)) == p
    assert parse_params("1/2, 3, 3, 1; -1/2, 0, 0, 0").delta[0] == Fraction(1, 2)


@pytest.mark.parametrize("text, where", [("1,1,x,1;0,0,0,0", "column 5"), ("1,1,1;0,0,0,0", "expected 4")])
def test_parse_params_reports_position(text, where):
    with pytest.raises(ValueError, match=where):
        parse_params(text)


def test_json_round_trip():
    p = P((Fraction(3, 2), 2, 8, 4), (-1, -1, -1, Fraction(1, 4)))
    assert ParameterSet.from_json(p.to_json()) == p


positive = st.fractions(min_value=Fraction(1, 4), max_value=30, max_denominator=6)


@st.composite
def valid_sets(draw):
    d = [draw(positive) for _ in range(4)]
    p = [draw(st.fractions(min_value=-x, max_value=x, max_denominator=6)) for x in d[:3]]
    p4 = -(1 + sum(p)) / 2
    params = P(d, p + [p4])
    reason = validate(params)
    assume(reason is None)
    return params


@given(valid_sets())
def test_trace_identities(params):
    """tau(b_i) = delta_i + m_phi phi_i + m_chi chi_i vanishes and n = 1 + m_phi + 2 m_chi."""
    t = character_table(params)
    assert t.n == 1 + t.m_phi + 2 * t.m_chi
    assert t.m_chi > 0 and t.m_phi > 0
    for d, p, c in zip(params.deltas[1:], params.phis[1:], t.chi[1:]):
        assert d + t.m_phi * p + t.m_chi * c == 0
