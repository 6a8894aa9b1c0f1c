from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from cpair.divisors import (
    INF, NEG_INF, CPairBoundary, PrimeDivisor, QDivisor, as_cpair, c_multiplicity,
    ceil_div, d_orb, ext_div, ext_mul, ext_sub, floor_div, format_ext, frac_part,
    reduce_div, standard_coefficient,
)
from cpair.errors import InfiniteCoefficient, NotStandardCoefficient

F = Fraction


def test_infinity_arithmetic():
    assert ext_mul(INF, 3) == INF
    assert ext_sub(INF, 7) == INF
    assert ext_div(INF, INF) == 1
    assert ext_div(5, INF) == 0
    assert INF > 10**9 and NEG_INF < -(10**9)
    assert -INF == NEG_INF
    assert format_ext(INF) == "inf"


def test_format_ext():
    assert format_ext(F(6, 4)) == "3/2"
    assert format_ext(F(-4, 2)) == "-2"
    assert format_ext(7) == "7"


def test_qdivisor_normalizes():
    D = QDivisor({"B": F(1, 2), "A": 0, "C": F(2, 4)})
    assert D.support == {PrimeDivisor("B"), PrimeDivisor("C")}
    assert D.coefficient("A") == 0
    assert str(D) == "1/2*B + 1/2*C"


def test_qdivisor_rejects_infinity():
    with pytest.raises(InfiniteCoefficient):
        QDivisor({"A": INF})


def test_qdivisor_arithmetic_and_order():
    D = QDivisor({"A": F(1, 2), "B": 1})
    E = QDivisor({"A": F(1, 3)})
    assert D - E == QDivisor({"A": F(1, 6), "B": 1})
    assert 2 * D == QDivisor({"A": 1, "B": 2})
    assert E <= D and not D <= E
    assert (E - D) <= QDivisor()
    assert not QDivisor({"A": -1}).is_effective()


def test_rounding():
    D = QDivisor({"A": F(-3, 2), "B": F(7, 3)})
    assert floor_div(D) == QDivisor({"A": -2, "B": 2})
    assert ceil_div(D) == QDivisor({"A": -1, "B": 3})
    assert frac_part(D) == QDivisor({"A": F(1, 2), "B": F(1, 3)})
    assert reduce_div(D) == QDivisor({"A": 1, "B": 1})


def test_standard_coefficients():
    assert standard_coefficient(2) == F(1, 2)
    assert standard_coefficient(INF) == 1
    assert standard_coefficient(1) == 0


def test_as_cpair_reads_multiplicities():
    B = as_cpair(QDivisor({"D1": F(1, 2), "D2": F(2, 3), "D3": 1}))
    assert B.multiplicity("D1") == 2
    assert B.multiplicity("D2") == 3
    assert B.multiplicity("D3") == INF
    assert c_multiplicity(B, "elsewhere") == 1


@pytest.mark.parametrize("c", [F(1, 3), F(3, 2), F(-1, 2), F(3, 5)])
def test_as_cpair_rejects_non_standard(c):
    with pytest.raises(NotStandardCoefficient):
        as_cpair(QDivisor({"P": c}))


def test_boundary_drops_multiplicity_one():
    B = CPairBoundary({"A": 1, "B": 4, "C": INF})
    assert B.support == {PrimeDivisor("B"), PrimeDivisor("C")}
    assert B.finite_part() == {PrimeDivisor("B"): 4}
    assert B.infinite_part() == [PrimeDivisor("C")]
    assert B.as_qdivisor() == QDivisor({"B": F(3, 4), "C": 1})


@pytest.mark.parametrize("m", [0, -2, F(3, 2), NEG_INF, True])
def test_boundary_rejects_bad_multiplicities(m):
    with pytest.raises(NotStandardCoefficient):
        CPairBoundary({"A": m})


def test_orbifold_divisor_skips_log_components():
    B = CPairBoundary({"A": 3, "B": INF})
    assert d_orb(B) == QDivisor({"A": F(1, 3)})


fractions = st.fractions(min_value=-20, max_value=20, max_denominator=30)
divisors = st.dictionaries(st.sampled_from("ABCDE"), fractions, max_size=5).map(QDivisor)


@given(divisors)
def test_floor_plus_fractional_part(D):
    assert floor_div(D) + frac_part(D) == D
    assert all(0 <= c < 1 for _, c in frac_part(D).items())
    assert floor_div(D) <= D <= ceil_div(D)


@given(divisors, st.integers(1, 9), st.integers(1, 9))
def test_floor_superadditive(D, n1, n2):
    assert floor_div(n1 * D) + floor_div(n2 * D) <= floor_div((n1 + n2) * D)


@given(st.one_of(st.integers(2, 50), st.just(INF)))
def test_standard_coefficient_round_trip(m):
    B = as_cpair(QDivisor({"P": standard_coefficient(m)}))
    assert B.multiplicity("P") == m
