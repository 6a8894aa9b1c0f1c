from fractions import Fraction

import pytest

from cpair.covers import classify_cover, classify_divisorial, cyclic_adapted_cover, quotient_pair
from cpair.divisors import INF, CPairBoundary, QDivisor
from cpair.errors import InconsistentOrbit, UnknownPrime
from cpair.geometry import Chart, DivisorialMorphism, MonomialCover


@pytest.fixture
def plane():
    return Chart("X", 2, ("x", "y")), Chart("Xh", 2, ("u", "v"))


def test_classification_levels(plane):
    X, Xh = plane
    B = CPairBoundary({X.hyperplane(1): 2})
    c = classify_cover(MonomialCover.diagonal(Xh, X, [4, 1]), B)
    assert c.is_adapted and not c.is_strongly_adapted
    c = classify_cover(MonomialCover.diagonal(Xh, X, [2, 1]), B)
    assert c.is_uniformization
    c = classify_cover(MonomialCover.diagonal(Xh, X, [2, 3]), B)
    assert c.is_strongly_adapted and not c.is_uniformization
    assert c.branch == (X.hyperplane(1), X.hyperplane(2))
    c = classify_cover(MonomialCover.diagonal(Xh, X, [3, 1]), B)
    assert not c.is_adapted
    assert c.pulled_orbifold_divisor == QDivisor({Xh.hyperplane(1): Fraction(3, 2)})


def test_log_components_impose_nothing(plane):
    X, Xh = plane
    B = CPairBoundary({X.hyperplane(1): INF})
    c = classify_cover(MonomialCover.identity(X), B)
    assert c.is_uniformization


def test_boundary_must_live_on_target(plane):
    X, Xh = plane
    with pytest.raises(Exception):
        classify_cover(MonomialCover.identity(X), CPairBoundary({"elsewhere": 2}))


def test_cyclic_cover_data(plane):
    X, _ = plane
    B = CPairBoundary({X.hyperplane(1): 4, X.hyperplane(2): 6})
    spec = cyclic_adapted_cover(B)
    assert spec.degree == 12
    assert spec.exponents == {X.hyperplane(1): 3, X.hyperplane(2): 2}
    assert classify_cover(spec.local_model(X, B), B).is_uniformization


def test_cyclic_cover_of_log_pair(plane):
    X, _ = plane
    spec = cyclic_adapted_cover(CPairBoundary({X.hyperplane(1): INF}))
    assert spec.degree == 1 and spec.exponents == {}


def test_quotient_by_cyclic_map():
    A, Ah = Chart("A", 1), Chart("Ah", 1)
    q = MonomialCover(Ah, A, [[4]]).as_divisorial()
    D_Q, data = quotient_pair(CPairBoundary({Ah.hyperplane(1): 3}), q)
    assert D_Q.multiplicity(A.hyperplane(1)) == 12
    assert data.rows[A.hyperplane(1)] == (4, 3, 12)
    # 4 * 11/12 is not integral: only trivial or log pairs upstairs stay adapted
    assert not data.is_adapted
    D_Q, data = quotient_pair(CPairBoundary({Ah.hyperplane(1): INF}), q)
    assert D_Q.multiplicity(A.hyperplane(1)) == INF
    assert data.is_strongly_adapted
    _, data = quotient_pair(CPairBoundary(), q)
    assert data.is_strongly_adapted


def test_inconsistent_orbit():
    q = DivisorialMorphism(["H1", "H2"], ["H"], {"H": QDivisor({"H1": 1, "H2": 2})})
    with pytest.raises(InconsistentOrbit):
        quotient_pair(CPairBoundary(), q)
    D_Q, _ = quotient_pair(CPairBoundary({"H1": 2}), q)
    assert D_Q.multiplicity("H") == 2


def test_quotient_boundary_must_live_upstairs():
    q = DivisorialMorphism(["H1"], ["H"], {"H": QDivisor({"H1": 2})})
    with pytest.raises(UnknownPrime):
        quotient_pair(CPairBoundary({"Z": 2}), q)


def test_classify_divisorial():
    q = DivisorialMorphism(["S"], ["T"], {"T": QDivisor({"S": 3})})
    assert classify_divisorial(q, CPairBoundary({"T": 3}))[:2] == (True, True)
    assert classify_divisorial(q, CPairBoundary({"T": 2}))[:2] == (False, False)
