"""Acceptance gate: one or more tests per criterion, summarized per criterion
at the end of the run by the hook in ``conftest.py``."""

from fractions import Fraction
from math import floor, gcd
from pathlib import Path

import pytest

from cpair import INF, NEG_INF, CPairBoundary, QDivisor, kernels, parse
from cpair.covers import classify_cover, quotient_pair
from cpair.curves import (
    CurveCover, OrbifoldCurve, curve_irregularity, curve_kappa, kappa_scan,
    riemann_hurwitz_genus,
)
from cpair.divisors import standard_coefficient
from cpair.geometry import Chart, MonomialCover
from cpair.morphisms import compare_boundaries
from cpair.runner import run
from cpair.sheaves import BasisTensor, CoverSetup, compute_adapted, reference_sheaf
from cpair import sweeps

SAMPLES = Path(__file__).resolve().parent.parent / "samples"
SEED = 20240715


def criterion(number, title):
    return pytest.mark.criterion(number, title)


def run_sample(name):
    return run(parse((SAMPLES / name).read_text()))


# 1

@criterion(1, "allowance tables in dimensions one and two")
@pytest.mark.parametrize("m", [2, 3, 5])
@pytest.mark.parametrize("alpha", [1, 2, 3])
def test_tables_dimension_one(m, alpha):
    s = CoverSetup.diagonal((alpha * m,), (m,), ("z",))
    forms = compute_adapted(s, 1, 1)
    assert forms.generator_strings() == [f"z^{alpha - 1} dz" if alpha > 1 else "dz"]
    assert reference_sheaf(s, 1, 1, "pullback").generator_strings() == [f"z^{alpha * m - 1} dz"]
    assert reference_sheaf(s, 1, 1, "pullback-log").generator_strings() == ["z^-1 dz"]


@criterion(1, "allowance tables in dimensions one and two")
@pytest.mark.parametrize("m", [2, 3, 5])
@pytest.mark.parametrize("alpha", [1, 2, 3])
def test_tables_dimension_two(m, alpha):
    s = CoverSetup.diagonal((1, alpha * m), (1, m), ("x", "y"))
    forms = compute_adapted(s, 1, 1)
    dy = f"y^{alpha - 1} dy" if alpha > 1 else "dy"
    assert forms.generator_strings() == ["dx", dy]
    assert reference_sheaf(s, 1, 1, "pullback").generator_strings() == ["dx", f"y^{alpha * m - 1} dy"]
    assert reference_sheaf(s, 1, 1, "pullback-log").generator_strings() == ["dx", "y^-1 dy"]


@criterion(1, "allowance tables in dimensions one and two")
@pytest.mark.parametrize("m", [2, 3, 5])
@pytest.mark.parametrize("alpha", [1, 2, 3])
def test_twisted_pullback_is_strictly_larger(m, alpha):
    s = CoverSetup.diagonal((1, alpha * m), (1, m), ("x", "y"))
    dx = BasisTensor(((0,),))
    twisted = reference_sheaf(s, 1, 1, "twisted")
    adapted = compute_adapted(s, 1, 1)
    assert twisted.allowance(dx) == (0, alpha * (m - 1))
    assert adapted.allowance(dx) == (0, 0)
    assert adapted <= twisted and adapted != twisted


# 2

@criterion(2, "oracle thresholds equal closed-form allowances (500 setups)")
def test_oracle_equivalence():
    box = kernels.BACKEND == "compiled"
    result = sweeps.sweep_oracle(SEED, 500, box=box)
    assert result.notes["tensors"] > 500
    assert result.failures == []


# 3

@criterion(3, "residue description of adapted 1-forms (500 setups)")
def test_residue_description():
    assert sweeps.sweep_residue(SEED, 500).failures == []


# 4

@criterion(4, "uniformization equivalence over 200 adapted covers")
def test_uniformization_equivalence():
    result = sweeps.sweep_uniformization(SEED, 200)
    assert result.failures == [], (
        f"{len(result.failures)} counterexamples; "
        f"pattern counts {result.notes['pattern (exists, forall, uniformization)']}")


# 5

@criterion(5, "three-branched quartic: global pass, local witness (E, P1, 1, 3)")
def test_quartic_global_and_local():
    (glob,) = run_sample("paquerette.cp").checks
    assert glob.verdict == "pass"
    orbifold, local = run_sample("paquerette-local.cp").checks
    assert orbifold.verdict == "pass"
    assert local.verdict == "fail"
    assert {"source": "E", "target": "P1", "lhs": "1", "rhs": "3"} in local.witnesses


# 6

@criterion(6, "three lines: orbifold pass, sextic defect -E")
def test_three_lines_blowup():
    orbifold, pluri, lc = run_sample("three-lines.cp").checks
    assert orbifold.verdict == "pass"
    assert pluri.verdict == "fail"
    assert pluri.data["defect"] == {"E": "-1"}
    assert lc.data["defect"] == {"E": "-1/6"}


# 7

@criterion(7, "log line blow-up: B-birational, not orbifold (rhs inf)")
def test_log_line_blowup():
    birational, orbifold = run_sample("line-blowup.cp").checks
    assert birational.verdict == "pass"
    assert birational.data["left"] == birational.data["right"]
    assert orbifold.verdict == "fail"
    assert orbifold.witnesses == [{"source": "E", "target": "L", "lhs": "1", "rhs": "inf"}]


# 8

def cyclic_model(k):
    A, Ah = Chart("A", 1, ("z",)), Chart("Ah", 1, ("w",))
    return MonomialCover(Ah, A, [[k]]), A, Ah


@criterion(8, "cyclic quotients z -> z^k are strongly adapted")
@pytest.mark.parametrize("k", range(2, 13))
def test_cyclic_quotient(k):
    q, A, _ = cyclic_model(k)
    D_Q, data = quotient_pair(CPairBoundary(), q.as_divisorial())
    assert D_Q.as_qdivisor() == QDivisor({A.hyperplane(1): Fraction(k - 1, k)})
    assert data.is_strongly_adapted
    assert classify_cover(q, D_Q).is_strongly_adapted


# 9

def _upstairs(m, k):
    return INF if m == INF else m // gcd(m, k)


@criterion(9, "quotient boundaries compared with the original boundary")
@pytest.mark.parametrize("k", range(2, 13))
def test_quotient_comparison(k):
    q, A, Ah = cyclic_model(k)
    z = A.hyperplane(1)
    for m in list(range(2, 13)) + [INF]:
        D = CPairBoundary({z: m})
        # quotient of the trivial pair upstairs
        D_Q, _ = quotient_pair(CPairBoundary(), q.as_divisorial())
        expected = m != INF and k >= m
        assert compare_boundaries(D_Q, D).passed == expected
        # quotient of the pulled-back pair
        m_up = _upstairs(m, k)
        D_Q, _ = quotient_pair(CPairBoundary({Ah.hyperplane(1): m_up}), q.as_divisorial())
        top = INF if m == INF else k * m_up
        assert D_Q.multiplicity(z) == top
        assert compare_boundaries(D_Q, D).passed == (m == INF or top >= m)


# 10

@criterion(10, "normal-form test agrees with the multiplicity criterion (1000)")
def test_nc_normal_forms():
    assert sweeps.sweep_nc(SEED, 1000).failures == []


# 11

@criterion(11, "degree-one part of the total C-Chern class (100)")
def test_chern_degree_one():
    assert sweeps.sweep_chern(SEED, 100).failures == []


# 12

@criterion(12, "curve invariants")
def test_etale_genus():
    for d in range(1, 21):
        for g in range(0 if d == 1 else 1, 6):
            assert riemann_hurwitz_genus(g, CurveCover(d)) == d * (g - 1) + 1


def _scan_oracle(C, m):
    d = -2 * m + sum(floor(m * standard_coefficient(mi)) for mi in C.multiplicities)
    return len(range(d + 1))


@criterion(12, "curve invariants")
@pytest.mark.parametrize("mults, kappa", [((2, 3, 6), 0), ((2, 3, 7), NEG_INF)])
def test_triangle_kappa(mults, kappa):
    C = OrbifoldCurve(0, mults)
    for m, _, h0 in kappa_scan(C):
        assert h0 == _scan_oracle(C, m)
    assert curve_kappa(C) == kappa


@criterion(12, "curve invariants")
def test_genus_two_etale_irregularity():
    assert curve_irregularity(OrbifoldCurve(2), CurveCover(3)) == 4


# 13

@criterion(13, "property suite (500 instances each)")
@pytest.mark.parametrize("kind", ["floor", "composition", "superadditive", "sym-equal"])
def test_property_suite(kind):
    result = sweeps.run_sweep(kind, 500, SEED)
    assert result.failures == [], f"{len(result.failures)} of 500 instances fail"
