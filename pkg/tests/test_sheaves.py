import itertools

import pytest
from hypothesis import given, settings, strategies as st

from cpair import kernels
from cpair.divisors import INF, CPairBoundary
from cpair.errors import DegreeOutOfRange, EnumerationLimitExceeded, FactorizationMismatch, NonDiagonalCover
from cpair.geometry import Chart, MonomialCover
from cpair.sheaves import (
    BasisTensor, CoverSetup, adapted_differential_bound, basis_tensors, check_inclusions,
    compute_adapted, differential_is_adapted, functoriality_check, membership_oracle,
    oracle_box_scan, oracle_thresholds, reference_sheaf, residue_kernel_p1, sym_product_degree,
    tensor_count,
)

mults = st.sampled_from([1, 2, 3, 4, INF])


@st.composite
def setups(draw, max_dim=3):
    d = draw(st.integers(1, max_dim))
    powers = draw(st.lists(st.integers(1, 6), min_size=d, max_size=d))
    ms = draw(st.lists(mults, min_size=d, max_size=d))
    return CoverSetup.diagonal(powers, ms)


def test_basis_tensor_normalizes_blocks():
    t = BasisTensor(((1, 0), (0, 2)))
    assert t.blocks == ((0, 1), (0, 2))
    assert (t.n, t.p) == (2, 2)
    assert t.counts(3) == (2, 1, 1)
    assert t.render(("x", "y", "z")) == "dx^dy*dx^dz"
    with pytest.raises(ValueError):
        BasisTensor(((0, 0),))


def test_basis_enumeration_and_cap():
    assert len(basis_tensors(3, 2, 1)) == tensor_count(3, 2, 1) == 6
    assert len(basis_tensors(4, 1, 2)) == 6
    with pytest.raises(EnumerationLimitExceeded):
        basis_tensors(3, 3, 1, max_tensors=5)
    with pytest.raises(DegreeOutOfRange):
        basis_tensors(2, 1, 3)


def test_logarithmic_axis_allows_simple_pole():
    s = CoverSetup.diagonal((3,), (INF,), ("z",))
    assert compute_adapted(s, 1, 1).generator_strings() == ["z^-1 dz"]
    assert compute_adapted(s, 2, 1).generator_strings() == ["z^-2 dz*dz"]


def test_off_boundary_ramification_forces_zeros():
    s = CoverSetup.diagonal((3,), (1,), ("z",))
    assert compute_adapted(s, 1, 1).generator_strings() == ["z^2 dz"]


def test_identity_cover_gives_log_floor_forms():
    for ms in [(2,), (3, INF), (2, 1, 5)]:
        s = CoverSetup.diagonal((1,) * len(ms), ms)
        for p in range(1, len(ms) + 1):
            assert compute_adapted(s, 1, p) == reference_sheaf(s, 1, p, "log-floor")


def test_degrees_checked():
    s = CoverSetup.diagonal((2,), (2,))
    with pytest.raises(DegreeOutOfRange):
        compute_adapted(s, 0, 1)
    with pytest.raises(DegreeOutOfRange):
        compute_adapted(s, 1, 2)


def test_closed_form_needs_diagonal_cover():
    A, B = Chart("A", 2), Chart("B", 2)
    cover = MonomialCover(A, B, [[2, 1], [0, 1]])
    s = CoverSetup(cover, CPairBoundary({B.hyperplane(1): 2}))
    with pytest.raises(NonDiagonalCover):
        compute_adapted(s, 1, 1)


def test_oracle_on_non_diagonal_cover():
    # x = u^2 v, y = v ; boundary (1/2){x = 0}
    A, B = Chart("A", 2, ("u", "v")), Chart("B", 2, ("x", "y"))
    cover = MonomialCover(A, B, [[2, 0], [1, 1]])
    s = CoverSetup(cover, CPairBoundary({B.hyperplane(1): 2}))
    for t in basis_tensors(2, 1, 1):
        a = oracle_thresholds(s, 1, 1, t)
        assert a is not None
        assert membership_oracle(s, 1, 1, t, [-v for v in a])


@settings(max_examples=60, deadline=None)
@given(setups(), st.integers(1, 3), st.data())
def test_closed_form_matches_oracle(s, n, data):
    p = data.draw(st.integers(1, s.dim))
    sheaf = compute_adapted(s, n, p)
    for t, a in sheaf.allowances.items():
        assert oracle_thresholds(s, n, p, t) == a
    assert oracle_box_scan(s, n, p, sheaf)[0] == 0


@settings(max_examples=60, deadline=None)
@given(setups())
def test_residue_description(s):
    assert residue_kernel_p1(s) == compute_adapted(s, 1, 1)


@settings(max_examples=40, deadline=None)
@given(setups(), st.integers(1, 3), st.data())
def test_inclusion_chain(s, n, data):
    p = data.draw(st.integers(1, s.dim))
    r = check_inclusions(s, n, p)
    for label in ("pullback <= sym", "sym <= adapted", "adapted <= pullback-log",
                  "pullback-log <= log", "log-floor <= log", "adapted <= twisted"):
        assert r.holds[label], label


@settings(max_examples=40, deadline=None)
@given(setups(), st.integers(1, 2), st.integers(1, 2), st.data())
def test_symmetric_products_stay_adapted(s, n1, n2, data):
    p = data.draw(st.integers(1, s.dim))
    assert sym_product_degree(s, n1, n2, p).superadditive


def test_forms_are_wedge_compatible_in_dimension_two():
    s = CoverSetup.diagonal((4, 3), (2, INF))
    one = compute_adapted(s, 1, 1)
    two = compute_adapted(s, 1, 2)
    dx, dy = BasisTensor(((0,),)), BasisTensor(((1,),))
    top = two.allowance(BasisTensor(((0, 1),)))
    assert all(a + b <= c for a, b, c in zip(one.allowance(dx), one.allowance(dy), top))


def test_adapted_one_forms_match_log_floor_on_uniformization():
    s = CoverSetup.diagonal((2, 1), (2, 1))
    r = check_inclusions(s, 1, 1)
    assert r.iota_equal


def test_two_tensors_on_uniformization_exceed_log_floor():
    # x = u^2 with multiplicity 2: du.dv / u lies in both defining sheaves
    s = CoverSetup.diagonal((2, 1), (2, 1))
    r = check_inclusions(s, 2, 1)
    assert not r.holds["iota"]
    mixed = BasisTensor(((0,), (1,)))
    assert compute_adapted(s, 2, 1).allowance(mixed) == (1, 0)
    assert membership_oracle(s, 2, 1, mixed, (-1, 0))


def test_functoriality_square_root_example():
    # gamma = z^2 through alpha = z^2 and beta = Id, boundary (1/2){0}
    r = functoriality_check((2,), (1,), (2,), 2, 1)
    assert r.inclusion and r.equal and not r.beta_adapted
    r = functoriality_check((2,), (1,), (2,), 1, 1)
    assert r.inclusion and not r.equal


def test_functoriality_factorization_checked():
    with pytest.raises(FactorizationMismatch):
        functoriality_check((2,), (3,), (2,), 1, 1, gamma_powers=(5,))
    with pytest.raises(FactorizationMismatch):
        functoriality_check((2, 1), (3,), (2,), 1, 1)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(1, 3), min_size=1, max_size=2), st.data())
def test_functoriality_inclusion(alpha, data):
    d = len(alpha)
    beta = data.draw(st.lists(st.integers(1, 4), min_size=d, max_size=d))
    ms = data.draw(st.lists(mults, min_size=d, max_size=d))
    n = data.draw(st.integers(1, 3))
    p = data.draw(st.integers(1, d))
    assert functoriality_check(alpha, beta, ms, n, p).inclusion


@pytest.mark.parametrize("c, m", list(itertools.product(range(1, 6), [1, 2, 3, INF])))
def test_differential_bound_matches_allowances(c, m):
    s = CoverSetup.diagonal((c,), (m,))
    for v in range(1, 12):
        assert differential_is_adapted(s, (v,)) == adapted_differential_bound(s, (v,))


def test_differential_bound_needs_vanishing_on_ramification():
    s = CoverSetup.diagonal((3, 1), (3, 1))
    with pytest.raises(ValueError):
        adapted_differential_bound(s, (0, 2))


@pytest.mark.parametrize("backend", ["python", "compiled"])
def test_backends_agree(backend):
    if backend == "compiled" and kernels.BACKEND != "compiled":
        pytest.skip("compiled kernels not built")
    s = CoverSetup.diagonal((3, 2, 5), (2, INF, 1))
    ref = compute_adapted(s, 2, 1, backend="python")
    assert compute_adapted(s, 2, 1, backend=backend) == ref
    assert oracle_box_scan(s, 2, 1, ref, bound=4, backend=backend) == \
        oracle_box_scan(s, 2, 1, ref, bound=4, backend="python")
