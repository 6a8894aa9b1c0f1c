"""Adapted covers, cyclic covers and quotient pairs."""

from dataclasses import dataclass
from math import lcm

from .divisors import INF, CPairBoundary, QDivisor, d_orb, ext_mul
from .errors import InconsistentOrbit, UnknownPrime
from .geometry import MonomialCover, pullback_qdiv

__all__ = [
    "CoverClassification", "classify_cover", "classify_divisorial",
    "CyclicCoverSpec", "cyclic_adapted_cover", "QuotientData", "quotient_pair",
]


@dataclass(frozen=True)
class CoverClassification:
    is_adapted: bool
    is_strongly_adapted: bool
    is_uniformization: bool
    branch_in_support: bool
    pulled_orbifold_divisor: QDivisor
    branch: tuple

    def __post_init__(self):
        assert not self.is_strongly_adapted or self.is_adapted
        assert not self.is_uniformization or (
            self.is_strongly_adapted and self.branch_in_support)


def _check_support(cover, B):
    for prime in B.support:
        cover.target.axis_of(prime)


def classify_cover(cover, B):
    """Classify a monomial cover relative to a boundary on its target.

    The cover is adapted when the pulled-back orbifold divisor is integral,
    strongly adapted when it is moreover reduced, and a uniformization when
    in addition every branch hyperplane lies in the boundary.
    """
    _check_support(cover, B)
    pulled = pullback_qdiv(cover, d_orb(B))
    adapted = pulled.is_integral()
    strong = adapted and pulled.is_reduced()
    branch = tuple(cover.target.hyperplane(j) for j in cover.branch_axes())
    in_support = all(b in B.support for b in branch)
    return CoverClassification(
        is_adapted=adapted,
        is_strongly_adapted=strong,
        is_uniformization=strong and in_support,
        branch_in_support=in_support,
        pulled_orbifold_divisor=pulled,
        branch=branch,
    )


def classify_divisorial(q, B):
    """Adaptedness of a divisorially presented finite map.

    Returns ``(is_adapted, is_strongly_adapted, pulled_orbifold_divisor)``.
    """
    for prime in B.support:
        q.pullback_prime(prime)
    pulled = pullback_qdiv(q, d_orb(B))
    adapted = pulled.is_integral()
    return adapted, adapted and pulled.is_reduced(), pulled


@dataclass(frozen=True)
class CyclicCoverSpec:
    """Degree and per-component exponents of a cyclic adapted cover."""

    degree: int
    exponents: dict

    def local_model(self, chart, B):
        """Diagonal monomial model near the intersection of the components.

        Normalizing ``y^n = prod f_i^(n/m_i)`` locally extracts an
        ``m_i``-th root of each local equation, which is the diagonal map
        with power ``m_i`` on every finite boundary axis.
        """
        powers = [1] * chart.dim
        for prime, m in B.items():
            if m != INF:
                powers[chart.axis_of(prime) - 1] = m
        cover_chart = type(chart)(chart.name + "^", chart.dim, chart.axes)
        return MonomialCover.diagonal(cover_chart, chart, powers)


def cyclic_adapted_cover(B):
    """Degree ``lcm(m_i)`` cyclic cover with exponents ``n / m_i``."""
    finite = B.finite_part()
    n = lcm(*finite.values()) if finite else 1
    return CyclicCoverSpec(n, {p: n // m for p, m in finite.items()})


@dataclass(frozen=True)
class QuotientData:
    """Per quotient prime: ``(ramification, upstairs C-multiplicity, m_H)``.

    ``is_adapted`` and ``is_strongly_adapted`` record whether the quotient
    map is (strongly) adapted for the quotient pair.
    """

    rows: dict
    is_adapted: bool
    is_strongly_adapted: bool


def quotient_pair(B_X, q):
    """Boundary on the quotient with ``m_H = mult_{H'} q*H * m_C(H')``."""
    for prime in B_X.support:
        if prime not in q.source_primes:
            raise UnknownPrime(prime, "boundary prime is not a source prime of the quotient map")
    rows, mult = {}, {}
    for H in q.target_primes:
        values = set()
        detail = None
        for H1, e in q.pullback_prime(H).items():
            m_up = B_X.multiplicity(H1)
            m_H = ext_mul(int(e), m_up)
            m_H = m_H if m_H == INF else int(m_H)
            values.add(m_H)
            detail = detail or (int(e), m_up, m_H)
        if len(values) > 1:
            shown = ", ".join(sorted(map(str, values)))
            raise InconsistentOrbit(f"preimages of {H} give different multiplicities: {shown}")
        rows[H] = detail
        mult[H] = detail[2]
    D_Q = CPairBoundary(mult)
    adapted, strong, _ = classify_divisorial(q, D_Q)
    return D_Q, QuotientData(rows, adapted, strong)
