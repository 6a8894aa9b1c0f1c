"""Numerical morphism criteria on divisorially presented data."""

from dataclasses import dataclass, field

from .divisors import INF, CPairBoundary, QDivisor, _as_prime, ext_mul, floor_div
from .errors import InvalidMorphism, MissingCanonicalData, UnknownPrime
from .geometry import DivisorialMorphism, pullback_qdiv

__all__ = [
    "Witness", "MorphismVerdict", "orbifold_morphism", "local_orbifold_morphism",
    "nc_cmorphism", "nc_as_divisorial", "DefectVerdict", "pluricanonical_pullback",
    "compare_boundaries", "DiscrepancyVerdict", "log_canonical_check",
    "BirationalVerdict", "b_birational",
]


@dataclass(frozen=True)
class Witness:
    """A violated inequality ``lhs >= rhs`` at a pair of primes."""

    source: object
    target: object
    lhs: object
    rhs: object


@dataclass(frozen=True)
class MorphismVerdict:
    passed: bool
    witnesses: tuple = ()

    def __post_init__(self):
        if not self.passed:
            assert self.witnesses and all(w.lhs < w.rhs for w in self.witnesses)


def _as_int(value):
    return value if value == INF else int(value)


def _check_boundary(B, primes, side):
    known = set(primes)
    for p in B.support:
        if p not in known:
            raise UnknownPrime(p, f"boundary prime is not a {side} prime")


def orbifold_morphism(phi, B_X, B_Y, image_not_in_boundary=True):
    """Multiplicity criterion ``mult(phi^* T) * m_C(S) >= m_C(T)``.

    Checked for every target prime ``T`` and every source prime ``S`` in the
    support of its pull-back.  A right-hand side of ``inf`` is met only by
    an infinite left-hand side.
    """
    if not image_not_in_boundary:
        raise InvalidMorphism("the image of the source must not lie inside the target boundary")
    _check_boundary(B_X, phi.source_primes, "source")
    _check_boundary(B_Y, phi.target_primes, "target")
    witnesses = []
    for T in phi.target_primes:
        rhs = B_Y.multiplicity(T)
        for S, e in phi.pullback_prime(T).items():
            lhs = _as_int(ext_mul(e, B_X.multiplicity(S)))
            if not lhs >= rhs:
                witnesses.append(Witness(S, T, lhs, rhs))
    witnesses.sort(key=lambda w: (str(w.source), str(w.target)))
    return MorphismVerdict(not witnesses, tuple(witnesses))


def local_orbifold_morphism(phi, B_X, B_Y, target_splits, source_splits, local_pullbacks,
                            image_not_in_boundary=True):
    """The multiplicity criterion after splitting primes into local branches.

    ``target_splits`` and ``source_splits`` map a prime to the list of its
    local components; each component inherits the multiplicity of its
    parent.  ``local_pullbacks`` gives the pull-back of each target
    component on the refined source primes.  The local data must add up to
    the global pull-back.
    """
    def coerce(splits):
        return {_as_prime(P): [_as_prime(c) for c in parts] for P, parts in splits.items()}

    target_splits, source_splits = coerce(target_splits), coerce(source_splits)
    local_pullbacks = {_as_prime(c): D for c, D in local_pullbacks.items()}
    parent = {}
    for P, parts in source_splits.items():
        if P not in phi.source_primes:
            raise UnknownPrime(P, "split of a prime outside the source")
        for c in parts:
            parent[c] = P
    sources = [c for S in phi.source_primes for c in source_splits.get(S, [S])]
    targets = [c for T in phi.target_primes for c in target_splits.get(T, [T])]
    pull = {}
    for T in phi.target_primes:
        if T not in target_splits:
            D = phi.pullback_prime(T)
            if any(S in source_splits for S in D.support):
                raise InvalidMorphism(f"pull-back of unsplit {T} involves a split source prime")
            pull[T] = D
            continue
        total = QDivisor()
        for c in target_splits[T]:
            if c not in local_pullbacks:
                raise InvalidMorphism(f"no local pull-back given for {c}")
            pull[c] = local_pullbacks[c]
            total = total + pull[c]
        # a split source prime is the sum of its branches
        expected = QDivisor()
        for S, v in phi.pullback_prime(T).items():
            for c in source_splits.get(S, [S]):
                expected = expected + QDivisor({c: v})
        if total != expected:
            raise InvalidMorphism(f"local pull-backs of {T} add up to {total}, not {expected}")
    refined = DivisorialMorphism(
        sources, targets, pull,
        exceptional=[c for c in sources if parent.get(c, c) in phi.exceptional],
        name=phi.name)

    def split_boundary(B, splits):
        mult = {}
        for P, m in B.items():
            for c in splits.get(P, [P]):
                mult[c] = m
        return CPairBoundary(mult)

    return orbifold_morphism(refined, split_boundary(B_X, source_splits),
                             split_boundary(B_Y, target_splits), image_not_in_boundary)


def nc_cmorphism(a, n, targets):
    """Normal-form test ``a_i * n >= n_i`` for every target component.

    ``a[i]`` is the vanishing order of the pulled-back equation of the
    ``i``-th target component along the single source component, ``n`` the
    source multiplicity and ``targets[i]`` the target multiplicities.
    """
    if len(a) != len(targets):
        raise ValueError("need one exponent per target component")
    witnesses = []
    for i, (ai, ni) in enumerate(zip(a, targets)):
        if ai < 1:
            raise ValueError("normal-form exponents are positive")
        lhs = _as_int(ext_mul(ai, n))
        if not lhs >= ni:
            witnesses.append(Witness("source", i + 1, lhs, ni))
    return MorphismVerdict(not witnesses, tuple(witnesses))


def nc_as_divisorial(a, n, targets):
    """The same normal-form data as a divisorial morphism and two boundaries."""
    S = "Delta"
    ts = [f"T{i + 1}" for i in range(len(a))]
    phi = DivisorialMorphism([S], ts, {t: QDivisor({S: ai}) for t, ai in zip(ts, a)})
    B_X = CPairBoundary({S: n})
    B_Y = CPairBoundary(dict(zip(ts, targets)))
    return phi, B_X, B_Y


@dataclass(frozen=True)
class DefectVerdict:
    passed: bool
    defect: QDivisor


def _canonical(phi, K_X, K_Y):
    K_X = phi.k_source if K_X is None else K_X
    K_Y = phi.k_target if K_Y is None else K_Y
    if K_X is None or K_Y is None:
        raise MissingCanonicalData("canonical divisors of source and target are required")
    return K_X, K_Y


def pluricanonical_pullback(phi, B_X, B_Y, m, K_X=None, K_Y=None):
    """Defect ``m K_X + floor(m B_X) - phi^*(m K_Y + floor(m B_Y))``.

    The pull-back of pluricanonical forms extends iff the defect is
    effective.
    """
    if m < 1:
        raise ValueError("m must be positive")
    K_X, K_Y = _canonical(phi, K_X, K_Y)
    source = m * K_X + floor_div(m * B_X.as_qdivisor())
    target = m * K_Y + floor_div(m * B_Y.as_qdivisor())
    defect = source - pullback_qdiv(phi, target)
    return DefectVerdict(defect >= QDivisor(), defect)


def compare_boundaries(B1, B2):
    """Whether ``B1 >= B2`` termwise, that is ``Id: (X, B1) -> (X, B2)`` is a morphism."""
    D1, D2 = B1.as_qdivisor(), B2.as_qdivisor()
    witnesses = [
        Witness(p, p, D1.coefficient(p), D2.coefficient(p))
        for p in sorted(D1.support | D2.support)
        if D1.coefficient(p) < D2.coefficient(p)
    ]
    return MorphismVerdict(not witnesses, tuple(witnesses))


@dataclass(frozen=True)
class DiscrepancyVerdict:
    """Discrepancies ``a(E)`` of exceptional primes and the source-boundary defect.

    ``discrepancies[E]`` is the coefficient of ``E`` in
    ``K_X + phi^{-1}_* B_Y - phi^*(K_Y + B_Y)``; ``defect`` is
    ``K_X + B_X - phi^*(K_Y + B_Y)`` when a source boundary is given.
    """

    passed: bool
    discrepancies: dict
    defect: QDivisor | None = field(default=None)


def log_canonical_check(phi, B_Y, B_X=None, K_X=None, K_Y=None):
    """Log canonicity of ``(Y, B_Y)`` read from a resolution ``phi``.

    Passes iff every exceptional discrepancy is at least ``-1``.
    """
    K_X, K_Y = _canonical(phi, K_X, K_Y)
    DY = B_Y.as_qdivisor()
    pulled = pullback_qdiv(phi, K_Y + DY)
    strict = QDivisor()
    for T, c in DY.items():
        strict = strict + c * phi.strict_transform(T)
    rel = K_X + strict - pulled
    disc = {E: rel.coefficient(E) for E in sorted(phi.exceptional)}
    defect = None if B_X is None else K_X + B_X.as_qdivisor() - pulled
    return DiscrepancyVerdict(all(a >= -1 for a in disc.values()), disc, defect)


@dataclass(frozen=True)
class BirationalVerdict:
    passed: bool
    left: QDivisor
    right: QDivisor


def b_birational(alpha, beta, K_Z, B_X, B_Y):
    """Test ``alpha^*(alpha_* K_Z + B_X) == beta^*(beta_* K_Z + B_Y)``."""
    for p in K_Z.support:
        if p not in alpha.source_primes or p not in beta.source_primes:
            raise UnknownPrime(p, "canonical divisor on a prime outside the common model")
    left = pullback_qdiv(alpha, alpha.push_forward(K_Z) + B_X.as_qdivisor())
    right = pullback_qdiv(beta, beta.push_forward(K_Z) + B_Y.as_qdivisor())
    return BirationalVerdict(left == right, left, right)

