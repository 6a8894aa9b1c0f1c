"""Charts, monomial maps and divisorially presented morphisms."""

from dataclasses import dataclass

from .divisors import CPairBoundary, PrimeDivisor, QDivisor, _as_prime
from .errors import (
    AxisOutOfRange,
    ChartMismatch,
    InvalidMorphism,
    UnknownPrime,
)

__all__ = [
    "Chart", "MonomialCover", "DivisorialMorphism",
    "pullback_qdiv", "compose", "restrict_pair", "determinant",
]


@dataclass(frozen=True)
class Chart:
    """Affine space with named coordinates."""

    name: str
    dim: int
    axes: tuple = ()

    def __post_init__(self):
        if not isinstance(self.dim, int) or self.dim < 1:
            raise ValueError(f"chart {self.name}: dimension must be >= 1")
        axes = tuple(self.axes) or tuple(f"x{i}" for i in range(1, self.dim + 1))
        if len(axes) != self.dim:
            raise ValueError(f"chart {self.name}: {len(axes)} axis names for dim {self.dim}")
        if len(set(axes)) != len(axes):
            raise ValueError(f"chart {self.name}: axis names must be unique")
        object.__setattr__(self, "axes", axes)

    def hyperplane(self, axis):
        """The coordinate hyperplane ``{x_axis = 0}``; ``axis`` is 1-based."""
        if not 1 <= axis <= self.dim:
            raise AxisOutOfRange(f"axis {axis} out of range for {self.name} (dim {self.dim})")
        return PrimeDivisor(f"{self.name}:{self.axes[axis - 1]}", self.name, axis)

    def hyperplanes(self):
        return [self.hyperplane(i) for i in range(1, self.dim + 1)]

    def axis_of(self, prime):
        """1-based axis of a coordinate prime on this chart."""
        if prime.chart != self.name or prime.axis is None:
            raise UnknownPrime(prime, f"not a coordinate hyperplane of {self.name}")
        if not 1 <= prime.axis <= self.dim:
            raise AxisOutOfRange(f"{prime}: axis {prime.axis} out of range")
        return prime.axis


def determinant(matrix):
    """Exact determinant of a square integer matrix (Bareiss elimination)."""
    a = [list(map(int, row)) for row in matrix]
    n = len(a)
    sign, prev = 1, 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for r in range(k + 1, n):
                if a[r][k]:
                    a[k], a[r] = a[r], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
        prev = a[k][k]
    return sign * a[n - 1][n - 1] if n else 1


class MonomialCover:
    """A monomial map ``y_j = prod_i x_i ** e[i][j]`` from source to target.

    Row ``i`` of the exponent matrix belongs to the source coordinate
    ``x_i``; column ``j`` to the target coordinate ``y_j``, so that the
    hyperplane ``{y_j = 0}`` pulls back to ``sum_i e[i][j] {x_i = 0}``.
    """

    __slots__ = ("source", "target", "exponents", "name")

    def __init__(self, source, target, exponents, name=None):
        if source.dim != target.dim:
            raise ChartMismatch(
                f"monomial map needs equal dimensions, got {source.dim} and {target.dim}"
            )
        rows = tuple(tuple(int(v) for v in row) for row in exponents)
        d = source.dim
        if len(rows) != d or any(len(r) != d for r in rows):
            raise ValueError(f"exponent matrix must be {d}x{d}")
        if any(v < 0 for r in rows for v in r):
            raise ValueError("negative exponents describe rational maps, not morphisms")
        if determinant(rows) == 0:
            raise ValueError("exponent matrix is singular; the map is not quasi-finite")
        self.source = source
        self.target = target
        self.exponents = rows
        self.name = name

    @classmethod
    def identity(cls, chart):
        d = chart.dim
        return cls(chart, chart, [[int(i == j) for j in range(d)] for i in range(d)])

    @classmethod
    def diagonal(cls, source, target, powers):
        d = len(powers)
        return cls(source, target, [[powers[i] if i == j else 0 for j in range(d)] for i in range(d)])

    @property
    def dim(self):
        return self.source.dim

    def is_diagonal(self):
        return all(
            v == 0 for i, row in enumerate(self.exponents) for j, v in enumerate(row) if i != j
        )

    def diagonal_powers(self):
        return tuple(self.exponents[i][i] for i in range(self.dim))

    def degree(self):
        return abs(determinant(self.exponents))

    def column(self, j):
        return tuple(row[j] for row in self.exponents)

    def pullback_prime(self, prime):
        j = self.target.axis_of(prime) - 1
        return QDivisor({
            self.source.hyperplane(i + 1): e for i, e in enumerate(self.column(j)) if e
        })

    def jacobian_orders(self):
        """Vanishing order of the Jacobian along each source hyperplane."""
        return tuple(sum(row) - 1 for row in self.exponents)

    def ramification_axes(self):
        return tuple(i + 1 for i, o in enumerate(self.jacobian_orders()) if o > 0)

    def branch_axes(self):
        """Target axes whose hyperplane is the image of a ramified hyperplane.

        A source hyperplane whose row has several nonzero entries maps to a
        locus of codimension at least two and is not counted.
        """
        out = set()
        for row in self.exponents:
            nonzero = [j for j, v in enumerate(row) if v]
            if len(nonzero) == 1 and row[nonzero[0]] >= 2:
                out.add(nonzero[0] + 1)
        return tuple(sorted(out))

    def as_divisorial(self):
        pull = {p: self.pullback_prime(p) for p in self.target.hyperplanes()}
        return DivisorialMorphism(
            self.source.hyperplanes(), self.target.hyperplanes(), pull, name=self.name
        )

    def __eq__(self, other):
        if not isinstance(other, MonomialCover):
            return NotImplemented
        return (self.source, self.target, self.exponents) == (
            other.source, other.target, other.exponents)

    def __hash__(self):
        return hash((self.source, self.target, self.exponents))

    def __repr__(self):
        return f"MonomialCover({self.source.name} -> {self.target.name}, {list(map(list, self.exponents))})"


@dataclass(frozen=True)
class DivisorialMorphism:
    """A morphism known through pull-back multiplicities of primes.

    ``pullback`` sends each target prime to an effective integral divisor on
    source primes.  ``exceptional`` lists source primes that dominate no
    target prime.  ``k_source``/``k_target`` optionally carry canonical
    divisors on either side.
    """

    source_primes: tuple
    target_primes: tuple
    pullback: dict
    exceptional: frozenset = frozenset()
    k_source: QDivisor | None = None
    k_target: QDivisor | None = None
    name: str | None = None

    def __post_init__(self):
        src = tuple(dict.fromkeys(map(_as_prime, self.source_primes)))
        tgt = tuple(dict.fromkeys(map(_as_prime, self.target_primes)))
        object.__setattr__(self, "source_primes", src)
        object.__setattr__(self, "target_primes", tgt)
        object.__setattr__(self, "exceptional", frozenset(map(_as_prime, self.exceptional)))
        src_set = set(src)
        for e in self.exceptional:
            if e not in src_set:
                raise UnknownPrime(e, "exceptional prime is not a source prime")
        pull = {}
        for t, D in self.pullback.items():
            t = _as_prime(t)
            if t not in tgt:
                raise UnknownPrime(t, "pull-back given for a prime outside the target")
            if not D:
                raise InvalidMorphism(f"pull-back of {t} is zero")
            for s, c in D.items():
                if s not in src_set:
                    raise UnknownPrime(s, "pull-back mentions a prime outside the source")
                if c.denominator != 1 or c < 0:
                    raise InvalidMorphism(
                        f"pull-back multiplicity {c} of {s} in {t} is not a non-negative integer"
                    )
            pull[t] = D
        missing = [t for t in tgt if t not in pull]
        if missing:
            raise InvalidMorphism(f"no pull-back given for {', '.join(map(str, missing))}")
        object.__setattr__(self, "pullback", pull)
        for K in (self.k_source, self.k_target):
            if K is not None and not isinstance(K, QDivisor):
                raise TypeError("canonical data must be a QDivisor")

    @classmethod
    def identity(cls, primes, k=None, name=None):
        primes = tuple(primes)
        return cls(primes, primes, {p: QDivisor.single(p) for p in primes},
                   k_source=k, k_target=k, name=name)

    def strict_transform(self, target_prime):
        """Non-exceptional part of the pull-back of a target prime."""
        D = self.pullback_prime(target_prime)
        return QDivisor({s: c for s, c in D.items() if s not in self.exceptional})

    def pullback_prime(self, prime):
        try:
            return self.pullback[_as_prime(prime)]
        except KeyError:
            raise UnknownPrime(prime, f"not a target prime of {self.name or 'morphism'}") from None

    def push_forward(self, D):
        """Push a source divisor forward, dropping exceptional primes.

        Only defined for birational presentations in which each
        non-exceptional source prime is the strict transform of exactly
        one target prime with multiplicity one.
        """
        image = {}
        for t in self.target_primes:
            for s, c in self.strict_transform(t).items():
                if c != 1 or s in image:
                    raise InvalidMorphism(f"{s} is not a birational strict transform")
                image[s] = t
        out = {}
        for s, c in D.items():
            if s in self.exceptional:
                continue
            if s not in image:
                raise UnknownPrime(s, "source prime with no image prime")
            out[image[s]] = out.get(image[s], 0) + c
        return QDivisor(out)


def pullback_qdiv(f, D):
    """Q-linear pull-back of a divisor along a monomial or divisorial map."""
    total = QDivisor()
    for prime, c in D.items():
        total = total + c * f.pullback_prime(prime)
    return total


def compose(f, g):
    """The composite ``g o f``: first ``f``, then ``g``.

    Exponent matrices multiply as ``F @ G`` so that pull-back along the
    composite is pull-back along ``g`` followed by pull-back along ``f``.
    """
    if f.target != g.source:
        raise ChartMismatch(f"cannot compose: {f.target.name} is not {g.source.name}")
    F, G = f.exponents, g.exponents
    d = len(F)
    prod = [[sum(F[i][k] * G[k][j] for k in range(d)) for j in range(d)] for i in range(d)]
    return MonomialCover(f.source, g.target, prod)


def restrict_pair(chart, boundary, axis):
    """Restrict a coordinate-hyperplane pair to the hyperplane ``{x_axis = 0}``.

    If that hyperplane is itself a boundary component it is removed first.
    Returns the restricted chart and boundary.
    """
    if not 1 <= axis <= chart.dim:
        raise AxisOutOfRange(f"axis {axis} out of range for {chart.name} (dim {chart.dim})")
    if chart.dim == 1:
        raise AxisOutOfRange("cannot restrict a one-dimensional chart to a point")
    kept = [a for i, a in enumerate(chart.axes, start=1) if i != axis]
    small = Chart(f"{chart.name}|{chart.axes[axis - 1]}=0", chart.dim - 1, tuple(kept))
    mult = {}
    for prime, m in boundary.items():
        j = chart.axis_of(prime)
        if j == axis:
            continue
        mult[small.hyperplane(j if j < axis else j - 1)] = m
    return small, CPairBoundary(mult)
