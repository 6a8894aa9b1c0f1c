"""Exact Weil Q-divisors with standard coefficients.

Coefficients are :class:`fractions.Fraction`.  The symbol ``INF`` is only
legal as a multiplicity, never as a divisor coefficient; a boundary
component with coefficient 1 carries multiplicity ``INF``.
"""

from dataclasses import dataclass
from fractions import Fraction
from math import ceil, floor
from numbers import Rational

from .errors import InfiniteCoefficient, NotStandardCoefficient

__all__ = [
    "INF", "NEG_INF", "ext", "ext_mul", "ext_div", "ext_sub", "format_ext",
    "PrimeDivisor", "QDivisor", "CPairBoundary",
    "floor_div", "ceil_div", "frac_part", "reduce_div",
    "as_cpair", "c_multiplicity", "d_orb", "standard_coefficient",
]


class _Infinity:
    """Signed infinity for multiplicity bookkeeping."""

    __slots__ = ("sign",)

    def __init__(self, sign):
        self.sign = sign

    def __repr__(self):
        return "inf" if self.sign > 0 else "-inf"

    __str__ = __repr__

    def __hash__(self):
        return hash(("inf", self.sign))

    def __eq__(self, other):
        return isinstance(other, _Infinity) and other.sign == self.sign

    def __neg__(self):
        return NEG_INF if self.sign > 0 else INF

    def _cmp(self, other):
        if isinstance(other, _Infinity):
            return (self.sign > other.sign) - (self.sign < other.sign)
        if isinstance(other, (int, Rational)):
            return self.sign
        return NotImplemented

    def __lt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c < 0

    def __le__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c <= 0

    def __gt__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c > 0

    def __ge__(self, other):
        c = self._cmp(other)
        return c if c is NotImplemented else c >= 0

    def __add__(self, other):
        if isinstance(other, _Infinity) and other.sign != self.sign:
            raise ArithmeticError("inf - inf is undefined")
        return self

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        return ext_mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        return ext_div(self, other)

    def __rtruediv__(self, other):
        return ext_div(other, self)


INF = _Infinity(1)
NEG_INF = _Infinity(-1)


def ext(value):
    """Normalize a number or infinity to an extended rational."""
    if isinstance(value, _Infinity):
        return value
    if isinstance(value, str) and value.strip() in ("inf", "∞"):
        return INF
    return Fraction(value)


def ext_mul(a, b):
    """Product with the convention inf * (positive finite) = inf."""
    a_inf, b_inf = isinstance(a, _Infinity), isinstance(b, _Infinity)
    if not a_inf and not b_inf:
        return Fraction(a) * Fraction(b)
    if a_inf and b_inf:
        return INF if a.sign == b.sign else NEG_INF
    inf, fin = (a, b) if a_inf else (b, a)
    if fin == 0:
        raise ArithmeticError("inf * 0 is undefined")
    return inf if fin > 0 else -inf


def ext_div(a, b):
    """Quotient with inf/inf = 1 and finite/inf = 0."""
    a_inf, b_inf = isinstance(a, _Infinity), isinstance(b, _Infinity)
    if a_inf and b_inf:
        return Fraction(a.sign * b.sign)
    if b_inf:
        return Fraction(0)
    if a_inf:
        if b == 0:
            raise ZeroDivisionError("inf / 0")
        return a if b > 0 else -a
    return Fraction(a) / Fraction(b)


def ext_sub(a, b):
    """Difference with inf - finite = inf."""
    if isinstance(a, _Infinity) or isinstance(b, _Infinity):
        return a - b
    return Fraction(a) - Fraction(b)


def format_ext(value):
    """Canonical text form: ``inf``, ``p/q`` or an integer."""
    if isinstance(value, _Infinity):
        return repr(value)
    value = Fraction(value)
    if value.denominator == 1:
        return str(value.numerator)
    return f"{value.numerator}/{value.denominator}"


@dataclass(frozen=True, order=True)
class PrimeDivisor:
    """A prime divisor, either abstract or a coordinate hyperplane.

    For a coordinate hyperplane ``chart`` names the chart and ``axis`` is
    the 1-based index of the vanishing coordinate.
    """

    name: str
    chart: str | None = None
    axis: int | None = None

    @classmethod
    def coordinate(cls, chart, axis):
        return cls(f"{chart}:x{axis}", chart, axis)

    @property
    def is_coordinate(self):
        return self.axis is not None

    def __str__(self):
        return self.name


def _as_prime(p):
    if isinstance(p, PrimeDivisor):
        return p
    return PrimeDivisor(str(p))


class QDivisor:
    """A finite formal sum of primes with exact rational coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms=None):
        clean = {}
        for prime, coeff in dict(terms or {}).items():
            if isinstance(coeff, _Infinity):
                raise InfiniteCoefficient(
                    f"infinite coefficient on {prime}; use a CPairBoundary"
                )
            coeff = Fraction(coeff)
            if coeff:
                prime = _as_prime(prime)
                clean[prime] = clean.get(prime, 0) + coeff
        self._terms = {p: c for p, c in sorted(clean.items()) if c}
        self._hash = None

    @classmethod
    def single(cls, prime, coeff=1):
        return cls({prime: coeff})

    @property
    def terms(self):
        return dict(self._terms)

    @property
    def support(self):
        return frozenset(self._terms)

    def coefficient(self, prime):
        return self._terms.get(_as_prime(prime), Fraction(0))

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms)

    def __len__(self):
        return len(self._terms)

    def __bool__(self):
        return bool(self._terms)

    def __eq__(self, other):
        if isinstance(other, QDivisor):
            return self._terms == other._terms
        if other == 0:
            return not self._terms
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(tuple(self._terms.items()))
        return self._hash

    def __add__(self, other):
        if isinstance(other, int) and other == 0:
            return self
        if not isinstance(other, QDivisor):
            return NotImplemented
        merged = dict(self._terms)
        for p, c in other._terms.items():
            merged[p] = merged.get(p, 0) + c
        return QDivisor(merged)

    __radd__ = __add__

    def __neg__(self):
        return QDivisor({p: -c for p, c in self._terms.items()})

    def __sub__(self, other):
        if not isinstance(other, QDivisor):
            return NotImplemented
        return self + (-other)

    def __mul__(self, scalar):
        if isinstance(scalar, (QDivisor, _Infinity)):
            return NotImplemented
        scalar = Fraction(scalar)
        return QDivisor({p: scalar * c for p, c in self._terms.items()})

    __rmul__ = __mul__

    def _pairs(self, other):
        for p in self.support | other.support:
            yield self.coefficient(p), other.coefficient(p)

    def __le__(self, other):
        return all(a <= b for a, b in self._pairs(other))

    def __ge__(self, other):
        return all(a >= b for a, b in self._pairs(other))

    def is_effective(self):
        return all(c > 0 for c in self._terms.values())

    def is_integral(self):
        return all(c.denominator == 1 for c in self._terms.values())

    def is_reduced(self):
        return all(c == 1 for c in self._terms.values())

    def map_coefficients(self, fn):
        return QDivisor({p: fn(c) for p, c in self._terms.items()})

    def restrict(self, primes):
        keep = set(primes)
        return QDivisor({p: c for p, c in self._terms.items() if p in keep})

    def __repr__(self):
        return f"QDivisor({self})"

    def __str__(self):
        if not self._terms:
            return "0"
        return " + ".join(f"{format_ext(c)}*{p}" for p, c in self._terms.items())


def floor_div(D):
    """Round each coefficient down."""
    return D.map_coefficients(lambda c: Fraction(floor(c)))


def ceil_div(D):
    """Round each coefficient up."""
    return D.map_coefficients(lambda c: Fraction(ceil(c)))


def frac_part(D):
    """The fractional part ``D - floor(D)``."""
    return D.map_coefficients(lambda c: c - floor(c))


def reduce_div(D):
    """Set every nonzero coefficient to one."""
    return D.map_coefficients(lambda c: Fraction(1))


def standard_coefficient(m):
    """Coefficient ``(m-1)/m`` attached to a multiplicity; 1 for ``INF``."""
    if m == INF:
        return Fraction(1)
    return Fraction(m - 1, m)


def _check_multiplicity(prime, m):
    if isinstance(m, _Infinity):
        if m.sign < 0:
            raise NotStandardCoefficient(prime, m)
        return m
    if isinstance(m, Fraction):
        if m.denominator != 1:
            raise NotStandardCoefficient(prime, m)
        m = m.numerator
    if not isinstance(m, int) or isinstance(m, bool) or m < 1:
        raise NotStandardCoefficient(prime, m)
    return m


class CPairBoundary:
    """Boundary of a C-pair as a map from primes to multiplicities.

    Multiplicity 1 is the implicit default and is not stored.
    """

    __slots__ = ("_mult",)

    def __init__(self, multiplicities=None):
        mult = {}
        for prime, m in dict(multiplicities or {}).items():
            prime = _as_prime(prime)
            m = _check_multiplicity(prime, ext(m) if isinstance(m, str) else m)
            if m != 1:
                mult[prime] = m
        self._mult = dict(sorted(mult.items()))

    @property
    def multiplicities(self):
        return dict(self._mult)

    @property
    def support(self):
        return frozenset(self._mult)

    def items(self):
        return self._mult.items()

    def multiplicity(self, prime):
        return self._mult.get(_as_prime(prime), 1)

    def as_qdivisor(self):
        return QDivisor({p: standard_coefficient(m) for p, m in self._mult.items()})

    def finite_part(self):
        return {p: m for p, m in self._mult.items() if m != INF}

    def infinite_part(self):
        return [p for p, m in self._mult.items() if m == INF]

    def __eq__(self, other):
        if not isinstance(other, CPairBoundary):
            return NotImplemented
        return self._mult == other._mult

    def __hash__(self):
        return hash(tuple(self._mult.items()))

    def __len__(self):
        return len(self._mult)

    def __bool__(self):
        return bool(self._mult)

    def __repr__(self):
        inner = ", ".join(f"{p}: {format_ext(m)}" for p, m in self._mult.items())
        return f"CPairBoundary({{{inner}}})"


def as_cpair(D):
    """Read a Q-divisor as a C-pair boundary.

    >>> as_cpair(QDivisor({"D1": Fraction(1, 2), "D3": 1})).multiplicities
    {PrimeDivisor(name='D1', chart=None, axis=None): 2, PrimeDivisor(name='D3', chart=None, axis=None): inf}
    """
    mult = {}
    for prime, c in D.items():
        if c == 1:
            mult[prime] = INF
            continue
        if not 0 < c < 1:
            raise NotStandardCoefficient(prime, c)
        m = 1 / (1 - c)
        if m.denominator != 1:
            raise NotStandardCoefficient(prime, c)
        mult[prime] = m.numerator
    return CPairBoundary(mult)


def c_multiplicity(B, H):
    """C-multiplicity of the boundary along ``H``; 1 off the boundary."""
    return B.multiplicity(H)


def d_orb(B):
    """The divisor sum of ``(1/m) D_i`` over finite multiplicities."""
    return QDivisor({p: Fraction(1, m) for p, m in B.items() if m != INF})
