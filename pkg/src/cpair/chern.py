"""Truncated graded rings of symbolic classes and total C-Chern classes."""

from fractions import Fraction

from .divisors import INF, format_ext, standard_coefficient
from .errors import TruncationOverflow

__all__ = ["GradedClass", "structure_sheaf_class", "total_c_chern", "cotangent_class"]


def _mono_mul(a, b):
    exps = dict(a)
    for s, e in b:
        exps[s] = exps.get(s, 0) + e
    return tuple(sorted(exps.items()))


class GradedClass:
    """A polynomial in symbols of positive weight, truncated above ``dim``.

    Monomials are tuples of ``(symbol, exponent)`` pairs; ``weights`` maps
    each symbol to its degree (default 1).
    """

    __slots__ = ("dim", "weights", "terms")

    def __init__(self, terms, dim, weights=None):
        self.dim = dim
        self.weights = dict(weights or {})
        clean = {}
        for mono, c in dict(terms).items():
            mono = tuple(sorted((s, e) for s, e in mono if e))
            c = Fraction(c)
            if c and self.degree_of(mono) <= dim:
                clean[mono] = clean.get(mono, 0) + c
        self.terms = {m: c for m, c in sorted(clean.items(), key=self._order) if c}

    def _order(self, item):
        return (self.degree_of(item[0]), item[0])

    def degree_of(self, mono):
        total = 0
        for s, e in mono:
            w = self.weights.get(s, 1)
            if w < 1:
                raise TruncationOverflow(f"symbol {s} has non-positive weight {w}")
            total += w * e
        return total

    @classmethod
    def constant(cls, value, dim, weights=None):
        return cls({(): value}, dim, weights)

    @classmethod
    def symbol(cls, name, dim, weight=1, weights=None):
        w = dict(weights or {})
        w[name] = weight
        return cls({((name, 1),): 1}, dim, w)

    def _coerce(self, other):
        if isinstance(other, GradedClass):
            if other.dim != self.dim:
                raise TruncationOverflow(f"cannot combine classes truncated at {self.dim} and {other.dim}")
            for s, w in other.weights.items():
                if self.weights.get(s, w) != w:
                    raise TruncationOverflow(f"symbol {s} carries two different weights")
            return other
        return GradedClass.constant(other, self.dim, self.weights)

    def _merged_weights(self, other):
        w = dict(self.weights)
        w.update(other.weights)
        return w

    def __add__(self, other):
        other = self._coerce(other)
        terms = dict(self.terms)
        for m, c in other.terms.items():
            terms[m] = terms.get(m, 0) + c
        return GradedClass(terms, self.dim, self._merged_weights(other))

    __radd__ = __add__

    def __neg__(self):
        return GradedClass({m: -c for m, c in self.terms.items()}, self.dim, self.weights)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = self._coerce(other)
        weights = self._merged_weights(other)
        out = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return GradedClass(out, self.dim, weights)

    __rmul__ = __mul__

    def __pow__(self, k):
        out = GradedClass.constant(1, self.dim, self.weights)
        for _ in range(k):
            out = out * self
        return out

    def __eq__(self, other):
        if isinstance(other, GradedClass):
            return self.dim == other.dim and self.terms == other.terms
        return self == self._coerce(other)

    def __hash__(self):
        return hash((self.dim, tuple(self.terms.items())))

    def part(self, degree):
        """Homogeneous component of the given degree."""
        return GradedClass(
            {m: c for m, c in self.terms.items() if self.degree_of(m) == degree},
            self.dim, self.weights)

    def constant_term(self):
        return self.terms.get((), Fraction(0))

    def inverse(self):
        """Multiplicative inverse; the constant term must be nonzero."""
        c0 = self.constant_term()
        if not c0:
            raise ZeroDivisionError("class with zero constant term is not invertible")
        x = (self - c0) * Fraction(1, c0)
        out = GradedClass.constant(1, self.dim, self.weights)
        power = out
        for k in range(1, self.dim + 1):
            power = power * x
            out = out + power * (-1) ** k
        return out * Fraction(1, c0)

    def __repr__(self):
        return f"GradedClass({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        for mono, c in self.terms.items():
            name = "*".join(s if e == 1 else f"{s}^{e}" for s, e in mono)
            if not name:
                parts.append(format_ext(c))
            elif c == 1:
                parts.append(name)
            else:
                parts.append(f"{format_ext(c)}*{name}")
        return " + ".join(parts)


def cotangent_class(dim, prefix="c"):
    """Generic total Chern class ``1 + c1 + ... + c_dim`` with ``c_i`` of weight ``i``."""
    weights = {f"{prefix}{i}": i for i in range(1, dim + 1)}
    terms = {(): 1}
    for i in range(1, dim + 1):
        terms[((f"{prefix}{i}", 1),)] = 1
    return GradedClass(terms, dim, weights)


def structure_sheaf_class(symbol, dim, weights=None):
    """``c(O_D) = c(O(-D))^{-1} = (1 - D)^{-1}``, truncated."""
    D = GradedClass.symbol(symbol, dim, weights=weights)
    return (1 - D).inverse()


def total_c_chern(c_omega, components, structure=None):
    """``c(Omega^1_X) * prod((m-1)/m * c(O_{D_i}) + 1/m)``.

    ``components`` is a list of ``(symbol, m)``; ``structure`` optionally
    maps a symbol to its class ``c(O_{D_i})``.
    """
    out = c_omega
    for symbol, m in components:
        cO = (structure or {}).get(symbol)
        if cO is None:
            cO = structure_sheaf_class(symbol, c_omega.dim, c_omega.weights)
        inv = 0 if m == INF else Fraction(1, m)
        out = out * (cO * standard_coefficient(m) + inv)
    return out
