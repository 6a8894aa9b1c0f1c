"""Adapted tensor sheaves on diagonal monomial covers.

Let ``gamma : Xh -> X`` be a monomial cover of coordinate charts and let
``D`` be a boundary supported on coordinate hyperplanes of ``X``.  For a
diagonal cover ``x_i = y_i ** c_i`` every sheaf in sight is a direct sum of
line bundles ``O(a(t)) . t`` over the monomial basis tensors ``t`` of
``Sym^n Omega^p``, so a sheaf is recorded by its pole allowances ``a(t)``:
``y^e . t`` is a section iff ``e_i >= -a_i(t)`` for every axis ``i``.
"""

from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, combinations_with_replacement
from math import comb

from . import kernels
from .divisors import (
    INF, CPairBoundary, QDivisor, ceil_div, d_orb, ext_div, floor_div, frac_part,
)
from .errors import DegreeOutOfRange, EnumerationLimitExceeded, FactorizationMismatch, NonDiagonalCover
from .geometry import Chart, MonomialCover, determinant, pullback_qdiv

__all__ = [
    "DEFAULT_MAX_TENSORS", "BasisTensor", "basis_tensors", "CoverSetup",
    "PoleAllowanceSheaf", "compute_adapted", "reference_sheaf", "residue_kernel_p1",
    "membership_oracle", "oracle_thresholds", "oracle_box_scan",
    "InclusionReport", "check_inclusions", "SymProductReport", "sym_product_degree",
    "FunctorialityReport", "functoriality_check",
    "differential_is_adapted", "adapted_differential_bound",
]

DEFAULT_MAX_TENSORS = 100_000


@dataclass(frozen=True, order=True)
class BasisTensor:
    """A monomial basis tensor of ``Sym^n Omega^p``.

    ``blocks`` is a sorted multiset of ``n`` sorted ``p``-subsets of the
    0-based axes; each block stands for a wedge ``dx_I``.
    """

    blocks: tuple

    def __post_init__(self):
        blocks = tuple(sorted(tuple(sorted(b)) for b in self.blocks))
        if not blocks:
            raise ValueError("a basis tensor needs at least one block")
        p = len(blocks[0])
        for b in blocks:
            if len(b) != p or len(set(b)) != p or p == 0:
                raise ValueError(f"blocks must be {p}-subsets of distinct axes: {blocks}")
        object.__setattr__(self, "blocks", blocks)

    @property
    def n(self):
        return len(self.blocks)

    @property
    def p(self):
        return len(self.blocks[0])

    def counts(self, dim):
        """Number of blocks containing each axis."""
        out = [0] * dim
        for b in self.blocks:
            for i in b:
                out[i] += 1
        return tuple(out)

    def __mul__(self, other):
        if not isinstance(other, BasisTensor):
            return NotImplemented
        return BasisTensor(self.blocks + other.blocks)

    def render(self, axes):
        return "*".join("^".join(f"d{axes[i]}" for i in b) for b in self.blocks)


def tensor_count(dim, n, p):
    return comb(comb(dim, p) + n - 1, n)


def basis_tensors(dim, n, p, max_tensors=None):
    """All basis tensors of ``Sym^n Omega^p`` in dimension ``dim``."""
    if n < 1 or not 1 <= p <= dim:
        raise DegreeOutOfRange(f"need n >= 1 and 1 <= p <= {dim}, got n={n}, p={p}")
    limit = DEFAULT_MAX_TENSORS if max_tensors is None else max_tensors
    count = tensor_count(dim, n, p)
    if count > limit:
        raise EnumerationLimitExceeded(
            f"{count} basis tensors for (n, p) = ({n}, {p}) in dimension {dim} exceeds the cap {limit}"
        )
    return [BasisTensor(c) for c in combinations_with_replacement(combinations(range(dim), p), n)]


def _kind(m):
    if m == INF:
        return kernels.LOG
    return kernels.OFF if m == 1 else kernels.FINITE


class CoverSetup:
    """A monomial cover together with a coordinate boundary on its target."""

    __slots__ = ("cover", "boundary", "_mults", "__weakref__")

    def __init__(self, cover, boundary):
        for prime in boundary.support:
            cover.target.axis_of(prime)
        self.cover = cover
        self.boundary = boundary
        self._mults = tuple(boundary.multiplicity(h) for h in cover.target.hyperplanes())

    @classmethod
    def diagonal(cls, powers, mults, axes=None):
        """Diagonal cover ``x_i = y_i ** powers[i]`` with multiplicity ``mults[i]``
        along ``{x_i = 0}`` (1 off the boundary)."""
        d = len(powers)
        if len(mults) != d:
            raise ValueError("powers and multiplicities must have equal length")
        axes = tuple(axes) if axes else None
        base = Chart("X", d, axes or ())
        upstairs = Chart("Xh", d, axes or ())
        cover = MonomialCover.diagonal(upstairs, base, list(powers))
        boundary = CPairBoundary({base.hyperplane(i + 1): m for i, m in enumerate(mults)})
        return cls(cover, boundary)

    @property
    def dim(self):
        return self.cover.dim

    @property
    def mults(self):
        return self._mults

    @property
    def axes(self):
        return self.cover.source.axes

    def is_diagonal(self):
        return self.cover.is_diagonal()

    @property
    def powers(self):
        if not self.cover.is_diagonal():
            raise NonDiagonalCover("closed-form allowances need a diagonal cover")
        return self.cover.diagonal_powers()

    def key(self):
        return (self.cover.exponents, self._mults)

    def __eq__(self, other):
        return isinstance(other, CoverSetup) and self.key() == other.key()

    def __hash__(self):
        return hash(self.key())

    def __repr__(self):
        mults = ", ".join(str(m) for m in self._mults)
        return f"CoverSetup({list(map(list, self.cover.exponents))}, mults=({mults}))"

    def _upstairs_vector(self, D):
        return tuple(D.coefficient(h) for h in self.cover.source.hyperplanes())

    def twist(self, n):
        """Coefficients of ``floor(n * gamma^* {D})`` on the cover axes."""
        D = n * pullback_qdiv(self.cover, frac_part(self.boundary.as_qdivisor()))
        return tuple(int(v) for v in self._upstairs_vector(floor_div(D)))

    def upstairs_support(self):
        """Cover axes lying in the support of ``gamma^* D``."""
        pulled = pullback_qdiv(self.cover, self.boundary.as_qdivisor())
        return tuple(bool(v) for v in self._upstairs_vector(pulled))

    def upstairs_log_support(self):
        """Cover axes lying in the support of ``gamma^* floor(D)``."""
        pulled = pullback_qdiv(self.cover, floor_div(self.boundary.as_qdivisor()))
        return tuple(bool(v) for v in self._upstairs_vector(pulled))

    def residue_orders(self):
        """Coefficients of ``ceil(gamma^* D_orb)`` on the cover axes."""
        return tuple(int(v) for v in self._upstairs_vector(
            ceil_div(pullback_qdiv(self.cover, d_orb(self.boundary)))))

    def kinds(self):
        return tuple(_kind(m) for m in self._mults)


@dataclass(frozen=True)
class PoleAllowanceSheaf:
    """Pole allowances ``a(t)`` per basis tensor for fixed ``(n, p)``."""

    dim: int
    n: int
    p: int
    allowances: dict
    axes: tuple = field(default=(), compare=False)

    def allowance(self, t):
        return self.allowances[t]

    @property
    def tensors(self):
        return tuple(self.allowances)

    def _zip(self, other):
        if self.allowances.keys() != other.allowances.keys():
            raise ValueError("sheaves of different shape cannot be compared")
        for t, a in self.allowances.items():
            yield t, a, other.allowances[t]

    def __le__(self, other):
        return all(x <= y for _, a, b in self._zip(other) for x, y in zip(a, b))

    def __ge__(self, other):
        return other <= self

    def differences(self, other):
        """Tensors on which the two allowance vectors differ."""
        return [(t, a, b) for t, a, b in self._zip(other) if a != b]

    def generators(self):
        """Pairs ``(exponent vector, tensor)`` of free generators ``y^e . t``."""
        return [(tuple(-v for v in a), t) for t, a in self.allowances.items()]

    def generator_strings(self):
        axes = self.axes or tuple(f"x{i}" for i in range(1, self.dim + 1))
        out = []
        for e, t in self.generators():
            mono = " ".join(f"{axes[i]}^{v}" for i, v in enumerate(e) if v)
            out.append(f"{mono} {t.render(axes)}" if mono else t.render(axes))
        return out

    def pullback(self, powers):
        """Allowances of the pull-back along a diagonal map ``y_i = x_i ** c_i``."""
        out = {}
        for t, a in self.allowances.items():
            k = t.counts(self.dim)
            out[t] = tuple(ai * c - (c - 1) * ki for ai, c, ki in zip(a, powers, k))
        return PoleAllowanceSheaf(self.dim, self.n, self.p, out, self.axes)


def _check_degrees(s, n, p):
    if n < 1 or not 1 <= p <= s.dim:
        raise DegreeOutOfRange(f"need n >= 1 and 1 <= p <= {s.dim}, got n={n}, p={p}")


def compute_adapted(s, n, p, max_tensors=None, backend=None):
    """Closed-form allowances of ``Sym^n_C Omega^p`` for a diagonal setup.

    Along an axis with block count ``k``, power ``c`` and twist
    ``F = floor(n c (m-1)/m)`` the allowance is ``min(F - (c-1) k, k)`` on a
    finite boundary axis, ``k`` on a logarithmic axis and ``-(c-1) k`` off
    the boundary.
    """
    _check_degrees(s, n, p)
    powers = s.powers
    tensors = basis_tensors(s.dim, n, p, max_tensors)
    table = kernels.allowance_table(
        [t.counts(s.dim) for t in tensors], powers, s.twist(n), s.kinds(), backend=backend)
    return PoleAllowanceSheaf(s.dim, n, p, dict(zip(tensors, table)), s.axes)


REFERENCE_SHEAVES = ("pullback", "sym", "pullback-log", "log", "log-floor", "twisted")


def reference_sheaf(s, n, p, which, max_tensors=None):
    """The comparison sheaves around ``Sym^n_C Omega^p``.

    ``pullback``      gamma^* Sym^n Omega^p_X
    ``sym``           Sym^n of the adapted p-forms
    ``pullback-log``  gamma^* Sym^n Omega^p_X(log D)
    ``log``           Sym^n Omega^p(log gamma^* D)
    ``log-floor``     Sym^n Omega^p(log gamma^* floor(D))
    ``twisted``       O(floor(n gamma^* {D})) (x) gamma^* Sym^n Omega^p_X(log floor(D)),
                      the first of the two sheaves whose intersection is adapted
    """
    _check_degrees(s, n, p)
    powers, d = s.powers, s.dim
    tensors = basis_tensors(d, n, p, max_tensors)
    support = s.upstairs_support()
    log_support = s.upstairs_log_support()
    twist, kinds = s.twist(n), s.kinds()
    if which == "sym":
        forms = compute_adapted(s, 1, p, max_tensors)
        table = {}
        for t in tensors:
            parts = [forms.allowance(BasisTensor((b,))) for b in t.blocks]
            table[t] = tuple(sum(col) for col in zip(*parts))
        return PoleAllowanceSheaf(d, n, p, table, s.axes)
    table = {}
    for t in tensors:
        k = t.counts(d)
        if which == "pullback":
            row = tuple(-(c - 1) * ki for c, ki in zip(powers, k))
        elif which == "pullback-log":
            row = tuple(ki if on else -(c - 1) * ki for c, ki, on in zip(powers, k, support))
        elif which == "log":
            row = tuple(ki if on else 0 for ki, on in zip(k, support))
        elif which == "log-floor":
            row = tuple(ki if on else 0 for ki, on in zip(k, log_support))
        elif which == "twisted":
            row = tuple(ki if kind == kernels.LOG else f - (c - 1) * ki
                        for ki, c, f, kind in zip(k, powers, twist, kinds))
        else:
            raise ValueError(f"unknown reference sheaf {which!r}")
        table[t] = row
    return PoleAllowanceSheaf(d, n, p, table, s.axes)


def residue_kernel_p1(s, n=1, p=1):
    """Adapted 1-forms as the kernel of the pulled-back residue map.

    Start from ``gamma^* Omega^1(log D)`` and impose vanishing of order
    ``ceil(gamma^* D_i / m_i)`` on the logarithmic coefficient along each
    finite boundary component.
    """
    if (n, p) != (1, 1):
        raise DegreeOutOfRange("the residue description covers (n, p) = (1, 1) only")
    powers, d = s.powers, s.dim
    support = s.upstairs_support()
    orders = s.residue_orders()
    table = {}
    for i in range(d):
        row = [0] * d
        row[i] = 1 - orders[i] if support[i] else 1 - powers[i]
        table[BasisTensor(((i,),))] = tuple(row)
    return PoleAllowanceSheaf(d, 1, 1, table, s.axes)


# Oracle: generators of the A and B sheaves by direct substitution.
#
# Work in the logarithmic frame: a tensor y^w (dlog y)^T has weight w.  The
# pull-back of dlog x_j is sum_i e_ij dlog y_i and the pull-back of x_j is
# y^(column j), so generators are homogeneous.  A homogeneous element of
# weight w lies in the module generated by g_1, ... iff its vector lies in
# the span of the generator vectors of weight <= w.


def _wedge_pullback(exponents, block, p):
    d = len(exponents)
    out = {}
    for rows in combinations(range(d), p):
        det = determinant([[exponents[i][j] for j in block] for i in rows])
        if det:
            out[rows] = det
    return out


def _sym_product(factors):
    acc = {(): 1}
    for f in factors:
        nxt = {}
        for key, c in acc.items():
            for block, v in f.items():
                k2 = tuple(sorted(key + (block,)))
                nxt[k2] = nxt.get(k2, 0) + c * v
        acc = {k: v for k, v in nxt.items() if v}
    return acc


@dataclass
class _OracleData:
    dim: int
    a_gens: list
    b_gens: list
    span_cache: dict = field(default_factory=dict)


@lru_cache(maxsize=4096)
def _oracle_data(s, n, p):
    E = s.cover.exponents
    d = s.dim
    F = s.twist(n)
    a_gens = []
    for S in basis_tensors(d, n, p, None):
        k = S.counts(d)
        b = [0 if m == INF else kj for m, kj in zip(s.mults, k)]
        w = tuple(sum(E[i][j] * b[j] for j in range(d)) - F[i] for i in range(d))
        vec = _sym_product(_wedge_pullback(E, blk, p) for blk in S.blocks)
        a_gens.append((w, {BasisTensor(key): v for key, v in vec.items()}))
    support = s.upstairs_support()
    b_gens = []
    for T in basis_tensors(d, n, p, None):
        k = T.counts(d)
        w = tuple(0 if on else ki for ki, on in zip(k, support))
        b_gens.append((w, {T: 1}))
    return _OracleData(d, a_gens, b_gens)


def _in_span(vectors, target):
    """Whether the unit vector at ``target`` lies in the span of ``vectors``."""
    pivots = []
    for vec in vectors:
        v = {k: Fraction(c) for k, c in vec.items()}
        for key, row in pivots:
            if key in v:
                f = v[key] / row[key]
                for k2, c2 in row.items():
                    v[k2] = v.get(k2, 0) - f * c2
                v = {k2: c2 for k2, c2 in v.items() if c2}
        if v:
            pivots.append((min(v), v))
    v = {target: Fraction(1)}
    for key, row in pivots:
        if key in v:
            f = v[key] / row[key]
            for k2, c2 in row.items():
                v[k2] = v.get(k2, 0) - f * c2
            v = {k2: c2 for k2, c2 in v.items() if c2}
    return not v


def _member(data, gens, which, t, weight):
    eligible = tuple(i for i, (w, _) in enumerate(gens) if all(a <= b for a, b in zip(w, weight)))
    key = (which, eligible, t)
    hit = data.span_cache.get(key)
    if hit is None:
        hit = _in_span([gens[i][1] for i in eligible], t)
        data.span_cache[key] = hit
    return hit


def membership_oracle(s, n, p, t, e):
    """Decide ``y^e . t`` in ``A_{n,p}`` and in ``B_{n,p}`` by substitution.

    Independent of the closed-form allowances and valid for any monomial
    cover, diagonal or not.
    """
    _check_degrees(s, n, p)
    data = _oracle_data(s, n, p)
    k = t.counts(s.dim)
    weight = tuple(ei + ki for ei, ki in zip(e, k))
    return (_member(data, data.a_gens, "A", t, weight)
            and _member(data, data.b_gens, "B", t, weight))


def scan_bound(s, n):
    return n * max(max(row) for row in s.cover.exponents)


def oracle_thresholds(s, n, p, t, bound=None):
    """Allowances of ``t`` recovered from the oracle alone.

    Membership is upward closed, so each axis threshold is found by a
    bisection inside ``[-bound, bound]`` with the other exponents held at
    ``bound``.  The candidate corner is then checked to be a member with no
    member one step below it.  Returns ``None`` if the member set is not an
    orthant inside the box.
    """
    bound = scan_bound(s, n) if bound is None else bound
    d = s.dim
    corner = []
    for i in range(d):
        def member(v, i=i):
            e = [bound] * d
            e[i] = v
            return membership_oracle(s, n, p, t, e)

        lo, hi = -bound, bound
        if not member(hi):
            return None
        while lo < hi:
            mid = (lo + hi) // 2
            if member(mid):
                hi = mid
            else:
                lo = mid + 1
        corner.append(lo)
    if not membership_oracle(s, n, p, t, corner):
        return None
    for i in range(d):
        below = list(corner)
        below[i] -= 1
        if below[i] >= -bound and membership_oracle(s, n, p, t, below):
            return None
    return tuple(-g for g in corner)


def oracle_box_scan(s, n, p, sheaf, bound=None, backend=None):
    """Exhaustive comparison of oracle membership with ``sheaf`` on a box.

    Uses the oracle generators directly; only available for diagonal
    setups, where every generator vector is a multiple of one basis tensor.
    Returns ``(mismatches, points)`` summed over all basis tensors.
    """
    if not s.is_diagonal():
        raise NonDiagonalCover("box scan needs monomial generators")
    bound = scan_bound(s, n) if bound is None else bound
    data = _oracle_data(s, n, p)
    bad = total = 0
    for t, a in sheaf.allowances.items():
        k = t.counts(s.dim)

        def shifted(gens):
            return [tuple(wi - ki for wi, ki in zip(w, k)) for w, vec in gens if t in vec]

        b, tot = kernels.box_scan(
            -bound, bound, s.dim, shifted(data.a_gens), shifted(data.b_gens),
            tuple(-v for v in a), backend=backend)
        bad += b
        total += tot
    return bad, total


@dataclass(frozen=True)
class InclusionReport:
    """Termwise checks of the inclusion diagram.

    ``holds[label]`` says whether the inclusion holds and ``equal[label]``
    whether it is an equality.  The ``iota`` entry compares the adapted
    sheaf with ``Sym^n Omega^p(log gamma^* floor(D))``.
    """

    n: int
    p: int
    holds: dict
    equal: dict

    @property
    def iota_equal(self):
        return self.equal["iota"]


INCLUSIONS = (
    ("pullback", "sym"),
    ("sym", "adapted"),
    ("adapted", "pullback-log"),
    ("pullback-log", "log"),
    ("adapted", "log-floor"),
    ("log-floor", "log"),
    ("adapted", "twisted"),
)


def check_inclusions(s, n, p, max_tensors=None):
    sheaves = {name: reference_sheaf(s, n, p, name, max_tensors) for name in REFERENCE_SHEAVES}
    sheaves["adapted"] = compute_adapted(s, n, p, max_tensors)
    holds, equal = {}, {}
    for small, big in INCLUSIONS:
        label = "iota" if (small, big) == ("adapted", "log-floor") else f"{small} <= {big}"
        holds[label] = sheaves[small] <= sheaves[big]
        equal[label] = sheaves[small] == sheaves[big]
    return InclusionReport(n, p, holds, equal)


@dataclass(frozen=True)
class SymProductReport:
    """Closure of allowances under symmetric multiplication.

    ``failures`` lists ``(t1, t2)`` with ``a(t1) + a(t2) > a(t1 t2)`` on some
    axis.  ``sym_equal`` compares ``Sym^n_C`` with ``Sym^n`` of the adapted
    forms in degree ``n1 + n2``; it is ``None`` when the cover is not
    adapted.
    """

    pairs: int
    failures: list
    adapted: bool
    sym_equal: bool | None

    @property
    def superadditive(self):
        return not self.failures


def sym_product_degree(s, n1, n2, p, max_tensors=None):
    s1 = compute_adapted(s, n1, p, max_tensors)
    s2 = s1 if n2 == n1 else compute_adapted(s, n2, p, max_tensors)
    s12 = compute_adapted(s, n1 + n2, p, max_tensors)
    failures, pairs = [], 0
    for t1, a1 in s1.allowances.items():
        for t2, a2 in s2.allowances.items():
            pairs += 1
            a12 = s12.allowance(t1 * t2)
            if any(x + y > z for x, y, z in zip(a1, a2, a12)):
                failures.append((t1, t2))
    adapted = pullback_qdiv(s.cover, frac_part(s.boundary.as_qdivisor())).is_integral()
    sym_equal = None
    if adapted:
        sym_equal = s12 == reference_sheaf(s, n1 + n2, p, "sym", max_tensors)
    return SymProductReport(pairs, failures, adapted, sym_equal)


@dataclass(frozen=True)
class FunctorialityReport:
    """Comparison of ``alpha^*`` of the ``beta`` allowances with the ``gamma`` ones."""

    inclusion: bool
    equal: bool
    beta_adapted: bool
    differences: list


def functoriality_check(alpha_powers, beta_powers, mults, n, p, gamma_powers=None,
                        max_tensors=None):
    """Functoriality of allowances along ``gamma = beta o alpha`` (diagonal)."""
    if len(alpha_powers) != len(beta_powers) or len(mults) != len(beta_powers):
        raise FactorizationMismatch("factors have different dimensions")
    product = tuple(a * b for a, b in zip(alpha_powers, beta_powers))
    if gamma_powers is not None and tuple(gamma_powers) != product:
        raise FactorizationMismatch(f"{tuple(gamma_powers)} is not the product {product}")
    beta = CoverSetup.diagonal(beta_powers, mults)
    gamma = CoverSetup.diagonal(product, mults)
    pulled = compute_adapted(beta, n, p, max_tensors).pullback(alpha_powers)
    direct = compute_adapted(gamma, n, p, max_tensors)
    beta_adapted = pullback_qdiv(beta.cover, d_orb(beta.boundary)).is_integral()
    return FunctorialityReport(pulled <= direct, pulled == direct, beta_adapted,
                               pulled.differences(direct))


def differential_is_adapted(s, v):
    """Whether ``d(y^v)`` is an adapted 1-form, read off the allowances."""
    forms = compute_adapted(s, 1, 1)
    for i, vi in enumerate(v):
        if vi == 0:
            continue
        a = forms.allowance(BasisTensor(((i,),)))
        e = [vj - (j == i) for j, vj in enumerate(v)]
        if any(ej < -aj for ej, aj in zip(e, a)):
            return False
    return True


def adapted_differential_bound(s, v):
    """Zero-divisor criterion: ``v_i >= c_i / m_i`` wherever ``v_i > 0``.

    Requires ``y^v`` to vanish along every ramified hyperplane.  Uses
    ``finite / inf = 0``.
    """
    powers = s.powers
    for vi, c in zip(v, powers):
        if c >= 2 and vi < 1:
            raise ValueError("the function must vanish along the ramification divisor")
    return all(vi >= ext_div(c, m) for vi, c, m in zip(v, powers, s.mults) if vi > 0)

