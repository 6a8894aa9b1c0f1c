"""Orbifold curves: degrees, covers, irregularity and Kodaira dimension."""

from dataclasses import dataclass
from fractions import Fraction
from math import floor, lcm

from .divisors import INF, NEG_INF, standard_coefficient
from .errors import IndeterminateInvariant, NonIntegralGenus, NotAdapted
from .sheaves import BasisTensor, CoverSetup, compute_adapted

__all__ = [
    "OrbifoldCurve", "CurveCover", "curve_degree", "riemann_hurwitz_genus",
    "cover_twist", "irregularity_bounds", "curve_irregularity",
    "kappa_scan", "curve_kappa", "curve_is_special", "etale_tower",
]


@dataclass(frozen=True)
class OrbifoldCurve:
    """A smooth projective curve of genus ``g`` with marked multiplicities.

    ``points`` is a tuple of ``(name, m)`` with ``m`` an integer >= 2 or ``INF``.
    """

    genus: int
    points: tuple = ()

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")
        pts = []
        for i, item in enumerate(self.points):
            name, m = item if isinstance(item, tuple) else (f"p{i + 1}", item)
            if m != INF and (not isinstance(m, int) or m < 2):
                raise ValueError(f"multiplicity of {name} must be >= 2 or inf, got {m}")
            pts.append((name, m))
        names = [n for n, _ in pts]
        if len(set(names)) != len(names):
            raise ValueError("marked point names must be distinct")
        object.__setattr__(self, "points", tuple(pts))

    @property
    def multiplicities(self):
        return tuple(m for _, m in self.points)

    def multiplicity(self, name):
        return dict(self.points).get(name, 1)

    def with_point(self, name, m):
        return OrbifoldCurve(self.genus, self.points + ((name, m),))


@dataclass(frozen=True)
class CurveCover:
    """A cover of degree ``d`` given by ramification profiles over named points.

    Points without a profile are unramified.
    """

    degree: int
    profiles: tuple = ()

    def __post_init__(self):
        if self.degree < 1:
            raise ValueError("degree must be positive")
        profs = tuple((name, tuple(parts)) for name, parts in dict(self.profiles).items())
        for name, parts in profs:
            if any(e < 1 for e in parts) or sum(parts) != self.degree:
                raise ValueError(f"profile {parts} over {name} is not a partition of {self.degree}")
        object.__setattr__(self, "profiles", profs)

    def profile(self, name):
        return dict(self.profiles).get(name, (1,) * self.degree)


def curve_degree(C):
    """Degree of ``K + D``: ``2g - 2 + sum (m-1)/m``."""
    return Fraction(2 * C.genus - 2) + sum(
        (standard_coefficient(m) for m in C.multiplicities), Fraction(0))


def riemann_hurwitz_genus(g, cover):
    """Genus of the total space, from ``2h - 2 = d(2g - 2) + sum (e - 1)``."""
    total = cover.degree * (2 * g - 2) + sum(e - 1 for _, parts in cover.profiles for e in parts)
    if total % 2:
        raise NonIntegralGenus(f"2h - 2 = {total} is odd")
    h = total // 2 + 1
    if h < 0:
        raise NonIntegralGenus(f"negative genus {h}")
    return h


def cover_twist(C, cover):
    """Allowances of the adapted 1-forms at the ramified preimages.

    The adapted cotangent sheaf on the cover is ``K + sum a_P P``.  Each
    allowance comes from the one-dimensional local model ``z -> z^e``.
    Raises :class:`NotAdapted` unless every ramification index over a
    finite multiplicity ``m`` is divisible by ``m``.
    """
    names = {n for n, _ in C.points} | {n for n, _ in cover.profiles}
    out = []
    for name in sorted(names):
        m = C.multiplicity(name)
        for e in cover.profile(name):
            if m not in (1, INF) and e % m:
                raise NotAdapted(f"ramification {e} over {name} is not divisible by {m}")
            if e == 1 and m == 1:
                continue
            forms = compute_adapted(CoverSetup.diagonal((e,), (m,)), 1, 1)
            a = forms.allowance(BasisTensor(((0,),)))[0]
            if a:
                out.append(a)
    return tuple(out)


def irregularity_bounds(C, cover):
    """Lower and upper bounds for ``h^0`` of the adapted cotangent sheaf.

    Writing the sheaf as ``K + E_+ - E_-`` with effective ``E_+`` and
    ``E_-``: Riemann-Roch gives ``h^0(K + E_+)``, and removing the ``N``
    points of ``E_-`` lowers it by at most ``N`` and by exactly one at the
    first point, which is never a base point of ``|K + E_+|``.
    """
    h = riemann_hurwitz_genus(C.genus, cover)
    twist = cover_twist(C, cover)
    deg = 2 * h - 2 + sum(twist)
    pos = sum(a for a in twist if a > 0)
    neg = -sum(a for a in twist if a < 0)
    if deg < 0:
        return 0, 0
    if h == 0:
        return deg + 1, deg + 1
    if deg > 2 * h - 2:
        return deg - h + 1, deg - h + 1
    base = h if pos == 0 else h - 1 + pos
    if neg == 0:
        return base, base
    lo = max(0, base - neg, deg - h + 1)
    hi = min(deg // 2 + 1, base - 1)
    return lo, hi


def curve_irregularity(C, cover):
    """Irregularity ``q`` of the adapted cotangent sheaf of a cover."""
    lo, hi = irregularity_bounds(C, cover)
    if lo != hi:
        raise IndeterminateInvariant("irregularity depends on the position of the points", lo, hi)
    return lo


def _floor_degree(C, m):
    return m * (2 * C.genus - 2) + sum(
        floor(m * standard_coefficient(mj)) for mj in C.multiplicities)


def kappa_scan(C, limit=None):
    """``(m, deg floor(m(K + D)), h^0)`` for ``m = 1 .. limit`` on a rational curve."""
    if C.genus != 0:
        raise ValueError("the section count formula is for genus zero")
    finite = [m for m in C.multiplicities if m != INF]
    limit = limit or 2 * (lcm(*finite) if finite else 1)
    rows = []
    for m in range(1, limit + 1):
        d = _floor_degree(C, m)
        rows.append((m, d, max(0, d + 1)))
    return rows


def curve_kappa(C):
    """C-Kodaira dimension of ``(C, D)``: ``1``, ``0`` or ``NEG_INF``."""
    deg = curve_degree(C)
    if deg > 0:
        return 1
    if C.genus >= 1:
        # deg = 0 forces an elliptic curve without boundary, where K is trivial
        return 0
    if any(h0 > 0 for _, _, h0 in kappa_scan(C)):
        return 0
    return NEG_INF


def curve_is_special(C):
    return curve_kappa(C) < 1


def etale_tower(g, degrees):
    """Genera along a tower of étale covers of the given degrees."""
    out = [g]
    for d in degrees:
        g = riemann_hurwitz_genus(g, CurveCover(d))
        out.append(g)
    return out
