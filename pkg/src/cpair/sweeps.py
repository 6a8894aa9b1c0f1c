"""Randomized consistency sweeps.

Each sweep draws instances from a seeded ``random.Random`` and compares two
independent computations of the same object.  A sweep returns a
:class:`SweepResult` listing the instances on which they disagree.
"""

import random
from dataclasses import dataclass, field
from fractions import Fraction
from math import floor

from .chern import GradedClass, cotangent_class, total_c_chern
from .covers import classify_cover
from .divisors import INF, QDivisor, floor_div, frac_part, standard_coefficient
from .geometry import Chart, MonomialCover, compose, determinant, pullback_qdiv
from .morphisms import nc_as_divisorial, nc_cmorphism, orbifold_morphism
from .sheaves import (
    CoverSetup, check_inclusions, compute_adapted, oracle_box_scan, oracle_thresholds,
    reference_sheaf, residue_kernel_p1, sym_product_degree, tensor_count,
)

__all__ = [
    "SweepResult", "SWEEPS", "run_sweep", "random_setup", "random_adapted_setup",
    "sweep_oracle", "sweep_residue", "sweep_uniformization", "sweep_nc",
    "sweep_chern", "sweep_floor", "sweep_composition", "sweep_superadditive",
    "sweep_sym_equal",
]

ORACLE_MULTS = (2, 3, 4, INF)


@dataclass
class SweepResult:
    kind: str
    count: int
    failures: list = field(default_factory=list)
    notes: dict = field(default_factory=dict)

    @property
    def passed(self):
        return not self.failures


def _rng(seed):
    return seed if isinstance(seed, random.Random) else random.Random(seed)


def random_setup(rng, max_dim=3, max_power=6, mults=ORACLE_MULTS):
    d = rng.randint(1, max_dim)
    powers = [rng.randint(1, max_power) for _ in range(d)]
    return CoverSetup.diagonal(powers, [rng.choice(mults) for _ in range(d)])


def random_adapted_setup(rng, max_dim=3, mults=(1, 2, 3, INF), max_factor=2):
    """A diagonal cover adapted to its boundary: ``m_i | c_i`` on finite axes."""
    d = rng.randint(1, max_dim)
    ms = [rng.choice(mults) for _ in range(d)]
    powers = []
    for m in ms:
        if m == INF:
            powers.append(rng.randint(1, 3))
        elif m == 1:
            powers.append(rng.choice((1, 1, 2)))
        else:
            powers.append(m * rng.randint(1, max_factor))
    return CoverSetup.diagonal(powers, ms)


def _random_degrees(rng, s, max_n):
    return rng.randint(1, max_n), rng.randint(1, s.dim)


def sweep_oracle(seed, count, max_n=3, max_tensors=60, box=False):
    """Closed-form allowances against oracle thresholds, tensor by tensor.

    With ``box`` set, also compare oracle membership with the allowances at
    every exponent vector of the scan box.
    """
    rng = _rng(seed)
    out = SweepResult("oracle", count)
    tensors = points = 0
    for _ in range(count):
        s = random_setup(rng)
        n, p = _random_degrees(rng, s, max_n)
        while tensor_count(s.dim, n, p) > max_tensors:
            n -= 1
        sheaf = compute_adapted(s, n, p)
        for t, a in sheaf.allowances.items():
            tensors += 1
            got = oracle_thresholds(s, n, p, t)
            if got != a:
                out.failures.append((s, n, p, t, a, got))
        if box:
            bad, total = oracle_box_scan(s, n, p, sheaf)
            points += total
            if bad:
                out.failures.append((s, n, p, "box", bad))
    out.notes["tensors"] = tensors
    if box:
        out.notes["box_points"] = points
    return out


def sweep_residue(seed, count):
    """Residue-kernel description of adapted 1-forms against the closed form."""
    rng = _rng(seed)
    out = SweepResult("residue", count)
    for _ in range(count):
        s = random_setup(rng)
        if residue_kernel_p1(s) != compute_adapted(s, 1, 1):
            out.failures.append(s)
    return out


def sweep_uniformization(seed, count, max_n=3):
    """Some ``iota`` equality, every ``iota`` equality and the uniformization
    flag should agree on adapted diagonal covers."""
    rng = _rng(seed)
    out = SweepResult("uniformization", count)
    tally = {}
    for _ in range(count):
        s = random_adapted_setup(rng)
        eq = [check_inclusions(s, n, p).iota_equal
              for n in range(1, max_n + 1) for p in range(1, s.dim + 1)]
        some, every = any(eq), all(eq)
        uni = classify_cover(s.cover, s.boundary).is_uniformization
        key = (some, every, uni)
        tally[key] = tally.get(key, 0) + 1
        if not some == every == uni:
            out.failures.append((s, some, every, uni))
    out.notes["pattern (exists, forall, uniformization)"] = {
        ",".join(map(str, k)): v for k, v in sorted(tally.items())}
    return out


def _random_mult(rng, top=6):
    return INF if rng.random() < 0.2 else rng.randint(1, top)


def sweep_nc(seed, count):
    """Normal-form test against the general multiplicity criterion."""
    rng = _rng(seed)
    out = SweepResult("nc", count)
    for _ in range(count):
        k = rng.randint(1, 3)
        a = [rng.randint(1, 4) for _ in range(k)]
        n = _random_mult(rng, 5)
        targets = [_random_mult(rng) for _ in range(k)]
        left = nc_cmorphism(a, n, targets).passed
        right = orbifold_morphism(*nc_as_divisorial(a, n, targets)).passed
        if left != right:
            out.failures.append((a, n, targets, left, right))
    return out


def sweep_chern(seed, count, max_dim=4):
    """Degree-one part of the total C-Chern class."""
    rng = _rng(seed)
    out = SweepResult("chern", count)
    for _ in range(count):
        dim = rng.randint(1, max_dim)
        comps = [(f"D{i}", _random_mult(rng)) for i in range(1, rng.randint(0, 4) + 1)]
        c = cotangent_class(dim)
        total = total_c_chern(c, comps)
        expected = GradedClass.symbol("c1", dim, weights=c.weights)
        for sym, m in comps:
            expected = expected + GradedClass.symbol(sym, dim, weights=c.weights) * standard_coefficient(m)
        if total.part(1) != expected:
            out.failures.append((dim, comps))
    return out


def _random_fraction(rng, top=50):
    return Fraction(rng.randint(-top, top), rng.randint(1, 12))


def sweep_floor(seed, count):
    """Round-down and fractional-part identities on random divisors."""
    rng = _rng(seed)
    out = SweepResult("floor", count)
    for _ in range(count):
        D = QDivisor({f"P{i}": _random_fraction(rng) for i in range(rng.randint(1, 4))})
        n1, n2 = rng.randint(1, 12), rng.randint(1, 12)
        ok = floor_div(D) + frac_part(D) == D
        ok &= all(0 <= c < 1 for _, c in frac_part(D).items())
        ok &= floor_div(D).is_integral()
        ok &= floor_div(n1 * D) + floor_div(n2 * D) <= floor_div((n1 + n2) * D)
        x = _random_fraction(rng)
        ok &= floor(n1 * x) + floor(n2 * x) <= floor((n1 + n2) * x)
        if not ok:
            out.failures.append((D, n1, n2, x))
    return out


def _random_matrix(rng, d, top=3):
    while True:
        m = [[rng.randint(0, top) for _ in range(d)] for _ in range(d)]
        if determinant(m):
            return m


def sweep_composition(seed, count):
    """Pull-back along ``g o f`` equals pull-back along ``g`` then along ``f``."""
    rng = _rng(seed)
    out = SweepResult("composition", count)
    for _ in range(count):
        d = rng.randint(1, 3)
        A, B, C = (Chart(name, d) for name in "ABC")
        f = MonomialCover(A, B, _random_matrix(rng, d))
        g = MonomialCover(B, C, _random_matrix(rng, d))
        D = QDivisor({h: _random_fraction(rng) for h in C.hyperplanes() if rng.random() < 0.8})
        if pullback_qdiv(compose(f, g), D) != pullback_qdiv(f, pullback_qdiv(g, D)):
            out.failures.append((f, g, D))
    return out


def sweep_superadditive(seed, count, max_n=2):
    """Products of adapted tensors stay adapted: ``a(t1) + a(t2) <= a(t1 t2)``."""
    rng = _rng(seed)
    out = SweepResult("superadditive", count)
    for _ in range(count):
        s = random_setup(rng, mults=(1, 2, 3, 4, INF))
        n1, n2, p = rng.randint(1, max_n), rng.randint(1, max_n), rng.randint(1, s.dim)
        report = sym_product_degree(s, n1, n2, p)
        if not report.superadditive:
            out.failures.append((s, n1, n2, p, report.failures[:3]))
    return out


def sweep_sym_equal(seed, count, max_n=3):
    """On adapted covers ``Sym^n_C Omega^p`` equals ``Sym^n`` of the adapted p-forms."""
    rng = _rng(seed)
    out = SweepResult("sym-equal", count)
    for _ in range(count):
        s = random_adapted_setup(rng)
        n, p = rng.randint(2, max_n), rng.randint(1, s.dim)
        adapted = compute_adapted(s, n, p)
        sym = reference_sheaf(s, n, p, "sym")
        if adapted != sym:
            out.failures.append((s, n, p, adapted.differences(sym)[:3]))
    return out


SWEEPS = {
    "oracle": sweep_oracle,
    "residue": sweep_residue,
    "uniformization": sweep_uniformization,
    "nc": sweep_nc,
    "chern": sweep_chern,
    "floor": sweep_floor,
    "composition": sweep_composition,
    "superadditive": sweep_superadditive,
    "sym-equal": sweep_sym_equal,
}


def run_sweep(kind, count, seed=0):
    try:
        fn = SWEEPS[kind]
    except KeyError:
        raise ValueError(f"unknown sweep {kind!r}; choose from {', '.join(sorted(SWEEPS))}") from None
    return fn(seed, count)

