"""Pure-Python versions of the numeric kernels."""

from itertools import product

OFF, FINITE, LOG = 0, 1, 2


def allowance_table(counts, powers, floors, kinds):
    """Pole allowances for every tensor row of ``counts``.

    ``floors`` holds the twist ``floor(n * pullback of {D})`` per axis and
    ``kinds`` marks each axis as off the boundary, finite or logarithmic.
    """
    table = []
    for row in counts:
        out = []
        for k, c, f, kind in zip(row, powers, floors, kinds):
            a_bound = f + k if kind == LOG else f - (c - 1) * k
            b_bound = k if kind != OFF else 0
            out.append(min(a_bound, b_bound))
        table.append(tuple(out))
    return table


def _dominated(gens, point):
    for g in gens:
        if all(x <= y for x, y in zip(g, point)):
            return True
    return False


def box_scan(lo, hi, dim, gens_a, gens_b, thresholds):
    """Count box points where generator membership and thresholds disagree.

    A point ``e`` is a member when some row of ``gens_a`` and some row of
    ``gens_b`` are both dominated by ``e``; the prediction is
    ``e >= thresholds``.  Returns ``(mismatches, points)``.
    """
    bad = total = 0
    for point in product(range(lo, hi + 1), repeat=dim):
        member = _dominated(gens_a, point) and _dominated(gens_b, point)
        predicted = all(x >= t for x, t in zip(point, thresholds))
        bad += member != predicted
        total += 1
    return bad, total
