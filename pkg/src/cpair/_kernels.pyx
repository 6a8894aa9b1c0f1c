# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled versions of the numeric kernels."""

import numpy as np

cdef enum:
    OFF = 0
    LOG = 2


def allowance_table(long long[:, :] counts, long long[:] powers,
                    long long[:] floors, long long[:] kinds):
    cdef Py_ssize_t t, i, nt = counts.shape[0], d = counts.shape[1]
    cdef long long k, a, b
    out = np.empty((nt, d), dtype=np.int64)
    cdef long long[:, :] res = out
    for t in range(nt):
        for i in range(d):
            k = counts[t, i]
            if kinds[i] == LOG:
                a = floors[i] + k
            else:
                a = floors[i] - (powers[i] - 1) * k
            b = k if kinds[i] != OFF else 0
            res[t, i] = a if a < b else b
    return out


cdef bint _dominated(long long[:, :] gens, long long[:] point, Py_ssize_t d):
    cdef Py_ssize_t g, i
    cdef bint ok
    for g in range(gens.shape[0]):
        ok = True
        for i in range(d):
            if gens[g, i] > point[i]:
                ok = False
                break
        if ok:
            return True
    return False


def box_scan(long long lo, long long hi, Py_ssize_t dim, long long[:, :] gens_a,
             long long[:, :] gens_b, long long[:] thresholds):
    cdef long long bad = 0, total = 0
    cdef Py_ssize_t i
    cdef bint member, predicted
    buf = np.full(dim, lo, dtype=np.int64)
    cdef long long[:] point = buf
    while True:
        member = _dominated(gens_a, point, dim) and _dominated(gens_b, point, dim)
        predicted = True
        for i in range(dim):
            if point[i] < thresholds[i]:
                predicted = False
                break
        if member != predicted:
            bad += 1
        total += 1
        i = dim - 1
        while i >= 0 and point[i] == hi:
            point[i] = lo
            i -= 1
        if i < 0:
            break
        point[i] += 1
    return bad, total
