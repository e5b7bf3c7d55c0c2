# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled sparse tensor contraction kernel.

Same contract as contract_py: dict[tuple[int,...] -> Fraction] in,
dict[tuple[int,...] -> Fraction] out, exact arithmetic throughout.
Internally coefficients travel as (numerator, denominator) int pairs with a
gcd reduction on every accumulation, which avoids Fraction dispatch overhead
in the inner loop while producing bit-identical results.
"""

from fractions import Fraction
from math import gcd

NAME = "cython"


cdef inline tuple _pick(tuple key, tuple axes):
    cdef list out = []
    cdef Py_ssize_t i
    for i in range(len(axes)):
        out.append(key[axes[i]])
    return tuple(out)


def contract(dict a, int a_rank, dict b, int b_rank, pairs):
    cdef tuple a_axes = tuple([p[0] for p in pairs])
    cdef tuple b_axes = tuple([p[1] for p in pairs])
    cdef tuple a_free = tuple([i for i in range(a_rank) if i not in a_axes])
    cdef tuple b_free = tuple([i for i in range(b_rank) if i not in b_axes])

    cdef dict buckets = {}
    cdef tuple kb, sig
    cdef list hits
    for kb, vb in b.items():
        sig = _pick(kb, b_axes)
        hits = <list> buckets.get(sig)
        if hits is None:
            buckets[sig] = [(_pick(kb, b_free), vb.numerator, vb.denominator)]
        else:
            hits.append((_pick(kb, b_free), vb.numerator, vb.denominator))

    # accumulate as (num, den) pairs
    cdef dict acc = {}
    cdef tuple ka, ka_free, key
    cdef object va, cur
    cdef object an, ad, pn, pd, n, d, g
    for ka, va in a.items():
        hits = <list> buckets.get(_pick(ka, a_axes))
        if hits is None:
            continue
        ka_free = _pick(ka, a_free)
        an = va.numerator
        ad = va.denominator
        for kb_free, bn, bd in hits:
            key = ka_free + <tuple> kb_free
            pn = an * bn
            pd = ad * bd
            cur = acc.get(key)
            if cur is None:
                acc[key] = (pn, pd)
            else:
                n = cur[0] * pd + pn * cur[1]
                if n == 0:
                    del acc[key]
                    continue
                d = cur[1] * pd
                g = gcd(n, d)
                if g > 1:
                    n //= g
                    d //= g
                acc[key] = (n, d)

    cdef dict out = {}
    for key, cur in acc.items():
        out[key] = Fraction(cur[0], cur[1])
    return out


def self_trace(dict t, int rank, pairs):
    cdef tuple pr = tuple([(p[0], p[1]) for p in pairs])
    cdef set paired = set()
    cdef Py_ssize_t i, j
    for i, j in pr:
        paired.add(i)
        paired.add(j)
    cdef tuple free = tuple([i for i in range(rank) if i not in paired])

    cdef dict acc = {}
    cdef tuple k, key
    cdef object v, cur, n, d, g
    cdef bint ok
    for k, v in t.items():
        ok = True
        for i, j in pr:
            if k[i] != k[j]:
                ok = False
                break
        if not ok:
            continue
        key = _pick(k, free)
        cur = acc.get(key)
        if cur is None:
            acc[key] = (v.numerator, v.denominator)
        else:
            n = cur[0] * v.denominator + v.numerator * cur[1]
            if n == 0:
                del acc[key]
                continue
            d = cur[1] * v.denominator
            g = gcd(n, d)
            if g > 1:
                n //= g
                d //= g
            acc[key] = (n, d)

    cdef dict out = {}
    for key, cur in acc.items():
        out[key] = Fraction(cur[0], cur[1])
    return out


def permute_axes(dict t, perm):
    cdef tuple pm = tuple(perm)
    cdef dict out = {}
    cdef tuple k
    for k, v in t.items():
        out[_pick(k, pm)] = v
    return out
