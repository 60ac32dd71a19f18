#!/usr/bin/env python3
"""Cross-check the exact invariants against independent closed forms and report timings."""
import time
from fractions import Fraction

from swbranch.exactmath import alpha_sum, beta_sum, dedekind_sum
from swbranch.spherical import BinaryDihedral, delta_group_sum, lens_delta, lens_delta_q1_closed_form, prism_invariants


def timed(label, fn):
    t0 = time.perf_counter()
    count = fn()
    print(f"{label}: {count} identities checked in {time.perf_counter() - t0:.2f} s")


def roots():
    k = 0
    for n in range(2, 51):
        for u in range(n):
            assert alpha_sum(u, n) == Fraction(n - 1, 2) - u
            assert beta_sum(u, n) == Fraction(-(n - 1) * (n - 5), 12) + Fraction(u * (n - u - 2), 2)
            k += 2
    return k


def lenses():
    k = 0
    for p in range(2, 31):
        for u in range(p):
            assert lens_delta(p, 1, u) == lens_delta_q1_closed_form(p, u)
            k += 1
    return k


def prisms():
    k = 0
    for n in range(1, 31):
        for lab in ((0, 0), (1, 0), (0, 1), (1, 1)):
            assert prism_invariants(n, *lab)[2] == delta_group_sum(BinaryDihedral(n), lab)
            k += 1
    return k


def reciprocity():
    from math import gcd

    k = 0
    for p in range(2, 41):
        for q in range(1, p):
            if gcd(p, q) == 1:
                lhs = dedekind_sum(q, p) + dedekind_sum(p, q)
                assert lhs == Fraction(p * p + q * q + 1, 12 * p * q) - Fraction(1, 4)
                k += 1
    return k


if __name__ == "__main__":
    timed("root-of-unity sums", roots)
    timed("lens deltas", lenses)
    timed("prism deltas (two code paths)", prisms)
    timed("Dedekind reciprocity", reciprocity)
