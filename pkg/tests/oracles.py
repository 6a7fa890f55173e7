"""Slow, obviously-correct reference computations used only by the tests."""

from collections import Counter
from itertools import combinations_with_replacement, product
from math import gcd


def laplace_det(M):
    M = [list(r) for r in M]
    n = len(M)
    if n == 1:
        return M[0][0]
    total = 0
    for j in range(n):
        if M[0][j]:
            minor = [r[:j] + r[j + 1:] for r in M[1:]]
            total += (-1) ** j * M[0][j] * laplace_det(minor)
    return total


def cyclic_order_counts(factors):
    """Number of elements of each order in Z/f1 x Z/f2 x ..."""
    counts = Counter()
    for xs in product(*(range(f) for f in factors)):
        o = 1
        for x, f in zip(xs, factors):
            k = f // gcd(x, f)
            o = o * k // gcd(o, k)
        counts[o] += 1
    return counts


def diag_group_elements(n, d, member):
    """Canonical vectors (last coordinate 0) of all elements of a subgroup of
    Gamma_d, given a predicate on vectors."""
    out = []
    for head in product(range(d), repeat=n - 1):
        v = head + (0,)
        if sum(v) % n == 0 and member(v):
            out.append(v)
    return out


def projective_order(v, d):
    n = len(v)
    for k in range(1, d + 1):
        w = [k * x % d for x in v]
        if len(set(w)) == 1:
            return k
    raise AssertionError


def simplex_points(n, total):
    """All non-negative integer n-vectors with the given sum."""
    for bars in combinations_with_replacement(range(total + 1), n - 1):
        parts, prev = [], 0
        for b in bars:
            parts.append(b - prev)
            prev = b
        parts.append(total - prev)
        yield tuple(parts)
