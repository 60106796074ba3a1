"""Brute-force reference implementations.

Everything here enumerates tuples or subsets directly and shares no code with
the package beyond Fraction, so it can stand as an independent check.
"""

import itertools
from collections import Counter
from fractions import Fraction


def subsets(xs):
    xs = list(xs)
    for mask in range(1 << len(xs)):
        yield [x for i, x in enumerate(xs) if mask >> i & 1]


def subset_sums(xs):
    return sorted({sum(s, Fraction(0)) for s in subsets(xs)})


def subset_products(xs):
    out = set()
    for s in subsets(xs):
        p = Fraction(1)
        for x in s:
            p *= x
        out.add(p)
    return sorted(out)


def combo(k, A, l, B):
    tuples = itertools.product(*([list(A)] * k + [list(B)] * l))
    return sorted({sum(t, Fraction(0)) for t in tuples})


def rep(k, A, l, B):
    tuples = itertools.product(*([list(A)] * k + [list(B)] * l))
    return Counter(sum(t, Fraction(0)) for t in tuples)


def energy_by_tuples(h, A):
    """Count solutions of x1+..+xh = x_{h+1}+..+x_{2h} by enumerating A^{2h}."""
    A = list(A)
    return sum(
        1 for t in itertools.product(A, repeat=2 * h) if sum(t[:h]) == sum(t[h:])
    )


def mixed_by_tuples(k, A, l, B):
    """Solutions of a1+..+ak+b1+..+bl = a'1+..+a'k+b'1+..+b'l."""
    doms = [list(A)] * k + [list(B)] * l
    sides = [sum(t, Fraction(0)) for t in itertools.product(*doms)]
    if len(sides) <= 400:
        return sum(1 for s in sides for t in sides if s == t)
    # too many pairs to compare one by one; group the enumerated tuples instead
    return sum(v * v for v in Counter(sides).values())


def sigma(target, k, A, l, B):
    doms = [list(A)] * k + [list(B)] * l
    return sum(1 for t in itertools.product(*doms) if sum(t, Fraction(0)) == target)


def nondegenerate(coeffs, domains, target):
    nd = tot = 0
    d = len(coeffs)
    for sol in itertools.product(*domains):
        terms = [Fraction(c) * x for c, x in zip(coeffs, sol)]
        if sum(terms) != target:
            continue
        tot += 1
        degenerate = any(
            sum(terms[i] for i in idx) == 0
            for r in range(1, d)
            for idx in itertools.combinations(range(d), r)
        )
        nd += not degenerate
    return nd, tot


def trial_factor(n):
    out = {}
    p = 2
    while p * p <= n:
        while n % p == 0:
            out[p] = out.get(p, 0) + 1
            n //= p
        p += 1
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def bounded_sums(A, h):
    return sorted({
        sum((e * a for e, a in zip(es, A)), Fraction(0))
        for es in itertools.product(range(h + 1), repeat=len(A))
    })


def bounded_products_count(A, h):
    out = set()
    for es in itertools.product(range(h + 1), repeat=len(A)):
        p = Fraction(1)
        for e, a in zip(es, A):
            p *= Fraction(a) ** e
        out.add(p)
    return len(out)


def smooth(y, N):
    out, n = [], 0
    while len(out) < N:
        n += 1
        f = trial_factor(n)
        if all(p <= y for p in f):
            out.append(n)
    return out
