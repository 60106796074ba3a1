"""Exact solution counts: representation functions, energies, degeneracy."""

from __future__ import annotations

import itertools
from collections import Counter
from dataclasses import dataclass, field
from fractions import Fraction
from math import prod
from typing import Dict, List, Sequence, Tuple

from .budget import DEFAULT_BUDGET, Budget
from .exactnum import RationalLike, as_rational
from .setalg import FiniteSet, _common_denominator, _scaled


@dataclass(frozen=True)
class RepFunction:
    """``x -> #{ordered (a_1..a_k, b_1..b_l) : sum == x}``."""

    entries: Dict[Fraction, int] = field(compare=True)
    k: int = 1
    l: int = 0
    total: int = 0

    def __getitem__(self, x) -> int:
        return self.entries.get(as_rational(x), 0)

    def support(self) -> FiniteSet:
        return FiniteSet._from_sorted(sorted(self.entries))

    def sum_of_squares(self) -> int:
        return sum(c * c for c in self.entries.values())


def _convolve(cur: Counter, step: List[int]) -> Counter:
    out: Counter = Counter()
    for s, c in cur.items():
        for x in step:
            out[s + x] += c
    return out


def rep_function(
    k: int, A: FiniteSet, l: int = 0, B: FiniteSet | None = None, budget: Budget = DEFAULT_BUDGET
) -> RepFunction:
    """Representation function of ``kA + lB`` by k + l - 1 support convolutions."""
    B = FiniteSet() if B is None else B
    if k < 0 or l < 0 or k + l < 1:
        raise ValueError("need k, l >= 0 and k + l >= 1")
    den = _common_denominator(A, B)
    steps = [_scaled(A, den)] * k + [_scaled(B, den)] * l
    cur = Counter(steps[0])
    for step in steps[1:]:
        budget.charge(len(cur) * len(step), "rep_function")
        cur = _convolve(cur, step)
    entries = {Fraction(s, den): c for s, c in sorted(cur.items())}
    return RepFunction(entries, k, l, len(A) ** k * len(B) ** l)


def energy(h: int, A: FiniteSet, budget: Budget = DEFAULT_BUDGET) -> int:
    """Number of solutions of ``x_1+..+x_h = x_{h+1}+..+x_{2h}`` in A."""
    if h < 1:
        raise ValueError("h must be positive")
    if not len(A):
        return 0
    return rep_function(h, A, budget=budget).sum_of_squares()


def mixed_tuples(k: int, A: FiniteSet, l: int, B: FiniteSet, budget: Budget = DEFAULT_BUDGET) -> int:
    """Additive ``2(k+l)``-tuples in ``A^{2k} x B^{2l}``, i.e. ``sum r_{kA+lB}(x)**2``."""
    return rep_function(k, A, l, B, budget=budget).sum_of_squares()


def sigma_count(
    target: RationalLike, k: int, A: FiniteSet, l: int = 0, B: FiniteSet | None = None,
    budget: Budget = DEFAULT_BUDGET,
) -> int:
    """Ordered solutions of ``a_1+..+a_k + b_1+..+b_l = target``."""
    return rep_function(k, A, l, B, budget=budget)[target]


def _subset_sums_by_mask(terms: Sequence[Fraction]) -> List[Fraction]:
    sums = [Fraction(0)] * (1 << len(terms))
    for mask in range(1, len(sums)):
        low = mask & -mask
        sums[mask] = sums[mask ^ low] + terms[low.bit_length() - 1]
    return sums


def is_degenerate(coeffs: Sequence[RationalLike], solution: Sequence[RationalLike]) -> bool:
    """True iff some proper nonempty subsum of ``sum(c_i * x_i)`` vanishes."""
    if len(coeffs) != len(solution) or not coeffs:
        raise ValueError("coeffs and solution must have the same positive length")
    if len(coeffs) > 20:
        raise ValueError("degeneracy check supports at most 20 terms")
    terms = [as_rational(c) * as_rational(x) for c, x in zip(coeffs, solution)]
    sums = _subset_sums_by_mask(terms)
    full = len(sums) - 1
    return any(sums[m] == 0 for m in range(1, full))


def nondegenerate_count(
    coeffs: Sequence[RationalLike], domains: Sequence[FiniteSet], target: RationalLike,
    budget: Budget = DEFAULT_BUDGET,
) -> Tuple[int, int]:
    """``(nondegenerate, total)`` ordered solutions of ``sum c_i x_i = target``, ``x_i`` in ``domains[i]``."""
    if len(coeffs) != len(domains) or not coeffs:
        raise ValueError("need as many domains as coefficients, at least one")
    cs = [as_rational(c) for c in coeffs]
    t = as_rational(target)
    budget.charge(prod(len(D) for D in domains), "nondegenerate_count")
    nondeg = total = 0
    for sol in itertools.product(*domains):
        if sum(c * x for c, x in zip(cs, sol)) != t:
            continue
        total += 1
        if not is_degenerate(cs, sol):
            nondeg += 1
    return nondeg, total
