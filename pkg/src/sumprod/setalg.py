"""Finite-set algebra over the rationals.

All operations take and return :class:`FiniteSet`.  Additive operations run on
integers internally: every operand is scaled by the lcm of its denominators,
the work is done on Python ints (or numpy int64 where the range allows), and
the result is scaled back.  Zero and negative elements are allowed everywhere.
"""

from __future__ import annotations

import bisect
import logging
import math
from collections.abc import Sequence
from fractions import Fraction
from pathlib import Path
from typing import Iterable, List, NamedTuple, Tuple

import numpy as np

from .budget import DEFAULT_BUDGET, Budget
from .errors import ParseError
from .exactnum import RationalLike, as_rational, factor_int, parse_rational

log = logging.getLogger(__name__)

NAIVE_MAX = 16


class FiniteSet(Sequence):
    """Deduplicated, increasingly ordered, immutable finite set of rationals."""

    __slots__ = ("_elems",)

    def __init__(self, elements: Iterable[RationalLike] = ()):
        elems = {as_rational(x) for x in elements}
        # Fraction comparisons are slow; integral sets sort on their int values
        if all(x.denominator == 1 for x in elems):
            self._elems: Tuple[Fraction, ...] = tuple(sorted(elems, key=lambda x: x.numerator))
        else:
            self._elems = tuple(sorted(elems))

    @classmethod
    def _from_sorted(cls, elems: Iterable[Fraction]) -> "FiniteSet":
        obj = cls.__new__(cls)
        obj._elems = tuple(elems)
        return obj

    @property
    def elements(self) -> Tuple[Fraction, ...]:
        return self._elems

    def __len__(self) -> int:
        return len(self._elems)

    def __getitem__(self, i):
        return self._elems[i]

    def __iter__(self):
        return iter(self._elems)

    def __contains__(self, x) -> bool:
        try:
            x = as_rational(x)
        except (TypeError, ParseError):
            return False
        i = bisect.bisect_left(self._elems, x)
        return i < len(self._elems) and self._elems[i] == x

    def __eq__(self, other) -> bool:
        if isinstance(other, FiniteSet):
            return self._elems == other._elems
        return NotImplemented

    def __hash__(self) -> int:
        return hash(self._elems)

    def __repr__(self) -> str:
        return "FiniteSet({" + ", ".join(str(x) for x in self._elems) + "})"

    @property
    def is_integral(self) -> bool:
        return all(x.denominator == 1 for x in self._elems)

    def nonzero(self) -> "FiniteSet":
        """``A* = A \\ {0}``."""
        return FiniteSet._from_sorted(x for x in self._elems if x != 0)

    def negated(self) -> "FiniteSet":
        return FiniteSet._from_sorted(-x for x in reversed(self._elems))

    def union(self, other: "FiniteSet") -> "FiniteSet":
        return FiniteSet(self._elems + other._elems)

    def to_ints(self) -> List[int]:
        if not self.is_integral:
            raise ValueError("set has non-integer elements")
        return [x.numerator for x in self._elems]


# -- integer scaling --------------------------------------------------------

def _common_denominator(*sets: FiniteSet) -> int:
    den = 1
    for s in sets:
        for x in s:
            den = math.lcm(den, x.denominator)
    return den


def _scaled(s: FiniteSet, den: int) -> List[int]:
    return [x.numerator * (den // x.denominator) for x in s]


def _unscale(ints: Iterable[int], den: int) -> FiniteSet:
    """Build a FiniteSet from distinct or repeated ints representing ``i/den``."""
    vals = sorted(set(ints))
    if den == 1:
        return FiniteSet._from_sorted(Fraction(v) for v in vals)
    return FiniteSet._from_sorted(Fraction(v, den) for v in vals)


def _int_sumset(xs: Iterable[int], ys: List[int]) -> set:
    return {x + y for x in xs for y in ys}


# -- binary operations ------------------------------------------------------

def sumset(A: FiniteSet, B: FiniteSet, budget: Budget = DEFAULT_BUDGET) -> FiniteSet:
    budget.charge(len(A) * len(B), "sumset")
    den = _common_denominator(A, B)
    return _unscale(_int_sumset(_scaled(A, den), _scaled(B, den)), den)


def productset(A: FiniteSet, B: FiniteSet, budget: Budget = DEFAULT_BUDGET) -> FiniteSet:
    budget.charge(len(A) * len(B), "productset")
    return FiniteSet({a * b for a in A for b in B})


def linear_combo(
    k: int, A: FiniteSet, l: int = 0, B: FiniteSet | None = None, budget: Budget = DEFAULT_BUDGET
) -> FiniteSet:
    """``kA + lB``: all sums of k elements of A and l elements of B, with repetition.

    Built by k + l - 1 successive sumsets of supports, so the cost is governed
    by the sizes of the partial sumsets rather than by ``|A|**k * |B|**l``.
    """
    B = FiniteSet() if B is None else B
    if k < 0 or l < 0 or k + l < 1:
        raise ValueError("need k, l >= 0 and k + l >= 1")
    if (k and not len(A)) or (l and not len(B)):
        return FiniteSet()
    den = _common_denominator(A, B)
    steps = [_scaled(A, den)] * k + [_scaled(B, den)] * l
    cur = set(steps[0])
    for step in steps[1:]:
        budget.charge(len(cur) * len(step), "linear_combo")
        cur = _int_sumset(cur, step)
    return _unscale(cur, den)


def difference_combo(n: int, m: int, B: FiniteSet, budget: Budget = DEFAULT_BUDGET) -> FiniteSet:
    """``nB - mB``."""
    if not len(B):
        raise ValueError("difference_combo needs a nonempty set")
    return linear_combo(n, B, m, B.negated(), budget=budget)


# -- subset sums ------------------------------------------------------------

def _all_sums_sorted(xs: List[int]) -> List[int]:
    sums = [0]
    for x in xs:
        sums += [s + x for s in sums]
    return sorted(set(sums))


def _bit_positions(bits: int) -> np.ndarray:
    nbytes = max(1, (bits.bit_length() + 7) // 8)
    raw = np.frombuffer(bits.to_bytes(nbytes, "little"), dtype=np.uint8)
    return np.flatnonzero(np.unpackbits(raw, bitorder="little"))


def _subset_sums_bitset(xs: List[int]) -> List[int]:
    # bit i of the mask stands for the sum (low + i)
    low = sum(x for x in xs if x < 0)
    bits = 1 << (-low)
    for x in xs:
        bits |= (bits << x) if x >= 0 else (bits >> -x)
    return (_bit_positions(bits) + low).tolist()


def _subset_sums_mitm(xs: List[int]) -> List[int]:
    half = len(xs) // 2
    left = _all_sums_sorted(xs[:half])
    right = _all_sums_sorted(xs[half:])
    bound = max(abs(left[0]), abs(left[-1])) + max(abs(right[0]), abs(right[-1]))
    if bound < 2**62:
        out = np.unique(np.add.outer(np.asarray(left, dtype=np.int64), np.asarray(right, dtype=np.int64)))
        return out.tolist()
    return sorted(_int_sumset(left, right))


def subset_sums(A: FiniteSet, budget: Budget = DEFAULT_BUDGET, backend: str = "auto") -> FiniteSet:
    """``A+``, the set of sums of distinct elements (0 included).

    ``backend`` is one of ``auto``, ``naive`` (plain 2**n doubling),
    ``mitm`` (sorted half-sums combined pairwise) or ``bitset`` (shift-or DP
    over the integer range of possible sums).  ``auto`` picks the bitset for
    integer sets whose sum range fits in ``max_work``, naive up to 16
    elements, and meet-in-the-middle otherwise.
    """
    n = len(A)
    den = _common_denominator(A)
    xs = _scaled(A, den)
    width = sum(abs(x) for x in xs) + 1
    if backend == "auto":
        if den == 1 and width <= budget.max_work:
            backend = "bitset"
        elif n <= NAIVE_MAX:
            backend = "naive"
        else:
            backend = "mitm"
    if backend == "bitset":
        budget.charge(width, "subset_sums[bitset]")
        sums = _subset_sums_bitset(xs)
    elif backend == "naive":
        budget.charge(2**n, "subset_sums[naive]")
        sums = _all_sums_sorted(xs)
    elif backend == "mitm":
        budget.check_card(n, "subset_sums")
        budget.charge(2**n, "subset_sums[mitm]")
        sums = _subset_sums_mitm(xs)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if den == 1:
        return FiniteSet._from_sorted(Fraction(s) for s in sums)
    return FiniteSet._from_sorted(Fraction(s, den) for s in sums)


def _subset_products_factored(xs: List[int], budget: Budget) -> FiniteSet:
    # exponent vectors packed into one int per element, radix large enough that
    # subset sums never carry; the sign travels as a parity bit beside it
    fac = [factor_int(abs(x)) for x in xs]
    primes = sorted({p for f in fac for p in f})
    radix = [sum(f.get(p, 0) for f in fac) + 1 for p in primes]
    weights = []
    w = 1
    for r in radix:
        weights.append(w)
        w *= r
    keys = [(int(x < 0), sum(f.get(p, 0) * wt for p, wt in zip(primes, weights))) for x, f in zip(xs, fac)]
    seen = {(0, 0)}
    for par, key in keys:
        seen |= {(sp ^ par, sk + key) for sp, sk in seen}
        budget.charge(len(seen), "subset_products")
    out = []
    for par, key in seen:
        v = 1
        for p, r in zip(primes, radix):
            key, e = divmod(key, r)
            if e:
                v *= p**e
        out.append(-v if par else v)
    return FiniteSet._from_sorted(Fraction(v) for v in sorted(out))


def subset_products(A: FiniteSet, budget: Budget = DEFAULT_BUDGET, backend: str = "auto") -> FiniteSet:
    """``A^x``, the set of products of distinct elements (1 included)."""
    budget.check_card(len(A), "subset_products")
    star = A.nonzero()
    if backend == "auto":
        backend = "factored" if star.is_integral else "direct"
    if backend == "factored":
        res = _subset_products_factored(star.to_ints(), budget)
    elif backend == "direct":
        prods = {Fraction(1)}
        for a in star:
            prods |= {p * a for p in prods}
            budget.charge(len(prods), "subset_products")
        res = FiniteSet(prods)
    else:
        raise ValueError(f"unknown backend {backend!r}")
    if len(star) != len(A):
        res = res.union(FiniteSet([0]))
    return res


def distinct_h_sums(A: FiniteSet, h: int, budget: Budget = DEFAULT_BUDGET) -> FiniteSet:
    """Sums over all h-element subsets of A."""
    if not 0 <= h <= len(A):
        raise ValueError(f"need 0 <= h <= |A|, got h={h}, |A|={len(A)}")
    den = _common_denominator(A)
    layers: List[set] = [{0}] + [set() for _ in range(h)]
    for i, x in enumerate(_scaled(A, den)):
        for j in range(min(h, i + 1), 0, -1):
            layers[j] |= {s + x for s in layers[j - 1]}
        budget.charge(sum(map(len, layers)), "distinct_h_sums")
    return _unscale(layers[h], den)


def bounded_simple_sums(A: FiniteSet, h: int, budget: Budget = DEFAULT_BUDGET) -> FiniteSet:
    """``A+[h]``: all sums ``sum(e_i * a_i)`` with every ``e_i`` in ``0..h``."""
    if h < 0:
        raise ValueError("h must be nonnegative")
    den = _common_denominator(A)
    cur = {0}
    for x in _scaled(A, den):
        budget.charge(len(cur) * (h + 1), "bounded_simple_sums")
        cur = {s + e * x for s in cur for e in range(h + 1)}
    return _unscale(cur, den)


class GProxy(NamedTuple):
    aplus: int
    atimes: int
    g: int


def g_proxy(A: FiniteSet, budget: Budget = DEFAULT_BUDGET) -> GProxy:
    """``(|A+|, |A^x|, |A+| + |A^x|)`` for one concrete set."""
    p = len(subset_sums(A, budget))
    t = len(subset_products(A, budget))
    return GProxy(p, t, p + t)


# -- set files --------------------------------------------------------------

def parse_set_text(text: str, source: str = "<text>") -> FiniteSet:
    """One rational per line; ``#`` starts a comment; blank lines ignored."""
    values = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            values.append(parse_rational(body))
        except ParseError as exc:
            raise ParseError(f"{source}:{lineno}: {exc}") from None
    out = FiniteSet(values)
    if len(out) != len(values):
        log.warning("%s: merged %d duplicate element(s)", source, len(values) - len(out))
    return out


def read_set(path) -> FiniteSet:
    path = Path(path)
    return parse_set_text(path.read_text(encoding="utf-8"), str(path))


def format_set(A: FiniteSet) -> str:
    return "".join(f"{x}\n" for x in A)
