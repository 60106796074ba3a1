"""Exact rationals and complete prime factorization.

Rationals are :class:`fractions.Fraction`, which already keeps the canonical
form (coprime numerator/denominator, positive denominator, zero as 0/1).
This module adds the text parser used by set files and the factorization
layer that turns a nonzero rational into a sign and a prime-exponent vector.
"""

from __future__ import annotations

import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Tuple, Union

import numpy as np

from .errors import BudgetExceeded, ParseError, ZeroInput

Rational = Fraction
RationalLike = Union[int, Fraction, str]

TRIAL_LIMIT = 10**6
RHO_ITERATIONS = 2_000_000

_RATIONAL_RE = re.compile(r"^\s*(-?)(\d+)(?:/(\d+))?\s*$")


def parse_rational(text: str) -> Fraction:
    """Parse ``-?digits(/digits)?`` into a canonical Fraction.

    >>> parse_rational("-6/4")
    Fraction(-3, 2)
    """
    m = _RATIONAL_RE.match(text)
    if m is None:
        raise ParseError(f"not a rational: {text!r}")
    sign, num, den = m.groups()
    den_i = int(den) if den is not None else 1
    if den_i == 0:
        raise ParseError(f"zero denominator: {text!r}")
    value = Fraction(int(num), den_i)
    return -value if sign else value


def as_rational(x: RationalLike) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, bool):
        raise TypeError("bool is not a rational")
    if isinstance(x, (int, np.integer)):
        return Fraction(int(x))
    if isinstance(x, str):
        return parse_rational(x)
    raise TypeError(f"cannot interpret {type(x).__name__} as an exact rational")


def format_rational(x: Fraction) -> str:
    return str(x)


def inv(x: RationalLike) -> Fraction:
    x = as_rational(x)
    if x == 0:
        raise ZeroDivisionError("inverse of zero")
    return 1 / x


# -- primes -----------------------------------------------------------------

@lru_cache(maxsize=1)
def _small_primes() -> Tuple[int, ...]:
    sieve = np.ones(TRIAL_LIMIT + 1, dtype=bool)
    sieve[:2] = False
    for p in range(2, math.isqrt(TRIAL_LIMIT) + 1):
        if sieve[p]:
            sieve[p * p :: p] = False
    return tuple(int(p) for p in np.flatnonzero(sieve))


_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def is_prime(n: int) -> bool:
    """Miller-Rabin with the first 13 prime bases.

    Deterministic for n < 3.3 * 10**24; beyond that a strong probable-prime
    test with 13 independent bases.
    """
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    for a in _MR_BASES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(s - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def _rho(n: int, budget: int) -> int:
    """Brent's variant of Pollard rho; returns a nontrivial factor of composite n."""
    spent = 0
    for c in range(1, 1 << 30):
        y, r, q, g = 2, 1, 1, 1
        x = ys = y
        m = 128
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            spent += r
            r *= 2
            if spent > budget:
                raise BudgetExceeded(f"Pollard rho budget exhausted on {n}")
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g
    raise BudgetExceeded(f"Pollard rho failed on {n}")  # pragma: no cover


def factor_int(n: int, rho_budget: int = RHO_ITERATIONS) -> dict:
    """Prime factorization of a positive integer as ``{prime: exponent}``."""
    if n < 1:
        raise ValueError("factor_int expects a positive integer")
    out: dict = {}
    for p in _small_primes():
        if p * p > n:
            break
        if n % p == 0:
            e = 0
            while n % p == 0:
                n //= p
                e += 1
            out[p] = e
    if n == 1:
        return out
    if n <= TRIAL_LIMIT * TRIAL_LIMIT or is_prime(n):
        # every cofactor below the trial bound squared is prime
        out[n] = out.get(n, 0) + 1
        return out
    stack = [n]
    while stack:
        m = stack.pop()
        if is_prime(m):
            out[m] = out.get(m, 0) + 1
            continue
        d = _rho(m, rho_budget)
        stack.extend((d, m // d))
    return dict(sorted(out.items()))


# -- factored elements ------------------------------------------------------

@dataclass(frozen=True)
class FactoredElement:
    """A nonzero rational written as ``sign * prod(p**e)``."""

    sign: int
    factors: Tuple[Tuple[int, int], ...] = ()

    def __post_init__(self):
        if self.sign not in (1, -1):
            raise ValueError("sign must be +1 or -1")
        primes = [p for p, _ in self.factors]
        if any(a >= b for a, b in zip(primes, primes[1:])):
            raise ValueError("primes must be strictly increasing")
        if any(e == 0 for _, e in self.factors):
            raise ValueError("exponents must be nonzero")

    def exponent(self, p: int) -> int:
        for q, e in self.factors:
            if q == p:
                return e
        return 0

    def __mul__(self, other: "FactoredElement") -> "FactoredElement":
        merged = dict(self.factors)
        for p, e in other.factors:
            merged[p] = merged.get(p, 0) + e
        return FactoredElement(
            self.sign * other.sign,
            tuple((p, e) for p, e in sorted(merged.items()) if e),
        )


def factor(x: RationalLike, rho_budget: int = RHO_ITERATIONS) -> FactoredElement:
    x = as_rational(x)
    if x == 0:
        raise ZeroInput("0 has no factorization")
    merged = dict(factor_int(abs(x.numerator), rho_budget))
    for p, e in factor_int(x.denominator, rho_budget).items():
        merged[p] = -e
    return FactoredElement(1 if x > 0 else -1, tuple(sorted(merged.items())))


def value(f: FactoredElement) -> Fraction:
    num, den = 1, 1
    for p, e in f.factors:
        if e > 0:
            num *= p**e
        else:
            den *= p ** (-e)
    return Fraction(f.sign * num, den)


def primes_of(xs: Iterable[RationalLike]) -> Tuple[int, ...]:
    ps = set()
    for x in xs:
        x = as_rational(x)
        if x != 0:
            ps.update(p for p, _ in factor(x).factors)
    return tuple(sorted(ps))
