"""
Sums, products and simple sums
==============================

Sets are exact: every element is a Fraction, and a FiniteSet keeps them
sorted and deduplicated.
"""

from fractions import Fraction

from sumprod import FiniteSet, g_proxy, linear_combo, productset, subset_products, subset_sums, sumset

A = FiniteSet([1, 2, 4])
B = FiniteSet([10, 100])
print("A + B  =", list(map(str, sumset(A, B))))
print("A * A  =", list(map(str, productset(A, A))))

# kA + lB allows repeated elements; 2A + B here
print("2A + B =", len(linear_combo(2, A, 1, B)), "elements")

# simple sums (sums of distinct elements) of a geometric progression hit every
# integer below 2^N, while its simple products stay tiny
G = FiniteSet(2**i for i in range(10))
print("|G+| =", len(subset_sums(G)), " |Gx| =", len(subset_products(G)))

# rationals work the same way; the sums are computed on a common denominator
R = FiniteSet([Fraction(1, 2), Fraction(1, 3), Fraction(-5, 6)])
print("R+ =", list(map(str, subset_sums(R))))

# |A+| + |Ax| for the first few integers
for N in (4, 8, 12, 16):
    p = g_proxy(FiniteSet(range(1, N + 1)))
    print(f"N={N:2d}  |A+|={p.aplus:5d}  |Ax|={p.atimes:6d}  sum={p.g}")
