"""
Multiplicative dimension
========================

A nonzero rational is a sign times a product of prime powers, so a finite set
of rationals sits inside a finitely generated subgroup of Q*.  The minimum
number of generators is the multiplicative dimension; -1 costs one extra
generator when it can be reached.
"""

from sumprod import FiniteSet, embed, exponent_matrix, mult_dim, subset_products
from sumprod.multdim import coordinate_subset_sums

for elems in ([2, 4, 8], [2, 3], [-2, 2], [6, 10, 15], [12, 18, 27]):
    A = FiniteSet(elems)
    M = exponent_matrix(A)
    print(f"{elems!s:14}  primes={M.primes}  rows={M.rows}  mult_dim={mult_dim(A)}")

# the embedding turns products into sums of coordinate vectors
A = FiniteSet([6, 10, 15])
E = embed(A)
for x, (sign, v) in zip(E.elements, E.coords):
    print(f"  {x} -> {v}")

# so subset products of A are counted by subset sums of the coordinates
print("|Ax| =", len(subset_products(A)), " |nu(A)+| =", len(coordinate_subset_sums(E)))
