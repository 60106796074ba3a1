"""Exact computations for sum-product phenomena over the rationals.

Set algebra (sumsets, iterated combinations, subset sums and products),
multiplicative dimension via exponent lattices, additive energies and
solution counts, and a registry of inequality checks that can be swept over
structured families of sets.
"""

from .budget import Budget
from .counting import (
    RepFunction, energy, is_degenerate, mixed_tuples, nondegenerate_count, rep_function, sigma_count,
)
from .errors import (
    BudgetExceeded, DimensionMismatch, EmptySet, EmptyStarSet, InvalidSpec, MissingParam, ParseError,
    PremiseViolated, SumprodError, UnexpectedParam, UnknownClaim, ZeroInput,
)
from .exactnum import FactoredElement, factor, parse_rational, value
from .families import FamilySpec, generate, sweep
from .inequalities import ClaimInstance, Verdict, gamma0, gamma1, log_D, verify
from .multdim import (
    Embedding, ExponentMatrix, LatticeSet, affine_dim, contains_minus_one, embed, exponent_matrix,
    lattice_sumset, mult_dim,
)
from .setalg import (
    FiniteSet, bounded_simple_sums, difference_combo, distinct_h_sums, g_proxy, linear_combo, productset,
    subset_products, subset_sums, sumset,
)

__version__ = "0.1.0"
