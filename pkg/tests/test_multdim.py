import random
from fractions import Fraction as F

import pytest

from sumprod import (
    DimensionMismatch, EmptySet, EmptyStarSet, FiniteSet, LatticeSet, affine_dim, contains_minus_one, embed,
    exponent_matrix, lattice_sumset, mult_dim, subset_products,
)
from sumprod.exactnum import value, FactoredElement
from sumprod.multdim import (
    bounded_sums_count, coordinate_bounded_sums, coordinate_subset_sums, linear_dim, parse_lattice_text,
    read_lattice,
)
from sumprod.setalg import bounded_simple_sums

import oracles

S = FiniteSet


def _rebuild(primes, row, sign):
    return value(FactoredElement(-1 if sign else 1, tuple((p, e) for p, e in zip(primes, row) if e)))


def test_exponent_matrix_examples():
    M = exponent_matrix(S([2, 4, 8]))
    assert (M.primes, M.rows, M.signs) == ((2,), ((1,), (2,), (3,)), (0, 0, 0))
    M = exponent_matrix(S([-2, 2]))
    assert (M.primes, M.rows, M.signs) == ((2,), ((1,), (1,)), (1, 0))
    M = exponent_matrix(S([1]))
    assert (M.primes, M.rows, M.signs) == ((), ((),), (0,))
    with pytest.raises(EmptyStarSet):
        exponent_matrix(S([0]))


def test_exponent_matrix_reconstructs_elements():
    A = S([F(-3, 4), F(10, 9), 7, 0, F(1, 12)])
    M = exponent_matrix(A)
    assert len(M.rows) == 4 and all(len(r) == len(M.primes) for r in M.rows)
    assert [_rebuild(M.primes, r, s) for r, s in zip(M.rows, M.signs)] == list(A.nonzero())


def test_minus_one_and_mult_dim_examples():
    assert not contains_minus_one(exponent_matrix(S([2, 4, 8])))
    assert contains_minus_one(exponent_matrix(S([-2, 2])))
    assert contains_minus_one(exponent_matrix(S([-1])))
    assert mult_dim(S([1])) == 0
    assert mult_dim(S([2, 4, 8])) == 1
    assert mult_dim(S([-2, 2])) == 2
    # -1 = (-2)^2 / 4 is not reachable: (-2)^2 = 4 has even sign parity
    assert mult_dim(S([-2, 4])) == 1
    # only even powers of -8 are products of powers of 4
    assert mult_dim(S([-8, 4])) == 1
    assert mult_dim(S([-8, 2])) == 2   # -1 = -8 / 2^3
    with pytest.raises(EmptyStarSet):
        mult_dim(S())


def test_embed_examples():
    E = embed(S([2, 4, 8]))
    assert E.coords == ((0, (1,)), (0, (2,)), (0, (3,)))
    assert coordinate_subset_sums(E) == {(0, (i,)) for i in range(7)}
    assert len(subset_products(S([2, 4, 8]))) == 7
    assert embed(S([2, 3])).coords == ((0, (1, 0)), (0, (0, 1)))
    E = embed(S([-1]))
    assert E.coords == ((1, ()),) and E.torsion and E.dim == 1


def test_embed_saturates_the_row_lattice():
    # rows 2 and 4 span 2Z; its saturation is Z, generated by the prime 2
    E = embed(S([4, 16]))
    assert E.free_rank == 1 and E.basis == ((1,),)
    assert sorted(v for _, v in E.coords) == [(2,), (4,)]
    E = embed(S([6, F(3, 2)]))
    assert E.free_rank == 2
    assert len(coordinate_subset_sums(E)) == len(subset_products(S([6, F(3, 2)])))


def _random_set(rng, size):
    pool = [F(rng.choice([-1, 1]) * rng.choice([1, 2, 3, 4, 6, 8, 9, 12, 5, 10, 7]), rng.choice([1, 1, 2, 3, 5]))
            for _ in range(4 * size)]
    return S(rng.sample(sorted(set(pool)), min(size, len(set(pool)))))


def test_mult_dim_bounds_and_inversion():
    rng = random.Random(21)
    for _ in range(200):
        A = _random_set(rng, rng.randint(1, 8))
        d = mult_dim(A)
        assert d <= len(A.nonzero())
        assert d == mult_dim(S(1 / x for x in A))


def test_embed_is_injective_homomorphism():
    rng = random.Random(22)
    for _ in range(60):
        A = _random_set(rng, rng.randint(2, 9))
        E = embed(A)
        assert len(set(E.coords)) == len(E.coords)
        lookup = dict(zip(E.elements, E.coords))
        for _ in range(20):
            x, y = rng.choice(E.elements), rng.choice(E.elements)
            if x * y in lookup:
                (s1, v1), (s2, v2) = lookup[x], lookup[y]
                assert lookup[x * y] == ((s1 + s2) % 2, tuple(a + b for a, b in zip(v1, v2)))


def test_identity_15_on_random_sets():
    rng = random.Random(23)
    for _ in range(100):
        A = _random_set(rng, rng.randint(1, 12))
        assert len(subset_products(A)) == len(coordinate_subset_sums(embed(A)))


def test_bounded_sums_count_matches_sets():
    rng = random.Random(24)
    for _ in range(80):
        A = _random_set(rng, rng.randint(1, 6))
        h = rng.randint(1, 4)
        E = embed(A)
        full = coordinate_bounded_sums(E, h)
        if not E.torsion:
            assert bounded_sums_count([v for _, v in E.coords], h) == len(full)
    assert bounded_sums_count([(1,), (10,)], 2) == len(oracles.bounded_sums([1, 10], 2))
    assert bounded_sums_count([(1, 0), (0, 1)], 3) == 16
    assert bounded_sums_count([], 3) == 1
    assert len(bounded_simple_sums(S([1, 10]), 2)) == 9


def test_lattice_sumset_examples():
    Y = LatticeSet([(3, 1), (-2, 5)])
    assert lattice_sumset(LatticeSet([(0, 0)]), Y) == Y
    T = LatticeSet([(0, 0), (1, 0), (0, 1)])
    assert lattice_sumset(T, T) == LatticeSet([(0, 0), (1, 0), (0, 1), (2, 0), (1, 1), (0, 2)])
    assert lattice_sumset(LatticeSet([(0,), (1,)]), LatticeSet([(0,), (2,)])) == LatticeSet([(i,) for i in range(4)])
    with pytest.raises(DimensionMismatch):
        lattice_sumset(T, LatticeSet([(1,)]))
    with pytest.raises(DimensionMismatch):
        LatticeSet([(1,), (1, 2)])


def test_affine_dim_examples():
    assert affine_dim(LatticeSet([(4, 4)])) == 0
    assert affine_dim(LatticeSet([(0, 0), (1, 1), (2, 2)])) == 1
    assert affine_dim(LatticeSet([(0, 0), (1, 0), (0, 1)])) == 2
    assert linear_dim(LatticeSet([(1, 1), (2, 2)])) == 1
    assert affine_dim(LatticeSet([(1, 1), (2, 2)])) == 1
    assert linear_dim(LatticeSet([(1, 0), (2, 1)])) == 2
    with pytest.raises(EmptySet):
        affine_dim(LatticeSet())


def test_affine_dim_is_subadditive():
    rng = random.Random(25)
    for _ in range(150):
        d = rng.randint(1, 4)
        X = LatticeSet([tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(rng.randint(1, 6))])
        Y = LatticeSet([tuple(rng.randint(-3, 3) for _ in range(d)) for _ in range(rng.randint(1, 6))])
        assert affine_dim(lattice_sumset(X, Y)) <= affine_dim(X) + affine_dim(Y)


def test_lattice_file_format(tmp_path):
    p = tmp_path / "x.txt"
    p.write_text("# simplex\n0,0\n1, 0\n0,1\n0,0\n", encoding="utf-8")
    X = read_lattice(p)
    assert X.points == ((0, 0), (0, 1), (1, 0)) and X.dim == 2
    from sumprod import ParseError
    with pytest.raises(ParseError):
        parse_lattice_text("1,2\n3\n")
    with pytest.raises(ParseError):
        parse_lattice_text("1,x\n")


def test_bounded_sums_count_matches_multiplicative_oracle():
    # for positive A, nu(A)+[h] is in bijection with {prod a_i^e_i : 0 <= e_i <= h}
    rng = random.Random(26)
    for _ in range(60):
        A = S(rng.sample(range(1, 61), rng.randint(1, 5)))
        h = rng.randint(1, 3)
        vs = [v for _, v in embed(A).coords]
        assert bounded_sums_count(vs, h) == oracles.bounded_products_count(A, h)
