"""Exponent lattices of finite sets of rationals.

A nonzero rational is ``sign * prod(p**e)``, so the multiplicative group
generated by ``A* = A \\ {0}`` is read off from the integer matrix of exponent
rows.  Its free rank is the rank of that matrix; its only possible torsion is
``-1``, which lies in the group exactly when some integer relation among the
rows has odd sign parity.

The embedding ``nu`` sends each element to ``(sign_bit, coords)`` in
``Z/2 (+) Z^r``, with coords taken in a basis of the saturation of the row
lattice.  It is an injective homomorphism, so subset products of A correspond
one-to-one to subset sums of the coordinates.
"""

from __future__ import annotations

from dataclasses import dataclass
from pathlib import Path
from typing import Iterable, List, Sequence, Tuple

from . import _intlinalg as il
from .budget import DEFAULT_BUDGET, Budget
from .errors import DimensionMismatch, EmptySet, EmptyStarSet, ParseError
from .exactnum import factor
from .setalg import FiniteSet

Point = Tuple[int, ...]


@dataclass(frozen=True)
class ExponentMatrix:
    primes: Tuple[int, ...]
    rows: Tuple[Tuple[int, ...], ...]
    signs: Tuple[int, ...]
    elements: Tuple = ()

    @property
    def rank(self) -> int:
        return il.rank(self.rows, len(self.primes))


@dataclass(frozen=True)
class Embedding:
    """Coordinates of ``A*`` in ``Z/2 (+) Z^free_rank``."""

    free_rank: int
    basis: Tuple[Tuple[int, ...], ...]
    torsion: bool
    coords: Tuple[Tuple[int, Point], ...]
    primes: Tuple[int, ...] = ()
    elements: Tuple = ()

    @property
    def dim(self) -> int:
        return self.free_rank + int(self.torsion)

    def free_points(self) -> "LatticeSet":
        return LatticeSet((v for _, v in self.coords), dim=self.free_rank)

    def points(self) -> "LatticeSet":
        """Coordinates with the sign bit prepended (meaningful only as a set of labels)."""
        return LatticeSet(((s,) + v for s, v in self.coords), dim=self.free_rank + 1)

    def coord_of(self, x) -> Tuple[int, Point]:
        return self.coords[self.elements.index(x)]


def exponent_matrix(A: FiniteSet) -> ExponentMatrix:
    star = A.nonzero()
    if not len(star):
        raise EmptyStarSet("A has no nonzero element")
    facs = [factor(x) for x in star]
    primes = tuple(sorted({p for f in facs for p, _ in f.factors}))
    rows = tuple(tuple(f.exponent(p) for p in primes) for f in facs)
    signs = tuple(int(f.sign < 0) for f in facs)
    return ExponentMatrix(primes, rows, signs, star.elements)


def contains_minus_one(M: ExponentMatrix) -> bool:
    """Whether -1 lies in the group generated by the rows' elements."""
    kernel = il.left_kernel(M.rows, len(M.primes))
    return any(sum(z * s for z, s in zip(vec, M.signs)) % 2 for vec in kernel)


def mult_dim(A: FiniteSet) -> int:
    """Minimum number of generators of a subgroup of Q* containing ``A*``."""
    M = exponent_matrix(A)
    return M.rank + int(contains_minus_one(M))


def embed(A: FiniteSet) -> Embedding:
    M = exponent_matrix(A)
    p = len(M.primes)
    basis, pivots = il.saturation(M.rows, p) if p else ([], [])
    coords = tuple((s, tuple(il.coordinates(basis, pivots, row))) for s, row in zip(M.signs, M.rows))
    return Embedding(
        free_rank=len(basis),
        basis=tuple(tuple(b) for b in basis),
        torsion=contains_minus_one(M),
        coords=coords,
        primes=M.primes,
        elements=M.elements,
    )


def coordinate_subset_sums(E: Embedding) -> set:
    """Subset sums of the coordinates in ``Z/2 (+) Z^r`` (sign bits added mod 2)."""
    sums = {(0, (0,) * E.free_rank)}
    for s, v in E.coords:
        sums |= {(t ^ s, tuple(a + b for a, b in zip(w, v))) for t, w in sums}
    return sums


def coordinate_bounded_sums(E: Embedding, h: int, budget: Budget = DEFAULT_BUDGET) -> set:
    """``nu(A)+[h]``: sums ``sum(e_i * nu(a_i))`` with ``e_i`` in ``0..h``."""
    sums = {(0, (0,) * E.free_rank)}
    for s, v in E.coords:
        budget.charge(len(sums) * (h + 1), "coordinate_bounded_sums")
        multiples = [((e * s) % 2, tuple(e * a for a in v)) for e in range(h + 1)]
        sums = {(t ^ ms, tuple(a + b for a, b in zip(w, mv))) for t, w in sums for ms, mv in multiples}
    return sums


# -- lattice point sets -----------------------------------------------------

class LatticeSet:
    """Deduplicated set of integer points of a common dimension, kept sorted."""

    __slots__ = ("points", "dim")

    def __init__(self, points: Iterable[Sequence[int]] = (), dim: int | None = None):
        pts = sorted({tuple(int(c) for c in p) for p in points})
        dims = {len(p) for p in pts}
        if len(dims) > 1:
            raise DimensionMismatch(f"points of mixed dimensions {sorted(dims)}")
        if dim is None:
            dim = dims.pop() if dims else 0
        elif dims and dims != {dim}:
            raise DimensionMismatch(f"expected dimension {dim}, got {dims.pop()}")
        self.points: Tuple[Point, ...] = tuple(pts)
        self.dim = dim

    def __len__(self) -> int:
        return len(self.points)

    def __iter__(self):
        return iter(self.points)

    def __contains__(self, p) -> bool:
        return tuple(p) in set(self.points)

    def __eq__(self, other) -> bool:
        if isinstance(other, LatticeSet):
            return self.points == other.points and self.dim == other.dim
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.points, self.dim))

    def __repr__(self) -> str:
        return f"LatticeSet({list(self.points)!r})"


def lattice_sumset(X: LatticeSet, Y: LatticeSet, budget: Budget = DEFAULT_BUDGET) -> LatticeSet:
    if X.dim != Y.dim:
        raise DimensionMismatch(f"dimensions differ: {X.dim} vs {Y.dim}")
    budget.charge(len(X) * len(Y), "lattice_sumset")
    return LatticeSet(
        (tuple(a + b for a, b in zip(x, y)) for x in X for y in Y),
        dim=X.dim,
    )


def affine_dim(S: LatticeSet) -> int:
    """Dimension of the affine hull of S."""
    if not len(S):
        raise EmptySet("affine dimension of the empty set")
    p0 = S.points[0]
    diffs = [[a - b for a, b in zip(p, p0)] for p in S.points[1:]]
    return il.rank(diffs, S.dim) if diffs else 0


def linear_dim(S: LatticeSet) -> int:
    """Dimension of the linear span of S."""
    return il.rank([list(p) for p in S.points], S.dim) if len(S) else 0


def parse_lattice_text(text: str, source: str = "<text>") -> LatticeSet:
    """One point per line as comma-separated integers; ``#`` comments allowed."""
    pts: List[Point] = []
    for lineno, line in enumerate(text.splitlines(), 1):
        body = line.split("#", 1)[0].strip()
        if not body:
            continue
        try:
            pts.append(tuple(int(c) for c in body.split(",")))
        except ValueError:
            raise ParseError(f"{source}:{lineno}: bad lattice point {body!r}") from None
    try:
        return LatticeSet(pts)
    except DimensionMismatch as exc:
        raise ParseError(f"{source}: {exc}") from None


def read_lattice(path) -> LatticeSet:
    path = Path(path)
    return parse_lattice_text(path.read_text(encoding="utf-8"), str(path))


def _support_components(vectors: Sequence[Point]) -> List[List[int]]:
    """Group vector indices whose supports are linked through shared coordinates."""
    parent: dict = {}

    def find(x):
        while parent.setdefault(x, x) != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for v in vectors:
        support = [j for j, c in enumerate(v) if c]
        for j in support[1:]:
            parent[find(j)] = find(support[0])
    groups: dict = {}
    for i, v in enumerate(vectors):
        support = [j for j, c in enumerate(v) if c]
        if support:
            groups.setdefault(find(support[0]), []).append(i)
    return [groups[r] for r in sorted(groups)]


def bounded_sums_count(vectors: Sequence[Point], h: int, budget: Budget = DEFAULT_BUDGET) -> int:
    """``|{sum(e_i * v_i) : e_i in 0..h}|`` for integer vectors.

    Two exponent vectors e, e' give the same sum iff ``e - e'`` lies in the
    integer kernel L of the vectors.  A vector outside the support of L
    therefore multiplies the count by ``h + 1`` on its own, and only the
    remaining core is enumerated.  Core vectors with disjoint supports are
    again independent, so the count is a product over support-connected
    components.  Inside a component each point of the bounding box is packed
    into one integer (mixed radix, so the packing is additive) and the
    distinct sums are tracked as a sorted array.
    """
    import numpy as np

    vectors = [tuple(v) for v in vectors]
    if not vectors:
        return 1
    kernel = il.left_kernel([list(v) for v in vectors], len(vectors[0]))
    core = sorted({i for z in kernel for i, c in enumerate(z) if c})
    total = (h + 1) ** (len(vectors) - len(core))
    vectors = [vectors[i] for i in core]
    for comp in _support_components(vectors):
        vs = [vectors[i] for i in comp]
        cols = sorted({j for v in vs for j, c in enumerate(v) if c})
        lo = [h * sum(min(v[j], 0) for v in vs) for j in cols]
        hi = [h * sum(max(v[j], 0) for v in vs) for j in cols]
        weights, w = [], 1
        for a, b in zip(lo, hi):
            weights.append(w)
            w *= b - a + 1
        keys = [sum(v[j] * wt for j, wt in zip(cols, weights)) for v in vs]
        start = -sum(a * wt for a, wt in zip(lo, weights))
        if w < 2**62:
            cur = np.array([start], dtype=np.int64)
            for key in keys:
                budget.charge(len(cur) * (h + 1), "bounded_sums_count")
                steps = np.arange(h + 1, dtype=np.int64) * key
                cur = np.unique(np.add.outer(cur, steps).ravel())
            total *= len(cur)
        else:
            seen = {start}
            for key in keys:
                budget.charge(len(seen) * (h + 1), "bounded_sums_count")
                seen = {s + e * key for s in seen for e in range(h + 1)}
            total *= len(seen)
    return total
