"""Small exact integer linear algebra: echelon forms, kernels, saturation."""

from __future__ import annotations

from typing import List, Sequence, Tuple

Matrix = List[List[int]]


def xgcd(a: int, b: int) -> Tuple[int, int, int]:
    """Return ``(g, x, y)`` with ``x*a + y*b == g == gcd(a, b) >= 0``."""
    x0, y0, x1, y1 = 1, 0, 0, 1
    while b:
        q, a, b = a // b, b, a % b
        x0, x1 = x1, x0 - q * x1
        y0, y1 = y1, y0 - q * y1
    if a < 0:
        return -a, -x0, -y0
    return a, x0, y0


def transpose(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    return [[r[j] for r in rows] for j in range(ncols)]


def hermite(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[Matrix, Matrix, List[int]]:
    """Row-style Hermite normal form.

    Returns ``(H, U, pivots)`` with ``U`` unimodular and ``U @ M == H``.  The
    nonzero rows of H come first, have positive pivots at the column indices
    in ``pivots``, and entries above each pivot are reduced into
    ``[0, pivot)``.
    """
    n = len(rows)
    H = [list(r) for r in rows]
    U = [[int(i == j) for j in range(n)] for i in range(n)]
    pivots: List[int] = []
    pr = 0
    for col in range(ncols):
        if pr == n:
            break
        for i in range(pr + 1, n):
            b = H[i][col]
            if b == 0:
                continue
            a = H[pr][col]
            g, x, y = xgcd(a, b)
            ag, bg = a // g, b // g
            for M in (H, U):
                rp, ri = M[pr], M[i]
                M[pr] = [x * u + y * v for u, v in zip(rp, ri)]
                M[i] = [ag * v - bg * u for u, v in zip(rp, ri)]
        if H[pr][col] == 0:
            continue
        if H[pr][col] < 0:
            H[pr] = [-v for v in H[pr]]
            U[pr] = [-v for v in U[pr]]
        piv = H[pr][col]
        for i in range(pr):
            q = H[i][col] // piv
            if q:
                H[i] = [u - q * v for u, v in zip(H[i], H[pr])]
                U[i] = [u - q * v for u, v in zip(U[i], U[pr])]
        pivots.append(col)
        pr += 1
    return H, U, pivots


def rank(rows: Sequence[Sequence[int]], ncols: int) -> int:
    return len(hermite(rows, ncols)[2])


def left_kernel(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of ``{z in Z^n : z @ M == 0}``.

    The integer kernel is automatically saturated, and because U is
    unimodular the trailing rows of U form a basis of it, not merely of a
    finite-index sublattice.
    """
    _, U, pivots = hermite(rows, ncols)
    return U[len(pivots):]


def right_kernel(rows: Sequence[Sequence[int]], ncols: int) -> Matrix:
    """Basis of ``{v in Z^p : M @ v == 0}``."""
    return left_kernel(transpose(rows, ncols), len(rows))


def saturation(rows: Sequence[Sequence[int]], ncols: int) -> Tuple[Matrix, List[int]]:
    """HNF basis of ``span_Q(rows) ∩ Z^p`` and its pivot columns."""
    perp = right_kernel(rows, ncols)
    sat = right_kernel(perp, ncols) if perp else [[int(i == j) for j in range(ncols)] for i in range(ncols)]
    H, _, pivots = hermite(sat, ncols)
    return H[: len(pivots)], pivots


def coordinates(basis: Matrix, pivots: List[int], v: Sequence[int]) -> List[int]:
    """Integer coordinates of ``v`` in an echelon basis; ValueError if v is outside the lattice."""
    rem = list(v)
    coords = []
    for row, col in zip(basis, pivots):
        q, r = divmod(rem[col], row[col])
        if r:
            raise ValueError("vector is not in the lattice")
        coords.append(q)
        if q:
            rem = [a - q * b for a, b in zip(rem, row)]
    if any(rem):
        raise ValueError("vector is not in the span of the basis")
    return coords
