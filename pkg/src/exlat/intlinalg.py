"""Integer lattice linear algebra.

Matrices are lists of rows of Python ints.  Vectors are tuples.  The only
canonical form is the column Hermite normal form.
"""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd


def _xgcd(a: int, b: int) -> tuple[int, int, int]:
    """(g, s, t) with s*a + t*b = g = gcd(a, b) >= 0."""
    s0, s1, t0, t1 = 1, 0, 0, 1
    while b:
        q, r = divmod(a, b)
        a, b = b, r
        s0, s1 = s1, s0 - q * s1
        t0, t1 = t1, t0 - q * t1
    if a < 0:
        return -a, -s0, -t0
    return a, s0, t0


def _identity(n: int) -> list[list[int]]:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def _col_op(M, i: int, j: int, s: int, t: int, u: int, v: int) -> None:
    """Columns (ci, cj) <- (s*ci + t*cj, u*ci + v*cj) in place."""
    for row in M:
        a, b = row[i], row[j]
        row[i] = s * a + t * b
        row[j] = u * a + v * b


def _col_axpy(M, dst: int, src: int, q: int) -> None:
    """Column dst <- dst - q * src."""
    for row in M:
        row[dst] -= q * row[src]


def hnf(M, ncols: int | None = None) -> tuple[list[list[int]], list[list[int]]]:
    """Column Hermite normal form H = M U with U unimodular.

    The nonzero columns of H come first and form an echelon: each pivot is
    positive and the entries to its left in the pivot row lie in
    [0, pivot).  Zero columns are moved to the end, so the trailing columns
    of U span the integer kernel of M.
    """
    m = len(M)
    n = len(M[0]) if m else (ncols or 0)
    H = [list(map(int, row)) for row in M]
    U = _identity(n)
    c = 0
    for i in range(m):
        if c >= n:
            break
        for j in range(c + 1, n):
            b = H[i][j]
            if b == 0:
                continue
            a = H[i][c]
            g, s, t = _xgcd(a, b)
            u, v = -b // g, a // g
            _col_op(H, c, j, s, t, u, v)
            _col_op(U, c, j, s, t, u, v)
        if H[i][c] == 0:
            continue
        if H[i][c] < 0:
            for X in (H, U):
                for row in X:
                    row[c] = -row[c]
        piv = H[i][c]
        for pc in range(c):
            q = H[i][pc] // piv
            if q:
                _col_axpy(H, pc, c, q)
                _col_axpy(U, pc, c, q)
        c += 1
    return H, U


def _columns(M) -> list[tuple[int, ...]]:
    if not M:
        return []
    return [tuple(row[j] for row in M) for j in range(len(M[0]))]


def _from_columns(cols, dim: int) -> list[list[int]]:
    return [[int(c[i]) if i < len(c) else 0 for c in cols] for i in range(dim)]


def _mat_vec(M, x) -> tuple[int, ...]:
    return tuple(sum(a * b for a, b in zip(row, x)) for row in M)


def _normalize_sign(v: tuple[int, ...]) -> tuple[int, ...]:
    for x in v:
        if x:
            return v if x > 0 else tuple(-y for y in v)
    return v


@dataclass(frozen=True)
class DiophantineSolution:
    particular: tuple[int, ...]
    kernel_basis: tuple[tuple[int, ...], ...]


def solve_diophantine(A, b, ncols: int | None = None) -> DiophantineSolution | None:
    """General integer solution of A x = b, or None if there is none.

    ``ncols`` gives the number of unknowns when A has no rows.
    """
    m = len(A)
    n = len(A[0]) if m else (ncols or 0)
    H, U = hnf(A, n)
    y = [0] * n
    c = 0
    for i in range(m):
        rhs = b[i] - sum(H[i][j] * y[j] for j in range(c))
        if c < n and H[i][c] != 0:
            q, r = divmod(rhs, H[i][c])
            if r:
                return None
            y[c] = q
            c += 1
        elif rhs != 0:
            return None
    x = _mat_vec(U, y)
    kernel = tuple(
        _normalize_sign(tuple(U[i][j] for i in range(n))) for j in range(c, n)
    )
    return DiophantineSolution(tuple(x), kernel)


def solve_congruence(a, a0: int, lam: int) -> tuple[tuple[int, ...], int] | None:
    """(z, p) with sum a_i z_i + a0 = p * lam and z_i in [0, lam), or None."""
    if lam < 1:
        raise ValueError("lam must be positive")
    g = lam
    # running extended gcd over (lam, a_1, ..., a_s)
    comb = [1] + [0] * len(a)  # g = comb[0]*lam + sum comb[i+1]*a_i
    for i, ai in enumerate(a):
        g2, s, t = _xgcd(g, ai)
        comb = [s * x for x in comb]
        comb[i + 1] += t
        g = g2
    if a0 % g:
        return None
    f = -a0 // g
    z = tuple((comb[i + 1] * f) % lam for i in range(len(a)))
    total = sum(ai * zi for ai, zi in zip(a, z)) + a0
    assert total % lam == 0
    return z, total // lam


def lattice_membership(v, basis) -> tuple[int, ...] | None:
    """Integer coefficients of v over an independent basis, or None."""
    v = tuple(v)
    if not basis:
        return () if not any(v) else None
    dim = max(len(v), max(len(b) for b in basis))
    A = _from_columns(basis, dim)
    rhs = list(v) + [0] * (dim - len(v))
    sol = solve_diophantine(A, rhs, len(basis))
    if sol is None:
        return None
    return sol.particular


def column_hnf_basis(vectors, dim: int | None = None) -> list[tuple[int, ...]]:
    """Canonical basis (nonzero HNF columns) of the span of the vectors."""
    vectors = [tuple(v) for v in vectors]
    if dim is None:
        dim = max((len(v) for v in vectors), default=0)
    if not vectors:
        return []
    H, _ = hnf(_from_columns(vectors, dim), len(vectors))
    return [c for c in _columns(H) if any(c)]


def lattice_equal(b1, b2) -> bool:
    dim = max((len(v) for v in list(b1) + list(b2)), default=0)
    return column_hnf_basis(b1, dim) == column_hnf_basis(b2, dim)


def primitive_part(v) -> tuple[int, ...]:
    g = 0
    for x in v:
        g = gcd(g, x)
    if g == 0:
        return tuple(v)
    return tuple(x // g for x in v)
