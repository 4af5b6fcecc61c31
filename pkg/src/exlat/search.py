"""Bounded search for a multiplicative relation.

Given independent y_1..y_k and a candidate y_{k+1}, every relation among
them is an integer multiple of one vector g.  Any relation v with
||v||_inf <= B makes the linear forms sum v_i log|y_i| and
sum v_i arg(y_i) - 2 pi m vanish, so (v, m) is a short vector of an
explicit positive definite quadratic form built from certified enclosures
of the logarithms.  The search reduces that form with LLL and enumerates
every short vector exactly (Fincke-Pohst); each survivor is checked with the
exact product test.  An exhausted enumeration proves that no relation lies in
the box.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass
from fractions import Fraction
from math import ceil, exp, factorial, floor, isqrt, log, log2

from sympy import ZZ, divisors
from sympy.polys.matrices import DomainMatrix

from .algebraic import AlgebraicNumber, equals_one, root_of_unity_test
from .intlinalg import primitive_part
from .isolation import argument_interval, log_modulus_interval

log_ = logging.getLogger(__name__)

# instrumentation: how many times the bounded search was entered
SEARCH_STATS = {"box_search_entries": 0, "enumerated_points": 0}

FALSE_POINT_CAP = 4000


class Inconclusive(Exception):
    """The heuristic search exhausted its largest box without a relation."""


@dataclass(frozen=True)
class BoundStrategy:
    """``certified`` searches a box proven to contain a relation if one exists;
    ``heuristic`` tries boxes 2, 4, 8, ..., max_box and reports Inconclusive."""

    mode: str = "certified"
    max_box: int = 64
    bound: int | None = None

    def __post_init__(self):
        if self.mode not in ("certified", "heuristic"):
            raise ValueError(f"unknown bound mode {self.mode!r}")


CERTIFIED = BoundStrategy()


def reset_stats() -> None:
    for k in SEARCH_STATS:
        SEARCH_STATS[k] = 0


# -- the relation bound -------------------------------------------------------

def height_upper_bound(a: AlgebraicNumber) -> float:
    """Upper bound for the absolute logarithmic Weil height.

    Uses Landau's inequality M(p) <= ||p||_2, padded against rounding.
    """
    p = a.minpoly
    norm2 = sum(c * c for c in p.coeffs)
    return (0.5 * log(norm2) / p.degree) * (1 + 1e-9) + 1e-12


def loher_masser_bound(numbers) -> int:
    """Box radius containing a relation whenever the numbers are dependent.

    The bound for n numbers in a field of degree D whose proper subsequences
    are independent is 58 (n! e^n / n^n) D^(n+1) log D * prod_{j != i} h_j
    (Loher and Masser, uniformly counting points of bounded height).  A
    minimal dependent subsequence may be shorter than the whole input, so
    the maximum over all lengths is taken and each height is replaced by
    max(1, h).  D is bounded by the product of the degrees; any field
    containing the numbers may be used, so D >= 2 is allowed.
    """
    n = len(numbers)
    D = 1
    for a in numbers:
        D *= a.degree
    D = max(D, 2)
    hprod = 1.0
    for a in numbers:
        hprod *= max(1.0, height_upper_bound(a))
    best = 0.0
    for s in range(1, n + 1):
        c = 58 * factorial(s) * exp(s) / s**s
        best = max(best, c * D ** (s + 1) * log(D))
    return int(ceil(best * hprod)) + 1


# -- certified logarithms -------------------------------------------------------

def _log_modulus(a: AlgebraicNumber, bits: int) -> tuple[Fraction, Fraction]:
    """(midpoint, radius) of a certified interval for log|a|."""
    eb = bits + 16
    while True:
        lo, hi = log_modulus_interval(a.enclosure(eb), bits + 32)
        if hi - lo <= Fraction(1, 1 << bits):
            return (lo + hi) / 2, (hi - lo) / 2
        eb *= 2


def _argument(a: AlgebraicNumber, bits: int) -> tuple[Fraction, Fraction]:
    """(midpoint, radius) of a certified interval for arg(a)/pi."""
    eb = bits + 16
    while True:
        th = argument_interval(a.enclosure(eb))
        if th.width <= Fraction(1, 1 << bits):
            return (th.lo + th.hi) / 2, th.width / 2
        eb *= 2


# -- lattice tools ------------------------------------------------------------------

def _lll_transform(rows: list[list[int]]) -> list[list[int]]:
    """Unimodular T with T * rows LLL-reduced (rows are the basis)."""
    M = DomainMatrix([[ZZ(x) for x in r] for r in rows], (len(rows), len(rows[0])), ZZ)
    _, T = M.lll_transform()
    return [[int(x) for x in r] for r in T.to_list()]


def _sqrt_up(t: Fraction) -> Fraction:
    K = 24
    num = t.numerator << (2 * K)
    s = isqrt(-(-num // t.denominator)) + 1
    return Fraction(s, 1 << K)


def _short_vectors(G, radius: Fraction):
    """Yield every nonzero integer x with x^T G x <= radius (G rational, positive definite)."""
    n = len(G)
    # Q(x) = sum_i d_i (x_i + sum_{j>i} m_ij x_j)^2
    A = [[Fraction(G[i][j]) for j in range(n)] for i in range(n)]
    d = [Fraction(0)] * n
    m = [[Fraction(0)] * n for _ in range(n)]
    for i in range(n):
        d[i] = A[i][i]
        if d[i] <= 0:
            raise ArithmeticError("form is not positive definite")
        for j in range(i + 1, n):
            m[i][j] = A[i][j] / d[i]
        for j in range(i + 1, n):
            for k in range(j, n):
                A[j][k] -= m[i][j] * A[i][k]
                A[k][j] = A[j][k]
    x = [0] * n

    def rec(i: int, budget: Fraction):
        c = sum((m[i][j] * x[j] for j in range(i + 1, n)), Fraction(0))
        t = budget / d[i]
        s = _sqrt_up(t)
        lo = floor(-c - s)
        hi = ceil(-c + s)
        for xi in range(lo, hi + 1):
            r = xi + c
            used = d[i] * r * r
            if used > budget:
                continue
            x[i] = xi
            if i == 0:
                if any(x):
                    yield list(x)
            else:
                yield from rec(i - 1, budget - used)
        x[i] = 0

    yield from rec(n - 1, radius)


# -- the search -----------------------------------------------------------------------

def _search_box(ys: list[AlgebraicNumber], B: int) -> tuple[int, ...] | None:
    """A relation among ys found by exhaustive search of [-B, B]^n, or None."""
    n = len(ys)
    bits = int(ceil((n + 2) * log2(max(B, 2) * n))) + 48
    while True:
        res = _search_at(ys, B, bits)
        if res is not False:
            return res
        bits *= 2
        log_.debug("raising search precision to %d bits", bits)


def _search_at(ys, B: int, bits: int):
    n = len(ys)
    logs = [_log_modulus(y, bits) for y in ys]
    args = [_argument(y, bits) for y in ys]
    floor_eps = Fraction(1, 1 << bits)
    E_L = max(n * B * max(r for _, r in logs), floor_eps)
    E_A = max(n * B * max(r for _, r in args), floor_eps)
    # exact quadratic form in (v_1..v_n, m): sum (v_i/B)^2 + (L/E_L)^2 + (A/E_A)^2
    cols = []
    for i in range(n):
        e = [Fraction(0)] * n
        e[i] = Fraction(1, B)
        cols.append(e + [logs[i][0] / E_L, args[i][0] / E_A])
    cols.append([Fraction(0)] * n + [Fraction(0), Fraction(-2) / E_A])
    dim = n + 1
    G = [[sum(a * b for a, b in zip(cols[i], cols[j])) for j in range(dim)] for i in range(dim)]
    # LLL on a rounded integer copy; the transform is exact and unimodular
    scale = 1 << (bits + 16)
    rows = [[round(c * scale) for c in col] for col in cols]
    try:
        T = _lll_transform(rows)
    except Exception:  # rounding made the copy degenerate; skip reduction
        T = [[int(i == j) for j in range(dim)] for i in range(dim)]
    Gr = [
        [sum(T[i][a] * G[a][b] * T[j][b] for a in range(dim) for b in range(dim)) for j in range(dim)]
        for i in range(dim)
    ]
    radius = Fraction(n + 2)
    false_points = 0
    for y in _short_vectors(Gr, radius):
        SEARCH_STATS["enumerated_points"] += 1
        vm = [sum(y[i] * T[i][k] for i in range(dim)) for k in range(dim)]
        v = vm[:n]
        if not any(v):
            continue
        rel = _generator_on_line(ys, v)
        if rel is not None:
            return rel
        false_points += 1
        if false_points > FALSE_POINT_CAP:
            return False
    return None


def _generator_on_line(ys, v):
    """The relation generator on the line through v, or None if v is no relation.

    Relations form a rank <= 1 lattice Z g.  If v = c p with p primitive is a
    relation then g = k p for the least k dividing c with (y^p)^k = 1; torsion
    (for example 2/3 and -2/3) can make k > 1.
    """
    p = primitive_part(v)
    c = next(a // b for a, b in zip(v, p) if b)
    # ascending, so the exact test never sees a large multiple of g
    for k in divisors(abs(c)):
        g = tuple(k * x for x in p)
        if equals_one(ys, g):
            return g
    return None


def decide_dependence(indep, cand, strategy: BoundStrategy = CERTIFIED):
    """Decide whether the independent numbers and the candidate are dependent.

    ``indep`` is a sequence of (index, AlgebraicNumber) pairs and ``cand`` an
    (index, AlgebraicNumber) pair.  Returns (True, v) with v a dict from
    index to exponent and v[cand] > 0, or (False, None).  The relation
    generates the relation lattice, so its candidate entry is the smallest
    possible.
    """
    indep = list(indep)
    ci, cy = cand
    if not indep:
        ok, k = root_of_unity_test(cy.minpoly)
        return (True, {ci: k}) if ok else (False, None)
    SEARCH_STATS["box_search_entries"] += 1
    ys = [y for _, y in indep] + [cy]
    idx = [i for i, _ in indep] + [ci]
    if strategy.mode == "certified":
        B = strategy.bound if strategy.bound is not None else loher_masser_bound(ys)
        rel = _search_box(ys, B)
    else:
        rel = None
        B = 2
        while rel is None and B <= strategy.max_box:
            rel = _search_box(ys, B)
            B *= 2
        if rel is None:
            raise Inconclusive(
                f"no relation for index {ci} within box {strategy.max_box}"
            )
    if rel is None:
        return False, None
    if rel[-1] < 0:
        rel = tuple(-x for x in rel)
    assert rel[-1] > 0, "independent numbers admit no relation without the candidate"
    return True, dict(zip(idx, rel))
