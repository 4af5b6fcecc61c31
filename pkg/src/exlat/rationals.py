"""Multiplicative relations among nonzero rationals via prime factorization."""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from sympy import factorint

from .intlinalg import hnf, solve_diophantine


@dataclass(frozen=True)
class FactoredRational:
    sign: int
    factors: dict = field(default_factory=dict)

    def value(self) -> Fraction:
        out = Fraction(self.sign)
        for p, e in self.factors.items():
            out *= Fraction(p) ** e
        return out


def factorize_rational(q) -> FactoredRational:
    """sign * prod p^e with ascending primes and nonzero exponents."""
    q = Fraction(q)
    if q == 0:
        raise ValueError("cannot factor zero")
    exps: dict[int, int] = {}
    for p, e in factorint(abs(q.numerator)).items():
        exps[int(p)] = exps.get(int(p), 0) + int(e)
    for p, e in factorint(q.denominator).items():
        exps[int(p)] = exps.get(int(p), 0) - int(e)
    factors = {p: exps[p] for p in sorted(exps) if exps[p]}
    return FactoredRational(1 if q > 0 else -1, factors)


def _centered_mod(x: int, m: int) -> int:
    r = x % m
    return r - m if 2 * r > m else r


def solve_rational_relation(ys, j: int, free) -> tuple[int, ...] | None:
    """Relation prod y_i^k_i = 1 over free+{j} with k_j > 0 minimal, or None.

    Indices are 0-based positions in ``ys``; the result has length len(ys)
    with zeros outside free+{j}.  The sign is handled as an extra prime whose
    exponent counts modulo 2, by adding an unknown m and the row
    sum(s_i k_i) - 2m = 0.
    """
    idx = [j] + sorted(i for i in set(free) if i != j)
    facs = [factorize_rational(ys[i]) for i in idx]
    primes = sorted({p for f in facs for p in f.factors})
    nv = len(idx) + 1
    rows = [[f.factors.get(p, 0) for f in facs] + [0] for p in primes]
    rows.append([1 if f.sign < 0 else 0 for f in facs] + [-2])
    sol = solve_diophantine(rows, [0] * len(rows), nv)
    kernel = list(sol.kernel_basis)
    g = 0
    for k in kernel:
        g = gcd(g, k[0])
    if g == 0:
        return None
    # canonical kernel basis with the j coordinate as the first row
    H, _ = hnf([[k[r] for k in kernel] for r in range(nv)], len(kernel))
    cols = [tuple(H[r][c] for r in range(nv)) for c in range(len(kernel))]
    cols = [c for c in cols if any(c)]
    first = list(cols[0])
    assert first[0] == g
    # size-reduce the first column against the remaining echelon columns
    for c in cols[1:]:
        piv = next(r for r in range(nv) if c[r])
        q = (first[piv] - _centered_mod(first[piv], c[piv])) // c[piv]
        if q:
            first = [a - q * b for a, b in zip(first, c)]
    out = [0] * len(ys)
    for pos, i in enumerate(idx):
        out[i] = first[pos]
    return tuple(out)


def rational_power_product(ys, k) -> Fraction:
    out = Fraction(1)
    for y, e in zip(ys, k):
        if e:
            out *= Fraction(y) ** e
    return out

