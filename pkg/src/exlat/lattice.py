"""Exponent-lattice bases: preprocessing, pre-basis, and basis recovery.

Internally every index is a 0-based position in the permuted sequence
(roots of unity first, then roots of rationals, then the rest).  Only
``get_basis`` translates back to the caller's order.
"""

from __future__ import annotations

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd

from sympy import divisors

from .algebraic import (
    ONE,
    AlgebraicNumber,
    General,
    RootOfRational,
    RootOfUnity,
    classify,
    equals_one,
    min_poly_of_power,
    nondegenerate_check,
)
from .intlinalg import (
    column_hnf_basis,
    solve_congruence,
    solve_diophantine,
)
from .isolation import angle_combine, argument_interval, grid_residues
from .rationals import solve_rational_relation
from .search import CERTIFIED, BoundStrategy, decide_dependence

log = logging.getLogger(__name__)


def classify_number(x: AlgebraicNumber):
    """Classification of x; rationals are handled without polynomial tests."""
    if x.is_rational():
        q = x.rational_value()
        if q == 1:
            return RootOfUnity(1)
        if q == -1:
            return RootOfUnity(2)
        return RootOfRational(1, q)
    return classify(x)


@dataclass
class PreprocessedInput:
    perm: list[int]              # perm[k] = original index of permuted position k
    xs: list[AlgebraicNumber]    # permuted inputs
    ys: list[AlgebraicNumber]    # reduced numbers
    classes: list                # classification per permuted position
    r: int
    s: int
    m: int
    t: int

    @property
    def n(self) -> int:
        return len(self.xs)

    def scale(self, i: int) -> int:
        """Exponent linking x_i to y_i (Rorder for roots of rationals, p_i otherwise)."""
        c = self.classes[i]
        if isinstance(c, RootOfRational):
            return c.rorder
        if isinstance(c, General):
            return c.rexp
        return c.order


def preprocess(xs) -> PreprocessedInput:
    classes = [classify_number(x) for x in xs]
    groups = ([], [], [])
    for i, c in enumerate(classes):
        if isinstance(c, RootOfUnity):
            groups[0].append(i)
        elif isinstance(c, RootOfRational):
            groups[1].append(i)
        else:
            groups[2].append(i)
    perm = groups[0] + groups[1] + groups[2]
    pxs = [xs[i] for i in perm]
    pcl = [classes[i] for i in perm]
    ys = []
    for x, c in zip(pxs, pcl):
        if isinstance(c, RootOfUnity):
            ys.append(ONE)
        elif isinstance(c, RootOfRational):
            ys.append(AlgebraicNumber.from_rational(c.rvalue))
        else:
            ys.append(min_poly_of_power(x, c.rexp))
    r, s, m = len(groups[0]), len(groups[1]), len(groups[2])
    gammas = ys[r + s:]
    t = 0
    while t < m and nondegenerate_check(gammas[: t + 1]):
        t += 1
    return PreprocessedInput(perm, pxs, ys, pcl, r, s, m, t)


@dataclass
class PreBasis:
    J: list[int] = field(default_factory=list)
    w: dict = field(default_factory=dict)
    I: list[int] = field(default_factory=list)


def get_pre_basis(pp: PreprocessedInput, strategy: BoundStrategy = CERTIFIED) -> PreBasis:
    n, r, s, t = pp.n, pp.r, pp.s, pp.t
    pb = PreBasis()

    def record(j: int, rel: dict) -> None:
        w = [0] * n
        for i, k in rel.items():
            w[i] = k if i == j and i < r else k * pp.scale(i)
        pb.J.append(j)
        pb.w[j] = tuple(w)

    for j in range(r):
        record(j, {j: pp.classes[j].order})
    if s > 0:
        pb.I.append(r)
    rvals = [None] * n
    for i in range(r, r + s):
        rvals[i] = pp.classes[i].rvalue
    for j in range(r + 1, r + s):
        k = solve_rational_relation(rvals, j, pb.I)
        if k is None:
            pb.I.append(j)
            continue
        record(j, {i: k[i] for i in pb.I + [j] if k[i]})
    pb.I.extend(range(r + s, r + s + t))
    for j in range(r + s + t, n):
        if not pb.I:
            pb.I.append(j)
            continue
        dep, rel = decide_dependence(
            [(i, pp.ys[i]) for i in pb.I], (j, pp.ys[j]), strategy
        )
        if not dep:
            pb.I.append(j)
            continue
        record(j, rel)
    return pb


# -- basis recovery ---------------------------------------------------------------

def isomorphism(xs, v, lam: int) -> int:
    """The a in [0, lam) with x^v = exp(2 pi i a / lam); needs x^(lam v) = 1."""
    if lam == 1 or not any(v):
        return 0
    support = [(x, e) for x, e in zip(xs, v) if e]
    bits = 16
    while bits <= 1 << 16:
        thetas = [argument_interval(x.enclosure(bits)) for x, _ in support]
        theta = angle_combine([e for _, e in support], thetas)
        cands = grid_residues(theta, lam)
        if len(cands) == 1:
            return cands[0]
        assert cands, "x^v is not a lam-th root of unity"
        bits *= 2
    raise ArithmeticError("argument refinement did not separate the grid points")


def first_basis_vector(xs, w) -> tuple[int, ...]:
    g = 0
    for c in w:
        g = gcd(g, c)
    wt = [c // g for c in w]
    a = isomorphism(xs, wt, g)
    d = gcd(a, g)
    return tuple(c // d for c in w)


def _tail(v) -> int:
    for i in range(len(v) - 1, -1, -1):
        if v[i]:
            return i
    return -1


def pre_basis_to_basis(w, xs, established) -> tuple[int, ...]:
    """The staircase basis vector at the tail of w, given the earlier ones."""
    n = len(w)
    j = _tail(w)
    wj = w[j]
    k = len(established)
    for lam in sorted(divisors(wj), reverse=True):
        # lam * vbar + sum q_i u_i = wbar over coordinates 0..j-1
        A = [[lam if c == row else 0 for c in range(j)] + [u[row] for u in established] for row in range(j)]
        sol = solve_diophantine(A, list(w[:j]), j + k)
        if sol is None:
            continue
        L0 = list(sol.particular[:j])
        Ls = [list(kv[:j]) for kv in sol.kernel_basis]
        a0 = isomorphism(xs, L0 + [wj // lam], lam)
        ais = [isomorphism(xs, Li, lam) for Li in Ls]
        cong = solve_congruence(ais, a0, lam)
        if cong is None:
            continue
        z, _ = cong
        L = [L0[c] + sum(zi * Li[c] for zi, Li in zip(z, Ls)) for c in range(j)]
        return tuple(L + [wj // lam] + [0] * (n - j - 1))
    raise AssertionError("no divisor of w(j) admits a solution")


@dataclass
class LatticeBasis:
    vectors: list[tuple[int, ...]]
    canonical_hnf: list[tuple[int, ...]]


def get_basis(xs, strategy: BoundStrategy = CERTIFIED):
    """Basis of the exponent lattice of xs and a maximal independent index set.

    Both are given in the caller's (0-based) indexing.  Raises Inconclusive
    when the heuristic strategy cannot settle a dependence.
    """
    xs = list(xs)
    n = len(xs)
    if n == 0:
        return LatticeBasis([], []), []
    pp = preprocess(xs)
    pb = get_pre_basis(pp, strategy)
    us = []
    for idx, j in enumerate(pb.J):
        w = pb.w[j]
        if idx == 0:
            u = first_basis_vector(pp.xs, w)
        else:
            u = pre_basis_to_basis(w, pp.xs, us)
        us.append(u)
    vectors = []
    for u in us:
        v = [0] * n
        for pos, orig in enumerate(pp.perm):
            v[orig] = u[pos]
        vectors.append(tuple(v))
    for v in vectors:
        if not equals_one(xs, v):
            raise AssertionError(f"emitted vector {v} is not a relation")
    indep = sorted(pp.perm[i] for i in pb.I)
    assert len(vectors) + len(indep) == n
    return LatticeBasis(vectors, column_hnf_basis(vectors, n)), indep


def rational_inputs(qs) -> list[AlgebraicNumber]:
    return [AlgebraicNumber.from_rational(Fraction(q)) for q in qs]
