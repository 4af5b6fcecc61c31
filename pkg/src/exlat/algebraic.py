"""Exact algebraic numbers and the degree-reduction predicates.

An algebraic number is an irreducible primitive integer polynomial together
with a rectangle isolating one of its roots.  Arithmetic goes through
resultants; the right irreducible factor and root of a resultant are picked
by comparing certified isolating boxes with an interval enclosure of the
exact value, refined until a single candidate is left.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Callable

from sympy import divisors

from .isolation import (
    AngleInterval,
    Rectangle,
    angle_combine,
    argument_interval,
    grid_residues,
    isolate_roots,
    log_modulus_interval,
    shrink,
)
from .polynomial import (
    IntPolynomial,
    composed_product,
    composed_sum,
    cyclotomic_candidates,
    cyclotomic_polynomial,
    exact_quotient,
    factor_rational_poly,
    is_irreducible,
    power_mod,
    power_polynomial,
    squarefree_part,
)

MAX_SELECT_BITS = 1 << 14


@dataclass(frozen=True)
class AlgebraicNumber:
    """A root of an irreducible primitive polynomial, picked out by a rectangle."""

    minpoly: IntPolynomial
    rect: Rectangle

    @classmethod
    def from_rational(cls, q) -> AlgebraicNumber:
        q = Fraction(q)
        return cls(IntPolynomial([-q.numerator, q.denominator]), Rectangle.point(q))

    @classmethod
    def from_root_index(cls, p: IntPolynomial, index: int) -> AlgebraicNumber:
        """The root of irreducible p at 0-based position ``index`` in isolation order."""
        p = p.primitive()
        if not is_irreducible(p):
            raise ValueError(f"{p} is not irreducible")
        rects = isolate_roots(p)
        if not 0 <= index < len(rects):
            raise IndexError(f"root index {index} out of range for degree {p.degree}")
        return cls(p, rects[index])

    @classmethod
    def roots_of(cls, p: IntPolynomial) -> list[AlgebraicNumber]:
        p = p.primitive()
        return [cls(p, r) for r in isolate_roots(p)]

    @classmethod
    def near(cls, p: IntPolynomial, z: complex) -> AlgebraicNumber:
        """The root of irreducible p closest to the complex approximation z."""
        roots = cls.roots_of(p)
        return min(roots, key=lambda a: abs(a.approx() - z))

    @classmethod
    def validated(cls, p: IntPolynomial, rect: Rectangle) -> AlgebraicNumber:
        """Check that p is irreducible and rect isolates exactly one of its roots."""
        p = p.primitive()
        if p.degree < 1:
            raise ValueError("minimal polynomial must have positive degree")
        if not is_irreducible(p):
            fs = ", ".join(f"({f})^{k}" if k > 1 else f"({f})" for f, k in factor_rational_poly(p))
            raise ValueError(f"{p} is reducible: {fs}")
        if rect.contains_origin():
            raise ValueError("rectangle contains the origin")
        boxes = isolate_roots(p)
        target = max(rect.size, Fraction(1)) / 4
        for _ in range(200):
            inside = [b for b in boxes if b.intersects(rect)]
            if not inside:
                raise ValueError("rectangle contains no root of the polynomial")
            contained = [
                b for b in inside
                if rect.re_lo <= b.re_lo and b.re_hi <= rect.re_hi
                and rect.im_lo <= b.im_lo and b.im_hi <= rect.im_hi
            ]
            if len(contained) > 1:
                raise ValueError("rectangle contains more than one root")
            if len(contained) == 1 and len(inside) == 1:
                return cls(p, contained[0])
            boxes = [shrink(p, b, target) if b in inside else b for b in boxes]
            target /= 4
        raise ValueError("cannot decide whether the rectangle isolates a root")

    @property
    def degree(self) -> int:
        return self.minpoly.degree

    def is_rational(self) -> bool:
        return self.minpoly.degree == 1

    def rational_value(self) -> Fraction:
        c = self.minpoly.coeffs
        return Fraction(-c[0], c[1])

    def is_zero(self) -> bool:
        return self.minpoly.coeffs == (0, 1)

    def enclosure(self, bits: int) -> Rectangle:
        return _enclosure(self, bits)

    def argument(self, bits: int = 64) -> AngleInterval:
        return argument_interval(self.enclosure(bits))

    def approx(self, bits: int = 64) -> complex:
        re, im = self.enclosure(bits).center()
        return complex(float(re), float(im))

    def __str__(self):
        if self.is_rational():
            return str(self.rational_value())
        z = self.approx()
        return f"root of {self.minpoly} near {z.real:.6g}{z.imag:+.6g}i"


@lru_cache(maxsize=8192)
def _enclosure(a: AlgebraicNumber, bits: int) -> Rectangle:
    if a.rect.is_point():
        return a.rect
    return shrink(a.minpoly, a.rect, Fraction(1, 1 << bits))


# -- root selection ---------------------------------------------------------------

def _select(factors, enclose: Callable[[int], Rectangle]) -> AlgebraicNumber:
    """The unique root among the irreducible ``factors`` lying in every enclosure."""
    cands = []
    for f in factors:
        for b in isolate_roots(f):
            cands.append((f, b))
    bits = 16
    while bits <= MAX_SELECT_BITS:
        e = enclose(bits)
        cands = [(f, b) for f, b in cands if b.intersects(e)]
        if len(cands) == 1:
            return AlgebraicNumber(*cands[0])
        if not cands:
            raise ArithmeticError("no candidate root meets the enclosure")
        target = max(e.size, Fraction(1, 1 << bits))
        cands = [(f, shrink(f, b, target)) for f, b in cands]
        bits *= 2
    raise ArithmeticError("root selection did not converge")


def _irreducible_factors(p: IntPolynomial) -> list[IntPolynomial]:
    return [f for f, _ in factor_rational_poly(p)]


# -- arithmetic -------------------------------------------------------------------

ONE = AlgebraicNumber.from_rational(1)


@lru_cache(maxsize=8192)
def inverse(a: AlgebraicNumber) -> AlgebraicNumber:
    if a.is_rational():
        return AlgebraicNumber.from_rational(1 / a.rational_value())
    p = a.minpoly.reversed().primitive()
    return _select([p], lambda bits: a.enclosure(bits).reciprocal())


@lru_cache(maxsize=8192)
def min_poly_of_power(a: AlgebraicNumber, m: int) -> AlgebraicNumber:
    """a^m for any integer m (negative powers go through the inverse)."""
    if m == 0:
        return ONE
    if m < 0:
        return min_poly_of_power(inverse(a), -m)
    if m == 1:
        return a
    if a.is_rational():
        return AlgebraicNumber.from_rational(a.rational_value() ** m)
    # the resultant is a power of the minimal polynomial of a^m
    f = squarefree_part(power_polynomial(a.minpoly, m))
    return _select([f], lambda bits: a.enclosure(bits) ** m)


def _scale(a: AlgebraicNumber, q: Fraction) -> AlgebraicNumber:
    """q*a for a nonzero rational q."""
    if a.is_rational():
        return AlgebraicNumber.from_rational(a.rational_value() * q)
    # roots of p(t/q) are q times the roots of p; the map z -> qz is a bijection
    return AlgebraicNumber(a.minpoly.scale_variable(1 / q), a.rect * Rectangle.point(q))


@lru_cache(maxsize=8192)
def min_poly_of_product(a: AlgebraicNumber, b: AlgebraicNumber) -> AlgebraicNumber:
    if b.is_rational():
        return _scale(a, b.rational_value())
    if a.is_rational():
        return _scale(b, a.rational_value())
    r = composed_product(a.minpoly, b.minpoly)
    return _select(
        _irreducible_factors(r), lambda bits: a.enclosure(bits) * b.enclosure(bits)
    )


@lru_cache(maxsize=8192)
def min_poly_of_sum(a: AlgebraicNumber, b: AlgebraicNumber) -> AlgebraicNumber:
    """a + b; the result may be zero, in which case its minimal polynomial is t."""
    if a.is_rational() and b.is_rational():
        return AlgebraicNumber.from_rational(a.rational_value() + b.rational_value())
    r = composed_sum(a.minpoly, b.minpoly)
    return _select(
        _irreducible_factors(r), lambda bits: a.enclosure(bits) + b.enclosure(bits)
    )


# -- predicates -------------------------------------------------------------------

@lru_cache(maxsize=4096)
def root_of_unity_test(p: IntPolynomial) -> tuple[bool, int]:
    """(True, k) iff p is the k-th cyclotomic polynomial up to sign."""
    p = p.primitive()
    if p.degree < 1:
        return False, 0
    for k in cyclotomic_candidates(p.degree):
        if power_mod(k, p) == [1]:
            return True, k
    return False, 0


def _passes_modulus_filter(p: IntPolynomial) -> bool:
    """Radical-free test that p(c t)/|a0|, c = |a0|^(1/d), is +-reciprocal.

    With monic coefficients a_j the identity reads
    a_j = sgn(a0) * a_{d-j} * c^(d-2j), checked as a zero-pattern match,
    a sign match and |a_j|^d = |a_{d-j}|^d * |a0|^(d-2j).
    """
    a = p.monic_coefficients()
    d = p.degree
    a0 = a[0]
    s = 1 if a0 > 0 else -1
    for j in range(d + 1):
        x, y = a[j], a[d - j]
        if (x == 0) != (y == 0):
            return False
        if x == 0:
            continue
        if (x > 0) != ((s * y) > 0):
            return False
        if abs(x) ** d != abs(y) ** d * abs(a0) ** (d - 2 * j):
            return False
    return True


def root_of_rational_test(p: IntPolynomial) -> tuple[int, Fraction]:
    """(Rorder, R) of the roots of irreducible p, or (0, 1) if they are not roots of rationals."""
    p = p.primitive()
    if p.coeffs[0] == 0:
        raise ValueError("root of rational test needs p(0) != 0")
    d = p.degree
    a0 = p.monic_coefficients()[0]
    if d == 1:
        return 1, -a0
    if not _passes_modulus_filter(p):
        return 0, Fraction(1)
    f = squarefree_part(power_polynomial(p, d)).scale_variable((-1) ** d * a0)
    ok, order = root_of_unity_test(f)
    if not ok:
        return 0, Fraction(1)
    for lam in divisors(d):
        r = power_mod(lam * order, p)
        if len(r) <= 1:
            return lam * order, r[0] if r else Fraction(0)
    raise AssertionError(f"divisor scan exhausted for {p}")


def unitary_test(p: IntPolynomial) -> tuple[bool, int]:
    """(True, k) if some quotient of two distinct roots of p is a root of unity of order k.

    k is the smallest such order found among the cyclotomic factors of the
    quotient polynomial.
    """
    p = p.primitive()
    d = p.degree
    if d < 2:
        return False, 0
    q = composed_product(p, p.reversed())
    q = exact_quotient(q, IntPolynomial([-1, 1]) ** d)
    best = 0
    for f, _ in factor_rational_poly(q):
        ok, k = root_of_unity_test(f)
        if ok and (best == 0 or k < best):
            best = k
    return (True, best) if best else (False, 0)


def degree_reduction(p: IntPolynomial) -> tuple[int, IntPolynomial]:
    """(prod, f): prod is a reducing exponent and f the minimal polynomial of a^prod."""
    prod, f = 1, p.primitive()
    while f.degree > 1:
        ok, k = unitary_test(f)
        if not ok:
            break
        prod *= k
        f = squarefree_part(power_polynomial(f, k))
    return prod, f


@dataclass(frozen=True)
class RootOfUnity:
    order: int


@dataclass(frozen=True)
class RootOfRational:
    rorder: int
    rvalue: Fraction


@dataclass(frozen=True)
class General:
    rexp: int
    reduced_minpoly: IntPolynomial


@lru_cache(maxsize=4096)
def classify_polynomial(p: IntPolynomial):
    """Classification shared by all roots of the irreducible polynomial p."""
    ok, order = root_of_unity_test(p)
    if ok:
        return RootOfUnity(order)
    k, r = root_of_rational_test(p)
    if k:
        return RootOfRational(k, r)
    prod, f = degree_reduction(p)
    return General(prod, f)


def classify(a: AlgebraicNumber):
    return classify_polynomial(a.minpoly)


# -- products ---------------------------------------------------------------------

def _numeric_excludes_one(xs, v, bits: int) -> bool:
    """True if certified enclosures of log|x^v| or arg(x^v) exclude those of 1."""
    lo = hi = Fraction(0)
    thetas, coeffs = [], []
    for x, e in zip(xs, v):
        if e == 0:
            continue
        r = x.enclosure(bits)
        a, b = log_modulus_interval(r, bits + 32)
        lo, hi = (lo + e * a, hi + e * b) if e > 0 else (lo + e * b, hi + e * a)
        thetas.append(argument_interval(r))
        coeffs.append(e)
    if lo > 0 or hi < 0:
        return True
    theta = angle_combine(coeffs, thetas)
    return not theta.contains(0)


def unity_turn(a: AlgebraicNumber, order: int) -> Fraction:
    """The exact r in [0, 1) with a = exp(2 pi i r), given a^order = 1."""
    if order <= 2:
        return Fraction(0) if a == ONE else Fraction(order - 1, 2)
    bits = 16
    while bits <= MAX_SELECT_BITS:
        cands = grid_residues(a.argument(bits), order)
        if len(cands) == 1:
            return Fraction(cands[0], order)
        if not cands:
            raise ArithmeticError("number is not a root of unity of the given order")
        bits *= 2
    raise ArithmeticError("argument refinement did not separate the grid points")


@lru_cache(maxsize=4096)
def root_of_unity(r: Fraction) -> AlgebraicNumber:
    """exp(2 pi i r) for rational r."""
    r = Fraction(r) % 1
    n = r.denominator
    if n <= 2:
        return AlgebraicNumber.from_rational(1 if r == 0 else -1)
    for z in AlgebraicNumber.roots_of(cyclotomic_polynomial(n)):
        if unity_turn(z, n) == r:
            return z
    raise AssertionError("primitive root of unity not found")


def power_product(xs, v) -> AlgebraicNumber:
    """The exact value of prod x_i^v_i as an algebraic number.

    Roots of unity are tracked exactly as a rational number of turns; the
    remaining factors are multiplied through resultants.
    """
    rational = Fraction(1)
    turn = Fraction(0)
    terms = []
    for x, e in zip(xs, v):
        if e == 0:
            continue
        if x.is_rational():
            rational *= x.rational_value() ** e
            continue
        is_unity, order = root_of_unity_test(x.minpoly)
        if is_unity:
            turn += e * unity_turn(x, order)
            continue
        t = min_poly_of_power(x, e)
        if t.is_rational():
            rational *= t.rational_value()
        else:
            terms.append(t)
    terms.sort(key=lambda t: t.degree)
    acc = None
    for t in terms:
        acc = t if acc is None else min_poly_of_product(acc, t)
        if acc.is_rational():
            rational *= acc.rational_value()
            acc = None
    zeta = root_of_unity(turn)
    acc = zeta if acc is None else min_poly_of_product(acc, zeta)
    return _scale(acc, rational) if rational != 1 else acc


def equals_one(xs, v) -> bool:
    """Exact test of prod x_i^v_i == 1."""
    if len(xs) != len(v):
        raise ValueError("length mismatch")
    if not any(v):
        return True
    for bits in (32, 128):
        if _numeric_excludes_one(xs, v, bits):
            return False
    return power_product(xs, v) == ONE


def nondegenerate_check(gs) -> bool:
    """Degree of the sum of the gs equals the product of their degrees.

    Each partial sum of resultant polynomials must stay irreducible; if one
    factors, every factor has degree below the product and the check fails.
    """
    gs = list(gs)
    if not gs:
        return True
    r = gs[0].minpoly
    for g in gs[1:]:
        r = composed_sum(r, g.minpoly)
        if not is_irreducible(r):
            return False
    return True
