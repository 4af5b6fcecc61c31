"""Univariate integer polynomials and exact algebra over the rationals.

Polynomials are stored as ascending coefficient tuples of Python ints.  GCD,
squarefree decomposition and factorization are delegated to sympy's dense
integer routines; bivariate resultants are built here by interpolation
through univariate resultants.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from math import comb, gcd

from sympy.polys.domains import ZZ
from sympy.polys.euclidtools import dup_gcd, dup_resultant
from sympy.polys.factortools import dup_factor_list
from sympy.polys.rootisolation import dup_count_real_roots
from sympy.polys.sqfreetools import dup_sqf_part


class IntPolynomial:
    """Polynomial with integer coefficients, ascending by degree.

    The zero polynomial has an empty coefficient tuple and degree -1.
    Instances are immutable and hashable.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPolynomial is immutable")

    @classmethod
    def from_fractions(cls, coeffs) -> IntPolynomial:
        """Clear denominators of rational coefficients; result is primitive."""
        fr = [Fraction(x) for x in coeffs]
        den = 1
        for x in fr:
            den = den * x.denominator // gcd(den, x.denominator)
        return cls(int(x * den) for x in fr).primitive()

    @classmethod
    def monomial(cls, k: int, c: int = 1) -> IntPolynomial:
        return cls([0] * k + [c])

    @classmethod
    def from_dup(cls, f) -> IntPolynomial:
        return cls(reversed([int(x) for x in f]))

    def to_dup(self):
        return [ZZ(x) for x in reversed(self.coeffs)]

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPolynomial):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(("IntPolynomial", self.coeffs))

    def __repr__(self):
        return f"IntPolynomial({list(self.coeffs)})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            sign = "-" if c < 0 else "+"
            a = abs(c)
            if k == 0:
                body = str(a)
            else:
                mono = "t" if k == 1 else f"t^{k}"
                body = mono if a == 1 else f"{a}*{mono}"
            terms.append((sign, body))
        first_sign, first_body = terms[0]
        out = ("-" if first_sign == "-" else "") + first_body
        for sign, body in terms[1:]:
            out += f" {sign} {body}"
        return out

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __neg__(self):
        return IntPolynomial(-c for c in self.coeffs)

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return IntPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        if not self.coeffs or not other.coeffs:
            return IntPolynomial()
        out = [0] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        result = IntPolynomial([1])
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def content(self) -> int:
        g = 0
        for c in self.coeffs:
            g = gcd(g, c)
        return g

    def primitive(self) -> IntPolynomial:
        """Divide out the content and make the leading coefficient positive."""
        if not self.coeffs:
            return self
        g = self.content()
        if self.lc < 0:
            g = -g
        return IntPolynomial(c // g for c in self.coeffs)

    def derivative(self) -> IntPolynomial:
        return IntPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def reversed(self) -> IntPolynomial:
        """t^d p(1/t); the roots are the reciprocals of the nonzero roots."""
        c = list(self.coeffs)
        while c and c[0] == 0:
            c.pop(0)
        return IntPolynomial(reversed(c))

    def scale_variable(self, s) -> IntPolynomial:
        """Primitive integer multiple of p(s*t); its roots are the roots of p divided by s."""
        s = Fraction(s)
        return IntPolynomial.from_fractions(c * s**k for k, c in enumerate(self.coeffs))

    def monic_coefficients(self) -> list[Fraction]:
        lc = self.lc
        return [Fraction(c, lc) for c in self.coeffs]

    def count_real_roots(self) -> int:
        if self.degree <= 0:
            return 0
        return int(dup_count_real_roots(self.to_dup(), ZZ))


def _coerce(x) -> IntPolynomial:
    if isinstance(x, IntPolynomial):
        return x
    return IntPolynomial([x])


T = IntPolynomial([0, 1])


def poly_gcd(a: IntPolynomial, b: IntPolynomial) -> IntPolynomial:
    """Primitive GCD with positive leading coefficient."""
    if not a and not b:
        return IntPolynomial()
    return IntPolynomial.from_dup(dup_gcd(a.to_dup(), b.to_dup(), ZZ)).primitive()


def squarefree_part(p: IntPolynomial) -> IntPolynomial:
    if p.degree <= 0:
        return p.primitive()
    return IntPolynomial.from_dup(dup_sqf_part(p.to_dup(), ZZ)).primitive()


def _factor_key(item):
    f, _ = item
    return (f.degree, f.coeffs)


@lru_cache(maxsize=4096)
def factor_rational_poly(p: IntPolynomial) -> tuple[tuple[IntPolynomial, int], ...]:
    """Irreducible factorization over Q.

    Returns ``((factor, multiplicity), ...)`` with primitive factors of positive
    leading coefficient, sorted by degree and then coefficients.  The constant
    dropped from the product is rational.
    """
    if not p:
        raise ValueError("cannot factor the zero polynomial")
    if p.degree == 0:
        return ()
    _, factors = dup_factor_list(p.to_dup(), ZZ)
    out = [(IntPolynomial.from_dup(f).primitive(), int(k)) for f, k in factors]
    return tuple(sorted(out, key=_factor_key))


def is_irreducible(p: IntPolynomial) -> bool:
    if p.degree < 1:
        return False
    fs = factor_rational_poly(p)
    return len(fs) == 1 and fs[0][1] == 1


def divmod_q(a: IntPolynomial, b: IntPolynomial) -> tuple[list[Fraction], list[Fraction]]:
    """Quotient and remainder over Q as ascending Fraction lists."""
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    rem = [Fraction(c) for c in a.coeffs]
    db = b.degree
    lc = b.lc
    quot = [Fraction(0)] * max(len(rem) - db, 0)
    for k in range(len(rem) - 1, db - 1, -1):
        c = rem[k]
        if c:
            q = c / lc
            quot[k - db] = q
            for i, bc in enumerate(b.coeffs):
                rem[k - db + i] -= q * bc
    rem = rem[:db]
    while rem and rem[-1] == 0:
        rem.pop()
    return quot, rem


def divides(a: IntPolynomial, b: IntPolynomial) -> bool:
    """True iff a divides b in Q[t]."""
    return not divmod_q(b, a)[1]


def exact_quotient(b: IntPolynomial, a: IntPolynomial) -> IntPolynomial:
    quot, rem = divmod_q(b, a)
    if rem:
        raise ArithmeticError(f"{a} does not divide {b}")
    return IntPolynomial.from_fractions(quot) if quot else IntPolynomial()


def power_mod(k: int, p: IntPolynomial) -> list[Fraction]:
    """t^k modulo p over Q, ascending coefficients with trailing zeros stripped."""
    d = p.degree
    monic = p.monic_coefficients()

    def mulmod(a, b):
        prod = [Fraction(0)] * (len(a) + len(b) - 1) if a and b else []
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    prod[i + j] += x * y
        for top in range(len(prod) - 1, d - 1, -1):
            c = prod[top]
            if c:
                for i in range(d):
                    prod[top - d + i] -= c * monic[i]
        prod = prod[:d]
        while prod and prod[-1] == 0:
            prod.pop()
        return prod

    result = [Fraction(1)]
    if d == 0:
        return []
    base = mulmod([Fraction(0), Fraction(1)], [Fraction(1)])
    while k:
        if k & 1:
            result = mulmod(result, base)
        base = mulmod(base, base)
        k >>= 1
    if len(result) > d:
        result = mulmod(result, [Fraction(1)])
    return result


def resultant_univariate(p: IntPolynomial, q: IntPolynomial) -> int:
    if not p or not q:
        return 0
    return int(dup_resultant(p.to_dup(), q.to_dup(), ZZ))


def _sample_points():
    yield 0
    k = 1
    while True:
        yield k
        yield -k
        k += 1


def resultant(p: IntPolynomial, q) -> IntPolynomial:
    """Res_x(p(x), q(x, y)) as a polynomial in y.

    ``q`` is a sequence of IntPolynomial in y, entry i being the coefficient of
    x^i.  Computed by evaluating univariate resultants at integer y and
    interpolating, with deg_y bounded by deg(p) * deg_y(q).  Sample points at
    which the leading x-coefficient of q vanishes are skipped, so the formal
    Sylvester degree is kept throughout.
    """
    q = [c if isinstance(c, IntPolynomial) else IntPolynomial(c) for c in q]
    while q and not q[-1]:
        q.pop()
    if not p or not q:
        raise ValueError("resultant needs nonzero arguments")
    if len(q) == 1:
        # q has no x: Res = q^deg(p) (p has no y).
        return q[0] ** p.degree
    dy = max(c.degree for c in q)
    bound = p.degree * max(dy, 0)
    xs, ys = [], []
    lead = q[-1]
    pd = p.to_dup()
    for y0 in _sample_points():
        if lead(y0) == 0:
            continue
        qx = [c(y0) for c in q]
        xs.append(y0)
        ys.append(int(dup_resultant(pd, [ZZ(v) for v in reversed(qx)], ZZ)))
        if len(xs) == bound + 1:
            break
    return _interpolate(xs, ys)


def _interpolate(xs: list[int], ys: list[int]) -> IntPolynomial:
    """Newton interpolation; the interpolant must have integer coefficients."""
    n = len(xs)
    coef = [Fraction(y) for y in ys]
    for j in range(1, n):
        for i in range(n - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    # expand Newton form into monomial basis
    poly = [Fraction(0)] * n
    poly[0] = coef[n - 1]
    size = 1
    for k in range(n - 2, -1, -1):
        # poly = poly * (y - xs[k]) + coef[k]
        nxt = [Fraction(0)] * (size + 1)
        for i in range(size):
            nxt[i + 1] += poly[i]
            nxt[i] -= xs[k] * poly[i]
        nxt[0] += coef[k]
        poly[: size + 1] = nxt
        size += 1
    if any(c.denominator != 1 for c in poly):
        raise ArithmeticError("interpolated resultant is not integral")
    return IntPolynomial(int(c) for c in poly)


def composed_product(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Polynomial whose roots are all products z*w, p(z) = q(w) = 0."""
    d = q.degree
    # x^d q(y/x) = sum_k q_k y^k x^(d-k)
    rows = [IntPolynomial() for _ in range(d + 1)]
    for k, c in enumerate(q.coeffs):
        rows[d - k] = IntPolynomial.monomial(k, c)
    return resultant(p, rows)


def composed_sum(p: IntPolynomial, q: IntPolynomial) -> IntPolynomial:
    """Polynomial whose roots are all sums z+w, p(z) = q(w) = 0."""
    d = q.degree
    rows = []
    for i in range(d + 1):
        # coefficient of x^i in q(y - x)
        c = [0] * (d - i + 1)
        for k in range(i, d + 1):
            c[k - i] += q.coeffs[k] * comb(k, i) * (-1) ** i
        rows.append(IntPolynomial(c))
    return resultant(p, rows)


def power_polynomial(p: IntPolynomial, m: int) -> IntPolynomial:
    """Polynomial whose roots are z^m for the roots z of p (with multiplicity)."""
    r = power_mod(m, p)
    den = 1
    for c in r:
        den = den * c.denominator // gcd(den, c.denominator)
    rows = [IntPolynomial([-int(c * den)]) for c in r] or [IntPolynomial()]
    rows[0] = rows[0] + IntPolynomial([0, den])
    return resultant(p, rows)


# -- cyclotomic support -----------------------------------------------------

def euler_phi(k: int) -> int:
    result, n, f = k, k, 2
    while f * f <= n:
        if n % f == 0:
            while n % f == 0:
                n //= f
            result -= result // f
        f += 1
    if n > 1:
        result -= result // n
    return result


@lru_cache(maxsize=None)
def cyclotomic_candidates(d: int) -> tuple[int, ...]:
    """All k >= 1 with phi(k) == d, ascending.

    Uses phi(k) >= sqrt(k/2), so every solution satisfies k <= 2*d^2.
    """
    if d < 1:
        raise ValueError("degree must be positive")
    return tuple(k for k in range(1, 2 * d * d + 1) if euler_phi(k) == d)


@lru_cache(maxsize=None)
def cyclotomic_polynomial(k: int) -> IntPolynomial:
    num = IntPolynomial.monomial(k) - 1
    for d in range(1, k):
        if k % d == 0:
            num = exact_quotient(num, cyclotomic_polynomial(d))
    return num
