"""Certified complex root isolation and argument enclosures.

Roots are approximated numerically and then certified: around each
approximation z of a root of the degree-d polynomial p, the closed disc of
radius d*|p(z)/p'(z)| contains a root.  When the d bounding boxes of these
discs are pairwise disjoint, each box holds exactly one root.  All the
certification arithmetic is exact; only the choice of centres is numeric.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import ceil, floor, isqrt

import mpmath
from mpmath import iv

from .polynomial import IntPolynomial, squarefree_part

ZERO = Fraction(0)


@dataclass(frozen=True)
class Rectangle:
    """Closed box [re_lo, re_hi] x [im_lo, im_hi] with rational corners."""

    re_lo: Fraction
    re_hi: Fraction
    im_lo: Fraction
    im_hi: Fraction

    def __post_init__(self):
        for name in ("re_lo", "re_hi", "im_lo", "im_hi"):
            object.__setattr__(self, name, Fraction(getattr(self, name)))
        if self.re_lo > self.re_hi or self.im_lo > self.im_hi:
            raise ValueError("empty rectangle")

    @classmethod
    def point(cls, re, im=0) -> Rectangle:
        return cls(re, re, im, im)

    @property
    def width(self) -> Fraction:
        return self.re_hi - self.re_lo

    @property
    def height(self) -> Fraction:
        return self.im_hi - self.im_lo

    @property
    def size(self) -> Fraction:
        return max(self.width, self.height)

    def center(self) -> tuple[Fraction, Fraction]:
        return (self.re_lo + self.re_hi) / 2, (self.im_lo + self.im_hi) / 2

    def contains(self, re, im=0) -> bool:
        return self.re_lo <= re <= self.re_hi and self.im_lo <= im <= self.im_hi

    def contains_origin(self) -> bool:
        return self.contains(ZERO, ZERO)

    def intersects(self, other: Rectangle) -> bool:
        return not (
            self.re_hi < other.re_lo
            or other.re_hi < self.re_lo
            or self.im_hi < other.im_lo
            or other.im_hi < self.im_lo
        )

    def intersection(self, other: Rectangle) -> Rectangle:
        return Rectangle(
            max(self.re_lo, other.re_lo),
            min(self.re_hi, other.re_hi),
            max(self.im_lo, other.im_lo),
            min(self.im_hi, other.im_hi),
        )

    def conjugate(self) -> Rectangle:
        return Rectangle(self.re_lo, self.re_hi, -self.im_hi, -self.im_lo)

    def is_point(self) -> bool:
        return self.width == 0 and self.height == 0

    def __add__(self, other: Rectangle) -> Rectangle:
        return Rectangle(
            self.re_lo + other.re_lo,
            self.re_hi + other.re_hi,
            self.im_lo + other.im_lo,
            self.im_hi + other.im_hi,
        )

    def __mul__(self, other: Rectangle) -> Rectangle:
        a, b = (self.re_lo, self.re_hi), (self.im_lo, self.im_hi)
        c, d = (other.re_lo, other.re_hi), (other.im_lo, other.im_hi)
        ac = [x * y for x in a for y in c]
        bd = [x * y for x in b for y in d]
        ad = [x * y for x in a for y in d]
        bc = [x * y for x in b for y in c]
        return Rectangle(
            min(ac) - max(bd), max(ac) - min(bd), min(ad) + min(bc), max(ad) + max(bc)
        )

    def __pow__(self, m: int) -> Rectangle:
        if m < 0:
            return self.reciprocal() ** (-m)
        result = Rectangle.point(1)
        base = self
        while m:
            if m & 1:
                result = result * base
            base = base * base
            m >>= 1
        return result

    def modulus_sq_bounds(self) -> tuple[Fraction, Fraction]:
        """Exact min and max of |z|^2 over the rectangle."""
        def nearest(lo, hi):
            if lo <= 0 <= hi:
                return ZERO
            return min(abs(lo), abs(hi))

        rx, ry = nearest(self.re_lo, self.re_hi), nearest(self.im_lo, self.im_hi)
        fx = max(abs(self.re_lo), abs(self.re_hi))
        fy = max(abs(self.im_lo), abs(self.im_hi))
        return rx * rx + ry * ry, fx * fx + fy * fy

    def reciprocal(self) -> Rectangle:
        """Box containing {1/z : z in self}; needs the origin outside."""
        if self.contains_origin():
            raise ZeroDivisionError("rectangle contains the origin")
        if self.is_point():
            x, y = self.re_lo, self.im_lo
            n = x * x + y * y
            return Rectangle.point(x / n, -y / n)
        lo, hi = self.modulus_sq_bounds()
        # 1/z = conj(z)/|z|^2, with |z|^2 in [lo, hi] and lo > 0
        inv = (1 / hi, 1 / lo)
        re = [x * s for x in (self.re_lo, self.re_hi) for s in inv]
        im = [-y * s for y in (self.im_lo, self.im_hi) for s in inv]
        return Rectangle(min(re), max(re), min(im), max(im))

    def __repr__(self):
        return f"Rectangle({self.re_lo}, {self.re_hi}; {self.im_lo}, {self.im_hi})"


@dataclass(frozen=True)
class AngleInterval:
    """Closed interval of arguments in units of pi; read modulo 2."""

    lo: Fraction
    hi: Fraction

    def __post_init__(self):
        object.__setattr__(self, "lo", Fraction(self.lo))
        object.__setattr__(self, "hi", Fraction(self.hi))
        if self.lo > self.hi:
            raise ValueError("empty angle interval")

    @property
    def width(self) -> Fraction:
        return self.hi - self.lo

    def contains(self, theta) -> bool:
        """Membership modulo 2."""
        theta = Fraction(theta)
        k = floor((self.lo - theta) / 2)
        t = theta + 2 * k
        while t < self.lo:
            t += 2
        return t <= self.hi


# -- certified isolation -------------------------------------------------------

BASE_PREC = 64
MAX_PREC = 1 << 16


def _gauss_horner(coeffs, a: int, b: int, k: int) -> tuple[int, int]:
    """Homogenised p((a+bi)/2^k) * 2^(k*deg) as a Gaussian integer."""
    d = len(coeffs) - 1
    re, im = 0, 0
    for j in range(d, -1, -1):
        re, im = re * a - im * b, re * b + im * a
        re += coeffs[j] << (k * (d - j))
    return re, im


def _disc_radius(p: IntPolynomial, dp: IntPolynomial, a: int, b: int, k: int) -> Fraction | None:
    """Dyadic upper bound of deg(p)*|p(z)/p'(z)| at z = (a+bi)/2^k, or None if p'(z) = 0."""
    d = p.degree
    pr, pi = _gauss_horner(p.coeffs, a, b, k)
    qr, qi = _gauss_horner(dp.coeffs, a, b, k)
    num = d * d * (pr * pr + pi * pi)
    den = (qr * qr + qi * qi) << (2 * k)
    if den == 0:
        return None
    if num == 0:
        return ZERO
    # rho <= (isqrt(num * 4^K / den) + 1) / 2^K
    K = k + 8
    s = isqrt((num << (2 * K)) // den) + 1
    return Fraction(s, 1 << K)


@lru_cache(maxsize=1024)
def _seed_roots(p: IntPolynomial, prec: int) -> tuple:
    with mpmath.workprec(prec):
        coeffs = [mpmath.mpf(c) for c in reversed(p.coeffs)]
        roots = mpmath.polyroots(
            coeffs, maxsteps=max(50, 4 * prec), extraprec=prec, error=False
        )
        return tuple((mpmath.mpf(mpmath.re(z)), mpmath.mpf(mpmath.im(z))) for z in roots)


def _newton_step(coeffs, z):
    v, dv = mpmath.polyval(coeffs, z, derivative=True)
    return z - v / dv if dv != 0 else z


def _approximate(p: IntPolynomial, prec: int) -> list[tuple[int, int]] | None:
    """Dyadic root approximations (a, b) ~ (a + bi)/2^prec.

    Seeds come from polyroots at modest precision and are polished by Newton
    steps at the full precision.  Conjugate symmetry and the exact count of
    real roots are imposed on the result.
    """
    d = p.degree
    nreal = p.count_real_roots()
    seeds = _seed_roots(p, min(prec, 256))
    coeffs = list(reversed(p.coeffs))
    with mpmath.workprec(prec + 16):
        zs = [mpmath.mpc(x, y) for x, y in seeds]
        if prec > 256:
            for _ in range(max(2, (prec // 128).bit_length() + 2)):
                zs = [_newton_step(coeffs, z) for z in zs]
        zs.sort(key=lambda z: abs(z.imag))
        out = [(_to_dyadic(z.real, prec), 0) for z in zs[:nreal]]
        upper = [z for z in zs[nreal:] if z.imag > 0]
        if len(upper) * 2 != d - nreal:
            return None
        for z in upper:
            a, b = _to_dyadic(z.real, prec), _to_dyadic(z.imag, prec)
            out.append((a, b))
            out.append((a, -b))
    return out


def _to_dyadic(x, k: int) -> int:
    return int(mpmath.nint(mpmath.ldexp(x, k)))


@lru_cache(maxsize=2048)
def _isolate_at(p: IntPolynomial, prec: int) -> tuple[Rectangle, ...] | None:
    """Certified boxes for the nonzero roots of squarefree p (p(0) != 0), or None."""
    approx = _approximate(p, prec)
    if approx is None:
        return None
    dp = p.derivative()
    k = prec
    boxes = []
    for a, b in approx:
        rho = _disc_radius(p, dp, a, b, k)
        if rho is None:
            return None
        cr, ci = Fraction(a, 1 << k), Fraction(b, 1 << k)
        if b == 0:
            boxes.append((cr, ci, Rectangle(cr - rho, cr + rho, ci - rho, ci + rho), True))
        else:
            boxes.append((cr, ci, Rectangle(cr - rho, cr + rho, ci - rho, ci + rho), False))
    rects = [bx for _, _, bx, _ in boxes]
    for i in range(len(rects)):
        if rects[i].contains_origin():
            return None
        for j in range(i):
            if rects[i].intersects(rects[j]):
                return None
    out = []
    for cr, ci, bx, is_real in boxes:
        if is_real:
            # unique root in a conjugation-symmetric box is real
            bx = Rectangle(bx.re_lo, bx.re_hi, 0, 0)
        out.append(((cr, ci), bx))
    out.sort(key=lambda t: t[0])
    return tuple(bx for _, bx in out)


def _certified(p: IntPolynomial, prec: int) -> tuple[tuple[Rectangle, ...], int]:
    while prec <= MAX_PREC:
        res = _isolate_at(p, prec)
        if res is not None:
            return res, prec
        prec *= 2
    raise ArithmeticError(f"root isolation failed for {p}")


def _split_zero(p: IntPolynomial) -> tuple[IntPolynomial, bool]:
    if p.coeffs and p.coeffs[0] == 0:
        return p.reversed().reversed(), True
    return p, False


def isolate_roots(p: IntPolynomial) -> list[Rectangle]:
    """One pairwise-disjoint isolating rectangle per distinct complex root.

    Ordered by the real part, then the imaginary part, of the rectangle
    centres; a root at 0 gets the point rectangle.  Non-squarefree input is
    reduced to its squarefree part first.
    """
    if p.degree < 1:
        return []
    p = squarefree_part(p)
    q, has_zero = _split_zero(p)
    rects = []
    if q.degree >= 1:
        if q.degree == 1:
            rects = [Rectangle.point(Fraction(-q.coeffs[0], q.coeffs[1]))]
        else:
            rects = list(_certified(q, BASE_PREC)[0])
    if has_zero:
        rects.append(Rectangle.point(0))
    rects.sort(key=lambda r: r.center())
    return rects


def _bits_for(target: Fraction) -> int:
    if target <= 0:
        return MAX_PREC
    bits = target.denominator.bit_length() - target.numerator.bit_length()
    return max(BASE_PREC, bits + 32)


def shrink(p: IntPolynomial, r: Rectangle, target: Fraction) -> Rectangle:
    """Rectangle inside r isolating the same root of p, with sides <= target."""
    if r.is_point() or r.size <= target:
        return r
    p = squarefree_part(p)
    q, _ = _split_zero(p)
    if q.degree == 1:
        x = Fraction(-q.coeffs[0], q.coeffs[1])
        if r.contains(x):
            return Rectangle.point(x)
    prec = _bits_for(target)
    while prec <= MAX_PREC:
        boxes, prec = _certified(q, prec)
        hits = [b for b in boxes if b.intersects(r)]
        if len(hits) == 1:
            out = hits[0].intersection(r)
            if out.size <= target:
                return out
        prec *= 2
    raise ArithmeticError(f"refinement failed for {p} on {r}")


def refine(p: IntPolynomial, r: Rectangle) -> Rectangle:
    """Halve (at least) both side lengths of an isolating rectangle."""
    return shrink(p, r, r.size / 2)


# -- arguments -----------------------------------------------------------------

def _iv_of(x: Fraction):
    return iv.mpf(x.numerator) / iv.mpf(x.denominator)


def _raw_to_fraction(t) -> Fraction:
    """Exact value of a raw mpf tuple (sign, man, exp, bc)."""
    sign, man, exp, _ = t
    man, exp = int(man), int(exp)
    v = Fraction(man << exp) if exp >= 0 else Fraction(man, 1 << -exp)
    return -v if sign else v


def _axis_argument(r: Rectangle) -> Fraction | None:
    if r.im_lo == r.im_hi == 0:
        if r.re_lo > 0:
            return Fraction(0)
        if r.re_hi < 0:
            return Fraction(1)
    if r.re_lo == r.re_hi == 0:
        if r.im_lo > 0:
            return Fraction(1, 2)
        if r.im_hi < 0:
            return Fraction(3, 2)
    return None


def argument_interval(r: Rectangle, prec: int | None = None) -> AngleInterval:
    """Certified enclosure of arg(z)/pi over the rectangle.

    ``lo`` lies in [0, 2); ``hi`` may exceed 2 when the rectangle meets the
    positive real axis from below.
    """
    if r.contains_origin():
        raise ValueError("argument undefined: rectangle contains the origin")
    exact = _axis_argument(r)
    if exact is not None:
        return AngleInterval(exact, exact)
    if prec is None:
        s = r.size
        prec = 60 if s == 0 else max(60, 2 * (s.denominator.bit_length() - s.numerator.bit_length()) + 40)
        lo2, _ = r.modulus_sq_bounds()
        prec += max(0, lo2.denominator.bit_length() - lo2.numerator.bit_length())
    cx, cy = r.center()
    old = iv.prec
    try:
        iv.prec = prec
        pi = iv.pi
        ref = float(mpmath.atan2(float(cy) if cy else 0.0, float(cx)) / mpmath.pi)
        los, his = [], []
        for x in {r.re_lo, r.re_hi}:
            for y in {r.im_lo, r.im_hi}:
                if x == 0 and y == 0:
                    continue
                a = iv.atan2(_iv_of(y), _iv_of(x)) / pi
                alo, ahi = (_raw_to_fraction(t) for t in a._mpi_)
                mid = float((alo + ahi) / 2)
                shift = 2 * round((ref - mid) / 2)
                los.append(alo + shift)
                his.append(ahi + shift)
    finally:
        iv.prec = old
    lo, hi = min(los), max(his)
    k = floor(lo / 2)
    return AngleInterval(lo - 2 * k, hi - 2 * k)


def angle_combine(v, thetas) -> AngleInterval:
    """Exact interval sum of v(i) * theta_i, without modular reduction."""
    if len(v) != len(thetas):
        raise ValueError("length mismatch")
    lo = hi = Fraction(0)
    for c, th in zip(v, thetas):
        if c >= 0:
            lo += c * th.lo
            hi += c * th.hi
        else:
            lo += c * th.hi
            hi += c * th.lo
    return AngleInterval(lo, hi)


def grid_residues(theta: AngleInterval, lam: int) -> list[int]:
    """All a in [0, lam) with 2a/lam in theta modulo 2."""
    if theta.width >= 2:
        return list(range(lam))
    start = ceil(theta.lo * lam / 2)
    stop = floor(theta.hi * lam / 2)
    return sorted({n % lam for n in range(start, stop + 1)})


def log_modulus_interval(r: Rectangle, prec: int = 64) -> tuple[Fraction, Fraction]:
    """Certified enclosure [lo, hi] of log|z| over the rectangle."""
    lo2, hi2 = r.modulus_sq_bounds()
    if lo2 == 0:
        raise ValueError("log modulus undefined: rectangle contains the origin")
    if lo2 == hi2 == 1:
        return Fraction(0), Fraction(0)
    old = iv.prec
    try:
        iv.prec = prec
        x = iv.log(_iv_of(lo2)) / 2
        y = iv.log(_iv_of(hi2)) / 2 if hi2 != lo2 else x
        return _raw_to_fraction(x._mpi_[0]), _raw_to_fraction(y._mpi_[1])
    finally:
        iv.prec = old
