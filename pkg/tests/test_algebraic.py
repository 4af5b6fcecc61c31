import random
from fractions import Fraction

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from exlat.algebraic import (
    ONE,
    AlgebraicNumber,
    General,
    RootOfRational,
    RootOfUnity,
    classify_polynomial,
    degree_reduction,
    equals_one,
    inverse,
    min_poly_of_power,
    min_poly_of_product,
    min_poly_of_sum,
    nondegenerate_check,
    root_of_rational_test,
    root_of_unity_test,
    unitary_test,
)
from exlat.isolation import Rectangle
from exlat.polynomial import IntPolynomial, is_irreducible, power_mod
from oracles import numeric_product, random_input

P = IntPolynomial
QUARTIC = P([1, -4, 17, 4, 1])
SQRT2 = AlgebraicNumber.near(P([-2, 0, 1]), 1.414)
SQRT3 = AlgebraicNumber.near(P([-3, 0, 1]), 1.732)
I = AlgebraicNumber.near(P([1, 0, 1]), 1j)
MINUS_I = AlgebraicNumber.near(P([1, 0, 1]), -1j)


def q(x):
    return AlgebraicNumber.from_rational(Fraction(x))


def test_root_of_unity_examples():
    assert root_of_unity_test(P([1, 0, 1])) == (True, 4)
    assert root_of_unity_test(P([1, -1, 1])) == (True, 6)
    assert root_of_unity_test(P([-2, 0, 1])) == (False, 0)


def test_root_of_rational_examples():
    assert root_of_rational_test(P([-2, 0, 1])) == (2, 2)
    assert root_of_rational_test(P([2, -2, 1])) == (4, -4)
    assert root_of_rational_test(QUARTIC) == (0, 1)
    with pytest.raises(ValueError):
        root_of_rational_test(P([0, 1, 1]))


def test_unitary_examples():
    assert unitary_test(QUARTIC) == (True, 3)
    assert unitary_test(P([-2, 0, 1])) == (True, 2)
    assert unitary_test(P([-1, -1, 1])) == (False, 0)


def test_degree_reduction_examples():
    assert degree_reduction(QUARTIC) == (3, P([-1, -76, 1]))
    assert degree_reduction(P([-2, 0, 1])) == (2, P([-2, 1]))
    assert degree_reduction(P([-1, -1, 1])) == (1, P([-1, -1, 1]))


def test_power_examples():
    assert min_poly_of_power(SQRT2, 2) == q(2)
    c = min_poly_of_power(I, 3)
    assert c.minpoly == P([1, 0, 1]) and c.rect.im_hi < 0
    for a in AlgebraicNumber.roots_of(QUARTIC):
        assert min_poly_of_power(a, 3).minpoly == P([-1, -76, 1])


def test_product_and_sum_examples():
    assert min_poly_of_product(SQRT2, SQRT2) == q(2)
    assert min_poly_of_sum(SQRT2, SQRT3).minpoly == P([1, 0, -10, 0, 1])
    assert min_poly_of_product(I, MINUS_I) == ONE
    assert inverse(I) == MINUS_I


def test_equals_one_examples():
    assert equals_one([I, q(-1)], [2, 1])
    assert not equals_one([SQRT2], [2])
    ex1 = [q(Fraction(21, 4)), q(Fraction(27, 50)), q(Fraction(245, 32)), q(Fraction(16, 7))]
    assert not equals_one(ex1, [1, 1, 1, 1])
    assert equals_one([SQRT2, q(2)], [2, -1])


def test_nondegenerate_examples():
    assert nondegenerate_check([SQRT2, SQRT3])
    assert not nondegenerate_check([SQRT2, AlgebraicNumber.near(P([-18, 0, 1]), 4.24)])
    assert nondegenerate_check([])


def test_classification_kinds():
    assert classify_polynomial(P([1, 1, 1])) == RootOfUnity(3)
    assert classify_polynomial(P([-2, 0, 1])) == RootOfRational(2, 2)
    assert classify_polynomial(QUARTIC) == General(3, P([-1, -76, 1]))


def test_validated_rejects_bad_input():
    with pytest.raises(ValueError, match="reducible"):
        AlgebraicNumber.validated(P([-1, 0, 1]), Rectangle(0, 2, 0, 0))
    with pytest.raises(ValueError):
        AlgebraicNumber.validated(P([-2, 0, 1]), Rectangle(-2, 2, -1, 1))
    with pytest.raises(ValueError):
        AlgebraicNumber.validated(P([-2, 0, 1]), Rectangle(3, 4, 0, 1))
    a = AlgebraicNumber.validated(P([1, 0, 1]), Rectangle(Fraction(-1, 2), Fraction(1, 2), Fraction(1, 2), Fraction(3, 2)))
    assert a == I


# -- properties -------------------------------------------------------------------

def _radical_polys():
    """t^k - a and a few products of a radical with a root of unity, all irreducible."""
    out = []
    for k in range(1, 7):
        for a in (-12, -5, -4, -3, -2, 2, 3, 5, 6, Fraction(1, 2), Fraction(9, 4), Fraction(27, 8)):
            a = Fraction(a)
            p = P([-a.numerator] + [0] * (k - 1) + [a.denominator])
            if is_irreducible(p):
                out.append(p)
    out += [P([2, -2, 1]), P([4, 0, 0, 0, 1]), P([1, -4, 17, 4, 1]), P([9, 0, 3, 0, 1])]
    return out


@pytest.mark.parametrize("p", _radical_polys(), ids=str)
def test_root_of_rational_invariants(p):
    ok, _ = root_of_unity_test(p)
    k, r = root_of_rational_test(p)
    if k == 0:
        return
    for ell in range(1, 4 * k + 1):
        constant = len(power_mod(ell, p)) <= 1
        assert constant == (ell % k == 0)
    # every root has the same Rorder and R
    for a in AlgebraicNumber.roots_of(p):
        assert min_poly_of_power(a, k) == q(r)
    if not ok:
        assert abs(r) != 1


NON_UNITY = [p for p in _radical_polys() + [P([-1, -1, 1]), P([1, -3, 0, 1]), P([-1, 1, 0, 1])] if not root_of_unity_test(p)[0]]


@pytest.mark.parametrize("p", NON_UNITY, ids=str)
def test_degree_reduction_invariants(p):
    prod, f = degree_reduction(p)
    assert prod >= 1 and f.degree <= p.degree and is_irreducible(f)
    for a in AlgebraicNumber.roots_of(p):
        assert min_poly_of_power(a, prod).minpoly == f
    if f.degree > 1:
        assert degree_reduction(f)[0] == 1


def test_equals_one_matches_numerics():
    rng = random.Random(11)
    agree = trues = 0
    while agree < 500:
        samples = random_input(rng, rng.randint(1, 3))
        v = [rng.randint(-4, 4) for _ in samples]
        if rng.random() < 0.3 and len(samples) >= 1:
            # steer towards genuine relations
            v = [0] * len(samples)
            k = rng.randint(0, len(samples) - 1)
            v[k] = 12
        z = numeric_product([s.value for s in samples], v)
        numeric = abs(z - 1) < mpmath.mpf(10) ** -40
        assert equals_one([s.number for s in samples], v) == numeric, (samples, v)
        agree += 1
        trues += numeric
    assert trues > 20


@given(st.integers(-5, 5), st.integers(-5, 5))
def test_power_laws(m, n):
    assume(m and n)
    a = AlgebraicNumber.near(P([-1, -1, 1]), 1.618)
    assert min_poly_of_power(min_poly_of_power(a, m), n) == min_poly_of_power(a, m * n)
    assert equals_one([a, min_poly_of_power(a, m)], [m, -1])
