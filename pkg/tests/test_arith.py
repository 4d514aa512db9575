import random
from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st
from sympy import Matrix, Poly, discriminant, symbols
from sympy.functions.combinatorial.numbers import kronecker_symbol

from paramodular.arith import (
    FactorizationType,
    IntPoly,
    class_number_imag_quad,
    ddf_type,
    factorize,
    fundamental_discriminant,
    is_fundamental,
    kronecker,
    poly_disc,
    primes_below,
    reduced_forms,
    resultant,
)
from paramodular.errors import LeadingCoefficientVanishes, NotFundamental, NotSquarefree

x = symbols("x")

int_polys = st.lists(st.integers(-30, 30), min_size=2, max_size=8).filter(lambda c: c[-1] != 0)


def sym(p: IntPoly):
    return Poly(list(reversed(p.coeffs)), x)


@settings(max_examples=100, deadline=None)
@given(int_polys)
def test_poly_disc_matches_sympy(c):
    p = IntPoly(c)
    assert poly_disc(p) == int(discriminant(sym(p).as_expr(), x))


def sylvester_det(a, b):
    m, n = len(a) - 1, len(b) - 1
    rows = []
    for i in range(n):
        rows.append([0] * i + list(reversed(a)) + [0] * (n - 1 - i))
    for i in range(m):
        rows.append([0] * i + list(reversed(b)) + [0] * (m - 1 - i))
    return int(Matrix(rows).det())


@settings(max_examples=100, deadline=None)
@given(int_polys, int_polys)
def test_resultant_matches_sylvester_determinant(a, b):
    assert resultant(IntPoly(a), IntPoly(b)) == sylvester_det(a, b)


def test_resultant_sign_when_first_degree_is_smaller():
    # Res(x + 1, x^3) = (-1)^3
    assert resultant(IntPoly([1, 1]), IntPoly([0, 0, 0, 1])) == -1


@settings(max_examples=100, deadline=None)
@given(int_polys, int_polys, st.integers(-5, 5))
def test_intpoly_ring_operations(a, b, v):
    A, B = IntPoly(a), IntPoly(b)
    assert (A * B)(v) == A(v) * B(v)
    assert (A + B)(v) == A(v) + B(v)
    assert (A - B)(v) == A(v) - B(v)
    assert (A**2) == A * A
    assert sym(A * B) == sym(A) * sym(B)


def test_poly_disc_examples():
    assert poly_disc(IntPoly([1, 0, 1])) == -4
    assert poly_disc(IntPoly([56, -1, 1])) == -223
    assert poly_disc(IntPoly([1, -2, 1])) == 0


def test_format_poly():
    assert str(IntPoly([49, -28, 16, -4, 1])) == "x^4 - 4x^3 + 16x^2 - 28x + 49"
    assert str(IntPoly([625, 0, 50, 0, 1])) == "x^4 + 50x^2 + 625"
    assert str(IntPoly([-1, 0, -1])) == "-x^2 - 1"
    assert str(IntPoly([])) == "0"


def test_reversed():
    assert IntPoly([1, 2, 3, 4, 4]).reversed(4) == IntPoly([4, 4, 3, 2, 1])
    assert IntPoly([1, 0, 3]).reversed(4) == IntPoly([0, 0, 3, 0, 1])


@pytest.mark.parametrize("d", range(-60, 61))
def test_kronecker_matches_sympy(d):
    for n in range(1, 80):
        assert kronecker(d, n) == kronecker_symbol(d, n), (d, n)


def test_kronecker_examples():
    assert kronecker(2, 3) == -1
    assert kronecker(223, 17) == 1
    assert kronecker(-223, 3) == -1


def test_factorize_and_primes():
    assert factorize(109060302303232) == {2: 12, 7: 4, 223: 3}
    assert primes_below(30) == [2, 3, 5, 7, 11, 13, 17, 19, 23, 29]


def test_fundamental_discriminants():
    assert fundamental_discriminant(-1) == -4
    assert fundamental_discriminant(223) == 892
    assert fundamental_discriminant(-223) == -223
    assert fundamental_discriminant(446) == 1784
    assert is_fundamental(-223) and is_fundamental(-4) and not is_fundamental(-12)
    with pytest.raises(NotFundamental):
        fundamental_discriminant(12)


def test_ddf_type_examples():
    assert str(ddf_type(IntPoly([1, 0, 1]), 3)) == "{2x1}"
    assert ddf_type(IntPoly([1, 0, 1]), 5) == FactorizationType.of([1, 1])
    with pytest.raises(NotSquarefree):
        ddf_type(IntPoly([1, 0, 1]) ** 3, 5)
    with pytest.raises(LeadingCoefficientVanishes):
        ddf_type(IntPoly([1, 0, 3]), 3)


@pytest.mark.parametrize("p", [3, 5, 7, 11, 13])
def test_ddf_type_matches_sympy(p):
    rng = random.Random(p)
    for _ in range(30):
        c = [rng.randint(-9, 9) for _ in range(rng.randint(2, 8))] + [1]
        f = IntPoly(c)
        _, fl = Poly(list(reversed(f.coeffs)), x, modulus=p).factor_list()
        if any(m > 1 for _, m in fl):
            with pytest.raises(NotSquarefree):
                ddf_type(f, p)
            continue
        assert ddf_type(f, p) == FactorizationType.of(g.degree() for g, _ in fl)


def _naive_class_number(D):
    """Reduced forms by a direct triple loop."""
    count = 0
    bound = int((-D / 3) ** 0.5) + 1
    for a in range(1, bound + 1):
        for b in range(-a, a + 1):
            for c in range(a, (b * b - D) // 4 + 2):
                if b * b - 4 * a * c != D:
                    continue
                if not (abs(b) <= a <= c):
                    continue
                if (abs(b) == a or a == c) and b < 0:
                    continue
                from math import gcd

                if gcd(gcd(a, b), c) == 1:
                    count += 1
    return count


def _analytic_class_number(D):
    """Dirichlet: h = -(w / 2|D|) * sum_{a < |D|} chi(a) a."""
    w = {-3: 6, -4: 4}.get(D, 2)
    s = sum(kronecker_symbol(D, a) * a for a in range(1, -D))
    return Fraction(-w * s, 2 * -D)


def test_class_number_examples():
    assert class_number_imag_quad(-4) == 1
    assert class_number_imag_quad(-23) == 3
    assert class_number_imag_quad(-223) == 7
    assert len(reduced_forms(-223)) == 7


def test_class_numbers_sweep():
    fundamentals = [D for D in range(-499, 0) if is_fundamental(D)]
    assert len(fundamentals) > 100
    for D in fundamentals:
        h = class_number_imag_quad(D)
        assert h == _naive_class_number(D), D
        assert h == _analytic_class_number(D), D


def test_class_number_rejects_nonfundamental():
    with pytest.raises(NotFundamental):
        class_number_imag_quad(-12)
    with pytest.raises(NotFundamental):
        class_number_imag_quad(5)
