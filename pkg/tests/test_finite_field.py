import random

import pytest
from hypothesis import given, settings, strategies as st
from sympy import GF, Poly, symbols

from paramodular import finite_field as ff
from paramodular.errors import InputError

t = symbols("t")
FIELDS = [(2, 1), (2, 2), (2, 3), (2, 4), (3, 1), (3, 2), (5, 2), (7, 1), (7, 2)]


def as_sympy(F, a):
    """Element of F as a sympy polynomial in t over GF(p)."""
    return Poly(list(reversed(F.digits(a))) or [0], t, modulus=F.p)


def from_sympy(F, poly):
    coeffs = [int(c) % F.p for c in reversed(poly.all_coeffs())]
    return sum(c * F.p**i for i, c in enumerate(coeffs))


@pytest.fixture(scope="module", params=FIELDS, ids=lambda pk: f"F{pk[0]}^{pk[1]}")
def F(request):
    return ff.field(*request.param)


def elements(F):
    return st.integers(min_value=0, max_value=F.q - 1)


@pytest.mark.parametrize("p,k", FIELDS)
def test_multiplication_matches_polynomial_oracle(p, k):
    F = ff.field(p, k)
    m = Poly(list(reversed(F.modulus)), t, modulus=p)
    rng = random.Random(p * 100 + k)
    for _ in range(200):
        a, b = rng.randrange(F.q), rng.randrange(F.q)
        expected = from_sympy(F, (as_sympy(F, a) * as_sympy(F, b)).rem(m))
        assert F.mul(a, b) == expected
        assert F.add(a, b) == from_sympy(F, as_sympy(F, a) + as_sympy(F, b))


@pytest.mark.parametrize("p,k", FIELDS)
def test_canonical_modulus_is_first_irreducible(p, k):
    m = ff.canonical_modulus(p, k)
    assert Poly(list(reversed(m)), t, modulus=p).is_irreducible
    # every monic polynomial earlier in the encoding order is reducible
    for code in range(p**k):
        if k == 1 and code >= 0:
            break
        digits = [(code // p**i) % p for i in range(k)] + [1]
        if tuple(digits) == tuple(m):
            break
        assert not Poly(list(reversed(digits)), t, modulus=p).is_irreducible


@settings(max_examples=60, deadline=None)
@given(data=st.data())
def test_field_axioms(F, data):
    a, b, c = (data.draw(elements(F)) for _ in range(3))
    assert F.mul(a, F.add(b, c)) == F.add(F.mul(a, b), F.mul(a, c))
    assert F.mul(F.mul(a, b), c) == F.mul(a, F.mul(b, c))
    assert F.add(a, F.neg(a)) == 0
    if a:
        assert F.mul(a, F.inv(a)) == 1
        assert F.pow(a, F.q - 1) == 1


def test_prime_subfield_is_range_p(F):
    for a in range(F.p):
        for b in range(F.p):
            assert F.mul(a, b) == (a * b) % F.p
            assert F.add(a, b) == (a + b) % F.p


def test_sqrt_and_squares(F):
    squares = {F.mul(x, x) for x in F.elements()}
    for a in F.elements():
        assert F.is_square(a) == (a in squares)
        r = F.sqrt(a)
        if a in squares:
            assert F.mul(r, r) == a
        else:
            assert r is None


@settings(max_examples=80, deadline=None)
@given(data=st.data())
def test_solve_quadratic_against_enumeration(F, data):
    b, c = data.draw(elements(F)), data.draw(elements(F))
    expected = sorted(y for y in F.elements() if F.add(F.mul(y, y), F.mul(b, y)) == c)
    assert ff.solve_quadratic(F, b, c) == expected


def test_solve_quadratic_small_cases():
    F2 = ff.field(2)
    assert ff.solve_quadratic(F2, 1, 0) == [0, 1]
    assert ff.solve_quadratic(F2, 1, 1) == []
    assert ff.solve_quadratic(F2, 0, 1) == [1]
    F3 = ff.field(3)
    assert ff.solve_quadratic(F3, 0, 1) == [1, 2]
    assert ff.solve_quadratic(F3, 0, 2) == []


@pytest.mark.parametrize("src,dst", [((2, 1), (2, 2)), ((2, 2), (2, 4)), ((3, 1), (3, 2)), ((2, 1), (2, 3))])
def test_embedding_is_a_ring_homomorphism(src, dst):
    S, D = ff.field(*src), ff.field(*dst)
    phi = ff.embedding(S, D)
    for a in S.elements():
        for b in S.elements():
            assert phi(S.mul(a, b)) == D.mul(phi(a), phi(b))
            assert phi(S.add(a, b)) == D.add(phi(a), phi(b))
    assert len({phi(a) for a in S.elements()}) == S.q


def test_embedding_requires_divisibility():
    with pytest.raises(InputError):
        ff.embedding(ff.field(2, 2), ff.field(2, 3))


def test_field_size_limit():
    with pytest.raises(InputError):
        ff.FiniteField(2, 21)
    with pytest.raises(InputError):
        ff.FiniteField(4)


@pytest.mark.parametrize("p", [2, 3, 5, 7, 13])
def test_factor_over_prime_field_matches_sympy(p):
    F = ff.field(p)
    x = symbols("x")
    rng = random.Random(p)
    for _ in range(25):
        deg = rng.randint(1, 8)
        coeffs = [rng.randrange(p) for _ in range(deg)] + [1]
        ours = sorted((tuple(g), m) for g, m in ff.factor(F, coeffs))
        _, fl = Poly(list(reversed(coeffs)), x, modulus=p).factor_list()
        theirs = sorted((tuple(int(c) % p for c in reversed(g.all_coeffs())), m) for g, m in fl)
        assert ours == theirs


@pytest.mark.parametrize("p,k", [(2, 2), (3, 2), (2, 3)])
def test_factor_over_extension_reconstructs(p, k):
    F = ff.field(p, k)
    rng = random.Random(7 * p + k)
    for _ in range(15):
        deg = rng.randint(1, 6)
        a = [rng.randrange(F.q) for _ in range(deg)] + [1]
        prod = [1]
        for g, m in ff.factor(F, a):
            assert g[-1] == 1
            if len(g) - 1 in (2, 3):
                assert not ff.roots_in_field(F, g)
            for _ in range(m):
                prod = ff.pmul(F, prod, g)
        assert prod == ff.ptrim(a)


def test_is_irreducible_small():
    assert ff.is_irreducible_mod_p([1, 1, 1], 2)
    assert not ff.is_irreducible_mod_p([1, 0, 1], 2)
    assert ff.is_irreducible_mod_p([1, 0, 1], 3)
