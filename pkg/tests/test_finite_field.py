import itertools

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from sympair.errors import DegreeTooSmall, DivisionByZero, FieldMismatch, NotPrime, TooLarge, ZeroLeading
from sympair.finite_field import (
    GF,
    NEG_INF,
    Field,
    Polynomial,
    count_monic_irreducible,
    enumerate_elements,
    ff_add,
    ff_inv,
    ff_mul,
    ff_neg,
    ff_sub,
    is_irreducible,
    mobius,
    monic_polynomials,
    poly_eval,
    poly_from_roots,
    prime_power,
)

FIELDS = [(2, 1), (3, 1), (5, 1), (7, 1), (13, 1), (2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)]


def _sympy_mul(F, a, b):
    """Independent product: polynomial-basis digits multiplied and reduced with sympy over GF(p)."""
    x = sympy.symbols("x")

    def poly(v):
        return sympy.Poly(list(reversed(F._digits(v))), x, modulus=F.p)

    mod = sympy.Poly(list(reversed(F.modulus)), x, modulus=F.p)
    r = (poly(a) * poly(b)).rem(mod)
    coeffs = [int(c) % F.p for c in reversed(r.all_coeffs())]
    return sum(c * F.p**i for i, c in enumerate(coeffs))


def test_prime_field_construction():
    F = Field(7)
    assert F.q == 7 and F.p == 7 and F.e == 1
    assert F.mul(3, 5) == 1  # 15 mod 7


def test_gf4_modulus_is_x2_x_1():
    F = Field(2, 2)
    assert F.q == 4
    assert F.modulus == (1, 1, 1)
    assert F.mul(2, 2) == 3  # x * x = x + 1


def test_gf4_modulus_by_exhaustive_scan():
    # x^2 + x + 1 is the only monic quadratic over GF(2) without a root
    quads = [(c0, c1) for c0 in range(2) for c1 in range(2)]
    rootless = [c for c in quads if all((c[0] + c[1] * v + v * v) % 2 for v in range(2))]
    assert rootless == [(1, 1)]


def test_not_prime():
    with pytest.raises(NotPrime):
        Field(4, 1)
    with pytest.raises(NotPrime):
        prime_power(12)


def test_too_large():
    with pytest.raises(TooLarge):
        Field(2, 17)
    F = Field(2, 17, ceiling=1 << 17)  # no tables, direct reduction
    a, b = 12345, 99999
    assert F._log is None
    assert F.mul(F.mul(a, b), F.inv(b)) == a


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3), (7, 2)])
def test_modulus_is_lexicographically_smallest(p, e):
    x = sympy.symbols("x")
    found = None
    for low in itertools.product(range(p), repeat=e):
        coeffs = list(low) + [1]
        if sympy.Poly(list(reversed(coeffs)), x, modulus=p).is_irreducible:
            found = tuple(coeffs)
            break
    assert Field(p, e).modulus == found


@pytest.mark.parametrize("p,e", [(2, 2), (2, 3), (3, 2), (2, 4), (5, 2), (3, 3)])
def test_table_multiplication_matches_sympy(p, e):
    F = Field(p, e)
    for a in range(F.q):
        for b in range(F.q):
            assert F.mul(a, b) == _sympy_mul(F, a, b)


@pytest.mark.parametrize("p,e", FIELDS)
def test_vectorised_ops_match_scalar(p, e):
    import numpy as np

    F = GF(p, e)
    a = np.arange(F.q)[:, None]
    b = np.arange(F.q)[None, :]
    add = F.add_array(a, b)
    mul = F.mul_array(a, b)
    for x in range(F.q):
        for y in range(F.q):
            assert add[x, y] == F.add(x, y)
            assert mul[x, y] == F.mul(x, y)


def test_inverse_examples():
    assert GF(7)(3).inverse() == 5
    F4 = GF(4)
    assert F4(2).inverse() == 3
    assert [b for b in range(4) if F4.mul(2, b) == 1] == [3]
    for q in (5, 8, 9):
        assert GF(q).one.inverse() == 1


def test_division_by_zero():
    with pytest.raises(DivisionByZero):
        GF(7)(0).inverse()
    with pytest.raises(ZeroDivisionError):
        GF(9)(4) / GF(9)(0)


def test_field_mismatch():
    with pytest.raises(FieldMismatch):
        GF(7)(1) + GF(5)(1)
    with pytest.raises(FieldMismatch):
        ff_mul(GF(4)(1), GF(2)(1))


def test_free_function_spellings():
    F = GF(7)
    a, b = F(3), F(5)
    assert ff_add(a, b) == 1
    assert ff_sub(a, b) == 5
    assert ff_mul(a, b) == 1
    assert ff_neg(a) == 4
    assert ff_inv(a) == 5


@st.composite
def field_and_elements(draw, count=3):
    p, e = draw(st.sampled_from(FIELDS))
    F = GF(p, e)
    vals = [draw(st.integers(0, F.q - 1)) for _ in range(count)]
    return F, [F(v) for v in vals]


@settings(max_examples=300, deadline=None)
@given(field_and_elements())
def test_field_axioms(data):
    F, (a, b, c) = data
    assert (a + b) + c == a + (b + c)
    assert (a * b) * c == a * (b * c)
    assert a + b == b + a
    assert a * b == b * a
    assert a * (b + c) == a * b + a * c
    assert a + F.zero == a
    assert a * F.one == a
    assert a + (-a) == F.zero
    assert a - b == a + (-b)
    if a:
        assert a * a.inverse() == F.one
        assert (b / a) * a == b


@pytest.mark.parametrize("p,e", FIELDS)
def test_enumerate_elements_bijection(p, e):
    F = GF(p, e)
    elems = enumerate_elements(F)
    assert [x.value for x in elems] == list(range(F.q))
    assert elems[0] == 0 and elems[1] == 1
    assert elems[1] * elems[1] == elems[1]


def test_enumerate_small_fields():
    assert [x.value for x in enumerate_elements(GF(3))] == [0, 1, 2]
    assert [x.value for x in enumerate_elements(GF(4))] == [0, 1, 2, 3]


# -- polynomials ---------------------------------------------------------------


def test_poly_eval_examples():
    F = GF(5)
    f = Polynomial(F, [1, 0, 1])  # x^2 + 1
    assert poly_eval(f, F(2)) == 0
    assert poly_eval(Polynomial(F), F(3)) == 0
    assert poly_eval(Polynomial(F, [4]), F(2)) == 4


def test_poly_eval_field_mismatch():
    with pytest.raises(FieldMismatch):
        poly_eval(Polynomial(GF(5), [1, 1]), GF(7)(2))


def test_zero_polynomial_degree():
    F = GF(7)
    z = Polynomial(F, [0, 0, 0])
    assert z.coeffs == () and z.degree == NEG_INF
    assert z.degree <= 2 and z.degree < 0
    assert Polynomial(F, [3, 0, 0]).degree == 0


def test_poly_from_roots_examples():
    F7, F5 = GF(7), GF(5)
    assert poly_from_roots(F7, 1, [2]).coeffs == (5, 1)
    assert poly_from_roots(F7, 1, [1, 1]).coeffs == (1, 5, 1)  # (x-1)^2 = x^2 - 2x + 1
    assert poly_from_roots(F5, 2, []).coeffs == (2,)
    with pytest.raises(ZeroLeading):
        poly_from_roots(F7, 0, [1])


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_poly_from_roots_vanishes_exactly_on_roots(pe, data):
    F = GF(*pe)
    roots = data.draw(st.lists(st.integers(0, F.q - 1), max_size=4))
    f = poly_from_roots(F, 1, roots)
    assert f.degree == len(roots) or (not roots and f.degree == 0)
    for x in range(F.q):
        assert (f.eval_int(x) == 0) == (x in roots)


@settings(max_examples=200, deadline=None)
@given(st.sampled_from(FIELDS), st.data())
def test_polynomial_division_identity(pe, data):
    F = GF(*pe)
    coeffs = st.lists(st.integers(0, F.q - 1), max_size=6)
    f = Polynomial(F, data.draw(coeffs))
    g = Polynomial(F, data.draw(coeffs))
    if g.is_zero():
        return
    quo, rem = divmod(f, g)
    assert quo * g + rem == f
    assert rem.degree < g.degree


def test_polynomial_index_roundtrip():
    F = GF(9)
    for i in range(0, 9**3, 37):
        assert Polynomial.from_index(F, i, 3).index() == i


# -- irreducibility --------------------------------------------------------------


def test_is_irreducible_examples():
    F2 = GF(2)
    assert is_irreducible(Polynomial(F2, [1, 1, 1]))
    assert not is_irreducible(Polynomial(F2, [1, 0, 1]))
    for q in (2, 5, 9):
        F = GF(q)
        assert is_irreducible(poly_from_roots(F, 1, [F.q - 1]))
    with pytest.raises(DegreeTooSmall):
        is_irreducible(Polynomial(GF(5), [3]))
    with pytest.raises(DegreeTooSmall):
        is_irreducible(Polynomial(GF(5)))


@pytest.mark.parametrize("p,deg", [(2, 4), (2, 5), (2, 6), (3, 4), (5, 4)])
def test_is_irreducible_trial_division_matches_sympy(p, deg):
    x = sympy.symbols("x")
    F = GF(p)
    for f in monic_polynomials(F, deg):
        expected = sympy.Poly(list(reversed(f.coeffs)), x, modulus=p).is_irreducible
        assert is_irreducible(f) == expected, f


def test_mobius():
    assert [mobius(n) for n in range(1, 13)] == [1, -1, -1, 0, -1, 1, -1, 0, 0, 1, -1, 0]


def test_count_monic_irreducible_examples():
    assert count_monic_irreducible(7, 2) == 21
    assert count_monic_irreducible(5, 3) == 40
    for q in (2, 3, 4, 5, 7, 8, 9, 11):
        assert count_monic_irreducible(q, 1) == q
        assert count_monic_irreducible(q, 2) == q * (q - 1) // 2
        assert 3 * count_monic_irreducible(q, 3) == (q + 1) * q * (q - 1)
    # degree 4 over GF(2): x^4+x+1, x^4+x^3+1, x^4+x^3+x^2+x+1
    assert count_monic_irreducible(2, 4) == 3
    with pytest.raises(NotPrime):
        count_monic_irreducible(6, 2)


@pytest.mark.parametrize("q", [2, 3, 4, 5, 7, 8, 9])
@pytest.mark.parametrize("n", [1, 2, 3])
def test_count_monic_irreducible_matches_scan(q, n):
    F = GF(q)
    scanned = sum(1 for f in monic_polynomials(F, n) if is_irreducible(f))
    assert count_monic_irreducible(q, n) == scanned
