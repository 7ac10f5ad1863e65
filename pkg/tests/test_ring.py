from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kittab.ring import (
    GF, GREVLEX, LEX, QQ, DomainError, Ordering, PolyParseError, PolyRing, StructuralError, block_order,
    leading_term, monomial_compare, poly_arith,
)
from strategies import F7_3, QQ3, monomials, nonzero_polynomials, polynomials

R2 = PolyRing(QQ, ["x", "y"])
R2_LEX = PolyRing(QQ, ["x", "y"], LEX)


def test_grevlex_prefers_smaller_last_exponent():
    assert monomial_compare(GREVLEX, (2, 1), (1, 2)) == Ordering.GT


def test_compare_reflexive():
    for order in (GREVLEX, LEX, block_order(1)):
        assert monomial_compare(order, (3, 1), (3, 1)) == Ordering.EQ


def test_lex_ignores_degree():
    assert monomial_compare(LEX, (1, 0), (0, 9)) == Ordering.GT


def test_compare_length_mismatch():
    with pytest.raises(StructuralError):
        monomial_compare(GREVLEX, (1, 0), (1, 0, 0))


def test_block_order_eliminates_first_block():
    order = block_order(1)
    assert monomial_compare(order, (1, 0, 0), (0, 5, 5)) == Ordering.GT
    assert monomial_compare(order, (0, 2, 0), (0, 1, 1)) == Ordering.GT


def test_difference_of_squares():
    x = R2.gen("x")
    assert (x + 1) * (x - 1) == R2.parse("x^2 - 1")


def test_additive_inverse():
    f = R2.parse("x^3 - 2*x*y + 1/3")
    assert poly_arith("add", f, poly_arith("scalar_mul", f, -1)).is_zero()


def test_prime_field_product():
    R = PolyRing(GF(5), ["x"])
    assert poly_arith("mul", R.parse("2*x"), R.parse("3*x")) == R.parse("x^2")


def test_arith_ring_mismatch():
    other = PolyRing(QQ, ["x", "z"])
    with pytest.raises(StructuralError):
        poly_arith("add", R2.gen("x"), other.gen("x"))


def test_leading_terms():
    assert leading_term(R2.parse("x^2 + y")) == ((2, 0), 1)
    assert leading_term(R2.parse("x^5")) == ((5, 0), 1)
    assert leading_term(R2_LEX.parse("y^3 + x")) == ((1, 0), 1)


def test_leading_term_of_zero():
    with pytest.raises(DomainError):
        leading_term(R2.zero())


def test_printing_format():
    R = PolyRing(QQ, ["x", "y", "U12", "U22"])
    f = R.parse("y*U12 + x^2*U12 + x^5*U22")
    assert str(f) == "x^5*U22 + x^2*U12 + y*U12"
    assert str(R2.parse("-x + 1/2*y - 3")) == "-x + 1/2*y - 3"
    assert str(R2.zero()) == "0"


def test_prime_field_printing_uses_symmetric_residues():
    R = PolyRing(GF(7), ["x"])
    assert str(R.parse("6*x + 1")) == "-x + 1"


def test_parse_errors_carry_offsets():
    with pytest.raises(PolyParseError) as err:
        R2.parse("x^2 + q")
    assert err.value.offset == 6
    with pytest.raises(PolyParseError):
        R2.parse("x +")


def test_rationals_reduced():
    f = R2.parse("2/4*x")
    (_, c), = f.terms.items()
    assert c == Fraction(1, 2)
    assert R2.parse("4/2*x").terms[(1, 0)] == 2
    assert isinstance(R2.parse("4/2*x").terms[(1, 0)], int)


def test_duplicate_variables_rejected():
    with pytest.raises(StructuralError):
        PolyRing(QQ, ["x", "x"])


def test_nonprime_field_rejected():
    with pytest.raises(DomainError):
        GF(15)


@given(polynomials(), polynomials(), polynomials())
@settings(max_examples=60, deadline=None)
def test_ring_axioms_qq(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert (f + g) + h == f + (g + h)


@given(polynomials(F7_3), polynomials(F7_3), polynomials(F7_3))
@settings(max_examples=60, deadline=None)
def test_ring_axioms_prime_field(f, g, h):
    assert (f + g) * h == f * h + g * h
    assert f * g == g * f
    assert (f * g) * h == f * (g * h)
    assert all(0 <= c < 7 for c in (f * g).terms.values())


@given(polynomials())
def test_no_zero_coefficients(f):
    assert all(c != 0 for c in (f - f).terms.values())
    assert (f - f).is_zero()
    assert all(c != 0 for c in f.terms.values())


@given(polynomials())
def test_text_round_trip(f):
    assert QQ3.parse(str(f)) == f


@given(polynomials(F7_3))
def test_text_round_trip_prime_field(f):
    assert F7_3.parse(str(f)) == f


@given(st.sampled_from([GREVLEX, LEX, block_order(1), block_order(2)]), monomials(), monomials(), monomials())
def test_orders_total_and_multiplicative(order, a, b, c):
    ab = monomial_compare(order, a, b)
    assert monomial_compare(order, b, a) == -ab
    if ab == Ordering.EQ:
        assert a == b
    shifted_a = tuple(x + y for x, y in zip(a, c))
    shifted_b = tuple(x + y for x, y in zip(b, c))
    assert monomial_compare(order, shifted_a, shifted_b) == ab
    if ab == Ordering.GT and monomial_compare(order, b, c) == Ordering.GT:
        assert monomial_compare(order, a, c) == Ordering.GT
    assert monomial_compare(order, a, (0, 0, 0)) != Ordering.LT


@given(nonzero_polynomials())
def test_terms_iterate_in_descending_order(f):
    monos = [m for m, _ in f.sorted_terms()]
    for hi, lo in zip(monos, monos[1:]):
        assert monomial_compare(QQ3.order, hi, lo) == Ordering.GT
    assert monos[0] == f.leading_monomial()


@given(st.integers(-50, 50).filter(bool), st.sampled_from([7, 32003]))
def test_field_axioms(a, p):
    for F in (QQ, GF(p)):
        v = F(a)
        if not v:
            continue
        assert F.add(v, F.neg(v)) == 0
        assert F.mul(v, F.inv(v)) == 1
