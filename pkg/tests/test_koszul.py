import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kittab.acceptance import koszul_identities, random_koszul_element
from kittab.corpus import random_poly
from kittab.koszul import KoszulElement, basis, cycles, differential, wedge, wedge_all
from kittab.ring import QQ, DomainError, PolyRing, StructuralError, polys
from strategies import QQ3

R = PolyRing(QQ, ["x", "y"])
U = PolyRing(QQ, ["U11", "U12", "U21", "U22"])
F = polys(R, ["x^2 + y", "x^5"])


def e(i, r=2, ring=R):
    return KoszulElement.generator(ring, r, i)


def test_wedge_of_generators():
    assert wedge(e(0), e(1)) == KoszulElement(R, 2, {(0, 1): R.one()})
    assert wedge(e(1), e(0)) == KoszulElement(R, 2, {(0, 1): -R.one()})
    assert wedge(e(0), e(0)).is_zero()


def test_wedge_of_generic_columns():
    u11, u12, u21, u22 = U.gens()
    z1 = KoszulElement.linear(U, [u11, u21])
    z2 = KoszulElement.linear(U, [u12, u22])
    assert wedge(z1, z2).top_coefficient() == u11 * u22 - u21 * u12


def test_wedge_rank_mismatch():
    with pytest.raises(StructuralError):
        wedge(e(0, 2), e(0, 3))


def test_differential_examples():
    assert differential(e(0), F) == KoszulElement.scalar(R, 2, F[0])
    top = KoszulElement(R, 2, {(0, 1): R.one()})
    assert differential(top, F) == KoszulElement(R, 2, {(1,): F[0], (0,): -F[1]})
    f3 = polys(R, ["x", "y", "x*y"])
    top3 = KoszulElement(R, 3, {(0, 1, 2): R.one()})
    assert differential(differential(top3, f3), f3).is_zero()


def test_differential_length_mismatch():
    with pytest.raises(StructuralError):
        differential(e(0), F[:1])


def test_cycles_of_regular_pair():
    assert len(cycles(F, 2)) == 0
    (z,) = cycles(F, 1)
    expected = KoszulElement(R, 2, {(0,): F[1], (1,): -F[0]})
    assert z in (expected, -expected)
    assert [c.terms for c in cycles(F, 0)] == [{(): R.one()}]


def test_cycles_degree_out_of_range():
    with pytest.raises(DomainError):
        cycles(F, 3)
    with pytest.raises(DomainError):
        cycles(F, -1)


def test_top_cycles_in_a_domain_vanish():
    assert len(cycles(polys(R, ["x*y", "x^2"]), 2)) == 0


def test_top_cycles_modulo_a_square():
    # over QQ[x,y]/(x^2) the sequence (x, x) has Z_2 = ann(x) e1 ^ e2 = (x) e1 ^ e2
    x = R.gen("x")
    zs = cycles([x, x], 2, modulo=[x ** 2])
    tops = [z.top_coefficient() for z in zs]
    assert x in tops or -x in tops
    assert all(c.terms and all(m[0] >= 1 for m in c.terms) for c in tops)


def test_known_identities_batch():
    assert koszul_identities(100) == []


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_d_squared_and_leibniz(seed):
    rng = random.Random(seed)
    r = rng.randint(1, 4)
    f = [random_poly(QQ3, rng) for _ in range(r)]
    a = random_koszul_element(QQ3, r, rng)
    b = random_koszul_element(QQ3, r, rng)
    assert differential(differential(a, f), f).is_zero()
    sign = -1 if a.degree() % 2 else 1
    lhs = differential(wedge(a, b), f)
    rhs = wedge(differential(a, f), b) + wedge(a, differential(b, f)).scale(QQ3.const(sign))
    assert lhs == rhs


@given(st.integers(0, 10 ** 6))
@settings(max_examples=40, deadline=None)
def test_graded_commutativity(seed):
    rng = random.Random(seed)
    r = rng.randint(1, 4)
    a = random_koszul_element(QQ3, r, rng)
    b = random_koszul_element(QQ3, r, rng)
    sign = -1 if (a.degree() * b.degree()) % 2 else 1
    assert wedge(a, b) == wedge(b, a).scale(QQ3.const(sign))


@pytest.mark.parametrize("seed", range(5))
def test_cycles_are_cycles_and_products_stay_cycles(seed):
    rng = random.Random(seed)
    r = rng.randint(2, 3)
    f = [random_poly(QQ3, rng, max_deg=2) for _ in range(r)]
    by_degree = {i: list(cycles(f, i)) for i in range(r + 1)}
    for i, zs in by_degree.items():
        for z in zs:
            assert differential(z, f).is_zero()
            assert z.degrees() <= {i}
    for i in range(r + 1):
        for j in range(r + 1 - i):
            for z in by_degree[i][:2]:
                for w in by_degree[j][:2]:
                    assert differential(wedge(z, w), f).is_zero()


def test_basis_order():
    assert basis(3, 2) == [(0, 1), (0, 2), (1, 2)]


def test_wedge_all_of_three_generators():
    gens = [e(i, 3) for i in (2, 0, 1)]
    # (e3 ^ e1 ^ e2) = e1 ^ e2 ^ e3
    assert wedge_all(gens, R, 3).top_coefficient() == R.one()
