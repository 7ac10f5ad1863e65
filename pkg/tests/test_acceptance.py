"""One test per acceptance criterion; the terminal summary prints a pass/fail line for each."""

import pytest

from conftest import CRITERIA_RESULTS
from kittab import acceptance
from kittab.corpus import PRINTED_GENERIC_KITT_F_PRIME, two_generating_sets
from kittab.generic import generic_kitt
from kittab.ideals import Ideal, ideal_equal


@pytest.fixture(scope="module")
def criterion_1():
    res = acceptance.criterion_1()
    CRITERIA_RESULTS[1] = res
    return res


def _check(res):
    CRITERIA_RESULTS[res.number] = res
    print(res.line())
    assert res.parts and all(res.parts.values()), res.detail
    assert res.seconds < res.budget, f"took {res.seconds:.1f} s, budget {res.budget} s"


def test_criterion_1_generic_kitt_of_f_matches_display(criterion_1):
    assert criterion_1.parts["f_matches_display"]


@pytest.mark.xfail(strict=True, reason=(
    "the printed generator x^5*U22 + x^2*U12 + x^2*U22 + y*U12 lacks the term y*U22; "
    "without it the printed ideal misses alpha_2, which every Kitt ideal contains"))
def test_criterion_1_generic_kitt_of_f_prime_matches_literal_display(criterion_1):
    assert criterion_1.parts["f_prime_matches_display"]


def test_criterion_1_generic_kitt_of_f_prime_matches_corrected_display():
    _, _, f_prime = two_generating_sets()
    K = generic_kitt(f_prime, 2)
    corrected = list(PRINTED_GENERIC_KITT_F_PRIME)
    corrected[0] += " + y*U22"
    assert ideal_equal(K, Ideal.parse(K.ring, corrected))


def test_criterion_1_literal_display_misses_alpha_2():
    _, _, f_prime = two_generating_sets()
    K = generic_kitt(f_prime, 2)
    displayed = Ideal.parse(K.ring, PRINTED_GENERIC_KITT_F_PRIME)
    x, y, U12, U22 = (K.ring.gen(n) for n in ("x", "y", "U12", "U22"))
    alpha_2 = (x**2 + y) * U12 + (x**5 + x**2 + y) * U22
    assert K.contains(alpha_2)
    assert not displayed.contains(alpha_2)


def test_criterion_1_generic_kitts_differ(criterion_1):
    assert criterion_1.parts["generic_kitts_differ"]
    assert criterion_1.seconds < criterion_1.budget


def test_criterion_2():
    _check(acceptance.criterion_2())


@pytest.mark.slow
def test_criterion_3():
    _check(acceptance.criterion_3(slow=True))


@pytest.mark.slow
def test_criterion_4():
    _check(acceptance.criterion_4(slow=True))


def test_criterion_5():
    _check(acceptance.criterion_5())


def test_criterion_6():
    _check(acceptance.criterion_6())


def test_criterion_7():
    _check(acceptance.criterion_7())


def test_criterion_8():
    _check(acceptance.criterion_8())
