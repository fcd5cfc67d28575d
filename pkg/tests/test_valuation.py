from fractions import Fraction

import pytest
from hypothesis import assume, given, settings, strategies as st

from primdiv.errors import BudgetExceeded, NotAUnit, RootOfUnity
from primdiv.ideals import primes_above
from primdiv.quadfield import QuadElement, make_field
from primdiv.sieve import primes_upto
from primdiv.suites import lte_cases
from primdiv.valuation import mult_order, nu_direct_oracle, nu_ideal, nu_power_minus_one

SMALL_PRIMES = primes_upto(60).tolist()


def test_nu_ideal_examples(q5, qm5):
    P5 = primes_above(q5, 5)[0]
    assert nu_ideal(QuadElement(5, 0, 1), P5).value == 1
    P2 = primes_above(qm5, 2)[0]
    assert nu_ideal(QuadElement(-5, 1, 1), P2).value == 1
    P11, P11c = primes_above(q5, 11)
    x = QuadElement(5, 4, 1) / QuadElement(5, 4, -1)
    assert nu_ideal(x, P11).value == -1 and nu_ideal(x, P11c).value == 1


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([5, 2, -5, -23, 10, -1]), st.integers(-60, 60), st.integers(-60, 60), st.integers(1, 40),
       st.sampled_from(SMALL_PRIMES))
def test_valuations_sum_to_norm(m, a, b, q, p):
    x = QuadElement(m, a, b, q)
    assume(x)
    fld = make_field(m)
    from primdiv.arith import nu_p
    total = sum(nu_ideal(x, P).value * (2 if P.kind == "inert" else 1) for P in primes_above(fld, p))
    assert total == nu_p(x.norm(), p)


@settings(max_examples=150, deadline=None)
@given(st.sampled_from([5, 2, -5, -23, 10]), st.integers(-60, 60), st.integers(-60, 60),
       st.sampled_from(SMALL_PRIMES))
def test_conjugation_swaps_split_primes(m, a, b, p):
    x = QuadElement(m, a, b)
    assume(x)
    for P in primes_above(make_field(m), p):
        assert nu_ideal(x.conjugate(), P).value == nu_ideal(x, P.conjugate()).value


@settings(max_examples=100, deadline=None)
@given(st.sampled_from([5, -23, 2]), st.integers(-40, 40), st.integers(-40, 40), st.integers(-40, 40),
       st.integers(-40, 40), st.sampled_from(SMALL_PRIMES))
def test_nu_ideal_additive(m, a, b, c, d, p):
    x, y = QuadElement(m, a, b), QuadElement(m, c, d, 3)
    assume(x and y)
    for P in primes_above(make_field(m), p):
        assert nu_ideal(x * y, P).value == nu_ideal(x, P).value + nu_ideal(y, P).value


def test_mult_order_examples(q5):
    assert mult_order(2, 7) == 3
    assert mult_order(2, 5) == 4
    P3 = primes_above(q5, 3)[0]
    g = QuadElement(5, 3, 1, 2)
    t = mult_order(g, P3)
    assert 80 % t == 0
    # brute-force powering in the residue field of size 9
    brute = next(k for k in range(1, 81) if nu_ideal(g**k - 1, P3).value > 0)
    assert t == brute


def test_mult_order_rejects_non_units(q5):
    with pytest.raises(NotAUnit):
        mult_order(6, 3)
    with pytest.raises(NotAUnit):
        mult_order(QuadElement(5, 4, 1), primes_above(q5, 11)[1])


def test_nu_power_minus_one_examples(q5):
    assert nu_power_minus_one(2, 21, 7).value == 2
    assert nu_power_minus_one(2, 20, 7).value == 0
    g = QuadElement(5, 3, 1, 2)
    assert [nu_power_minus_one(g, 5, P).value for P in primes_above(q5, 11)] == [1, 1]


def test_nu_direct_examples():
    assert nu_direct_oracle(2, 21, 7).value == 2
    assert nu_direct_oracle(Fraction(3, 2), 4, 5).value == 1
    assert nu_direct_oracle(2, 1, 3).value == 0
    with pytest.raises(BudgetExceeded):
        nu_direct_oracle(2, 10**4, 3, limit=5000)


def test_roots_of_unity_rejected():
    with pytest.raises(RootOfUnity):
        nu_power_minus_one(-1, 4, 3)
    with pytest.raises(RootOfUnity):
        nu_power_minus_one(QuadElement(-3, 1, 1, 2), 4, primes_above(make_field(-3), 7)[0])


def test_lte_matches_direct_on_seeded_cases():
    for g, n, P in lte_cases(seed=11, count=300):
        assert nu_power_minus_one(g, n, P).value == nu_direct_oracle(g, n, P).value


@pytest.mark.parametrize("p", [2, 5])
def test_two_and_ramified_primes_direct(q5, p):
    P = primes_above(q5, p)[0]
    g = QuadElement(5, 3, 1, 2)
    for n in range(1, 80):
        assert nu_power_minus_one(g, n, P).value == nu_direct_oracle(g, n, P).value


def test_high_valuation_needs_precision_doubling():
    # nu_3(4^(3^k) - 1) = k + 1 and nu_2(3^(2^k) - 1) = k + 2
    v = nu_power_minus_one(4, 3**40, 3)
    assert v.value == 41 and v.method == "order_lte"
    v2 = nu_power_minus_one(3, 2**30, 2)
    assert v2.value == 32
