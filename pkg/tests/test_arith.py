import math
from fractions import Fraction

import pytest
import sympy
from hypothesis import given, settings, strategies as st

from primdiv.arith import (arith_profile, cyclotomic_coeffs, cyclotomic_value, divisors, estimate_check, factor,
                           is_prime, log_star, nu_p)
from primdiv.config import Effort
from primdiv.errors import BudgetExceeded


def test_factor_examples():
    f = factor(1)
    assert f.entries == () and f.cofactor == 1
    assert factor(63).entries == ((3, 2), (7, 1))
    assert factor(2**21 - 1).entries == ((7, 2), (127, 1), (337, 1))


def test_factor_mersenne_needs_ecm():
    f = factor(2**67 - 1)
    assert f.complete and f.entries == ((193707721, 1), (761838257287, 1))


def test_factor_budget_leaves_cofactor():
    n = 1000000007 * 998244353
    f = factor(n, Effort(trial_bound=100, rho_iters=1, ecm_curves=0))
    assert not f.complete and f.value() == n


@settings(max_examples=200, deadline=None)
@given(st.integers(1, 10**15))
def test_factor_reassembles_and_matches_sympy(n):
    f = factor(n)
    assert f.value() == n
    assert dict(f.entries) == sympy.factorint(n)


def test_factor_deterministic():
    n = (2**61 - 1) * (2**31 - 1) * 1000003
    assert factor(n, seed=3) == factor(n, seed=3)


@settings(max_examples=300, deadline=None)
@given(st.integers(1, 10**7))
def test_is_prime_matches_sympy(n):
    assert is_prime(n) == sympy.isprime(n)


def test_is_prime_strong_pseudoprimes():
    # strong pseudoprimes to several small bases
    for n in (2047, 3215031751, 3825123056546413051):
        assert not is_prime(n)
    assert is_prime(2**127 - 1)


def test_arith_profile_examples():
    assert arith_profile(1) == (1, 0, 1)
    assert arith_profile(12) == (4, 2, 0)
    assert arith_profile(30) == (8, 3, -1)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 5000))
def test_arith_profile_matches_enumeration(n):
    phi, omega, mu = arith_profile(n)
    assert phi == sum(1 for k in range(1, n + 1) if math.gcd(k, n) == 1)
    assert omega == len(sympy.primefactors(n))
    assert mu == sympy.mobius(n)


def test_cyclotomic_coeff_examples():
    assert cyclotomic_coeffs(1).coefficients == (-1, 1)
    assert cyclotomic_coeffs(6).coefficients == (1, -1, 1)
    p105 = cyclotomic_coeffs(105)
    assert p105.degree == 48 and p105.coefficients[7] == -2
    assert all(abs(c) <= 1 for n in range(1, 105) for c in cyclotomic_coeffs(n).coefficients)


@pytest.mark.parametrize("n", [1, 2, 12, 30, 77, 105, 210, 256])
def test_cyclotomic_coeffs_match_sympy(n):
    t = sympy.Symbol("t")
    ref = sympy.Poly(sympy.cyclotomic_poly(n, t), t).all_coeffs()[::-1]
    assert list(cyclotomic_coeffs(n).coefficients) == ref


def test_cyclotomic_value_examples():
    assert cyclotomic_value(1, 2) == (1, 1)
    assert cyclotomic_value(12, 2) == (13, 13)
    assert cyclotomic_value(4, Fraction(3, 2)) == (Fraction(13, 4), 13)


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 60), st.integers(-50, 50), st.integers(1, 30))
def test_product_of_cyclotomic_values(n, a, b):
    g = Fraction(a, b)
    if g == 0:
        return
    prod = math.prod(cyclotomic_value(d, g)[0] for d in divisors(n))
    assert prod == g**n - 1


@settings(max_examples=100, deadline=None)
@given(st.integers(1, 10**9), st.sampled_from([2, 3, 5, 7, 101]))
def test_nu_p_matches_division(x, p):
    v = nu_p(x, p)
    assert x % p**v == 0 and x % p ** (v + 1) != 0
    assert nu_p(Fraction(1, x), p) == -v


def test_log_star():
    assert log_star(1) == 1.0 and log_star(math.e**2) == pytest.approx(2.0)


def test_estimate_examples():
    r = estimate_check("omega_bound", [3])
    assert r.rows[0].lhs == 1 and r.rows[0].rhs == pytest.approx(16.35, abs=0.01) and r.passed
    lo10 = estimate_check("pi_lower", [10])
    assert lo10.rows[0].lhs == 4 and lo10.rows[0].rhs == pytest.approx(4.343, abs=1e-3) and not lo10.passed
    lo17 = estimate_check("pi_lower", [17])
    assert lo17.rows[0].lhs == 7 and lo17.rows[0].rhs == pytest.approx(6.0003, abs=1e-4) and lo17.passed


def test_estimate_refuses_beyond_sieve_budget():
    with pytest.raises(BudgetExceeded):
        estimate_check("omega_bound", [10**6], limit=10**5)
