import math

import pytest
from hypothesis import given, settings, strategies as st

from primdiv.errors import BudgetExceeded
from primdiv.ideals import (field_bounds_check, ideal_in_inverse_class, ideal_of_element, in_S, primes_above,
                            principal_generator, split_count)
from primdiv.quadfield import QuadElement, kronecker, make_field
from primdiv.sieve import primes_upto

FIELDS = [5, 2, -5, -23, 10, -1, -3, 79]


def test_split_examples(q5):
    P = primes_above(q5, 11)
    assert [x.kind for x in P] == ["split", "split"] and [x.root for x in P] == [4, 7]
    assert primes_above(q5, 3)[0].kind == "inert" and primes_above(q5, 3)[0].norm == 9
    assert primes_above(q5, 5)[0].kind == "ramified" and primes_above(q5, 5)[0].norm == 5
    with pytest.raises(ValueError):
        primes_above(q5, 15)


@pytest.mark.parametrize("m", FIELDS)
def test_decomposition_matches_kronecker(m):
    fld = make_field(m)
    for p in primes_upto(200).tolist():
        ideals = primes_above(fld, p)
        k = kronecker(fld.discriminant, p)
        kind = {1: "split", -1: "inert", 0: "ramified"}[k]
        assert all(P.kind == kind for P in ideals)
        if kind == "split":
            a, b = ideals
            assert b == a.conjugate() and a.norm == p
        else:
            assert len(ideals) == 1
            assert ideals[0].norm == (p * p if kind == "inert" else p)


@pytest.mark.parametrize("m", FIELDS)
def test_prime_lattice_contains_p_and_has_norm(m):
    fld = make_field(m)
    for p in primes_upto(60).tolist():
        for P in primes_above(fld, p):
            L = P.lattice()
            assert L.norm == P.norm
            assert L.contains(QuadElement(m, p))
            assert (L * L.conjugate()).norm == P.norm**2


def test_inverse_class_examples(q5, qm5):
    P11 = primes_above(q5, 11)[0]
    assert ideal_in_inverse_class(P11).norm == 1
    P3 = primes_above(qm5, 3)[0]
    assert ideal_in_inverse_class(P3).norm == 2
    f23 = make_field(-23)
    a = ideal_in_inverse_class(primes_above(f23, 2)[0])
    assert a.norm in (2, 3)


@pytest.mark.parametrize("m", FIELDS)
def test_inverse_class_is_small_and_product_principal(m):
    fld = make_field(m)
    D = abs(fld.discriminant)
    for p in primes_upto(150).tolist():
        if kronecker(fld.discriminant, p) != 1:
            continue
        for P in primes_above(fld, p):
            a = ideal_in_inverse_class(P)
            assert a.norm**2 < D
            gen = principal_generator(fld, P.lattice() * a)
            assert gen is not None and abs(gen.norm()) == p * a.norm


def test_principal_generator_examples(q5, qm5):
    P3, P2 = primes_above(qm5, 3)[0], primes_above(qm5, 2)[0]
    g = principal_generator(qm5, P3.lattice() * P2.lattice())
    assert abs(g.norm()) == 6 and g.is_integral()
    assert g in {QuadElement(-5, s * 1, t * 1) for s in (1, -1) for t in (1, -1)}
    assert principal_generator(qm5, P3.lattice()) is None
    P11 = primes_above(q5, 11)
    gens = [principal_generator(q5, P.lattice()) for P in P11]
    assert all(abs(x.norm()) == 11 for x in gens)
    # 4 + sqrt5 generates one of the two primes above 11, up to units
    eta = q5.fundamental_unit
    target = QuadElement(5, 4, 1)
    hits = [x for x in gens if any((x / target) == s * eta**e for s in (1, -1) for e in range(-4, 5))]
    assert len(hits) == 1


@settings(max_examples=60, deadline=None)
@given(st.sampled_from([5, 2, -5, -23, 10]), st.integers(-30, 30), st.integers(-30, 30))
def test_generator_of_principal_ideal_generates_it(m, a, b):
    x = QuadElement.from_omega(m, a, b)
    if not x:
        return
    fld = make_field(m)
    I = ideal_of_element(fld, x)
    g = principal_generator(fld, I)
    assert g is not None
    u = g / x
    assert u.is_integral() and abs(u.norm()) == 1


def test_generator_budget_is_distinct_from_non_principal():
    fld = make_field(94)  # eta has ~ 30 digits
    P = primes_above(fld, 3)[0]
    with pytest.raises(BudgetExceeded):
        principal_generator(fld, P.lattice(), cap=10)


def test_in_S(q5):
    assert in_S(q5, 11) and not in_S(q5, 2) and not in_S(q5, 3) and not in_S(q5, 5)
    assert not in_S(make_field(-23), 2)


def test_split_count_examples():
    c, _ = split_count(make_field(-1), 100)
    assert c == 11
    assert split_count(make_field(5), 10)[0] == 0


def test_field_bounds_examples(q5, qm5):
    b5 = field_bounds_check(q5)
    assert b5["h_real"][2] and b5["h_real"][1] == pytest.approx(2.569, abs=1e-3)
    bm5 = field_bounds_check(qm5)
    assert bm5["h_imag"][0] == 2 and bm5["h_imag"][1] == pytest.approx(7.11, abs=0.01) and bm5["h_imag"][2]
    assert field_bounds_check(make_field(-3))["h_imag"][2]


@pytest.mark.parametrize("m", [m for m in range(-150, 150) if m not in (0, 1) and
                               all(m % (q * q) for q in range(2, 13))])
def test_class_number_bounds_hold(m):
    assert all(v[2] for v in field_bounds_check(make_field(m)).values())
