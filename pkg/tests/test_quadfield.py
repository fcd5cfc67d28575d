import math
from fractions import Fraction

import pytest
import sympy
from sympy.solvers.diophantine.diophantine import diop_DN
from hypothesis import assume, given, settings, strategies as st

from primdiv.quadfield import QuadElement, kronecker, make_field

RADICANDS = [5, 2, 3, 10, 13, -1, -3, -5, -23, 21, -15]


def _squarefree_radicands(bound):
    return [m for m in range(-bound, bound + 1) if m not in (0, 1) and sympy.factorint(abs(m)) and
            all(e == 1 for e in sympy.factorint(abs(m)).values())]


def brute_class_number_imag(D):
    """Count reduced forms (a, b, c), b^2 - 4ac = D, |b| <= a <= c, b >= 0 when |b| = a or a = c."""
    h = 0
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b * b - D) % (4 * a):
                continue
            c = (b * b - D) // (4 * a)
            if c < a or (b < 0 and a == c) or math.gcd(math.gcd(a, b), c) != 1:
                continue
            h += 1
        a += 1
    return h


def pell_unit(D):
    """Smallest x, y > 0 with x^2 - D y^2 = +-4, from sympy's generalized Pell solver."""
    sols = [(abs(x), abs(y)) for N in (-4, 4) for x, y in diop_DN(D, N) if y]
    return min(sols, key=lambda s: s[1])


def analytic_class_number_real(D, log_eta):
    s = sum(kronecker(D, a) * math.log(math.sin(math.pi * a / D)) for a in range(1, D))
    return round(-0.5 * s / log_eta)


def test_field_examples():
    f5 = make_field(5)
    assert (f5.discriminant, f5.class_number) == (5, 1)
    assert f5.fundamental_unit == QuadElement(5, 1, 1, 2)
    fi = make_field(-1)
    assert (fi.discriminant, fi.class_number, fi.torsion_order, fi.mu) == (-4, 1, 4, 2)
    assert (make_field(-5).discriminant, make_field(-5).class_number) == (-20, 2)
    assert make_field(-3).mu == 3
    assert make_field(10).fundamental_unit == QuadElement(10, 3, 1)


def test_non_squarefree_rejected():
    with pytest.raises(ValueError, match="2\\^2"):
        make_field(12)


@pytest.mark.parametrize("m", [m for m in _squarefree_radicands(200) if m < 0 and abs(4 * m) <= 800])
def test_imaginary_class_number_brute_force(m):
    fld = make_field(m)
    assert fld.class_number == brute_class_number_imag(fld.discriminant)


@pytest.mark.parametrize("m", [m for m in _squarefree_radicands(200) if m > 1])
def test_real_unit_and_class_number(m):
    fld = make_field(m)
    x, y = pell_unit(fld.discriminant)
    eta = QuadElement(m, x, y * fld.conductor, 2)
    assert fld.fundamental_unit == eta
    assert abs(eta.norm()) == 1
    assert fld.class_number == analytic_class_number_real(fld.discriminant, math.log(float(eta)))


@settings(max_examples=200, deadline=None)
@given(st.integers(-10**6, 10**6), st.sampled_from([3, 5, 7, 11, 13, 101, 997]))
def test_kronecker_euler_criterion(a, p):
    assert kronecker(a, p) == sympy.jacobi_symbol(a % p, p) if a % p else kronecker(a, p) == 0
    assert kronecker(a, p) % p == pow(a, (p - 1) // 2, p)


def elements(ms=RADICANDS):
    return st.builds(QuadElement, st.sampled_from(ms), st.integers(-200, 200), st.integers(-200, 200),
                     st.integers(1, 50))


@settings(max_examples=200, deadline=None)
@given(elements())
def test_omega_coordinates_round_trip(x):
    u, v, c = x.to_omega()
    assert QuadElement.from_omega(x.m, u, v, c) == x


@settings(max_examples=200, deadline=None)
@given(elements([5]), elements([5]))
def test_norm_multiplicative(x, y):
    assert (x * y).norm() == x.norm() * y.norm()
    assert (x * y).conjugate() == x.conjugate() * y.conjugate()


@settings(max_examples=200, deadline=None)
@given(elements())
def test_inverse(x):
    assume(x)
    assert x * x.inverse() == 1


@settings(max_examples=100, deadline=None)
@given(elements())
def test_minimal_polynomial_annihilates(x):
    assume(not x.is_rational())
    A, B, C = x.minimal_polynomial()
    assert A > 0 and math.gcd(math.gcd(A, B), C) == 1
    assert A * x * x + B * x + C == 0


@pytest.mark.parametrize("m", [-1, -3, 5, -7])
def test_roots_of_unity(m):
    fld = make_field(m)
    for z in fld.units_torsion():
        assert z.is_root_of_unity()
        assert z ** fld.torsion_order == 1
    assert not fld.element(2).is_root_of_unity()


def test_embeddings_real_and_complex():
    x = QuadElement(5, 1, 1, 2)
    e1, e2 = x.embeddings()
    assert float(e1) * float(e2) == pytest.approx(-1)
    z = QuadElement(-5, 1, 1)
    assert all(la == pytest.approx(0.5 * math.log(6)) for la in z.log_abs_embeddings())
