"""Absolute logarithmic heights of rational and quadratic numbers."""

import math
from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .arith import arith_profile, cyclotomic_value, cyclotomic_coeffs, factor, log_star
from .config import Effort
from .errors import RootOfUnity
from .quadfield import QuadElement

HEIGHT_TOL = 1e-9
GOLDEN_LOG = math.log((1 + math.sqrt(5)) / 2)
ARCH_CONSTANT = 1e14


@dataclass(frozen=True)
class HeightValue:
    value: float
    error_budget: float
    method: str

    def __float__(self):
        return self.value


def _budget(value: float) -> float:
    return 1e-12 * max(1.0, abs(value))


def height_rational(q) -> HeightValue:
    """log max(|num|, den)."""
    q = Fraction(q.as_fraction() if isinstance(q, QuadElement) else q)
    if q == 0:
        raise ValueError("height of zero")
    v = math.log(max(abs(q.numerator), q.denominator))
    return HeightValue(v, _budget(v), "places_formula")


def _finite_part(x: QuadElement, effort: Effort) -> float:
    """sum over P of max(0, -nu_P(x)) log N(P), from the prime factors of the denominator."""
    from .ideals import primes_above
    from .quadfield import make_field
    from .valuation import nu_ideal

    A = x.minimal_polynomial()[0]
    if A == 1:
        return 0.0
    fld = make_field(x.m)
    fac = factor(A, effort)
    total = 0.0
    for p, _ in fac.entries:
        for P in primes_above(fld, p):
            v = nu_ideal(x, P).value
            if v < 0:
                total -= v * math.log(P.norm)
    # primes of an unfactored cofactor contribute exactly their share of the leading coefficient
    if fac.cofactor > 1:
        total += math.log(fac.cofactor) * _cofactor_multiplicity(A, fac.cofactor)
    return total


def _cofactor_multiplicity(A: int, r: int) -> int:
    k = 0
    while A % r == 0:
        A //= r
        k += 1
    return k


def height_places(x: QuadElement, effort: Effort = Effort()) -> HeightValue:
    la, lb = x.log_abs_embeddings()
    arch = max(la, 0.0) + max(lb, 0.0)
    v = 0.5 * (arch + _finite_part(x, effort))
    return HeightValue(v, _budget(v), "places_formula")


def height_mahler(x: QuadElement) -> HeightValue:
    """(1/2) log of the Mahler measure of the primitive minimal polynomial, at high precision."""
    A, B, C = x.minimal_polynomial()
    digits = max(len(str(abs(c))) for c in (A, B, C))
    with mpmath.workdps(2 * digits + 30):
        disc = mpmath.mpf(B) ** 2 - 4 * mpmath.mpf(A) * C
        s = mpmath.sqrt(disc) if disc >= 0 else mpmath.sqrt(mpmath.mpc(disc))
        # stable pair of roots: the large one directly, the small one from Vieta
        big = (-B - s) / (2 * A) if B >= 0 else (-B + s) / (2 * A)
        small = mpmath.mpf(C) / (A * big)
        logm = mpmath.log(A)
        for r in (big, small):
            a = abs(r)
            if a > 1:
                logm += mpmath.log(a)
        v = float(logm / 2)
    return HeightValue(v, _budget(v), "mahler_measure")


def height_quad(x: QuadElement, effort: Effort = Effort(), check: bool = True) -> HeightValue:
    """Height via the places formula, cross-checked against the Mahler measure."""
    if not x:
        raise ValueError("height of zero")
    if x.is_rational():
        return height_rational(x.as_fraction())
    hp = height_places(x, effort)
    if check:
        hm = height_mahler(x)
        if abs(hp.value - hm.value) > hp.error_budget + hm.error_budget + HEIGHT_TOL:
            raise ArithmeticError(f"height methods disagree for {x}: {hp.value} vs {hm.value}")
    return hp


def height(x, effort: Effort = Effort(), check: bool = True) -> HeightValue:
    if isinstance(x, QuadElement):
        return height_quad(x, effort, check)
    return height_rational(x)


def degree_of(x) -> int:
    return 2 if isinstance(x, QuadElement) and not x.is_rational() else 1


def _is_root_of_unity(x) -> bool:
    if isinstance(x, QuadElement):
        return x.is_root_of_unity()
    return Fraction(x) in (1, -1)


def general_floor(d: int) -> float:
    """Lower bound for h(x) at degree d valid for every d."""
    return 1.0 / (4 * d * log_star(d) ** 3)


def height_floor_check(x, tol: float = HEIGHT_TOL):
    """(floor, pass) with floor log 2 at degree 1 and (1/2) log golden ratio at degree 2."""
    if not x:
        raise ValueError("zero has no height floor")
    if _is_root_of_unity(x):
        raise RootOfUnity(f"{x} is a root of unity")
    d = degree_of(x)
    h = height(x).value
    floor = math.log(2) if d == 1 else 0.5 * GOLDEN_LOG
    ok = h >= floor - tol and h >= general_floor(d) - tol
    return floor, ok


def cyclotomic_value_any(n: int, gamma):
    """Phi_n(gamma) exactly, for rational or quadratic gamma."""
    if not isinstance(gamma, QuadElement) or gamma.is_rational():
        g = gamma.as_fraction() if isinstance(gamma, QuadElement) else gamma
        val = cyclotomic_value(n, g)[0]
        return QuadElement.rational(gamma.m, val) if isinstance(gamma, QuadElement) else val
    # Horner over the integer coefficients in omega-coordinates with a common denominator
    x, y, c = gamma.to_omega()
    m = gamma.m
    T = 1 if m % 4 == 1 else 0
    N = (1 - m) // 4 if m % 4 == 1 else -m
    coeffs = cyclotomic_coeffs(n).coefficients
    deg = len(coeffs) - 1
    u, v = 0, 0
    cpow = 1
    for k in reversed(range(deg + 1)):
        # (u + v w) * (x + y w) with w^2 = T w - N
        u, v = u * x - v * y * N, u * y + v * x + v * y * T
        u += coeffs[k] * cpow
        cpow *= c
    # each step multiplied by (x + y w) without dividing by c, so the result carries c^deg
    return QuadElement.from_omega(m, u, v, c**deg)


@dataclass(frozen=True)
class CyclotomicResidual:
    residual: float
    bound: float
    passed: bool
    arch_floor: float
    arch_min: float
    arch_passed: bool

    def __iter__(self):
        return iter((self.residual, self.bound, self.passed))


def cyclotomic_height_residual(gamma, n: int, tol: float = HEIGHT_TOL) -> CyclotomicResidual:
    """|h(Phi_n(gamma)) - phi(n) h(gamma)| against 2^omega(n) log(pi n), plus the archimedean floor."""
    if _is_root_of_unity(gamma) or not gamma:
        raise RootOfUnity(f"{gamma} is zero or a root of unity")
    phi, omega, _ = arith_profile(n)
    val = cyclotomic_value_any(n, gamma)
    if not val:
        raise ValueError(f"Phi_{n}({gamma}) = 0")
    hg = height(gamma).value
    hv = height(val).value
    residual = abs(hv - phi * hg)
    bound = 2**omega * math.log(math.pi * n)
    d = degree_of(gamma)
    arch_floor = -ARCH_CONSTANT * d**5 * hg * 2**omega * log_star(n)
    if isinstance(val, QuadElement):
        arch_min = min(val.log_abs_embeddings())
    else:
        arch_min = math.log(abs(val.numerator)) - math.log(val.denominator)
    return CyclotomicResidual(residual, bound, residual <= bound + tol, arch_floor, arch_min, arch_min >= arch_floor - tol)
