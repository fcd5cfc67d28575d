"""Norm-one elements theta_p = alpha / conj(alpha) attached to split primes, and their independence."""

import itertools
import math
from dataclasses import dataclass, field
from fractions import Fraction

import mpmath
import sympy

from .arith import _iroot, factor
from .errors import BudgetExceeded, RootOfUnity
from .height import GOLDEN_LOG, HEIGHT_TOL, height
from .ideals import (
    IdealRep,
    PrimeIdeal,
    _inverse_class_with_multiplier,
    in_S,
    normalize_generator,
    primes_above,
    principal_generator,
)
from .quadfield import QuadElement, QuadraticField, make_field
from .valuation import nu_ideal
from . import sieve

SUPPORT_NORM_BOUND = 10**4
MAX_KERNEL_DIM = 16


@dataclass(frozen=True)
class ThetaElement:
    value: QuadElement
    source_prime: int
    chosen_ideal: PrimeIdeal
    auxiliary_ideal: IdealRep
    generator: QuadElement
    unit_exponent: int
    generator_source: str = "search"


@dataclass(frozen=True)
class ThetaBatch:
    field: QuadraticField
    thetas: tuple

    def __post_init__(self):
        ps = [t.source_prime for t in self.thetas]
        if any(a >= b for a, b in zip(ps, ps[1:])):
            raise ValueError("source primes must be strictly increasing")

    @property
    def count(self) -> int:
        return len(self.thetas)


def theta(fld: QuadraticField, p: int, cap: int = 10**6) -> ThetaElement:
    """theta_p for p in S(K), built from the canonical prime above p."""
    if not in_S(fld, p):
        raise ValueError(f"{p} is not a split prime exceeding |D_K|^(1/2) = {math.sqrt(abs(fld.discriminant)):.3f}")
    P = primes_above(fld, p)[0]
    aux, lam = _inverse_class_with_multiplier(P)
    PA = P.lattice() * aux
    source = "search"
    try:
        gen = principal_generator(fld, PA, cap)
    except BudgetExceeded:
        gen = None
        source = "reduction"
    if gen is None:
        # the reduction multiplier always generates P*a; the search can only fail on budget
        gen = lam
        source = "reduction"
    else:
        u = gen / lam
        if u.norm() not in (1, -1) or not u.is_integral():
            raise ArithmeticError(f"searched generator {gen} and reduction generator {lam} differ by a non-unit")
    alpha, e = normalize_generator(fld, gen)
    return ThetaElement(alpha / alpha.conjugate(), p, P, aux, alpha, e, source)


def s_primes(fld: QuadraticField, count: int, start: int = 2):
    """The first ``count`` primes of S(K) that are >= start."""
    out, p = [], max(start, 2)
    while len(out) < count:
        if in_S(fld, p):
            out.append(p)
        p += 1
    return out


def theta_batch(fld: QuadraticField, count: int) -> ThetaBatch:
    return ThetaBatch(fld, tuple(theta(fld, p) for p in s_primes(fld, count)))


# --- verification ---------------------------------------------------------------------------


@dataclass
class ThetaReport:
    p: int
    norm_one: bool
    height: float
    window_lhs: float
    window_rhs: float
    window_pass: bool
    item2_bound: float
    item2_log_threshold: float
    item2_status: str  # "pass", "fail" or "out_of_range"
    support: dict = field(default_factory=dict)
    support_pass: bool = False  # support among all primes of bounded norm is exactly {P, conj P}
    support_S_pass: bool = False  # the same, restricted to primes above S(K)

    @property
    def passed(self) -> bool:
        return self.norm_one and self.window_pass and self.support_S_pass and self.item2_status != "fail"


def valuation_support(x: QuadElement, fld: QuadraticField, norm_bound: int = SUPPORT_NORM_BOUND) -> dict:
    """{(p, root): nu} over primes of norm <= norm_bound where nu_P(x) != 0."""
    # only primes dividing the numerator norm or the denominator can carry a valuation
    witness = abs(x.a * x.a - x.b * x.b * x.m) * x.q
    out = {}
    for p in sieve.primes_upto(norm_bound).tolist():
        if witness % p:
            continue
        for P in primes_above(fld, p):
            if P.norm > norm_bound:
                continue
            v = nu_ideal(x, P).value
            if v:
                out[(P.p, P.root)] = v
    return out


def verify_theta(t: ThetaElement, tol: float = HEIGHT_TOL, norm_bound: int = SUPPORT_NORM_BOUND) -> ThetaReport:
    fld = t.chosen_ideal.field
    p = t.source_prime
    D = abs(fld.discriminant)
    h = height(t.value).value
    lhs = abs(h - 0.5 * math.log(p))
    rhs = 0.25 * math.log(D) + 0.5 * fld.log_eta
    log_threshold = 100 * math.sqrt(D) * math.log(D)
    bound = 0.51 * math.log(p)
    if math.log(p) < log_threshold:
        status = "out_of_range"
    else:
        status = "pass" if h <= bound + tol else "fail"
    support = valuation_support(t.value, fld, norm_bound)
    P, Q = t.chosen_ideal, t.chosen_ideal.conjugate()
    keys = {(P.p, P.root), (Q.p, Q.root)}

    def exact(sup):
        return set(sup) == keys and sorted(sup.values()) == [-1, 1]

    in_s = {k: v for k, v in support.items() if in_S(fld, k[0])}
    return ThetaReport(
        p, t.value.norm() == 1, h, lhs, rhs, lhs <= rhs + tol, bound, log_threshold, status,
        support, exact(support), exact(in_s),
    )


# --- ranks ------------------------------------------------------------------------------------


def valuation_rank(elements, ideals) -> int:
    """Rank over Q of the matrix of valuations of ``elements`` at ``ideals``."""
    rows = [[nu_ideal(x, P).value for P in ideals] for x in elements]
    if not rows or not ideals:
        return 0
    return sympy.Matrix(rows).rank()


def independence_rank(batch: ThetaBatch) -> int:
    ideals = []
    for t in batch.thetas:
        ideals.extend(primes_above(batch.field, t.source_prime))
    return valuation_rank([t.value for t in batch.thetas], ideals)


# --- square classes ---------------------------------------------------------------------------


def sqrt_in_field(x: QuadElement):
    """An exact square root of x in its field, or None."""
    if not x:
        return x
    m = x.m
    if x.is_rational():
        r = x.as_fraction()
        for scale, root_b in ((1, False), (m, True)):
            s = r / scale
            if s > 0:
                num, den = _iroot(s.numerator, 2), _iroot(s.denominator, 2)
                if num * num == s.numerator and den * den == s.denominator:
                    return QuadElement(m, 0, num, den) if root_b else QuadElement(m, num, 0, den)
        return None
    n = x.norm()
    if n < 0:
        return None
    n0 = Fraction(_iroot(n.numerator, 2), _iroot(n.denominator, 2))
    if n0 * n0 != n:
        return None
    for Ny in (n0, -n0):
        t2 = x.trace() + 2 * Ny
        if t2 <= 0:
            continue
        t = Fraction(_iroot(t2.numerator, 2), _iroot(t2.denominator, 2))
        if t * t != t2:
            continue
        y = (x + QuadElement.rational(m, Ny)) / QuadElement.rational(m, t)
        if y * y == x:
            return y
    return None


def _gf2_kernel(vectors):
    """Basis (as index sets) of the F_2-linear relations among the given 0/1 vectors."""
    k = len(vectors)
    rows = [(int("".join(map(str, v)) or "0", 2), 1 << i) for i, v in enumerate(vectors)]
    pivots = []
    kernel = []
    for vec, tag in rows:
        for pv, pt in pivots:
            if vec ^ pv < vec:
                vec, tag = vec ^ pv, tag ^ pt
        if vec:
            pivots.append((vec, tag))
            pivots.sort(reverse=True)
        else:
            kernel.append(tag)
    return [frozenset(i for i in range(k) if t >> i & 1) for t in kernel]


def square_class_independent(elements, fld: QuadraticField = None):
    """(independent, witness) for the images of ``elements`` in K^x / (K^x)^2.

    Mod-2 valuation vectors at every prime dividing a norm or denominator decide most cases; each
    relation in their kernel is then resolved by exact square testing of the corresponding product.
    The witness is a tuple of indices whose product is a square, or None.
    """
    elements = list(elements)
    if not elements:
        return True, None
    if fld is None:
        fld = make_field(elements[0].m)
    primes = set()
    for x in elements:
        if not x:
            raise ValueError("zero has no square class")
        for n in (abs(x.a * x.a - x.b * x.b * x.m), x.q):
            if n > 1:
                fac = factor(n)
                if not fac.complete:
                    raise BudgetExceeded(f"could not factor {n} for the square-class test")
                primes.update(fac.primes)
    ideals = [P for p in sorted(primes) for P in primes_above(fld, p)]
    vectors = [[nu_ideal(x, P).value % 2 for P in ideals] for x in elements]
    basis = _gf2_kernel(vectors)
    if len(basis) > MAX_KERNEL_DIM:
        raise BudgetExceeded(f"square-class kernel of dimension {len(basis)} is too large to enumerate")
    # enumerate every nonzero relation, smallest support first
    relations = set()
    for r in range(1, len(basis) + 1):
        for combo in itertools.combinations(basis, r):
            rel = frozenset()
            for s in combo:
                rel = rel ^ s
            if rel:
                relations.add(rel)
    for rel in sorted(relations, key=lambda s: (len(s), sorted(s))):
        prod = QuadElement.rational(fld.radicand, 1)
        for i in rel:
            prod = prod * elements[i]
        if sqrt_in_field(prod) is not None:
            return False, tuple(sorted(rel))
    return True, None


# --- r-th roots ---------------------------------------------------------------------------------


def _root_candidates(gamma: QuadElement, r: int, A: int):
    """Integers B with Tr(theta) = B/A for the complex r-th roots theta of gamma (up to branches)."""
    digits = len(str(max(abs(gamma.a), abs(gamma.b), gamma.q))) + len(str(A))
    out = []
    with mpmath.workdps(2 * digits + 40):
        if gamma.m > 0:
            s = mpmath.sqrt(gamma.m)
            z1 = (gamma.a + gamma.b * s) / gamma.q
            z2 = (gamma.a - gamma.b * s) / gamma.q
            def real_roots(z):
                base = abs(z) ** (mpmath.mpf(1) / r)
                if z < 0:
                    return [-base] if r % 2 else []
                return [base, -base] if r % 2 == 0 else [base]
            for w1 in real_roots(z1):
                for w2 in real_roots(z2):
                    out.append(int(mpmath.nint(A * (w1 + w2))))
        else:
            s = mpmath.sqrt(-gamma.m)
            z = mpmath.mpc(gamma.a, gamma.b * s) / gamma.q
            base = z ** (mpmath.mpf(1) / r)
            for j in range(r):
                w = base * mpmath.expjpi(mpmath.mpf(2 * j) / r)
                out.append(int(mpmath.nint(2 * A * w.real)))
    return sorted(set(out), key=lambda b: (-b, b))


def max_root_exponent(fld: QuadraticField, gamma: QuadElement):
    """(r, theta) with theta^r = gamma and r maximal, for gamma of norm +-1 not a root of unity."""
    if gamma.is_root_of_unity():
        raise RootOfUnity(f"{gamma} is a root of unity")
    if gamma.norm() not in (1, -1):
        raise ValueError("gamma must have norm +-1")
    if gamma.is_rational():
        raise ValueError("rational gamma of norm +-1 is a root of unity")
    cap = int(height(gamma).value / (0.5 * GOLDEN_LOG) + 1e-9)
    A_gamma = gamma.minimal_polynomial()[0]
    m = fld.radicand
    for r in range(max(cap, 1), 1, -1):
        A = _iroot(A_gamma, r)
        if A**r != A_gamma:
            continue
        norms = (1,) if m < 0 else (1, -1)
        for B in _root_candidates(gamma, r, A):
            for N in norms:
                disc = B * B - 4 * A * A * N
                if disc % m:
                    continue
                w2 = disc // m
                if w2 < 0:
                    continue
                w = _iroot(w2, 2)
                if w * w != w2:
                    continue
                for sg in (1, -1):
                    th = QuadElement(m, B, sg * w, 2 * A)
                    if th**r == gamma:
                        return r, th
    return 1, gamma
