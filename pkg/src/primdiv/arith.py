"""Exact integer arithmetic: primality, factoring, arithmetic functions, cyclotomic polynomials."""

import math
import random
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .config import Effort
from . import sieve

# Rational numbers are fractions.Fraction throughout: reduced, positive denominator, 0 == 0/1.
Rational = Fraction

# Miller-Rabin with the first 13 prime bases is deterministic below this bound.
MR_DETERMINISTIC_BOUND = 3_317_044_064_679_887_385_961_981
_MR_BASES = (2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37, 41)


def nu_p(x, p: int) -> int:
    """p-adic valuation of a nonzero integer or Fraction."""
    if isinstance(x, Fraction):
        return nu_p(x.numerator, p) - nu_p(x.denominator, p)
    if x == 0:
        raise ValueError("valuation of zero")
    v = 0
    while x % p == 0:
        x //= p
        v += 1
    return v


def _mr_round(n, d, s, a):
    x = pow(a, d, n)
    if x == 1 or x == n - 1:
        return True
    for _ in range(s - 1):
        x = x * x % n
        if x == n - 1:
            return True
    return False


def is_probable_prime(n: int, extra_rounds: int = 16, seed: int = 0) -> bool:
    """Miller-Rabin; deterministic below MR_DETERMINISTIC_BOUND, seeded random bases above."""
    if n < 2:
        return False
    for p in _MR_BASES:
        if n % p == 0:
            return n == p
    d, s = n - 1, 0
    while d % 2 == 0:
        d //= 2
        s += 1
    if not all(_mr_round(n, d, s, a) for a in _MR_BASES):
        return False
    if n < MR_DETERMINISTIC_BOUND:
        return True
    rng = random.Random(seed ^ (n & 0xFFFFFFFF))
    return all(_mr_round(n, d, s, rng.randrange(2, n - 1)) for _ in range(extra_rounds))


def is_prime(n: int) -> bool:
    return is_probable_prime(n)


@dataclass(frozen=True)
class Factorization:
    """prod(p**e for p, e in entries) * cofactor == n.

    ``cofactor`` is 1 or a composite the effort budget could not split.
    ``probable`` is set when some listed prime exceeds the deterministic primality bound.
    """

    n: int
    entries: tuple = ()
    cofactor: int = 1
    probable: bool = False

    @property
    def complete(self) -> bool:
        return self.cofactor == 1

    @property
    def primes(self) -> list:
        return [p for p, _ in self.entries]

    def exponent(self, p: int) -> int:
        return dict(self.entries).get(p, 0)

    def value(self) -> int:
        out = self.cofactor
        for p, e in self.entries:
            out *= p**e
        return out

    def largest_prime(self):
        return self.entries[-1][0] if self.entries else None


@lru_cache(maxsize=8)
def _trial_blocks(bound: int, block: int = 512):
    primes = [int(p) for p in sieve.primes_upto(bound)]
    blocks = []
    for i in range(0, len(primes), block):
        chunk = primes[i : i + block]
        blocks.append((math.prod(chunk), chunk))
    return blocks


def _trial_divide(n: int, bound: int, found: dict) -> int:
    for prod, chunk in _trial_blocks(bound):
        if n == 1:
            break
        if math.gcd(n, prod) == 1:
            continue
        for p in chunk:
            while n % p == 0:
                n //= p
                found[p] = found.get(p, 0) + 1
    return n


def _brent(n: int, budget: int, rng: random.Random):
    """One nontrivial factor of composite n, or None once ``budget`` iterations are spent."""
    if n % 2 == 0:
        return 2
    used = 0
    while used < budget:
        y, c, m = rng.randrange(1, n), rng.randrange(1, n), 128
        g = r = q = 1
        x = ys = y
        while g == 1 and used < budget:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            used += r
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if 1 < g < n:
            return g
    return None


def _ecm_split(n: int, effort: Effort, seed: int):
    if effort.ecm_curves <= 0:
        return None
    from sympy.ntheory import ecm

    try:
        found = ecm(n, B1=effort.ecm_b1, B2=effort.ecm_b2, max_curve=effort.ecm_curves, seed=seed)
    except ValueError:
        return None
    for f in sorted(int(x) for x in found):
        if 1 < f < n and n % f == 0:
            return f
    return None


def _perfect_power(n: int):
    for k in range(2, n.bit_length() + 1):
        r = round(n ** (1.0 / k)) if n.bit_length() < 1000 else _iroot(n, k)
        for cand in (r - 1, r, r + 1):
            if cand > 1 and cand**k == n:
                return cand, k
        if 2**k > n:
            break
    return None


def _iroot(n: int, k: int) -> int:
    lo, hi = 1, 1 << (n.bit_length() // k + 1)
    while lo < hi:
        mid = (lo + hi + 1) // 2
        if mid**k <= n:
            lo = mid
        else:
            hi = mid - 1
    return lo


def factor(n: int, effort: Effort = Effort(), seed: int = 0) -> Factorization:
    """Factor n >= 1 within ``effort``; deterministic for a fixed (effort, seed)."""
    if n < 1:
        raise ValueError(f"factor expects n >= 1, got {n}")
    found: dict = {}
    rest = _trial_divide(n, effort.trial_bound, found)
    rng = random.Random(seed)
    stuck = []
    stack = [rest] if rest > 1 else []
    while stack:
        m = stack.pop()
        if m < effort.trial_bound**2 or is_probable_prime(m, seed=seed):
            # below trial_bound**2 with no factor <= trial_bound means prime
            found[m] = found.get(m, 0) + 1
            continue
        pp = _perfect_power(m)
        if pp:
            base, k = pp
            stack.extend([base] * k)
            continue
        d = _brent(m, effort.rho_iters, rng) or _ecm_split(m, effort, seed)
        if d is None:
            stuck.append(m)
        else:
            stack.extend([d, m // d])
    entries = tuple(sorted(found.items()))
    probable = any(p >= MR_DETERMINISTIC_BOUND for p in found)
    return Factorization(n, entries, math.prod(stuck), probable)


def arith_profile(n: int):
    """(phi(n), omega(n), mobius(n))."""
    if n < 1:
        raise ValueError("n must be positive")
    f = factor(n)
    phi = 1
    for p, e in f.entries:
        phi *= (p - 1) * p ** (e - 1)
    omega = len(f.entries)
    mobius = 0 if any(e > 1 for _, e in f.entries) else (-1) ** omega
    return phi, omega, mobius


def totient(n: int) -> int:
    return arith_profile(n)[0]


def mobius(n: int) -> int:
    return arith_profile(n)[2]


def divisors(n: int) -> list:
    out = [1]
    for p, e in factor(n).entries:
        out = [d * p**k for d in out for k in range(e + 1)]
    return sorted(out)


def square_factor(m: int):
    """Largest k > 1 with k**2 | m, or None if m is squarefree."""
    f = factor(abs(m))
    k = math.prod(p ** (e // 2) for p, e in f.entries)
    return k if k > 1 else None


def log_star(x) -> float:
    """max(log x, 1)."""
    return max(math.log(x), 1.0) if x > 0 else 1.0


# --- cyclotomic polynomials -------------------------------------------------------------


@dataclass(frozen=True)
class CyclotomicPoly:
    """Phi_n with integer coefficients in ascending degree order."""

    order: int
    coefficients: tuple = field(default=())

    @property
    def degree(self) -> int:
        return len(self.coefficients) - 1

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coefficients):
            acc = acc * x + c
        return acc


def _mul_xd_minus_1(poly, d):
    out = [0] * (len(poly) + d)
    for i, c in enumerate(poly):
        out[i + d] += c
        out[i] -= c
    return out


def _div_xd_minus_1(poly, d):
    # exact division by t^d - 1: q[i] = q[i-d] - poly[i] read from the low end
    n = len(poly) - d
    q = [0] * n
    for i in range(n):
        q[i] = -poly[i] + (q[i - d] if i >= d else 0)
    # the remainder must vanish
    for i in range(n, len(poly)):
        if poly[i] != (q[i - d] if i - d >= 0 else 0):
            raise ArithmeticError("non-exact cyclotomic division")
    return q


@lru_cache(maxsize=4096)
def cyclotomic_coeffs(n: int) -> CyclotomicPoly:
    """Phi_n = prod_{d | n} (t^d - 1)^{mu(n/d)}, by exact polynomial division."""
    if n < 1:
        raise ValueError("n must be positive")
    ups, downs = [], []
    for d in divisors(n):
        mu = mobius(n // d)
        if mu == 1:
            ups.append(d)
        elif mu == -1:
            downs.append(d)
    poly = [1]
    for d in ups:
        poly = _mul_xd_minus_1(poly, d)
    for d in downs:
        poly = _div_xd_minus_1(poly, d)
    return CyclotomicPoly(n, tuple(poly))


def cyclotomic_value(n: int, gamma):
    """(Phi_n(gamma), b**phi(n) * Phi_n(gamma)) for gamma = a/b != 0."""
    gamma = Fraction(gamma)
    if gamma == 0:
        raise ValueError("gamma must be nonzero")
    a, b = gamma.numerator, gamma.denominator
    coeffs = cyclotomic_coeffs(n).coefficients
    deg = len(coeffs) - 1
    h = 0
    bpow = 1
    # homogeneous Horner: sum c_i a^i b^(deg - i)
    for c in reversed(coeffs):
        h = h * a + c * bpow
        bpow *= b
    return Fraction(h, b**deg), h


# --- analytic estimates ------------------------------------------------------------------


@dataclass(frozen=True)
class EstimateRow:
    argument: int
    lhs: float
    rhs: float
    passed: bool


@dataclass
class EstimateReport:
    which: str
    rows: list
    first_failure: object = None
    checked: int = 0
    failures: int = 0

    @property
    def passed(self) -> bool:
        return self.failures == 0


ESTIMATE_TOL = 1e-9


def _omega_rhs(n):
    return 1.4 * math.log(n) / math.log(math.log(n))


def _pi_lower_rhs(x):
    return x / math.log(x)


def estimate_check(which: str, arguments, keep_rows: int = 50, limit: int = sieve.SIEVE_LIMIT) -> EstimateReport:
    """Check one of the elementary estimates over ``arguments`` (a range or an iterable).

    which:
        ``omega_bound``  omega(n) <= 1.4 log n / log log n            (n >= 3)
        ``phi_bound``    phi(n) >= 0.5 n / log log n                  (n >= 10**20, formula only)
        ``pi_lower``     pi(x) >= x / log x
        ``pi_upper``     pi(x) <= 1.3 x / log x
        ``pi_bounds``    both of the above

    Only the first ``keep_rows`` rows and any failures are retained in the report.
    """
    args = list(arguments)
    if not args:
        return EstimateReport(which, [])
    top = max(args)
    rows, failures, first = [], 0, None

    def record(arg, lhs, rhs, ok):
        nonlocal failures, first
        if not ok:
            failures += 1
            if first is None:
                first = arg
        if len(rows) < keep_rows or not ok:
            rows.append(EstimateRow(arg, lhs, rhs, ok))

    if which == "omega_bound":
        if top > limit:
            from .errors import BudgetExceeded

            raise BudgetExceeded(f"omega_bound range up to {top} exceeds sieve limit {limit}")
        w = sieve.omega_table(top, limit)
        for n in args:
            if n < 3:
                raise ValueError("omega_bound needs n >= 3")
            rhs = _omega_rhs(n)
            record(n, int(w[n]), rhs, int(w[n]) <= rhs + ESTIMATE_TOL)
    elif which == "phi_bound":
        for n in args:
            phi = totient(n)
            rhs = 0.5 * n / math.log(math.log(n))
            record(n, phi, rhs, phi >= rhs - ESTIMATE_TOL * rhs)
    elif which in ("pi_lower", "pi_upper", "pi_bounds"):
        table = sieve.prime_pi_table(top, limit)
        for x in args:
            if x < 2:
                raise ValueError("pi bounds need x >= 2")
            lo = _pi_lower_rhs(x)
            pix = int(table[x])
            if which in ("pi_lower", "pi_bounds"):
                record(x, pix, lo, pix >= lo - ESTIMATE_TOL)
            if which in ("pi_upper", "pi_bounds"):
                record(x, pix, 1.3 * lo, pix <= 1.3 * lo + ESTIMATE_TOL)
    else:
        raise ValueError(f"unknown estimate {which!r}")
    return EstimateReport(which, rows, first, len(args), failures)
