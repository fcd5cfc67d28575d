"""Valuations at primes of Q and of quadratic fields, and nu_P(gamma^n - 1) via order + LTE."""

from dataclasses import dataclass
from fractions import Fraction

from .arith import factor, nu_p
from .errors import BudgetExceeded, NotAUnit, RootOfUnity
from .ideals import PrimeIdeal
from .quadfield import QuadElement

MAX_PRECISION = 4096
DIRECT_EXPONENT_LIMIT = 5000


@dataclass(frozen=True)
class ValuationResult:
    ideal: object  # PrimeIdeal, or an int for a prime of Q
    value: int
    method: str


def _prime_of(P):
    return P if isinstance(P, int) else P.p


def _as_quad(x, P):
    if isinstance(x, QuadElement):
        return x
    return QuadElement.rational(P.field.radicand, Fraction(x))


def _hensel_omega(P: PrimeIdeal, k: int) -> int:
    """Root of X^2 - T X + N in Z/p^k lifting the omega residue of a split prime."""
    p, T, N = P.p, P.field.omega_trace, P.field.omega_norm
    r, mod = P.omega_residue(), p
    while mod < p**k:
        mod = min(mod * mod, p**k)
        fr = (r * r - T * r + N) % mod
        r = (r - fr * pow(2 * r - T, -1, mod)) % mod
    return r % p**k


def nu_ideal(x, P) -> ValuationResult:
    """nu_P(x) for nonzero x; P is a PrimeIdeal or a rational prime (int)."""
    if isinstance(P, int):
        val = Fraction(x.as_fraction() if isinstance(x, QuadElement) else x)
        if val == 0:
            raise ValueError("valuation of zero")
        return ValuationResult(P, nu_p(val, P), "direct")
    x = _as_quad(x, P)
    if not x:
        raise ValueError("valuation of zero")
    p = P.p
    if P.kind == "inert":
        return ValuationResult(P, nu_p(x.norm(), p) // 2, "norm_descent")
    if P.kind == "ramified":
        return ValuationResult(P, nu_p(x.norm(), p), "norm_descent")
    xx, yy, c = x.to_omega()
    v_norm = nu_p(QuadElement.from_omega(x.m, xx, yy).norm(), p)
    if v_norm == 0:
        return ValuationResult(P, -nu_p(c, p), "hensel_embedding")
    # nu_P(alpha) <= nu_p(N alpha), so precision v_norm + 1 determines it exactly
    k = v_norm + 1
    img = (xx + yy * _hensel_omega(P, k)) % p**k
    return ValuationResult(P, nu_p(img, p) - nu_p(c, p), "hensel_embedding")


# --- local arithmetic ----------------------------------------------------------------------


class _Local:
    """O_P / p^k: integers mod p^k (Q or split P) or pairs x + y*omega mod p^k (inert, ramified)."""

    def __init__(self, P, k):
        self.P = P
        self.p = _prime_of(P)
        self.k = k
        self.mod = self.p**k
        self.scalar = isinstance(P, int) or P.kind == "split"
        if not self.scalar:
            self.T, self.N = P.field.omega_trace, P.field.omega_norm

    def one(self):
        return 1 if self.scalar else (1, 0)

    def mul(self, u, v):
        if self.scalar:
            return u * v % self.mod
        x1, y1 = u
        x2, y2 = v
        return (x1 * x2 - y1 * y2 * self.N) % self.mod, (x1 * y2 + x2 * y1 + y1 * y2 * self.T) % self.mod

    def pow(self, u, e):
        if self.scalar:
            return pow(u, e, self.mod)
        out = self.one()
        while e:
            if e & 1:
                out = self.mul(out, u)
            u = self.mul(u, u)
            e >>= 1
        return out

    def minus_one(self, u):
        return (u - 1) % self.mod if self.scalar else ((u[0] - 1) % self.mod, u[1])

    def is_one(self, u):
        return u == self.one()

    def valuation(self, u):
        """nu_P of u, or None if u is zero at this precision."""
        p = self.p
        if self.scalar:
            return None if u == 0 else nu_p(u, p)
        x, y = u
        if self.P.kind == "inert":
            if x == 0 and y == 0:
                return None
            return min(nu_p(x, p) if x else self.k, nu_p(y, p) if y else self.k)
        n = (x * x + self.T * x * y + self.N * y * y) % self.mod
        return None if n == 0 else nu_p(n, p)

    def embed(self, gamma):
        """Image of a P-unit gamma."""
        p, mod = self.p, self.mod
        if isinstance(self.P, int):
            g = Fraction(gamma.as_fraction() if isinstance(gamma, QuadElement) else gamma)
            if g.numerator % p == 0 or g.denominator % p == 0:
                raise NotAUnit(f"{g} is not a unit at {p}")
            return g.numerator * pow(g.denominator, -1, mod) % mod
        gamma = _as_quad(gamma, self.P)
        x, y, c = gamma.to_omega()
        s = nu_p(c, p)
        c_unit = c // p**s
        inv = pow(c_unit, -1, mod)
        if self.P.kind == "split":
            k2 = self.k + s
            img = (x + y * _hensel_omega(self.P, k2)) % p**k2
            if img == 0 or nu_p(img, p) != s:
                raise NotAUnit(f"{gamma} is not a unit at {self.P}")
            return (img // p**s) * inv % mod
        ps = p**s
        if x % ps or y % ps:
            raise NotAUnit(f"{gamma} is not a unit at {self.P}")
        u = ((x // ps) * inv % mod, (y // ps) * inv % mod)
        if self.valuation(u) != 0:
            raise NotAUnit(f"{gamma} is not a unit at {self.P}")
        return u

    def group_order(self):
        p = self.p
        if isinstance(self.P, int) or self.P.kind != "inert":
            return p - 1
        return p * p - 1


def residue_order(P) -> int:
    """N(P) for a PrimeIdeal, p for a rational prime."""
    return P if isinstance(P, int) else P.norm


def mult_order(gamma, P) -> int:
    """Multiplicative order of gamma in the residue field at P."""
    loc = _Local(P, 1)
    u = loc.embed(gamma)
    if not isinstance(P, int) and P.kind == "ramified":
        # O/p is not a field here; reduce further to O/P = F_p
        loc = _Local(P.p, 1)
        u = (u[0] + u[1] * P.omega_residue()) % P.p
    t = loc.group_order()
    for q, _ in factor(t).entries:
        while t % q == 0 and loc.is_one(loc.pow(u, t // q)):
            t //= q
    return t


def _local_nu_power_minus_one(gamma, e, P, start=8):
    k = start
    while k <= MAX_PRECISION:
        loc = _Local(P, k)
        u = loc.pow(loc.embed(gamma), e)
        v = loc.valuation(loc.minus_one(u))
        if v is not None:
            return v
        k *= 2
    raise BudgetExceeded(f"valuation of gamma^{e} - 1 at {P} exceeds precision {MAX_PRECISION}")


def _is_unramified_odd(P):
    return _prime_of(P) > 2 and (isinstance(P, int) or P.kind != "ramified")


def nu_power_minus_one(gamma, n: int, P) -> ValuationResult:
    """nu_P(gamma^n - 1) for a P-unit gamma, not a root of unity.

    Odd unramified p: 0 unless ord_P(gamma) = t divides n, then nu_P(gamma^t - 1) + nu_p(n).
    p = 2 and ramified p: computed directly in O_P / p^k with k doubled until determined.
    """
    if n < 1:
        raise ValueError("n must be positive")
    if isinstance(gamma, QuadElement) and gamma.is_root_of_unity() or (
        not isinstance(gamma, QuadElement) and Fraction(gamma) in (1, -1)
    ):
        raise RootOfUnity(f"{gamma} is a root of unity")
    if _is_unramified_odd(P):
        t = mult_order(gamma, P)
        if n % t:
            return ValuationResult(P, 0, "order_lte")
        v = _local_nu_power_minus_one(gamma, t, P)
        return ValuationResult(P, v + nu_p(n, _prime_of(P)), "order_lte")
    return ValuationResult(P, _local_nu_power_minus_one(gamma, n, P), "direct")


def nu_direct_oracle(gamma, n: int, P, limit: int = DIRECT_EXPONENT_LIMIT) -> ValuationResult:
    """nu_P(gamma^n - 1) by exact exponentiation in K followed by nu_ideal."""
    if n > limit:
        raise BudgetExceeded(f"direct exponent {n} exceeds limit {limit}")
    if isinstance(gamma, QuadElement):
        val = gamma**n - 1
    else:
        val = Fraction(gamma) ** n - 1
    if not val:
        raise RootOfUnity(f"{gamma}^{n} = 1")
    return ValuationResult(P, nu_ideal(val, P).value, "direct")


def is_unit_at(gamma, P) -> bool:
    return nu_ideal(gamma, P).value == 0
