"""Evaluators for the explicit valuation and threshold bounds, in log space where it matters."""

import math
from dataclasses import dataclass, field

from .arith import log_star, totient

STATED_EXPONENT = 0.001
SHARP_EXPONENT = 0.002


@dataclass(frozen=True)
class YuBoundInput:
    """Parameters of the p-adic linear-forms bound for k multiplicatively independent P-units."""

    k: int
    d: int
    heights: tuple
    prime_norm: int
    underlying_p: int
    delta: float = 1.0
    B: int = 1
    two_power_torsion_order_u: int = 1

    def __post_init__(self):
        if self.k < 1 or self.d < 1:
            raise ValueError("k and d must be positive")
        if len(self.heights) != self.k:
            raise ValueError(f"expected {self.k} heights, got {len(self.heights)}")
        if any(h <= 0 for h in self.heights):
            raise ValueError("heights must be positive")
        if self.B < 1:
            raise ValueError("B must be >= 1")
        if self.delta <= 0:
            raise ValueError("delta must be positive")
        if self.underlying_p < 5:
            raise ValueError("the bound requires an underlying prime p >= 5")


@dataclass(frozen=True)
class BoundReport:
    omega_value: float
    rhs: float
    branch: str  # "norm" for (N/delta)(k/log N)^k, "exp" for e^k log N
    log_rhs: float = 0.0
    branches: tuple = field(default=())


def yu_rhs(inp: YuBoundInput) -> BoundReport:
    """10^5 d^(k+2) (log* d)^3 30^k k^(5/2) (log* k) prod h_i * Omega * log* B."""
    k, d, N = inp.k, inp.d, inp.prime_norm
    lN = math.log(N)
    log_b1 = math.log(N) - math.log(inp.delta) + k * (math.log(k) - math.log(lN))
    log_b2 = k + math.log(lN)
    if log_b1 >= log_b2:
        log_omega, branch = log_b1, "norm"
    else:
        log_omega, branch = log_b2, "exp"
    log_rhs = (
        5 * math.log(10)
        + (k + 2) * math.log(d)
        + 3 * math.log(log_star(d))
        + k * math.log(30)
        + 2.5 * math.log(k)
        + math.log(log_star(k))
        + math.fsum(math.log(h) for h in inp.heights)
        + log_omega
        + math.log(log_star(inp.B))
    )
    rhs = math.exp(log_rhs) if log_rhs < 709 else math.inf
    return BoundReport(math.exp(log_omega), rhs, branch, log_rhs, (math.exp(log_b1), math.exp(log_b2)))


@dataclass(frozen=True)
class ValuationBound:
    value: float
    hypothesis_met: bool
    log_p0: str  # the threshold, symbolically
    exponent: float


def valuation_bound_rhs(variant: str, *, h: float, n: int, prime_norm: int = None, p: int = None,
                        d: int = 1, D: int = None, sharp: bool = False) -> ValuationBound:
    """Right-hand side of the valuation bounds nu_P(gamma^n - 1) <= ... .

    ``thm14``: N exp(-0.002/d log N / log log N) h log* n, valid for N >= exp(80000 d (log* d)^2).
    ``thm15``: p exp(-c log p / log log p) h log* n with c = 0.001 (0.002 with ``sharp``),
    valid for p >= exp exp(max(10^8, 2|D|)).
    """
    if variant == "thm14":
        N = prime_norm
        if N is None or N < 3:
            raise ValueError("thm14 needs prime_norm >= 3")
        lN = math.log(N)
        c = 0.002 / d
        val = N * math.exp(-c * lN / math.log(lN)) * h * log_star(n)
        log_p0 = 80000 * d * log_star(d) ** 2
        return ValuationBound(val, lN >= log_p0, f"log p0 = {log_p0:g}", c)
    if variant == "thm15":
        if p is None or p < 3:
            raise ValueError("thm15 needs p >= 3")
        lp = math.log(p)
        c = SHARP_EXPONENT if sharp else STATED_EXPONENT
        val = p * math.exp(-c * lp / math.log(lp)) * h * log_star(n)
        ll0 = max(10**8, 2 * abs(D)) if D is not None else 10**8
        # p >= exp exp(ll0)  <=>  log log p >= ll0
        return ValuationBound(val, math.log(lp) >= ll0, f"log log p0 = {ll0:g}", c)
    raise ValueError(f"unknown variant {variant!r}")


@dataclass(frozen=True)
class Threshold:
    threshold: float
    n0: str
    log_n0: float
    hypothesis_met: bool


def stewart_threshold(n: int, variant: str) -> Threshold:
    """n exp(c log n / log log n) with c = 0.0005 (thm12) or 0.0002 (thm13), and the n0 comparison."""
    if n < 3:
        raise ValueError("n must be >= 3")
    ln = math.log(n)
    if variant == "thm12":
        c, n0, log_n0 = 0.0005, "exp(10^6)", 1e6
    elif variant == "thm13":
        c, n0, log_n0 = 0.0002, "exp exp(max(10^9, 3|D_K|))", math.inf
    else:
        raise ValueError(f"unknown variant {variant!r}")
    return Threshold(n * math.exp(c * ln / math.log(ln)), n0, log_n0, ln >= log_n0)


def sigma_bounds(h: float, n: int, P: int, variant: str):
    """(lower, upper) for the primitive part of the finite height sum."""
    if n < 3 or P < 3:
        raise ValueError("n and P must be >= 3")
    phi = totient(n)
    ln = math.log(n)
    if variant == "rational":
        low_c, up_c, c = 0.9, 2, 0.002
    elif variant == "quadratic":
        low_c, up_c, c = 1.8, 8, 0.0005
    else:
        raise ValueError(f"unknown variant {variant!r}")
    lower = low_c * phi * h
    upper = up_c * h * P * P * math.log(P) * math.exp(-c * ln / math.log(ln)) * ln / n
    return lower, upper


def subgroup_index(P, elements, torsion=None) -> int:
    """[F_P^x : <images of torsion and elements>] for N(P) <= 10^6.

    The residue field's unit group is cyclic, so the subgroup generated has order equal to the
    lcm of the generators' orders and no discrete logarithms are needed.
    """
    from .valuation import mult_order, residue_order

    N = residue_order(P)
    if N > 10**6:
        raise ValueError("subgroup index helper is limited to N(P) <= 10^6")
    gens = list(elements) + ([torsion] if torsion is not None else [])
    order = 1
    for g in gens:
        t = mult_order(g, P)
        order = order * t // math.gcd(order, t)
    return (N - 1) // order
