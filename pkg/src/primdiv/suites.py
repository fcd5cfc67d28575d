"""Registered invariant suites: each returns per-check pass/fail with timings."""

import math
import random
import time
from dataclasses import dataclass, field
from fractions import Fraction

import numpy as np

from .arith import cyclotomic_coeffs, divisors, estimate_check, nu_p
from .bounds import YuBoundInput, yu_rhs
from .config import DEFAULT, Effort, RunConfig
from .errors import BudgetExceeded
from .height import cyclotomic_height_residual, height
from .ideals import primes_above, split_count
from .quadfield import QuadElement, kronecker, make_field
from .scan import scan_quadratic, scan_rational
from .theta import independence_rank, square_class_independent, theta_batch, verify_theta
from .valuation import mult_order, nu_direct_oracle, nu_ideal, nu_power_minus_one
from . import sieve

RATIONAL_CORPUS = (Fraction(2), Fraction(3), Fraction(3, 2), Fraction(5, 3), Fraction(10))
FIELD_CORPUS = (5, 2, -5, -23, 10)
THETA_FIELDS = (5, 2, -5, -23)


def quadratic_corpus():
    """eta^2 for the real fields; a small non-unit for the imaginary ones (their units are torsion)."""
    out = []
    for m in FIELD_CORPUS:
        fld = make_field(m)
        if fld.is_real:
            out.append(fld.fundamental_unit**2)
        elif m % 4 == 1:
            out.append(QuadElement(m, 1, 1, 2))
        else:
            out.append(QuadElement(m, 1, 1))
    return out


def lte_corpus():
    """Elements for the order/LTE oracle comparison."""
    golden = make_field(5).fundamental_unit
    return list(RATIONAL_CORPUS) + quadratic_corpus() + [golden**k for k in (1, 3, 4)]


@dataclass
class Check:
    name: str
    passed: bool
    detail: str = ""
    seconds: float = 0.0
    hard: bool = True


@dataclass
class SuiteResult:
    name: str
    checks: list = field(default_factory=list)
    seconds: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks if c.hard)

    def to_dict(self) -> dict:
        return {
            "name": self.name,
            "passed": self.passed,
            "seconds": round(self.seconds, 3),
            "checks": [vars(c) | {"seconds": round(c.seconds, 3)} for c in self.checks],
        }


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.seconds = time.perf_counter() - self.t0


# --- individual suites -------------------------------------------------------------------------


def cyclotomic_identity(config: RunConfig, n_max: int = 300) -> list:
    bad = []
    with _Timer() as t:
        for n in range(1, n_max + 1):
            acc = np.array([1], dtype=object)
            for d in divisors(n):
                acc = np.convolve(acc, np.array(cyclotomic_coeffs(d).coefficients, dtype=object))
            if [int(c) for c in acc] != [-1] + [0] * (n - 1) + [1]:
                bad.append(n)
    return [Check(f"prod Phi_d = t^n - 1 for n <= {n_max}", not bad, f"failures: {bad[:10]}", t.seconds)]


def lte_cases(seed: int, count: int = 1000, n_max: int = 200, p_max: int = 1000):
    """Seeded (gamma, n, P) triples with gamma a P-unit; half of them have ord_P(gamma) | n."""
    rng = random.Random(seed)
    corpus = lte_corpus()
    primes = sieve.primes_upto(p_max).tolist()
    cases = []
    while len(cases) < count:
        g = rng.choice(corpus)
        p = rng.choice(primes)
        if isinstance(g, QuadElement):
            P = rng.choice(primes_above(make_field(g.m), p))
            if nu_ideal(g, P).value != 0:
                continue
        else:
            P = p
            if nu_p(g, p) != 0:
                continue
        if rng.random() < 0.5:
            t = mult_order(g, P)
            if t > n_max:
                continue
            n = t * rng.randint(1, n_max // t)
        else:
            n = rng.randint(1, n_max)
        cases.append((g, n, P))
    return cases


def lte_oracle(config: RunConfig, count: int = 1000) -> list:
    agree, mismatches, nonzero = 0, [], 0
    with _Timer() as t:
        for g, n, P in lte_cases(config.seed, count):
            fast = nu_power_minus_one(g, n, P).value
            slow = nu_direct_oracle(g, n, P, config.direct_exponent_limit).value
            nonzero += fast > 0
            if fast == slow:
                agree += 1
            else:
                mismatches.append((str(g), n, getattr(P, "p", P), fast, slow))
    return [Check(f"order+LTE agrees with direct exponentiation ({count} cases)", agree == count,
                  f"{agree}/{count} agree, {nonzero} with positive valuation; mismatches: {mismatches[:5]}", t.seconds)]


def theta_prop52(config: RunConfig, fields=THETA_FIELDS, count: int = 10) -> list:
    checks = []
    for m in fields:
        fld = make_field(m)
        with _Timer() as t:
            batch = theta_batch(fld, count)
            reps = [verify_theta(x) for x in batch.thetas]
            rank = independence_rank(batch)
            indep, witness = square_class_independent([x.value for x in batch.thetas], fld)
        tag = f"Q(sqrt {m})"
        checks.append(Check(f"{tag}: norm 1", all(r.norm_one for r in reps), "", t.seconds))
        worst = max(r.window_lhs - r.window_rhs for r in reps)
        checks.append(Check(f"{tag}: height window", all(r.window_pass for r in reps), f"max excess {worst:.4g}"))
        checks.append(Check(f"{tag}: support among S(K) primes", all(r.support_S_pass for r in reps)))
        lit = [r.p for r in reps if not r.support_pass]
        checks.append(Check(f"{tag}: support among all primes of norm <= 10^4", not lit,
                            f"extra support for p in {lit}" if lit else "", hard=False))
        checks.append(Check(f"{tag}: independence rank", rank == count, f"rank {rank}"))
        checks.append(Check(f"{tag}: square-class independent", indep, f"witness {witness}"))
    return checks


def _scan_checks(report, tag: str, seconds: float) -> list:
    full = [r for r in report.rows if r.fully_factored]
    bad = [r.n for r in full if r.violations]
    return [Check(f"{tag}: zero violations on fully factored rows", not bad,
                  f"{len(full)}/{len(report.rows)} rows fully factored; violating n: {bad[:10]}", seconds)]


def prop82_rational(config: RunConfig, gammas=RATIONAL_CORPUS[:4], n_min: int = 4, n_max: int = 120) -> list:
    checks = []
    for g in gammas:
        with _Timer() as t:
            rep = scan_rational(g, n_min, n_max, config)
        checks += _scan_checks(rep, f"gamma={g}", t.seconds)
    return checks


def prop82_quadratic(config: RunConfig, n_min: int = 4, n_max: int = 60) -> list:
    fld = make_field(5)
    with _Timer() as t:
        rep = scan_quadratic(fld, QuadElement(5, 3, 1, 2), n_min, n_max, config)
    return _scan_checks(rep, "Q(sqrt 5), gamma=(3+sqrt5)/2", t.seconds)


def prop61(config: RunConfig, n_max: int = 300) -> list:
    bad, arch_bad, count = [], [], 0
    with _Timer() as t:
        for g in list(RATIONAL_CORPUS) + quadratic_corpus():
            for n in range(1, n_max + 1):
                r = cyclotomic_height_residual(g, n)
                count += 1
                if not r.passed:
                    bad.append((str(g), n, r.residual, r.bound))
                if not r.arch_passed:
                    arch_bad.append((str(g), n))
    return [
        Check(f"|h(Phi_n) - phi(n) h| <= 2^omega log(pi n), {count} cases", not bad, f"{bad[:5]}", t.seconds),
        Check("archimedean lower bound for log|Phi_n(gamma)|", not arch_bad, f"{arch_bad[:5]}"),
    ]


# independent oracles for the field constants


def _brute_unit(D: int):
    """Smallest (x, y), y > 0, with x^2 - D y^2 = +-4; the unit is (x + y sqrt D)/2."""
    y = 1
    while True:
        for s in (-4, 4):
            x2 = D * y * y + s
            x = math.isqrt(x2)
            if x > 0 and x * x == x2:
                return x, y
        y += 1


def _analytic_class_number(D: int, log_eta: float = None) -> int:
    """Dirichlet's class number formula with the Kronecker character mod |D|."""
    chi = [0] + [kronecker(D, a) for a in range(1, abs(D))]
    if D < 0:
        w = {-3: 6, -4: 4}.get(D, 2)
        s = -sum(c * a for a, c in enumerate(chi))
        return round(w * s / (2 * abs(D)))
    s = -0.5 * math.fsum(c * math.log(math.sin(math.pi * a / D)) for a, c in enumerate(chi) if a)
    return round(s / log_eta)


KNOWN_FIELD_CONSTANTS = {5: (5, 1), 2: (8, 1), 10: (40, 2), -1: (-4, 1), -3: (-3, 1), -5: (-20, 2), -23: (-23, 3)}


def field_constants(config: RunConfig) -> list:
    checks = []
    for m, (D_ref, h_ref) in KNOWN_FIELD_CONSTANTS.items():
        with _Timer() as t:
            fld = make_field(m)
            ok = fld.discriminant == D_ref and fld.class_number == h_ref
            detail = f"D={fld.discriminant}, h={fld.class_number}"
            if fld.is_real:
                x, y = _brute_unit(D_ref)
                eta = QuadElement(m, x, y * fld.conductor, 2)
                h_an = _analytic_class_number(D_ref, math.log(float(eta)))
                ok = ok and fld.fundamental_unit == eta and h_an == h_ref
                detail += f", eta={fld.fundamental_unit}, brute eta={eta}, analytic h={h_an}"
            else:
                h_an = _analytic_class_number(D_ref)
                ok = ok and h_an == h_ref
                detail += f", analytic h={h_an}"
        checks.append(Check(f"Q(sqrt {m}) constants", ok, detail, t.seconds))
    return checks


def estimates(config: RunConfig, n_max: int = 10**6, split_x: int = 10**7) -> list:
    checks = []
    with _Timer() as t:
        rep = estimate_check("omega_bound", range(3, n_max + 1))
    checks.append(Check(f"omega(n) bound for 3 <= n <= {n_max}", rep.passed, f"{rep.failures} failures", t.seconds))
    with _Timer() as t:
        up = estimate_check("pi_upper", range(3, n_max + 1))
    checks.append(Check(f"pi(x) upper bound for 3 <= x <= {n_max}", up.passed, f"{up.failures} failures", t.seconds))
    with _Timer() as t:
        lo = estimate_check("pi_lower", range(17, n_max + 1))
    checks.append(Check(f"pi(x) lower bound for 17 <= x <= {n_max}", lo.passed, f"{lo.failures} failures", t.seconds))
    low = estimate_check("pi_lower", range(3, 17))
    bad = [r.argument for r in low.rows if not r.passed]
    checks.append(Check("pi(x) lower bound fails below 17 (x = 10 among the failures)", 10 in bad, f"failing x: {bad}"))
    for m in (-1, -3):
        with _Timer() as t:
            count, bound = split_count(make_field(m), split_x)
        checks.append(Check(f"split-prime count exceeds the lower bound for Q(sqrt {m}) at x = {split_x:.0e} "
                            "(below the stated x >= 1e10 range)", count >= bound,
                            f"count {count}, bound {bound:.1f}", t.seconds))
    return checks


def zsigmondy(config: RunConfig, n_max: int = 200) -> list:
    with _Timer() as t:
        rep = scan_rational(2, 1, n_max, config)
    rows = {r.n: r for r in rep.rows}
    full = [r for r in rep.rows if r.n >= 7 and r.fully_factored]
    missing = [r.n for r in full if not r.has_primitive]
    small_P = [r.n for r in full if r.P < r.n + 1]
    unfactored = [r.n for r in rep.rows if not r.fully_factored]
    return [
        Check(f"primitive prime for every 7 <= n <= {n_max} (fully factored rows)", not missing,
              f"missing: {missing}; unfactored rows: {unfactored}", t.seconds),
        Check("P(Phi_n(2)) >= n + 1 on fully factored rows", not small_P, f"{small_P}"),
        Check("n = 6 has no primitive divisor", not rows[6].has_primitive and rows[6].fully_factored,
              f"Phi_6(2) = {rows[6].cyclotomic_integer}"),
    ]


YU_REFERENCE = (
    # (k, d, heights, N, p, delta, B) evaluated by hand from the closed formula
    (1, 1, (math.log(2),), 101, 101, 1.0, 10),
    (1, 1, (math.log(2),), 7, 7, 1.0, 1),
    (2, 2, (0.4812118250596034, math.log(3)), 121, 11, 5.0, 50),
)


def yu_reference_value(k, d, heights, N, delta, B):
    """Plain product evaluation of the bound, used as the independent reference."""
    omega = max(N / delta * (k / math.log(N)) ** k, math.e**k * math.log(N))
    lstar = lambda x: max(math.log(x), 1.0)
    return (1e5 * d ** (k + 2) * lstar(d) ** 3 * 30**k * k**2.5 * lstar(k) * math.prod(heights) * omega * lstar(B))


def yu_bound(config: RunConfig) -> list:
    checks = []
    with _Timer() as t:
        for k, d, hs, N, p, delta, B in YU_REFERENCE:
            got = yu_rhs(YuBoundInput(k, d, hs, N, p, delta, B)).rhs
            ref = yu_reference_value(k, d, hs, N, delta, B)
            checks.append(Check(f"yu_rhs(k={k}, d={d}, N={N}, B={B})", abs(got - ref) <= 1e-9 * ref,
                                f"{got:.10g} vs {ref:.10g}"))
    exceed = []
    cases = [c for c in lte_cases(config.seed, 1000) if (c[2] if isinstance(c[2], int) else c[2].p) >= 5]
    with _Timer() as t2:
        for g, n, P in cases:
            v = nu_power_minus_one(g, n, P).value
            Pn = P if isinstance(P, int) else P.norm
            pp = P if isinstance(P, int) else P.p
            d = 2 if isinstance(g, QuadElement) else 1
            rhs = yu_rhs(YuBoundInput(1, d, (height(g).value,), Pn, pp, 1.0, n)).rhs
            if v > rhs:
                exceed.append((str(g), n, pp, v, rhs))
    checks.append(Check(f"bound dominates measured valuations ({len(cases)} cases with p >= 5)", not exceed,
                        f"{exceed[:5]}", t.seconds + t2.seconds))
    return checks


SUITES = {
    "cyclotomic-identity": cyclotomic_identity,
    "lte-oracle": lte_oracle,
    "theta-prop52": theta_prop52,
    "prop82-rational": prop82_rational,
    "prop82-quadratic": prop82_quadratic,
    "prop61": prop61,
    "field-constants": field_constants,
    "estimates": estimates,
    "zsigmondy": zsigmondy,
    "yu-bound": yu_bound,
}


def run_suite(name: str, config: RunConfig = DEFAULT) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}; choose from {', '.join(SUITES)}")
    t0 = time.perf_counter()
    checks = SUITES[name](config)
    return SuiteResult(name, checks, time.perf_counter() - t0)
