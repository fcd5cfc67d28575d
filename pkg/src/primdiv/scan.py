"""Scans of cyclotomic values Phi_n(gamma): factor, classify primitive divisors, check the congruences."""

import csv
import io
import json
import math
from dataclasses import asdict, dataclass, field
from fractions import Fraction

from .arith import Factorization, arith_profile, cyclotomic_value, factor, nu_p
from .bounds import stewart_threshold
from .config import DEFAULT, RunConfig
from .errors import BudgetExceeded, RootOfUnity
from .height import cyclotomic_value_any, height
from .ideals import primes_above
from .quadfield import QuadElement, QuadraticField
from .valuation import mult_order, nu_ideal

DIRECT_PRIMITIVITY_LIMIT = 30
DECOMPOSITION_TOL = 1e-9


@dataclass
class PrimeRecord:
    p: int
    kind: str
    root: object
    nu: int
    primitive: bool
    norm_mod_n: int
    p_mod_n: int
    norm: int


@dataclass
class ScanRow:
    n: int
    cyclotomic_integer: int
    factorization: list
    cofactor: int
    primes: list
    P: int
    P_is_lower_bound: bool
    sigma_p: float
    sigma_np: float
    threshold: float
    fully_factored: bool
    has_primitive: bool
    item1_violations: list = field(default_factory=list)
    item2_violations: list = field(default_factory=list)
    item3_violations: list = field(default_factory=list)
    item3_checked: bool = False
    decomposition_ok: object = None  # None when the row is not fully factored
    direct_check_ok: object = None  # None when n exceeds the direct-definition limit

    @property
    def violations(self) -> int:
        bad = len(self.item1_violations) + len(self.item2_violations) + len(self.item3_violations)
        return bad + (self.decomposition_ok is False) + (self.direct_check_ok is False)


@dataclass
class ScanReport:
    header: dict
    rows: list
    suites: list = field(default_factory=list)

    @property
    def violations(self) -> int:
        return sum(r.violations for r in self.rows if r.fully_factored)

    def to_dict(self) -> dict:
        rows = []
        for r in self.rows:
            d = asdict(r)
            d["violations"] = r.violations
            rows.append(d)
        return {"header": self.header, "rows": rows, "suites": self.suites}

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True, default=str)

    def to_csv(self) -> str:
        buf = io.StringIO()
        cols = ["n", "p", "kind", "root", "nu", "primitive", "norm_mod_n", "p_mod_n", "P", "sigma_p", "sigma_np",
                "fully_factored", "violations"]
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(cols)
        for r in self.rows:
            recs = r.primes or [None]
            for rec in recs:
                pr = [rec.p, rec.kind, rec.root, rec.nu, rec.primitive, rec.norm_mod_n, rec.p_mod_n] if rec else [""] * 7
                w.writerow([r.n, *pr, r.P, f"{r.sigma_p:.12g}", f"{r.sigma_np:.12g}", r.fully_factored, r.violations])
        return buf.getvalue()


def _header(gamma, fld, n_min, n_max, config: RunConfig) -> dict:
    return {
        "gamma": str(gamma),
        "field": None if fld is None else fld.radicand,
        "n_min": n_min,
        "n_max": n_max,
        "config_digest": config.digest(),
        "seed": config.seed,
    }


def _threshold(n: int, variant: str) -> float:
    return stewart_threshold(n, variant).threshold if n >= 3 else float("nan")


def _finish_row(row: ScanRow, gamma, val, d: int, n: int):
    """Largest prime, sums and the decomposition identity (fully factored rows only)."""
    pos = [r for r in row.primes if r.nu > 0]
    row.P = max((r.p for r in pos), default=1)
    row.sigma_p = math.fsum(r.nu * math.log(r.norm) for r in pos if r.primitive)
    row.sigma_np = math.fsum(r.nu * math.log(r.norm) for r in pos if not r.primitive)
    row.has_primitive = any(r.primitive for r in pos)
    if row.fully_factored:
        # d h(x) = -sum log^-|x^sigma| + sum max(0, nu_P(x)) log N(P)
        if isinstance(val, QuadElement) and not val.is_rational():
            logs = val.log_abs_embeddings()
        else:
            v = val.as_fraction() if isinstance(val, QuadElement) else Fraction(val)
            la = math.log(abs(v.numerator)) - math.log(v.denominator)
            logs = (la,) * d
        finite = d * height(val).value + math.fsum(min(0.0, x) for x in logs)
        total = row.sigma_p + row.sigma_np
        row.decomposition_ok = abs(total - finite) <= DECOMPOSITION_TOL * max(1.0, finite)


def _direct_primitive(gamma, n: int, P) -> bool:
    """The literal definition: P divides gamma^n - 1 but no gamma^k - 1 with k < n."""
    cur = gamma
    for k in range(1, n + 1):
        u = cur - 1
        v = nu_ideal(u, P).value
        if k < n and v != 0:
            return False
        if k == n:
            return v >= 1
        cur = cur * gamma
    return False


def scan_rational(gamma, n_min: int, n_max: int, config: RunConfig = DEFAULT) -> ScanReport:
    gamma = Fraction(gamma)
    if gamma in (0, 1, -1):
        raise RootOfUnity(f"gamma = {gamma} is zero or a root of unity")
    rows = []
    for n in range(max(1, n_min), n_max + 1):
        val, H = cyclotomic_value(n, gamma)
        fac = factor(abs(H), config.effort, config.seed) if abs(H) > 1 else Factorization(abs(H), ())
        row = ScanRow(n, H, list(fac.entries), fac.cofactor, [], 1, not fac.complete, 0.0, 0.0,
                      _threshold(n, "thm12"), fac.complete, False)
        item3 = n >= 4
        row.item3_checked = item3
        direct = n <= DIRECT_PRIMITIVITY_LIMIT
        direct_ok = True
        for p, e in fac.entries:
            t = mult_order(gamma, p)
            prim = t == n
            if direct and _direct_primitive(gamma, n, p) != prim:
                direct_ok = False
            rec = PrimeRecord(p, "rational", None, e, prim, p % n, p % n, p)
            row.primes.append(rec)
            if prim and p % n != 1 % n:
                row.item1_violations.append(p)
            if item3 and not prim and e > nu_p(n, p):
                row.item3_violations.append(p)
        row.direct_check_ok = direct_ok if direct else None
        _finish_row(row, gamma, val, 1, n)
        rows.append(row)
    return ScanReport(_header(gamma, None, n_min, n_max, config), rows)


def _candidate_integer(val: QuadElement) -> int:
    """An integer divisible by every rational prime below a prime where val has nonzero valuation."""
    if not val:
        raise ValueError("Phi_n(gamma) vanished")
    n = abs(val.norm())
    if val.is_rational():
        A = val.as_fraction().denominator
    else:
        A = val.minimal_polynomial()[0]
    return n.numerator * A


def scan_quadratic(fld: QuadraticField, gamma: QuadElement, n_min: int, n_max: int,
                   config: RunConfig = DEFAULT) -> ScanReport:
    if gamma.m != fld.radicand:
        raise ValueError("gamma is not in this field")
    if gamma.is_root_of_unity() or not gamma:
        raise RootOfUnity(f"{gamma} is zero or a root of unity")
    gnorm = gamma.norm()
    norm_one = gnorm == 1
    rows = []
    for n in range(max(1, n_min), n_max + 1):
        val = cyclotomic_value_any(n, gamma)
        M = _candidate_integer(val)
        fac = factor(M, config.effort, config.seed) if M > 1 else Factorization(M, ())
        row = ScanRow(n, abs(val.norm()).numerator if val.norm().denominator == 1 else M, [], fac.cofactor, [], 1,
                      not fac.complete, 0.0, 0.0, _threshold(n, "thm13"), fac.complete, False)
        item3 = n >= 8
        row.item3_checked = item3
        direct = n <= DIRECT_PRIMITIVITY_LIMIT
        direct_ok = True
        for p, _ in fac.entries:
            for P in primes_above(fld, p):
                nu = nu_ideal(val, P).value
                if nu <= 0:
                    continue
                unit = nu_ideal(gamma, P).value == 0
                prim = unit and mult_order(gamma, P) == n
                if direct and _direct_primitive(gamma, n, P) != prim:
                    direct_ok = False
                rec = PrimeRecord(p, P.kind, P.root, nu, prim, P.norm % n, p % n, P.norm)
                row.primes.append(rec)
                row.factorization.append((p, P.kind, P.root, nu))
                if prim and P.norm % n != 1 % n:
                    row.item1_violations.append(p)
                if prim and norm_one and (p - 1) % n and (p + 1) % n:
                    row.item2_violations.append(p)
                if item3 and not prim and nu > P.ramification * nu_p(n, p):
                    row.item3_violations.append(p)
        row.direct_check_ok = direct_ok if direct else None
        _finish_row(row, gamma, val, 2, n)
        rows.append(row)
    return ScanReport(_header(gamma, fld, n_min, n_max, config), rows)
