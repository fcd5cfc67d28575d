"""Prime ideals, integral ideals as lattices, ideal reduction and principal generators."""

import math
from dataclasses import dataclass, field

import numpy as np
from sympy.ntheory import sqrt_mod

from .arith import is_prime
from .errors import BudgetExceeded
from .quadfield import QuadElement, QuadraticField, disc_totient, kronecker
from . import sieve


@dataclass(frozen=True)
class PrimeIdeal:
    """A prime of K above p.

    ``root`` (split primes only) is the residue of sqrt(D_K) modulo the ideal, so the ideal is
    (p, sqrt(D_K) - root). For p = 2 the residue is taken modulo 4 and lies in {1, 3}, since
    modulo 2 both primes above 2 would share the root 1.
    """

    field: QuadraticField = field(compare=False, repr=False)
    p: int
    kind: str
    root: object = None
    norm: int = 0
    m: int = 0

    def conjugate(self) -> "PrimeIdeal":
        if self.kind != "split":
            return self
        mod = 4 if self.p == 2 else self.p
        return PrimeIdeal(self.field, self.p, "split", mod - self.root, self.norm, self.m)

    @property
    def ramification(self) -> int:
        return 2 if self.kind == "ramified" else 1

    def omega_residue(self) -> int:
        """Image of omega in O_K / P = F_p (split or ramified primes)."""
        p, T = self.p, self.field.omega_trace
        if self.kind == "split":
            if p == 2:
                return ((T + self.root) // 2) % 2
            return (T + self.root) * pow(2, -1, p) % p
        if self.kind == "ramified":
            if p == 2:
                return self.field.radicand % 2
            return T * pow(2, -1, p) % p
        raise ValueError("inert primes have residue field F_{p^2}")

    def lattice(self) -> "IdealRep":
        D, p = self.field.discriminant, self.p
        if self.kind == "inert":
            return IdealRep(self.field, 1, D % 2, content=p)
        if self.kind == "ramified":
            b = 2 * (self.field.radicand % 2) if p == 2 else _crt_parity(0, p, D)
        elif p == 2:
            b = (-self.root) % 4
        else:
            b = _crt_parity(-self.root, p, D)
        return IdealRep(self.field, p, b)


def _crt_parity(r, p, D):
    """b with b = r (mod p), b = D (mod 2), for odd p."""
    b = r % p
    if (b - D) % 2:
        b += p
    return b


def primes_above(field: QuadraticField, p: int):
    """Primes of K above the rational prime p; for split p the canonical (smaller root) comes first."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    D, m = field.discriminant, field.radicand
    k = kronecker(D, p)
    if k == 0:
        return [PrimeIdeal(field, p, "ramified", None, p, m)]
    if k == -1:
        return [PrimeIdeal(field, p, "inert", None, p * p, m)]
    if p == 2:
        roots = [1, 3]
    else:
        t = sqrt_mod(D % p, p)
        roots = sorted({t, p - t})
    return [PrimeIdeal(field, p, "split", t, p, m) for t in roots]


def splitting_kind(field: QuadraticField, p: int) -> str:
    return {1: "split", -1: "inert", 0: "ramified"}[kronecker(field.discriminant, p)]


def in_S(field: QuadraticField, p: int) -> bool:
    """p splits and p > |D_K|^(1/2)."""
    return is_prime(p) and kronecker(field.discriminant, p) == 1 and p * p > abs(field.discriminant)


# --- ideals as lattices -------------------------------------------------------------------


@dataclass(frozen=True)
class IdealRep:
    """content * (a Z + ((b + sqrt D)/2) Z) with b^2 = D (mod 4a); the primitive part has norm a."""

    field: QuadraticField = field(compare=False, repr=False)
    a: int = 1
    b: int = 0
    content: int = 1

    def __post_init__(self):
        D = self.field.discriminant
        if self.a <= 0 or (self.b * self.b - D) % (4 * self.a):
            raise ValueError(f"({self.a}, {self.b}) is not an ideal of discriminant {D}")
        # normalize b into (-a, a]
        a, b = self.a, self.b
        b = (b + a) % (2 * a) - a
        if b == -a:
            b = a
        object.__setattr__(self, "b", b)

    @property
    def norm(self) -> int:
        return self.content**2 * self.a

    @property
    def c(self) -> int:
        return (self.b * self.b - self.field.discriminant) // (4 * self.a)

    def basis(self):
        """Z-basis as field elements."""
        m, f = self.field.radicand, self.field.conductor
        g = self.content
        return QuadElement(m, g * self.a), QuadElement(m, g * self.b, g * f, 2)

    def omega_basis(self):
        """Z-basis as (x, y) coordinates in the basis 1, omega."""
        T, g = self.field.omega_trace, self.content
        return (g * self.a, 0), (g * (self.b - T) // 2, g)

    def contains(self, x: QuadElement) -> bool:
        if not x.is_integral():
            return False
        xx, yy, c = x.to_omega()
        (a1, _), (s, t) = self.omega_basis()
        if yy % t:
            return False
        return (xx - (yy // t) * s) % a1 == 0

    def conjugate(self) -> "IdealRep":
        return IdealRep(self.field, self.a, -self.b, self.content)

    def __mul__(self, other: "IdealRep") -> "IdealRep":
        T, N = self.field.omega_trace, self.field.omega_norm
        gens = [_omega_mul(u, v, T, N) for u in self.omega_basis() for v in other.omega_basis()]
        return _from_hnf(self.field, gens)

    def is_unit_ideal(self) -> bool:
        return self.norm == 1


def _omega_mul(u, v, T, N):
    x1, y1 = u
    x2, y2 = v
    # omega^2 = T omega - N
    return x1 * x2 - y1 * y2 * N, x1 * y2 + x2 * y1 + y1 * y2 * T


def _from_hnf(fld, gens) -> IdealRep:
    vecs = [list(g) for g in gens]
    # column-echelon on the omega coordinate, then gcd on the rational coordinate
    while sum(1 for v in vecs if v[1]) > 1:
        nz = sorted((v for v in vecs if v[1]), key=lambda v: abs(v[1]))
        piv = nz[0]
        for v in nz[1:]:
            k = v[1] // piv[1]
            v[0] -= k * piv[0]
            v[1] -= k * piv[1]
    piv = next(v for v in vecs if v[1])
    if piv[1] < 0:
        piv[0], piv[1] = -piv[0], -piv[1]
    A = 0
    for v in vecs:
        if v is not piv:
            A = math.gcd(A, v[0])
    C, B = piv[1], piv[0] % A
    if A % C or B % C:
        raise ArithmeticError("lattice is not an ideal")
    a, s = A // C, B // C
    return IdealRep(fld, a, 2 * s + fld.omega_trace, content=C)


def ideal_of_element(field: QuadraticField, x: QuadElement) -> IdealRep:
    """The principal ideal (x) for integral x."""
    xx, yy, c = x.to_omega()
    if c != 1:
        raise ValueError("element is not integral")
    T, N = field.omega_trace, field.omega_norm
    return _from_hnf(field, [_omega_mul((xx, yy), w, T, N) for w in ((1, 0), (0, 1))])


# --- reduction ----------------------------------------------------------------------------


def _is_reduced_real(a, b, D):
    s2 = D
    # 0 < b < sqrt D and sqrt D - b < 2a < sqrt D + b
    return 0 < b and b * b < s2 and (2 * a + b) ** 2 > s2 and (2 * a - b < 0 or (2 * a - b) ** 2 < s2)


def _rho_step(fld, a, b, lam):
    """[a, (b + sqrt D)/2] = lam^{-1} J  ->  next ideal [|c|, (b' + sqrt D)/2] and updated lam."""
    D, m, f = fld.discriminant, fld.radicand, fld.conductor
    c = (b * b - D) // (4 * a)
    # multiply by conj((b + sqrt D)/2) / a
    lam = lam * QuadElement(m, b, -f, 2 * a)
    na = abs(c)
    nb = -b
    if D > 0 and na * na < D:
        s = math.isqrt(D)
        nb = s - ((s - nb) % (2 * na))
    else:
        nb = (nb + na) % (2 * na) - na
        if nb == -na:
            nb = na
    return na, nb, lam


def reduce_ideal(I: IdealRep, max_steps: int = 10**6):
    """(J, lam) with J = lam * I (as fractional ideals), J primitive and reduced.

    Imaginary fields: J is the unique reduced ideal of the class. Real fields: J is the reduced
    ideal of smallest norm (then smallest b) in the rho-cycle of the class.
    """
    fld = I.field
    D = fld.discriminant
    lam = QuadElement(fld.radicand, 1, 0, I.content)
    a, b = I.a, I.b
    for _ in range(max_steps):
        c = (b * b - D) // (4 * a)
        if D < 0:
            if c > a or (c == a and b >= 0):
                break
            a, b, lam = _rho_step(fld, a, b, lam)
        else:
            if _is_reduced_real(a, b, D):
                break
            a, b, lam = _rho_step(fld, a, b, lam)
    else:
        raise BudgetExceeded("ideal reduction did not terminate")
    if D > 0:
        best = (a, b, lam)
        start = (a, b)
        for _ in range(max_steps):
            a, b, lam = _rho_step(fld, a, b, lam)
            if (a, b) == start:
                break
            if (a, b) < best[:2]:
                best = (a, b, lam)
        else:
            raise BudgetExceeded("rho cycle exceeded the step budget")
        a, b, lam = best
    return IdealRep(fld, a, b), lam


def ideal_in_inverse_class(P: PrimeIdeal) -> IdealRep:
    """Integral ideal a with N(a) < |D_K|^(1/2) and P*a principal."""
    J, _ = _inverse_class_with_multiplier(P)
    return J


def _inverse_class_with_multiplier(P: PrimeIdeal):
    if P.kind != "split":
        raise ValueError("ideal_in_inverse_class expects a split prime")
    # class of P^{-1} is the class of conj(P), since P * conj(P) = (p)
    J, lam = reduce_ideal(P.conjugate().lattice())
    D = P.field.discriminant
    if J.a * J.a >= abs(D):
        raise ArithmeticError(f"reduced ideal of norm {J.a} violates N < |D|^(1/2)")
    # J = lam * conj(P)  =>  P * J = (lam * p)
    return J, lam * P.p


# --- principal generators -----------------------------------------------------------------


@dataclass
class GeneratorSearch:
    generator: object
    searched: int
    window: int


def principal_generator(field: QuadraticField, I: IdealRep, cap: int = 10**6):
    """A generator alpha of I, or None if I is not principal.

    The search runs over alpha = x a + y (b + sqrt D)/2 with |N(alpha)| = N(I); in real fields y is
    bounded by the window in which every principal ideal has a unit-normalized generator. Raises
    BudgetExceeded when that window is wider than ``cap`` (distinct from "not principal").
    """
    res = _search_generator(field, I, cap)
    return res.generator


def _search_generator(fld, I, cap):
    D, m, f = fld.discriminant, fld.radicand, fld.conductor
    a, b, c = I.a, I.b, I.c
    g = I.content
    sols = []
    if D < 0:
        Y = math.isqrt(4 * a // -D)
        rhs = (1,)
    else:
        logY = math.log(2) + 0.5 * (math.log(a) + fld.log_eta - math.log(D))
        if logY > math.log(cap):
            raise BudgetExceeded(f"generator window 2*sqrt(N*eta/D) ~ e^{logY:.1f} exceeds cap {cap}")
        Y = int(math.exp(logY)) + 1
        rhs = (1, -1)
    for y in range(-Y, Y + 1):
        for r in rhs:
            # (2 a x + b y)^2 = D y^2 + 4 a r
            s2 = D * y * y + 4 * a * r
            if s2 < 0:
                continue
            s = math.isqrt(s2)
            if s * s != s2:
                continue
            for sg in {s, -s}:
                num = sg - b * y
                if num % (2 * a) == 0:
                    x = num // (2 * a)
                    sols.append(QuadElement(m, g * (2 * a * x + b * y), g * f * y, 2))
        if sols and D > 0:
            break
    if not sols:
        return GeneratorSearch(None, 2 * Y + 1, Y)
    if D < 0:
        gen = max(sols, key=lambda z: (z.a / z.q, z.b / z.q))
    else:
        gen = normalize_generator(fld, sols[0])[0]
    return GeneratorSearch(gen, 2 * Y + 1, Y)


def normalize_generator(fld: QuadraticField, alpha: QuadElement):
    """(alpha * eta^e, e) with e minimizing |log|alpha eta^e| - log N(alpha)/2|; ties to the smaller e.

    Imaginary fields are returned unchanged (e = 0). The sign is fixed so the first embedding is positive.
    """
    if not fld.is_real:
        return alpha, 0
    eta, le = fld.fundamental_unit, fld.log_eta
    la = alpha.log_abs_embeddings()[0]
    half = 0.5 * math.log(abs(alpha.norm()))
    e0 = round((half - la) / le)
    best = min(range(e0 - 1, e0 + 2), key=lambda e: (round(abs(la + e * le - half), 12), e))
    out = alpha * eta**best
    if out.embeddings()[0] < 0:
        out = -out
    return out, best


# --- splitting statistics and class-number bounds ----------------------------------------


def split_count(field: QuadraticField, x: int, limit: int = sieve.SIEVE_LIMIT):
    """(pi_s(x, K), 0.5 x/log x - phi(|D|)/320 * x/(log x)^2)."""
    if x < 2:
        raise ValueError("x must be >= 2")
    D = field.discriminant
    mod = abs(D)
    chi = np.array([kronecker(D, r) if math.gcd(r, mod) == 1 else 0 for r in range(mod)], dtype=np.int8)
    count = 0
    for seg in sieve.segments(x, limit):
        odd = seg[seg > 2]
        count += int(np.count_nonzero(chi[odd % mod] == 1))
    if x >= 2 and kronecker(D, 2) == 1:
        count += 1
    lx = math.log(x)
    bound = 0.5 * x / lx - disc_totient(field) / 320 * x / lx**2
    return count, bound


def field_bounds_check(field: QuadraticField, tol: float = 1e-9) -> dict:
    """Class-number and regulator inequalities for one field.

    Keys: ``h_imag`` (h <= mu/pi |D|^(1/2) (2 + log|D|)), ``h_real`` (h log eta <= pi^-1 D^(1/2) (2 + log D)),
    ``h_uniform`` (h <= 3|D|^(1/2) log|D|), ``eta_uniform`` (log eta <= |D|^(1/2) log|D|).
    Each maps to (lhs, rhs, passed); the signature-inappropriate one of the first two is absent.
    """
    D, h = abs(field.discriminant), field.class_number
    sq, lD = math.sqrt(D), math.log(D)
    out = {}
    if field.is_real:
        lhs, rhs = h * field.log_eta, sq * (2 + lD) / math.pi
        out["h_real"] = (lhs, rhs, lhs <= rhs + tol)
    else:
        rhs = field.mu * sq * (2 + lD) / math.pi
        out["h_imag"] = (h, rhs, h <= rhs + tol)
    rhs = 3 * sq * lD
    out["h_uniform"] = (h, rhs, h <= rhs + tol)
    rhs = sq * lD
    out["eta_uniform"] = (field.log_eta, rhs, field.log_eta <= rhs + tol)
    return out
