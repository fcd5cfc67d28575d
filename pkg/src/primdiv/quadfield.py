"""Quadratic fields Q(sqrt m): exact elements, discriminant, fundamental unit, class number."""

import math
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache

from .arith import square_factor, totient
from .errors import BudgetExceeded


def kronecker(a: int, n: int) -> int:
    """Kronecker symbol (a/n) for n >= 1."""
    if n < 1:
        raise ValueError("kronecker needs n >= 1")
    result = 1
    while n % 2 == 0:
        n //= 2
        if a % 2 == 0:
            return 0
        if a % 8 in (3, 5):
            result = -result
    # Jacobi symbol for odd n
    a %= n
    while a:
        while a % 2 == 0:
            a //= 2
            if n % 8 in (3, 5):
                result = -result
        a, n = n, a
        if a % 4 == 3 and n % 4 == 3:
            result = -result
        a %= n
    return result if n == 1 else 0


def _log_sum(la: float, lb: float) -> float:
    hi, lo = max(la, lb), min(la, lb)
    return hi + math.log1p(math.exp(lo - hi))


def _log_abs(x) -> float:
    return math.log(abs(x.numerator)) - math.log(x.denominator) if isinstance(x, Fraction) else math.log(abs(x))


class QuadElement:
    """(a + b*sqrt(m)) / q with gcd(a, b, q) = 1 and q > 0. Immutable."""

    __slots__ = ("m", "a", "b", "q")

    def __init__(self, m: int, a: int, b: int = 0, q: int = 1):
        if q == 0:
            raise ZeroDivisionError("zero denominator")
        if q < 0:
            a, b, q = -a, -b, -q
        g = math.gcd(math.gcd(a, b), q)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "a", a // g)
        object.__setattr__(self, "b", b // g)
        object.__setattr__(self, "q", q // g)

    def __setattr__(self, name, value):
        raise AttributeError("QuadElement is immutable")

    @classmethod
    def rational(cls, m: int, x) -> "QuadElement":
        x = Fraction(x)
        return cls(m, x.numerator, 0, x.denominator)

    @classmethod
    def from_omega(cls, m: int, x: int, y: int, c: int = 1) -> "QuadElement":
        """(x + y*omega)/c with omega = (1 + sqrt m)/2 or sqrt m."""
        if m % 4 == 1:
            return cls(m, 2 * x + y, y, 2 * c)
        return cls(m, x, y, c)

    def to_omega(self):
        """(x, y, c) with self = (x + y*omega)/c, gcd(x, y, c) = 1, c > 0."""
        if self.m % 4 == 1:
            x, y, c = self.a - self.b, 2 * self.b, self.q
        else:
            x, y, c = self.a, self.b, self.q
        g = math.gcd(math.gcd(x, y), c)
        return x // g, y // g, c // g

    # --- arithmetic ---------------------------------------------------------------------

    def _coerce(self, other):
        if isinstance(other, QuadElement):
            if other.m != self.m:
                raise ValueError(f"mixing Q(sqrt {self.m}) and Q(sqrt {other.m})")
            return other
        if isinstance(other, (int, Fraction)):
            return QuadElement.rational(self.m, other)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElement(self.m, self.a * o.q + o.a * self.q, self.b * o.q + o.b * self.q, self.q * o.q)

    __radd__ = __add__

    def __neg__(self):
        return QuadElement(self.m, -self.a, -self.b, self.q)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self + (-o)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return QuadElement(
            self.m,
            self.a * o.a + self.b * o.b * self.m,
            self.a * o.b + self.b * o.a,
            self.q * o.q,
        )

    __rmul__ = __mul__

    def inverse(self):
        n = self.a * self.a - self.b * self.b * self.m
        if n == 0:
            raise ZeroDivisionError("inverse of zero")
        return QuadElement(self.m, self.q * self.a, -self.q * self.b, n)

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return self * o.inverse()

    def __rtruediv__(self, other):
        return self.inverse() * other

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        result, base = QuadElement(self.m, 1), self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and Fraction(self.a, self.q) == other
        if not isinstance(other, QuadElement):
            return NotImplemented
        return (self.m, self.a, self.b, self.q) == (other.m, other.a, other.b, other.q)

    def __hash__(self):
        if self.b == 0:
            return hash(Fraction(self.a, self.q))
        return hash((self.m, self.a, self.b, self.q))

    def __bool__(self):
        return self.a != 0 or self.b != 0

    def __repr__(self):
        return f"QuadElement(m={self.m}, a={self.a}, b={self.b}, q={self.q})"

    def __str__(self):
        num = f"{self.a}" if self.b == 0 else f"{self.a}{'+' if self.b >= 0 else '-'}{abs(self.b)}*sqrt({self.m})"
        return num if self.q == 1 else f"({num})/{self.q}"

    # --- invariants -------------------------------------------------------------------

    def conjugate(self):
        return QuadElement(self.m, self.a, -self.b, self.q)

    def norm(self) -> Fraction:
        return Fraction(self.a * self.a - self.b * self.b * self.m, self.q * self.q)

    def trace(self) -> Fraction:
        return Fraction(2 * self.a, self.q)

    def is_rational(self) -> bool:
        return self.b == 0

    def as_fraction(self) -> Fraction:
        if self.b:
            raise ValueError(f"{self} is irrational")
        return Fraction(self.a, self.q)

    def is_integral(self) -> bool:
        return self.trace().denominator == 1 and self.norm().denominator == 1

    def minimal_polynomial(self):
        """Primitive integer (A, B, C), A > 0, with A t^2 + B t + C vanishing at self (degree 2 only)."""
        if self.b == 0:
            raise ValueError("rational element has degree 1")
        t, n = self.trace(), self.norm()
        den = t.denominator * n.denominator // math.gcd(t.denominator, n.denominator)
        A, B, C = den, -(t * den).numerator, (n * den).numerator
        g = math.gcd(math.gcd(A, B), C)
        return A // g, B // g, C // g

    def is_root_of_unity(self) -> bool:
        if self.norm() not in (1, -1) or not self.is_integral():
            return False
        return any(self**k == 1 for k in (1, 2, 3, 4, 6))

    # --- archimedean data ------------------------------------------------------------

    def log_abs_embeddings(self):
        """(log|x|, log|x^sigma|) computed without cancellation; -inf for a zero embedding."""
        a, b, m, q = self.a, self.b, self.m, self.q
        lq = math.log(q)
        if m < 0:
            la = 0.5 * _log_abs(self.norm())
            return la, la
        if b == 0:
            la = math.log(abs(a)) - lq if a else -math.inf
            return la, la
        lb = math.log(abs(b)) + 0.5 * math.log(m)
        big = (lb if a == 0 else _log_sum(math.log(abs(a)), lb)) - lq
        small = _log_abs(self.norm()) - big
        # the embedding where a and b*sqrt(m) share a sign is the big one
        if a == 0 or (a > 0) == (b > 0):
            return big, small
        return small, big

    def embeddings(self):
        """Both complex embeddings as Python numbers (float for real fields)."""
        if self.m > 0:
            l1, l2 = self.log_abs_embeddings()
            s = math.sqrt(self.m)
            sign1 = 1.0 if self.a + self.b * s >= 0 else -1.0
            sign2 = 1.0 if self.a - self.b * s >= 0 else -1.0
            if self.a == 0 and self.b == 0:
                return 0.0, 0.0
            return sign1 * math.exp(l1), sign2 * math.exp(l2)
        z = complex(self.a / self.q, self.b * math.sqrt(-self.m) / self.q)
        return z, z.conjugate()

    def __float__(self):
        if self.m < 0 and self.b:
            raise TypeError("complex element")
        return float(self.embeddings()[0])


def discriminant_of(m: int) -> int:
    return m if m % 4 == 1 else 4 * m


@dataclass(frozen=True)
class QuadraticField:
    radicand: int
    discriminant: int
    class_number: int
    fundamental_unit: object  # QuadElement or None (imaginary)
    torsion_order: int
    mu: int = field(init=False)

    def __post_init__(self):
        object.__setattr__(self, "mu", self.torsion_order // 2)

    @property
    def m(self) -> int:
        return self.radicand

    @property
    def is_real(self) -> bool:
        return self.radicand > 0

    @property
    def conductor(self) -> int:
        """f with D = f^2 m."""
        return 1 if self.radicand % 4 == 1 else 2

    @property
    def omega_trace(self) -> int:
        return 1 if self.radicand % 4 == 1 else 0

    @property
    def omega_norm(self) -> int:
        m = self.radicand
        return (1 - m) // 4 if m % 4 == 1 else -m

    @property
    def log_eta(self) -> float:
        """log of the fundamental unit (0 for imaginary fields, matching eta_K = 1)."""
        if self.fundamental_unit is None:
            return 0.0
        return self.fundamental_unit.log_abs_embeddings()[0]

    def element(self, a: int, b: int = 0, q: int = 1) -> QuadElement:
        return QuadElement(self.radicand, a, b, q)

    def omega(self) -> QuadElement:
        return QuadElement.from_omega(self.radicand, 0, 1)

    def sqrt_disc(self) -> QuadElement:
        return QuadElement(self.radicand, 0, self.conductor)

    def units_torsion(self):
        """All roots of unity of the field."""
        m = self.radicand
        one = self.element(1)
        if m == -1:
            i = self.element(0, 1)
            return [one, i, -one, -i]
        if m == -3:
            z = self.element(1, 1, 2)
            return [z**k for k in range(6)]
        return [one, -one]

    def __repr__(self):
        return f"QuadraticField(m={self.radicand}, D={self.discriminant}, h={self.class_number})"


# --- fundamental unit ----------------------------------------------------------------------


def fundamental_unit(m: int, max_steps: int = 10**6) -> QuadElement:
    """Fundamental unit > 1 of Q(sqrt m), m > 1 squarefree, from the continued fraction of omega.

    The expansion of omega = (P + sqrt m)/Q is run with integer (P, Q) recurrences; each
    convergent p/q gives the candidate p - q*omega^sigma, and the first one of norm +-1 is the unit.
    """
    if m <= 1:
        raise ValueError("real quadratic fields only")
    T, N = (1, (1 - m) // 4) if m % 4 == 1 else (0, -m)
    P, Q = (1, 2) if m % 4 == 1 else (0, 1)
    s = math.isqrt(m)
    p1, p2, q1, q2 = 1, 0, 0, 1
    for _ in range(max_steps):
        a = (P + s) // Q
        p1, p2 = a * p1 + p2, p1
        q1, q2 = a * q1 + q2, q1
        if p1 * p1 - p1 * q1 * T + q1 * q1 * N in (1, -1):
            # p - q*conj(omega) = p - q*T + q*omega
            return QuadElement.from_omega(m, p1 - q1 * T, q1)
        P = a * Q - P
        Q = (m - P * P) // Q
    raise BudgetExceeded(f"continued fraction of Q(sqrt {m}) exceeded {max_steps} steps")


# --- class numbers -------------------------------------------------------------------------


def reduced_forms_imaginary(D: int):
    """Reduced primitive positive definite forms (a, b, c) of discriminant D < 0."""
    out = []
    a = 1
    while 3 * a * a <= -D:
        for b in range(-a + 1, a + 1):
            if (b - D) % 2:
                continue
            num = b * b - D
            if num % (4 * a):
                continue
            c = num // (4 * a)
            if c < a or (c == a and b < 0):
                continue
            if math.gcd(math.gcd(a, b), c) == 1:
                out.append((a, b, c))
        a += 1
    return out


def _rho_indefinite(form, D, s):
    a, b, c = form
    ac = abs(c)
    # b' = -b mod 2|c|, the largest such value below sqrt(D)
    b2 = s - ((s + b) % (2 * ac))
    return c, b2, (b2 * b2 - D) // (4 * c)


def reduced_forms_real(D: int):
    """Reduced primitive indefinite forms (a, b, c) of nonsquare discriminant D > 0."""
    s = math.isqrt(D)
    out = []
    for b in range(1, s + 1):
        if (b - D) % 2:
            continue
        N = (D - b * b) // 4
        d = 1
        while d <= min(N, (s + b) // 2 + 1):
            if N % d == 0:
                # sqrt(D) - b < 2d < sqrt(D) + b
                if (2 * d + b) ** 2 > D and (2 * d - b < 0 or (2 * d - b) ** 2 < D):
                    for a in (d, -d):
                        c = -N // a
                        if math.gcd(math.gcd(a, b), c) == 1:
                            out.append((a, b, c))
            d += 1
    return out


def form_cycles_real(D: int):
    """Partition the reduced indefinite forms of discriminant D into rho-cycles."""
    s = math.isqrt(D)
    forms = reduced_forms_real(D)
    seen, cycles = set(), []
    for f in forms:
        if f in seen:
            continue
        cyc, g = [], f
        while g not in seen:
            seen.add(g)
            cyc.append(g)
            g = _rho_indefinite(g, D, s)
        cycles.append(cyc)
    return cycles


def class_number(m: int, unit=None) -> int:
    D = discriminant_of(m)
    if D < 0:
        return len(reduced_forms_imaginary(D))
    narrow = len(form_cycles_real(D))
    unit = unit or fundamental_unit(m)
    return narrow if unit.norm() == -1 else narrow // 2


MAX_ABS_DISCRIMINANT = 10**6


@lru_cache(maxsize=256)
def make_field(m: int) -> QuadraticField:
    """Build Q(sqrt m) with discriminant, torsion, fundamental unit and class number populated."""
    if m in (0, 1):
        raise ValueError(f"m = {m} does not define a quadratic field")
    k = square_factor(m)
    if k is not None:
        raise ValueError(f"m = {m} is not squarefree: divisible by {k}^2")
    D = discriminant_of(m)
    if abs(D) > MAX_ABS_DISCRIMINANT:
        raise BudgetExceeded(f"|D| = {abs(D)} exceeds the supported range {MAX_ABS_DISCRIMINANT}")
    torsion = {-1: 4, -3: 6}.get(m, 2)
    unit = fundamental_unit(m) if m > 0 else None
    return QuadraticField(m, D, class_number(m, unit), unit, torsion)


def disc_totient(field: QuadraticField) -> int:
    return totient(abs(field.discriminant))
