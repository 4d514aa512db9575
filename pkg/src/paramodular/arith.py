"""Exact integer and polynomial arithmetic plus classical number theory.

Everything here is integer or rational; there is no floating point.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt

from . import finite_field as ff
from .errors import LeadingCoefficientVanishes, NotFundamental, NotSquarefree


class IntPoly:
    """Immutable polynomial with arbitrary-precision integer coefficients.

    Coefficients are stored in ascending degree without trailing zeros, so
    the zero polynomial has ``coeffs == ()``.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, name, value):
        raise AttributeError("IntPoly is immutable")

    @classmethod
    def x(cls):
        return cls((0, 1))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    @property
    def lc(self) -> int:
        return self.coeffs[-1] if self.coeffs else 0

    def __getitem__(self, i):
        return self.coeffs[i] if 0 <= i < len(self.coeffs) else 0

    def __len__(self):
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, IntPoly):
            return self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self):
        return f"IntPoly({list(self.coeffs)})"

    def __add__(self, other):
        other = _as_poly(other)
        n = max(len(self), len(other))
        return IntPoly(self[i] + other[i] for i in range(n))

    __radd__ = __add__

    def __neg__(self):
        return IntPoly(-c for c in self.coeffs)

    def __sub__(self, other):
        return self + (-_as_poly(other))

    def __rsub__(self, other):
        return _as_poly(other) - self

    def __mul__(self, other):
        other = _as_poly(other)
        if not self.coeffs or not other.coeffs:
            return IntPoly()
        out = [0] * (len(self) + len(other) - 1)
        for i, a in enumerate(self.coeffs):
            if a:
                for j, b in enumerate(other.coeffs):
                    out[i + j] += a * b
        return IntPoly(out)

    __rmul__ = __mul__

    def __pow__(self, e: int):
        result = IntPoly((1,))
        base = self
        while e:
            if e & 1:
                result = result * base
            base = base * base
            e >>= 1
        return result

    def __call__(self, x):
        acc = 0
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def derivative(self):
        return IntPoly(i * c for i, c in enumerate(self.coeffs) if i)

    def reversed(self, n: int | None = None):
        """x^n * self(1/x); n defaults to the degree."""
        n = self.degree if n is None else n
        padded = list(self.coeffs) + [0] * (n + 1 - len(self.coeffs))
        return IntPoly(reversed(padded[: n + 1]))

    def mod(self, p: int) -> list:
        """Coefficient list reduced into range(p), trailing zeros removed."""
        return ff.ptrim([c % p for c in self.coeffs])

    def __str__(self):
        return format_poly(self.coeffs)


def _as_poly(x):
    if isinstance(x, IntPoly):
        return x
    return IntPoly((x,))


def format_poly(coeffs, var: str = "x") -> str:
    """Render ascending coefficients as e.g. ``x^4 - 4x^3 + 16x^2 - 28x + 49``."""
    terms = []
    for i in range(len(coeffs) - 1, -1, -1):
        c = coeffs[i]
        if c == 0:
            continue
        sign = "-" if c < 0 else "+"
        a = abs(c)
        if i == 0:
            body = str(a)
        else:
            mono = var if i == 1 else f"{var}^{i}"
            body = mono if a == 1 else f"{a}{mono}"
        terms.append((sign, body))
    if not terms:
        return "0"
    first_sign, first = terms[0]
    out = ("-" if first_sign == "-" else "") + first
    for sign, body in terms[1:]:
        out += f" {sign} {body}"
    return out


# ---------------------------------------------------------------------------
# integers


def is_prime(n: int) -> bool:
    """Trial division primality test (desk-scale inputs only)."""
    return ff._is_prime(n)


def primes_below(n: int) -> list[int]:
    sieve = bytearray([1]) * max(n, 2)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, isqrt(n - 1) + 1 if n > 1 else 0):
        if sieve[i]:
            sieve[i * i :: i] = bytearray(len(sieve[i * i :: i]))
    return [i for i in range(n) if sieve[i]]


def factorize(n: int) -> dict[int, int]:
    """Prime factorization of |n| by trial division."""
    n = abs(n)
    out: dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            out[d] = out.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        out[n] = out.get(n, 0) + 1
    return out


def is_squarefree(n: int) -> bool:
    return n != 0 and all(e == 1 for e in factorize(n).values())


def is_fundamental(D: int) -> bool:
    if D in (0, 1):
        return False
    if D % 4 == 1:
        return is_squarefree(D)
    if D % 4 == 0:
        m = D // 4
        return m % 4 in (2, 3) and is_squarefree(m)
    return False


def fundamental_discriminant(d: int) -> int:
    """Discriminant of Q(sqrt(d)) for squarefree d != 0, 1."""
    if d in (0, 1) or not is_squarefree(d):
        raise NotFundamental(f"{d} is not a squarefree integer != 0, 1")
    return d if d % 4 == 1 else 4 * d


def kronecker(d: int, n: int) -> int:
    """Kronecker symbol (d | n) for n >= 1."""
    if n < 1:
        raise ValueError("kronecker symbol needs n >= 1")
    result = 1
    # factors of 2 in n
    while n % 2 == 0:
        n //= 2
        if d % 2 == 0:
            return 0
        if d % 8 in (3, 5):
            result = -result
    # Jacobi symbol (d | n) for odd n
    a = d % n
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


# ---------------------------------------------------------------------------
# polynomials over Z


def resultant(f: IntPoly, g: IntPoly):
    """Resultant of two integer polynomials via the Euclidean algorithm over Q."""
    a = [Fraction(c) for c in f.coeffs]
    b = [Fraction(c) for c in g.coeffs]
    if not a or not b:
        return 0
    res = Fraction(1)
    while True:
        da, db = len(a) - 1, len(b) - 1
        if db == 0:
            return _as_int(res * b[0] ** da)
        # a mod b
        r = list(a)
        for d in range(da, db - 1, -1):
            c = r[d] / b[-1]
            if c:
                for j in range(db + 1):
                    r[d - db + j] -= c * b[j]
        r = r[:db]
        while r and r[-1] == 0:
            r.pop()
        if not r:
            return 0
        dr = len(r) - 1
        if (da * db) % 2:
            res = -res
        res *= b[-1] ** (da - dr)
        a, b = b, r


def _as_int(x: Fraction):
    return int(x) if x.denominator == 1 else x


def poly_disc(f: IntPoly) -> int:
    """Discriminant (-1)^(n(n-1)/2) Res(f, f') / lc(f)."""
    n = f.degree
    if n < 1:
        raise ValueError("discriminant needs degree >= 1")
    if n == 1:
        return 1
    r = resultant(f, f.derivative())
    sign = -1 if (n * (n - 1) // 2) % 2 else 1
    return _as_int(Fraction(sign * r) / f.lc)


# ---------------------------------------------------------------------------
# factorization patterns mod p


@dataclass(frozen=True)
class FactorizationType:
    """Multiset of irreducible-factor degrees as sorted (degree, count) pairs."""

    parts: tuple

    @classmethod
    def of(cls, degrees):
        """Build from an iterable of factor degrees (with repetition)."""
        c = Counter(degrees)
        return cls(tuple(sorted(c.items())))

    @property
    def total_degree(self) -> int:
        return sum(d * n for d, n in self.parts)

    @property
    def degrees(self) -> list[int]:
        return [d for d, n in self.parts for _ in range(n)]

    def __str__(self):
        return "{" + ", ".join(f"{d}x{n}" for d, n in self.parts) + "}"


def ddf_type(f: IntPoly, p: int) -> FactorizationType:
    """Factor-degree pattern of a squarefree ``f`` mod p, by distinct-degree factorization."""
    if f.lc % p == 0:
        raise LeadingCoefficientVanishes(f"p = {p} divides the leading coefficient of {f}")
    F = ff.field(p, 1)
    fp = ff.pmonic(F, f.mod(p))
    if ff.pdeg(ff.pgcd(F, fp, ff.pderiv(F, fp))) > 0:
        raise NotSquarefree(f"{f} is not squarefree mod {p}")
    degrees = []
    for d, g in ff.distinct_degree(F, fp):
        degrees += [d] * (ff.pdeg(g) // d)
    return FactorizationType.of(degrees)


# ---------------------------------------------------------------------------
# binary quadratic forms


def reduced_forms(D: int) -> list[tuple[int, int, int]]:
    """Reduced primitive forms (a, b, c) of discriminant D < 0."""
    if D >= 0 or D % 4 not in (0, 1):
        raise NotFundamental(f"{D} is not a negative discriminant")
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
            if c < a or (a == c and b < 0):
                continue
            if _gcd3(a, b, c) == 1:
                out.append((a, b, c))
        a += 1
    return out


def _gcd3(a, b, c):
    from math import gcd

    return gcd(gcd(a, b), c)


def class_number_imag_quad(D: int) -> int:
    """Class number of the imaginary quadratic order of fundamental discriminant D."""
    if D >= 0 or not is_fundamental(D):
        raise NotFundamental(f"{D} is not a negative fundamental discriminant")
    return len(reduced_forms(D))
