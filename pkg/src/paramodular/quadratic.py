"""Imaginary quadratic fields K = Q(sqrt(D)) and the coefficient ring Z[sqrt(2)].

Elements of O_K are written u + v*w where w is the standard generator:
w = (1 + sqrt(D))/2 when D = 1 mod 4 and w = sqrt(D/4) otherwise.

Prime ideals are displayed with the tags used in eigenvalue tables:
``[p]`` for inert primes, ``[2, w+a]`` above 2 and ``[p, 2w+a]`` otherwise.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from . import finite_field as ff
from .arith import IntPoly, is_fundamental, is_prime, kronecker
from .errors import InputError, MalformedTag, NotAPrimeIdeal, NotFundamental, NotSplit

SPLIT, INERT, RAMIFIED = "split", "inert", "ramified"


@dataclass(frozen=True)
class ImagQuadField:
    D: int

    def __post_init__(self):
        if self.D >= 0 or not is_fundamental(self.D):
            raise NotFundamental(f"{self.D} is not a negative fundamental discriminant")

    @property
    def w_minpoly(self) -> IntPoly:
        D = self.D
        if D % 4 == 1:
            return IntPoly(((1 - D) // 4, -1, 1))
        return IntPoly((-(D // 4), 0, 1))

    @property
    def w_trace(self) -> int:
        return 1 if self.D % 4 == 1 else 0

    @property
    def w_norm(self) -> int:
        return self.w_minpoly[0]

    def element(self, u, v=0) -> "KElement":
        return KElement(self, Fraction(u), Fraction(v))

    @property
    def w(self) -> "KElement":
        return self.element(0, 1)

    def __str__(self):
        return f"Q(sqrt({self.D}))"


class KElement:
    """Exact element u + v*w of K with rational u, v."""

    __slots__ = ("K", "u", "v")

    def __init__(self, K: ImagQuadField, u, v):
        self.K = K
        self.u = Fraction(u)
        self.v = Fraction(v)

    def _coerce(self, other):
        if isinstance(other, KElement):
            if other.K != self.K:
                raise InputError("elements of different fields")
            return other
        if isinstance(other, (int, Fraction)):
            return KElement(self.K, other, 0)
        return NotImplemented

    def __add__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KElement(self.K, self.u + o.u, self.v + o.v)

    __radd__ = __add__

    def __neg__(self):
        return KElement(self.K, -self.u, -self.v)

    def __sub__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        return KElement(self.K, self.u - o.u, self.v - o.v)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        # w^2 = t*w - n
        t, n = self.K.w_trace, self.K.w_norm
        vv = self.v * o.v
        return KElement(self.K, self.u * o.u - n * vv, self.u * o.v + self.v * o.u + t * vv)

    __rmul__ = __mul__

    def conj(self):
        # sigma(w) = t - w
        t = self.K.w_trace
        return KElement(self.K, self.u + t * self.v, -self.v)

    def norm(self) -> Fraction:
        return (self * self.conj()).u

    def __truediv__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return o
        n = o.norm()
        c = self * o.conj()
        return KElement(self.K, c.u / n, c.v / n)

    def __rtruediv__(self, other):
        return KElement(self.K, other, 0) / self

    def __pow__(self, e: int):
        r = KElement(self.K, 1, 0)
        b = self
        while e:
            if e & 1:
                r = r * b
            b = b * b
            e >>= 1
        return r

    def __eq__(self, other):
        o = self._coerce(other)
        if o is NotImplemented:
            return False
        return self.u == o.u and self.v == o.v

    def __hash__(self):
        return hash((self.u, self.v)) if self.v else hash(self.u)

    def __bool__(self):
        return bool(self.u) or bool(self.v)

    def is_rational(self) -> bool:
        return self.v == 0

    def __repr__(self):
        return f"KElement({self.u} + {self.v}*w)"


@dataclass(frozen=True)
class PrimeOfK:
    """A prime ideal of O_K, recorded through its residue map.

    ``w_image`` is the residue of w mod the prime when the residue degree is
    one (split and ramified primes) and ``None`` for inert primes.
    """

    D: int
    p: int
    kind: str
    w_image: int | None = None

    @property
    def norm(self) -> int:
        return self.p * self.p if self.kind == INERT else self.p

    @property
    def residue_degree(self) -> int:
        return 2 if self.kind == INERT else 1

    @property
    def tag(self) -> str:
        return format_tag(self)

    def sort_key(self):
        return (self.norm, self.p, -1 if self.w_image is None else self.w_image)

    def __str__(self):
        return self.tag


def _w_roots_mod(K: ImagQuadField, p: int) -> list[int]:
    F = ff.field(p, 1)
    return ff.roots_in_field(F, K.w_minpoly.mod(p))


def splitting(K: ImagQuadField, p: int) -> tuple[PrimeOfK, ...]:
    """The primes of O_K above the rational prime p."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    if K.D % p == 0:
        (root,) = _w_roots_mod(K, p)
        return (PrimeOfK(K.D, p, RAMIFIED, root),)
    if kronecker(K.D, p) == 1:
        r1, r2 = _w_roots_mod(K, p)
        return tuple(sorted((PrimeOfK(K.D, p, SPLIT, r1), PrimeOfK(K.D, p, SPLIT, r2)),
                            key=lambda P: _tag_offset(P)))
    return (PrimeOfK(K.D, p, INERT, None),)


def _uses_half_generator(D: int, p: int) -> bool:
    return D % 4 == 1 and p != 2


def _tag_offset(P: PrimeOfK) -> int:
    p, c = P.p, P.w_image
    if _uses_half_generator(P.D, p):
        return (-2 * c) % p
    # [p, w+a] with a in 1..p, matching the "[2, w+2]" display for w = 0
    return (-c) % p or p


def format_tag(P: PrimeOfK) -> str:
    if P.kind == INERT:
        return f"[{P.p}]"
    a = _tag_offset(P)
    gen = "2w" if _uses_half_generator(P.D, P.p) else "w"
    body = gen if a == 0 else f"{gen}+{a}"
    return f"[{P.p}, {body}]"


_TAG_RE = re.compile(r"^\[\s*(\d+)\s*(?:,\s*(2?)\s*w\s*(?:([+-])\s*(\d+))?\s*)?\]$")


def parse_ideal_tag(K: ImagQuadField, tag: str) -> PrimeOfK:
    """Parse ``[p]``, ``[p, w+a]`` or ``[p, 2w+a]`` into a PrimeOfK."""
    m = _TAG_RE.match(tag.strip())
    if not m:
        raise MalformedTag(f"cannot parse ideal tag {tag!r}")
    p = int(m.group(1))
    if not is_prime(p):
        raise MalformedTag(f"{p} in tag {tag!r} is not prime")
    two, sign, a = m.group(2), m.group(3), m.group(4)
    has_gen = m.group(0).find("w") >= 0
    if not has_gen:
        primes = splitting(K, p)
        if primes[0].kind != INERT:
            raise NotAPrimeIdeal(f"({p}) is not prime in {K}: it is {primes[0].kind}")
        return primes[0]
    a = int(a) if a else 0
    if sign == "-":
        a = -a
    if two:
        if p == 2:
            raise NotAPrimeIdeal(f"{tag!r}: 2w+a does not generate a prime above 2")
        c = (-a * pow(2, -1, p)) % p
    else:
        c = (-a) % p
    if K.w_minpoly(c) % p:
        raise NotAPrimeIdeal(f"{tag!r}: w = {c} is not a root of {K.w_minpoly} mod {p}")
    kind = RAMIFIED if K.D % p == 0 else SPLIT
    return PrimeOfK(K.D, p, kind, c)


def conj_prime(P: PrimeOfK) -> PrimeOfK:
    """The Galois conjugate of a split prime."""
    if P.kind != SPLIT:
        raise NotSplit(f"{P.tag} is {P.kind}")
    t = 1 if P.D % 4 == 1 else 0
    return PrimeOfK(P.D, P.p, SPLIT, (t - P.w_image) % P.p)


def residue_field(P: PrimeOfK) -> ff.FiniteField:
    return ff.field(P.p, P.residue_degree)


def w_image_in(K: ImagQuadField, P: PrimeOfK, F: ff.FiniteField) -> int:
    """Image of w under O_K -> O_K/P -> F.

    For inert primes the smallest root of the minimal polynomial in F is used.
    """
    if P.kind == INERT:
        roots = ff.roots_in_field(F, K.w_minpoly.mod(P.p))
        if not roots:
            raise InputError(f"F_{F.q} does not contain the residue field of {P.tag}")
        return roots[0]
    return P.w_image


def reduce_element(F: ff.FiniteField, u: int, v: int, w_img: int) -> int:
    return F.add(F.from_int(u), F.mul(F.from_int(v), w_img))


# ---------------------------------------------------------------------------
# Z[sqrt(2)]


@dataclass(frozen=True)
class RmElement:
    """a + b*e with e = sqrt(2)."""

    a: int = 0
    b: int = 0

    def __add__(self, other):
        other = _as_rm(other)
        return RmElement(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __neg__(self):
        return RmElement(-self.a, -self.b)

    def __sub__(self, other):
        return self + (-_as_rm(other))

    def __rsub__(self, other):
        return _as_rm(other) - self

    def __mul__(self, other):
        other = _as_rm(other)
        return RmElement(self.a * other.a + 2 * self.b * other.b,
                         self.a * other.b + self.b * other.a)

    __rmul__ = __mul__

    def norm(self) -> int:
        return self.a * self.a - 2 * self.b * self.b

    def trace(self) -> int:
        return 2 * self.a

    def is_rational(self) -> bool:
        return self.b == 0

    def __str__(self):
        a, b = self.a, self.b
        if b == 0:
            return str(a)
        eterm = {1: "e", -1: "-e"}.get(b, f"{b}e")
        if a == 0:
            return eterm
        return f"{eterm} {'+' if a > 0 else '-'} {abs(a)}"


def _as_rm(x):
    return x if isinstance(x, RmElement) else RmElement(int(x), 0)


def rm_tau(x: RmElement) -> RmElement:
    """The nontrivial automorphism e -> -e."""
    return RmElement(x.a, -x.b)


def rm_reduce_lambda2(x: RmElement) -> int:
    """Image in Z[sqrt 2]/(sqrt 2) = F_2."""
    return x.a % 2
