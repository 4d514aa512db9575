"""Igusa-Clebsch invariants of binary sextics, by exact transvectant calculus.

Coefficient rings are duck-typed: ints, Fractions and ``KElement`` all work,
so a sextic over an imaginary quadratic field is handled exactly.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

from .arith import IntPoly
from .errors import DegenerateParameters, InputError, NonRationalInvariants
from .quadratic import KElement


def _falling(a: int, k: int) -> int:
    r = 1
    for t in range(k):
        r *= a - t
    return r


def _partial(form, a: int, b: int):
    """d^(a+b)/dx^a dy^b of a binary form; form[i] is the x^i y^(n-i) coefficient."""
    n = len(form) - 1
    out = [0] * (n - a - b + 1)
    for i, c in enumerate(form):
        if i >= a and n - i >= b:
            out[i - a] = out[i - a] + c * (_falling(i, a) * _falling(n - i, b))
    return out


def _mul(f, g):
    out = [0] * (len(f) + len(g) - 1)
    for i, x in enumerate(f):
        for j, y in enumerate(g):
            out[i + j] = out[i + j] + x * y
    return out


def transvectant(f, g, k: int):
    """k-th transvectant (f, g)_k of binary forms of degrees m, n.

    Normalized by (m-k)!(n-k)!/(m!n!), so that (f, f)_n is the classical
    invariant for a form of degree n.
    """
    m, n = len(f) - 1, len(g) - 1
    if k > min(m, n):
        raise InputError("transvectant order exceeds a form degree")
    acc = [0] * (m + n - 2 * k + 1)
    for j in range(k + 1):
        term = _mul(_partial(f, k - j, j), _partial(g, j, k - j))
        s = (-1) ** j * comb(k, j)
        acc = [x + s * y for x, y in zip(acc, term)]
    scale = Fraction(factorial(m - k) * factorial(n - k), factorial(m) * factorial(n))
    return [x * scale for x in acc]


def _as_sextic(sextic):
    coeffs = list(sextic.coeffs) if isinstance(sextic, IntPoly) else list(sextic)
    while len(coeffs) > 7 and coeffs[-1] == 0:
        coeffs.pop()
    if len(coeffs) > 7:
        raise InputError("binary sextic has degree > 6")
    coeffs += [0] * (7 - len(coeffs))
    if coeffs[6] == 0 and coeffs[5] == 0:
        raise InputError("binary sextic must have degree 5 or 6")
    return [c if isinstance(c, KElement) else Fraction(c) for c in coeffs]


def clebsch_invariants(sextic):
    """Clebsch invariants (A, B, C, D) of a degree 5 or 6 polynomial, as a binary sextic."""
    f = _as_sextic(sextic)
    i = transvectant(f, f, 4)
    delta = transvectant(i, i, 2)
    y1 = transvectant(f, i, 4)
    y2 = transvectant(i, y1, 2)
    y3 = transvectant(i, y2, 2)
    A = transvectant(f, f, 6)[0]
    B = transvectant(i, i, 4)[0]
    C = transvectant(i, delta, 4)[0]
    D = transvectant(y3, y1, 2)[0]
    return A, B, C, D


def _rational(x):
    if isinstance(x, KElement):
        if not x.is_rational():
            raise NonRationalInvariants(f"invariant {x!r} is not rational")
        return x.u
    return Fraction(x)


@dataclass(frozen=True)
class IgusaClebsch:
    """Point (I2 : I4 : I6 : I10) of weighted projective space P(1, 2, 3, 5)."""

    I2: Fraction
    I4: Fraction
    I6: Fraction
    I10: Fraction

    WEIGHTS = (1, 2, 3, 5)

    def as_tuple(self):
        return (self.I2, self.I4, self.I6, self.I10)

    def scaled(self, u) -> "IgusaClebsch":
        return IgusaClebsch(*(x * Fraction(u) ** w for x, w in zip(self.as_tuple(), self.WEIGHTS)))

    def __str__(self):
        return "(" + " : ".join(str(x) for x in self.as_tuple()) + ")"


def igusa_clebsch_raw(sextic):
    """(I2, I4, I6, I10) in the coefficient ring of the sextic, with no rationality check."""
    A, B, C, D = clebsch_invariants(sextic)
    I2 = -120 * A
    I4 = -720 * A**2 + 6750 * B
    I6 = 8640 * A**3 - 108000 * A * B + 202500 * C
    I10 = (-62208 * A**5 + 972000 * A**3 * B + 1620000 * A**2 * C
           - 3037500 * A * B**2 - 6075000 * B * C - 4556250 * D)
    return I2, I4, I6, I10


def igusa_clebsch(sextic) -> IgusaClebsch:
    """Igusa-Clebsch invariants of a binary sextic with exact coefficients.

    A sextic with a repeated root is allowed and yields I10 = 0.
    """
    return IgusaClebsch(*(_rational(x) for x in igusa_clebsch_raw(sextic)))


def _rational_root(x: Fraction, k: int):
    """Rational k-th roots of x (both signs when k is even)."""

    def iroot(n):
        lo, hi = 0, 1
        while hi**k <= n:
            hi *= 2
        while lo < hi - 1:
            mid = (lo + hi) // 2
            if mid**k <= n:
                lo = mid
            else:
                hi = mid
        return lo

    neg = x < 0
    if neg and k % 2 == 0:
        return []
    num, den = abs(x.numerator), x.denominator
    a, b = iroot(num), iroot(den)
    if a**k != num or b**k != den:
        return []
    r = Fraction(a, b)
    if neg:
        return [-r]
    return [r, -r] if k % 2 == 0 else [r]


def wp_equivalent(a: IgusaClebsch, b: IgusaClebsch):
    """Decide b = u.a in P(1,2,3,5) for a nonzero rational u.

    Returns ``(True, u)`` or ``(False, None)``.
    """
    weights = IgusaClebsch.WEIGHTS
    xs, ys = a.as_tuple(), b.as_tuple()
    if any((x == 0) != (y == 0) for x, y in zip(xs, ys)):
        return False, None
    ratios = {w: Fraction(y) / Fraction(x) for w, x, y in zip(weights, xs, ys) if x != 0}
    if not ratios:
        return True, Fraction(1)
    if 1 in ratios:
        candidates = [ratios[1]]
    elif 2 in ratios and 3 in ratios:
        candidates = [ratios[3] / ratios[2]]
    elif 2 in ratios and 5 in ratios:
        candidates = [ratios[5] / ratios[2] ** 2]
    elif 3 in ratios and 5 in ratios:
        candidates = [ratios[3] ** 2 / ratios[5]]
    else:
        (w, r), = ratios.items()
        candidates = _rational_root(r, w)
    for u in candidates:
        if u != 0 and all(u**w == r for w, r in ratios.items()):
            return True, u
    return False, None


def curve_discriminant(curve) -> Fraction:
    """2^-12 * I10 of the model sextic; equals 1 for the minimal model C."""
    return igusa_clebsch(curve.sextic()).I10 / 4096


@dataclass(frozen=True)
class HumbertPoint:
    r: Fraction
    s: Fraction
    z_squared: Fraction
    ic: IgusaClebsch


def humbert_z_squared(r, s) -> Fraction:
    r, s = Fraction(r), Fraction(s)
    return 2 * (16 * r * s**2 + 32 * r**2 * s - 40 * r * s - s + 16 * r**3 + 24 * r**2 + 12 * r + 2)


def humbert_point(r, s) -> HumbertPoint:
    """Evaluate the rational model of the Humbert surface of discriminant 8 at (r, s)."""
    r, s = Fraction(r), Fraction(s)
    A1 = 2 * r * s**2
    if A1 == 0:
        raise DegenerateParameters(f"(r, s) = ({r}, {s}) makes A1 = 2rs^2 vanish")
    A = -(9 * r * s + 4 * r**2 + 4 * r + 1) / 3
    B1 = (r * s**2 * (3 * s + 8 * r - 2)) / 3
    B = -(54 * r**2 * s + 81 * r * s - 16 * r**3 - 24 * r**2 - 12 * r - 2) / 27
    B2 = r**2
    ic = IgusaClebsch(
        -24 * B1 / A1,
        -12 * A,
        (96 * A * B1 - 36 * A1 * B) / A1,
        -4 * A1 * B2,
    )
    return HumbertPoint(r, s, humbert_z_squared(r, s), ic)
