"""Genus-2 curve models, reduction at primes and brute-force point counting.

Models are ``y^2 + Q(x) y = P(x)`` with deg P <= 6 and deg Q <= 3; a curve
``y^2 = F(x)`` over Q is the case Q = 0.  Point counts are for the smooth
projective model, so the two charts of the weighted projective plane are
both examined.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from math import isqrt
from pathlib import Path

from . import finite_field as ff
from .arith import IntPoly, format_poly, poly_disc
from .errors import InconsistentCounts, InputError, RamifiedPrime, SchemaError, SingularModel
from .invariants import igusa_clebsch_raw
from .quadratic import (
    RAMIFIED,
    ImagQuadField,
    PrimeOfK,
    reduce_element,
    residue_field,
    w_image_in,
)


@dataclass(frozen=True)
class CurveQ:
    """y^2 = F(x) over Q with deg F in {5, 6}."""

    F: IntPoly
    label: str = ""

    def __post_init__(self):
        if self.F.degree not in (5, 6):
            raise InputError(f"y^2 = F needs deg F in (5, 6), got {self.F.degree}")
        if poly_disc(self.F) == 0:
            raise InputError("F has a repeated root")

    def sextic(self):
        # same normalization as Q^2 + 4P with Q = 0, P = F
        return [4 * c for c in self.F.coeffs]

    def model_over(self, F: ff.FiniteField, w_img=None):
        return [F.from_int(c) for c in self.F.coeffs], []


@dataclass(frozen=True)
class CurveK:
    """y^2 + Q(x) y = P(x) with coefficients u + v*w in O_K, ascending degree."""

    field: ImagQuadField
    P: tuple
    Q: tuple
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "P", _trim_pairs(self.P))
        object.__setattr__(self, "Q", _trim_pairs(self.Q))
        if len(self.P) > 7 or len(self.Q) > 4:
            raise InputError("need deg P <= 6 and deg Q <= 3")
        sextic = self.sextic()
        if all(c == 0 for c in sextic):
            raise InputError("Q^2 + 4P vanishes")
        degree = max(i for i, c in enumerate(sextic) if c != 0)
        if degree < 5:
            raise InputError("Q^2 + 4P has degree < 5; the curve is not of genus 2")
        if igusa_clebsch_raw(sextic)[3] == 0:
            raise InputError("Q^2 + 4P has a repeated root")

    def _poly(self, pairs):
        E = self.field.element
        return [E(u, v) for u, v in pairs]

    def sextic(self):
        """Q^2 + 4P as a list of seven K-elements."""
        P = self._poly(self.P) + [self.field.element(0)] * (7 - len(self.P))
        Q = self._poly(self.Q)
        out = [4 * c for c in P]
        for i, a in enumerate(Q):
            for j, b in enumerate(Q):
                out[i + j] = out[i + j] + a * b
        return out

    def model_over(self, F: ff.FiniteField, w_img):
        P = [reduce_element(F, u, v, w_img) for u, v in self.P]
        Q = [reduce_element(F, u, v, w_img) for u, v in self.Q]
        return P, Q


def _trim_pairs(pairs):
    pairs = [tuple(int(x) for x in pr) for pr in pairs]
    for pr in pairs:
        if len(pr) != 2:
            raise InputError(f"coefficient {pr} is not a (u, v) pair")
    while pairs and pairs[-1] == (0, 0):
        pairs.pop()
    return tuple(pairs)


@dataclass(frozen=True)
class FqCurve:
    """y^2 + Q(x) y = P(x) over a finite field (coefficient lists of field elements)."""

    field: ff.FiniteField
    P: tuple
    Q: tuple

    def __post_init__(self):
        object.__setattr__(self, "P", tuple(ff.ptrim(self.P)))
        object.__setattr__(self, "Q", tuple(ff.ptrim(self.Q)))
        if len(self.P) > 7 or len(self.Q) > 4:
            raise InputError("need deg P <= 6 and deg Q <= 3")

    @property
    def q(self) -> int:
        return self.field.q

    def _coeff(self, poly, i):
        return poly[i] if i < len(poly) else 0

    def is_smooth(self) -> bool:
        F = self.field
        P, Q = list(self.P), list(self.Q)
        if F.p != 2:
            sextic = ff.padd(F, ff.pmul(F, Q, Q), ff.pscale(F, P, F.from_int(4)))
            if ff.pdeg(sextic) < 5:
                return False
            return ff.pdeg(ff.pgcd(F, sextic, ff.pderiv(F, sextic))) == 0
        # characteristic 2: a singular point has Q(x) = 0 and P'(x)^2 = P(x) Q'(x)^2
        dP, dQ = ff.pderiv(F, P), ff.pderiv(F, Q)
        G = ff.padd(F, ff.pmul(F, dP, dP), ff.pmul(F, P, ff.pmul(F, dQ, dQ)))
        if not Q:
            # y^2 = P is never a smooth genus-2 model in characteristic 2
            return False
        if ff.pdeg(ff.pgcd(F, Q, G)) > 0:
            return False
        # chart at infinity: Q*(u) = u^3 Q(1/u), P*(u) = u^6 P(1/u), point u = 0
        q3, q2 = self._coeff(Q, 3), self._coeff(Q, 2)
        p6, p5 = self._coeff(P, 6), self._coeff(P, 5)
        if q3 == 0 and F.add(F.mul(p5, p5), F.mul(p6, F.mul(q2, q2))) == 0:
            return False
        return True

    def base_change(self, r: int) -> "FqCurve":
        F = self.field
        G = ff.field(F.p, F.k * r)
        embed = ff.embedding(F, G)
        return FqCurve(G, tuple(embed(c) for c in self.P), tuple(embed(c) for c in self.Q))

    def __str__(self):
        fmt = lambda poly: _format_fq_poly(self.field, poly)
        lhs = "y^2" if not self.Q else f"y^2 + ({fmt(self.Q)})y"
        return f"{lhs} = {fmt(self.P)} over F_{self.q}"


def _format_fq_poly(F, poly):
    if F.k == 1:
        return format_poly(list(poly))
    terms = []
    for i in range(len(poly) - 1, -1, -1):
        c = poly[i]
        if c == 0:
            continue
        digits = F.digits(c)
        coef = " + ".join(
            (str(d) if j == 0 else (("" if d == 1 else str(d)) + ("t" if j == 1 else f"t^{j}")))
            for j, d in reversed(list(enumerate(digits))) if d
        )
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mono:
            terms.append(f"({coef})" if "+" in coef else coef)
        elif coef == "1":
            terms.append(mono)
        else:
            terms.append(f"({coef}){mono}" if "+" in coef or "t" in coef else f"{coef}{mono}")
    return " + ".join(terms) or "0"


def reduce_curve(C, P, field_degree: int = 1) -> FqCurve:
    """Reduce C modulo the prime P (a PrimeOfK, or a rational prime for CurveQ).

    ``field_degree`` > 1 reduces straight into the extension of degree
    ``field_degree`` of the residue field.
    """
    if isinstance(P, PrimeOfK):
        if P.kind == RAMIFIED:
            raise RamifiedPrime(f"{P.tag} is ramified in K")
        F = ff.field(P.p, P.residue_degree * field_degree)
        K = C.field if isinstance(C, CurveK) else ImagQuadField(P.D)
        w_img = w_image_in(K, P, F)
    else:
        F = ff.field(int(P), field_degree)
        w_img = None
        if isinstance(C, CurveK):
            raise InputError("a curve over K must be reduced at a prime of K")
    Pbar, Qbar = C.model_over(F, w_img)
    return FqCurve(F, tuple(Pbar), tuple(Qbar))


def count_points(curve: FqCurve, require_smooth: bool = True) -> int:
    """Number of F_q-points on the smooth projective model.

    With ``require_smooth=False`` the same fiber-by-fiber count is returned
    for a singular model too; it is then just a count of solutions of the
    equation in the two standard charts, not a point count of any curve.
    """
    if require_smooth and not curve.is_smooth():
        raise SingularModel(f"{curve} is singular")
    F = curve.field
    P, Q = list(curve.P), list(curve.Q)
    total = 0
    for x in F.elements():
        total += len(ff.solve_quadratic(F, ff.peval(F, Q, x), ff.peval(F, P, x)))
    # points at infinity: y^2 + q3 y = p6
    q3 = Q[3] if len(Q) > 3 else 0
    p6 = P[6] if len(P) > 6 else 0
    total += len(ff.solve_quadratic(F, q3, p6))
    return total


@dataclass(frozen=True)
class LPoly:
    """1 + c1 x + c2 x^2 + c3 x^3 + c4 x^4 for a genus-2 curve over F_q."""

    q: int
    coeffs: tuple

    @property
    def poly(self) -> IntPoly:
        return IntPoly(self.coeffs)

    def monic_reversed(self) -> IntPoly:
        return self.poly.reversed(4)

    def __str__(self):
        return " + ".join(
            f"{c}" if i == 0 else f"{c}x" if i == 1 else f"{c}x^{i}"
            for i, c in enumerate(self.coeffs)
        ).replace("+ -", "- ")


def _weil_ok(c1: int, c2: int, q: int) -> bool:
    """Whether x^4 + c1 x^3 + c2 x^2 + q c1 x + q^2 has all roots of absolute value sqrt(q).

    Equivalent to t^2 + c1 t + (c2 - 2q) having both roots in [-2 sqrt q, 2 sqrt q],
    where t = x + q/x; checked with integer arithmetic only.
    """
    disc = c1 * c1 - 4 * (c2 - 2 * q)
    if disc < 0:
        return False
    if c1 * c1 > 16 * q:
        return False
    edge = 2 * q + c2
    # the quadratic at t = +-2 sqrt q equals edge +- 2 c1 sqrt q; both must be >= 0
    return edge >= 0 and edge * edge >= 4 * c1 * c1 * q


def lpoly_from_counts(n1: int, n2: int, q: int) -> LPoly:
    c1 = n1 - q - 1
    s2 = q * q + 1 - n2
    twice_c2 = c1 * c1 - s2
    if twice_c2 % 2:
        raise InconsistentCounts(f"counts ({n1}, {n2}) over q = {q} give non-integral c2 = {Fraction(twice_c2, 2)}")
    c2 = twice_c2 // 2
    if not _weil_ok(c1, c2, q):
        raise InconsistentCounts(f"counts ({n1}, {n2}) over q = {q} violate the Weil bounds")
    return LPoly(q, (1, c1, c2, q * c1, q * q))


def weil_interval(q: int) -> tuple[int, int]:
    """Integer range q + 1 -+ floor(4 sqrt q) containing every genus-2 point count."""
    r = isqrt(16 * q)
    return q + 1 - r, q + 1 + r


def lpoly_of_reduction(C, P) -> LPoly:
    """L-polynomial of C at P from counts over the residue field and its quadratic extension."""
    red = reduce_curve(C, P)
    if not red.is_smooth():
        raise SingularModel(f"{C.label or 'curve'} has bad reduction at {getattr(P, 'tag', P)}")
    n1 = count_points(red)
    n2 = count_points(red.base_change(2))
    return lpoly_from_counts(n1, n2, red.q)


# ---------------------------------------------------------------------------
# documents


def load_curve(doc):
    """Build a CurveQ or CurveK from a parsed curve document."""
    if not isinstance(doc, dict):
        raise SchemaError("curve document must be a mapping")
    model, base = doc.get("model"), doc.get("base")
    label = doc.get("label", "")
    try:
        if model == "y2=F" and base == "Q":
            return CurveQ(IntPoly(_ints(doc["F"])), label)
        if model == "y2+Qy=P" and isinstance(base, str) and base.startswith("K(") and base.endswith(")"):
            K = ImagQuadField(int(base[2:-1]))
            return CurveK(K, tuple(_pairs(doc["P"])), tuple(_pairs(doc.get("Q", []))), label)
    except KeyError as exc:
        raise SchemaError(f"curve document is missing {exc}") from None
    except (TypeError, ValueError) as exc:
        raise SchemaError(f"bad curve document: {exc}") from None
    raise SchemaError(f"unsupported curve model/base combination {model!r}/{base!r}")


def _ints(xs):
    if not isinstance(xs, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in xs):
        raise SchemaError("coefficients must be a list of integers")
    return xs


def _pairs(xs):
    if not isinstance(xs, list):
        raise SchemaError("coefficients must be a list of [u, v] pairs")
    out = []
    for pr in xs:
        if not (isinstance(pr, list) and len(pr) == 2 and all(isinstance(x, int) and not isinstance(x, bool) for x in pr)):
            raise SchemaError(f"coefficient {pr!r} is not an integer pair")
        out.append(tuple(pr))
    return out


def dump_curve(C) -> dict:
    doc = {"label": C.label} if C.label else {}
    if isinstance(C, CurveQ):
        doc.update({"model": "y2=F", "base": "Q", "F": list(C.F.coeffs)})
    else:
        doc.update({"model": "y2+Qy=P", "base": f"K({C.field.D})",
                    "P": [list(pr) for pr in C.P], "Q": [list(pr) for pr in C.Q]})
    return doc


def load_curve_file(path):
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from None
    return load_curve(doc)


def residue_field_of(P: PrimeOfK) -> ff.FiniteField:
    return residue_field(P)
