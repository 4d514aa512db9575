"""From Bianchi eigenvalues to the spinor Euler factors of the Siegel lift.

Covers the paramodular level, degree-4 local factors at unramified primes,
extraction of the Hecke eigenvalues (lambda_p, mu_p) in the Arakawa
normalization, the shapes of the local factors at primes dividing the level,
and exact similitude checks for 4x4 L-parameter matrices.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .arith import IntPoly, factorize, is_prime
from .bianchi import BianchiNewform
from .errors import (
    InputError,
    NonRationalInert,
    NotSimilitude,
    RamifiedUnsupported,
    SymmetryViolation,
)
from .quadratic import RAMIFIED, SPLIT, ImagQuadField, splitting

VAL0, VAL1, VAL2 = "0", "1", ">=2"


def paramodular_level(D: int, level_norm: int) -> int:
    ImagQuadField(D)  # validates D
    if level_norm < 1:
        raise InputError("level norm must be positive")
    return D * D * level_norm


@dataclass(frozen=True)
class SpinorFactor:
    """Local factor 1 + c1 x + ... in x = p^-s, with exact rational coefficients."""

    p: int
    coeffs: tuple
    valuation_case: str = VAL0

    def __post_init__(self):
        cs = [Fraction(c) for c in self.coeffs]
        while len(cs) > 1 and cs[-1] == 0:
            cs.pop()
        if not cs or cs[0] != 1:
            raise InputError("a local factor has constant term 1")
        object.__setattr__(self, "coeffs", tuple(cs))

    def coeff(self, i: int) -> Fraction:
        return self.coeffs[i] if i < len(self.coeffs) else Fraction(0)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coeffs)

    def as_intpoly(self) -> IntPoly:
        if not self.is_integral():
            raise InputError("factor has non-integral coefficients")
        return IntPoly(int(c) for c in self.coeffs)

    def __str__(self):
        # ascending order reads naturally for a factor in p^-s
        return _ascending(self.coeffs)


def _ascending(coeffs) -> str:
    out = ""
    for i, c in enumerate(coeffs):
        if c == 0:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        a = abs(c)
        if not mono:
            body = str(a)
        elif a == 1:
            body = mono
        elif a.denominator != 1:
            body = f"({a}){mono}"
        else:
            body = f"{a}{mono}"
        if not out:
            out = ("-" if c < 0 else "") + body
        else:
            out += f" {'-' if c < 0 else '+'} {body}"
    return out or "0"


def spinor_factor(f: BianchiNewform, p: int) -> SpinorFactor:
    """Degree-4 spinor factor at a rational prime p unramified in K."""
    if not is_prime(p):
        raise InputError(f"{p} is not prime")
    primes = splitting(f.field, p)
    if primes[0].kind == RAMIFIED:
        raise RamifiedUnsupported(p, shape="1 - lambda x + (p mu + p^(k-1)) x^2")
    if any(P in f.level_primes for P in primes):
        raise RamifiedUnsupported(p, shape="1 - (lambda + p^(k/2-2) eps) x + ... with eps_p unknown")
    if primes[0].kind == SPLIT:
        P = primes[0]
        a = f.eigenvalue(P)
        t, n = a.trace(), a.norm()
        # (1 - a x + p x^2)(1 - tau(a) x + p x^2)
        return SpinorFactor(p, (1, -t, 2 * p + n, -p * t, p * p))
    (P,) = primes
    a = f.eigenvalue(P)
    if not a.is_rational():
        raise NonRationalInert(f"eigenvalue {a} at inert {P.tag} is not tau-fixed")
    return SpinorFactor(p, (1, 0, -a.a, 0, p * p))


@dataclass(frozen=True)
class ArakawaEigen:
    p: int
    lam: Fraction
    mu: Fraction
    epsilon: int | None = None

    @property
    def mu_is_integral(self) -> bool:
        return self.mu.denominator == 1


def factor_val0(lam, mu, p: int, k: int) -> SpinorFactor:
    """The unramified local factor attached to (lambda_p, mu_p) at weight k."""
    lam, mu = Fraction(lam), Fraction(mu)
    pk = Fraction(p) ** (k - 1)
    c2 = p * mu + pk + Fraction(p) ** (k - 3)
    return SpinorFactor(p, (1, -lam, c2, -pk * lam, Fraction(p) ** (2 * k - 2)), VAL0)


def arakawa_eigen(S: SpinorFactor, k: int) -> ArakawaEigen:
    if k % 2:
        raise InputError("weight must be even")
    if S.valuation_case != VAL0:
        raise InputError("eigenvalue extraction needs an unramified factor")
    p = S.p
    c1, c2, c3, c4 = (S.coeff(i) for i in (1, 2, 3, 4))
    pk = Fraction(p) ** (k - 1)
    if c4 != Fraction(p) ** (2 * k - 2):
        raise SymmetryViolation(f"x^4 coefficient {c4} != p^(2k-2) = {Fraction(p) ** (2 * k - 2)}")
    if c3 != pk * c1:
        raise SymmetryViolation(f"x^3 coefficient {c3} != p^(k-1) * {c1}")
    lam = -c1
    mu = (c2 - pk - Fraction(p) ** (k - 3)) / p
    return ArakawaEigen(p, lam, mu)


def build_factor_val_ge1(lam, mu, eps, p: int, k: int, case: str) -> SpinorFactor:
    """Local factor at p dividing the level, for valuation 1 or at least 2."""
    if eps not in (-1, 1):
        raise InputError(f"epsilon must be +1 or -1, got {eps!r}")
    if k % 2:
        raise InputError("weight must be even")
    lam, mu = Fraction(lam), Fraction(mu)
    c2 = p * mu + Fraction(p) ** (k - 1)
    if case == VAL1:
        lin = lam + Fraction(p) ** (k // 2 - 2) * eps
        cubic = eps * Fraction(p) ** (3 * k // 2 - 2)
        return SpinorFactor(p, (1, -lin, c2, cubic), VAL1)
    if case == VAL2:
        return SpinorFactor(p, (1, -lam, c2), VAL2)
    raise InputError(f"unknown valuation case {case!r}")


# ---------------------------------------------------------------------------
# similitudes


class GSp4Matrix:
    """4x4 matrix with exact rational entries."""

    __slots__ = ("rows",)

    def __init__(self, rows):
        rows = tuple(tuple(Fraction(x) for x in r) for r in rows)
        if len(rows) != 4 or any(len(r) != 4 for r in rows):
            raise InputError("expected a 4x4 matrix")
        self.rows = rows

    def __matmul__(self, other):
        cols = list(zip(*other.rows))
        return GSp4Matrix([[sum(a * b for a, b in zip(r, c)) for c in cols] for r in self.rows])

    def T(self):
        return GSp4Matrix(list(zip(*self.rows)))

    def scale(self, c):
        return GSp4Matrix([[c * x for x in r] for r in self.rows])

    def __eq__(self, other):
        return isinstance(other, GSp4Matrix) and self.rows == other.rows

    def __hash__(self):
        return hash(self.rows)

    def det(self) -> Fraction:
        m = [list(r) for r in self.rows]
        det = Fraction(1)
        for i in range(4):
            piv = next((r for r in range(i, 4) if m[r][i] != 0), None)
            if piv is None:
                return Fraction(0)
            if piv != i:
                m[i], m[piv] = m[piv], m[i]
                det = -det
            det *= m[i][i]
            for r in range(i + 1, 4):
                c = m[r][i] / m[i][i]
                for j in range(i, 4):
                    m[r][j] -= c * m[i][j]
        return det

    def __repr__(self):
        return "GSp4Matrix(" + repr([[str(x) for x in r] for r in self.rows]) + ")"


def identity4() -> GSp4Matrix:
    return GSp4Matrix([[int(i == j) for j in range(4)] for i in range(4)])


J = GSp4Matrix([[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]])


def gsp4_similitude(M: GSp4Matrix) -> Fraction:
    """The factor nu with M^t J M = nu J, or NotSimilitude."""
    if M.det() == 0:
        raise NotSimilitude("matrix is singular")
    G = M.T() @ J @ M
    nu = G.rows[0][2]
    if nu == 0 or G != J.scale(nu):
        raise NotSimilitude("M^t J M is not a multiple of J")
    return nu


def arch_j(k: int) -> GSp4Matrix:
    s = (-1) ** (k - 1)
    return GSp4Matrix([[0, 0, 0, 1], [0, 0, 1, 0], [0, s, 0, 0], [s, 0, 0, 0]])


def phi_g0(a0, b0, c0, d0) -> GSp4Matrix:
    return GSp4Matrix([[0, 1, 0, 0], [a0, 0, b0, 0], [0, 0, 0, 1], [c0, 0, d0, 0]])


def split_interleave(M1, M2) -> GSp4Matrix:
    (a1, b1), (c1, d1) = M1
    (a2, b2), (c2, d2) = M2
    return GSp4Matrix([[a1, 0, b1, 0], [0, a2, 0, b2], [c1, 0, d1, 0], [0, c2, 0, d2]])


def lparam_matrix(kind: str, *args) -> GSp4Matrix:
    """Build ``"arch_j"`` (k), ``"phi_g0"`` (a0, b0, c0, d0) or ``"split"`` (M1, M2)."""
    builders = {"arch_j": arch_j, "phi_g0": phi_g0, "split": split_interleave}
    try:
        return builders[kind](*args)
    except KeyError:
        raise InputError(f"unknown L-parameter kind {kind!r}") from None


# ---------------------------------------------------------------------------
# functional equation metadata


@dataclass(frozen=True)
class FunctionalEquation:
    gamma_exponent: int
    conductor: int
    sign_factors: tuple  # (p, epsilon_p or None when unknown)

    @property
    def sign(self):
        """Product of the local signs, or None while any of them is unknown."""
        if any(e is None for _, e in self.sign_factors):
            return None
        out = 1
        for _, e in self.sign_factors:
            out *= e
        return out


def functional_equation(f: BianchiNewform, epsilons=None) -> FunctionalEquation:
    N = paramodular_level(f.field.D, f.level_norm)
    epsilons = epsilons or {}
    return FunctionalEquation(2, N, tuple((p, epsilons.get(p)) for p in sorted(factorize(N))))


def spinor_table(f: BianchiNewform, k: int | None = None):
    """Rows (p, kind, factor, eigen-or-None, note) for every rational prime in the form's table."""
    k = f.weight if k is None else k
    rows = []
    for p in f.rational_primes():
        kind = splitting(f.field, p)[0].kind
        try:
            S = spinor_factor(f, p)
        except (RamifiedUnsupported, NonRationalInert) as exc:
            rows.append((p, kind, None, None, str(exc)))
            continue
        rows.append((p, kind, S, arakawa_eigen(S, k), ""))
    return rows


def monic_reversed(S: SpinorFactor) -> IntPoly:
    """x^4 S(1/x) for an integral degree-4 factor."""
    return S.as_intpoly().reversed(4)

