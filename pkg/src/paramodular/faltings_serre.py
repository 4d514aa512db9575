"""Mod-2 residual comparison between the Bianchi form and the curve over K.

The residual representation of the form lands in GL_2(F_2), which is S_3.
Everything checkable about it is reduced to finite computations: parities of
eigenvalues, factorization patterns of an S_3 sextic, a quadratic-subfield
sieve by Kronecker symbols, and the class number of K.  ``fs_verify`` runs
the whole chain and returns a report with stable ordering.
"""

from __future__ import annotations

import enum
import json
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from math import gcd

from . import finite_field as ff
from .arith import (
    FactorizationType,
    IntPoly,
    class_number_imag_quad,
    ddf_type,
    factorize,
    fundamental_discriminant,
    kronecker,
    poly_disc,
    primes_below,
)
from .bianchi import BianchiNewform, check_sigma_tau, q_poly
from .curves import CurveK, CurveQ, lpoly_of_reduction
from .errors import (
    InputError,
    NonRationalInvariants,
    NotSquarefree,
    ParamodularError,
    RamifiedPrime,
    SingularModel,
    UnexpectedType,
    UnknownPrime,
)
from .invariants import curve_discriminant, igusa_clebsch, wp_equivalent
from .quadratic import INERT, RAMIFIED, PrimeOfK, rm_reduce_lambda2, splitting

SCHEMA_VERSION = 1

ASSUMPTIONS = (
    "the residual representation of the form is unramified at every odd prime of K, "
    "so an odd eigenvalue at such a prime means Frobenius of order 3",
    "for an inert prime p of K, Frob_(p) is the square of Frob_p, because the sextic field "
    "and K are linearly disjoint (their quadratic subfields are real and imaginary)",
    "the comparison set T is taken as input, not derived",
)


class S3Class(enum.Enum):
    IDENTITY = "Identity"
    TRANSPOSITION = "Transposition"
    THREE_CYCLE = "ThreeCycle"

    @property
    def trace(self) -> int:
        """Trace in GL_2(F_2) under S_3 = GL_2(F_2)."""
        return 1 if self is S3Class.THREE_CYCLE else 0

    def square(self) -> "S3Class":
        return S3Class.THREE_CYCLE if self is S3Class.THREE_CYCLE else S3Class.IDENTITY

    def __str__(self):
        return self.value


# the regular action of S_3 on itself: cycle type of each class on 6 points
_REGULAR_TYPES = {
    FactorizationType.of([1] * 6): S3Class.IDENTITY,
    FactorizationType.of([2] * 3): S3Class.TRANSPOSITION,
    FactorizationType.of([3] * 2): S3Class.THREE_CYCLE,
}


# ---------------------------------------------------------------------------
# local structure at primes dividing the polynomial discriminant


def _vp(n: int, p: int) -> int | None:
    if n == 0:
        return None
    v = 0
    while n % p == 0:
        n //= p
        v += 1
    return v


def _vp_poly(a, p):
    vals = [_vp(c, p) for c in a if c]
    return min(vals) if vals else None


def _divmod_monic(a, b):
    """Quotient and remainder of integer lists by a monic integer list."""
    a = list(a)
    db = len(b) - 1
    if len(a) <= db:
        return [], a
    q = [0] * (len(a) - db)
    for i in range(len(a) - 1, db - 1, -1):
        c = a[i]
        if c:
            q[i - db] = c
            for j in range(db + 1):
                a[i - db + j] -= c * b[j]
    r = a[:db]
    while r and r[-1] == 0:
        r.pop()
    return q, r


def _phi_adic(f, phi, count):
    """First ``count`` coefficients of the phi-adic expansion of f."""
    out = []
    cur = list(f)
    for _ in range(count):
        cur, r = _divmod_monic(cur, phi)
        out.append(r)
    return out


def _lower_hull(points):
    hull = []
    for pt in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop the middle point when it lies on or above the chord
            if (y2 - y1) * (pt[0] - x1) >= (pt[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(pt)
    return hull


@dataclass(frozen=True)
class LocalPrime:
    """A prime of the number field above p, as ramification index and residue degree."""

    e: int
    f: int


def decomposition(poly: IntPoly, p: int):
    """Ramification indices and residue degrees above p, or None if undecided.

    For p prime to the discriminant this is the factorization pattern mod p.
    Otherwise the Newton polygon of each repeated factor is examined; when
    every residual polynomial is separable the decomposition is read off
    exactly.  ``None`` means this first-order test was inconclusive.
    """
    if poly.lc != 1:
        if poly.lc % p == 0:
            return None
    F = ff.field(p, 1)
    fbar = ff.pmonic(F, poly.mod(p))
    out = []
    for phibar, m in ff.factor(F, fbar):
        k = len(phibar) - 1
        if m == 1:
            out.append(LocalPrime(1, k))
            continue
        if poly.lc != 1:
            return None
        phi = list(phibar)
        coeffs = _phi_adic(list(poly.coeffs), phi, m + 1)
        vals = [_vp_poly(a, p) for a in coeffs]
        if vals[0] is None:
            return None  # phi divides the polynomial
        pts = [(i, v) for i, v in enumerate(vals) if v is not None]
        hull = _lower_hull(pts)
        Fphi = ff.field_with_modulus(p, tuple(phibar))
        for (s, vs), (t, vt) in zip(hull, hull[1:]):
            length, height = t - s, vs - vt
            g = gcd(length, height)
            e, h = length // g, height // g
            residual = []
            for j in range(g + 1):
                i = s + j * e
                a = coeffs[i]
                if vals[i] is None or vals[i] != vs - j * h:
                    residual.append(0)
                    continue
                unit = [(c // p ** vals[i]) % p for c in a]
                residual.append(sum(c * p**d for d, c in enumerate(unit)))
            residual = ff.ptrim(residual)
            dR = ff.pderiv(Fphi, residual)
            if ff.pdeg(ff.pgcd(Fphi, residual, dR)) > 0:
                return None
            for psi, mult in ff.factor(Fphi, residual):
                out.append(LocalPrime(e, k * (len(psi) - 1)))
    if sum(P.e * P.f for P in out) != poly.degree:
        raise AssertionError("local degrees do not add up")
    return sorted(out, key=lambda P: (P.e, P.f))


def unramified_certificate(poly: IntPoly, p: int) -> bool:
    """True when p is proven unramified in the field cut out by ``poly``."""
    dec = decomposition(poly, p)
    return dec is not None and all(P.e == 1 for P in dec)


# ---------------------------------------------------------------------------
# the sextic field


@dataclass(frozen=True)
class SexticField:
    poly: IntPoly

    def __post_init__(self):
        if not isinstance(self.poly, IntPoly):
            object.__setattr__(self, "poly", IntPoly(self.poly))
        if self.poly.degree != 6:
            raise InputError(f"expected a sextic, got degree {self.poly.degree}")
        if poly_disc(self.poly) == 0:
            raise NotSquarefree(f"{self.poly} has a repeated factor")

    @property
    def disc(self) -> int:
        return poly_disc(self.poly)

    @property
    def disc_support(self) -> list[int]:
        return sorted(factorize(self.disc))

    @property
    def support(self) -> list[int]:
        return ramification_support(self)

    def irreducibility_certificate(self, bound: int = 1000):
        """Primes p, q with patterns {2x3} and {3x2}, or None.

        A proper factor would need degree divisible by both 2 and 3.
        """
        found = {}
        for p in primes_below(bound):
            if self.disc % p == 0 or self.poly.lc % p == 0:
                continue
            t = ddf_type(self.poly, p)
            if t.parts in (((2, 3),), ((3, 2),)) and t.parts not in found:
                found[t.parts] = p
            if len(found) == 2:
                return found[((2, 3),)], found[((3, 2),)]
        return None


def load_sextic(doc) -> SexticField:
    from .errors import SchemaError

    try:
        coeffs = doc["polynomial"]
    except (KeyError, TypeError):
        raise SchemaError("sextic document needs a 'polynomial' list") from None
    if not isinstance(coeffs, list) or not all(isinstance(c, int) and not isinstance(c, bool) for c in coeffs):
        raise SchemaError("polynomial must be a list of integers, ascending degree")
    return SexticField(IntPoly(coeffs))


def ramification_support(N: SexticField) -> list[int]:
    """Primes dividing the polynomial discriminant not certified unramified.

    Always a superset of the primes that ramify in the field.
    """
    return [p for p in N.disc_support if not unramified_certificate(N.poly, p)]


def s3_frobenius(N: SexticField, p: int) -> S3Class:
    if N.disc % p == 0:
        dec = decomposition(N.poly, p)
        if dec is None or any(P.e > 1 for P in dec):
            raise RamifiedPrime(f"{p} divides the discriminant of {N.poly} and is not certified unramified")
        t = FactorizationType.of(P.f for P in dec)
    else:
        t = ddf_type(N.poly, p)
    try:
        return _REGULAR_TYPES[t]
    except KeyError:
        raise UnexpectedType(f"factorization type {t} mod {p} is not that of a regular S_3 action") from None


# ---------------------------------------------------------------------------
# parity, sieve, surjectivity


@dataclass(frozen=True)
class ParityResult:
    tag: str
    p: int
    parity: int
    frobenius: str
    ok: bool


def frobenius_at(N: SexticField, P: PrimeOfK) -> S3Class:
    c = s3_frobenius(N, P.p)
    return c.square() if P.kind == INERT else c


def parity_compatibility(f: BianchiNewform, N: SexticField, primes) -> list[ParityResult]:
    """Compare eigenvalue parity with the S_3 class at each prime of K above ``primes``."""
    out = []
    for p in sorted(set(primes)):
        above = splitting(f.field, p)
        if above[0].kind == RAMIFIED:
            raise RamifiedPrime(f"{p} ramifies in K")
        cls = s3_frobenius(N, p)
        for P in above:
            parity = rm_reduce_lambda2(f.eigenvalue(P))
            frob = cls.square() if P.kind == INERT else cls
            out.append(ParityResult(P.tag, p, parity, str(frob), parity == frob.trace))
    return out


def odd_parity_primes(f: BianchiNewform, exclude=(2,)) -> list[int]:
    """Rational primes below which the form has an odd eigenvalue."""
    return sorted({P.p for P, a in f.entries.items() if rm_reduce_lambda2(a) == 1 and P.p not in exclude})


@dataclass(frozen=True)
class SieveResult:
    survivors: tuple
    witnesses: dict = field(hash=False)  # eliminated d -> smallest eliminating prime
    flagged: tuple = ()  # (d, p) with p ramified in Q(sqrt d): ignored


def quad_subfield_sieve(d_list, primes) -> SieveResult:
    """Eliminate Q(sqrt d) when some prime with odd trace is inert in it."""
    survivors, witnesses, flagged = [], {}, []
    for d in d_list:
        D = fundamental_discriminant(d)
        for p in sorted(primes):
            k = kronecker(D, p)
            if k == 0:
                flagged.append((d, p))
            elif k == -1:
                witnesses[d] = p
                break
        else:
            survivors.append(d)
    return SieveResult(tuple(sorted(survivors)), witnesses, tuple(flagged))


@dataclass(frozen=True)
class SurjectivityVerdict:
    status: str  # "pass", "fail" or "inconclusive"
    reasons: tuple
    witness: str | None = None

    @property
    def ok(self) -> bool:
        return self.status == "pass"


def residual_surjectivity(f: BianchiNewform, h: int) -> SurjectivityVerdict:
    """Check that the residual image contains an element of order 3 and cannot be cyclic of order 3."""
    reasons = []
    odd = sorted((P for P, a in f.entries.items() if P.p != 2 and rm_reduce_lambda2(a) == 1),
                 key=lambda P: (P.norm, P.tag))
    witness = odd[0].tag if odd else None
    if witness is None:
        reasons.append("(i) no odd eigenvalue at an odd prime: no element of order 3 is visible")
    if h % 3 == 0:
        reasons.append(f"(ii) class number {h} is divisible by 3: an unramified cyclic cubic extension may exist")
    if witness is None:
        return SurjectivityVerdict("fail", tuple(reasons), None)
    if reasons:
        return SurjectivityVerdict("inconclusive", tuple(reasons), witness)
    return SurjectivityVerdict("pass", (f"odd trace at {witness}", f"3 does not divide h = {h}"), witness)


def quadratic_subfield_consistency(N: SexticField, d: int, bound: int = 500):
    """Primes p < bound where Frob_p is a transposition exactly when p is inert in Q(sqrt d).

    Returns the list of offending primes (empty when consistent).
    """
    D = fundamental_discriminant(d)
    bad = []
    for p in primes_below(bound):
        if N.disc % p == 0 or D % p == 0:
            continue
        cls = s3_frobenius(N, p)
        if (cls is S3Class.TRANSPOSITION) != (kronecker(D, p) == -1):
            bad.append(p)
    return bad


# ---------------------------------------------------------------------------
# orchestration


@dataclass
class FSReport:
    sigma_tau: dict = field(default_factory=dict)
    euler_matches: list = field(default_factory=list)
    parity_matches: list = field(default_factory=list)
    sieve_survivors: list = field(default_factory=list)
    sieve_witnesses: dict = field(default_factory=dict)
    sextic_checks: dict = field(default_factory=dict)
    surjectivity: dict = field(default_factory=dict)
    moduli: dict = field(default_factory=dict)
    overall: bool = False
    error: dict | None = None

    def failures(self) -> list[str]:
        """Short localized descriptions of every failed sub-check."""
        out = []
        if self.error:
            out.append(f"error: {self.error['message']}")
        if self.sigma_tau and not self.sigma_tau["ok"]:
            out += [f"sigma-tau: {d}" for d in self.sigma_tau["details"]]
        out += [f"euler {m['tag']}: expected {m['expected']}, computed {m['computed']}"
                for m in self.euler_matches if not m["ok"]]
        out += [f"parity {m['tag']}: parity {m['parity']} vs {m['frobenius']}"
                for m in self.parity_matches if not m["ok"]]
        if self.sextic_checks:
            for key, chk in self.sextic_checks.items():
                if isinstance(chk, dict) and not chk.get("ok", True):
                    out.append(f"sextic {key}: {chk}")
        if self.sieve_survivors is not None and self.sextic_checks.get("sieve", {}).get("ok") is False:
            out.append(f"sieve survivors {self.sieve_survivors}")
        if self.surjectivity and not self.surjectivity["ok"]:
            out.append("surjectivity: " + "; ".join(self.surjectivity["reasons"]))
        if self.moduli and not self.moduli["ok"]:
            m = self.moduli
            if "reason" in m:
                out.append(f"moduli: {m['reason']}")
            elif not m["weighted_equivalent"]:
                out.append(f"moduli: IC over K ({' : '.join(m['ic_K'])}) and IC over Q "
                           f"({' : '.join(m['ic_Q'])}) are not weighted-equivalent")
            else:
                out.append(f"moduli: discriminant of the curve over K is {m['disc_K']}, expected a unit")
        return out

    def to_dict(self) -> dict:
        doc = {
            "schema_version": SCHEMA_VERSION,
            "assumptions": list(ASSUMPTIONS),
            "sigma_tau": self.sigma_tau,
            "euler_matches": self.euler_matches,
            "parity_matches": self.parity_matches,
            "sieve_survivors": self.sieve_survivors,
            "sieve_witnesses": {str(k): v for k, v in sorted(self.sieve_witnesses.items())},
            "sextic_checks": self.sextic_checks,
            "surjectivity": self.surjectivity,
            "moduli": self.moduli,
            "overall": "pass" if self.overall else "fail",
        }
        if self.error is not None:
            doc["error"] = self.error
        return doc

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=False)


def _euler_task(args):
    f, C, P = args
    expected = q_poly(f, P)
    try:
        L = lpoly_of_reduction(C, P)
    except SingularModel as exc:
        return {"tag": P.tag, "norm": P.norm, "ok": False, "expected": str(expected),
                "computed": f"singular reduction ({exc})"}
    computed = L.monic_reversed()
    return {"tag": P.tag, "norm": P.norm, "ok": computed == expected,
            "expected": str(expected), "computed": str(computed)}


def _map(fn, items, jobs):
    if jobs and jobs > 1 and len(items) > 1:
        with ProcessPoolExecutor(max_workers=jobs) as pool:
            return list(pool.map(fn, items))
    return [fn(x) for x in items]


def _prime_key(P: PrimeOfK):
    return (P.norm, P.p, P.tag)


def _moduli_check(C_K, C_Q, ic_K, ic_Q) -> dict:
    """The curve over K and the curve over Q define the same moduli point."""
    same, u = wp_equivalent(ic_K, ic_Q)
    disc_K = curve_discriminant(C_K)
    return {
        "ok": same and abs(disc_K) == 1,
        "ic_K": [str(x) for x in ic_K.as_tuple()],
        "ic_Q": [str(x) for x in ic_Q.as_tuple()],
        "weighted_equivalent": same,
        "u": str(u) if same else None,
        "disc_K": str(disc_K),
        "disc_Q": str(curve_discriminant(C_Q)),
    }


def fs_verify(
    f: BianchiNewform,
    C_K: CurveK,
    C_Q: CurveQ,
    N: SexticField,
    T,
    d_list=(-1, 2, -2, 223, -223, 446, -446),
    allowed_ramification=(2, 223),
    jobs: int = 1,
) -> FSReport:
    """Run the full residual comparison; never raises for mathematical failures."""
    report = FSReport()
    T = sorted(set(T))
    try:
        # 1. Galois symmetry of the eigenvalue table
        st = check_sigma_tau(f)
        report.sigma_tau = {"ok": st.ok, "witnesses": list(st.witnesses), "details": list(st.details)}

        # 2. Euler factors: form versus point counts
        bad_T = [p for p in T if splitting(f.field, p)[0].kind == RAMIFIED]
        if bad_T:
            raise RamifiedPrime(f"primes {bad_T} ramify in K and are excluded from the comparison set")
        primes = set(f.entries)
        for p in T:
            primes.update(splitting(f.field, p))
        primes = sorted(primes, key=_prime_key)
        for P in primes:
            f.eigenvalue(P)  # fail early on a missing entry
        report.euler_matches = _map(_euler_task, [(f, C_K, P) for P in primes], jobs)

        # 3. parity against the S_3 field, away from primes ramified in it
        support = ramification_support(N)
        rational = sorted({P.p for P in primes})
        checked = [p for p in rational if p not in support]
        report.parity_matches = [vars(r) for r in parity_compatibility(f, N, checked)]
        skipped = [p for p in rational if p in support]

        # 4. quadratic subfield sieve with primes of odd trace taken from the data
        odd = odd_parity_primes(f, exclude=set(support) | {2})
        sieve = quad_subfield_sieve(d_list, odd)
        report.sieve_survivors = list(sieve.survivors)
        report.sieve_witnesses = dict(sieve.witnesses)

        # 5. the sextic field
        cert = N.irreducibility_certificate()
        extra = sorted(set(support) - set(allowed_ramification))
        consistency = None
        if len(sieve.survivors) == 1:
            consistency = quadratic_subfield_consistency(N, sieve.survivors[0])
        report.sextic_checks = {
            "disc_support": N.disc_support,
            "ramification": {"ok": not extra, "support": support, "allowed": sorted(allowed_ramification),
                             "certified_unramified": [p for p in N.disc_support if p not in support]},
            "irreducible": {"ok": cert is not None, "witnesses": list(cert) if cert else []},
            "sieve": {"ok": len(sieve.survivors) == 1, "odd_trace_primes": odd,
                      "flagged": [list(x) for x in sieve.flagged]},
            "quadratic_subfield": {"ok": consistency == [], "d": sieve.survivors[0] if consistency is not None else None,
                                   "mismatches": consistency or []},
            "parity_skipped": skipped,
        }

        # 6. residual surjectivity
        h = class_number_imag_quad(f.field.D)
        sv = residual_surjectivity(f, h)
        report.surjectivity = {"ok": sv.ok, "status": sv.status, "class_number": h,
                               "witness": sv.witness, "reasons": list(sv.reasons)}

        # 7. moduli point of the two curves
        try:
            ic_K, ic_Q = igusa_clebsch(C_K.sextic()), igusa_clebsch(C_Q.sextic())
        except NonRationalInvariants as exc:
            report.moduli = {"ok": False, "reason": str(exc)}
            ic_K = None
        if ic_K is not None:
            report.moduli = _moduli_check(C_K, C_Q, ic_K, ic_Q)
    except ParamodularError as exc:
        usage = isinstance(exc, (InputError, RamifiedPrime, UnknownPrime))
        report.error = {"kind": type(exc).__name__, "message": str(exc), "usage": usage}
        report.overall = False
        return report

    report.overall = (
        report.sigma_tau["ok"]
        and all(m["ok"] for m in report.euler_matches)
        and all(m["ok"] for m in report.parity_matches)
        and all(chk["ok"] for chk in report.sextic_checks.values() if isinstance(chk, dict))
        and report.surjectivity["ok"]
        and report.moduli["ok"]
    )
    return report
