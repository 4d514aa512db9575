"""Bianchi newforms carried as Hecke eigenvalue tables over Z[sqrt 2]."""

from __future__ import annotations

import json
import dataclasses
from dataclasses import dataclass
from pathlib import Path

from .arith import IntPoly
from .errors import NontrivialCharacter, OddWeight, SchemaError, UnknownPrime
from .quadratic import (
    INERT,
    SPLIT,
    ImagQuadField,
    PrimeOfK,
    RmElement,
    conj_prime,
    parse_ideal_tag,
    rm_tau,
)

COEFFICIENT_RING = "Z[sqrt2]"


@dataclass(frozen=True)
class BianchiNewform:
    field: ImagQuadField
    level_norm: int
    weight: int
    entries: dict = dataclasses.field(hash=False)  # PrimeOfK -> RmElement, document order
    level_primes: frozenset = frozenset()
    label: str = ""

    def eigenvalue(self, P: PrimeOfK) -> RmElement:
        try:
            return self.entries[P]
        except KeyError:
            raise UnknownPrime(f"no eigenvalue recorded at {P.tag}") from None

    def primes(self) -> list[PrimeOfK]:
        return list(self.entries)

    def primes_above(self, p: int) -> list[PrimeOfK]:
        return [P for P in self.entries if P.p == p]

    def rational_primes(self) -> list[int]:
        return sorted({P.p for P in self.entries})


@dataclass(frozen=True)
class EulerFactorK:
    """1 + c_1 x + c_2 x^2 in x = N(P)^(-s), coefficients in Z[sqrt 2]."""

    prime: PrimeOfK
    coeffs: tuple

    def __call__(self, x):
        acc = RmElement(0, 0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __str__(self):
        parts = ["1"]
        for i, c in enumerate(self.coeffs[1:], start=1):
            if c == RmElement(0, 0):
                continue
            mono = "x" if i == 1 else f"x^{i}"
            parts.append(f"({c}){mono}")
        return " + ".join(parts)


def _require(doc, key, kind):
    if key not in doc:
        raise SchemaError(f"newform document is missing {key!r}")
    value = doc[key]
    if kind is int and (isinstance(value, bool) or not isinstance(value, int)):
        raise SchemaError(f"{key!r} must be an integer, got {value!r}")
    if kind is not int and not isinstance(value, kind):
        raise SchemaError(f"{key!r} has the wrong type")
    return value


def load_newform(doc) -> BianchiNewform:
    """Validate a parsed newform document and build the form."""
    if not isinstance(doc, dict):
        raise SchemaError("newform document must be a mapping")
    D = _require(doc, "field_discriminant", int)
    level_norm = _require(doc, "level_norm", int)
    weight = _require(doc, "weight", int)
    character = _require(doc, "character", str)
    ring = _require(doc, "coefficient_ring", str)
    raw_entries = _require(doc, "entries", list)
    if level_norm < 1:
        raise SchemaError("level_norm must be positive")
    if weight % 2:
        raise OddWeight(f"weight {weight} is odd; the lift needs even weight")
    if weight < 2:
        raise SchemaError("weight must be at least 2")
    if character != "trivial":
        raise NontrivialCharacter(f"character {character!r} is not trivial")
    if ring != COEFFICIENT_RING:
        raise SchemaError(f"coefficient_ring must be {COEFFICIENT_RING!r}")
    K = ImagQuadField(D)

    entries: dict = {}
    for rec in raw_entries:
        if not isinstance(rec, dict) or set(rec) != {"tag", "a", "b"}:
            raise SchemaError(f"entry {rec!r} must have exactly the keys tag, a, b")
        a, b = rec["a"], rec["b"]
        if not all(isinstance(v, int) and not isinstance(v, bool) for v in (a, b)):
            raise SchemaError(f"entry {rec['tag']!r}: a and b must be integers")
        P = parse_ideal_tag(K, rec["tag"])
        if P in entries:
            raise SchemaError(f"duplicate entry for {P.tag}")
        entries[P] = RmElement(a, b)
    for P in entries:
        if P.kind == SPLIT and conj_prime(P) not in entries:
            raise SchemaError(f"entry for {P.tag} present but its conjugate {conj_prime(P).tag} is missing")

    level_primes = frozenset(parse_ideal_tag(K, t) for t in doc.get("level_primes", []))
    for P in level_primes:
        if level_norm % P.norm:
            raise SchemaError(f"level prime {P.tag} does not divide the level norm {level_norm}")
    if level_norm > 1 and not level_primes:
        raise SchemaError("level_primes must list the primes dividing the level when level_norm > 1")
    return BianchiNewform(K, level_norm, weight, entries, level_primes, doc.get("label", ""))


def load_newform_file(path) -> BianchiNewform:
    try:
        doc = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise SchemaError(f"{path}: not valid JSON ({exc})") from None
    return load_newform(doc)


def dump_newform(f: BianchiNewform) -> dict:
    doc = {}
    if f.label:
        doc["label"] = f.label
    doc.update({
        "field_discriminant": f.field.D,
        "level_norm": f.level_norm,
        "weight": f.weight,
        "character": "trivial",
        "coefficient_ring": COEFFICIENT_RING,
    })
    if f.level_primes:
        doc["level_primes"] = sorted(P.tag for P in f.level_primes)
    doc["entries"] = [{"tag": P.tag, "a": a.a, "b": a.b} for P, a in f.entries.items()]
    return doc


def euler_factor_K(f: BianchiNewform, P: PrimeOfK) -> EulerFactorK:
    a = f.eigenvalue(P)
    if P in f.level_primes:
        return EulerFactorK(P, (RmElement(1), -a))
    return EulerFactorK(P, (RmElement(1), -a, RmElement(P.norm)))


def q_poly(f: BianchiNewform, P: PrimeOfK) -> IntPoly:
    """Monic quartic (x^2 - a x + N)(x^2 - tau(a) x + N) over Z."""
    a = f.eigenvalue(P)
    trace, norm = a.trace(), a.norm()
    if P in f.level_primes:
        return IntPoly((norm, -trace, 1))
    n = P.norm
    return IntPoly((n * n, -trace * n, 2 * n + norm, -trace, 1))


@dataclass(frozen=True)
class SigmaTauVerdict:
    ok: bool
    witnesses: tuple = ()  # rational primes where the symmetry fails
    details: tuple = ()


def check_sigma_tau(f: BianchiNewform) -> SigmaTauVerdict:
    """Audit a_{sigma(P)} = tau(a_P) for split P and tau-invariance elsewhere."""
    bad, details = set(), []
    for P, a in f.entries.items():
        if P.kind == SPLIT:
            Q = conj_prime(P)
            b = f.entries.get(Q)
            if b != rm_tau(a):
                bad.add(P.p)
                details.append(f"{P.tag}: a = {a} but a at {Q.tag} is {b}, expected {rm_tau(a)}")
        elif not a.is_rational():
            bad.add(P.p)
            kind = "inert" if P.kind == INERT else "ramified"
            details.append(f"{P.tag}: {kind} entry {a} is not tau-fixed")
    return SigmaTauVerdict(not bad, tuple(sorted(bad)), tuple(details))
