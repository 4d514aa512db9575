"""Command line entry point: ``paramodular <subcommand> ...``.

Exit status is 0 on success, 1 when a verification finds a mismatch and 2 on
usage or input errors.  Set PARAMODULAR_DATA to use a data directory other
than the bundled one.
"""

from __future__ import annotations

import argparse
import json
import os
import sys
from fractions import Fraction
from importlib import resources
from pathlib import Path

from .arith import class_number_imag_quad
from .bianchi import BianchiNewform, euler_factor_K, load_newform_file, q_poly
from .curves import CurveK, count_points, load_curve_file, lpoly_of_reduction, reduce_curve
from .errors import InputError, ParamodularError, RamifiedPrime, UnknownPrime
from .faltings_serre import (
    FSReport,
    fs_verify,
    load_sextic,
    odd_parity_primes,
    quad_subfield_sieve,
)
from .invariants import curve_discriminant, humbert_point, igusa_clebsch
from .lift import functional_equation, paramodular_level, spinor_table
from .quadratic import parse_ideal_tag

EXIT_OK, EXIT_MISMATCH, EXIT_USAGE = 0, 1, 2


def default_data_dir() -> Path:
    env = os.environ.get("PARAMODULAR_DATA")
    if env:
        return Path(env)
    return Path(str(resources.files("paramodular") / "data"))


def _read_json(path: Path):
    try:
        return json.loads(Path(path).read_text(encoding="utf-8"))
    except FileNotFoundError:
        raise InputError(f"{path}: no such file") from None
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: not valid JSON ({exc})") from None


class Bundle:
    """Paths and parameters of a verification run."""

    def __init__(self, data_dir: Path, manifest: dict | None = None):
        self.data_dir = Path(data_dir)
        if manifest is None:
            if not (self.data_dir / "bundle.json").exists():
                raise InputError(f"{self.data_dir} does not contain bundle.json")
            manifest = _read_json(self.data_dir / "bundle.json")
        self.manifest = manifest

    def path(self, key) -> Path:
        return self.data_dir / self.manifest[key]

    def form(self) -> BianchiNewform:
        return load_newform_file(self.path("form"))

    def curve_K(self):
        return load_curve_file(self.path("curve_K"))

    def curve_Q(self):
        return load_curve_file(self.path("curve_Q"))

    def sextic(self):
        return load_sextic(_read_json(self.path("sextic")))


def _bundle(args) -> Bundle:
    if getattr(args, "bundle", "builtin") in (None, "builtin"):
        return Bundle(args.data_dir)
    p = Path(args.bundle)
    return Bundle(p.parent, _read_json(p))


def _form_from(args, bundle=None) -> BianchiNewform:
    src = getattr(args, "form", None)
    if src in (None, "builtin"):
        return (bundle or Bundle(args.data_dir)).form()
    return load_newform_file(src)


def _curve_arg(args, name):
    """A curve document given as a path, or by name inside the data directory.

    ``C.kcurve`` style names resolve to ``C.json`` in the data directory.
    """
    p = Path(name)
    for cand in (p, Path(args.data_dir) / p, Path(args.data_dir) / (p.stem + ".json")):
        if cand.exists():
            return load_curve_file(cand)
    raise InputError(f"{name}: no such curve document")


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.replace(" ", "").split(",") if x]
    except ValueError:
        raise argparse.ArgumentTypeError(f"expected comma-separated integers, got {text!r}") from None


def _out(args, text_lines, payload):
    if args.format == "json":
        print(json.dumps(payload, indent=2))
    else:
        print("\n".join(text_lines))


# ---------------------------------------------------------------------------
# report rendering


def render_report(report: FSReport, fmt: str = "text") -> str:
    if fmt == "json":
        return report.to_json()
    doc = report.to_dict()
    L = [f"schema_version: {doc['schema_version']}", "assumptions:"]
    L += [f"  - {a}" for a in doc["assumptions"]]
    if report.sigma_tau:
        L.append(f"sigma-tau symmetry: {'PASS' if report.sigma_tau['ok'] else 'FAIL'}")
        L += [f"  {d}" for d in report.sigma_tau["details"]]
    if report.euler_matches:
        L.append("euler factors (form vs point counts on the curve over K):")
        for m in report.euler_matches:
            if m["ok"]:
                L.append(f"  {m['tag']:<12} N={m['norm']:<4} PASS  {m['expected']}")
            else:
                L.append(f"  {m['tag']:<12} N={m['norm']:<4} FAIL  expected {m['expected']}  computed {m['computed']}")
    if report.parity_matches:
        L.append("trace parity vs S3 Frobenius:")
        for m in report.parity_matches:
            L.append(f"  {m['tag']:<12} parity={m['parity']} frob={m['frobenius']:<13} {'PASS' if m['ok'] else 'FAIL'}")
    sc = report.sextic_checks
    if sc:
        if sc.get("parity_skipped"):
            L.append(f"  skipped (ramified in the sextic field): {sc['parity_skipped']}")
        sieve = sc["sieve"]
        L.append(f"quadratic subfield sieve with odd-trace primes {sieve['odd_trace_primes']}: "
                 f"survivors {report.sieve_survivors} {'PASS' if sieve['ok'] else 'FAIL'}")
        for d, p in sorted(report.sieve_witnesses.items()):
            L.append(f"  d = {d} eliminated by p = {p}")
        ram = sc["ramification"]
        L.append(f"sextic ramification support {ram['support']} within {ram['allowed']}: {'PASS' if ram['ok'] else 'FAIL'}"
                 f" (disc support {sc['disc_support']}, certified unramified {ram['certified_unramified']})")
        irr = sc["irreducible"]
        L.append(f"sextic irreducible (patterns 2x3, 3x2 at {irr['witnesses']}): {'PASS' if irr['ok'] else 'FAIL'}")
        qs = sc["quadratic_subfield"]
        L.append(f"sextic quadratic subfield Q(sqrt {qs['d']}) consistent with Frobenius: {'PASS' if qs['ok'] else 'FAIL'}")
    if report.surjectivity:
        s = report.surjectivity
        L.append(f"residual surjectivity (h = {s['class_number']}): {s['status'].upper()}")
        L += [f"  {r}" for r in s["reasons"]]
    if report.moduli:
        m = report.moduli
        if "reason" in m:
            L.append(f"moduli: FAIL ({m['reason']})")
        else:
            L.append(f"moduli: IC over K ({', '.join(m['ic_K'])}), disc {m['disc_K']}; "
                     f"curve over Q equivalent with u = {m['u']}: {'PASS' if m['ok'] else 'FAIL'}")
    if report.error:
        L.append(f"error: {report.error['kind']}: {report.error['message']}")
    L.append(f"overall: {'PASS' if report.overall else 'FAIL'}")
    return "\n".join(L)


# ---------------------------------------------------------------------------
# subcommands


def cmd_verify(args) -> int:
    bundle = _bundle(args)
    f = _form_from(args, bundle)
    C_K = _curve_arg(args, args.curve) if args.curve else bundle.curve_K()
    C_Q = _curve_arg(args, args.curve_q) if args.curve_q else bundle.curve_Q()
    N = load_sextic(_read_json(args.sextic)) if args.sextic else bundle.sextic()
    if not isinstance(C_K, CurveK):
        raise InputError("--curve must be a curve over K")
    T = args.primes if args.primes is not None else bundle.manifest["comparison_primes"]
    report = fs_verify(
        f, C_K, C_Q, N, T,
        d_list=bundle.manifest.get("quadratic_subfield_candidates", (-1, 2, -2, 223, -223, 446, -446)),
        allowed_ramification=bundle.manifest.get("allowed_ramification", (2, 223)),
        jobs=args.jobs,
    )
    print(render_report(report, args.format))
    if report.overall:
        return EXIT_OK
    if report.error and report.error.get("usage"):
        return EXIT_USAGE
    for line in report.failures():
        print(line, file=sys.stderr)
    return EXIT_MISMATCH


def cmd_euler(args) -> int:
    f = _form_from(args)
    if args.prime:
        primes = [parse_ideal_tag(f.field, args.prime)]
    else:
        primes = sorted(f.entries, key=lambda P: (P.norm, P.tag))
    curve = _curve_arg(args, args.curve) if args.curve else None
    rows, lines = [], []
    for P in primes:
        row = {"tag": P.tag, "norm": P.norm, "form_factor": str(euler_factor_K(f, P)),
               "quartic": str(q_poly(f, P))}
        line = f"{P.tag:<12} N={P.norm:<4} {row['quartic']}"
        if curve is not None:
            row["curve_quartic"] = str(lpoly_of_reduction(curve, P).monic_reversed())
            line += f"   curve: {row['curve_quartic']}"
        rows.append(row)
        lines.append(line)
    _out(args, lines, rows)
    return EXIT_OK


def _fmt_q(x: Fraction) -> str:
    return str(x)


def cmd_lift(args) -> int:
    f = _form_from(args)
    N = paramodular_level(f.field.D, f.level_norm)
    fe = functional_equation(f)
    rows, lines = [], [f"paramodular level N = {N}",
                       f"functional equation: gamma exponent {fe.gamma_exponent}, conductor {fe.conductor}, "
                       f"sign {'unknown' if fe.sign is None else fe.sign}"]
    for p, kind, S, E, note in spinor_table(f):
        if S is None:
            rows.append({"p": p, "kind": kind, "note": note})
            lines.append(f"p = {p:<4} {kind:<8} {note}")
            continue
        flag = "" if E.mu_is_integral else "  (mu not integral)"
        rows.append({"p": p, "kind": kind, "factor": str(S), "lambda": _fmt_q(E.lam), "mu": _fmt_q(E.mu)})
        lines.append(f"p = {p:<4} {kind:<8} {S}   lambda = {E.lam}, mu = {E.mu}{flag}")
    _out(args, lines, {"level": N, "factors": rows})
    return EXIT_OK


def cmd_invariants(args) -> int:
    C = _curve_arg(args, args.curve) if args.curve else Bundle(args.data_dir).curve_K()
    ic = igusa_clebsch(C.sextic())
    disc = curve_discriminant(C)
    payload = {"I2": str(ic.I2), "I4": str(ic.I4), "I6": str(ic.I6), "I10": str(ic.I10), "discriminant": str(disc)}
    _out(args, [f"Igusa-Clebsch {ic}", f"discriminant {disc}"], payload)
    return EXIT_OK


def cmd_humbert(args) -> int:
    try:
        r, s = Fraction(args.r), Fraction(args.s)
    except (ValueError, ZeroDivisionError):
        raise InputError("r and s must be rationals such as 8 or -3/2") from None
    h = humbert_point(r, s)
    payload = {"r": str(r), "s": str(s), "z_squared": str(h.z_squared), "ic": [str(x) for x in h.ic.as_tuple()]}
    _out(args, [f"(r, s) = ({r}, {s})", f"IC {h.ic}", f"z^2 = {h.z_squared}"], payload)
    return EXIT_OK


def cmd_classnumber(args) -> int:
    h = class_number_imag_quad(args.D)
    _out(args, [str(h)], {"D": args.D, "class_number": h})
    return EXIT_OK


def cmd_sieve(args) -> int:
    d_list = args.d if args.d is not None else Bundle(args.data_dir).manifest["quadratic_subfield_candidates"]
    if args.primes is not None:
        primes = args.primes
    else:
        bundle = Bundle(args.data_dir)
        support = bundle.sextic().support
        primes = odd_parity_primes(bundle.form(), exclude=set(support) | {2})
    res = quad_subfield_sieve(d_list, primes)
    lines = [f"primes {sorted(primes)}", f"survivors {list(res.survivors)}"]
    lines += [f"d = {d} eliminated by {p}" for d, p in sorted(res.witnesses.items())]
    _out(args, lines, {"primes": sorted(primes), "survivors": list(res.survivors),
                       "witnesses": {str(d): p for d, p in sorted(res.witnesses.items())}})
    return EXIT_OK


def cmd_count(args) -> int:
    C = _curve_arg(args, args.curve)
    if isinstance(C, CurveK):
        P = parse_ideal_tag(C.field, args.prime)
    else:
        try:
            P = int(args.prime)
        except ValueError:
            raise InputError("a curve over Q needs a rational prime") from None
    red = reduce_curve(C, P, args.degree)
    n = count_points(red)
    _out(args, [str(n)], {"curve": str(red), "q": red.q, "count": n})
    return EXIT_OK


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(prog="paramodular", description=__doc__.splitlines()[0])
    parser.add_argument("--data-dir", type=Path, default=None, help="data directory (default: bundled, or $PARAMODULAR_DATA)")
    parser.add_argument("--format", choices=("text", "json"), default="text")
    sub = parser.add_subparsers(dest="command", required=True, metavar="COMMAND")

    v = sub.add_parser("verify", help="run the full residual comparison")
    v.add_argument("--bundle", default="builtin", help="'builtin' or a bundle.json manifest")
    v.add_argument("--form", help="newform document (overrides the bundle)")
    v.add_argument("--curve", help="curve over K (overrides the bundle)")
    v.add_argument("--curve-q", help="curve over Q (overrides the bundle)")
    v.add_argument("--sextic", help="sextic document (overrides the bundle)")
    v.add_argument("--primes", type=_int_list, help="comparison primes T, comma separated")
    v.add_argument("--jobs", type=int, default=1, help="worker processes for per-prime work")
    v.set_defaults(func=cmd_verify)

    e = sub.add_parser("euler", help="degree-4 Euler factors from the form (and optionally a curve)")
    e.add_argument("--form", default="builtin")
    e.add_argument("--prime", help="ideal tag such as '[7, 2w+5]'; default all tabulated primes")
    e.add_argument("--curve", help="also count points on this curve over K")
    e.set_defaults(func=cmd_euler)

    li = sub.add_parser("lift", help="spinor factors and Hecke eigenvalues of the lift")
    li.add_argument("--form", default="builtin")
    li.set_defaults(func=cmd_lift)

    i = sub.add_parser("invariants", help="Igusa-Clebsch invariants and discriminant of a curve")
    i.add_argument("--curve", help="curve document (default: the bundled curve over K)")
    i.set_defaults(func=cmd_invariants)

    h = sub.add_parser("humbert", help="evaluate the Humbert surface parametrization at (r, s)")
    h.add_argument("r")
    h.add_argument("s")
    h.set_defaults(func=cmd_humbert)

    c = sub.add_parser("classnumber", help="class number of an imaginary quadratic field")
    c.add_argument("D", type=int, help="negative fundamental discriminant")
    c.set_defaults(func=cmd_classnumber)

    s = sub.add_parser("sieve", help="quadratic subfield sieve")
    s.add_argument("--d", type=_int_list, help="candidate d values (default: from the bundle)")
    s.add_argument("--primes", type=_int_list, help="odd-trace primes (default: computed from the bundled form)")
    s.set_defaults(func=cmd_sieve)

    n = sub.add_parser("count", help="count points on a curve modulo a prime")
    n.add_argument("--curve", required=True)
    n.add_argument("--prime", required=True, help="ideal tag for a curve over K, integer for a curve over Q")
    n.add_argument("--degree", type=int, default=1, help="count over the extension of this degree")
    n.set_defaults(func=cmd_count)

    # accept --format after the subcommand too
    for p in (v, e, li, i, h, c, s, n):
        p.add_argument("--format", choices=("text", "json"), default=argparse.SUPPRESS)
    return parser


def run_command(argv=None) -> int:
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code not in (0, None) else EXIT_OK
    if args.data_dir is None:
        args.data_dir = default_data_dir()
    try:
        return args.func(args)
    except (InputError, RamifiedPrime, UnknownPrime) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except ParamodularError as exc:
        print(f"error: {type(exc).__name__}: {exc}", file=sys.stderr)
        return EXIT_MISMATCH


def main():
    sys.exit(run_command())


if __name__ == "__main__":
    main()
