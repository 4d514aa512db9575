"""Acceptance criteria, one test per criterion.

A summary line per criterion is printed at the end of the pytest run.
"""

import contextlib
import io
import json
import random
import shutil
from fractions import Fraction

import pytest

from paramodular.arith import IntPoly, class_number_imag_quad, ddf_type, is_fundamental, primes_below
from paramodular.bianchi import q_poly
from paramodular.cli import EXIT_MISMATCH, EXIT_OK, run_command
from paramodular.curves import count_points, lpoly_from_counts, reduce_curve
from paramodular.errors import RamifiedPrime
from paramodular.faltings_serre import (
    odd_parity_primes,
    parity_compatibility,
    quad_subfield_sieve,
    ramification_support,
    s3_frobenius,
)
from paramodular.invariants import curve_discriminant, humbert_point, igusa_clebsch, wp_equivalent
from paramodular.lift import (
    arakawa_eigen,
    factor_val0,
    gsp4_similitude,
    lparam_matrix,
    monic_reversed,
    paramodular_level,
    spinor_factor,
)
from paramodular.quadratic import INERT, RAMIFIED, SPLIT, parse_ideal_tag

from conftest import EIGEN_TABLE
from test_arith import _analytic_class_number, _naive_class_number

T = (3, 5, 7, 19, 29, 31)


def test_criterion_1_eigenvalue_table(form):
    assert len(EIGEN_TABLE) == 14
    for tag, eig, quartic in EIGEN_TABLE:
        P = parse_ideal_tag(form.field, tag)
        assert str(form.eigenvalue(P)) == eig
        assert str(q_poly(form, P)) == quartic


def test_criterion_2_curve_form_euler_match(form, curve_K):
    norms = set()
    for P in form.primes():
        if P.kind == RAMIFIED or P.norm > 961:
            continue
        red = reduce_curve(curve_K, P)
        L = lpoly_from_counts(count_points(red), count_points(red.base_change(2)), red.q)
        assert L.monic_reversed() == q_poly(form, P), P.tag
        norms.add(P.norm)
    assert norms == {2, 7, 9, 17, 19, 25, 29, 31}
    red = reduce_curve(curve_K, parse_ideal_tag(curve_K.field, "[2, w+1]"))
    assert count_points(red) == 5
    assert count_points(red.base_change(2)) == 7


def test_criterion_3_igusa_clebsch(curve_K, curve_Q):
    assert igusa_clebsch(curve_K.sextic()).as_tuple() == (-24, -540, 4968, 4096)
    assert curve_discriminant(curve_K) == 1
    assert abs(curve_discriminant(curve_Q)) == 2**20 * 223**15


def test_criterion_4_humbert_identification(curve_Q):
    h = humbert_point(8, -2)
    assert h.z_squared == 13768
    same, u = wp_equivalent(h.ic, igusa_clebsch(curve_Q.sextic()))
    assert same, f"IC at (8, -2) is {h.ic}, not weighted-equivalent to IC(C') = {igusa_clebsch(curve_Q.sextic())}"
    assert u**5 * h.ic.I10 == igusa_clebsch(curve_Q.sextic()).I10


def test_criterion_5_class_numbers():
    assert class_number_imag_quad(-223) == 7
    ds = [D for D in range(-499, 0) if is_fundamental(D)]
    assert len(ds) > 100
    for D in ds:
        h = class_number_imag_quad(D)
        assert h == _naive_class_number(D) == _analytic_class_number(D), D


def test_criterion_6_sieve(form, sextic):
    odd = odd_parity_primes(form, exclude=set(ramification_support(sextic)) | {2})
    assert odd == [3, 17, 29]
    r = quad_subfield_sieve([-1, 2, -2, 223, -223, 446, -446], odd)
    assert r.survivors == (223,)
    assert r.witnesses == {-1: 3, 2: 3, -223: 3, 446: 3, -2: 29, -446: 29}


def test_criterion_7_sextic_checks(form, sextic):
    support = ramification_support(sextic)
    assert set(support) <= {2, 223}
    types = set()
    for p in primes_below(5000):
        if p in support:
            continue
        if sextic.disc % p:
            types.add(ddf_type(sextic.poly, p).parts)
        else:
            s3_frobenius(sextic, p)  # certified unramified: regular type or UnexpectedType
    assert types <= {((1, 6),), ((2, 3),), ((3, 2),)}
    # parity at every odd prime of the table and above T; the primes above 2
    # ramify in the sextic field, where the Frobenius class is undefined
    rational = sorted({P.p for P in form.primes()} | set(T))
    assert 2 in rational
    with pytest.raises(RamifiedPrime):
        s3_frobenius(sextic, 2)
    results = parity_compatibility(form, sextic, [p for p in rational if p != 2])
    tags = {r.tag for r in results}
    for P in form.primes():
        if P.p != 2:
            assert P.tag in tags
    assert results and all(r.ok for r in results)


def test_criterion_8_lift_dictionary(form):
    assert paramodular_level(-223, 1) == 49729
    for P in form.primes():
        S = spinor_factor(form, P.p)
        if P.kind == SPLIT:
            assert monic_reversed(S) == q_poly(form, P)
        else:
            assert P.kind == INERT
            assert S.coeff(1) == S.coeff(3) == 0
            y = monic_reversed(S)
            assert IntPoly([y.coeffs[0], y.coeffs[2], y.coeffs[4]]) ** 2 == q_poly(form, P)
        e = arakawa_eigen(S, 2)
        assert factor_val0(e.lam, e.mu, P.p, 2) == S
    rng = random.Random(11)
    for _ in range(200):
        lam = Fraction(rng.randint(-99, 99), rng.randint(1, 30))
        mu = Fraction(rng.randint(-99, 99), rng.randint(1, 30))
        p = rng.choice([2, 3, 5, 7, 11, 13])
        e = arakawa_eigen(factor_val0(lam, mu, p, 2), 2)
        assert (e.lam, e.mu) == (lam, mu)


def _exact_nu(M):
    """Independent oracle: nu from explicit index sums for M^t J M."""
    J = [[0, 0, 1, 0], [0, 0, 0, 1], [-1, 0, 0, 0], [0, -1, 0, 0]]
    m = [list(r) for r in M.rows]
    G = [[sum(m[k][i] * J[k][l] * m[l][j] for k in range(4) for l in range(4)) for j in range(4)] for i in range(4)]
    nu = G[0][2]
    assert all(G[i][j] == nu * J[i][j] for i in range(4) for j in range(4))
    return nu


def test_criterion_9_lparam_matrices():
    cases = [
        (lparam_matrix("arch_j", 2), 1),
        (lparam_matrix("arch_j", 4), 1),
        (lparam_matrix("arch_j", 3), -1),
        (lparam_matrix("phi_g0", 1, 0, 0, 1), 1),
        (lparam_matrix("split", ((1, 0), (0, 1)), ((1, 0), (0, 1))), 1),
    ]
    for M, nu in cases:
        assert gsp4_similitude(M) == nu == _exact_nu(M)


def _run(argv):
    out, err = io.StringIO(), io.StringIO()
    with contextlib.redirect_stdout(out), contextlib.redirect_stderr(err):
        code = run_command(argv)
    return code, out.getvalue(), err.getvalue()


def _perturbations(rng, count):
    """Seeded single-bit flips of eigenvalue components and curve coefficients."""
    kinds = ["eigenvalue"] * (count // 2) + ["C"] * (count // 3)
    kinds += ["C'"] * (count - len(kinds))
    for kind in kinds:
        bit = rng.randrange(5)
        if kind == "eigenvalue":
            yield kind, ("f223.json", "entries", rng.randrange(14), rng.choice("ab"), bit)
        elif kind == "C":
            key = rng.choice("PQ")
            yield kind, ("C.json", key, rng.randrange(7 if key == "P" else 4), rng.randrange(2), bit)
        else:
            yield kind, ("Cprime.json", "F", rng.randrange(7), None, bit)


def _apply(doc, path):
    _, key, i, j, bit = path
    if key == "entries":
        entry = doc["entries"][i]
        entry[j] ^= 1 << bit
        return entry["tag"]
    if j is None:
        doc[key][i] ^= 1 << bit
    else:
        doc[key][i][j] ^= 1 << bit
    return None


def test_criterion_10_full_pipeline(tmp_path, data_dir):
    code, out, _ = _run(["verify", "--bundle", "builtin"])
    assert code == EXIT_OK and out.splitlines()[-1] == "overall: PASS"
    rng = random.Random(20240)
    seen = set()
    n = 0
    for kind, path in _perturbations(rng, 60):
        if path in seen:
            continue
        seen.add(path)
        work = tmp_path / f"run{n}"
        work.mkdir()
        for f in data_dir.glob("*.json"):
            shutil.copy(f, work / f.name)
        doc = json.loads((work / path[0]).read_text())
        tag = _apply(doc, path)
        (work / path[0]).write_text(json.dumps(doc))
        code, out, err = _run(["--data-dir", str(work), "verify"])
        assert code == EXIT_MISMATCH, (kind, path, err)
        assert out.splitlines()[-1] == "overall: FAIL"
        if kind == "eigenvalue":
            assert tag in err, (path, err)
        elif kind == "C":
            assert "euler [" in err or "moduli:" in err, (path, err)
        else:
            assert "moduli:" in err, (path, err)
        n += 1
    assert n >= 50
