"""Acceptance criteria 1 to 8, exact arithmetic throughout.

Each criterion records one PASS/FAIL line; the lines are printed at the end
of the pytest run (see ``conftest.py``) and when this file is run directly.
"""

import io
import json
import random
import time
from contextlib import redirect_stdout

import pytest

from shlie import coalgebra as co
from shlie.cli import main
from shlie.coalgebra import GradedBasis
from shlie.gauge import check_delta_hat_injective, check_theorem1, nonabelian2, so3
from shlie.hom import check_coderivation, coderivation_commutator, gerstenhaber, lift
from shlie.ikeda import (
    SigmaModel,
    check_bbvd_sigma,
    check_divergence_sigma,
    check_gbbvd_sigma,
    check_jacobi_sigma,
    check_kirillov_kostant,
    check_shell_equivalence,
    check_w_axioms,
)
from shlie.jets import JetSpec, euler_operator, total_derivative
from shlie.linfty import build_D, check_ln_relations, check_square_zero, check_strict_family, cross_check, extract_brackets
from shlie.scalars import Poly
from shlie.structure_io import dumps, fixture_dir, load, loads

from conftest import random_hom
from test_linfty import random_gauge

RESULTS = {}


def record(n, ok, detail, seconds, bound):
    ok = ok and seconds < bound
    RESULTS[n] = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail} [{seconds:.1f} s, bound {bound} s]"
    return ok


# 1 ---------------------------------------------------------------------------------

BASES = [
    GradedBasis.uniform(["a"]),
    GradedBasis.uniform(["a", "b"]),
    GradedBasis.uniform(["a", "b", "c"]),
    GradedBasis.uniform(["a", "b", "c", "d"]),
    GradedBasis(("a",), (1,)),
    GradedBasis(("a", "b"), (0, 1)),
    GradedBasis(("a", "b", "c"), (1, 0, 1)),
    GradedBasis(("a", "b", "c", "d"), (0, 1, 1, 0)),
    GradedBasis(("a", "b", "c", "d"), (1, 1, 1, 1)),
]


def test_criterion_1_coalgebra_laws():
    t0 = time.perf_counter()
    words = bad = 0
    for basis in BASES:
        for w in basis.words(6):
            words += 1
            F = {w: 1}
            D = co.coproduct(basis, F)
            if co.coproduct_left(basis, F) != co.coproduct_right(basis, F) or co.twist(basis, D) != D:
                bad += 1
    ok = record(1, bad == 0, f"coassociative and cocommutative on {words} words, {bad} failures",
                time.perf_counter() - t0, 5)
    assert ok


# 2 ---------------------------------------------------------------------------------


def test_criterion_2_coderivation_isomorphism():
    t0 = time.perf_counter()
    rng = random.Random(2)
    maps = []
    for k in range(50):
        dim = 1 + k % 3
        degrees = tuple(rng.choice((0, 1)) for _ in range(dim)) if k % 2 else (0,) * dim
        basis = GradedBasis(tuple(f"g{i}" for i in range(dim)), degrees)
        deg = rng.choice((0, 1)) if k % 2 else 0
        maps.append(random_hom(rng, basis, 3, deg))
    law_fail = sum(not check_coderivation(lift(h), 5)["passed"] for h in maps)
    br_fail = checked = 0
    for k in range(50):
        f = maps[k]
        g = next(m for m in maps[k + 1:] + maps[:k + 1] if m.source == f.source)
        br = lift(gerstenhaber(f, g))
        for w in f.source.words(5):
            checked += 1
            if br.on_word(w) != coderivation_commutator(f, g, {w: 1}):
                br_fail += 1
    ok = record(2, law_fail == 0 and br_fail == 0,
                f"50 maps: coderivation law failures {law_fail}; bracket lift failures {br_fail} of {checked} words",
                time.perf_counter() - t0, 30)
    assert ok


# 3 ---------------------------------------------------------------------------------


@pytest.fixture(scope="module")
def morphism_so3():
    t0 = time.perf_counter()
    rep = check_theorem1(so3(), 4)
    kernel = check_delta_hat_injective(so3(), 3)
    return rep, kernel, time.perf_counter() - t0


def test_criterion_3_bracket_morphism(morphism_so3):
    rep, kernel, seconds = morphism_so3
    k = kernel["kernel_dimension"]
    detail = (f"morphism {rep['morphism']['pairs']} pairs {'pass' if rep['morphism']['passed'] else 'FAIL'}; "
              f"jacobi {rep['jacobi']['triples']} triples {'pass' if rep['jacobi']['passed'] else 'FAIL'}; "
              f"delta_hat kernel at cap 3 is {k} (expected 0)")
    record(3, rep["passed"] and k == 0, detail, seconds, 60)
    assert rep["morphism"]["passed"] and rep["jacobi"]["passed"]


@pytest.mark.xfail(strict=True, reason="the extension kills pi(f_a) = e_a on so(3); its kernel is not zero")
def test_criterion_3_delta_hat_kernel(morphism_so3):
    _, kernel, _ = morphism_so3
    assert kernel["kernel_dimension"] == 0


# 4 ---------------------------------------------------------------------------------


def test_criterion_4_square_zero():
    t0 = time.perf_counter()
    parts = []
    ok = True
    for data in (so3(), nonabelian2()):
        s = build_D(data)
        b = extract_brackets(s)
        sq = check_square_zero(s, 3, 4)
        ln = check_ln_relations(b, 5)
        strict = check_strict_family(s, b)
        ok &= sq["passed"] and ln["passed"] and strict["passed"]
        parts.append(f"{data.name}: square {sq['checked']} words {sq['status']}, relations {ln['checked']} tuples "
                     f"{'pass' if ln['passed'] else 'FAIL'}, l2 semidirect and l_n>=3 zero "
                     f"{'pass' if strict['passed'] else 'FAIL'}")
    ok = record(4, ok, "; ".join(parts), time.perf_counter() - t0, 120)
    assert ok


# 5 ---------------------------------------------------------------------------------


def test_criterion_5_cross_check():
    t0 = time.perf_counter()
    cases = [so3(), nonabelian2(), load(fixture_dir() / "quadratic_fields.toml").gauge,
             random_gauge(11), random_gauge(12, action_arity=3, corr_arity=2)]
    reps = [cross_check(build_D(d), 3) for d in cases]
    ok = all(r["passed"] for r in reps)
    nonzero = sum(check_square_zero(build_D(d), 3, 3)["status"] == "fail" for d in cases)
    ok = record(5, ok, f"{sum(r['checked'] for r in reps)} words over {len(cases)} data sets "
                       f"({nonzero} with nonzero D o D_bar), mismatches {sum(len(r['mismatches']) for r in reps)}",
                time.perf_counter() - t0, 30)
    assert ok


# 6 ---------------------------------------------------------------------------------


def test_criterion_6_jet_calculus():
    t0 = time.perf_counter()
    spec = JetSpec(("u", "v"), ("x", "t"), 6)
    rng = random.Random(6)
    jets = [spec.var(f, *idx) for f in spec.fields for idx in spec.multi_indices(2)] + [Poly.var("k")]
    bad = 0
    for _ in range(100):
        p = Poly()
        for _ in range(rng.randint(1, 4)):
            m = Poly.const(rng.randint(-5, 5))
            for _ in range(rng.randint(1, 4)):
                m = m * rng.choice(jets)
            p = p + m
        dp = total_derivative(p, rng.choice(spec.derivations), spec)
        bad += any(euler_operator(dp, f, spec) for f in spec.fields)
    one = JetSpec(("u",), ("x",), 4)
    u, ux, uxx = one.var("u"), one.var("u", "x"), one.var("u", "x", "x")
    ex1 = not euler_operator(u * ux, "u", one)
    ex2 = euler_operator(ux * ux, "u", one) == -2 * uxx
    ok = record(6, bad == 0 and ex1 and ex2,
                f"100 random total derivatives, {bad} with nonzero Euler image; E(u u_x) = 0 {ex1}; "
                f"E(u_x^2) = -2 u_xx {ex2}", time.perf_counter() - t0, 10)
    assert ok


# 7 ---------------------------------------------------------------------------------


def test_criterion_7_sigma_model():
    t0 = time.perf_counter()
    lin = load(fixture_dir() / "ikeda_so3_linear.toml")
    quad = load(fixture_dir() / "ikeda_quadratic.toml")
    d2 = load(fixture_dir() / "ikeda_d2.toml")
    ml, mq, md = (SigmaModel(s.alg, 2) for s in (lin, quad, d2))

    bl = check_bbvd_sigma(ml)
    a = check_w_axioms(lin.alg)["passed"] and bl["passed"] and not bl["residual"] \
        and check_kirillov_kostant(lin.alg)["passed"]

    geo = mq.geometric_shell(4, 1)
    gq = check_gbbvd_sigma(mq, 4, 1, shell=geo)
    dpsi_only = all(c["certificate"] and all(t["generator"].startswith("Dpsi") for t in c["certificate"])
                    for c in gq["components"])
    el = check_gbbvd_sigma(mq, 4, 1)
    b = (check_w_axioms(quad.alg)["passed"] and not check_bbvd_sigma(mq)["passed"]
         and gq["status"] == "pass" and dpsi_only and el["status"] == "pass")

    c = all(check_jacobi_sigma(m)["passed"] for m in (ml, mq, md))
    d = all(check_divergence_sigma(m)["passed"] for m in (ml, mq, md))
    e = all(check_shell_equivalence(m, 4, 1)["status"] == "pass" for m in (ml, mq, md))
    flags = dict(a=a, b=b, c=c, d=d, e=e)
    ok = record(7, all(flags.values()), ", ".join(f"({k}) {'pass' if v else 'FAIL'}" for k, v in flags.items()),
                time.perf_counter() - t0, 600)
    assert ok


# 8 ---------------------------------------------------------------------------------


def _cli(*argv):
    buf = io.StringIO()
    with redirect_stdout(buf):
        code = main(list(argv))
    return code, buf.getvalue()


def _strip(obj):
    if isinstance(obj, dict):
        return {k: _strip(v) for k, v in obj.items() if k != "seconds"}
    if isinstance(obj, list):
        return [_strip(v) for v in obj]
    return obj


def test_criterion_8_cli_contract():
    t0 = time.perf_counter()
    paths = sorted(fixture_dir().glob("*.toml"))
    round_trip = all(dumps(loads(p.read_text())) == p.read_text() for p in paths)
    code_b, out_b = _cli("verify", "ikeda_quadratic", "--suite", "bbvd", "--json")
    code_g, out_g = _cli("verify", "ikeda_quadratic", "--suite", "gbbvd", "--json")
    verdicts = (json.loads(out_b)["status"], json.loads(out_g)["status"])
    differ = verdicts == ("fail", "pass") and code_b != 0 and code_g == 0
    runs = [_strip(json.loads(_cli("verify", "ikeda_d2", "--json")[1])) for _ in range(2)]
    deterministic = runs[0] == runs[1]
    ok = record(8, round_trip and differ and deterministic,
                f"{len(paths)} fixtures round-trip {round_trip}; bbvd/gbbvd on ikeda_quadratic {verdicts[0]}/{verdicts[1]}; "
                f"repeated JSON identical {deterministic}", time.perf_counter() - t0, 60)
    assert ok


if __name__ == "__main__":
    raise SystemExit(pytest.main([__file__, "-q", "-p", "no:cacheprovider"]))
