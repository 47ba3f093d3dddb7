import itertools

import pytest

from shlie.ikeda import (
    AxiomError,
    NonlinearLieAlgebra,
    SigmaModel,
    check_bbvd_sigma,
    check_divergence_sigma,
    check_gbbvd_sigma,
    check_jacobi_sigma,
    check_kirillov_kostant,
    check_poisson_jacobi,
    check_shell_equivalence,
    check_w_axioms,
    field_sector_gauge_data,
    poisson_bracket,
    structure_constants,
)
from shlie.jets import OnShellContext, shell_membership, verify_certificate
from shlie.scalars import Poly

T = ("T1", "T2", "T3")
T1, T2, T3 = (Poly.var(n) for n in T)


def so3_linear():
    return NonlinearLieAlgebra.from_table(T, {("T1", "T2"): "T3", ("T2", "T3"): "T1", ("T3", "T1"): "T2"}, "so3")


def quadratic():
    return NonlinearLieAlgebra.from_table(
        T, {("T1", "T2"): "T3 + T3^2", ("T2", "T3"): "T1 + T1^2", ("T3", "T1"): "T2 + T2^2"}, "quad")


def d2():
    return NonlinearLieAlgebra.from_table(("T1", "T2"), {("T1", "T2"): "T1*T2"}, "d2")


def zero_w(d=2):
    return NonlinearLieAlgebra(tuple(f"T{i + 1}" for i in range(d)), {}, "free")


@pytest.mark.parametrize("alg", [zero_w(), so3_linear(), d2(), quadratic()], ids=lambda a: a.label)
def test_w_axioms_pass(alg):
    assert check_w_axioms(alg)["passed"]


def test_nambu_type_w_passes():
    # eps_ABC g(T_C) is Poisson for any g, even without a linear part
    alg = NonlinearLieAlgebra.from_table(T, {("T1", "T2"): "T3^2", ("T2", "T3"): "T1", ("T3", "T1"): "T2"})
    assert check_w_axioms(alg)["passed"]


def test_w_axioms_detect_failure():
    bad = NonlinearLieAlgebra.from_table(T, {("T1", "T2"): "T1*T2", ("T2", "T3"): "T1", ("T3", "T1"): "T2"}, "bad")
    rep = check_w_axioms(bad)
    assert not rep["passed"] and rep["jacobi_failures"]


def test_from_table_rejects_inconsistent_entries():
    with pytest.raises(AxiomError):
        NonlinearLieAlgebra.from_table(T, {("T1", "T2"): "T3", ("T2", "T1"): "T3"})
    with pytest.raises(AxiomError):
        NonlinearLieAlgebra.from_table(T, {("T1", "T1"): "T2"})
    with pytest.raises(AxiomError):
        NonlinearLieAlgebra.from_table(T, {("T1", "T2"): "Q"})


def test_poisson_bracket_examples():
    alg = quadratic()
    assert poisson_bracket(T1, T2, alg) == alg.w(0, 1)
    assert not poisson_bracket(T1, T1, alg)
    assert poisson_bracket(T1, T2 * T3, alg) == alg.w(0, 1) * T3 + alg.w(0, 2) * T2


def test_kirillov_kostant_and_structure_constants():
    alg = so3_linear()
    assert structure_constants(alg)[(0, 1)] == {2: 1}
    assert check_kirillov_kostant(alg)["passed"]
    with pytest.raises(AxiomError):
        structure_constants(quadratic())


@pytest.mark.parametrize("alg", [so3_linear(), d2(), quadratic()], ids=lambda a: a.label)
def test_poisson_jacobi(alg):
    assert check_poisson_jacobi(alg, 3 if alg.dim == 2 else 2)["passed"]


# -- sigma model -----------------------------------------------------------------


@pytest.fixture(scope="module")
def lin():
    return SigmaModel(so3_linear(), 2)


@pytest.fixture(scope="module")
def quad():
    return SigmaModel(quadratic(), 2)


def test_gauge_delta_linear_is_covariant(lin):
    c = lin.param("a")
    q = lin.gauge_delta(c)
    f = structure_constants(lin.alg)
    for a, mu in itertools.product(range(3), (0, 1)):
        want = lin.spec.var(f"a{a + 1}", f"x{mu}")
        for b, e in itertools.product(range(3), repeat=2):
            want = want + f[(b, e)].get(a, 0) * lin.h(b, mu) * c[e]
        assert q[lin.h_name(a, mu)] == want
    for a in range(3):
        assert q[lin.psi_name(a)] == sum((lin.W(b, a) * c[b] for b in range(3)), Poly())
    assert all(not v for v in lin.gauge_delta({}).values())


def test_commutator_linear(lin):
    c1, c2 = lin.param("a"), lin.param("b")
    c3, extra = lin.gauge_commutator(c1, c2)
    assert all(not v for v in extra.values())
    f = structure_constants(lin.alg)
    for a in range(3):
        want = sum((f[(b, e)].get(a, 0) * c1[b] * c2[e] for b in range(3) for e in range(3)), Poly())
        assert c3[a] == want
    c3z, extraz = lin.gauge_commutator(c1, {})
    assert all(not v for v in c3z.values()) and all(not v for v in extraz.values())


def test_commutator_quadratic_extra_is_in_covariant_derivative_span(quad):
    _, extra = quad.gauge_commutator(quad.param("a"), quad.param("b"))
    assert any(extra.values())
    assert all(not extra[quad.psi_name(a)] for a in range(3))
    dpsi = tuple(quad.covariant_derivative(b, mu) for b in range(3) for mu in (0, 1))
    ctx = OnShellContext(quad.spec, dpsi, 4, 0)
    for f, p in extra.items():
        if p:
            m = shell_membership(p, ctx)
            assert m.member and verify_certificate(p, ctx, m.certificate)


def test_geometry_with_zero_w():
    m = SigmaModel(zero_w(), 2)
    assert m.covariant_derivative(0, 1) == m.psi(0, "x1")
    assert m.curvature(1, 0, 1) == m.h(1, 1, "x0") - m.h(1, 0, "x1")
    want = sum((m.h(a, 0) * m.psi(a, "x1") - m.h(a, 1) * m.psi(a, "x0") for a in range(2)), Poly())
    assert m.lagrangian() == want


def test_geometry_linear(lin):
    for a in range(3):
        want = lin.psi(a, "x0")
        for b in range(3):
            want = want + lin.W(a, b) * lin.h(b, 0)
        assert lin.covariant_derivative(a, 0) == want
    # D psi_1 = d psi_1 + eps_{1BC} psi_C h^B: only B=2, C=3 and B=3, C=2 survive
    assert lin.covariant_derivative(0, 1) == lin.psi(0, "x1") + lin.psi(2) * lin.h(1, 1) - lin.psi(1) * lin.h(2, 1)


def test_curvature_antisymmetric(quad):
    for a in range(3):
        assert quad.curvature(a, 0, 1) == -quad.curvature(a, 1, 0)
        assert not quad.curvature(a, 0, 0)


def test_field_equations_are_geometric(quad):
    eqs = quad.field_equations()
    for a in range(3):
        assert eqs[quad.psi_name(a)] == quad.curvature(a, 0, 1)
        assert eqs[quad.h_name(a, 0)] == quad.covariant_derivative(a, 1)
        assert eqs[quad.h_name(a, 1)] == -quad.covariant_derivative(a, 0)


@pytest.mark.parametrize("alg", [so3_linear(), d2(), quadratic()], ids=lambda a: a.label)
def test_lagrangian_variation_is_divergence(alg):
    assert check_divergence_sigma(SigmaModel(alg, 2))["passed"]


@pytest.mark.parametrize("alg", [so3_linear(), d2(), quadratic()], ids=lambda a: a.label)
def test_parameter_jacobi_identically(alg):
    assert check_jacobi_sigma(SigmaModel(alg, 2))["passed"]


def test_bbvd_vs_gbbvd(lin, quad):
    assert check_bbvd_sigma(lin)["passed"]
    assert not check_bbvd_sigma(quad)["passed"]
    rep = check_gbbvd_sigma(quad, 4, 1)
    assert rep["status"] == "pass"
    assert all(c["status"] == "member" and c["certificate"] for c in rep["components"])


def test_gbbvd_d2():
    m = SigmaModel(d2(), 2)
    assert not check_bbvd_sigma(m)["passed"]
    assert check_gbbvd_sigma(m, 4, 1)["status"] == "pass"


def test_shell_equivalence(quad):
    assert check_shell_equivalence(quad, 4, 1)["status"] == "pass"


def test_field_sector_bridge_sign():
    data = field_sector_gauge_data(so3_linear())
    # the extensional correction is minus the derivation-convention c3
    assert data.correction(0, 1)(()) == {2: -1}
