"""Nonlinear Lie algebras from polynomial brackets and the two-dimensional
Poisson sigma model built on them.

Everything here lives on the diagonal: a gauge transformation is an
evolutionary vector field whose components are jet polynomials, and
brackets of gauge transformations are commutators of prolonged vector
fields. :func:`field_sector_gauge_data` polarizes the field-only part into
an extensional :class:`~shlie.gauge.GaugeData` for the coalgebraic checks.

Fields are ``psi<A>`` and ``h<A>_<mu>`` over derivations ``x0, x1`` with
``eps^{01} = +1``. Generic gauge parameters are the auxiliary fields
``a<A>``, ``b<A>`` and ``e<A>``; they are differentiated by total
derivatives but never transformed.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction

from .coalgebra import GradedBasis
from .gauge import GaugeData
from .hom import HomMap
from .jets import (
    JetSpec,
    Membership,
    OnShellContext,
    euler_operator,
    is_total_divergence,
    iterated_derivative,
    parse_jet_name,
    polarize,
    shell_membership,
    total_derivative,
    verify_certificate,
)
from .scalars import Poly, name_key

MU = ("x0", "x1")
PARAMS = ("a", "b", "e")


def eps(mu: int, nu: int) -> int:
    return (0, 1, -1, 0)[2 * mu + nu]


class AxiomError(ValueError):
    pass


@dataclass(frozen=True)
class NonlinearLieAlgebra:
    names: tuple  # T1..Td
    W: dict  # (A, B) with A < B -> Poly in the names
    label: str = ""

    def __post_init__(self):
        object.__setattr__(self, "names", tuple(self.names))
        for (a, b), p in self.W.items():
            if not a < b:
                raise AxiomError(f"entries are stored for A < B, got ({a}, {b})")
            extra = p.variables - set(self.names)
            if extra:
                raise AxiomError(f"W_{a + 1}{b + 1} uses undeclared indeterminates {sorted(extra)}")

    @property
    def dim(self) -> int:
        return len(self.names)

    def w(self, a: int, b: int) -> Poly:
        if a == b:
            return Poly()
        if a < b:
            return self.W.get((a, b), Poly())
        return -self.W.get((b, a), Poly())

    def T(self, a: int) -> Poly:
        return Poly.var(self.names[a])

    def dw(self, a: int, b: int, c: int) -> Poly:
        """``dW_ab / dT_c``."""
        return self.w(a, b).partial(self.names[c])

    def is_linear(self) -> bool:
        return all(p.degree <= 1 and not p.constant_term() for p in self.W.values())

    @classmethod
    def from_table(cls, names, table: dict, label: str = "") -> "NonlinearLieAlgebra":
        """``table[(A, B)]`` as polynomial strings or Polys, names or indices as keys."""
        names = tuple(names)
        pos = {n: i for i, n in enumerate(names)}
        W = {}
        for (a, b), v in table.items():
            i = pos[a] if isinstance(a, str) else a
            j = pos[b] if isinstance(b, str) else b
            p = Poly.parse(v) if isinstance(v, str) else Poly.coerce(v)
            if i == j:
                if p:
                    raise AxiomError(f"W_{names[i]}{names[i]} must vanish")
                continue
            if i > j:
                i, j, p = j, i, -p
            if (i, j) in W and W[(i, j)] != p:
                raise AxiomError(f"W is not antisymmetric on ({names[i]}, {names[j]})")
            if p:
                W[(i, j)] = p
        return cls(names, W, label)


def check_w_axioms(alg: NonlinearLieAlgebra) -> dict:
    """Antisymmetry (structural) and ``W_AD dW_BC/dT_D + cyclic = 0`` for all triples."""
    d = alg.dim
    failures = []
    for a, b, c in itertools.product(range(d), repeat=3):
        total = Poly()
        for x, y, z in ((a, b, c), (b, c, a), (c, a, b)):
            for dd in range(d):
                total = total + alg.w(x, dd) * alg.dw(y, z, dd)
        if total:
            failures.append({"triple": [alg.names[a], alg.names[b], alg.names[c]], "residual": str(total)})
    anti = [[alg.names[a], alg.names[b]] for a in range(d) for b in range(d)
            if alg.w(a, b) != -alg.w(b, a)]
    return {"name": "w_axioms", "passed": not failures and not anti, "antisymmetry_failures": anti,
            "jacobi_failures": failures, "triples": d ** 3}


def poisson_bracket(f: Poly, g: Poly, alg: NonlinearLieAlgebra) -> Poly:
    """``{f, g} = W_AB df/dT_A dg/dT_B``."""
    out = Poly()
    dfs = [f.partial(n) for n in alg.names]
    dgs = [g.partial(n) for n in alg.names]
    for a in range(alg.dim):
        if not dfs[a]:
            continue
        for b in range(alg.dim):
            if dgs[b]:
                out = out + alg.w(a, b) * dfs[a] * dgs[b]
    return out


def structure_constants(alg: NonlinearLieAlgebra) -> dict:
    """``f[(A, B)] = {C: coeff}`` for a linear algebra."""
    if not alg.is_linear():
        raise AxiomError("structure constants need a linear W")
    out = {}
    for a, b in itertools.product(range(alg.dim), repeat=2):
        p = alg.w(a, b)
        out[(a, b)] = {c: p.coefficient(((alg.names[c], 1),)) for c in range(alg.dim)
                       if p.coefficient(((alg.names[c], 1),))}
    return out


# -- the sigma model -----------------------------------------------------------


@dataclass(frozen=True)
class SigmaModel:
    alg: NonlinearLieAlgebra
    max_order: int = 3

    @property
    def d(self) -> int:
        return self.alg.dim

    def psi_name(self, a: int) -> str:
        return f"psi{a + 1}"

    def h_name(self, a: int, mu: int) -> str:
        return f"h{a + 1}_{mu}"

    def param_name(self, p: str, a: int) -> str:
        return f"{p}{a + 1}"

    @property
    def dynamical(self) -> tuple:
        return tuple(self.psi_name(a) for a in range(self.d)) + tuple(
            self.h_name(a, mu) for a in range(self.d) for mu in (0, 1))

    @property
    def spec(self) -> JetSpec:
        params = tuple(self.param_name(p, a) for p in PARAMS for a in range(self.d))
        return JetSpec(self.dynamical + params, MU, self.max_order)

    def psi(self, a: int, *idx) -> Poly:
        return self.spec.var(self.psi_name(a), *idx)

    def h(self, a: int, mu: int, *idx) -> Poly:
        return self.spec.var(self.h_name(a, mu), *idx)

    def param(self, p: str) -> dict:
        """Generic field-independent parameter with components ``p1..pd``."""
        return {a: self.spec.var(self.param_name(p, a)) for a in range(self.d)}

    def on_psi(self, q: Poly) -> Poly:
        """Replace every ``T_A`` by ``psi_A``."""
        return q.substitute({n: self.psi(a) for a, n in enumerate(self.alg.names)}, strict=False)

    def W(self, a: int, b: int) -> Poly:
        return self.on_psi(self.alg.w(a, b))

    def dW(self, a: int, b: int, c: int) -> Poly:
        """``dW_ab/dT_c`` at ``psi``."""
        return self.on_psi(self.alg.dw(a, b, c))

    def ddW(self, a: int, b: int, c: int, e: int) -> Poly:
        """``d^2 W_ab / dT_c dT_e`` at ``psi``."""
        return self.on_psi(self.alg.dw(a, b, c).partial(self.alg.names[e]))

    # -- gauge transformations ------------------------------------------------

    def gauge_delta(self, c: dict) -> dict:
        """The vector field of parameter ``c``: components on ``psi_A`` and ``h^A_mu``."""
        d = self.d
        spec = self.spec
        q = {}
        for a in range(d):
            q[self.psi_name(a)] = _sum(self.W(b, a) * c[b] for b in range(d) if c.get(b))
        for a in range(d):
            for mu in (0, 1):
                val = total_derivative(c.get(a, Poly()), MU[mu], spec) if c.get(a) else Poly()
                for b in range(d):
                    for e in range(d):
                        if c.get(e):
                            val = val + self.dW(b, e, a) * self.h(b, mu) * c[e]
                q[self.h_name(a, mu)] = val
        return q

    def prolong(self, q: dict, p: Poly) -> Poly:
        """Apply the prolonged evolutionary field ``q`` to ``p``."""
        spec = self.spec
        out = Poly()
        for v in sorted(p.variables, key=name_key):
            parsed = parse_jet_name(v)
            if not parsed or parsed[0] not in q:
                continue
            f, idx = parsed
            if not q[f]:
                continue
            out = out + p.partial(v) * iterated_derivative(q[f], idx, spec)
        return out

    def commutator(self, q1: dict, q2: dict) -> dict:
        """``[q1, q2]`` as derivations: ``q1(q2_f) - q2(q1_f)`` on each field."""
        return {f: self.prolong(q1, q2[f]) - self.prolong(q2, q1[f]) for f in self.dynamical}

    def c3(self, c1: dict, c2: dict) -> dict:
        """Field-dependent parameter ``c3^A = dW_BD/dT_A (psi) c1^B c2^D``."""
        d = self.d
        return {a: _sum(self.dW(b, e, a) * c1[b] * c2[e]
                        for b in range(d) for e in range(d) if c1.get(b) and c2.get(e))
                for a in range(d)}

    def extra_term(self, c1: dict, c2: dict) -> dict:
        """The open-algebra term: ``-d^2W_CD/dT_A dT_B (D_mu psi_B) c1^C c2^D`` on ``h^A_mu``."""
        d = self.d
        out = {f: Poly() for f in self.dynamical}
        for a in range(d):
            for mu in (0, 1):
                val = Poly()
                for b, c, e in itertools.product(range(d), repeat=3):
                    if c1.get(c) and c2.get(e):
                        dd = self.ddW(c, e, a, b)
                        if dd:
                            val = val - dd * self.covariant_derivative(b, mu) * c1[c] * c2[e]
                out[self.h_name(a, mu)] = val
        return out

    def gauge_commutator(self, c1: dict, c2: dict) -> tuple[dict, dict]:
        """``(c3, extra)`` with ``[delta(c1), delta(c2)] = delta(c3) + extra``.

        Raises if ``extra`` differs from :meth:`extra_term`.
        """
        comm = self.commutator(self.gauge_delta(c1), self.gauge_delta(c2))
        c3 = self.c3(c1, c2)
        q3 = self.gauge_delta(c3)
        extra = {f: comm[f] - q3[f] for f in self.dynamical}
        want = self.extra_term(c1, c2)
        bad = [f for f in self.dynamical if extra[f] != want[f]]
        if bad:
            raise AssertionError(f"commutator decomposition fails on {bad}")
        return c3, extra

    # -- geometry --------------------------------------------------------------

    def covariant_derivative(self, a: int, mu: int) -> Poly:
        """``D_mu psi_A = d_mu psi_A + W_AB(psi) h^B_mu``."""
        out = self.psi(a, MU[mu])
        for b in range(self.d):
            out = out + self.W(a, b) * self.h(b, mu)
        return out

    def curvature(self, a: int, mu: int, nu: int) -> Poly:
        """``R^A_{mu nu} = d_mu h^A_nu - d_nu h^A_mu + dW_BC/dT_A (psi) h^B_mu h^C_nu``."""
        out = self.h(a, nu, MU[mu]) - self.h(a, mu, MU[nu])
        for b in range(self.d):
            for c in range(self.d):
                out = out + self.dW(b, c, a) * self.h(b, mu) * self.h(c, nu)
        return out

    def lagrangian(self) -> Poly:
        """``eps^{mu nu} (h^A_mu D_nu psi_A - 1/2 W_AB(psi) h^A_mu h^B_nu)``."""
        out = Poly()
        half = Fraction(1, 2)
        for mu, nu in ((0, 1), (1, 0)):
            s = eps(mu, nu)
            for a in range(self.d):
                out = out + s * self.h(a, mu) * self.covariant_derivative(a, nu)
                for b in range(self.d):
                    out = out - s * half * self.W(a, b) * self.h(a, mu) * self.h(b, nu)
        return out

    def field_equations(self) -> dict:
        lag = self.lagrangian()
        return {f: euler_operator(lag, f, self.spec) for f in self.dynamical}

    def shell(self, degree_cap: int = 4, order_cap: int = 1) -> OnShellContext:
        eqs = self.field_equations()
        labels = tuple(f"E[{f}]" for f in self.dynamical if eqs[f])
        gens = tuple(eqs[f] for f in self.dynamical if eqs[f])
        return OnShellContext(self.spec, gens, degree_cap, order_cap, labels)

    def geometric_shell(self, degree_cap: int = 4, order_cap: int = 1) -> OnShellContext:
        gens, labels = [], []
        for a in range(self.d):
            for mu in (0, 1):
                gens.append(self.covariant_derivative(a, mu))
                labels.append(f"Dpsi{a + 1}_{mu}")
        for a in range(self.d):
            gens.append(self.curvature(a, 0, 1))
            labels.append(f"R{a + 1}_01")
        return OnShellContext(self.spec, tuple(gens), degree_cap, order_cap, tuple(labels))

    # -- parameter algebra on the diagonal --------------------------------------

    def act_on_function(self, c: dict, f: Poly) -> Poly:
        """Derivative of a function of ``psi`` along ``delta(c)``."""
        q = self.gauge_delta(c)
        out = Poly()
        for a in range(self.d):
            df = f.partial(self.spec.var_name(self.psi_name(a)))
            if df:
                out = out + df * q[self.psi_name(a)]
        return out

    def param_bracket(self, p1: dict, p2: dict) -> dict:
        """Bracket of field-dependent parameters (derivation convention)."""
        c = self.c3(p1, p2)
        return {a: self.act_on_function(p1, p2.get(a, Poly())) - self.act_on_function(p2, p1.get(a, Poly()))
                + c[a] for a in range(self.d)}

    def jacobi(self, x1: dict, x2: dict, x3: dict) -> dict:
        b = self.param_bracket
        r1, r2, r3 = b(b(x1, x2), x3), b(b(x1, x3), x2), b(b(x2, x3), x1)
        return {a: r1[a] - r2[a] + r3[a] for a in range(self.d)}


def _sum(terms) -> Poly:
    out = Poly()
    for t in terms:
        out = out + t
    return out


# -- checks --------------------------------------------------------------------


def _render_field_map(q: dict) -> dict:
    return {f: str(p) for f, p in q.items() if p}


def check_bbvd_sigma(model: SigmaModel) -> dict:
    """Strict closure of gauge commutators on two generic parameters."""
    c1, c2 = model.param("a"), model.param("b")
    c3, extra = model.gauge_commutator(c1, c2)
    residual = _render_field_map(extra)
    return {"name": "bbvd", "passed": not residual, "c3": {f"c3_{a + 1}": str(p) for a, p in c3.items()},
            "residual": residual}


def check_gbbvd_sigma(model: SigmaModel, degree_cap: int = 4, order_cap: int = 1,
                      shell: OnShellContext | None = None) -> dict:
    """Closure modulo the field equations, with a membership certificate per component."""
    ctx = shell or model.shell(degree_cap, order_cap)
    c1, c2 = model.param("a"), model.param("b")
    _, extra = model.gauge_commutator(c1, c2)
    gens = ctx.prolonged()
    comps = []
    status = "pass"
    for f in model.dynamical:
        p = extra[f]
        if not p:
            continue
        m = shell_membership(p, ctx, gens)
        if m.member and not verify_certificate(p, ctx, m.certificate):
            raise AssertionError(f"certificate for {f} does not re-expand")
        comps.append({"component": f, "residual": str(p), **m.to_json()})
        if m.status == "false":
            status = "fail"
        elif m.status == "undecided" and status == "pass":
            status = "undecided"
    return {"name": "gbbvd", "status": status, "passed": status == "pass",
            "degree_cap": ctx.degree_cap, "order_cap": ctx.order_cap, "components": comps}


def check_jacobi_sigma(model: SigmaModel) -> dict:
    x1, x2, x3 = (model.param(p) for p in PARAMS)
    j = model.jacobi(x1, x2, x3)
    residual = {f"J{a + 1}": str(p) for a, p in j.items() if p}
    return {"name": "jacobi", "passed": not residual, "residual": residual}


def check_divergence_sigma(model: SigmaModel) -> dict:
    lag = model.lagrangian()
    q = model.gauge_delta(model.param("a"))
    var = model.prolong(q, lag)
    ok, rep = is_total_divergence(var, model.spec)
    rep["variation_terms"] = len(var)
    return rep


def check_shell_equivalence(model: SigmaModel, degree_cap: int = 4, order_cap: int = 1) -> dict:
    """Field equations and ``{D psi, R}`` generate each other at the caps."""
    el = model.shell(degree_cap, order_cap)
    geo = model.geometric_shell(degree_cap, order_cap)
    rows = []
    status = "pass"
    for src, dst, tag in ((el, geo, "field equation in geometric ideal"),
                          (geo, el, "geometric generator in field-equation ideal")):
        gens = dst.prolonged()
        for label, g in zip(src.labels, src.generators):
            m = shell_membership(g, dst, gens)
            rows.append({"direction": tag, "generator": label, **m.to_json()})
            if m.status == "false":
                status = "fail"
            elif m.status == "undecided" and status == "pass":
                status = "undecided"
    return {"name": "shell_equivalence", "status": status, "passed": status == "pass", "rows": rows}


def check_on_shell_square_zero(model: SigmaModel, degree_cap: int = 4, order_cap: int = 1) -> dict:
    """``D o D_bar`` on shell: two parameters give minus the open-algebra term, three give Jacobi."""
    two = check_gbbvd_sigma(model, degree_cap, order_cap)
    three = check_jacobi_sigma(model)
    status = "fail" if (two["status"] == "fail" or not three["passed"]) else two["status"]
    return {"name": "square_zero_on_shell", "status": status, "passed": status == "pass",
            "two_parameter": two["status"], "three_parameter": "pass" if three["passed"] else "fail"}


def check_kirillov_kostant(alg: NonlinearLieAlgebra) -> dict:
    """For linear W the bracket on linear polynomials is ``{T_A, T_B} = f^C_AB T_C``."""
    f = structure_constants(alg)
    bad = []
    for a, b in itertools.product(range(alg.dim), repeat=2):
        want = _sum(Poly.const(c) * alg.T(k) for k, c in f[(a, b)].items())
        if poisson_bracket(alg.T(a), alg.T(b), alg) != want:
            bad.append([alg.names[a], alg.names[b]])
    return {"name": "kirillov_kostant", "passed": not bad, "failures": bad}


def check_poisson_jacobi(alg: NonlinearLieAlgebra, max_degree: int = 3) -> dict:
    """``{f,{g,h}} + cyclic = 0`` on every monomial triple up to ``max_degree``."""
    monos = []
    for k in range(1, max_degree + 1):
        for combo in itertools.combinations_with_replacement(range(alg.dim), k):
            m = Poly.const(1)
            for i in combo:
                m = m * alg.T(i)
            monos.append(m)
    bad = 0
    checked = 0
    for f, g, h in itertools.combinations_with_replacement(monos, 3):
        checked += 1
        pb = lambda x, y: poisson_bracket(x, y, alg)
        if pb(f, pb(g, h)) + pb(g, pb(h, f)) + pb(h, pb(f, g)):
            bad += 1
    return {"name": "poisson_jacobi", "passed": not bad, "checked": checked, "failures": bad}


# -- extensional bridge ------------------------------------------------------------


def field_sector_gauge_data(alg: NonlinearLieAlgebra, name: str = "") -> GaugeData:
    """Polarize the action on the scalar fields into extensional gauge data.

    Parameters are the constant generators ``c1..cd``; fields are ``p1..pd``.
    The action of ``c_B`` is the vector field ``psi_A -> W_BA(psi)`` and the
    correction is minus the polarized ``c3``: the bracket on maps out of the
    coalgebra is the negative of the derivation commutator under this
    polarization.
    """
    d = alg.dim
    xi = GradedBasis.uniform([f"c{a + 1}" for a in range(d)])
    phi = GradedBasis.uniform([f"p{a + 1}" for a in range(d)])
    names = list(alg.names)

    def polarized(comps: dict) -> dict:
        vals: dict = {}
        for a, p in comps.items():
            for w, c in polarize(p, names).items():
                vals.setdefault(w, {})[a] = c
        return vals

    delta = {}
    for b in range(d):
        delta[b] = HomMap(phi, phi, polarized({a: alg.w(b, a) for a in range(d)}), 0, None, "A")
    C = {}
    for b, e in itertools.combinations(range(d), 2):
        comps = {a: -alg.dw(b, e, a) for a in range(d)}
        C[(b, e)] = HomMap(phi, xi, polarized(comps), 0, None, "k")
    return GaugeData(xi, phi, delta, C, name or (alg.label + "_fields"))
