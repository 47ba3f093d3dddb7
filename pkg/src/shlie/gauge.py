"""Gauge data: the extension of a parameter action to field-dependent parameters.

Notation: ``Phi`` is the field space, ``Xi`` the parameter space. A parameter
map (``ParamMap``) is a :class:`HomMap` from words over ``Phi`` into ``Xi``;
a constant parameter is nonzero only on the unit word.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .coalgebra import GradedBasis, Word, add_term, coproduct_left, splits
from .hom import HomMap, comp, gerstenhaber
from .linalg import echelon


class GaugeDataError(ValueError):
    pass


@dataclass(frozen=True)
class GaugeData:
    xi: GradedBasis
    phi: GradedBasis
    delta: dict  # xi index -> HomMap(phi -> phi)
    C: dict  # (i, j) with i < j -> HomMap(phi -> xi)
    name: str = ""
    notes: tuple = field(default=())

    def __post_init__(self):
        if set(self.xi.names) & set(self.phi.names):
            raise GaugeDataError("parameter and field generators must have distinct names")
        if any(d % 2 for d in self.xi.degrees + self.phi.degrees):
            raise GaugeDataError("parameters and fields must sit in even degree")
        if not len(self.phi) and any(not h.is_zero() for h in self.delta.values()):
            raise GaugeDataError("empty field basis with nonzero action values")
        for i, h in self.delta.items():
            if h.source != self.phi or h.target != self.phi:
                raise GaugeDataError(f"action of {self.xi.names[i]} has the wrong bases")
        for (i, j), c in self.C.items():
            if i >= j:
                raise GaugeDataError("correction entries are stored for i < j only")
            if c.source != self.phi or c.target != self.xi:
                raise GaugeDataError("correction map has the wrong bases")

    def action(self, i: int) -> HomMap:
        return self.delta.get(i) or HomMap.zero(self.phi, self.phi)

    def correction(self, i: int, j: int) -> HomMap:
        if i == j:
            return HomMap.zero(self.phi, self.xi, linearity="k")
        if i < j:
            return self.C.get((i, j)) or HomMap.zero(self.phi, self.xi, linearity="k")
        return -self.correction(j, i)

    def boundary(self, i: int) -> dict:
        """``d(xi_i)``: the value of the action on the unit word."""
        return self.action(i)(())

    @property
    def max_action_arity(self) -> int:
        return max((h.top_arity for h in self.delta.values()), default=-1)

    @property
    def max_correction_arity(self) -> int:
        return max((c.top_arity for c in self.C.values()), default=-1)


# -- parameter maps ----------------------------------------------------------


def constant(data: GaugeData, vec: dict) -> HomMap:
    """The constant parameter map: ``vec`` on the unit word, zero elsewhere."""
    return HomMap(data.phi, data.xi, {(): dict(vec)} if vec else {}, 0, None, "k")


def generator(data: GaugeData, i: int) -> HomMap:
    return constant(data, {i: Fraction(1)})


def elementary(data: GaugeData, a: int, b: int) -> HomMap:
    """Arity-1 parameter map sending field ``a`` to parameter ``b``."""
    return HomMap(data.phi, data.xi, {(a,): {b: Fraction(1)}}, 0, None, "k")


def default_probes(data: GaugeData) -> list:
    probes = [generator(data, i) for i in range(len(data.xi))]
    probes += [elementary(data, a, b) for a in range(len(data.phi)) for b in range(len(data.xi))]
    return probes


# -- extensions ----------------------------------------------------------------


def delta_hat(pi: HomMap, data: GaugeData) -> HomMap:
    """Extend the action to a parameter map by splitting each word.

    The left factor feeds ``pi``, the result selects the action, and the
    action is evaluated on the right factor.
    """
    if pi.is_zero():
        return HomMap.zero(data.phi, data.phi)
    top = pi.top_arity + max(data.max_action_arity, 0)
    vals = {}
    for w in data.phi.words(top):
        out: dict = {}
        for left, right, s in splits(data.phi, w):
            for k, c in pi(left).items():
                for i, a in data.action(k)(right).items():
                    add_term(out, i, s * c * a)
        if out:
            vals[w] = out
    return HomMap(data.phi, data.phi, vals, 0, None, "A")


def c_hat(pi1: HomMap, pi2: HomMap, data: GaugeData) -> HomMap:
    """Extend the correction through the double coproduct: ``C o ((pi1 (x) pi2) (x) 1) o (Delta (x) 1) o Delta``."""
    if pi1.is_zero() or pi2.is_zero():
        return HomMap.zero(data.phi, data.xi, linearity="k")
    top = pi1.top_arity + pi2.top_arity + max(data.max_correction_arity, 0)
    vals = {}
    for w in data.phi.words(top):
        out: dict = {}
        for (a, b, r), s in coproduct_left(data.phi, {w: 1}).items():
            va = pi1(a)
            if not va:
                continue
            vb = pi2(b)
            if not vb:
                continue
            for k, ca in va.items():
                for l, cb in vb.items():
                    if k == l:
                        continue
                    for i, x in data.correction(k, l)(r).items():
                        add_term(out, i, s * ca * cb * x)
        if out:
            vals[w] = out
    return HomMap(data.phi, data.xi, vals, 0, None, "k")


def corrected_bracket(pi1: HomMap, pi2: HomMap, data: GaugeData) -> HomMap:
    """``pi1 . delta_hat(pi2) - pi2 . delta_hat(pi1) + C_hat(pi1, pi2)``."""
    return (comp(pi1, delta_hat(pi2, data)) - comp(pi2, delta_hat(pi1, data))
            + c_hat(pi1, pi2, data))


def jacobiator(pi1: HomMap, pi2: HomMap, pi3: HomMap, data: GaugeData) -> HomMap:
    """``[[p1,p2],p3] - [[p1,p3],p2] + [[p2,p3],p1]``."""
    b = corrected_bracket
    return (b(b(pi1, pi2, data), pi3, data) - b(b(pi1, pi3, data), pi2, data)
            + b(b(pi2, pi3, data), pi1, data))


def jacobi_relation(data: GaugeData, i: int, j: int, k: int) -> HomMap:
    """The Jacobiator of three constants, expanded into action and correction terms."""
    C = data.correction
    d = data.action
    g = lambda n: generator(data, n)
    return (comp(C(i, j), d(k)) - comp(C(i, k), d(j)) + comp(C(j, k), d(i))
            + c_hat(C(i, j), g(k), data) - c_hat(C(i, k), g(j), data) + c_hat(C(j, k), g(i), data))


# -- reports -------------------------------------------------------------------


def _residual_rows(h: HomMap, cap: int) -> list:
    rows = []
    for w in sorted(h.values, key=lambda w: (len(w), w)):
        if len(w) <= cap:
            rows.append({"word": h.source.render_word(w), "difference": _render(h.target, h.values[w])})
    return rows


def _render(basis: GradedBasis, v: dict) -> str:
    from .coalgebra import render_vector

    return render_vector(basis, v)


def check_bbvd(data: GaugeData, cap: int) -> dict:
    """Compare the bracket of two actions with the extended correction, pair by pair."""
    pairs = []
    for i, j in itertools.combinations(range(len(data.xi)), 2):
        res = gerstenhaber(data.action(i), data.action(j)) - delta_hat(data.correction(i, j), data)
        rows = _residual_rows(res, cap)
        pairs.append({
            "pair": [data.xi.names[i], data.xi.names[j]],
            "passed": not rows,
            "residual": rows,
        })
    return {"name": "bbvd", "cap": cap, "passed": all(p["passed"] for p in pairs), "pairs": pairs}


def bbvd_residual(data: GaugeData, i: int, j: int) -> HomMap:
    return gerstenhaber(data.action(i), data.action(j)) - delta_hat(data.correction(i, j), data)


def check_theorem1(data: GaugeData, cap: int, probes: list | None = None) -> dict:
    """Morphism identity on probe pairs and the Jacobiator on probe triples."""
    probes = default_probes(data) if probes is None else probes
    labels = [_probe_label(data, p) for p in probes]
    morph_fail = []
    n_pairs = 0
    for (a, p1), (b, p2) in itertools.combinations(enumerate(probes), 2):
        n_pairs += 1
        lhs = delta_hat(corrected_bracket(p1, p2, data), data)
        rhs = gerstenhaber(delta_hat(p1, data), delta_hat(p2, data))
        rows = _residual_rows(lhs - rhs, cap)
        if rows:
            morph_fail.append({"probes": [labels[a], labels[b]], "residual": rows})
    jac_fail = []
    n_triples = 0
    for (a, p1), (b, p2), (c, p3) in itertools.combinations(enumerate(probes), 3):
        n_triples += 1
        rows = _residual_rows(jacobiator(p1, p2, p3, data), cap)
        if rows:
            jac_fail.append({"probes": [labels[a], labels[b], labels[c]], "residual": rows})
    return {
        "name": "theorem1",
        "cap": cap,
        "passed": not morph_fail and not jac_fail,
        "morphism": {"pairs": n_pairs, "failures": morph_fail, "passed": not morph_fail},
        "jacobi": {"triples": n_triples, "failures": jac_fail, "passed": not jac_fail},
    }


def _probe_label(data: GaugeData, p: HomMap) -> str:
    parts = [f"{data.phi.render_word(w)}->{_render(data.xi, v)}" for w, v in sorted(p.values.items())]
    return ", ".join(parts) or "0"


def check_delta_hat_injective(data: GaugeData, cap: int) -> dict:
    """Kernel dimension of the extension on parameter maps supported on words up to ``cap``.

    Unknowns are the values of a parameter map on each word and parameter
    generator; the extension is linear in them, and every output word it can
    reach is constrained.
    """
    unknown_words = list(data.phi.words(cap))
    unknowns = [(w, k) for w in unknown_words for k in range(len(data.xi))]
    top = cap + max(data.max_action_arity, 0)
    eqs: dict = {}
    for w in data.phi.words(top):
        for left, right, s in splits(data.phi, w):
            if len(left) > cap:
                continue
            for k in range(len(data.xi)):
                for i, a in data.action(k)(right).items():
                    row = eqs.setdefault((w, i), {})
                    add_term(row, (left, k), s * a)
    for row in eqs.values():
        for v in row.values():
            if not isinstance(v, (int, Fraction)):
                raise TypeError("kernel check needs rational action coefficients")
    form = echelon(((row, 0) for row in eqs.values()), unknowns)
    kernel = []
    if form.nullity:
        free = [u for u in unknowns if u not in form.pivots]
        for u in free[:8]:
            vec = {u: Fraction(1)}
            for k, (row, _) in form.pivots.items():
                c = row.get(u)
                if c:
                    vec[k] = -c
            kernel.append({f"{data.phi.render_word(w)}->{data.xi.names[k]}": str(c)
                           for (w, k), c in sorted(vec.items())})
    return {
        "name": "delta_hat_injective",
        "cap": cap,
        "unknowns": len(unknowns),
        "rank": form.rank,
        "kernel_dimension": form.nullity,
        "passed": form.nullity == 0,
        "kernel_sample": kernel,
        "note": "kernel 0 means injective on maps supported up to the cap only",
    }


# -- strict Lie input ------------------------------------------------------------


def build_strict_lie(xi_names, phi_names, brackets: dict, action: dict, boundary: dict | None = None,
                     name: str = "") -> GaugeData:
    """Gauge data of a Lie algebra acting linearly on a module.

    ``brackets[(a, b)]`` is ``{c: coeff}`` for ``[a, b]`` (names); only one of
    each antisymmetric pair is needed. ``action[(a, f)]`` is ``{g: coeff}``
    for ``a . f``. ``boundary[a]`` is ``{f: coeff}``.
    """
    xi = GradedBasis.uniform(list(xi_names), 0)
    phi = GradedBasis.uniform(list(phi_names), 0)
    n, m = len(xi), len(phi)
    br = [[{} for _ in range(n)] for _ in range(n)]
    for (a, b), v in brackets.items():
        i, j = xi.index(a), xi.index(b)
        vec = {xi.index(c): Fraction(x) for c, x in v.items() if x}
        if i == j and vec:
            raise GaugeDataError(f"[{a}, {a}] must vanish")
        if br[i][j] and br[i][j] != vec:
            raise GaugeDataError(f"conflicting entries for [{a}, {b}]")
        if br[j][i] and br[j][i] != {c: -x for c, x in vec.items()}:
            raise GaugeDataError(f"bracket is not antisymmetric on ({a}, {b})")
        br[i][j] = vec
        br[j][i] = {c: -x for c, x in vec.items()}
    act = [[{} for _ in range(m)] for _ in range(n)]
    for (a, f), v in action.items():
        act[xi.index(a)][phi.index(f)] = {phi.index(g): Fraction(x) for g, x in v.items() if x}
    bd = [{} for _ in range(n)]
    for a, v in (boundary or {}).items():
        bd[xi.index(a)] = {phi.index(f): Fraction(x) for f, x in v.items() if x}

    def bracket(u: dict, v: dict) -> dict:
        out: dict = {}
        for i, x in u.items():
            for j, y in v.items():
                for k, z in br[i][j].items():
                    add_term(out, k, x * y * z)
        return out

    def act_on(u: dict, f: dict) -> dict:
        out: dict = {}
        for i, x in u.items():
            for a, y in f.items():
                for b, z in act[i][a].items():
                    add_term(out, b, x * y * z)
        return out

    def d(u: dict) -> dict:
        out: dict = {}
        for i, x in u.items():
            for a, y in bd[i].items():
                add_term(out, a, x * y)
        return out

    e = lambda i: {i: Fraction(1)}
    for i, j, k in itertools.combinations(range(n), 3):
        jac: dict = {}
        for u, v, w in ((i, j, k), (j, k, i), (k, i, j)):
            for c, x in bracket(bracket(e(u), e(v)), e(w)).items():
                add_term(jac, c, x)
        if jac:
            raise GaugeDataError(f"Jacobi fails on ({xi.names[i]}, {xi.names[j]}, {xi.names[k]})")
    for i, j in itertools.combinations(range(n), 2):
        for a in range(m):
            lhs = act_on(bracket(e(i), e(j)), e(a))
            rhs = act_on(e(i), act_on(e(j), e(a)))
            for b, x in act_on(e(j), act_on(e(i), e(a))).items():
                add_term(rhs, b, -x)
            if lhs != rhs:
                raise GaugeDataError(
                    f"module axiom fails for ({xi.names[i]}, {xi.names[j]}) on {phi.names[a]}")
        # d[x, y] = x.dy - y.dx
        lhs = d(bracket(e(i), e(j)))
        rhs = act_on(e(i), d(e(j)))
        for b, x in act_on(e(j), d(e(i))).items():
            add_term(rhs, b, -x)
        if lhs != rhs:
            raise GaugeDataError(
                f"boundary is not compatible with the bracket on ({xi.names[i]}, {xi.names[j]})")

    delta = {}
    for i in range(n):
        vals = {}
        if bd[i]:
            vals[()] = dict(bd[i])
        for a in range(m):
            if act[i][a]:
                vals[(a,)] = dict(act[i][a])
        delta[i] = HomMap(phi, phi, vals, 0, None, "A")
    C = {}
    for i, j in itertools.combinations(range(n), 2):
        if br[i][j]:
            C[(i, j)] = HomMap(phi, xi, {(): dict(br[i][j])}, 0, None, "k")
    notes = ()
    if any(bd):
        notes = ("boundary compatibility checked in the form d[x,y] = x.dy - y.dx; "
                 "the plus-sign variant is inconsistent with the bracket identities",)
    return GaugeData(xi, phi, delta, C, name, notes)


def so3(name: str = "so3_strict") -> GaugeData:
    """so(3) with structure constants eps_ABC acting on itself, zero boundary."""
    xs = ["e1", "e2", "e3"]
    fs = ["f1", "f2", "f3"]
    eps = _levi_civita()
    brackets = {}
    action = {}
    for a, b, c in itertools.product(range(3), repeat=3):
        if eps[a][b][c]:
            brackets.setdefault((xs[a], xs[b]), {})[xs[c]] = eps[a][b][c]
            action.setdefault((xs[a], fs[b]), {})[fs[c]] = eps[a][b][c]
    return build_strict_lie(xs, fs, brackets, action, None, name)


def nonabelian2(name: str = "nonabelian2") -> GaugeData:
    """The two-dimensional algebra ``[a, b] = b`` acting on itself."""
    return build_strict_lie(
        ["a", "b"], ["fa", "fb"],
        {("a", "b"): {"b": 1}},
        {("a", "fb"): {"fb": 1}, ("b", "fa"): {"fb": -1}},
        None, name,
    )


def _levi_civita():
    eps = [[[0] * 3 for _ in range(3)] for _ in range(3)]
    for p in itertools.permutations(range(3)):
        inv = sum(1 for x, y in itertools.combinations(p, 2) if x > y)
        eps[p[0]][p[1]][p[2]] = -1 if inv % 2 else 1
    return eps


levi_civita = _levi_civita
