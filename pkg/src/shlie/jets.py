"""Formal jet calculus: total derivatives, the Euler operator, and bounded membership
in the differential ideal generated by a list of polynomials.

A jet variable is an ordinary polynomial indeterminate with a structured
name ``u[field;x,y]``: ``field`` differentiated once along ``x`` and once
along ``y``. Multi-indices are symmetric and kept sorted by the order in
which the derivations were declared; the underived variable is
``u[field;]``. Indeterminates that are not jet variables are constants.
"""

from __future__ import annotations

import itertools
import re
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import factorial

from .linalg import echelon
from .scalars import Poly, name_key

_JET_RE = re.compile(r"u\[([A-Za-z_][A-Za-z0-9_]*);([A-Za-z0-9_,]*)\]")


class JetOrderError(ValueError):
    """A derivative would exceed the declared maximal jet order."""


@lru_cache(maxsize=None)
def parse_jet_name(name: str):
    """``(field, multi-index names)`` or None for a non-jet indeterminate."""
    m = _JET_RE.fullmatch(name)
    if not m:
        return None
    idx = tuple(x for x in m.group(2).split(",") if x)
    return m.group(1), idx


@dataclass(frozen=True)
class JetSpec:
    fields: tuple
    derivations: tuple
    max_order: int = 2

    def __post_init__(self):
        object.__setattr__(self, "fields", tuple(self.fields))
        object.__setattr__(self, "derivations", tuple(self.derivations))
        if len(set(self.derivations)) != len(self.derivations):
            raise ValueError("duplicate derivation names")

    @property
    def _rank(self) -> dict:
        return {d: i for i, d in enumerate(self.derivations)}

    def var_name(self, f: str, index=()) -> str:
        rank = self._rank
        idx = sorted(index, key=lambda d: rank[d])
        return f"u[{f};{','.join(idx)}]"

    def var(self, f: str, *index) -> Poly:
        if f not in self.fields:
            raise ValueError(f"unknown field {f!r}")
        for d in index:
            if d not in self._rank:
                raise ValueError(f"unknown derivation {d!r}")
        if len(index) > self.max_order:
            raise JetOrderError(f"order {len(index)} exceeds the maximal order {self.max_order}")
        return Poly.var(self.var_name(f, index))

    def multi_indices(self, max_order: int | None = None):
        top = self.max_order if max_order is None else max_order
        for k in range(top + 1):
            yield from itertools.combinations_with_replacement(self.derivations, k)

    def with_order(self, max_order: int) -> "JetSpec":
        return JetSpec(self.fields, self.derivations, max_order)

    def order(self, p: Poly) -> int:
        """Highest derivative order among the jet variables of ``p`` (-1 if none)."""
        best = -1
        for v in p.variables:
            parsed = parse_jet_name(v)
            if parsed and parsed[0] in self.fields:
                best = max(best, len(parsed[1]))
        return best


def total_derivative(p: Poly, mu: str, spec: JetSpec) -> Poly:
    """``D_mu p = sum over jet variables v of dp/dv * (v differentiated along mu)``."""
    if mu not in spec.derivations:
        raise ValueError(f"unknown derivation {mu!r}")
    out = Poly()
    for v in sorted(p.variables, key=name_key):
        parsed = parse_jet_name(v)
        if not parsed or parsed[0] not in spec.fields:
            continue
        f, idx = parsed
        if len(idx) + 1 > spec.max_order:
            raise JetOrderError(f"D_{mu} of {v} exceeds the maximal order {spec.max_order}")
        out = out + p.partial(v) * Poly.var(spec.var_name(f, idx + (mu,)))
    return out


def iterated_derivative(p: Poly, index, spec: JetSpec) -> Poly:
    for mu in index:
        p = total_derivative(p, mu, spec)
    return p


def euler_operator(p: Poly, f: str, spec: JetSpec) -> Poly:
    """``E_f(p) = sum over distinct sorted I of (-1)^{|I|} D_I(dp / du[f;I])``."""
    out = Poly()
    for v in sorted(p.variables, key=name_key):
        parsed = parse_jet_name(v)
        if not parsed or parsed[0] != f:
            continue
        idx = parsed[1]
        term = iterated_derivative(p.partial(v), idx, spec)
        out = out - term if len(idx) % 2 else out + term
    return out


def is_total_divergence(p: Poly, spec: JetSpec, fields=None) -> tuple[bool, dict]:
    """True iff every Euler image vanishes; the report lists the nonzero ones."""
    residual = {}
    for f in (spec.fields if fields is None else fields):
        e = euler_operator(p, f, spec)
        if e:
            residual[f] = str(e)
    return not residual, {"name": "total_divergence", "passed": not residual, "euler_residuals": residual}


# -- polarization ----------------------------------------------------------------


def polarize(p: Poly, names) -> dict:
    """Symmetric multilinear values of a polynomial on multisets of variables.

    The value on a multiset with multiplicities ``m_i`` is the coefficient of
    the matching monomial times ``prod m_i!``; :func:`diagonal` inverts it.
    Words are index tuples into ``names``.
    """
    pos = {n: i for i, n in enumerate(names)}
    out = {}
    for mono, c in p.items():
        word = []
        weight = 1
        for v, e in mono:
            if v not in pos:
                raise ValueError(f"{v!r} is not among the polarization variables")
            word += [pos[v]] * e
            weight *= factorial(e)
        out[tuple(sorted(word))] = c * weight
    return out


def diagonal(values: dict, names) -> Poly:
    out = Poly()
    for word, c in values.items():
        mono = Poly.const(1)
        weight = 1
        for i, g in itertools.groupby(word):
            e = len(list(g))
            mono = mono * Poly.var(names[i], e)
            weight *= factorial(e)
        out = out + mono * (Fraction(c) / weight if not isinstance(c, Poly) else c / weight)
    return out


# -- ideal membership ------------------------------------------------------------


@dataclass(frozen=True)
class OnShellContext:
    spec: JetSpec
    generators: tuple  # Poly
    degree_cap: int = 4  # total degree of each multiplier q
    order_cap: int = 2  # derivatives of generators taken up to this order
    labels: tuple = field(default=())

    def __post_init__(self):
        object.__setattr__(self, "generators", tuple(self.generators))
        if any(not g for g in self.generators):
            raise ValueError("shell generators must be nonzero")
        if not self.labels:
            object.__setattr__(self, "labels", tuple(f"E{i + 1}" for i in range(len(self.generators))))

    def prolonged(self) -> list:
        """``(label, multi-index, D_I g)`` for every generator and ``|I| <= order_cap``."""
        out = []
        for label, g in zip(self.labels, self.generators):
            for idx in self.spec.multi_indices(self.order_cap):
                try:
                    dg = iterated_derivative(g, idx, self.spec)
                except JetOrderError:
                    continue
                if dg:
                    out.append((label, idx, dg))
        return out


@dataclass
class Membership:
    status: str  # "member" | "false" | "undecided"
    certificate: list  # (label, multi-index, multiplier Poly)
    unknowns: int = 0
    equations: int = 0

    @property
    def member(self) -> bool:
        return self.status == "member"

    def to_json(self) -> dict:
        return {
            "status": self.status,
            "certificate": [{"generator": lab, "derivative": list(idx), "multiplier": str(q)}
                            for lab, idx, q in self.certificate],
            "unknowns": self.unknowns,
            "equations": self.equations,
        }


def _mono_degree(m) -> int:
    return sum(e for _, e in m)


def _mono_div(t, s):
    """``t / s`` as a monomial, or None if ``s`` does not divide ``t``."""
    td = dict(t)
    for v, e in s:
        if td.get(v, 0) < e:
            return None
        td[v] -= e
    return tuple(sorted(((v, e) for v, e in td.items() if e), key=lambda ve: ve[0]))


def shell_membership(p: Poly, ctx: OnShellContext, _prolonged=None) -> Membership:
    """Decide ``p = sum q_{g,I} D_I g`` with every multiplier of degree at most the cap.

    Candidate multipliers are found by a closure: every monomial that must be
    matched is divided by every monomial of every prolonged generator. When
    the closure completes inside the degree cap the answer is exact for that
    cap ("member" or "false"); when the cap cut it off a negative answer is
    "undecided".
    """
    if not p:
        return Membership("member", [])
    gens = _prolonged if _prolonged is not None else ctx.prolonged()
    target = set(m for m, _ in p.items())
    pending = list(target)
    candidates: dict = {}
    truncated = False
    while pending:
        t = pending.pop()
        for k, (_, _, g) in enumerate(gens):
            for s, _ in g.items():
                q = _mono_div(t, s)
                if q is None or (k, q) in candidates:
                    continue
                if _mono_degree(q) > ctx.degree_cap:
                    truncated = True
                    continue
                prod = Poly._raw({q: Fraction(1)}) * g
                candidates[(k, q)] = prod
                for m, _ in prod.items():
                    if m not in target:
                        target.add(m)
                        pending.append(m)
    rows: dict = {m: {} for m in target}
    for key, prod in candidates.items():
        for m, c in prod.items():
            rows[m][key] = c
    eqs = [(rows[m], p.coefficient(m)) for m in sorted(target, key=str)]
    form = echelon(eqs, candidates)
    sol = form.particular()
    if sol is None:
        return Membership("undecided" if truncated else "false", [], len(candidates), len(eqs))
    cert: dict = {}
    for (k, q), c in sorted(sol.items(), key=lambda kv: (kv[0][0], str(kv[0][1]))):
        cert[k] = cert.get(k, Poly()) + Poly._raw({q: c})
    certificate = [(gens[k][0], gens[k][1], q) for k, q in sorted(cert.items()) if q]
    return Membership("member", certificate, len(candidates), len(eqs))


def verify_certificate(p: Poly, ctx: OnShellContext, certificate) -> bool:
    """Re-expand ``sum q * D_I g`` and compare with ``p``."""
    gens = dict(zip(ctx.labels, ctx.generators))
    total = Poly()
    for label, idx, q in certificate:
        total = total + q * iterated_derivative(gens[label], idx, ctx.spec)
    return total == p
