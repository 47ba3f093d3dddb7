"""TOML structure files.

Three kinds are understood:

``strict_lie``
    ``parameters``, ``fields``, and tables ``brackets`` (left, right, value),
    ``action`` (param, field, value) and ``boundary`` (param, value).
``gauge``
    ``parameters``, ``fields``, ``delta`` (param, word, value) and
    ``correction`` (left, right, word, value); the most general input.
``nonlinear_lie``
    ``generators`` and ``W`` (left, right, value) with polynomial values.

Values are linear combinations in the text grammar of :mod:`shlie.coalgebra`.
:func:`dumps` is canonical, so ``dumps(loads(text)) == text`` for every file
it wrote.
"""

from __future__ import annotations

import itertools
import sys
from dataclasses import dataclass
from pathlib import Path

if sys.version_info >= (3, 11):
    import tomllib
else:
    import tomli as tomllib

import tomli_w

from .coalgebra import BasisError, GradedBasis, parse_vector, render_vector
from .gauge import GaugeData, GaugeDataError, build_strict_lie
from .hom import HomMap
from .ikeda import AxiomError, NonlinearLieAlgebra, field_sector_gauge_data
from .scalars import PolyError

KINDS = ("strict_lie", "gauge", "nonlinear_lie")


class StructureError(ValueError):
    pass


@dataclass(frozen=True)
class Structure:
    kind: str
    name: str
    description: str
    gauge: GaugeData
    alg: NonlinearLieAlgebra | None = None
    max_order: int | None = None

    @property
    def is_sigma(self) -> bool:
        return self.alg is not None


def load(path) -> Structure:
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise StructureError(f"{path}: {exc.strerror}") from None
    return loads(text, source=str(path))


def loads(text: str, source: str = "<string>") -> Structure:
    try:
        doc = tomllib.loads(text)
    except tomllib.TOMLDecodeError as exc:
        # the decoder message carries "(at line L, column C)"
        raise StructureError(f"{source}: {exc}") from None
    try:
        return _from_doc(doc)
    except (StructureError, BasisError, GaugeDataError, AxiomError, PolyError, KeyError, TypeError) as exc:
        msg = exc.args[0] if exc.args else type(exc).__name__
        if isinstance(exc, KeyError):
            msg = f"missing key {msg!r}"
        raise StructureError(f"{source}: {msg}") from None


def _get(doc, key, kind=list):
    v = doc.get(key, kind())
    if not isinstance(v, kind):
        raise StructureError(f"{key!r} must be a {kind.__name__}")
    return v


def _from_doc(doc: dict) -> Structure:
    kind = doc.get("kind")
    if kind not in KINDS:
        raise StructureError(f"unknown kind {kind!r}; expected one of {', '.join(KINDS)}")
    name = doc.get("name", "")
    desc = doc.get("description", "")
    if kind == "nonlinear_lie":
        gens = _get(doc, "generators")
        table = {}
        for row in _get(doc, "W"):
            key = (row["left"], row["right"])
            if key in table or key[::-1] in table:
                raise StructureError(f"duplicate W entry for ({key[0]}, {key[1]})")
            table[key] = row["value"]
        for a, b in table:
            if a not in gens or b not in gens:
                raise StructureError(f"W entry ({a}, {b}) names an undeclared generator")
        alg = NonlinearLieAlgebra.from_table(gens, table, name)
        sigma = doc.get("sigma", {})
        return Structure(kind, name, desc, field_sector_gauge_data(alg, name + "_fields"), alg,
                         sigma.get("max_order"))
    params = _get(doc, "parameters")
    fields = _get(doc, "fields")
    if kind == "strict_lie":
        xi = GradedBasis.uniform(params)
        phi = GradedBasis.uniform(fields)
        brackets, action, boundary = {}, {}, {}
        for row in _get(doc, "brackets"):
            key = (row["left"], row["right"])
            vec = _named(xi, parse_vector(xi, row["value"]))
            if key[::-1] in brackets and brackets[key[::-1]] != {k: -v for k, v in vec.items()}:
                raise StructureError(f"bracket is not antisymmetric on ({key[0]}, {key[1]})")
            brackets[key] = vec
        for row in _get(doc, "action"):
            action[(row["param"], row["field"])] = _named(phi, parse_vector(phi, row["value"]))
        for row in _get(doc, "boundary"):
            boundary[row["param"]] = _named(phi, parse_vector(phi, row["value"]))
        data = build_strict_lie(params, fields, brackets, action, boundary, name)
        return Structure(kind, name, desc, data)
    xi = GradedBasis.uniform(params)
    phi = GradedBasis.uniform(fields)
    delta_vals: dict = {}
    for row in _get(doc, "delta"):
        if not len(phi) and row.get("value", "0") != "0":
            raise StructureError("empty field basis with nonzero action values")
        i = xi.index(row["param"])
        w, s = phi.parse_word(row["word"])
        vec = parse_vector(phi, row["value"])
        if s and vec:
            delta_vals.setdefault(i, {})[w] = {k: s * v for k, v in vec.items()}
    raw: dict = {}
    for row in _get(doc, "correction"):
        i, j = xi.index(row["left"]), xi.index(row["right"])
        w, s = phi.parse_word(row["word"])
        vec = {k: s * v for k, v in parse_vector(xi, row["value"]).items()}
        raw[(i, j, w)] = vec
    C_vals: dict = {}
    for (i, j, w), vec in raw.items():
        if i == j:
            if vec:
                raise StructureError(f"correction ({xi.names[i]}, {xi.names[i]}) must vanish")
            continue
        other = raw.get((j, i, w))
        if other is not None and other != {k: -v for k, v in vec.items()}:
            raise StructureError(
                f"correction is not antisymmetric on ({xi.names[min(i, j)]}, {xi.names[max(i, j)]}) "
                f"at word {phi.render_word(w)}")
        a, b, sign = (i, j, 1) if i < j else (j, i, -1)
        if vec:
            C_vals.setdefault((a, b), {})[w] = {k: sign * v for k, v in vec.items()}
    delta = {i: HomMap(phi, phi, v, 0, None, "A") for i, v in delta_vals.items()}
    C = {k: HomMap(phi, xi, v, 0, None, "k") for k, v in C_vals.items()}
    return Structure(kind, name, desc, GaugeData(xi, phi, delta, C, name))


def _named(basis: GradedBasis, v: dict) -> dict:
    return {basis.names[i]: c for i, c in v.items()}


# -- writing -----------------------------------------------------------------------


def to_doc(st: Structure) -> dict:
    doc = {"kind": st.kind, "name": st.name}
    if st.description:
        doc["description"] = st.description
    if st.kind == "nonlinear_lie":
        alg = st.alg
        doc["generators"] = list(alg.names)
        doc["W"] = [{"left": alg.names[a], "right": alg.names[b], "value": str(p)}
                    for (a, b), p in sorted(alg.W.items())]
        if st.max_order is not None:
            doc["sigma"] = {"max_order": st.max_order}
        return doc
    g = st.gauge
    doc["parameters"] = list(g.xi.names)
    doc["fields"] = list(g.phi.names)
    if st.kind == "strict_lie":
        rows = []
        for i, j in itertools.combinations(range(len(g.xi)), 2):
            v = g.correction(i, j)(())
            if v:
                rows.append({"left": g.xi.names[i], "right": g.xi.names[j], "value": render_vector(g.xi, v)})
        doc["brackets"] = rows
        doc["action"] = [
            {"param": g.xi.names[i], "field": g.phi.names[a], "value": render_vector(g.phi, g.action(i)((a,)))}
            for i in range(len(g.xi)) for a in range(len(g.phi)) if g.action(i)((a,))
        ]
        doc["boundary"] = [{"param": g.xi.names[i], "value": render_vector(g.phi, g.boundary(i))}
                           for i in range(len(g.xi)) if g.boundary(i)]
        return doc
    doc["delta"] = [{"param": g.xi.names[i], "word": w, "value": v}
                    for i in sorted(g.delta) for w, v in g.delta[i].entries()]
    doc["correction"] = [{"left": g.xi.names[i], "right": g.xi.names[j], "word": w, "value": v}
                         for (i, j) in sorted(g.C) for w, v in g.C[(i, j)].entries()]
    return doc


def dumps(st: Structure) -> str:
    doc = {k: v for k, v in to_doc(st).items() if v != []}
    return tomli_w.dumps(doc)


def save(st: Structure, path) -> None:
    Path(path).write_text(dumps(st), encoding="utf-8")


def as_structure(data: GaugeData, kind: str = "gauge", description: str = "") -> Structure:
    return Structure(kind, data.name, description, data)


def sigma_structure(alg: NonlinearLieAlgebra, description: str = "", max_order: int | None = None) -> Structure:
    return Structure("nonlinear_lie", alg.label, description, field_sector_gauge_data(alg, alg.label + "_fields"),
                     alg, max_order)


def fixture_dir() -> Path:
    import os

    env = os.environ.get("SHLIE_FIXTURES")
    return Path(env) if env else Path(__file__).with_name("fixtures")
