"""Maps out of the coalgebra, their coderivation lifts, and the Gerstenhaber bracket.

A :class:`HomMap` is stored extensionally by its values on canonical words; a
word without an entry maps to zero. When ``known_arity`` is set the map is
only known on words up to that length and evaluating it further raises
:class:`ArityCapError` instead of guessing zero.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable

from .coalgebra import (
    Element,
    GradedBasis,
    Word,
    add_term,
    coproduct,
    render_vector,
    splits,
    sub,
    wedge,
)


class ArityCapError(RuntimeError):
    """A computation needed values of a map beyond the arity it is known to."""


@dataclass(frozen=True)
class HomMap:
    source: GradedBasis
    target: GradedBasis
    values: dict  # word -> {target index: scalar}
    degree: int = 0
    known_arity: int | None = None
    linearity: str = "A"  # "A" or "k"; a tag only

    def __post_init__(self):
        clean = {w: v for w, v in self.values.items() if v}
        object.__setattr__(self, "values", clean)
        if self.known_arity is not None:
            for w in clean:
                if len(w) > self.known_arity:
                    raise ArityCapError(f"value stored on word of length {len(w)} beyond known arity")

    @classmethod
    def zero(cls, source, target, degree=0, linearity="A") -> "HomMap":
        return cls(source, target, {}, degree, None, linearity)

    @classmethod
    def from_function(cls, source, target, fn: Callable[[Word], dict], max_arity: int,
                      degree=0, linearity="A", exact=True) -> "HomMap":
        """Tabulate ``fn`` on every word up to ``max_arity``.

        With ``exact`` the caller asserts ``fn`` vanishes beyond ``max_arity``.
        """
        vals = {}
        for w in source.words(max_arity):
            v = fn(w)
            if v:
                vals[w] = v
        return cls(source, target, vals, degree, None if exact else max_arity, linearity)

    @property
    def top_arity(self) -> int:
        """Largest word length carrying a nonzero value (-1 for the zero map)."""
        return max((len(w) for w in self.values), default=-1)

    @property
    def arities(self) -> set:
        return {len(w) for w in self.values}

    def component(self, i: int) -> "HomMap":
        """Restriction to words of length ``i``."""
        return HomMap(self.source, self.target, {w: v for w, v in self.values.items() if len(w) == i},
                      self.degree, None, self.linearity)

    def __call__(self, word: Word) -> dict:
        if self.known_arity is not None and len(word) > self.known_arity:
            raise ArityCapError(f"map known up to arity {self.known_arity}, asked for {len(word)}")
        return self.values.get(word, {})

    def apply(self, F: Element) -> dict:
        out: dict = {}
        for w, c in F.items():
            for i, a in self(w).items():
                add_term(out, i, c * a)
        return out

    def __add__(self, other: "HomMap") -> "HomMap":
        return _lincomb(self, other, 1)

    def __sub__(self, other: "HomMap") -> "HomMap":
        return _lincomb(self, other, -1)

    def __neg__(self) -> "HomMap":
        return self.scaled(-1)

    def scaled(self, c) -> "HomMap":
        vals = {w: {i: a * c for i, a in v.items() if a * c} for w, v in self.values.items()}
        return HomMap(self.source, self.target, vals, self.degree, self.known_arity, self.linearity)

    def restricted(self, max_arity: int) -> "HomMap":
        vals = {w: v for w, v in self.values.items() if len(w) <= max_arity}
        return HomMap(self.source, self.target, vals, self.degree, max_arity, self.linearity)

    def is_zero(self) -> bool:
        return not self.values

    def entries(self) -> list:
        """(word text, value text) pairs in canonical order, for serialization."""
        return [
            (self.source.render_word(w), render_vector(self.target, self.values[w]))
            for w in sorted(self.values, key=lambda w: (len(w), w))
        ]

    def __eq__(self, other):
        if not isinstance(other, HomMap):
            return NotImplemented
        return (self.source == other.source and self.target == other.target
                and self.values == other.values and self.known_arity == other.known_arity)

    __hash__ = None  # type: ignore[assignment]


def _lincomb(f: HomMap, g: HomMap, s) -> HomMap:
    if f.source != g.source or f.target != g.target:
        raise ValueError("maps have different source or target")
    vals = {w: dict(v) for w, v in f.values.items()}
    for w, v in g.values.items():
        acc = vals.setdefault(w, {})
        for i, a in v.items():
            add_term(acc, i, s * a)
    known = _min_known(f.known_arity, g.known_arity)
    return HomMap(f.source, f.target, vals, f.degree, known, f.linearity)


def _min_known(a, b):
    if a is None:
        return b
    if b is None:
        return a
    return min(a, b)


@dataclass
class Coderivation:
    """The coderivation cogenerated by ``symbol``, evaluated lazily and cached per word."""

    symbol: HomMap
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def basis(self) -> GradedBasis:
        return self.symbol.source

    @property
    def degree(self) -> int:
        return self.symbol.degree

    def on_word(self, word: Word) -> Element:
        out = self._cache.get(word)
        if out is None:
            out = {}
            h = self.symbol
            arities = h.arities
            for left, right, s in splits(self.basis, word):
                if len(left) not in arities and (h.known_arity is None or len(left) <= h.known_arity):
                    continue
                val = h(left)
                if val:
                    piece = wedge(self.basis, {(i,): a for i, a in val.items()}, {right: s})
                    for w, c in piece.items():
                        add_term(out, w, c)
            self._cache[word] = out
        return out

    def __call__(self, F: Element) -> Element:
        out: Element = {}
        for w, c in F.items():
            for w2, c2 in self.on_word(w).items():
                add_term(out, w2, c * c2)
        return out


def lift(h: HomMap) -> Coderivation:
    """``h_bar = m o (h (x) 1) o Delta``, the coderivation with cogenerating symbol ``h``."""
    if h.source != h.target:
        raise ValueError("lift needs a map into the cogenerating space")
    return Coderivation(h)


def lift_via_coproduct(h: HomMap, F: Element) -> Element:
    """Independent route to ``lift(h)(F)``: apply the coproduct, then ``h (x) 1``, then multiply."""
    basis = h.source
    out: Element = {}
    for (a, b), c in coproduct(basis, F).items():
        val = h(a)
        if val:
            for w, c2 in wedge(basis, {(i,): x for i, x in val.items()}, {b: 1}).items():
                add_term(out, w, c * c2)
    return out


def _support_bound(f: HomMap, g: HomMap) -> int:
    if f.is_zero() or g.is_zero():
        return -1
    return f.top_arity - 1 + g.top_arity


def comp(f: HomMap, g: HomMap, max_arity: int | None = None) -> HomMap:
    """Gerstenhaber comp ``f . g = f o g_bar``.

    The result is exact when both inputs are exact and ``max_arity`` does not
    cut the support; otherwise it is marked as known only up to
    ``max_arity``. Needing values beyond a partial input raises
    :class:`ArityCapError`.
    """
    if g.source != g.target or f.source != g.source:
        raise ValueError("comp needs g in Hom(L, V) with f defined on L")
    bound = _support_bound(f, g)
    known = None
    if f.known_arity is not None or g.known_arity is not None:
        if max_arity is None:
            raise ArityCapError("partial inputs need an explicit max_arity")
    if max_arity is not None and (bound > max_arity or f.known_arity is not None or g.known_arity is not None):
        bound = max_arity
        known = max_arity
    gbar = lift(g)
    vals = {}
    for w in f.source.words(max(bound, -1)) if bound >= 0 else ():
        v = f.apply(gbar.on_word(w))
        if v:
            vals[w] = v
    return HomMap(f.source, f.target, vals, f.degree + g.degree, known, f.linearity)


def gerstenhaber(f: HomMap, g: HomMap, max_arity: int | None = None) -> HomMap:
    """``[f, g] = f o g_bar - (-1)^{|f||g|} g o f_bar``."""
    sign = -1 if (f.degree * g.degree) % 2 else 1
    return comp(f, g, max_arity) - comp(g, f, max_arity).scaled(sign)


def check_coderivation(theta: Coderivation, cap: int) -> dict:
    """Test ``Delta o Theta = (Theta (x) 1 + 1 (x) Theta) o Delta`` on every word up to ``cap``."""
    basis = theta.basis
    failures = []
    checked = 0
    for w in basis.words(cap):
        lhs = coproduct(basis, theta.on_word(w))
        rhs: dict = {}
        for (a, b), c in coproduct(basis, {w: 1}).items():
            for a2, c2 in theta.on_word(a).items():
                add_term(rhs, (a2, b), c * c2)
            s = -1 if (theta.degree * basis.word_degree(a)) % 2 else 1
            for b2, c2 in theta.on_word(b).items():
                add_term(rhs, (a, b2), c * c2 * s)
        diff = sub(lhs, rhs)
        checked += 1
        if diff:
            failures.append({
                "word": basis.render_word(w),
                "difference": {f"{basis.render_word(a)} (x) {basis.render_word(b)}": str(c)
                               for (a, b), c in sorted(diff.items())},
            })
    return {"name": "coderivation", "checked": checked, "passed": not failures, "failures": failures}


def coderivation_commutator(f: HomMap, g: HomMap, F: Element) -> Element:
    """``[f_bar, g_bar](F)`` with the graded sign."""
    fb, gb = lift(f), lift(g)
    sign = -1 if (f.degree * g.degree) % 2 else 1
    out = fb(gb(F))
    for w, c in gb(fb(F)).items():
        add_term(out, w, -sign * c)
    return out


def words_up_to(basis: GradedBasis, cap: int) -> Iterable[Word]:
    return basis.words(cap)
