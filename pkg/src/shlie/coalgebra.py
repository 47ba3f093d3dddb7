"""The free graded cocommutative coalgebra on a finite graded basis.

Words are tuples of generator indices in canonical (sorted) order; the empty
word is the unit ``1``. An element is a ``dict`` mapping words to scalars
(``Fraction`` or ``Poly``). Koszul signs come from generator degrees only.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Iterator, Sequence

from . import kernels
from .scalars import NAME_RE, Poly, fmt_scalar, name_key, parse_scalar

Word = tuple
Element = dict
Tensor = dict

UNIT: Word = ()


class BasisError(ValueError):
    pass


@dataclass(frozen=True)
class GradedBasis:
    """Finite list of named generators with integer degrees.

    Generators are stored sorted by ``(degree, natural name order)``; that order
    is the canonical order of factors inside words.
    """

    names: tuple
    degrees: tuple
    _index: dict = field(init=False, repr=False, compare=False)
    odd: tuple = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        if len(self.names) != len(self.degrees):
            raise BasisError("names and degrees differ in length")
        if len(set(self.names)) != len(self.names):
            raise BasisError(f"duplicate generator names in {self.names}")
        pairs = sorted(zip(self.names, self.degrees), key=lambda t: (t[1], name_key(t[0])))
        object.__setattr__(self, "names", tuple(n for n, _ in pairs))
        object.__setattr__(self, "degrees", tuple(int(d) for _, d in pairs))
        object.__setattr__(self, "_index", {n: i for i, (n, _) in enumerate(pairs)})
        object.__setattr__(self, "odd", tuple(bool(d % 2) for _, d in pairs))

    @classmethod
    def from_pairs(cls, pairs: Iterable[tuple[str, int]]) -> "GradedBasis":
        pairs = list(pairs)
        return cls(tuple(n for n, _ in pairs), tuple(d for _, d in pairs))

    @classmethod
    def uniform(cls, names: Sequence[str], degree: int = 0) -> "GradedBasis":
        return cls(tuple(names), (degree,) * len(names))

    def __len__(self) -> int:
        return len(self.names)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise BasisError(f"{name!r} is not a generator of this basis") from None

    def pairs(self) -> list:
        return list(zip(self.names, self.degrees))

    def desuspend(self) -> "GradedBasis":
        return GradedBasis(self.names, tuple(d - 1 for d in self.degrees))

    def suspend(self) -> "GradedBasis":
        return GradedBasis(self.names, tuple(d + 1 for d in self.degrees))

    def word_degree(self, word: Word) -> int:
        return sum(self.degrees[i] for i in word)

    def words(self, max_len: int, min_len: int = 0, gens: Sequence[int] | None = None) -> Iterator[Word]:
        """Canonical words with ``min_len <= length <= max_len``, shortest first.

        Odd generators appear at most once. ``gens`` restricts the alphabet.
        """
        alphabet = sorted(range(len(self.names)) if gens is None else gens)
        for n in range(min_len, max_len + 1):
            yield from self._words_of_length(alphabet, n)

    def _words_of_length(self, alphabet, n, start=0):
        if n == 0:
            yield ()
            return
        for k in range(start, len(alphabet)):
            g = alphabet[k]
            nxt = k + 1 if self.odd[g] else k
            for rest in self._words_of_length(alphabet, n - 1, nxt):
                yield (g,) + rest

    def render_word(self, word: Word) -> str:
        return "^".join(self.names[i] for i in word) if word else "1"

    def parse_word(self, text: str) -> tuple[Word, int]:
        """Parse ``a^b^c`` (``a^2`` repeats a factor); returns (canonical word, sign)."""
        text = text.strip()
        if text == "1":
            return (), 1
        factors = []
        parts = text.split("^")
        k = 0
        while k < len(parts):
            part = parts[k].strip()
            if not re.fullmatch(NAME_RE, part):
                raise BasisError(f"bad word factor {part!r} in {text!r}")
            reps = 1
            if k + 1 < len(parts) and parts[k + 1].strip().isdigit():
                reps = int(parts[k + 1])
                k += 1
            factors.extend([self.index(part)] * reps)
            k += 1
        return normalize_word(self, factors)


def normalize_word(basis: GradedBasis, factors: Sequence) -> tuple[Word, int]:
    """Sort factors into canonical order with the Koszul sign.

    Factors may be generator names or indices. Returns ``(word, sign)`` with
    sign 0 when an odd generator repeats (the word is zero).
    """
    idx = tuple(basis.index(f) if isinstance(f, str) else int(f) for f in factors)
    for i in idx:
        if not 0 <= i < len(basis):
            raise BasisError(f"generator index {i} outside basis")
    return kernels.sort_sign(idx, basis.odd)


def unshuffles(p: int, n: int) -> list[tuple[tuple, tuple]]:
    """(p, n-p)-unshuffles as 1-based (left, right) index tuples."""
    if not 0 <= p <= n:
        raise ValueError(f"need 0 <= p <= n, got p={p}, n={n}")
    return [
        (tuple(i + 1 for i in left), tuple(i + 1 for i in right))
        for left, right in kernels.unshuffles(n, p)
    ]


def add_term(acc: dict, key, c) -> None:
    """Accumulate ``c`` at ``key``, deleting entries that cancel."""
    if not c:
        return
    s = acc.get(key)
    if s is None:
        acc[key] = c
    else:
        s = s + c
        if s:
            acc[key] = s
        else:
            del acc[key]


def scale(F: dict, c) -> dict:
    if not c:
        return {}
    out = {}
    for k, v in F.items():
        add_term(out, k, v * c)
    return out


def combine(*pairs) -> dict:
    """Linear combination ``sum c_i F_i`` of dict-vectors given as (c, F) pairs."""
    out: dict = {}
    for c, F in pairs:
        for k, v in F.items():
            add_term(out, k, c * v)
    return out


def sub(F: dict, G: dict) -> dict:
    return combine((1, F), (-1, G))


def splits(basis: GradedBasis, word: Word) -> Iterator[tuple[Word, Word, int]]:
    """Every term ``sign * left (x) right`` of the coproduct of one word."""
    n = len(word)
    for p in range(n + 1):
        yield from kernels.split_word(word, basis.odd, p)


def coproduct(basis: GradedBasis, F: Element, reduced: bool = False) -> Tensor:
    """Unshuffle coproduct, including the ``1 (x) F`` and ``F (x) 1`` terms.

    ``reduced=True`` drops those two unit terms.
    """
    out: Tensor = {}
    for w, c in F.items():
        n = len(w)
        lo, hi = (1, n - 1) if reduced else (0, n)
        for p in range(lo, hi + 1):
            for left, right, s in kernels.split_word(w, basis.odd, p):
                add_term(out, (left, right), c * s)
    return out


def coproduct_left(basis: GradedBasis, F: Element) -> Tensor:
    """``(Delta (x) 1) Delta F`` as a 3-slot tensor."""
    out: Tensor = {}
    for (a, b), c in coproduct(basis, F).items():
        for (a1, a2), c2 in coproduct(basis, {a: 1}).items():
            add_term(out, (a1, a2, b), c * c2)
    return out


def coproduct_right(basis: GradedBasis, F: Element) -> Tensor:
    """``(1 (x) Delta) Delta F`` as a 3-slot tensor."""
    out: Tensor = {}
    for (a, b), c in coproduct(basis, F).items():
        for (b1, b2), c2 in coproduct(basis, {b: 1}).items():
            add_term(out, (a, b1, b2), c * c2)
    return out


def twist(basis: GradedBasis, T: Tensor) -> Tensor:
    """Graded transposition ``a (x) b -> (-1)^{|a||b|} b (x) a``."""
    out: Tensor = {}
    for (a, b), c in T.items():
        s = -1 if (basis.word_degree(a) * basis.word_degree(b)) % 2 else 1
        add_term(out, (b, a), c * s)
    return out


def wedge(basis: GradedBasis, F: Element, G: Element) -> Element:
    """Graded-symmetric product in the algebra structure of the coalgebra."""
    out: Element = {}
    for u, a in F.items():
        for v, b in G.items():
            w, s = kernels.sort_sign(u + v, basis.odd)
            if s:
                add_term(out, w, a * b * s)
    return out


def vector_to_element(v: dict) -> Element:
    return {(i,): c for i, c in v.items()}


def desuspend_basis(basis: GradedBasis) -> GradedBasis:
    return basis.desuspend()


# -- text ------------------------------------------------------------------


def render_element(basis: GradedBasis, F: Element) -> str:
    """Render as ``c * word + ...``; words sorted by (length, word)."""
    if not F:
        return "0"
    parts = []
    for w in sorted(F, key=lambda w: (len(w), w)):
        c = F[w]
        parts.append(_render_term(c, basis.render_word(w), first=not parts))
    return " ".join(parts)


def render_vector(basis: GradedBasis, v: dict) -> str:
    return render_element(basis, vector_to_element(v))


def _render_term(c, body: str, first: bool) -> str:
    if isinstance(c, Poly) and not c.is_constant():
        text = f"({c}) * {body}" if body != "1" else f"({c})"
        return text if first else "+ " + text
    c = c.constant_term() if isinstance(c, Poly) else Fraction(c)
    mag = abs(c)
    if body == "1":
        text = fmt_scalar(mag)
    else:
        text = body if mag == 1 else f"{fmt_scalar(mag)} * {body}"
    if first:
        return text if c > 0 else "-" + text
    return ("+ " if c > 0 else "- ") + text


def _split_top_level(text: str) -> list[tuple[int, str]]:
    terms, depth, cur, sign = [], 0, [], 1
    i = 0
    text = text.strip()
    while i < len(text):
        ch = text[i]
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if depth == 0 and ch in "+-":
            prev = "".join(cur).strip()
            if prev and not prev.endswith("*") and not prev.endswith("^"):
                terms.append((sign, prev))
                cur = []
                sign = 1 if ch == "+" else -1
                i += 1
                continue
            if not prev:
                sign = sign * (1 if ch == "+" else -1)
                i += 1
                continue
        cur.append(ch)
        i += 1
    last = "".join(cur).strip()
    if last:
        terms.append((sign, last))
    return terms


def parse_element(basis: GradedBasis, text: str) -> Element:
    """Inverse of :func:`render_element`."""
    text = text.strip()
    if text == "0":
        return {}
    out: Element = {}
    for sign, term in _split_top_level(text):
        coef = Fraction(1)
        body = term
        if term.startswith("("):
            depth = 0
            for k, ch in enumerate(term):
                depth += ch == "("
                depth -= ch == ")"
                if depth == 0:
                    break
            coef = parse_scalar(term[1:k])
            body = term[k + 1 :].strip()
            body = body[1:].strip() if body.startswith("*") else (body or "1")
        elif "*" in term:
            head, body = term.split("*", 1)
            coef = parse_scalar(head)
            body = body.strip()
        elif re.fullmatch(r"\d+(/\d+)?", term):
            coef, body = parse_scalar(term), "1"
        w, s = basis.parse_word(body)
        if s:
            add_term(out, w, coef * s * sign)
    return out


def parse_vector(basis: GradedBasis, text: str) -> dict:
    F = parse_element(basis, text)
    v = {}
    for w, c in F.items():
        if len(w) != 1:
            raise BasisError(f"expected a linear combination of generators, got {text!r}")
        v[w[0]] = c
    return v
