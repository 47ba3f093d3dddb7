"""Exact rationals and sparse multivariate polynomials over Q.

A monomial is a tuple ``((name, exp), ...)`` sorted by name, with every
exponent positive; the empty tuple is the constant monomial. Polynomials in
different indeterminates combine freely: universes merge by name.

Text grammar (rendering and parsing round-trip exactly)::

    3/2 * T1^2 * T2 - T3 + 1
"""

from __future__ import annotations

import re
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Mapping, Union

from . import kernels

Monomial = tuple
Number = Union[int, Fraction]


class PolyError(ValueError):
    pass


class ParseError(PolyError):
    def __init__(self, message: str, text: str, pos: int):
        super().__init__(f"{message} at column {pos + 1}: {text!r}")
        self.pos = pos


@lru_cache(maxsize=None)
def name_key(name: str) -> tuple:
    """Natural sort key: digit runs compare numerically (``T2 < T10``)."""
    return tuple(
        (0, int(chunk), "") if chunk.isdigit() else (1, 0, chunk)
        for chunk in re.findall(r"\d+|\D+", name)
    )


def _as_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, int):
        return Fraction(c)
    raise TypeError(f"not an exact rational: {c!r}")


class Poly:
    """Immutable polynomial with Fraction coefficients."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Number] | None = None):
        self._terms = {m: _as_fraction(c) for m, c in (terms or {}).items() if c}
        self._hash = None

    @classmethod
    def _raw(cls, terms: dict) -> "Poly":
        p = object.__new__(cls)
        p._terms = terms
        p._hash = None
        return p

    @classmethod
    def const(cls, c: Number) -> "Poly":
        return cls._raw({(): _as_fraction(c)} if c else {})

    @classmethod
    def var(cls, name: str, exp: int = 1) -> "Poly":
        if exp < 0:
            raise PolyError("negative exponent")
        return cls._raw({((name, exp),): Fraction(1)} if exp else {(): Fraction(1)})

    @classmethod
    def coerce(cls, x) -> "Poly":
        if isinstance(x, Poly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {x!r} to Poly")

    @classmethod
    def parse(cls, text: str) -> "Poly":
        return _Parser(text).parse()

    # -- inspection -------------------------------------------------------

    @property
    def terms(self) -> dict:
        return dict(self._terms)

    def items(self):
        return self._terms.items()

    def __iter__(self):
        return iter(self._terms.items())

    def __len__(self) -> int:
        return len(self._terms)

    def __bool__(self) -> bool:
        return bool(self._terms)

    @property
    def variables(self) -> frozenset:
        return frozenset(v for m in self._terms for v, _ in m)

    @property
    def degree(self) -> int:
        """Total degree; -1 for the zero polynomial."""
        return max((sum(e for _, e in m) for m in self._terms), default=-1)

    def is_constant(self) -> bool:
        return all(not m for m in self._terms)

    def constant_term(self) -> Fraction:
        return self._terms.get((), Fraction(0))

    def coefficient(self, monomial: Monomial) -> Fraction:
        return self._terms.get(monomial, Fraction(0))

    def homogeneous_part(self, k: int) -> "Poly":
        return Poly._raw({m: c for m, c in self._terms.items() if sum(e for _, e in m) == k})

    # -- arithmetic -------------------------------------------------------

    def __add__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        elif not isinstance(other, Poly):
            return NotImplemented
        out = dict(self._terms)
        for m, c in other._terms.items():
            s = out.get(m, 0) + c
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return Poly._raw(out)

    __radd__ = __add__

    def __neg__(self):
        return Poly._raw({m: -c for m, c in self._terms.items()})

    def __sub__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        elif not isinstance(other, Poly):
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return Poly._raw({})
            return Poly._raw({m: c * other for m, c in self._terms.items()})
        if not isinstance(other, Poly):
            return NotImplemented
        return Poly._raw(kernels.poly_mul(self._terms, other._terms))

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * (Fraction(1) / other)
        return NotImplemented

    def __pow__(self, n: int):
        if not isinstance(n, int) or n < 0:
            raise PolyError("exponent must be a non-negative integer")
        result = Poly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self._terms == other._terms
        if isinstance(other, (int, Fraction)):
            if not other:
                return not self._terms
            return self._terms == {(): other}
        return NotImplemented

    def __hash__(self):
        if self._hash is None:
            if self.is_constant():
                self._hash = hash(self.constant_term())
            else:
                self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # -- calculus and composition -----------------------------------------

    def partial(self, name: str, *, declared: Iterable[str] | None = None) -> "Poly":
        """Formal partial derivative.

        When ``declared`` is given, ``name`` must belong to it.
        """
        if declared is not None and name not in set(declared):
            raise PolyError(f"unknown indeterminate {name!r}")
        out = {}
        for m, c in self._terms.items():
            for k, (v, e) in enumerate(m):
                if v == name:
                    nm = m[:k] + ((v, e - 1),) + m[k + 1 :] if e > 1 else m[:k] + m[k + 1 :]
                    out[nm] = out.get(nm, 0) + c * e
                    break
        return Poly._raw({m: c for m, c in out.items() if c})

    def substitute(self, assignment: Mapping[str, object], *, strict: bool = True) -> "Poly":
        """Replace indeterminates by polynomials (or numbers).

        With ``strict`` every indeterminate must be assigned; otherwise
        unassigned ones are kept.
        """
        images = {}
        for v in self.variables:
            if v in assignment:
                images[v] = Poly.coerce(assignment[v])
            elif strict:
                raise PolyError(f"no assignment for indeterminate {v!r}")
            else:
                images[v] = Poly.var(v)
        powers: dict = {}

        def power(v, e):
            key = (v, e)
            if key not in powers:
                powers[key] = images[v] ** e
            return powers[key]

        result = Poly._raw({})
        for m, c in self._terms.items():
            t = Poly.const(c)
            for v, e in m:
                t = t * power(v, e)
            result = result + t
        return result

    def map_coefficients(self, f) -> "Poly":
        return Poly({m: f(c) for m, c in self._terms.items()})

    # -- text -------------------------------------------------------------

    def sorted_terms(self) -> list:
        """Terms in canonical graded-lex order (highest degree first)."""
        order = sorted(self.variables, key=name_key)
        rank = {v: i for i, v in enumerate(order)}

        def key(item):
            m = item[0]
            vec = [0] * len(order)
            for v, e in m:
                vec[rank[v]] = e
            return (-sum(vec), tuple(-e for e in vec))

        return sorted(self._terms.items(), key=key)

    def __str__(self) -> str:
        if not self._terms:
            return "0"
        parts = []
        for m, c in self.sorted_terms():
            factors = [v if e == 1 else f"{v}^{e}" for v, e in sorted(m, key=lambda t: name_key(t[0]))]
            mag = abs(c)
            if factors:
                body = " * ".join(factors if mag == 1 else [_fmt_rational(mag)] + factors)
            else:
                body = _fmt_rational(mag)
            if not parts:
                parts.append(body if c > 0 else "-" + body)
            else:
                parts.append(("+ " if c > 0 else "- ") + body)
        return " ".join(parts)

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


def _fmt_rational(c: Fraction) -> str:
    return str(c.numerator) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"


def fmt_scalar(c) -> str:
    if isinstance(c, Poly):
        return str(c)
    return _fmt_rational(_as_fraction(c))


def parse_scalar(text: str):
    """Parse a scalar; constants come back as Fraction."""
    p = Poly.parse(text)
    return p.constant_term() if p.is_constant() else p


def is_zero(c) -> bool:
    return not c


NAME_RE = r"[A-Za-z_][A-Za-z0-9_]*(?:\[[^\]\s]*\])?"
_TOKEN = re.compile(rf"\s*(?:(?P<num>\d+)|(?P<name>{NAME_RE})|(?P<op>[-+*/^()]))")


class _Parser:
    def __init__(self, text: str):
        self.text = text
        self.tokens = []
        pos = 0
        while pos < len(text):
            if text[pos:].strip() == "":
                break
            mt = _TOKEN.match(text, pos)
            if not mt:
                raise ParseError("unexpected character", text, pos)
            kind = mt.lastgroup
            self.tokens.append((kind, mt.group(kind), mt.start(kind)))
            pos = mt.end()
        self.i = 0

    def peek(self):
        return self.tokens[self.i] if self.i < len(self.tokens) else (None, None, len(self.text))

    def take(self):
        tok = self.peek()
        self.i += 1
        return tok

    def expect(self, value):
        kind, val, pos = self.take()
        if val != value:
            raise ParseError(f"expected {value!r}", self.text, pos)

    def parse(self) -> Poly:
        if not self.tokens:
            raise ParseError("empty expression", self.text, 0)
        p = self.expr()
        kind, val, pos = self.peek()
        if kind is not None:
            raise ParseError(f"unexpected {val!r}", self.text, pos)
        return p

    def expr(self) -> Poly:
        p = self.term()
        while True:
            kind, val, _ = self.peek()
            if val == "+":
                self.take()
                p = p + self.term()
            elif val == "-":
                self.take()
                p = p - self.term()
            else:
                return p

    def term(self) -> Poly:
        p = self.factor()
        while True:
            kind, val, pos = self.peek()
            if val == "*":
                self.take()
                p = p * self.factor()
            elif val == "/":
                self.take()
                q = self.factor()
                if not q.is_constant() or not q:
                    raise ParseError("division by a non-constant or zero", self.text, pos)
                p = p / q.constant_term()
            else:
                return p

    def factor(self) -> Poly:
        kind, val, pos = self.peek()
        if val == "-":
            self.take()
            return -self.factor()
        base = self.atom()
        kind, val, pos = self.peek()
        if val == "^":
            self.take()
            kind, val, pos = self.take()
            if kind != "num":
                raise ParseError("exponent must be a non-negative integer", self.text, pos)
            base = base ** int(val)
        return base

    def atom(self) -> Poly:
        kind, val, pos = self.take()
        if kind == "num":
            return Poly.const(int(val))
        if kind == "name":
            return Poly.var(val)
        if val == "(":
            p = self.expr()
            self.expect(")")
            return p
        raise ParseError("expected a number, name or '('", self.text, pos)
