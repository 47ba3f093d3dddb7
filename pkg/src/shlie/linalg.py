"""Exact sparse linear algebra over Q.

Equations are ``({unknown: coefficient}, rhs)`` pairs; unknowns are any
hashable keys. Elimination is plain Gauss-Jordan on dict rows, which is
plenty for the few thousand unknowns the bounded checks produce.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Hashable, Iterable


@dataclass
class EchelonForm:
    pivots: dict  # unknown -> reduced row (dict, rhs)
    inconsistent: bool
    n_unknowns: int

    @property
    def rank(self) -> int:
        return len(self.pivots)

    @property
    def nullity(self) -> int:
        return self.n_unknowns - self.rank

    def particular(self) -> dict | None:
        """A solution with every free unknown set to zero, or None."""
        if self.inconsistent:
            return None
        return {k: rhs for k, (row, rhs) in self.pivots.items() if rhs}


def _reduce(row: dict, rhs, pivots: dict):
    row = dict(row)
    for k in [k for k in row if k in pivots]:
        c = row.pop(k, 0)
        if not c:
            continue
        prow, prhs = pivots[k]
        for j, a in prow.items():
            if j == k:
                continue
            v = row.get(j, 0) - c * a
            if v:
                row[j] = v
            else:
                row.pop(j, None)
        rhs = rhs - c * prhs
    return row, rhs


def echelon(equations: Iterable[tuple[dict, object]], unknowns: Iterable[Hashable] = ()) -> EchelonForm:
    """Reduced echelon form of the system, built incrementally."""
    pivots: dict = {}
    seen = set(unknowns)
    inconsistent = False
    for row, rhs in equations:
        row = {k: Fraction(v) for k, v in row.items() if v}
        seen.update(row)
        rhs = Fraction(rhs)
        # repeated substitution is needed since a reduced row may reference
        # pivots introduced after its own reduction
        while True:
            row, rhs = _reduce(row, rhs, pivots)
            if not any(k in pivots for k in row):
                break
        if not row:
            if rhs:
                inconsistent = True
            continue
        k = min(row, key=lambda key: (len(str(key)), str(key)))
        inv = 1 / row[k]
        row = {j: a * inv for j, a in row.items()}
        rhs = rhs * inv
        for j, (prow, prhs) in list(pivots.items()):
            c = prow.get(k)
            if c:
                new = dict(prow)
                for i, a in row.items():
                    v = new.get(i, 0) - c * a
                    if v:
                        new[i] = v
                    else:
                        new.pop(i, None)
                pivots[j] = (new, prhs - c * rhs)
        pivots[k] = (row, rhs)
    return EchelonForm(pivots, inconsistent, len(seen))


def solve(equations, unknowns=()) -> dict | None:
    return echelon(equations, unknowns).particular()


def rank(rows: Iterable[dict]) -> int:
    return echelon(((r, 0) for r in rows)).rank
