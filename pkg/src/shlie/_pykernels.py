"""Pure-Python versions of the inner loops.

Same call signatures as the compiled ``_speedups`` module; see ``shlie.kernels``.
"""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations


def mono_mul(a, b):
    """Product of two monomials stored as name-sorted ``((name, exp), ...)`` tuples."""
    if not a:
        return b
    if not b:
        return a
    out = []
    i = j = 0
    na, nb = len(a), len(b)
    while i < na and j < nb:
        x, y = a[i], b[j]
        if x[0] == y[0]:
            out.append((x[0], x[1] + y[1]))
            i += 1
            j += 1
        elif x[0] < y[0]:
            out.append(x)
            i += 1
        else:
            out.append(y)
            j += 1
    out.extend(a[i:])
    out.extend(b[j:])
    return tuple(out)


def poly_mul(a, b):
    """Multiply two term dicts ``{monomial: coefficient}``; zero terms are dropped."""
    out = {}
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mono_mul(ma, mb)
            c = out.get(m)
            out[m] = ca * cb if c is None else c + ca * cb
    return {m: c for m, c in out.items() if c}


def sort_sign(word, odd):
    """Sort a tuple of generator indices, tracking the Koszul sign.

    ``odd[i]`` is true when generator ``i`` has odd degree. Returns
    ``(sorted_word, sign)``; sign is 0 when an odd generator repeats.
    """
    w = list(word)
    sign = 1
    n = len(w)
    for i in range(1, n):
        x = w[i]
        j = i - 1
        while j >= 0 and w[j] > x:
            if odd[x] and odd[w[j]]:
                sign = -sign
            w[j + 1] = w[j]
            j -= 1
        w[j + 1] = x
    for i in range(1, n):
        if w[i] == w[i - 1] and odd[w[i]]:
            return tuple(w), 0
    return tuple(w), sign


@lru_cache(maxsize=None)
def unshuffles(n, p):
    """All (p, n-p)-unshuffles as pairs of position tuples, lexicographic in the left block."""
    out = []
    full = range(n)
    for left in combinations(full, p):
        ls = set(left)
        out.append((left, tuple(i for i in full if i not in ls)))
    return tuple(out)


def split_word(word, odd, p):
    """Split a canonical word along every (p, n-p)-unshuffle.

    Returns a list of ``(left_word, right_word, koszul_sign)``. The sign is the
    product of ``-1`` over pairs (right factor, left factor) that the unshuffle
    moves past each other when both are odd.
    """
    n = len(word)
    out = []
    for left, right in unshuffles(n, p):
        sign = 1
        for li in left:
            if odd[word[li]]:
                for ri in right:
                    if ri < li and odd[word[ri]]:
                        sign = -sign
        out.append((tuple(word[i] for i in left), tuple(word[i] for i in right), sign))
    return out
