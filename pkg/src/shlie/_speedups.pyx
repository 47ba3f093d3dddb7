# cython: language_level=3, boundscheck=False, wraparound=False
"""Compiled inner loops; mirrors ``shlie._pykernels`` exactly."""

from itertools import combinations


cpdef tuple mono_mul(tuple a, tuple b):
    cdef Py_ssize_t i = 0, j = 0, na = len(a), nb = len(b)
    cdef tuple x, y
    cdef list out
    if na == 0:
        return b
    if nb == 0:
        return a
    out = []
    while i < na and j < nb:
        x = <tuple>a[i]
        y = <tuple>b[j]
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
    while i < na:
        out.append(a[i])
        i += 1
    while j < nb:
        out.append(b[j])
        j += 1
    return tuple(out)


cpdef dict poly_mul(dict a, dict b):
    cdef dict out = {}
    cdef tuple m
    for ma, ca in a.items():
        for mb, cb in b.items():
            m = mono_mul(<tuple>ma, <tuple>mb)
            c = out.get(m)
            if c is None:
                out[m] = ca * cb
            else:
                out[m] = c + ca * cb
    return {k: v for k, v in out.items() if v}


cpdef tuple sort_sign(tuple word, tuple odd):
    cdef Py_ssize_t n = len(word), i, j
    cdef int sign = 1
    cdef long x
    cdef list w = list(word)
    for i in range(1, n):
        x = w[i]
        j = i - 1
        while j >= 0 and <long>w[j] > x:
            if odd[x] and odd[w[j]]:
                sign = -sign
            w[j + 1] = w[j]
            j -= 1
        w[j + 1] = x
    for i in range(1, n):
        if w[i] == w[i - 1] and odd[w[i]]:
            return tuple(w), 0
    return tuple(w), sign


_UNSHUFFLES = {}


cpdef tuple unshuffles(int n, int p):
    key = (n, p)
    cached = _UNSHUFFLES.get(key)
    if cached is not None:
        return cached
    out = []
    full = range(n)
    for left in combinations(full, p):
        ls = set(left)
        out.append((left, tuple([i for i in full if i not in ls])))
    result = tuple(out)
    _UNSHUFFLES[key] = result
    return result


cpdef list split_word(tuple word, tuple odd, int p):
    cdef Py_ssize_t n = len(word)
    cdef int sign
    cdef tuple left, right
    cdef list out = []
    cdef bint anyodd = False
    for g in word:
        if odd[g]:
            anyodd = True
            break
    for pair in unshuffles(n, p):
        left = <tuple>pair[0]
        right = <tuple>pair[1]
        sign = 1
        if anyodd:
            for li in left:
                if odd[word[li]]:
                    for ri in right:
                        if ri < li and odd[word[ri]]:
                            sign = -sign
        out.append((tuple([word[i] for i in left]), tuple([word[i] for i in right]), sign))
    return out
