import importlib
import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from shlie import _pykernels, kernels

speedups = pytest.importorskip("shlie._speedups")


@settings(max_examples=100, deadline=None)
@given(st.lists(st.integers(0, 5), max_size=7), st.lists(st.booleans(), min_size=6, max_size=6))
def test_sort_sign_agrees(word, odd):
    w, o = tuple(word), tuple(odd)
    assert speedups.sort_sign(w, o) == _pykernels.sort_sign(w, o)


@settings(max_examples=60, deadline=None)
@given(st.lists(st.integers(0, 4), max_size=6).map(sorted), st.lists(st.booleans(), min_size=5, max_size=5))
def test_split_word_agrees(word, odd):
    w, o = tuple(word), tuple(odd)
    for p in range(len(w) + 1):
        assert speedups.split_word(w, o, p) == _pykernels.split_word(w, o, p)


def test_poly_mul_agrees():
    rng = random.Random(3)
    for _ in range(30):
        a, b = ({tuple(sorted({f"x{rng.randrange(3)}": rng.randint(1, 2) for _ in range(rng.randint(0, 2))}.items())):
                 Fraction(rng.randint(-4, 4), rng.randint(1, 3)) for _ in range(4)} for _ in range(2))
        a = {m: c for m, c in a.items() if c}
        b = {m: c for m, c in b.items() if c}
        assert speedups.poly_mul(a, b) == _pykernels.poly_mul(a, b)


def test_unshuffles_agree():
    for n in range(6):
        for p in range(n + 1):
            assert tuple(speedups.unshuffles(n, p)) == tuple(_pykernels.unshuffles(n, p))


def test_pure_python_switch(monkeypatch):
    monkeypatch.setenv("SHLIE_PURE_PYTHON", "1")
    mod = importlib.reload(kernels)
    try:
        assert mod.BACKEND == "python"
        assert mod.sort_sign is _pykernels.sort_sign
    finally:
        monkeypatch.delenv("SHLIE_PURE_PYTHON")
        importlib.reload(kernels)
    assert kernels.BACKEND == "compiled"
