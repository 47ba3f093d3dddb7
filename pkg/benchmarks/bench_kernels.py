"""Compiled kernels against the pure-Python fallback.

Run with ``python3 benchmarks/bench_kernels.py``. Prints, per kernel, the best
of five timings for each backend and the speed-up. The end-to-end line times
one ``shlie`` suite in a subprocess per backend.
"""

from __future__ import annotations

import os
import random
import subprocess
import sys
import timeit
from fractions import Fraction

from shlie import _pykernels

try:
    from shlie import _speedups
except ImportError:
    _speedups = None


def _poly(rng, nvars, nterms, deg):
    names = [f"x{i}" for i in range(nvars)]
    out = {}
    for _ in range(nterms):
        mono = {}
        for _ in range(rng.randint(0, deg)):
            v = rng.choice(names)
            mono[v] = mono.get(v, 0) + 1
        out[tuple(sorted(mono.items()))] = Fraction(rng.randint(-9, 9) or 1, rng.randint(1, 5))
    return out


def cases(rng):
    odd = (0, 1, 0, 1, 1, 0)
    words = [tuple(sorted(rng.randrange(6) for _ in range(7))) for _ in range(50)]
    shuffled = [tuple(rng.sample(range(6), 6)) for _ in range(200)]
    a, b = _poly(rng, 4, 30, 4), _poly(rng, 4, 30, 4)
    return {
        "sort_sign": lambda k: [k.sort_sign(w, odd) for w in shuffled],
        "split_word": lambda k: [k.split_word(w, odd, p) for w in words for p in range(8)],
        "poly_mul": lambda k: k.poly_mul(a, b),
    }


def bench(number=20):
    rng = random.Random(0)
    rows = []
    for name, fn in cases(rng).items():
        py = min(timeit.repeat(lambda: fn(_pykernels), number=number, repeat=5)) / number
        cy = min(timeit.repeat(lambda: fn(_speedups), number=number, repeat=5)) / number if _speedups else None
        rows.append((name, py, cy))
    return rows


def end_to_end(fixture="so3_strict", suite="shlie"):
    out = {}
    for label, env in (("python", {"SHLIE_PURE_PYTHON": "1"}), ("compiled", {})):
        code = ("import time; from shlie.cli import main; t=time.perf_counter(); "
                f"main(['verify', '{fixture}', '--suite', '{suite}']); print(time.perf_counter()-t)")
        res = subprocess.run([sys.executable, "-c", code], capture_output=True, text=True,
                             env={**os.environ, **env})
        out[label] = float(res.stdout.strip().splitlines()[-1])
    return out


def main():
    print(f"{'kernel':<12} {'python (ms)':>12} {'compiled (ms)':>14} {'speed-up':>9}")
    for name, py, cy in bench():
        if cy is None:
            print(f"{name:<12} {py * 1e3:12.3f} {'n/a':>14} {'n/a':>9}")
        else:
            print(f"{name:<12} {py * 1e3:12.3f} {cy * 1e3:14.3f} {py / cy:8.2f}x")
    if _speedups is not None:
        e = end_to_end()
        print(f"{'shlie suite':<12} {e['python'] * 1e3:12.1f} {e['compiled'] * 1e3:14.1f} "
              f"{e['python'] / e['compiled']:8.2f}x")


if __name__ == "__main__":
    main()
