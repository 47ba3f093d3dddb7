import random
from fractions import Fraction

import pytest

from shlie.coalgebra import GradedBasis
from shlie.hom import HomMap


def random_hom(rng: random.Random, basis: GradedBasis, max_arity: int, degree: int = 0, density=0.5,
               min_arity: int = 0) -> HomMap:
    """A homogeneous map: every value lands in generators of degree ``|word| + degree``."""
    vals = {}
    for w in basis.words(max_arity, min_arity):
        want = basis.word_degree(w) + degree
        targets = [i for i, d in enumerate(basis.degrees) if d == want]
        v = {}
        for i in targets:
            if rng.random() < density:
                c = Fraction(rng.randint(-3, 3), rng.randint(1, 2))
                if c:
                    v[i] = c
        if v:
            vals[w] = v
    return HomMap(basis, basis, vals, degree)


def random_basis(rng: random.Random, dim: int, mixed: bool) -> GradedBasis:
    names = [f"g{i + 1}" for i in range(dim)]
    degrees = [rng.choice([0, 1]) if mixed else 0 for _ in range(dim)]
    return GradedBasis(tuple(names), tuple(degrees))


@pytest.fixture
def rng():
    return random.Random(20240611)


def pytest_terminal_summary(terminalreporter):
    import sys

    mod = sys.modules.get("test_acceptance")
    results = getattr(mod, "RESULTS", None)
    if not results:
        return
    terminalreporter.section("acceptance criteria")
    for n in sorted(results):
        terminalreporter.write_line(results[n])
