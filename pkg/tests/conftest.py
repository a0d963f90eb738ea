import random
from itertools import combinations

import pytest
from hypothesis import strategies as st

from rowpivot import Filtration, Simplex


def random_filtration(rng: random.Random, max_vertices: int = 6, max_dim: int = 3, max_size: int = 25) -> Filtration:
    """A random simplexwise filtration: closure of random simplices, random face-respecting order, random prefix."""
    n = max(rng.randint(1, max_vertices), rng.randint(1, max_vertices))
    complex_ = set()
    for _ in range(rng.randint(1, 10)):
        k = rng.randint(1, min(n, max_dim + 1))
        top = tuple(sorted(rng.sample(range(n), k)))
        for size in range(1, k + 1):
            complex_.update(combinations(top, size))
    complex_.update((v,) for v in range(n) if rng.random() < 0.3)
    placed: set = set()
    order = []
    pending = sorted(complex_)
    while pending:
        ready = [s for s in pending if len(s) == 1 or all(f in placed for f in combinations(s, len(s) - 1))]
        s = rng.choice(ready)
        pending.remove(s)
        placed.add(s)
        order.append(s)
    m = rng.randint(0, min(len(order), max_size)) if rng.random() < 0.2 else min(len(order), max_size)
    return Filtration(tuple(Simplex(s) for s in order[:m]))


@st.composite
def filtrations(draw, max_vertices=6, max_dim=3, max_size=25):
    seed = draw(st.integers(0, 2**32 - 1))
    return random_filtration(random.Random(seed), max_vertices, max_dim, max_size)


def brute_force_rank(rows: list[list[int]]) -> int:
    """GF(2) rank by enumerating the row span."""
    span = {0}
    for row in rows:
        v = sum(x << k for k, x in enumerate(row))
        span |= {x ^ v for x in span}
    return len(span).bit_length() - 1


@pytest.fixture
def triangle() -> Filtration:
    return Filtration.from_vertex_lists([[0], [1], [2], [0, 1], [0, 2], [1, 2], [0, 1, 2]])


ACCEPTANCE_LINES: list[str] = []


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in ACCEPTANCE_LINES:
            terminalreporter.write_line(line)
