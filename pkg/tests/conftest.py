import random

import pytest

from csstlab.classical import LinearCode
from csstlab.css import make_css
from csstlab.gf2 import BitMatrix


def random_code(rng: random.Random, n: int, k: int) -> LinearCode:
    return LinearCode(BitMatrix(n, tuple(rng.getrandbits(n) for _ in range(k))))


def random_subcode(rng: random.Random, C: LinearCode, k: int) -> LinearCode:
    rows = []
    for _ in range(k):
        v = 0
        for r in C.rows:
            if rng.random() < 0.5:
                v ^= r
        rows.append(v)
    return LinearCode(BitMatrix(C.n, tuple(rows)))


def random_pair(rng: random.Random, n_min: int = 3, n_max: int = 8, k1_max: int | None = None):
    """A nested pair with k >= 1, C1 of dimension at least 1."""
    while True:
        n = rng.randint(n_min, n_max)
        k1 = rng.randint(1, min(n, k1_max or n))
        c1 = random_code(rng, n, k1)
        if c1.k == 0:
            continue
        c2 = random_subcode(rng, c1, rng.randint(0, c1.k - 1))
        if c2.k < c1.k:
            return make_css(c1, c2)


@pytest.fixture
def rng():
    return random.Random(20240601)


def all_subspaces(n: int, max_dim: int) -> list[tuple[int, ...]]:
    """Every subspace of F2^n of dimension <= max_dim, as RREF row tuples."""
    from csstlab.gf2 import rref_rows

    level = {()}
    out = [()]
    for _ in range(max_dim):
        nxt = set()
        for rows in level:
            span = {0}
            for r in rows:
                span |= {s ^ r for s in span}
            for v in range(1, 1 << n):
                if v not in span:
                    nxt.add(tuple(rref_rows(rows + (v,), n)[0]))
        out.extend(sorted(nxt))
        level = nxt
    return out


def all_nested_pairs(n: int, max_dim: int):
    """Every nested pair C2 ⊊ C1 ⊆ F2^n with 1 <= dim C1 <= max_dim."""
    from csstlab.css import make_css

    coeff_spaces = {k: all_subspaces(k, k) for k in range(1, max_dim + 1)}
    for rows in all_subspaces(n, max_dim):
        k = len(rows)
        if k == 0:
            continue
        c1 = LinearCode(BitMatrix(n, rows))
        for coeffs in coeff_spaces[k]:
            if len(coeffs) == k:
                continue
            sub = []
            for c in coeffs:
                v = 0
                for i in range(k):
                    if c >> i & 1:
                        v ^= rows[i]
                sub.append(v)
            yield make_css(c1, LinearCode(BitMatrix(n, tuple(sub))))


ACCEPTANCE_LINES: list[str] = []


def record(number: int, ok: bool, detail: str) -> None:
    line = f"criterion {number:2d}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES):
            terminalreporter.write_line(line)
