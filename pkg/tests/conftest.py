from __future__ import annotations

import pytest

from factorlab.families import random_numerical_family
from factorlab.monoid import new_affine, new_numerical

FAMILY_SEED = 2026


@pytest.fixture(scope="session")
def family():
    return random_numerical_family(50, FAMILY_SEED)


@pytest.fixture
def m23():
    return new_numerical([2, 3])


@pytest.fixture
def m24():
    return new_numerical([2, 4])


@pytest.fixture
def free2():
    return new_affine([[1, 0], [0, 1]])


def brute_fiber(gens, a):
    """Exhaustive search over the box a // g_i; no pruning, no memo."""
    from itertools import product

    ranges = [range(min(x // g for x, g in zip(a, gen) if g) + 1) for gen in gens]
    out = []
    for z in product(*ranges):
        if all(sum(c * gen[j] for c, gen in zip(z, gens)) == a[j] for j in range(len(a))):
            out.append(tuple(z))
    return sorted(out)


ACCEPTANCE_LINES: list[str] = []


def acceptance_line(n: int, ok: bool, detail: str) -> str:
    line = f"criterion {n}: {'PASS' if ok else 'FAIL'}  {detail}"
    ACCEPTANCE_LINES.append(line)
    print(line)
    return line


def pytest_terminal_summary(terminalreporter):
    if ACCEPTANCE_LINES:
        terminalreporter.section("acceptance criteria")
        for line in sorted(ACCEPTANCE_LINES, key=lambda s: int(s.split()[1].rstrip(":"))):
            terminalreporter.write_line(line)
