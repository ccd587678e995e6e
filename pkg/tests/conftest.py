from __future__ import annotations

import random
from itertools import combinations

import pytest

from rigidpack.graph import Graph
from rigidpack.iso import canonical_form

ACCEPTANCE_RESULTS: list[tuple[str, bool, float, str]] = []


def graphs_up_to(n_max: int) -> dict[int, list[Graph]]:
    """All graphs on n <= n_max vertices up to isomorphism, by extending each
    graph on n-1 vertices with a new vertex joined to every possible subset."""
    out = {0: [Graph(0)]}
    for n in range(1, n_max + 1):
        seen: dict[str, Graph] = {}
        for base in out[n - 1]:
            for mask in range(1 << (n - 1)):
                new = [(i, n - 1) for i in range(n - 1) if mask >> i & 1]
                g = Graph(n, list(base.edges) + new)
                seen.setdefault(canonical_form(g), g)
        out[n] = list(seen.values())
    return out


_CACHE: dict[int, dict[int, list[Graph]]] = {}


def small_graphs(n_max: int) -> dict[int, list[Graph]]:
    if n_max not in _CACHE:
        _CACHE[n_max] = graphs_up_to(n_max)
    return _CACHE[n_max]


def random_graph(rng: random.Random, n: int, p: float) -> Graph:
    return Graph(n, [e for e in combinations(range(n), 2) if rng.random() < p])


def random_connected(rng: random.Random, n_lo: int, n_hi: int) -> Graph:
    while True:
        n = rng.randint(n_lo, n_hi)
        p = rng.uniform(min(1.0, 2.5 / n), 0.7)
        g = random_graph(rng, n, p)
        if g.is_connected():
            return g


@pytest.fixture(scope="session")
def graphs6() -> dict[int, list[Graph]]:
    return small_graphs(6)


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE_RESULTS:
        return
    terminalreporter.section("acceptance criteria")
    for name, ok, secs, note in ACCEPTANCE_RESULTS:
        status = "PASS" if ok else "FAIL"
        terminalreporter.write_line(f"[{status}] {name} ({secs:.1f}s){' - ' + note if note else ''}")
