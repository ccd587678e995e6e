"""Canonical labelling for small graphs (n <= 32).

Individualisation-refinement search: equitable colour refinement, then
branch on the first smallest non-singleton cell. Two prunings keep the tree
small on the symmetric graphs this package produces:

* twin pruning: if u and v are twins (same neighbourhood apart from each
  other) the transposition (u v) is an automorphism fixing everything else,
  so only one of them is branched on;
* first-path orbit pruning: a leaf whose certificate equals the first
  leaf's yields an automorphism fixing the first path's prefix; children of
  first-path nodes lying in one orbit are explored once.

The canonical form is the graph6 string of the relabelling with the
lexicographically largest sorted edge list.
"""

from __future__ import annotations

from .errors import BudgetExceeded, SizeLimitExceeded
from .graph import Graph
from .graph6 import encode

MAX_N = 32
LEAF_BUDGET = 200_000

Cells = list[list[int]]


def _refine(g: Graph, cells: Cells) -> Cells:
    n = g.n
    while True:
        colour = [0] * n
        for ci, cell in enumerate(cells):
            for v in cell:
                colour[v] = ci
        k = len(cells)
        new: Cells = []
        for cell in cells:
            if len(cell) == 1:
                new.append(cell)
                continue
            groups: dict[tuple[int, ...], list[int]] = {}
            for v in cell:
                counts = [0] * k
                for w in g.neighbors(v):
                    counts[colour[w]] += 1
                groups.setdefault(tuple(counts), []).append(v)
            for key in sorted(groups):
                new.append(groups[key])
        if len(new) == k:
            return new
        cells = new


def _individualize(cells: Cells, v: int) -> Cells:
    out: Cells = []
    for cell in cells:
        if v in cell:
            out.append([v])
            rest = [w for w in cell if w != v]
            if rest:
                out.append(rest)
        else:
            out.append(cell)
    return out


def _twins(g: Graph, u: int, v: int) -> bool:
    return g.neighbors(u) - {v} == g.neighbors(v) - {u}


def _orbit_roots(n: int, gens: list[list[int]]) -> list[int]:
    parent = list(range(n))

    def find(x: int) -> int:
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for perm in gens:
        for a, b in enumerate(perm):
            ra, rb = find(a), find(b)
            if ra != rb:
                parent[max(ra, rb)] = min(ra, rb)
    return [find(x) for x in range(n)]


class _Search:
    def __init__(self, g: Graph, budget: int):
        self.g = g
        self.budget = budget
        self.leaves = 0
        self.first: tuple[tuple, list[int]] | None = None
        self.best: tuple[tuple, list[int]] | None = None
        self.gens: list[list[int]] = []

    def cert(self, order: list[int]) -> tuple:
        pos = [0] * self.g.n
        for i, v in enumerate(order):
            pos[v] = i
        return tuple(sorted((min(pos[u], pos[v]), max(pos[u], pos[v])) for u, v in self.g.edges))

    def leaf(self, cells: Cells):
        self.leaves += 1
        if self.leaves > self.budget:
            raise BudgetExceeded(f"canonical labelling exceeded {self.budget} leaves")
        order = [c[0] for c in cells]
        c = self.cert(order)
        if self.first is None:
            self.first = (c, order)
        elif c == self.first[0]:
            # automorphism first_order[i] -> order[i]
            perm = [0] * self.g.n
            for a, b in zip(self.first[1], order):
                perm[a] = b
            self.gens.append(perm)
        if self.best is None or c > self.best[0]:
            self.best = (c, order)

    def run(self, cells: Cells, on_first_path: bool):
        cells = _refine(self.g, cells)
        if len(cells) == self.g.n:
            self.leaf(cells)
            return
        target = min((c for c in cells if len(c) > 1), key=len)
        explored: list[int] = []
        for v in sorted(target):
            if any(_twins(self.g, u, v) for u in explored):
                continue
            if on_first_path and explored and self.gens:
                roots = _orbit_roots(self.g.n, self.gens)
                if any(roots[u] == roots[v] for u in explored):
                    continue
            self.run(_individualize(cells, v), on_first_path and not explored)
            explored.append(v)


def canonical_order(g: Graph, budget: int = LEAF_BUDGET) -> list[int]:
    """Vertex order (position -> vertex) giving the canonical relabelling."""
    if g.n > MAX_N:
        raise SizeLimitExceeded(f"canonical labelling is limited to n <= {MAX_N}, got {g.n}")
    if g.n == 0:
        return []
    s = _Search(g, budget)
    s.run([list(range(g.n))], True)
    assert s.best is not None
    return s.best[1]


def canonical_form(g: Graph, budget: int = LEAF_BUDGET) -> str:
    order = canonical_order(g, budget)
    pos = [0] * g.n
    for i, v in enumerate(order):
        pos[v] = i
    return encode(g.relabel(pos))


def is_isomorphic(g1: Graph, g2: Graph) -> bool:
    if g1.n != g2.n or g1.m != g2.m:
        return False
    if sorted(g1.degrees()) != sorted(g2.degrees()):
        return False
    return canonical_form(g1) == canonical_form(g2)
