"""Generic 2D rigidity via the (2,3) pebble game, with exact brute-force
evaluation of the partition rank formula for cross-checking."""

from __future__ import annotations

from functools import lru_cache
from itertools import combinations

from .errors import BudgetExceeded, ParameterError
from .graph import EdgeSubset, Graph

K_PEBBLES = 2
SLACK = 3


class PebbleGame:
    """Mutable (2,3) pebble-game state on ``n`` vertices.

    Every vertex holds ``pebbles[v]`` free pebbles; each accepted edge is
    oriented and covered by one pebble of its tail, so
    ``pebbles[v] + outdeg(v) == 2`` always. Accepted edges form a
    Laman-independent set. Edges are identified by caller-chosen keys.
    """

    def __init__(self, n: int, debug: bool = False):
        self.n = n
        self.pebbles = [K_PEBBLES] * n
        self.out: list[dict[int, int]] = [{} for _ in range(n)]  # tail -> {head: key}
        self.where: dict[int, tuple[int, int]] = {}  # key -> (tail, head)
        self.debug = debug

    def __len__(self) -> int:
        return len(self.where)

    def _find_pebble(self, root: int, held: int) -> bool:
        """Move one free pebble to ``root`` along reversed edges, never
        touching ``held``. Returns False if none is reachable."""
        parent = {root: -1, held: -1}
        stack = [root]
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y in parent:
                    continue
                parent[y] = x
                if self.pebbles[y] > 0:
                    # reverse the path root -> ... -> x -> y
                    self.pebbles[y] -= 1
                    while y != root:
                        x = parent[y]
                        key = self.out[x].pop(y)
                        self.out[y][x] = key
                        self.where[key] = (y, x)
                        y = x
                    self.pebbles[root] += 1
                    return True
                stack.append(y)
        return False

    def gather(self, u: int, v: int) -> int:
        """Collect as many free pebbles on {u, v} as possible (at most 4)."""
        while self.pebbles[u] + self.pebbles[v] < 2 * K_PEBBLES:
            if self.pebbles[u] < K_PEBBLES and self._find_pebble(u, v):
                continue
            if self.pebbles[v] < K_PEBBLES and self._find_pebble(v, u):
                continue
            break
        return self.pebbles[u] + self.pebbles[v]

    def reach(self, u: int, v: int) -> set[int]:
        seen = {u, v}
        stack = [u, v]
        while stack:
            x = stack.pop()
            for y in self.out[x]:
                if y not in seen:
                    seen.add(y)
                    stack.append(y)
        return seen

    def test(self, u: int, v: int) -> tuple[bool, set[int] | None]:
        """Would edge uv keep the accepted set independent?

        Returns ``(True, None)`` or ``(False, R)`` where ``R`` is the minimal
        tight vertex set containing u and v: the accepted edges inside ``R``
        together with uv form the unique circuit. Reorients edges but never
        changes the accepted set.
        """
        if u == v:
            raise ParameterError("self-loop")
        if self.gather(u, v) >= 2 * K_PEBBLES:
            return True, None
        return False, self.reach(u, v)

    def add(self, key: int, u: int, v: int) -> bool:
        if key in self.where:
            raise ParameterError(f"edge key {key} already accepted")
        if self.gather(u, v) < 2 * K_PEBBLES:
            return False
        if self.pebbles[u] < 1:
            u, v = v, u
        self.pebbles[u] -= 1
        self.out[u][v] = key
        self.where[key] = (u, v)
        if self.debug:
            self.check()
        return True

    def remove(self, key: int) -> None:
        tail, head = self.where.pop(key)
        del self.out[tail][head]
        self.pebbles[tail] += 1
        if self.debug:
            self.check()

    def check(self) -> None:
        for x in range(self.n):
            assert self.pebbles[x] + len(self.out[x]) == K_PEBBLES, f"pebble invariant broken at {x}"
        assert self.n < 2 or sum(self.pebbles) >= SLACK, "fewer than 3 free pebbles"


def _game_for(f: EdgeSubset, debug: bool = False) -> tuple[PebbleGame, int]:
    game = PebbleGame(f.host.n, debug=debug)
    accepted = 0
    for i in sorted(f.members):
        u, v = f.host.edges[i]
        if game.add(i, u, v):
            accepted += 1
    return game, accepted


def laman_independent(f: EdgeSubset) -> bool:
    """True iff every vertex set X (|X| >= 2) spans at most 2|X| - 3 edges of f."""
    return _game_for(f)[1] == len(f)


def rigid_rank(f: EdgeSubset) -> int:
    """Rank of f in the generic 2D rigidity matroid (insertion by edge index)."""
    return _game_for(f)[1]


def is_rigid(g: Graph) -> bool:
    if g.n < 2:
        raise ParameterError("rigidity is defined here for n >= 2")
    return rigid_rank(g.all_edges()) == 2 * g.n - 3


# -- brute force ---------------------------------------------------------

PARTITION_EDGE_LIMIT = 12
VERTEX_LIMIT = 7


def _partition_min(edges: list[tuple[int, int]]) -> int:
    """min over set partitions of ``edges`` of sum(2|V(class)| - 3), by
    subset DP over all partitions (3^m work)."""
    m = len(edges)
    full = (1 << m) - 1
    support = [0] * (1 << m)
    for mask in range(1, 1 << m):
        low = mask & -mask
        u, v = edges[low.bit_length() - 1]
        support[mask] = support[mask ^ low] | (1 << u) | (1 << v)
    cost = [2 * s.bit_count() - 3 for s in support]
    best = [0] * (1 << m)
    for mask in range(1, full + 1):
        low = mask & -mask
        rest = mask ^ low
        value = cost[mask]
        sub = rest
        # classes containing the lowest edge: low | sub for sub ⊆ rest
        while sub:
            cand = cost[low | sub] + best[rest ^ sub]
            if cand < value:
                value = cand
            sub = (sub - 1) & rest
        cand = cost[low] + best[rest]
        if cand < value:
            value = cand
        best[mask] = value
    return best[full]


def _cover_min(edges: list[tuple[int, int]], verts: list[int]) -> int:
    """Same minimum, searched over collections of vertex sets.

    Valid restrictions: sets may be taken pairwise sharing at most one vertex
    (merging two sets that share >= 2 vertices never costs more), and every
    set with >= 3 vertices may be taken to induce at least 2|X| - 2 edges
    (otherwise its edges as single classes cost no more).
    """
    pos = {v: i for i, v in enumerate(verts)}
    k = len(verts)
    pair_bit = {}
    for i, j in combinations(range(k), 2):
        pair_bit[(i, j)] = 1 << len(pair_bit)
    emask = [pair_bit[tuple(sorted((pos[u], pos[v])))] for u, v in edges]
    all_edges = 0
    for b in emask:
        all_edges |= b

    dense: list[tuple[int, int]] = []  # (pair mask, cost)
    for size in range(3, k + 1):
        for xs in combinations(range(k), size):
            pairs = 0
            for a, b in combinations(xs, 2):
                pairs |= pair_bit[(a, b)]
            if (pairs & all_edges).bit_count() >= 2 * size - 2:
                dense.append((pairs, 2 * size - 3))

    @lru_cache(maxsize=None)
    def solve(claimed: int) -> int:
        open_edges = all_edges & ~claimed
        if not open_edges:
            return 0
        low = open_edges & -open_edges
        best = 1 + solve(claimed | low)
        for pairs, c in dense:
            if pairs & low and not pairs & claimed:
                cand = c + solve(claimed | pairs)
                if cand < best:
                    best = cand
        return best

    return solve(0)


def rigid_rank_bruteforce(f: EdgeSubset) -> int:
    """Evaluate min sum(2|X_i| - 3) over collections {X_i} whose induced
    edge sets partition f, without using the pebble game.

    Up to 12 edges every set partition is enumerated; otherwise the support
    must have at most 7 vertices and a vertex-set search is used.
    """
    edges = f.edges()
    if not edges:
        return 0
    if len(edges) <= PARTITION_EDGE_LIMIT:
        return _partition_min(edges)
    verts = sorted(f.support())
    if len(verts) <= VERTEX_LIMIT:
        return _cover_min(edges, verts)
    raise BudgetExceeded(
        f"brute-force rank needs <= {PARTITION_EDGE_LIMIT} edges or <= {VERTEX_LIMIT} support vertices"
    )


def laman_independent_bruteforce(f: EdgeSubset) -> bool:
    """Direct count check over all vertex subsets of the support."""
    verts = sorted(f.support())
    if len(verts) > 16:
        raise BudgetExceeded("count check limited to 16 support vertices")
    edges = f.edges()
    for size in range(2, len(verts) + 1):
        for xs in combinations(verts, size):
            s = set(xs)
            if sum(1 for u, v in edges if u in s and v in s) > 2 * size - 3:
                return False
    return True
