"""Union of k rigidity matroids and ell graphic matroids on one edge set.

Elements are inserted one at a time; each insertion searches the exchange
digraph breadth-first for a shortest augmenting path. Once every edge has
been tried, the set of edges reachable from the unassigned ones is a
minimiser of ``k*r_R(F) + ell*r_M(F) + |E - F|``, which is returned as the
witness when the union does not reach full rank.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from typing import Any

from .errors import ParameterError
from .graph import EdgeSubset, Graph
from .rigidity import PebbleGame, laman_independent, rigid_rank

RIGID = "rigid"
TREE = "tree"


class UnionFind:
    def __init__(self, n: int):
        self.parent = list(range(n))
        self.count = n

    def find(self, x: int) -> int:
        while self.parent[x] != x:
            self.parent[x] = self.parent[self.parent[x]]
            x = self.parent[x]
        return x

    def union(self, a: int, b: int) -> bool:
        ra, rb = self.find(a), self.find(b)
        if ra == rb:
            return False
        self.parent[rb] = ra
        self.count -= 1
        return True


def circuit_rank(f: EdgeSubset) -> int:
    """n - c(f), where isolated vertices count as components."""
    uf = UnionFind(f.host.n)
    for u, v in f.edges():
        uf.union(u, v)
    return f.host.n - uf.count


def rigid_target(n: int) -> int:
    return max(2 * n - 3, 0)


def full_rank(n: int, k: int, ell: int) -> int:
    return k * rigid_target(n) + ell * max(n - 1, 0)


def union_value(f: EdgeSubset, k: int, ell: int) -> int:
    """k*r_R(f) + ell*r_M(f) + |E - f|: an upper bound on the union rank
    for every f, attained by some f."""
    return k * rigid_rank(f) + ell * circuit_rank(f) + (f.host.m - len(f))


# -- slot oracles --------------------------------------------------------

class _RigidSlot:
    kind = RIGID

    def __init__(self, g: Graph):
        self.g = g
        self.game = PebbleGame(g.n)
        self.members: set[int] = set()

    def test(self, e: int) -> tuple[bool, list[int]]:
        u, v = self.g.edges[e]
        ok, region = self.game.test(u, v)
        if ok:
            return True, []
        circuit = [i for i in self.members if self.g.edges[i][0] in region and self.g.edges[i][1] in region]
        return False, sorted(circuit)

    def add(self, e: int) -> None:
        u, v = self.g.edges[e]
        if not self.game.add(e, u, v):
            raise AssertionError(f"rigid slot rejected edge {e} during augmentation")
        self.members.add(e)

    def remove(self, e: int) -> None:
        self.game.remove(e)
        self.members.discard(e)


class _ForestSlot:
    kind = TREE

    def __init__(self, g: Graph):
        self.g = g
        self.adj: list[dict[int, int]] = [{} for _ in range(g.n)]
        self.members: set[int] = set()

    def test(self, e: int) -> tuple[bool, list[int]]:
        a, b = self.g.edges[e]
        parent = {a: (-1, -1)}
        queue = deque([a])
        while queue:
            x = queue.popleft()
            if x == b:
                break
            for y, key in self.adj[x].items():
                if y not in parent:
                    parent[y] = (x, key)
                    queue.append(y)
        if b not in parent:
            return True, []
        path = []
        x = b
        while x != a:
            x, key = parent[x]
            path.append(key)
        return False, sorted(path)

    def add(self, e: int) -> None:
        u, v = self.g.edges[e]
        self.adj[u][v] = e
        self.adj[v][u] = e
        self.members.add(e)

    def remove(self, e: int) -> None:
        u, v = self.g.edges[e]
        del self.adj[u][v]
        del self.adj[v][u]
        self.members.discard(e)


@dataclass(frozen=True)
class UnionLabeling:
    """Disjoint slot edge sets; slots 0..k-1 are rigid, k..k+ell-1 are trees."""

    host: Graph
    kinds: tuple[str, ...]
    slots: tuple[frozenset[int], ...]

    @property
    def assignment(self) -> dict[int, int]:
        return {e: j for j, s in enumerate(self.slots) for e in s}

    @property
    def size(self) -> int:
        return sum(len(s) for s in self.slots)

    def rigid_slots(self) -> list[EdgeSubset]:
        return [EdgeSubset(self.host, s) for s, t in zip(self.slots, self.kinds) if t == RIGID]

    def tree_slots(self) -> list[EdgeSubset]:
        return [EdgeSubset(self.host, s) for s, t in zip(self.slots, self.kinds) if t == TREE]


class _Union:
    def __init__(self, g: Graph, k: int, ell: int):
        if k < 0 or ell < 0 or k + ell < 1:
            raise ParameterError(f"need k, ell >= 0 and k + ell >= 1, got k={k}, ell={ell}")
        self.g = g
        self.slots = [_RigidSlot(g) for _ in range(k)] + [_ForestSlot(g) for _ in range(ell)]
        self.slot_of: dict[int, int] = {}
        self.augmentations = 0

    def _edges_out(self, y: int, visited: dict[int, Any]):
        """Yield ('sink', j) or ('step', j, z) moves for element y."""
        own = self.slot_of.get(y)
        for j, slot in enumerate(self.slots):
            if j == own:
                continue
            ok, circuit = slot.test(y)
            if ok:
                yield ("sink", j, None)
                return
            for z in circuit:
                if z not in visited:
                    yield ("step", j, z)

    def insert(self, x: int) -> bool:
        parent: dict[int, tuple[int, int] | None] = {x: None}
        queue = deque([x])
        while queue:
            y = queue.popleft()
            for kind, j, z in self._edges_out(y, parent):
                if kind == "sink":
                    self._augment(parent, y, j)
                    return True
                if z not in parent:
                    parent[z] = (y, j)
                    queue.append(z)
        return False

    def _augment(self, parent: dict[int, tuple[int, int] | None], last: int, sink_slot: int) -> None:
        removals: dict[int, list[int]] = {}
        additions: dict[int, list[int]] = {sink_slot: [last]}
        new_slot = {last: sink_slot}
        cur = last
        while parent[cur] is not None:
            prev, j = parent[cur]
            removals.setdefault(j, []).append(cur)
            additions.setdefault(j, []).append(prev)
            new_slot[prev] = j
            cur = prev
        # the shortest-path property guarantees each final slot set is
        # independent, so deleting first makes every insertion succeed
        for j, items in removals.items():
            for e in items:
                self.slots[j].remove(e)
        for j, items in additions.items():
            for e in items:
                self.slots[j].add(e)
        self.slot_of.update(new_slot)
        self.augmentations += 1

    def run(self) -> None:
        for e in range(self.g.m):
            self.insert(e)

    def reachable_from_free(self) -> set[int]:
        free = [e for e in range(self.g.m) if e not in self.slot_of]
        seen: dict[int, Any] = {e: None for e in free}
        queue = deque(free)
        while queue:
            y = queue.popleft()
            for kind, _, z in self._edges_out(y, seen):
                if kind == "sink":
                    raise AssertionError("augmenting path left after maximisation")
                if z not in seen:
                    seen[z] = None
                    queue.append(z)
        return set(seen)

    def labeling(self) -> UnionLabeling:
        return UnionLabeling(
            host=self.g,
            kinds=tuple(s.kind for s in self.slots),
            slots=tuple(frozenset(s.members) for s in self.slots),
        )


def union_rank(g: Graph, k: int, ell: int) -> tuple[int, UnionLabeling]:
    """Rank of E(g) in the union of k rigidity and ell graphic matroids,
    with a labeling that attains it."""
    u = _Union(g, k, ell)
    u.run()
    lab = u.labeling()
    return lab.size, lab


@dataclass(frozen=True)
class PackingCertificate:
    verdict: str  # "packed" | "refuted"
    host: Graph
    k: int
    ell: int
    rigid_slots: tuple[EdgeSubset, ...]
    tree_slots: tuple[EdgeSubset, ...]
    witness_f: EdgeSubset | None
    union_rank: int

    @property
    def packed(self) -> bool:
        return self.verdict == "packed"

    @property
    def target(self) -> int:
        return full_rank(self.host.n, self.k, self.ell)

    def to_json(self) -> dict[str, Any]:
        doc: dict[str, Any] = {
            "verdict": self.verdict,
            "n": self.host.n,
            "m": self.host.m,
            "k": self.k,
            "ell": self.ell,
            "union_rank": self.union_rank,
            "target": self.target,
            "rigid_slots": [sorted(s.members) for s in self.rigid_slots],
            "tree_slots": [sorted(s.members) for s in self.tree_slots],
            "witness": None if self.witness_f is None else sorted(self.witness_f.members),
        }
        if self.witness_f is not None:
            f = self.witness_f
            doc["witness_terms"] = {
                "rigid_rank": rigid_rank(f),
                "circuit_rank": circuit_rank(f),
                "outside": self.host.m - len(f),
                "value": union_value(f, self.k, self.ell),
            }
        return doc

    @classmethod
    def from_json(cls, doc: dict[str, Any], host: Graph) -> "PackingCertificate":
        w = doc.get("witness")
        return cls(
            verdict=doc["verdict"],
            host=host,
            k=int(doc["k"]),
            ell=int(doc["ell"]),
            rigid_slots=tuple(EdgeSubset(host, frozenset(s)) for s in doc["rigid_slots"]),
            tree_slots=tuple(EdgeSubset(host, frozenset(s)) for s in doc["tree_slots"]),
            witness_f=None if w is None else EdgeSubset(host, frozenset(w)),
            union_rank=int(doc["union_rank"]),
        )


def pack_rigid_and_trees(g: Graph, k: int, ell: int) -> PackingCertificate:
    """Find k edge-disjoint spanning rigid subgraphs and ell edge-disjoint
    spanning trees, or a set F certifying that none exist."""
    u = _Union(g, k, ell)
    u.run()
    lab = u.labeling()
    rank = lab.size
    packed = rank == full_rank(g.n, k, ell)
    witness = None if packed else EdgeSubset(g, frozenset(u.reachable_from_free()))
    return PackingCertificate(
        verdict="packed" if packed else "refuted",
        host=g,
        k=k,
        ell=ell,
        rigid_slots=tuple(lab.rigid_slots()),
        tree_slots=tuple(lab.tree_slots()),
        witness_f=witness,
        union_rank=rank,
    )


def _is_forest(f: EdgeSubset) -> bool:
    uf = UnionFind(f.host.n)
    return all(uf.union(u, v) for u, v in f.edges())


def _is_spanning_tree(f: EdgeSubset) -> bool:
    return len(f) == max(f.host.n - 1, 0) and _is_forest(f)


def verify_certificate(c: PackingCertificate) -> bool:
    """Re-check a certificate from scratch, without trusting the labeling
    that produced it."""
    g = c.host
    if len(c.rigid_slots) != c.k or len(c.tree_slots) != c.ell:
        return False
    slots = list(c.rigid_slots) + list(c.tree_slots)
    if any(s.host != g for s in slots):
        return False
    seen: set[int] = set()
    for s in slots:
        if seen & s.members:
            return False
        seen |= s.members
    if not all(laman_independent(s) for s in c.rigid_slots if len(s)):
        return False
    if not all(_is_forest(s) for s in c.tree_slots):
        return False
    total = sum(len(s) for s in slots)
    if total != c.union_rank:
        return False
    if c.verdict == "packed":
        if c.witness_f is not None or total != c.target:
            return False
        for s in c.rigid_slots:
            if g.n >= 2 and (rigid_rank(s) != 2 * g.n - 3 or len(s.support()) != g.n):
                return False
        return all(_is_spanning_tree(s) for s in c.tree_slots)
    if c.verdict == "refuted":
        if c.witness_f is None:
            return False
        value = union_value(c.witness_f, c.k, c.ell)
        # the witness bounds every independent union from above; the slots
        # attain it, so both are optimal and the deficit is genuine
        return value < c.target and value == total
    return False


def tree_packing_number(g: Graph) -> int:
    """Maximum number of edge-disjoint spanning trees (0 when n <= 1 or
    disconnected)."""
    n = g.n
    if n <= 1:
        return 0
    t = 0
    while (t + 1) * (n - 1) <= g.m and union_rank(g, 0, t + 1)[0] == (t + 1) * (n - 1):
        t += 1
    return t
