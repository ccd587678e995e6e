"""Immutable simple graphs with stable edge indices, plus the constructions
used throughout the package (cliques, joins, the extremal family)."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations
from math import comb
from typing import Iterable, Iterator, Sequence

from .errors import ParameterError

Edge = tuple[int, int]


def _canon(u: int, v: int) -> Edge:
    return (u, v) if u < v else (v, u)


class Graph:
    """Simple undirected graph on vertices ``0..n-1``.

    Edge ``i`` is ``edges[i]``, stored as ``(min, max)``. The edge order given
    at construction is kept, so edge indices are stable for the lifetime of
    the value. Instances are never mutated after ``__init__``.
    """

    __slots__ = ("n", "edges", "_index", "_adj", "_hash")

    def __init__(self, n: int, edges: Iterable[Sequence[int]] = ()):
        if n < 0:
            raise ParameterError(f"vertex count must be non-negative, got {n}")
        canon: list[Edge] = []
        index: dict[Edge, int] = {}
        adj: list[set[int]] = [set() for _ in range(n)]
        for u, v in edges:
            u, v = int(u), int(v)
            if u == v:
                raise ParameterError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ParameterError(f"edge ({u}, {v}) has an endpoint outside 0..{n - 1}")
            e = _canon(u, v)
            if e in index:
                raise ParameterError(f"duplicate edge {e}")
            index[e] = len(canon)
            canon.append(e)
            adj[u].add(v)
            adj[v].add(u)
        self.n = n
        self.edges: tuple[Edge, ...] = tuple(canon)
        self._index = index
        self._adj = tuple(frozenset(a) for a in adj)
        self._hash: int | None = None

    # -- basic queries -------------------------------------------------
    @property
    def m(self) -> int:
        return len(self.edges)

    def neighbors(self, u: int) -> frozenset[int]:
        return self._adj[u]

    def degree(self, u: int) -> int:
        return len(self._adj[u])

    def degrees(self) -> list[int]:
        return [len(a) for a in self._adj]

    def min_degree(self) -> int:
        return min(self.degrees()) if self.n else 0

    def has_edge(self, u: int, v: int) -> bool:
        return _canon(u, v) in self._index

    def edge_index(self, u: int, v: int) -> int:
        try:
            return self._index[_canon(u, v)]
        except KeyError:
            raise KeyError(f"({u}, {v}) is not an edge") from None

    def edge_set(self) -> frozenset[Edge]:
        return frozenset(self.edges)

    def non_edges(self) -> list[Edge]:
        return [(u, v) for u, v in combinations(range(self.n), 2) if (u, v) not in self._index]

    def all_edges(self) -> "EdgeSubset":
        return EdgeSubset(self, frozenset(range(self.m)))

    def subset(self, members: Iterable[int]) -> "EdgeSubset":
        return EdgeSubset(self, frozenset(members))

    # -- derived graphs ------------------------------------------------
    def with_edge(self, u: int, v: int) -> "Graph":
        return Graph(self.n, list(self.edges) + [(u, v)])

    def without_edge(self, u: int, v: int) -> "Graph":
        e = _canon(u, v)
        if e not in self._index:
            raise KeyError(f"{e} is not an edge")
        return Graph(self.n, [f for f in self.edges if f != e])

    def delete_vertices(self, removed: Iterable[int]) -> "Graph":
        """Induced subgraph on the remaining vertices, relabelled in order."""
        gone = set(removed)
        keep = [u for u in range(self.n) if u not in gone]
        pos = {u: i for i, u in enumerate(keep)}
        return Graph(len(keep), [(pos[u], pos[v]) for u, v in self.edges if u in pos and v in pos])

    def spanning_subgraph(self, members: Iterable[int]) -> "Graph":
        """G(F): all vertices, only the edges with the given indices."""
        return Graph(self.n, [self.edges[i] for i in sorted(members)])

    def relabel(self, perm: Sequence[int]) -> "Graph":
        """Vertex ``u`` becomes ``perm[u]``; edge order is preserved."""
        if sorted(perm) != list(range(self.n)):
            raise ParameterError("perm must be a permutation of 0..n-1")
        return Graph(self.n, [(perm[u], perm[v]) for u, v in self.edges])

    # -- connectivity --------------------------------------------------
    def components(self) -> list[list[int]]:
        seen = [False] * self.n
        out = []
        for s in range(self.n):
            if seen[s]:
                continue
            seen[s] = True
            comp, stack = [s], [s]
            while stack:
                u = stack.pop()
                for w in self._adj[u]:
                    if not seen[w]:
                        seen[w] = True
                        comp.append(w)
                        stack.append(w)
            out.append(sorted(comp))
        return out

    def is_connected(self) -> bool:
        return self.n >= 1 and len(self.components()) == 1

    def is_biconnected(self) -> bool:
        """2-connected: at least 3 vertices, connected, no cut vertex."""
        if self.n < 3 or not self.is_connected():
            return False
        return all(self.delete_vertices([u]).is_connected() for u in range(self.n))

    # -- value semantics -----------------------------------------------
    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self.edge_set() == other.edge_set()

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash((self.n, self.edge_set()))
        return self._hash

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self.m})"


@dataclass(frozen=True)
class EdgeSubset:
    """A set of edge indices of ``host``."""

    host: Graph
    members: frozenset[int]

    def __post_init__(self):
        bad = [i for i in self.members if not 0 <= i < self.host.m]
        if bad:
            raise ParameterError(f"edge indices {sorted(bad)} out of range for host with {self.host.m} edges")

    def __len__(self) -> int:
        return len(self.members)

    def __iter__(self) -> Iterator[int]:
        return iter(sorted(self.members))

    def __contains__(self, i: object) -> bool:
        return i in self.members

    def edges(self) -> list[Edge]:
        return [self.host.edges[i] for i in sorted(self.members)]

    def support(self) -> set[int]:
        return {x for i in self.members for x in self.host.edges[i]}

    def complement(self) -> "EdgeSubset":
        return EdgeSubset(self.host, frozenset(range(self.host.m)) - self.members)


@dataclass(frozen=True)
class ExtremalParams:
    """Parameters of the extremal family: order ``n``, minimum degree
    ``delta``, number ``k`` of rigid factors.

    Construction only needs ``k >= 1``, ``delta >= 1`` and ``n >= 3*delta``.
    The packing statement additionally needs ``delta >= 4k``; that is exposed
    as :attr:`in_regime` / :meth:`require_regime` rather than enforced here,
    so the class can still be enumerated for small delta.
    """

    n: int
    delta: int
    k: int

    def __post_init__(self):
        if self.k < 1:
            raise ParameterError(f"k must be >= 1, got {self.k}")
        if self.delta < 1:
            raise ParameterError(f"delta must be >= 1, got {self.delta}")
        if self.n < 3 * self.delta:
            raise ParameterError(f"n must be >= 3*delta = {3 * self.delta}, got {self.n}")
        if self.k - 1 > self.delta * (self.n - 1 - self.delta):
            raise ParameterError("k - 1 exceeds the number of cross pairs")

    @property
    def in_regime(self) -> bool:
        return self.delta >= 4 * self.k

    def require_regime(self) -> None:
        if not self.in_regime:
            raise ParameterError(f"delta must be >= 4k = {4 * self.k}, got {self.delta}")

    @property
    def ell(self) -> int:
        """Number of spanning trees required alongside the rigid factors."""
        self.require_regime()
        return (self.delta - 4 * self.k) // 2

    @property
    def extremal_edge_count(self) -> int:
        n, d, k = self.n, self.delta, self.k
        return ((n - d) * (n - d - 1) + d * (d - 1) + 2 * (d + k - 1)) // 2


# -- constructions -----------------------------------------------------

def empty(n: int) -> Graph:
    return Graph(n)


def complete(n: int) -> Graph:
    if n < 1:
        raise ParameterError(f"complete graph needs n >= 1, got {n}")
    return Graph(n, combinations(range(n), 2))


def path(n: int) -> Graph:
    return Graph(n, [(i, i + 1) for i in range(n - 1)])


def cycle(n: int) -> Graph:
    if n < 3:
        raise ParameterError("cycle needs n >= 3")
    return Graph(n, [(i, (i + 1) % n) for i in range(n)])


def petersen() -> Graph:
    outer = [(i, (i + 1) % 5) for i in range(5)]
    spokes = [(i, i + 5) for i in range(5)]
    inner = [(5 + i, 5 + (i + 2) % 5) for i in range(5)]
    return Graph(10, outer + spokes + inner)


def disjoint_union(g1: Graph, g2: Graph) -> Graph:
    s = g1.n
    return Graph(g1.n + g2.n, list(g1.edges) + [(u + s, v + s) for u, v in g2.edges])


def join(g1: Graph, g2: Graph) -> Graph:
    """g1 ∨ g2. g1 keeps indices 0..n1-1; cross edges are appended last."""
    if g1.n == 0 or g2.n == 0:
        raise ParameterError("join needs two nonempty graphs")
    s = g1.n
    cross = [(u, s + v) for u in range(g1.n) for v in range(g2.n)]
    return Graph(g1.n + g2.n, list(g1.edges) + [(u + s, v + s) for u, v in g2.edges] + cross)


def complement(g: Graph) -> Graph:
    return Graph(g.n, g.non_edges())


def _class_base(p: ExtremalParams) -> Graph:
    # vertex 0 = apex, 1..delta = small clique, delta+1..n-1 = large clique
    return join(complete(1), disjoint_union(complete(p.delta), complete(p.n - 1 - p.delta)))


def cross_pairs(p: ExtremalParams) -> list[Edge]:
    """Non-edges of the base join, in lexicographic order."""
    small = range(1, p.delta + 1)
    large = range(p.delta + 1, p.n)
    return [(u, v) for u in small for v in large]


def build_extremal(p: ExtremalParams) -> Graph:
    """The extremal graph: vertex 1 of the small clique gets the first
    k-1 vertices of the large clique as extra neighbours."""
    base = _class_base(p)
    extra = [(1, p.delta + 1 + j) for j in range(p.k - 1)]
    return Graph(p.n, list(base.edges) + extra)


def class_size(p: ExtremalParams) -> int:
    return comb(p.delta * (p.n - 1 - p.delta), p.k - 1)


def enumerate_class(p: ExtremalParams, dedup: bool = False) -> Iterator[Graph]:
    """Yield every member of the class: the base join plus k-1 cross edges.

    Labelled members come in ``itertools.combinations`` order over
    :func:`cross_pairs`, so member 0 is :func:`build_extremal`. With
    ``dedup=True`` only the first member of each isomorphism class is kept.
    """
    base = _class_base(p)
    pairs = cross_pairs(p)
    seen: set[str] = set()
    if dedup:
        from .iso import canonical_form
    for extra in combinations(pairs, p.k - 1):
        g = Graph(p.n, list(base.edges) + list(extra))
        if dedup:
            key = canonical_form(g)
            if key in seen:
                continue
            seen.add(key)
        yield g


def class_member(p: ExtremalParams, index: int) -> Graph:
    if not 0 <= index < class_size(p):
        raise ParameterError(f"class index {index} out of range 0..{class_size(p) - 1}")
    for i, g in enumerate(enumerate_class(p)):
        if i == index:
            return g
    raise AssertionError("unreachable")
