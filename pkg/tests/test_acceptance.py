"""Acceptance criteria 1-11, each at its stated tolerance and time limit.

Every test records a pass/fail line that the terminal summary prints under
"acceptance criteria".
"""

from __future__ import annotations

import random
import subprocess
import sys
import time
from contextlib import contextmanager

import networkx as nx

from rigidpack.graph import ExtremalParams, Graph, build_extremal, complete, cycle, petersen
from rigidpack.harness import Verdict, check_cdg_conditions, sample_and_verify, verify_main_theorem, verify_set_extremal
from rigidpack.iso import is_isomorphic
from rigidpack.matroid_union import pack_rigid_and_trees, tree_packing_number, union_value, verify_certificate
from rigidpack.rigidity import rigid_rank, rigid_rank_bruteforce
from rigidpack.spectral import algebraic_connectivity, hong_bound, rotate_edge_compare, spectral_radius

from conftest import ACCEPTANCE_RESULTS, random_connected, random_graph, small_graphs
from oracles import brute_force_packs


@contextmanager
def criterion(name: str, limit: float | None):
    note: dict[str, str] = {"text": ""}
    t0 = time.perf_counter()
    try:
        yield note
    except BaseException as exc:
        ACCEPTANCE_RESULTS.append((name, False, time.perf_counter() - t0, f"{type(exc).__name__}: {exc}"[:200]))
        raise
    secs = time.perf_counter() - t0
    ok = limit is None or secs < limit
    text = note["text"] if ok else f"runtime {secs:.1f}s over limit {limit}s; {note['text']}"
    ACCEPTANCE_RESULTS.append((name, ok, secs, text))
    assert ok, text


def _nx_to_graph(h: nx.Graph) -> Graph:
    h = nx.convert_node_labels_to_integers(h)
    return Graph(h.number_of_nodes(), h.edges())


def regular_test_graphs() -> list[tuple[Graph, int]]:
    out = [(cycle(n), 2) for n in range(3, 31)]
    out += [(complete(n), n - 1) for n in range(2, 21)]
    out.append((petersen(), 3))
    out += [(_nx_to_graph(nx.hypercube_graph(d)), d) for d in range(1, 6)]
    out += [(_nx_to_graph(nx.complete_bipartite_graph(a, a)), a) for a in range(1, 10)]
    for seed in range(40):
        d, n = 3 + seed % 5, 20 + seed % 11
        if n * d % 2:
            n += 1
        h = nx.random_regular_graph(d, n, seed=seed)
        if nx.is_connected(h):
            out.append((_nx_to_graph(h), d))
    return out


def test_c01_eigensolver_exactness():
    with criterion("1 eigensolver exactness", 5) as note:
        for n in range(2, 51):
            assert abs(spectral_radius(complete(n)).value - (n - 1)) < 1e-9
            assert abs(algebraic_connectivity(complete(n)).mu2 - n) < 1e-9
        regs = regular_test_graphs()
        for g, d in regs:
            assert g.is_connected() and g.degrees() == [d] * g.n
            assert abs(spectral_radius(g).value - d) < 1e-9
        note["text"] = f"K_2..K_50 and {len(regs)} regular graphs"


def test_c02_hong_bound():
    with criterion("2 degree bound", 30) as note:
        rng = random.Random(2002)
        worst = -float("inf")
        tested = 0
        while tested < 1000:
            g = random_graph(rng, rng.randint(2, 40), rng.uniform(0.05, 0.95))
            if g.min_degree() < 1:
                continue
            gap = spectral_radius(g).value - hong_bound(g)
            assert gap <= 1e-8, g
            worst = max(worst, gap)
            tested += 1
        for g, d in regular_test_graphs():
            assert abs(spectral_radius(g).value - hong_bound(g)) <= 1e-8
        note["text"] = f"1000 random graphs, max(lambda1 - bound) = {worst:.3e}"


def test_c03_subgraph_strictness():
    with criterion("3 subgraph strictness", 60) as note:
        rng = random.Random(2003)
        deletions = 0
        min_drop = float("inf")
        for _ in range(500):
            g = random_connected(rng, 2, 30)
            lam = spectral_radius(g).value
            for u, v in g.edges:
                h = g.without_edge(u, v)
                if not h.is_connected():
                    continue
                drop = lam - spectral_radius(h).value
                assert drop > 1e-10, (g, (u, v), drop)
                min_drop = min(min_drop, drop)
                deletions += 1
        note["text"] = f"{deletions} deletions, min drop {min_drop:.3e}"


def test_c04_edge_rotation():
    with criterion("4 edge rotation", None) as note:
        rng = random.Random(2004)
        accepted = violations = attempts = 0
        while accepted < 500:
            attempts += 1
            g = random_connected(rng, 5, 16)
            non_edges = g.non_edges()
            if not non_edges:
                continue
            remove = g.edges[rng.randrange(g.m)]
            add = rng.choice(non_edges)
            rotated, hyp = rotate_edge_compare(g, remove, add)
            if not hyp or is_isomorphic(rotated, g):
                continue
            accepted += 1
            if not spectral_radius(rotated).value > spectral_radius(g).value + 1e-10:
                violations += 1
        note["text"] = f"{accepted} rotations from {attempts} draws, {violations} violations"
        assert violations == 0


def test_c05_pebble_game_vs_bruteforce():
    with criterion("5 pebble game vs brute force", 120) as note:
        graphs = [g for n, gs in small_graphs(6).items() if n >= 1 for g in gs if g.is_connected()]
        assert len([g for g in graphs if g.n == 6]) == 112
        for g in graphs:
            assert rigid_rank(g.all_edges()) == rigid_rank_bruteforce(g.all_edges()), g
        rng = random.Random(2005)
        for _ in range(200):
            g = random_graph(rng, 7, rng.uniform(0.2, 0.9))
            assert rigid_rank(g.all_edges()) == rigid_rank_bruteforce(g.all_edges()), g
        note["text"] = f"{len(graphs)} connected graphs with n <= 6 and 200 random n = 7"


def test_c06_union_small_graphs():
    with criterion("6 union vs exhaustive search", 300) as note:
        count = 0
        for n, gs in small_graphs(6).items():
            for g in gs:
                for k, ell in ((1, 0), (0, 1), (0, 2), (1, 1)):
                    c = pack_rigid_and_trees(g, k, ell)
                    assert c.packed == brute_force_packs(g, k, ell), (g, k, ell)
                    assert verify_certificate(c)
                    count += 1
        assert tree_packing_number(complete(4)) == 2
        assert tree_packing_number(complete(6)) == 3
        note["text"] = f"{count} (graph, k, ell) cases"


def test_c07_extremal_failure():
    with criterion("7 extremal failure", 60) as note:
        parts = []
        for (n, d, k), ell in (((18, 6, 1), 1), ((24, 8, 2), 0)):
            g = build_extremal(ExtremalParams(n, d, k))
            c = pack_rigid_and_trees(g, k, ell)
            assert c.verdict == "refuted"
            assert verify_certificate(c)
            value = union_value(c.witness_f, k, ell)
            assert value < c.target and value == c.union_rank
            parts.append(f"({n},{d},{k}) ell={ell}: {value} < {c.target}")
        note["text"] = "; ".join(parts)


def test_c08_theorem_audit():
    with criterion("8 theorem audit", 600) as note:
        p = ExtremalParams(18, 6, 1)
        base = build_extremal(p)
        rng = random.Random(2008)
        for u, v in rng.sample(base.non_edges(), 50):
            rec = verify_main_theorem(base.with_edge(u, v), p)
            assert rec.packed, (u, v)
        records = sample_and_verify(p, 200, seed=2008)
        verdicts = [r.verdict for r in records]
        bad = verdicts.count(Verdict.COUNTEREXAMPLE)
        assert len(records) == 200 and bad == 0
        counts = {v.value: verdicts.count(v) for v in Verdict if verdicts.count(v)}
        note["text"] = f"50 added edges packed; 200 samples {counts}"


def test_c09_set_extremal_uniqueness():
    with criterion("9 class maximiser uniqueness", 900) as note:
        rep = verify_set_extremal(ExtremalParams(18, 6, 3))
        assert rep.members == 2145
        top = [r for r in rep.ranking if r[0] >= rep.best_value - 1e-8]
        assert all(iso for _, _, iso in top)
        assert rep.ranking[0][2] and rep.unique
        assert rep.separation is not None and rep.separation > 1e-8
        iso_count = sum(iso for _, _, iso in rep.ranking)
        note["text"] = f"{iso_count} extremal copies, separation {rep.separation:.4e}"


def test_c10_cdg_cross_check():
    with criterion("10 algebraic-connectivity cross-check", 60) as note:
        rep = check_cdg_conditions(complete(13), 2)
        assert rep.condition1 and rep.condition2 and rep.condition3
        c = pack_rigid_and_trees(complete(13), 2, 0)
        assert c.packed and verify_certificate(c) and len(c.rigid_slots) == 2
        ext = check_cdg_conditions(build_extremal(ExtremalParams(18, 6, 1)), 1)
        assert not ext.condition2 and ext.failing_vertex == 0
        note["text"] = f"K13 mu2 = {rep.mu2:.6f}; extremal graph fails at vertex {ext.failing_vertex}"


SEEDED_COMMANDS = [
    ("verify", "--trials", "5", "--seed", "7", "--n", "18", "--delta", "6", "--k", "1"),
    ("--format", "text", "verify", "--trials", "3", "--seed", "99", "--n", "24", "--delta", "8", "--k", "2"),
    ("verify", "--trials", "3", "--n", "21", "--delta", "7", "--k", "1"),
    ("construct", "--n", "18", "--delta", "6", "--k", "3", "--class-index", "100"),
    ("pack", "--extremal", "18", "6", "1", "--k", "1", "--ell", "1"),
    ("spectral", "--extremal", "18", "6", "1", "--vector"),
    ("set-extremal", "--n", "18", "--delta", "6", "--k", "2", "--dedup"),
    ("cdg", "--extremal", "18", "6", "1", "--k", "1"),
]


def test_c11_determinism():
    with criterion("11 determinism", None) as note:
        for argv in SEEDED_COMMANDS:
            runs = [
                subprocess.run([sys.executable, "-m", "rigidpack.cli", *argv], capture_output=True, check=False)
                for _ in range(2)
            ]
            assert runs[0].returncode == runs[1].returncode
            assert runs[0].stdout, argv
            assert runs[0].stdout == runs[1].stdout, argv
        note["text"] = f"{len(SEEDED_COMMANDS)} commands byte-identical across two runs"
