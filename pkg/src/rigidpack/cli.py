"""Packing of spanning rigid subgraphs and spanning trees, with spectral checks.

Exit codes: 0 success, 1 counterexample found, 2 input error,
3 budget exceeded or no convergence.
"""

from __future__ import annotations

import argparse
import json
import math
import os
import sys
from dataclasses import dataclass, fields, replace
from typing import Any, Iterable, TextIO

from . import graph6
from .errors import BudgetExceeded, Graph6Error, NonConvergence, ParameterError, RigidpackError
from .graph import ExtremalParams, Graph, build_extremal, class_member
from .harness import (
    REJECTION_CAP,
    check_cdg_conditions,
    sample_graphs,
    summarize,
    verify_main_theorem,
    verify_set_extremal,
)
from .matroid_union import circuit_rank, full_rank, pack_rigid_and_trees, verify_certificate
from .rigidity import rigid_rank
from .spectral import DEFAULT_MARGIN, DEFAULT_TOL, algebraic_connectivity, hong_bound, spectral_radius

CONFIG_ENV = "RIGIDPACK_CONFIG"

EXIT_OK = 0
EXIT_COUNTEREXAMPLE = 1
EXIT_INPUT = 2
EXIT_BUDGET = 3

SIG_DIGITS = 12


@dataclass(frozen=True)
class RunConfig:
    tolerance: float = DEFAULT_TOL
    margin: float = DEFAULT_MARGIN
    seed: int = 0
    rejection_cap: int = REJECTION_CAP
    class_budget: int = 100_000
    output_path: str | None = None
    format: str = "json"

    def __post_init__(self):
        if not self.tolerance > 0:
            raise ParameterError("tolerance must be positive")
        if self.margin < self.tolerance:
            raise ParameterError("margin must be at least the tolerance")
        if self.format not in ("json", "text"):
            raise ParameterError(f"unknown format {self.format!r}")

    @classmethod
    def load(cls, path: str | None) -> "RunConfig":
        path = path or os.environ.get(CONFIG_ENV)
        if not path:
            return cls()
        with open(path, encoding="utf-8") as fh:
            doc = json.load(fh)
        known = {f.name for f in fields(cls)}
        unknown = set(doc) - known
        if unknown:
            raise ParameterError(f"unknown config keys: {sorted(unknown)}")
        return cls(**doc)


def _round(obj: Any) -> Any:
    if isinstance(obj, float):
        if math.isfinite(obj):
            return float(f"{obj:.{SIG_DIGITS}g}")
        return obj
    if isinstance(obj, dict):
        return {k: _round(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_round(v) for v in obj]
    return obj


class _Out:
    def __init__(self, cfg: RunConfig, stream: TextIO):
        self.cfg = cfg
        self.stream = stream

    def emit(self, doc: dict[str, Any]) -> None:
        if self.cfg.format == "json":
            self.stream.write(json.dumps(_round(doc), sort_keys=True) + "\n")
        else:
            for key, value in doc.items():
                if isinstance(value, float):
                    value = f"{value:.{SIG_DIGITS}f}"
                self.stream.write(f"{key} = {value}\n")
            self.stream.write("\n")

    def line(self, text: str) -> None:
        self.stream.write(text + "\n")


def _read_graphs(path: str) -> list[Graph]:
    if path == "-":
        return [g for _, g in graph6.read_lines(sys.stdin)]
    with open(path, encoding="ascii", errors="replace") as fh:
        return [g for _, g in graph6.read_lines(fh)]


def _input_graphs(args: argparse.Namespace) -> list[Graph]:
    if getattr(args, "graph", None):
        return _read_graphs(args.graph)
    if getattr(args, "extremal", None):
        n, delta, k = args.extremal
        return [build_extremal(ExtremalParams(n, delta, k))]
    raise ParameterError("give --graph FILE or --extremal N DELTA K")


# -- subcommands ---------------------------------------------------------

def cmd_construct(args, cfg: RunConfig, out: _Out) -> int:
    p = ExtremalParams(args.n, args.delta, args.k)
    g = build_extremal(p) if args.class_index is None else class_member(p, args.class_index)
    out.line(graph6.encode(g))
    return EXIT_OK


def cmd_verify(args, cfg: RunConfig, out: _Out) -> int:
    records = []
    if args.trials is not None:
        if None in (args.n, args.delta, args.k):
            raise ParameterError("--trials needs --n, --delta and --k")
        p = ExtremalParams(args.n, args.delta, args.k)
        seed = cfg.seed if args.seed is None else args.seed
        graphs: Iterable[tuple[Graph, ExtremalParams]] = (
            (g, p) for g in sample_graphs(p, args.trials, seed, cfg.rejection_cap)
        )
    elif args.extremal:
        if None in (args.n, args.delta, args.k):
            raise ParameterError("--extremal needs --n, --delta and --k")
        p = ExtremalParams(args.n, args.delta, args.k)
        graphs = [(build_extremal(p), p)]
    elif args.graph:
        if args.k is None:
            raise ParameterError("--graph needs --k")
        graphs = [
            (g, ExtremalParams(g.n, g.min_degree() if args.delta is None else args.delta, args.k))
            for g in _read_graphs(args.graph)
        ]
    else:
        raise ParameterError("give --graph FILE, --extremal or --trials T")
    for g, p in graphs:
        rec = verify_main_theorem(g, p, cfg.tolerance, cfg.margin)
        records.append(rec)
        out.emit(rec.to_json())
    summary = summarize(records)
    out.emit({"summary": summary} if cfg.format == "json" else summary)
    return EXIT_COUNTEREXAMPLE if summary["counterexamples"] else EXIT_OK


def cmd_pack(args, cfg: RunConfig, out: _Out) -> int:
    for g in _input_graphs(args):
        cert = pack_rigid_and_trees(g, args.k, args.ell)
        doc = cert.to_json()
        doc["verified"] = verify_certificate(cert)
        out.emit(doc)
    return EXIT_OK


def _parse_subset(text: str, g: Graph):
    if text == "all":
        return g.all_edges()
    if text == "none":
        return g.subset(())
    return g.subset(int(x) for x in text.split(",") if x.strip())


def cmd_rank(args, cfg: RunConfig, out: _Out) -> int:
    for g in _input_graphs(args):
        f = _parse_subset(args.subset, g)
        rr, rm = rigid_rank(f), circuit_rank(f)
        outside = g.m - len(f)
        out.emit({
            "n": g.n,
            "m": g.m,
            "subset_size": len(f),
            "rigid_rank": rr,
            "circuit_rank": rm,
            "k_times_rigid_rank": args.k * rr,
            "ell_times_circuit_rank": args.ell * rm,
            "outside": outside,
            "value": args.k * rr + args.ell * rm + outside,
            "target": full_rank(g.n, args.k, args.ell),
        })
    return EXIT_OK


def cmd_spectral(args, cfg: RunConfig, out: _Out) -> int:
    for g in _input_graphs(args):
        sr = spectral_radius(g, cfg.tolerance)
        doc: dict[str, Any] = {"n": g.n, "m": g.m, "lambda1": sr.value, "residual": sr.residual}
        if g.n >= 2:
            doc["mu2"] = algebraic_connectivity(g, cfg.tolerance).mu2
        if g.n and g.min_degree() >= 1:
            doc["hong_bound"] = hong_bound(g)
        if args.vector:
            doc["perron_vector"] = sr.vector.tolist()
        out.emit(doc)
    return EXIT_OK


def cmd_cdg(args, cfg: RunConfig, out: _Out) -> int:
    status = EXIT_OK
    for g in _input_graphs(args):
        rep = check_cdg_conditions(g, args.k, cfg.tolerance)
        out.emit(rep.to_json())
        if rep.counterexample:
            status = EXIT_COUNTEREXAMPLE
    return status


def cmd_set_extremal(args, cfg: RunConfig, out: _Out) -> int:
    p = ExtremalParams(args.n, args.delta, args.k)
    rep = verify_set_extremal(p, args.dedup, cfg.tolerance, cfg.margin, cfg.class_budget)
    doc = rep.to_json()
    doc["ranking"] = [
        {"lambda1": lam, "index": idx, "extremal_iso": iso} for lam, idx, iso in rep.ranking[: args.top]
    ]
    out.emit(doc)
    return EXIT_OK if rep.unique else EXIT_COUNTEREXAMPLE


# -- parser --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rigidpack", description=__doc__.splitlines()[0])
    ap.add_argument("--config", help=f"JSON config file (default: ${CONFIG_ENV})")
    ap.add_argument("--tol", type=float, help="eigen-residual tolerance")
    ap.add_argument("--margin", type=float, help="decision margin for spectral comparisons")
    ap.add_argument("--format", choices=("json", "text"))
    ap.add_argument("--output", "-o", help="write to this file instead of stdout")
    sub = ap.add_subparsers(dest="command", required=True)

    def graph_input(p: argparse.ArgumentParser) -> None:
        p.add_argument("--graph", help="graph6 file, one graph per line ('-' for stdin)")
        p.add_argument("--extremal", nargs=3, type=int, metavar=("N", "DELTA", "K"),
                       help="use the extremal graph with these parameters")

    p = sub.add_parser("construct", help="emit the extremal graph (or a class member) in graph6")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--class-index", type=int, help="emit this labelled member of the class instead")
    p.set_defaults(func=cmd_construct)

    p = sub.add_parser("verify", help="check the spectral packing statement on graphs")
    p.add_argument("--graph", help="graph6 file; delta defaults to each graph's minimum degree")
    p.add_argument("--extremal", action="store_true", help="verify the extremal graph itself")
    p.add_argument("--trials", type=int, help="number of random graphs to sample")
    p.add_argument("--seed", type=int)
    p.add_argument("--n", type=int)
    p.add_argument("--delta", type=int)
    p.add_argument("--k", type=int)
    p.set_defaults(func=cmd_verify)

    p = sub.add_parser("pack", help="pack k rigid spanning subgraphs and ell spanning trees")
    graph_input(p)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--ell", type=int, required=True)
    p.set_defaults(func=cmd_pack)

    p = sub.add_parser("rank", help="evaluate k*r_R(F) + ell*r_M(F) + |E-F|")
    graph_input(p)
    p.add_argument("--k", type=int, default=1)
    p.add_argument("--ell", type=int, default=0)
    p.add_argument("--subset", default="all", help="'all', 'none' or comma-separated edge indices")
    p.set_defaults(func=cmd_rank)

    p = sub.add_parser("spectral", help="spectral radius, algebraic connectivity, degree bound")
    graph_input(p)
    p.add_argument("--vector", action="store_true", help="include the Perron vector")
    p.set_defaults(func=cmd_spectral)

    p = sub.add_parser("cdg", help="algebraic-connectivity conditions for k rigid factors")
    graph_input(p)
    p.add_argument("--k", type=int, required=True)
    p.set_defaults(func=cmd_cdg)

    p = sub.add_parser("set-extremal", help="spectral maximiser over the whole class")
    p.add_argument("--n", type=int, required=True)
    p.add_argument("--delta", type=int, required=True)
    p.add_argument("--k", type=int, required=True)
    p.add_argument("--dedup", action="store_true", help="also count isomorphism classes")
    p.add_argument("--top", type=int, default=10, help="ranking entries to print")
    p.set_defaults(func=cmd_set_extremal)
    return ap


def main(argv: list[str] | None = None) -> int:
    ap = build_parser()
    args = ap.parse_args(argv)
    try:
        cfg = RunConfig.load(args.config)
        overrides = {k: v for k, v in (("tolerance", args.tol), ("margin", args.margin),
                                       ("format", args.format), ("output_path", args.output)) if v is not None}
        cfg = replace(cfg, **overrides)
        if cfg.output_path:
            with open(cfg.output_path, "w", encoding="utf-8") as fh:
                return args.func(args, cfg, _Out(cfg, fh))
        return args.func(args, cfg, _Out(cfg, sys.stdout))
    except (BudgetExceeded, NonConvergence) as exc:
        print(f"rigidpack: {exc}", file=sys.stderr)
        return EXIT_BUDGET
    except (Graph6Error, ParameterError, OSError, json.JSONDecodeError) as exc:
        print(f"rigidpack: {exc}", file=sys.stderr)
        if isinstance(exc, ParameterError) and not isinstance(exc, Graph6Error):
            ap.print_usage(sys.stderr)
        return EXIT_INPUT
    except RigidpackError as exc:
        print(f"rigidpack: {exc}", file=sys.stderr)
        return EXIT_INPUT


if __name__ == "__main__":
    sys.exit(main())
