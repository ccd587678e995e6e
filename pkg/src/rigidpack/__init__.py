"""Spectral conditions for packing spanning rigid subgraphs and spanning
trees: graph construction, eigensolvers, the (2,3) pebble game, matroid
union packing with certificates, and a desk-scale verification harness."""

from .errors import BudgetExceeded, Graph6Error, HypothesisViolation, NonConvergence, ParameterError, RigidpackError
from .graph import EdgeSubset, ExtremalParams, Graph, build_extremal, enumerate_class
from .harness import Verdict, check_cdg_conditions, sample_and_verify, verify_main_theorem, verify_set_extremal
from .matroid_union import PackingCertificate, pack_rigid_and_trees, union_rank, verify_certificate
from .rigidity import laman_independent, rigid_rank
from .spectral import algebraic_connectivity, hong_bound, spectral_radius

__version__ = "0.1.0"

__all__ = [
    "BudgetExceeded",
    "EdgeSubset",
    "ExtremalParams",
    "Graph",
    "Graph6Error",
    "HypothesisViolation",
    "NonConvergence",
    "PackingCertificate",
    "ParameterError",
    "RigidpackError",
    "Verdict",
    "algebraic_connectivity",
    "build_extremal",
    "check_cdg_conditions",
    "enumerate_class",
    "hong_bound",
    "laman_independent",
    "pack_rigid_and_trees",
    "rigid_rank",
    "sample_and_verify",
    "spectral_radius",
    "union_rank",
    "verify_certificate",
    "verify_main_theorem",
    "verify_set_extremal",
]
