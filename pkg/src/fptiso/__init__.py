"""Fixed-parameter solvers for constrained (hyper)graph isomorphism."""

from .perm import Permutation, compose
from .hypergraph import ColoredHypergraph, is_automorphism, is_isomorphism
from .cnf import CnfFormula, Lit
from .groups import GeneratedGroup
from .bounded_color import BoundedColorInstance, color_exact_cnf_ga
from .exact_weight import exact_cnf_hga, exact_cnf_hgi
from .cnf_iso import cnf_hgi
from .complexity import enumerate_patterns, exact_complexity_iso
from .colga import ColGaInstance, colga

__all__ = [
    "Permutation",
    "compose",
    "ColoredHypergraph",
    "is_automorphism",
    "is_isomorphism",
    "CnfFormula",
    "Lit",
    "GeneratedGroup",
    "BoundedColorInstance",
    "color_exact_cnf_ga",
    "exact_cnf_hga",
    "exact_cnf_hgi",
    "cnf_hgi",
    "enumerate_patterns",
    "exact_complexity_iso",
    "ColGaInstance",
    "colga",
]
