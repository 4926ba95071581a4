"""Flag-Tutte, ribbon and stranded-graph polynomials with their recurrences."""

from .invariant import (
    InvariantKind,
    reduce,
    t_frak_recursive,
    t_frak_statesum,
    t_multivariate,
    t_reductions,
)
from .poly import Basis, Polynomial, parse, to_basis
from .ribbon import RibbonFlagGraph, br_classic, br_flags, br_flags_prime
from .simple import SimpleFlagGraph, tutte_classic, tutte_flags_recursive, tutte_flags_statesum
from .stranded import InvariantViolation, StrandedGraph, build_colored_tensor, from_compact, melon
from .verify import GeneratorSpec, SuiteReport, generate, run_suite

__version__ = "0.1.0"

__all__ = [
    "Basis",
    "GeneratorSpec",
    "InvariantKind",
    "InvariantViolation",
    "Polynomial",
    "RibbonFlagGraph",
    "SimpleFlagGraph",
    "StrandedGraph",
    "SuiteReport",
    "br_classic",
    "br_flags",
    "br_flags_prime",
    "build_colored_tensor",
    "from_compact",
    "generate",
    "melon",
    "parse",
    "reduce",
    "run_suite",
    "t_frak_recursive",
    "t_frak_statesum",
    "t_multivariate",
    "t_reductions",
    "to_basis",
    "tutte_classic",
    "tutte_flags_recursive",
    "tutte_flags_statesum",
]
