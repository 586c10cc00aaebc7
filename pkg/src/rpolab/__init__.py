"""Recursive path orders, term rewriting, and finite checks of termination principles."""

from .relations import Lifting, RelationSpec
from .rewriting import Rule, Trs, empirical_termination, normalize
from .rpo import Certificate, PrecedenceStatus, RpoInstance, orient_trs, rpo_decomp_gt0, rpo_gt
from .terms import App, Signature, Var, parse_term
from .trsfile import load_trs, parse_trs

__version__ = "0.1.0"

__all__ = [
    "Lifting", "RelationSpec", "Rule", "Trs", "empirical_termination", "normalize", "Certificate",
    "PrecedenceStatus", "RpoInstance", "orient_trs", "rpo_decomp_gt0", "rpo_gt", "App", "Signature", "Var",
    "parse_term", "load_trs", "parse_trs",
]
