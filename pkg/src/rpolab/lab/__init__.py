"""Finite, executable renditions of the termination principle and its variants."""

from .badseq import (BarInductionReport, MinimalBad, NoBad, bar_induction_check, minimal_bad_sequence,
                       verify_minimal_bad)
from .campaigns import CAMPAIGNS, CampaignConfig, CampaignReport
from .instance import (CARRIER_CAP, CounterChain, InvalidInstance, PrincipleInstance, Unknown, Witness, Yes,
                       emin_check, ewf, min_check, swf)
from .lemmas import DiagonalError, compare_premises, diagonal, lemma34_proof_steps, lemma34_transform, lemma44_translate
from .sequences import LazySequence, OpenPredicate, parse_alpha, shift, splice
from .simplification import MissingRelation, gl_check, stp_check

__all__ = [
    "BarInductionReport", "MinimalBad", "NoBad", "bar_induction_check", "minimal_bad_sequence",
    "verify_minimal_bad", "CAMPAIGNS", "CampaignConfig", "CampaignReport", "CARRIER_CAP", "CounterChain",
    "InvalidInstance", "PrincipleInstance", "Unknown", "Witness", "Yes", "emin_check", "ewf", "min_check",
    "swf", "DiagonalError", "compare_premises", "diagonal", "lemma34_proof_steps", "lemma34_transform",
    "lemma44_translate", "LazySequence", "OpenPredicate", "parse_alpha", "shift", "splice",
    "MissingRelation", "gl_check", "stp_check",
]
