"""Twin-width at most one: recognition, certificates and related graph tools."""

from .dh import classify_by_split_structure, classify_dh_twin_width, dh_2_sequence, dh_elimination, is_at_free, split_tree_dh
from .graph import ContractionSequence, Graph, PreconditionError, SequenceError, Trigraph, VerificationReport, contract, verify_sequence
from .modular import MDNode, assemble_sequence, is_cograph, is_module, modular_decomposition, quotient
from .oracle import OracleBudgetExceeded, brute_force_tww
from .permgraph import Realiser, build_realiser_from_sequence, compute_realiser, diagram_layout, extremal_vertices, realises
from .tww1 import RecognitionOutcome, check_sequence_theory, peel_prime, recognize, recognize_prime

__version__ = "0.1.0"

__all__ = [
    "Graph",
    "Trigraph",
    "ContractionSequence",
    "VerificationReport",
    "PreconditionError",
    "SequenceError",
    "contract",
    "verify_sequence",
    "MDNode",
    "modular_decomposition",
    "quotient",
    "is_module",
    "is_cograph",
    "assemble_sequence",
    "brute_force_tww",
    "OracleBudgetExceeded",
    "Realiser",
    "compute_realiser",
    "realises",
    "extremal_vertices",
    "diagram_layout",
    "build_realiser_from_sequence",
    "RecognitionOutcome",
    "recognize",
    "recognize_prime",
    "peel_prime",
    "check_sequence_theory",
    "dh_elimination",
    "split_tree_dh",
    "classify_dh_twin_width",
    "classify_by_split_structure",
    "dh_2_sequence",
    "is_at_free",
]
