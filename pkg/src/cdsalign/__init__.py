"""Frameshift-aware global alignment of protein-coding DNA sequences.

>>> from cdsalign import CodingSequence, align
>>> result = align(CodingSequence("ATGTGA"), CodingSequence("ATGTGA"))
>>> result.alignment.row_a
'ATGTGA'
"""
from .dp import AlignmentResult, DpState, align, compute_D_cell, compute_DF_cell, fill, traceback
from .errors import (
    AsymmetricMatrix,
    BudgetExceeded,
    CdsAlignError,
    CorruptProvenance,
    EmptyInput,
    EmptySequence,
    InputError,
    InvalidAlignment,
    InvalidSymbol,
    LengthNotMultipleOfThree,
    MissingStopRow,
    ParseError,
    RowMismatch,
    UndefinedCell,
    ValidationError,
)
from .io_cli import bundled_blosum62, load_matrix, read_fasta, render_alignment
from .model import (
    Alignment,
    CodingSequence,
    GeneticCode,
    ScoringScheme,
    SubstitutionMatrix,
    nongap_count,
    parse_coding_sequence,
    translate,
)
from .oracle import EnumerationBudget, brute_force_optimum, enumerate_alignments
from .scorer import CodonClassification, ScoreBreakdown, classify, score_alignment

__version__ = "0.1.0"

__all__ = [
    "Alignment", "AlignmentResult", "AsymmetricMatrix", "BudgetExceeded", "CdsAlignError",
    "CodingSequence", "CodonClassification", "CorruptProvenance", "DpState", "EmptyInput",
    "EmptySequence", "EnumerationBudget", "GeneticCode", "InputError", "InvalidAlignment",
    "InvalidSymbol", "LengthNotMultipleOfThree", "MissingStopRow", "ParseError",
    "RowMismatch", "ScoreBreakdown", "ScoringScheme", "SubstitutionMatrix", "UndefinedCell",
    "ValidationError", "align", "brute_force_optimum", "bundled_blosum62", "classify",
    "compute_DF_cell", "compute_D_cell", "enumerate_alignments", "fill", "load_matrix",
    "nongap_count", "parse_coding_sequence", "read_fasta", "render_alignment",
    "score_alignment", "traceback", "translate",
]
