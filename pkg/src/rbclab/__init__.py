"""Robust batch codes over small finite fields: verification, constructions,
the block-length lower bound, the shrinking reduction, and exhaustive search."""

from .algebra import GF, FieldError, Matrix, field_arith, in_colspace, rank, restrict
from .bound import BoundResult, Regime, figure_csv, figure_table, repetition_threshold, theorem_bound
from .codes import (
    BudgetExceeded,
    LinearCode,
    construct_block_rs,
    construct_mds,
    construct_repetition,
    encode,
    is_mds,
    min_distance,
)
from .rbc import RbcParams, VerdictReport, determines, find_repair_set, lemma1_check, verify_rbc
from .search import SearchOutcome, Status, enumerate_rbcs, exists_rbc, min_blocklength
from .shrink import ShrinkError, ShrinkStep, ShrinkTrace, shrink_chain, shrink_once

__version__ = "0.1.0"
