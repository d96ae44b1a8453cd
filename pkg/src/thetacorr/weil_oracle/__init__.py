"""Explicit Weil representations of tiny dual pairs over F_q, used as an
independent check on the combinatorial correspondence."""

from .chartable import CharTable, character_table
from .cyclotomic import Cyc, CycloField, CycloMatrix
from .fq import Fq
from .groups import FiniteGroupTable, GroupTooLarge, build_group
from .heisenberg import HeisElement, HeisenbergRep, heisenberg_rep
from .oracle import (
    ORACLE_PAIRS,
    OracleError,
    OracleGuard,
    OracleReport,
    embed,
    identify_unipotent,
    multiplicity_matrix,
    twist,
)
from .weil import IntertwinerError, WeilRepresentation, weil_operator

__all__ = [
    "CharTable", "character_table", "Cyc", "CycloField", "CycloMatrix", "Fq", "FiniteGroupTable",
    "GroupTooLarge", "build_group", "HeisElement", "HeisenbergRep", "heisenberg_rep", "ORACLE_PAIRS",
    "OracleError", "OracleGuard", "OracleReport", "embed", "identify_unipotent", "multiplicity_matrix",
    "twist", "IntertwinerError", "WeilRepresentation", "weil_operator",
]
