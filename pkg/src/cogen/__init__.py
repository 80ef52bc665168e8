"""Generating-graph cocliques of S_n and A_n around intransitive maximal subgroups."""

from .errors import (
    BudgetExceededError,
    CogenError,
    DegreeMismatchError,
    InternalInconsistencyError,
    OutOfDomainError,
    ParseError,
    PreconditionError,
)
from .perm import CycleType, Permutation, compose, conjugate, cycle_type, format_cycles, parity, parse_cycles
from .groups import (
    BlockSystem,
    PermutationGroup,
    alternating_group,
    generates,
    generates_pair,
    symmetric_group,
)
from .witness import Scenario, find_witness, verify_witness

__version__ = "0.1.0"
