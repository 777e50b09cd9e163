"""Generate, construct and check proofs in resolution-based redundancy proof systems."""

from .core import (
    Assignment,
    Clause,
    Formula,
    brute_force_sat,
    mk_clause,
    project,
    resolvent,
    restrict_formula,
    satisfies,
    vars_of,
)
from .propagation import propagate, unit_refutes
from .redundancy import (
    find_bc_witness,
    find_sbc_witness,
    is_bc,
    is_rat,
    is_sbc,
    sbc_projection_check,
)

__version__ = "0.1.0"
