"""Transversal diagonal gates: weight-residue analysis and an exact statevector oracle."""

from .analyzer import (
    LogicalDiagonal,
    PhaseProfile,
    ccz_action,
    ccz_odd_counts,
    logical_order,
    oblivious_check,
    phase_profile,
    transversal_z_action,
)
from .oracle import OracleVerdict, ccz_oracle, gamma_oracle

__all__ = [
    "LogicalDiagonal",
    "OracleVerdict",
    "PhaseProfile",
    "ccz_action",
    "ccz_odd_counts",
    "ccz_oracle",
    "gamma_oracle",
    "logical_order",
    "oblivious_check",
    "phase_profile",
    "transversal_z_action",
]
