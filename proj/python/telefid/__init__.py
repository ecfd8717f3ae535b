"""Teleportation fidelity and fidelity deviation of two-qubit resources.

States are 4x4 complex numpy arrays in the |00>, |01>, |10>, |11> basis.
Failures raise TelefidError, whose ``kind`` names the error class.
"""

from ._core import (
    TelefidError,
    analyze,
    assess,
    bell,
    canonicalize,
    check_optimal,
    construct_optimal,
    fidelity_stats,
    fidelity_stats_mc,
    largest_max_fidelity,
    properties,
    pure_schmidt,
    random_state,
    validate,
    werner,
)

__all__ = [
    "TelefidError",
    "analyze",
    "assess",
    "bell",
    "canonicalize",
    "check_optimal",
    "construct_optimal",
    "fidelity_stats",
    "fidelity_stats_mc",
    "largest_max_fidelity",
    "properties",
    "pure_schmidt",
    "random_state",
    "validate",
    "werner",
]
