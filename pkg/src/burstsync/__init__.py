"""Numerical laboratory for source synchronization against bursty-deletion
side information: exact small-block entropies, Monte Carlo estimators at
large block lengths, closed-form small-beta expansions, and a toy
random-binning synchronizer.
"""

from .deletion_model import (
    Bits,
    Boundary,
    DeletionParams,
    apply_deletion,
    sample_pattern,
)
from .errors import CapExceededError

__all__ = [
    "Bits",
    "Boundary",
    "CapExceededError",
    "DeletionParams",
    "apply_deletion",
    "sample_pattern",
]
