"""Exact K-semistable domains of log Fano pairs.

The public entry points are re-exported here; see the submodules for the
full toolkit.
"""

from .chambers import chamber_complex, collect_walls, crossing_report, face_constancy_check
from .domains import beta_forms, consistency_check, delta_at, kss_domain, lc_polytope, make_table
from .errors import (
    DegenerateInputError,
    DomainError,
    InputError,
    InvariantViolation,
    KssError,
    ModelValidationError,
)
from .io import load_family, load_model
from .oracle import grid_oracle
from .toric import validate_model

__version__ = "0.1.0"

__all__ = [
    "DegenerateInputError",
    "DomainError",
    "InputError",
    "InvariantViolation",
    "KssError",
    "ModelValidationError",
    "beta_forms",
    "chamber_complex",
    "collect_walls",
    "consistency_check",
    "crossing_report",
    "delta_at",
    "face_constancy_check",
    "grid_oracle",
    "kss_domain",
    "lc_polytope",
    "load_family",
    "load_model",
    "make_table",
    "validate_model",
]
