"""Generic discriminants of minimal surface singularities from resolution graphs."""

from .depth import branch_counts, depth_map, omega_cycle
from .discriminant import analyze, contact, discriminant, emit_representative
from .errors import MinsingError
from .families import FamilySpec, expected_discriminant, generate, hj_expand
from .graph import (
    canonical_cycle,
    fundamental_cycle,
    intersection_form,
    pair,
    validate_graph,
)
from .oracle import oracle_contact, oracle_intersection, verify_class

__version__ = "0.1.0"
