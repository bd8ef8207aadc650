"""Symbolic identity checks, relation residuals and independent oracles."""

from .drinfeld import DrinfeldReport, RelationTally, verify_drinfeld
from .identities import IdentityResult, verify_antisymmetrization, verify_rfact
from .multivar import MultivarLaurent, vandermonde
from .oracles import (
    LatticeReport,
    ProductCheck,
    character_oracle,
    colored_partition_counts,
    product_formula_route,
    product_formula_sweep,
    verify_lattice,
    verify_product_formula,
    verify_single_steps,
    x_via_power_sums,
)

__all__ = [
    "DrinfeldReport", "RelationTally", "verify_drinfeld",
    "IdentityResult", "verify_antisymmetrization", "verify_rfact",
    "MultivarLaurent", "vandermonde",
    "LatticeReport", "ProductCheck", "character_oracle", "colored_partition_counts",
    "product_formula_route", "product_formula_sweep", "verify_lattice",
    "verify_product_formula", "verify_single_steps", "x_via_power_sums",
]
