"""Exact invariants, covering formulas and configuration constraints for
Seiberg-Witten theory of cyclic branched covers of 4-manifolds."""
from .errors import SwBranchError
from .exactmath import ModP, Rational, format_rational, parse_rational

__all__ = ["ModP", "Rational", "SwBranchError", "format_rational", "parse_rational"]
__version__ = "0.1.0"
