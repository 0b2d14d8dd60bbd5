"""Weyl group multiple Dirichlet series over F_q(t).

Exact p-parts from the Chinta-Gunnells action, Gauss sums and tame symbols
over F_q[t], and twisted-multiplicative gluing of local coefficients.
"""

from .chinta_gunnells import (
    HTable,
    NotPolynomial,
    Report,
    casselman_shalika,
    cg_act,
    cg_simple,
    cs_zero,
    h_coefficients,
    verify_braid,
    verify_cs_invariance,
)
from .gauss_ring import GaussRing, GaussScalar, GroupAlgebraElement, LocalizedElement, format_element, specialize
from .glue import WMDS, LambdaClassVector, TupleC
from .residue import FqPoly, Place, gauss_sum, hilbert_symbol, power_residue_symbol, residue_symbol_S
from .rootdata import BasedRootDatum, MetaplecticStructure, build_root_datum, metaplectic_structure
from .scattering import verify_scattering

__version__ = "0.1.0"

__all__ = [
    "BasedRootDatum",
    "FqPoly",
    "GaussRing",
    "GaussScalar",
    "GroupAlgebraElement",
    "HTable",
    "LambdaClassVector",
    "LocalizedElement",
    "MetaplecticStructure",
    "NotPolynomial",
    "Place",
    "Report",
    "TupleC",
    "WMDS",
    "build_root_datum",
    "casselman_shalika",
    "cg_act",
    "cg_simple",
    "cs_zero",
    "format_element",
    "gauss_sum",
    "h_coefficients",
    "hilbert_symbol",
    "metaplectic_structure",
    "power_residue_symbol",
    "residue_symbol_S",
    "specialize",
    "verify_braid",
    "verify_cs_invariance",
    "verify_scattering",
]
