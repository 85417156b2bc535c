"""Exact-arithmetic trace invariants of boundary-link Seifert matrices."""

from .invariants import (
    chi,
    chi_delta,
    chi_phi,
    half_rank_correction,
    i_half_trace,
    reconstruct_trace,
    torsion_polynomial,
    tr_monomial,
    tr_series,
)
from .commalg import CommMatrix, CommSeries
from .genfun import BiSeries, delta_series, phi_series
from .ncalg import CyclicSeries, NCSeries
from .seifert import BlockStructure, SeifertMatrix, seifert_matrix, validate

__all__ = [
    "BiSeries",
    "BlockStructure",
    "CommMatrix",
    "CommSeries",
    "CyclicSeries",
    "NCSeries",
    "SeifertMatrix",
    "chi",
    "chi_delta",
    "chi_phi",
    "delta_series",
    "half_rank_correction",
    "i_half_trace",
    "phi_series",
    "reconstruct_trace",
    "seifert_matrix",
    "torsion_polynomial",
    "tr_monomial",
    "tr_series",
    "validate",
]

__version__ = "0.1.0"
