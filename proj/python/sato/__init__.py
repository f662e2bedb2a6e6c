"""Exact arithmetic for formal pseudo-differential operators and Schur pairs."""

from ._core import (
    Element,
    Operator,
    Ring,
    SatoError,
    Series,
    commutator,
    conjugate_by_unit,
    conjugator_to_power,
    gap_genus,
    gauge_first_order,
    kdv_residual,
    run_cli,
    schur_extract,
    schur_rebuild,
)

__all__ = [
    "Element",
    "Operator",
    "Ring",
    "SatoError",
    "Series",
    "commutator",
    "conjugate_by_unit",
    "conjugator_to_power",
    "gap_genus",
    "gauge_first_order",
    "kdv_residual",
    "run_cli",
    "schur_extract",
    "schur_rebuild",
]
