"""Mode-by-mode spectral calculus for multi-trace boundary operators of
Maxwell transmission problems on the unit sphere."""

__version__ = "0.1.0"

from .krylov import GmresReport, gmres, precond_compare
from .modal import (
    ModalGrid,
    ModalOperator,
    SpectrumReport,
    build_operator,
    coercivity_quotient,
    spectrum_scan,
    synthetic_rhs,
)
from .riccati import RiccatiTable, ScaledProducts, riccati_table, scaled_products
from .scenarios import SCENARIO_NAMES, Scenario, get_scenario, load_custom_media
from .symbols import (
    AccumulationSet,
    MediaPair,
    Medium,
    a_symbol,
    accumulation_points,
    asymptotic_symbols,
    b_symbol,
    k_symbol,
    mtf_inverse_symbol,
    mtf_symbol,
    stf_symbol,
    v_symbol,
)

__all__ = [
    "AccumulationSet",
    "GmresReport",
    "MediaPair",
    "Medium",
    "ModalGrid",
    "ModalOperator",
    "RiccatiTable",
    "SCENARIO_NAMES",
    "ScaledProducts",
    "Scenario",
    "SpectrumReport",
    "a_symbol",
    "accumulation_points",
    "asymptotic_symbols",
    "b_symbol",
    "build_operator",
    "coercivity_quotient",
    "get_scenario",
    "gmres",
    "k_symbol",
    "load_custom_media",
    "mtf_inverse_symbol",
    "mtf_symbol",
    "precond_compare",
    "riccati_table",
    "scaled_products",
    "spectrum_scan",
    "stf_symbol",
    "synthetic_rhs",
    "v_symbol",
]
