"""Figure generation for mtf-spectra CSV artifacts."""

__version__ = "0.1.0"

from .figures import (
    PlotSpec,
    VARIANT_COLORS,
    build_residuals_figure,
    build_spectrum_figure,
    plot_residuals,
    plot_spectrum,
)
from .io import SchemaError, read_residuals_csv, read_spectrum_csv

__all__ = [
    "PlotSpec",
    "SchemaError",
    "VARIANT_COLORS",
    "build_residuals_figure",
    "build_spectrum_figure",
    "plot_residuals",
    "plot_spectrum",
    "read_residuals_csv",
    "read_spectrum_csv",
]
