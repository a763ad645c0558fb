"""Command-line wrappers: plot-spectrum and plot-residuals.

Exit codes: 0 success, 1 bad input data or unwritable output, 2 usage.
"""

from __future__ import annotations

import argparse
import sys

from .figures import PlotSpec, plot_residuals, plot_spectrum
from .io import SchemaError


def _parser(prog: str, what: str) -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog=prog, description=what)
    p.add_argument("csv", nargs="+", help="input CSV file(s) produced by mtf-spectra")
    p.add_argument("-o", "--out", required=True, help="output image (.png or .svg)")
    p.add_argument("--variant", help="draw only this operator variant")
    return p


def _run(kind: str, argv) -> int:
    prog = "plot-spectrum" if kind == "scatter" else "plot-residuals"
    what = (
        "Eigenvalue scatter with accumulation points and the sqrt(2) circle"
        if kind == "scatter"
        else "GMRes residual-history curves, dashed/solid per input file"
    )
    args = _parser(prog, what).parse_args(argv)
    spec = PlotSpec(inputs=tuple(args.csv), kind=kind, output=args.out, variant=args.variant)
    try:
        out = plot_spectrum(spec) if kind == "scatter" else plot_residuals(spec)
    except (SchemaError, ValueError, OSError) as exc:
        print(f"{prog}: {exc}", file=sys.stderr)
        return 1
    print(out)
    return 0


def main_spectrum(argv=None) -> int:
    code = _run("scatter", argv)
    if argv is None:  # console entry point
        sys.exit(code)
    return code


def main_residuals(argv=None) -> int:
    code = _run("residuals", argv)
    if argv is None:
        sys.exit(code)
    return code
