"""Figure builders: eigenvalue scatter and residual-history plots.

Uses the object-oriented matplotlib API (no pyplot, no global state), so
re-rendering the same CSV input is pixel-identical for a fixed backend
version.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from pathlib import Path

import numpy as np
from matplotlib.figure import Figure

from .io import SpectrumData, read_residuals_csv, read_spectrum_csv

VARIANT_COLORS = {"mtf": "red", "mtf2": "blue", "bmtf": "green", "stf2": "purple"}
FALLBACK_COLOR = "darkorange"
RESIDUAL_FLOOR = 1e-8
# first input dashed, second solid, further inputs keep cycling
TRUNCATION_STYLES = ("--", "-", "-.", ":")


@dataclass(frozen=True)
class PlotSpec:
    """One figure request: input CSVs, kind, output path, colors."""

    inputs: tuple[str, ...]
    kind: str  # "scatter" | "residuals"
    output: str
    colors: dict = field(default_factory=lambda: dict(VARIANT_COLORS))
    variant: str | None = None  # optional single-variant filter

    def __post_init__(self):
        if self.kind not in ("scatter", "residuals"):
            raise ValueError(f"unknown figure kind {self.kind!r}")
        if not self.inputs:
            raise ValueError("at least one input CSV is required")


def _color_for(variant: str, colors: dict) -> str:
    return colors.get(variant, FALLBACK_COLOR)


def build_spectrum_figure(
    datasets: list[SpectrumData], colors: dict | None = None, variant: str | None = None
) -> Figure:
    """Eigenvalue scatter with accumulation markers and the sqrt(2) circle."""
    colors = dict(VARIANT_COLORS) if colors is None else colors
    if variant is not None:
        datasets = [d for d in datasets if d.variant == variant]
        if not datasets:
            raise ValueError(f"no input matches variant {variant!r}")
    fig = Figure(figsize=(6.0, 6.0), dpi=110)
    ax = fig.add_subplot(111)
    theta = np.linspace(0.0, 2.0 * np.pi, 361)
    r = np.sqrt(2.0)
    ax.plot(r * np.cos(theta), r * np.sin(theta), color="gray", lw=1.0, zorder=1)
    for data in datasets:
        ax.scatter(
            data.values.real,
            data.values.imag,
            s=6,
            color=_color_for(data.variant, colors),
            label=data.variant,
            zorder=2,
        )
    for data in datasets:
        pts = data.accumulation_points
        ax.scatter(pts.real, pts.imag, s=60, marker="x", color="black", lw=1.5, zorder=3)
    ax.set_xlabel("Re")
    ax.set_ylabel("Im")
    ax.set_aspect("equal")
    ax.grid(True, alpha=0.3)
    ax.legend(loc="upper right", fontsize=8)
    return fig


def build_residuals_figure(
    runs: list[dict[str, np.ndarray]], colors: dict | None = None, variant: str | None = None
) -> Figure:
    """Relative residual vs iteration, one curve per variant and input file.

    The first input renders dashed, the second solid (coarse/fine
    truncation); residuals below the floor are drawn at the floor.
    """
    colors = dict(VARIANT_COLORS) if colors is None else colors
    fig = Figure(figsize=(7.5, 4.5), dpi=110)
    ax = fig.add_subplot(111)
    drew = 0
    for idx, histories in enumerate(runs):
        style = TRUNCATION_STYLES[idx % len(TRUNCATION_STYLES)]
        for name, res in histories.items():
            if variant is not None and name != variant:
                continue
            res = np.maximum(np.asarray(res, float), RESIDUAL_FLOOR)
            label = name if idx == 0 else None
            ax.semilogy(
                np.arange(res.size), res, style,
                color=_color_for(name, colors), label=label, lw=1.4,
            )
            drew += 1
    if drew == 0:
        raise ValueError(f"no residual series match variant {variant!r}")
    ax.set_xlabel("iteration")
    ax.set_ylabel("relative residual")
    ax.set_ylim(bottom=RESIDUAL_FLOOR / 2)
    ax.grid(True, which="both", alpha=0.3)
    ax.legend(loc="upper right", fontsize=8)
    return fig


def _save(fig: Figure, output: str | Path) -> Path:
    output = Path(output)
    if output.suffix.lower() not in (".png", ".svg"):
        raise ValueError(f"unsupported image format {output.suffix!r} (use .png or .svg)")
    fig.savefig(output)
    return output


def plot_spectrum(spec: PlotSpec) -> Path:
    datasets = [read_spectrum_csv(p) for p in spec.inputs]
    fig = build_spectrum_figure(datasets, colors=spec.colors, variant=spec.variant)
    return _save(fig, spec.output)


def plot_residuals(spec: PlotSpec) -> Path:
    runs = [read_residuals_csv(p).histories for p in spec.inputs]
    fig = build_residuals_figure(runs, colors=spec.colors, variant=spec.variant)
    return _save(fig, spec.output)
