"""Readers for the documented mtf-spectra CSV schemas.

Spectrum files: header `n,eig_index,re,im,dist_to_accum`, float columns at
17 significant digits, and a trailing `# {...}` JSON line carrying the
accumulation points and scan metadata.  Residual files: header
`variant,iteration,relative_residual`.  Inputs are never modified.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

SPECTRUM_HEADER = "n,eig_index,re,im,dist_to_accum"
RESIDUAL_HEADER = "variant,iteration,relative_residual"


class SchemaError(ValueError):
    """Input file does not match the documented CSV schema."""


@dataclass(frozen=True)
class SpectrumData:
    path: Path
    mode: np.ndarray
    eig_index: np.ndarray
    values: np.ndarray  # complex eigenvalues
    dist_to_accum: np.ndarray
    summary: dict

    @property
    def variant(self) -> str:
        return self.summary.get("variant", "mtf")

    @property
    def accumulation_points(self) -> np.ndarray:
        pts = self.summary["accumulation_points"]
        return np.array([complex(re, im) for re, im in pts])


@dataclass(frozen=True)
class ResidualData:
    path: Path
    histories: dict[str, np.ndarray]  # variant -> relative residuals


def _read_lines(path: str | Path) -> list[str]:
    lines = Path(path).read_text().splitlines()
    if not lines:
        raise SchemaError(f"{path}: empty file")
    return lines


def read_spectrum_csv(path: str | Path) -> SpectrumData:
    lines = _read_lines(path)
    if lines[0] != SPECTRUM_HEADER:
        raise SchemaError(f"{path}: expected header {SPECTRUM_HEADER!r}, got {lines[0]!r}")
    summary = None
    rows = []
    for line in lines[1:]:
        if line.startswith("# "):
            try:
                summary = json.loads(line[2:])
            except json.JSONDecodeError as exc:
                raise SchemaError(f"{path}: bad trailing summary: {exc}") from None
            continue
        parts = line.split(",")
        if len(parts) != 5:
            raise SchemaError(f"{path}: expected 5 columns, got {line!r}")
        rows.append(parts)
    if not rows:
        raise SchemaError(f"{path}: no data rows")
    if summary is None or "accumulation_points" not in summary:
        raise SchemaError(f"{path}: missing trailing accumulation summary")
    arr = np.array(rows)
    return SpectrumData(
        path=Path(path),
        mode=arr[:, 0].astype(int),
        eig_index=arr[:, 1].astype(int),
        values=arr[:, 2].astype(float) + 1j * arr[:, 3].astype(float),
        dist_to_accum=arr[:, 4].astype(float),
        summary=summary,
    )


def read_residuals_csv(path: str | Path) -> ResidualData:
    lines = _read_lines(path)
    if lines[0] != RESIDUAL_HEADER:
        raise SchemaError(f"{path}: expected header {RESIDUAL_HEADER!r}, got {lines[0]!r}")
    series: dict[str, list[tuple[int, float]]] = {}
    for line in lines[1:]:
        if not line:
            continue
        parts = line.split(",")
        if len(parts) != 3:
            raise SchemaError(f"{path}: expected 3 columns, got {line!r}")
        variant, it, res = parts
        try:
            series.setdefault(variant, []).append((int(it), float(res)))
        except ValueError:
            raise SchemaError(f"{path}: bad numeric row {line!r}") from None
    if not series:
        raise SchemaError(f"{path}: no data rows")
    histories = {}
    for variant, pairs in series.items():
        pairs.sort()
        if [i for i, _ in pairs] != list(range(len(pairs))):
            raise SchemaError(f"{path}: non-contiguous iterations for {variant!r}")
        histories[variant] = np.array([r for _, r in pairs])
    return ResidualData(path=Path(path), histories=histories)
