"""Named material/frequency presets and custom-media files.

Wavenumbers are stored verbatim from the reference table (rounded values),
with the frequency normalized so that omega equals the exterior wavenumber
in vacuum-relative units.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from pathlib import Path

from .symbols import MediaPair, Medium

__all__ = [
    "SCENARIO_NAMES",
    "Scenario",
    "ScenarioError",
    "get_scenario",
    "load_custom_media",
]


class ScenarioError(ValueError):
    """Unknown preset name or malformed custom-media file."""


@dataclass(frozen=True)
class Scenario:
    name: str
    material: str
    regime: str
    media: MediaPair
    frequency: float | None  # Hz; None for custom media
    wavelength: float  # 2*pi / kappa_outer, table-rounded for presets


_MATERIALS = {"teflon": (2.1, 1.0), "ferrite": (2.5, 1.6)}
# regime -> (frequency Hz, wavelength m, kappa_outer)
_REGIMES = {"lf": (50e6, 6.0, 1.05), "hf": (300e6, 1.0, 6.29), "vhf": (10e9, 0.029, 210.0)}
_KAPPA_INNER = {
    ("teflon", "lf"): 1.52,
    ("teflon", "hf"): 9.11,
    ("teflon", "vhf"): 304.0,
    ("ferrite", "lf"): 2.09,
    ("ferrite", "hf"): 12.6,
    ("ferrite", "vhf"): 419.0,
}

SCENARIO_NAMES = tuple(f"{m}-{r}" for m in _MATERIALS for r in _REGIMES)


def _build_preset(material: str, regime: str) -> Scenario:
    eps_r, mu_r = _MATERIALS[material]
    freq, wavelength, kappa0 = _REGIMES[regime]
    omega = kappa0  # vacuum outside: omega * sqrt(1 * 1) = kappa0
    outer = Medium(epsilon=1.0, mu=1.0, omega=omega, kappa=kappa0)
    inner = Medium(epsilon=eps_r, mu=mu_r, omega=omega, kappa=_KAPPA_INNER[material, regime])
    return Scenario(
        name=f"{material}-{regime}",
        material=material,
        regime=regime.upper(),
        media=MediaPair(outer=outer, inner=inner),
        frequency=freq,
        wavelength=wavelength,
    )


def get_scenario(name: str) -> Scenario:
    key = name.strip().lower()
    try:
        material, regime = key.split("-", 1)
        if material not in _MATERIALS or regime not in _REGIMES:
            raise ValueError
    except ValueError:
        raise ScenarioError(
            f"unknown scenario {name!r}; valid names: {', '.join(SCENARIO_NAMES)}"
        ) from None
    return _build_preset(material, regime)


_CUSTOM_KEYS = ("eps0", "mu0", "eps1", "mu1", "kappa0", "kappa1")


def load_custom_media(path: str | Path) -> Scenario:
    """Read a key=value file with eps0, mu0, eps1, mu1, kappa0, kappa1."""
    path = Path(path)
    values: dict[str, float] = {}
    for lineno, raw in enumerate(path.read_text().splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        key, sep, val = line.partition("=")
        key = key.strip().lower()
        if not sep or key not in _CUSTOM_KEYS:
            raise ScenarioError(f"{path}:{lineno}: expected one of {_CUSTOM_KEYS}, got {raw!r}")
        try:
            values[key] = float(val)
        except ValueError:
            raise ScenarioError(f"{path}:{lineno}: bad numeric value {val!r}") from None
    missing = [k for k in _CUSTOM_KEYS if k not in values]
    if missing:
        raise ScenarioError(f"{path}: missing keys {missing}")
    omega = values["kappa0"] / math.sqrt(values["mu0"] * values["eps0"])
    outer = Medium(values["eps0"], values["mu0"], omega, values["kappa0"])
    inner = Medium(values["eps1"], values["mu1"], omega, values["kappa1"])
    return Scenario(
        name=path.stem,
        material="custom",
        regime="CUSTOM",
        media=MediaPair(outer=outer, inner=inner),
        frequency=None,
        wavelength=2.0 * math.pi / values["kappa0"],
    )
