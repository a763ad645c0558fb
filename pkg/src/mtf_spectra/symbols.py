"""Per-mode symbol matrices of the multi-trace boundary operators.

On the unit sphere every boundary operator of the transmission problem
acts mode-by-mode on tangential vector spherical harmonics; this module
builds the 2x2 / 4x4 / 8x8 matrices of that action, their n -> infinity
limits, and the closed-form accumulation points of the spectra.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import linalg
from .riccati import cached_table

__all__ = [
    "AccumulationSet",
    "AsymptoticSymbols",
    "MediaPair",
    "Medium",
    "a_precond_symbol",
    "a_symbol",
    "accumulation_points",
    "asymptotic_symbols",
    "b_symbol",
    "k_symbol",
    "mode_scaling",
    "mtf_inverse_symbol",
    "mtf_symbol",
    "pi_precond_symbol",
    "stf_symbol",
    "swap_matrix",
    "v_symbol",
]

ACCUMULATION_VARIANTS = ("mtf", "mtf2", "bmtf", "ktilde", "stilde")


@dataclass(frozen=True)
class Medium:
    """Homogeneous electromagnetic medium in vacuum-relative units.

    kappa is stored verbatim; use `from_physical` to derive it as
    omega * sqrt(mu * epsilon).
    """

    epsilon: float
    mu: float
    omega: float
    kappa: float

    def __post_init__(self):
        for name in ("epsilon", "mu", "omega", "kappa"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")

    @classmethod
    def from_physical(cls, epsilon: float, mu: float, omega: float) -> "Medium":
        return cls(epsilon, mu, omega, omega * math.sqrt(mu * epsilon))

    @property
    def impedance_ratio(self) -> float:
        """sqrt(mu / epsilon), the trace scaling between field components."""
        return math.sqrt(self.mu / self.epsilon)


@dataclass(frozen=True)
class MediaPair:
    """Exterior (side 0) and interior (side 1) media sharing one frequency."""

    outer: Medium
    inner: Medium

    def __post_init__(self):
        if not math.isclose(self.outer.omega, self.inner.omega, rel_tol=1e-12):
            raise ValueError("outer and inner media must share the same omega")

    @property
    def omega(self) -> float:
        return self.outer.omega


def v_symbol(n: int, kappa: float, side: int) -> np.ndarray:
    """2x2 single-layer symbol: antidiagonal with the jhat*hhat products."""
    p = cached_table(kappa, n).products(n)
    m = np.array([[0.0, p.p_jh], [p.p_jh_prime, 0.0]], complex)
    return -m if side else m


def k_symbol(n: int, kappa: float, side: int) -> np.ndarray:
    """2x2 double-layer symbol: p_mixed * diag(-1, +1)."""
    p = cached_table(kappa, n).products(n)
    m = np.array([[-p.p_mixed, 0.0], [0.0, p.p_mixed]], complex)
    return -m if side else m


def a_symbol(n: int, medium: Medium, side: int) -> np.ndarray:
    """4x4 scaled trace-operator symbol; squares to the identity."""
    if side not in (0, 1):
        raise ValueError("side must be 0 or 1")
    K = k_symbol(n, medium.kappa, 0)
    V = v_symbol(n, medium.kappa, 0)
    r = medium.impedance_ratio
    A = np.zeros((4, 4), complex)
    A[:2, :2] = K
    A[2:, 2:] = K
    A[:2, 2:] = r * V
    A[2:, :2] = V / r
    return -A if side else A


def swap_matrix(dim: int = 8) -> np.ndarray:
    """Trace-swap coupling: exchanges the two dim/2 halves."""
    half = dim // 2
    P = np.zeros((dim, dim))
    P[:half, half:] = np.eye(half)
    P[half:, :half] = np.eye(half)
    return P


def _block8(tl, tr, bl, br) -> np.ndarray:
    M = np.zeros((8, 8), complex)
    M[:4, :4] = tl
    M[:4, 4:] = tr
    M[4:, :4] = bl
    M[4:, 4:] = br
    return M


def mtf_symbol(n: int, media: MediaPair) -> np.ndarray:
    """8x8 multi-trace symbol: Calderon blocks coupled by identity swaps."""
    I4 = np.eye(4)
    return _block8(a_symbol(n, media.outer, 0), I4, I4, a_symbol(n, media.inner, 1))


def stf_symbol(n: int, media: MediaPair) -> np.ndarray:
    """4x4 single-trace symbol: sum of the two side-0 Calderon symbols."""
    return a_symbol(n, media.outer, 0) + a_symbol(n, media.inner, 0)


def b_symbol(n: int, media: MediaPair) -> np.ndarray:
    """8x8 approximate-inverse preconditioner built from the single-trace sum."""
    P = a_symbol(n, media.outer, 0)
    Q = a_symbol(n, media.inner, 0)
    S = P + Q
    return _block8(S, P @ S, Q @ S, -S)


def mtf_inverse_symbol(n: int, media: MediaPair) -> np.ndarray:
    """Closed-form inverse of the multi-trace symbol.

    With P, Q the side-0 symbols of the two media and S = P + Q, the inverse
    is [[S^-1, P S^-1], [Q S^-1, -S^-1]]; the sign of the lower-left block
    follows from P S = S Q (not the opposite sign, which fails the product
    identity).
    """
    P = a_symbol(n, media.outer, 0)
    Q = a_symbol(n, media.inner, 0)
    Si = linalg.inverse(P + Q)
    return _block8(Si, P @ Si, Q @ Si, -Si)


def a_precond_symbol(n: int, media: MediaPair) -> np.ndarray:
    """Block-diagonal Calderon preconditioning: diag(A0, A1) times the symbol.

    Equals Id + A Pi exactly since each Calderon block squares to Id.
    """
    Ablk = _block8(a_symbol(n, media.outer, 0), 0, 0, a_symbol(n, media.inner, 1))
    return Ablk @ mtf_symbol(n, media)


def pi_precond_symbol(n: int, media: MediaPair) -> np.ndarray:
    """Swap-only preconditioning: Pi times the multi-trace symbol."""
    return swap_matrix(8) @ mtf_symbol(n, media)


def mode_scaling(n: int, copies: int = 2) -> np.ndarray:
    """Diagonal of the per-mode scaling T_n = diag(1, 1/n), replicated."""
    if n < 1:
        raise ValueError("mode scaling needs n >= 1")
    return np.array([1.0, 1.0 / n] * copies)


def _a_tilde(medium: Medium) -> np.ndarray:
    """n -> infinity limit of the side-0 Calderon symbol (T_n-scaled frame)."""
    om, oe = medium.omega * medium.mu, medium.omega * medium.epsilon
    A = np.zeros((4, 4))
    A[0, 3] = om
    A[1, 2] = 1.0 / oe
    A[2, 1] = oe
    A[3, 0] = 1.0 / om
    return A


@dataclass(frozen=True)
class AsymptoticSymbols:
    """Constant limit matrices of the per-mode symbols."""

    a_tilde_0: np.ndarray  # outer, side 0
    a_tilde_1: np.ndarray  # inner, side 1 (negated side-0 limit)
    mtf_inf: np.ndarray
    k_tilde: np.ndarray
    s_tilde: np.ndarray


def asymptotic_symbols(media: MediaPair) -> AsymptoticSymbols:
    A0 = _a_tilde(media.outer)
    A1s0 = _a_tilde(media.inner)
    I4 = np.eye(4)
    mtf_inf = np.real(_block8(A0, I4, I4, -A1s0))
    return AsymptoticSymbols(
        a_tilde_0=A0,
        a_tilde_1=-A1s0,
        mtf_inf=mtf_inf,
        k_tilde=A0 - A1s0,
        s_tilde=A0 + A1s0,
    )


@dataclass(frozen=True)
class AccumulationSet:
    """Closed-form limit points of the per-mode eigenvalues."""

    variant: str
    points: np.ndarray
    lambdas: tuple[float, float]  # (Lambda_mu, Lambda_eps)
    upsilons: tuple[float, float]  # (Upsilon_mu, Upsilon_eps)

    def distance(self, values: np.ndarray) -> np.ndarray:
        """Distance from each value to the nearest accumulation point."""
        values = np.atleast_1d(np.asarray(values, complex))
        return np.abs(values[:, None] - self.points[None, :]).min(axis=1)


def _contrasts(media: MediaPair) -> tuple[float, float, float, float]:
    rm = math.sqrt(media.inner.mu / media.outer.mu)
    re = math.sqrt(media.inner.epsilon / media.outer.epsilon)
    return (abs(rm - 1 / rm), abs(re - 1 / re), rm + 1 / rm, re + 1 / re)


def _dedup(points, tol: float = 1e-12) -> np.ndarray:
    out: list[complex] = []
    for p in points:
        if all(abs(p - q) > tol for q in out):
            out.append(p)
    out.sort(key=lambda z: (z.real, z.imag))
    return np.array(out, complex)


def accumulation_points(media: MediaPair, variant: str = "mtf") -> AccumulationSet:
    """Accumulation points for one operator variant.

    mtf:    +/- sqrt(2 +/- i Lambda)   (principal square root)
    mtf2:   2 +/- i Lambda
    bmtf:   Upsilon^2
    ktilde: +/- i Lambda
    stilde: +/- Upsilon
    with Lambda/Upsilon the mu- and epsilon-contrast constants.
    """
    if variant not in ACCUMULATION_VARIANTS:
        raise ValueError(
            f"unknown variant {variant!r}; expected one of {ACCUMULATION_VARIANTS}"
        )
    lm, le, um, ue = _contrasts(media)
    if variant == "mtf":
        pts = [
            s * cmath.sqrt(2 + p * 1j * lam)
            for lam in (lm, le)
            for s in (1, -1)
            for p in (1, -1)
        ]
    elif variant == "mtf2":
        pts = [2 + p * 1j * lam for lam in (lm, le) for p in (1, -1)]
    elif variant == "bmtf":
        pts = [complex(um**2), complex(ue**2)]
    elif variant == "ktilde":
        pts = [p * 1j * lam for lam in (lm, le) for p in (1, -1)]
    else:  # stilde
        pts = [complex(s * u) for u in (um, ue) for s in (1, -1)]
    return AccumulationSet(
        variant=variant, points=_dedup(pts), lambdas=(lm, le), upsilons=(um, ue)
    )
