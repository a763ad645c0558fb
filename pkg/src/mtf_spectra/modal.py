"""Mode-truncated block-diagonal operators, pairing forms and scans.

Assembles the per-mode symbol blocks over n = n_min..n_max for each
operator variant, the duality pairing and norm-weight matrices of the
multi-trace space, synthetic right-hand sides, eigenvalue scans against
the closed-form accumulation points, and coercivity quotients.
"""

from __future__ import annotations

import os
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from . import linalg, symbols
from .riccati import cached_table
from .symbols import AccumulationSet, MediaPair

__all__ = [
    "MODAL_VARIANTS",
    "ModalGrid",
    "ModalOperator",
    "PairingMatrices",
    "SpectrumReport",
    "build_operator",
    "coercivity_quotient",
    "d_tilde_weights",
    "default_n_max",
    "exact_dn",
    "pairing_matrices",
    "spectrum_scan",
    "synthetic_rhs",
    "worker_count",
]

MODAL_VARIANTS = ("mtf", "mtf2", "bmtf", "stf2", "amtf", "pi")
RHS_MODELS = ("mie-like", "flat", "random")


def worker_count() -> int:
    """Worker cap from MTF_SPECTRA_THREADS (default 1 = serial)."""
    raw = os.environ.get("MTF_SPECTRA_THREADS", "")
    try:
        return max(1, int(raw))
    except ValueError:
        return 1


def _map_modes(fn, modes):
    """Apply fn over modes, possibly threaded; results in mode order."""
    nw = worker_count()
    if nw <= 1:
        return [fn(n) for n in modes]
    with ThreadPoolExecutor(max_workers=nw) as pool:
        return list(pool.map(fn, modes))


# ---------------------------------------------------------------------------
# pairing and weight matrices
# ---------------------------------------------------------------------------

def _pairing_block() -> np.ndarray:
    # <u, v> on one trace tuple in the tangential-harmonic coordinates
    return np.array(
        [
            [0.0, 0.0, 0.0, 1.0],
            [0.0, 0.0, -1.0, 0.0],
            [0.0, 1.0, 0.0, 0.0],
            [-1.0, 0.0, 0.0, 0.0],
        ]
    )


@dataclass(frozen=True)
class PairingMatrices:
    """Duality pairing (M, block-signed MM) and the sign matrix Theta."""

    M: np.ndarray
    MM: np.ndarray
    Theta: np.ndarray


def pairing_matrices() -> PairingMatrices:
    M = _pairing_block()
    MM = np.zeros((8, 8))
    MM[:4, :4] = M
    MM[4:, 4:] = -M
    Theta = np.diag([1.0, -1.0] * 4)
    for arr in (M, MM, Theta):
        arr.setflags(write=False)
    return PairingMatrices(M=M, MM=MM, Theta=Theta)


def d_tilde_weights(n: int, copies: int = 4) -> np.ndarray:
    """Positive norm weights diag(1+n, 1/(1+n)) replicated per trace tuple."""
    if n < 0:
        raise ValueError("mode index must be >= 0")
    return np.array([1.0 + n, 1.0 / (1.0 + n)] * copies)


def exact_dn(n: int) -> tuple[complex, complex]:
    """Exact norm-form diagonal (jhat'_n hhat'_n, jhat_n hhat_n) at z = i.

    Raw complex values; the comparison against the rational weights is made
    on moduli (no phase convention is imposed).
    """
    p = cached_table(1j, n).products(n)
    return (p.p_jh_prime / (-2j), p.p_jh / 2j)


# ---------------------------------------------------------------------------
# modal grid and block-diagonal operator
# ---------------------------------------------------------------------------

@dataclass(frozen=True)
class ModalGrid:
    """Mode range n_min..n_max; multiplicity replicates each block 2n+1 times.

    Modes start at 1 because the n = 0 tangential harmonic vanishes even
    though the symbol matrices themselves are well defined there.
    """

    n_max: int
    n_min: int = 1
    with_multiplicity: bool = False

    def __post_init__(self):
        if not 1 <= self.n_min <= self.n_max:
            raise ValueError("need 1 <= n_min <= n_max")

    @property
    def modes(self) -> range:
        return range(self.n_min, self.n_max + 1)

    def repeats(self, n: int) -> int:
        return 2 * n + 1 if self.with_multiplicity else 1

    def dimension(self, block_dim: int) -> int:
        return block_dim * sum(self.repeats(n) for n in self.modes)


def default_n_max(media: MediaPair) -> int:
    """Truncation rule ceil(1.5 kappa_inner) + 20 (resolution grows with k)."""
    return int(np.ceil(1.5 * media.inner.kappa)) + 20


@dataclass(frozen=True)
class ModalOperator:
    """Immutable block-diagonal operator over a modal grid."""

    grid: ModalGrid
    variant: str
    media: MediaPair
    blocks: tuple[np.ndarray, ...]
    scaling: float | None = None
    weighted: bool = False
    block_dim: int = field(init=False, default=0)
    dim: int = field(init=False, default=0)

    def __post_init__(self):
        if len(self.blocks) != len(self.grid.modes):
            raise ValueError("block count must match the grid")
        d = self.blocks[0].shape[0]
        for b in self.blocks:
            if b.shape != (d, d):
                raise ValueError("all blocks must share one square shape")
            b.setflags(write=False)
        object.__setattr__(self, "block_dim", d)
        object.__setattr__(self, "dim", self.grid.dimension(d))

    def apply(self, x: np.ndarray) -> np.ndarray:
        """Exact block-diagonal matrix-vector product."""
        x = np.asarray(x)
        if x.shape != (self.dim,):
            raise ValueError(f"vector length {x.shape} != operator dim {self.dim}")
        out = np.empty(self.dim, complex)
        d = self.block_dim
        pos = 0
        for n, B in zip(self.grid.modes, self.blocks):
            w = self.grid.repeats(n) * d
            seg = x[pos : pos + w].reshape(-1, d)
            out[pos : pos + w] = (seg @ B.T).ravel()
            pos += w
        return out

    def block_for_mode(self, n: int) -> np.ndarray:
        return self.blocks[n - self.grid.n_min]


def _variant_block(variant: str, n: int, media: MediaPair) -> np.ndarray:
    if variant == "mtf":
        return symbols.mtf_symbol(n, media)
    if variant == "mtf2":
        M = symbols.mtf_symbol(n, media)
        return M @ M
    if variant == "bmtf":
        return symbols.b_symbol(n, media) @ symbols.mtf_symbol(n, media)
    if variant == "stf2":
        S = symbols.stf_symbol(n, media)
        return S @ S
    if variant == "amtf":
        return symbols.a_precond_symbol(n, media)
    if variant == "pi":
        return symbols.pi_precond_symbol(n, media)
    raise ValueError(f"unknown variant {variant!r}; expected one of {MODAL_VARIANTS}")


def _scaling_constant(variant: str, media: MediaPair) -> float:
    if variant == "mtf":
        return 1.0 / np.sqrt(2.0)
    if variant == "mtf2":
        return 0.5
    if variant in ("bmtf", "stf2"):
        um, ue = symbols.accumulation_points(media, "bmtf").upsilons
        return 1.0 / min(um, ue) ** 2
    return 1.0


def _weight_conjugate(B: np.ndarray, n: int) -> np.ndarray:
    # similarity W^{1/2} B W^{-1/2}: spectra unchanged, residual norms
    # become meaningful in the weighted trace norm
    w = np.sqrt(d_tilde_weights(n, copies=B.shape[0] // 2))
    return (w[:, None] * B) / w[None, :]


def build_operator(
    variant: str,
    media: MediaPair,
    grid: ModalGrid,
    scaled: bool = False,
    weighted: bool = False,
) -> ModalOperator:
    """Assemble the block-diagonal modal operator for one variant.

    scaled multiplies every block by the variant's normalization constant
    (1/sqrt2, 1/2, 1/Upsilon_min^2); weighted conjugates each block by the
    square root of the norm weights before use in iterative solves.
    """
    if variant not in MODAL_VARIANTS:
        raise ValueError(f"unknown variant {variant!r}; expected one of {MODAL_VARIANTS}")
    const = _scaling_constant(variant, media) if scaled else None

    def make(n: int) -> np.ndarray:
        B = _variant_block(variant, n, media)
        if weighted:
            B = _weight_conjugate(B, n)
        if const is not None:
            B = const * B
        return B

    blocks = tuple(_map_modes(make, grid.modes))
    return ModalOperator(
        grid=grid, variant=variant, media=media, blocks=blocks,
        scaling=const, weighted=weighted,
    )


# ---------------------------------------------------------------------------
# spectrum scans
# ---------------------------------------------------------------------------

def _accumulation_for_variant(media: MediaPair, variant: str) -> AccumulationSet:
    if variant in ("mtf", "mtf2", "bmtf"):
        return symbols.accumulation_points(media, variant)
    if variant == "stf2":
        acc = symbols.accumulation_points(media, "bmtf")
        return AccumulationSet("stf2", acc.points, acc.lambdas, acc.upsilons)
    # no closed form for the amtf / pi variants: use the constant limit
    # matrices numerically
    asym = symbols.asymptotic_symbols(media)
    mtf_inf = asym.mtf_inf
    if variant == "amtf":
        Ablk = np.zeros((8, 8))
        Ablk[:4, :4] = asym.a_tilde_0
        Ablk[4:, 4:] = asym.a_tilde_1
        limit = Ablk @ mtf_inf
    elif variant == "pi":
        limit = symbols.swap_matrix(8) @ mtf_inf
    else:
        raise ValueError(f"unknown variant {variant!r}")
    base = symbols.accumulation_points(media, "mtf")
    pts = linalg.eigenvalues(limit)
    keep: list[complex] = []
    for p in pts:
        if all(abs(p - q) > 1e-9 for q in keep):
            keep.append(complex(p))
    return AccumulationSet(variant, np.array(keep), base.lambdas, base.upsilons)


@dataclass(frozen=True)
class SpectrumReport:
    """Per-mode eigenvalues with distances to the accumulation set."""

    variant: str
    media: MediaPair
    modes: tuple[int, ...]
    eigenvalues: tuple[np.ndarray, ...]
    accumulation: AccumulationSet
    hausdorff: np.ndarray  # per-mode distance to the accumulation set
    min_abs_eigenvalue: float

    def eigenvalue_array(self) -> np.ndarray:
        return np.concatenate(self.eigenvalues)


def spectrum_scan(
    media: MediaPair, variant: str, n_max: int, n_min: int = 1
) -> SpectrumReport:
    if n_max < 1:
        raise ValueError("n_max must be >= 1")
    grid = ModalGrid(n_max=n_max, n_min=n_min)
    acc = _accumulation_for_variant(media, variant)

    def eig(n: int) -> np.ndarray:
        return linalg.eigenvalues(_variant_block(variant, n, media))

    evs = _map_modes(eig, grid.modes)
    haus = np.array([linalg.hausdorff_distance(ev, acc.points) for ev in evs])
    min_abs = float(min(np.abs(ev).min() for ev in evs))
    return SpectrumReport(
        variant=variant,
        media=media,
        modes=tuple(grid.modes),
        eigenvalues=tuple(evs),
        accumulation=acc,
        hausdorff=haus,
        min_abs_eigenvalue=min_abs,
    )


# ---------------------------------------------------------------------------
# coercivity quotient
# ---------------------------------------------------------------------------

def coercivity_quotient(n: int, media: MediaPair, use_asymptotic: bool) -> float:
    """Weighted Hermitian minimum of the paired multi-trace quadratic form.

    use_asymptotic replaces the exact symbol by the T_n-conjugated constant
    limit matrix; that form is provably positive for every n, while the
    exact one is only positive up to a compact perturbation and may dip at
    small n.
    """
    if n < 1:
        raise ValueError("mode index must be >= 1")
    pm = pairing_matrices()
    if use_asymptotic:
        t = symbols.mode_scaling(n, copies=4)
        mtf_inf = symbols.asymptotic_symbols(media).mtf_inf
        S = (mtf_inf * t[None, :]) / t[:, None]
    else:
        S = symbols.mtf_symbol(n, media)
    form = pm.MM @ S @ pm.Theta
    return linalg.weighted_hermitian_min_eig(form, d_tilde_weights(n, copies=4))


# ---------------------------------------------------------------------------
# synthetic right-hand sides
# ---------------------------------------------------------------------------

def synthetic_rhs(
    media: MediaPair, grid: ModalGrid, model: str = "mie-like", seed: int = 42
) -> np.ndarray:
    """Deterministic synthetic excitation data on the modal grid.

    mie-like mimics incident-wave trace data: per-mode magnitude
    |jhat_n(kappa_outer)| * (2n+1) with seeded uniform phases, which decays
    super-exponentially once n exceeds kappa_outer.  flat gives unit
    magnitudes, random a complex normal vector.
    """
    if model not in RHS_MODELS:
        raise ValueError(f"unknown rhs model {model!r}; expected one of {RHS_MODELS}")
    rng = np.random.default_rng(seed)
    blocks: list[np.ndarray] = []
    table = cached_table(media.outer.kappa, grid.n_max) if model == "mie-like" else None
    for n in grid.modes:
        for _ in range(grid.repeats(n)):
            if model == "random":
                blk = rng.standard_normal(8) + 1j * rng.standard_normal(8)
                blk /= np.sqrt(2.0)
            else:
                phases = np.exp(2j * np.pi * rng.random(8))
                mag = abs(table.j[n]) * (2 * n + 1) if model == "mie-like" else 1.0
                blk = mag * phases
            blocks.append(blk)
    out = np.concatenate(blocks)
    if not np.linalg.norm(out) > 0:
        raise ValueError("synthetic data degenerated to zero")
    return out
