"""Riccati-Bessel functions and overflow-safe products.

Computes jhat_n(z) = sqrt(pi z/2) J_{n+1/2}(z) and
hhat_n(z) = sqrt(pi z/2) H^(1)_{n+1/2}(z) together with their derivatives,
for real positive arguments or purely imaginary arguments with positive
imaginary part.  Values are carried internally as (mantissa, base-2
exponent) pairs so that the products 2i jhat_n hhat_n,
-2i jhat'_n hhat'_n and i (jhat_n hhat'_n + jhat'_n hhat_n) stay
accurate far beyond the range where jhat underflows and hhat overflows
(n up to a few thousand).
"""

from __future__ import annotations

import math
import threading
from dataclasses import dataclass, field

import numpy as np

__all__ = [
    "AccuracyError",
    "DomainError",
    "RiccatiTable",
    "ScaledProducts",
    "riccati_table",
    "scaled_products",
]

_LOG2 = math.log(2.0)


class DomainError(ValueError):
    """Argument outside the supported domain (real > 0 or imaginary > 0)."""


class AccuracyError(ArithmeticError):
    """The recurrences lost all precision (cross-product defect > 1e-6)."""


def _normalize(m: complex, e: int) -> tuple[complex, int]:
    """Rescale so that |mantissa| is in [1, 2); exponent absorbs the rest."""
    a = abs(m)
    if a == 0.0 or not math.isfinite(a):
        return m, e
    k = int(math.floor(math.log2(a)))
    return m * 2.0 ** (-k), e + k


@dataclass(frozen=True)
class ScaledProducts:
    """The three scalar products entering the per-mode operator symbols.

    p_jh       = 2i jhat_n hhat_n
    p_jh_prime = -2i jhat'_n hhat'_n
    p_mixed    = i (jhat_n hhat'_n + jhat'_n hhat_n)

    All three are O(1)-to-O(n) even when the individual factors are not
    representable in double precision.
    """

    n: int
    p_jh: complex
    p_jh_prime: complex
    p_mixed: complex


@dataclass(frozen=True)
class RiccatiTable:
    """Riccati-Bessel values for n = 0..n_max at one argument.

    The plain arrays j, j_prime, h, h_prime hold materialized complex
    values; entries overflow to inf / underflow to 0 for extreme n.  The
    scaled products remain exact through `products`.
    """

    n_max: int
    argument: complex
    j: np.ndarray
    j_prime: np.ndarray
    h: np.ndarray
    h_prime: np.ndarray
    # mantissa/exponent internals, kept for overflow-safe products
    _scaled: tuple = field(repr=False)

    def products(self, n: int) -> ScaledProducts:
        """Overflow-safe products at mode n (exponents combined first)."""
        if not 0 <= n <= self.n_max:
            raise ValueError(f"mode {n} outside table range 0..{self.n_max}")
        (jm, je), (jpm, jpe), (hm, he), (hpm, hpe) = self._scaled
        p_jh = 2j * jm[n] * hm[n] * 2.0 ** float(je[n] + he[n])
        p_jhp = -2j * jpm[n] * hpm[n] * 2.0 ** float(jpe[n] + hpe[n])
        p_mix = 1j * (
            jm[n] * hpm[n] * 2.0 ** float(je[n] + hpe[n])
            + jpm[n] * hm[n] * 2.0 ** float(jpe[n] + he[n])
        )
        return ScaledProducts(n=n, p_jh=complex(p_jh), p_jh_prime=complex(p_jhp), p_mixed=complex(p_mix))

    def product_arrays(self) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
        """(p_jh, p_jh_prime, p_mixed) for all n at once."""
        (jm, je), (jpm, jpe), (hm, he), (hpm, hpe) = self._scaled
        p_jh = 2j * jm * hm * np.exp2((je + he).astype(float))
        p_jhp = -2j * jpm * hpm * np.exp2((jpe + hpe).astype(float))
        p_mix = 1j * (
            jm * hpm * np.exp2((je + hpe).astype(float))
            + jpm * hm * np.exp2((jpe + he).astype(float))
        )
        return p_jh, p_jhp, p_mix

    def wronskian_defect(self) -> float:
        """max_n |jhat_n hhat'_n - jhat'_n hhat_n - i|, computed scale-free."""
        (jm, je), (jpm, jpe), (hm, he), (hpm, hpe) = self._scaled
        w = jm * hpm * np.exp2((je + hpe).astype(float)) - jpm * hm * np.exp2(
            (jpe + he).astype(float)
        )
        return float(np.abs(w - 1j).max())


def _check_argument(z: complex) -> complex:
    z = complex(z)
    if z == 0:
        raise DomainError("argument must be nonzero")
    if z.imag == 0.0 and z.real > 0.0:
        return z
    if z.real == 0.0 and z.imag > 0.0:
        return z
    raise DomainError(
        f"argument {z} unsupported: need real positive or purely imaginary "
        "with positive imaginary part"
    )


def riccati_table(n_max: int, z: complex) -> RiccatiTable:
    """Build the Riccati-Bessel table for n = 0..n_max at argument z.

    hhat is generated by upward recurrence (dominant solution), jhat by
    downward recurrence from a starting order safely above both n_max and
    the turning point |z|; forward recurrence for jhat is unstable once
    n >> |z|.  The jhat sequence is normalized through the cross-product
    jhat_0 hhat'_0 - jhat'_0 hhat_0 = i, which has no zeros to collide
    with (unlike sin z).
    """
    if n_max < 0:
        raise DomainError("n_max must be >= 0")
    z = _check_argument(z)

    # e^{iz} in mantissa/exponent form; for z = i s the magnitude e^{-s}
    # may be far below the double range.
    phase = complex(math.cos(z.real), math.sin(z.real))
    ex = -z.imag / _LOG2
    k = int(math.floor(ex))
    em, ee = _normalize(phase * 2.0 ** (ex - k), k)

    # ---- hhat: upward from hhat_{-1} = e^{iz}, hhat_0 = -i e^{iz} ----
    hm = np.zeros(n_max + 1, complex)
    he = np.zeros(n_max + 1, np.int64)
    hpm = np.zeros(n_max + 1, complex)
    hpe = np.zeros(n_max + 1, np.int64)
    prev_m, prev_e = em, ee
    cur_m, cur_e = _normalize(-1j * em, ee)
    hm[0], he[0] = cur_m, cur_e
    hpm[0], hpe[0] = prev_m, prev_e  # hhat'_0 = hhat_{-1}
    for n in range(1, n_max + 1):
        t1 = ((2 * n - 1) / z) * cur_m
        t2 = prev_m * 2.0 ** (prev_e - cur_e)
        new_m, new_e = _normalize(t1 - t2, cur_e)
        d = cur_m * 2.0 ** (cur_e - new_e) - (n / z) * new_m
        hpm[n], hpe[n] = _normalize(d, new_e)
        hm[n], he[n] = new_m, new_e
        prev_m, prev_e = cur_m * 2.0 ** (cur_e - new_e), new_e
        cur_m, cur_e = new_m, new_e

    # ---- jhat: downward trial solution, then cross-product normalization ----
    start = max(n_max, int(math.ceil(1.15 * abs(z))) + 40) + 40
    tm = np.zeros(start + 2, complex)
    te = np.zeros(start + 2, np.int64)
    tm[start] = 1.0
    for n in range(start, 0, -1):
        t1 = ((2 * n + 1) / z) * tm[n]
        t2 = tm[n + 1] * 2.0 ** (te[n + 1] - te[n])
        tm[n - 1], te[n - 1] = _normalize(t1 - t2, te[n])

    jm = tm[: n_max + 1].copy()
    je = te[: n_max + 1].copy()
    jpm = np.zeros(n_max + 1, complex)
    jpe = np.zeros(n_max + 1, np.int64)
    # jhat'_0 = jhat_{-1}, synthesized from the recurrence at n = 0
    jpm[0], jpe[0] = _normalize((1 / z) * tm[0] - tm[1] * 2.0 ** (te[1] - te[0]), te[0])
    for n in range(1, n_max + 1):
        d = tm[n - 1] * 2.0 ** (te[n - 1] - te[n]) - (n / z) * tm[n]
        jpm[n], jpe[n] = _normalize(d, te[n])

    e1 = int(je[0] + hpe[0])
    e2 = int(jpe[0] + he[0])
    etop = max(e1, e2)
    wmant = jm[0] * hpm[0] * 2.0 ** (e1 - etop) - jpm[0] * hm[0] * 2.0 ** (e2 - etop)
    if wmant == 0 or not np.isfinite(wmant):
        raise AccuracyError(f"normalization cross-product degenerate at z={z}")
    sm, se = _normalize(1j / wmant, -etop)
    for n in range(n_max + 1):
        jm[n], je[n] = _normalize(jm[n] * sm, int(je[n]) + se)
        jpm[n], jpe[n] = _normalize(jpm[n] * sm, int(jpe[n]) + se)

    scaled = ((jm, je), (jpm, jpe), (hm, he), (hpm, hpe))
    table = RiccatiTable(
        n_max=n_max,
        argument=z,
        j=_materialize(jm, je),
        j_prime=_materialize(jpm, jpe),
        h=_materialize(hm, he),
        h_prime=_materialize(hpm, hpe),
        _scaled=scaled,
    )
    defect = table.wronskian_defect()
    if not defect < 1e-6:
        raise AccuracyError(f"cross-product defect {defect:.3e} at z={z}")
    return table


def _materialize(m: np.ndarray, e: np.ndarray) -> np.ndarray:
    # entries beyond the double range come out non-finite (overflow) or 0
    with np.errstate(over="ignore", under="ignore", invalid="ignore"):
        out = m * np.exp2(e.astype(float))
    out.setflags(write=False)
    return out


# Tables are pure functions of (n_max, z); cache them keyed by argument and
# grow n_max on demand so per-mode callers stay O(1) amortized.
_cache: dict[complex, RiccatiTable] = {}
_cache_lock = threading.Lock()


def cached_table(z: complex, n_max: int) -> RiccatiTable:
    z = complex(z)
    tab = _cache.get(z)
    if tab is None or tab.n_max < n_max:
        want = max(n_max, 64, 0 if tab is None else 2 * tab.n_max)
        tab = riccati_table(want, z)
        with _cache_lock:
            _cache[z] = tab
    return tab


def scaled_products(n: int, t: float) -> ScaledProducts:
    """Overflow-safe symbol products at mode n for real argument t > 0."""
    if n < 0:
        raise DomainError("mode index must be >= 0")
    t = float(t)
    if not t > 0:
        raise DomainError("argument must be a positive real")
    return cached_table(t, n).products(n)
