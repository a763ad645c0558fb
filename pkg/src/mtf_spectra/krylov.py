"""Restarted GMRes and the preconditioner-comparison experiment.

Modified Gram-Schmidt Arnoldi with one conditional reorthogonalization
pass and Givens rotations for the Hessenberg least squares.  Everything
is deterministic; non-convergence is reported, never raised.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from . import modal
from .modal import ModalGrid, ModalOperator
from .scenarios import Scenario, get_scenario

__all__ = ["GmresReport", "gmres", "precond_compare"]

_REORTH_THRESHOLD = 1.0 / np.sqrt(2.0)


@dataclass(frozen=True)
class GmresReport:
    """Outcome of one restarted GMRes solve.

    residual_history holds relative residuals, one entry per inner
    iteration plus the initial one; within a restart cycle it is
    non-increasing.  restart_defects and ortho_defects are diagnostics:
    mismatch between the recurrence residual and the recomputed one at
    each restart boundary, and the Gram defect of the Krylov basis per
    cycle.
    """

    iterations: int
    converged: bool
    residual_history: tuple[float, ...]
    restart: int
    tolerance: float
    solution: np.ndarray = field(repr=False)
    restart_defects: tuple[float, ...] = ()
    ortho_defects: tuple[float, ...] = ()


def _matvec_of(op):
    if isinstance(op, ModalOperator):
        return op.apply, op.dim
    A = np.asarray(op)
    if A.ndim != 2 or A.shape[0] != A.shape[1]:
        raise ValueError("operator must be a ModalOperator or square matrix")
    return (lambda x: A @ x), A.shape[0]


def gmres(
    op,
    rhs: np.ndarray,
    restart: int = 20,
    tol: float = 1e-8,
    max_iter: int = 2000,
    x0: np.ndarray | None = None,
) -> GmresReport:
    """Solve op x = rhs with GMRes(restart) to relative tolerance tol."""
    matvec, dim = _matvec_of(op)
    b = np.asarray(rhs, complex)
    if b.shape != (dim,):
        raise ValueError(f"rhs length {b.shape} does not match operator dim {dim}")
    norm_b = float(np.linalg.norm(b))
    if norm_b == 0.0:
        raise ValueError("rhs must be nonzero")
    if restart < 1:
        raise ValueError("restart must be >= 1")

    x = np.zeros(dim, complex) if x0 is None else np.asarray(x0, complex).copy()
    r = b - matvec(x)
    beta = float(np.linalg.norm(r))
    history = [beta / norm_b]
    restart_defects: list[float] = []
    ortho_defects: list[float] = []
    iterations = 0
    converged = beta / norm_b <= tol

    while not converged and iterations < max_iter:
        V = np.zeros((dim, restart + 1), complex)
        H = np.zeros((restart + 1, restart), complex)
        cs = np.zeros(restart, complex)
        sn = np.zeros(restart, complex)
        g = np.zeros(restart + 1, complex)
        V[:, 0] = r / beta
        g[0] = beta
        k = 0
        for j in range(restart):
            w = matvec(V[:, j])
            norm_w0 = float(np.linalg.norm(w))
            for i in range(j + 1):
                H[i, j] = np.vdot(V[:, i], w)
                w -= H[i, j] * V[:, i]
            if float(np.linalg.norm(w)) < _REORTH_THRESHOLD * norm_w0:
                # second Gram-Schmidt pass restores orthogonality
                for i in range(j + 1):
                    c = np.vdot(V[:, i], w)
                    H[i, j] += c
                    w -= c * V[:, i]
            hb = float(np.linalg.norm(w))
            H[j + 1, j] = hb
            if hb > 0.0:
                V[:, j + 1] = w / hb

            for i in range(j):
                t = cs[i] * H[i, j] + sn[i] * H[i + 1, j]
                H[i + 1, j] = -np.conj(sn[i]) * H[i, j] + cs[i] * H[i + 1, j]
                H[i, j] = t
            denom = np.hypot(abs(H[j, j]), abs(H[j + 1, j]))
            if denom == 0.0:
                cs[j], sn[j] = 1.0, 0.0
            elif H[j, j] == 0.0:
                cs[j], sn[j] = 0.0, 1.0
            else:
                cs[j] = abs(H[j, j]) / denom
                sn[j] = (H[j, j] / abs(H[j, j])) * np.conj(H[j + 1, j]) / denom
            H[j, j] = cs[j] * H[j, j] + sn[j] * H[j + 1, j]
            H[j + 1, j] = 0.0
            g[j + 1] = -np.conj(sn[j]) * g[j]
            g[j] = cs[j] * g[j]

            iterations += 1
            k = j + 1
            history.append(abs(g[j + 1]) / norm_b)
            if history[-1] <= tol or iterations >= max_iter or hb == 0.0:
                break

        y = np.linalg.solve(H[:k, :k], g[:k])
        x = x + V[:, :k] @ y
        r = b - matvec(x)
        beta = float(np.linalg.norm(r))
        true_rel = beta / norm_b
        restart_defects.append(abs(true_rel - history[-1]))
        gram = V[:, : k + 1].conj().T @ V[:, : k + 1]
        ortho_defects.append(float(np.abs(gram - np.eye(k + 1)).max()))
        converged = true_rel <= tol

    # terminal entry reflects the recomputed residual so that
    # converged <=> history[-1] <= tol holds exactly
    if iterations > 0:
        history[-1] = beta / norm_b
    return GmresReport(
        iterations=iterations,
        converged=bool(converged),
        residual_history=tuple(history),
        restart=restart,
        tolerance=tol,
        solution=x,
        restart_defects=tuple(restart_defects),
        ortho_defects=tuple(ortho_defects),
    )


def _single_trace_restriction(rhs: np.ndarray) -> np.ndarray:
    # first trace tuple of every 8-component block
    return rhs.reshape(-1, 8)[:, :4].ravel()


def precond_compare(
    scenario: Scenario | str,
    n_max: int | None = None,
    variants: tuple[str, ...] = ("mtf", "mtf2", "bmtf", "stf2"),
    restart: int = 20,
    tol: float = 1e-8,
    max_iter: int = 2000,
    seed: int = 42,
    with_multiplicity: bool = False,
    rhs_model: str = "mie-like",
) -> dict[str, GmresReport]:
    """Run GMRes for several operator variants on one synthetic data set.

    All variants see the same weighted excitation; stf2 solves the
    single-trace restriction of it on 4-dimensional blocks.
    """
    if isinstance(scenario, str):
        scenario = get_scenario(scenario)
    media = scenario.media
    if n_max is None:
        n_max = modal.default_n_max(media)
    grid = ModalGrid(n_max=n_max, with_multiplicity=with_multiplicity)
    rhs8 = modal.synthetic_rhs(media, grid, model=rhs_model, seed=seed)
    # weight the data the same way the operators are conjugated
    w8 = np.concatenate(
        [
            np.sqrt(modal.d_tilde_weights(n, copies=4))
            for n in grid.modes
            for _ in range(grid.repeats(n))
        ]
    )
    rhs8 = rhs8 * w8

    out: dict[str, GmresReport] = {}
    for variant in variants:
        op = modal.build_operator(variant, media, grid, scaled=False, weighted=True)
        rhs = _single_trace_restriction(rhs8) if op.block_dim == 4 else rhs8
        out[variant] = gmres(op, rhs, restart=restart, tol=tol, max_iter=max_iter)
    return out
