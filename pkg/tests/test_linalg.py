import numpy as np
import pytest

from mtf_spectra import linalg, stf_symbol
from mtf_spectra.linalg import (
    SingularMatrixError,
    eigenvalues,
    hausdorff_distance,
    inverse,
    min_singular_value,
    solve,
    sort_complex,
    weighted_hermitian_min_eig,
)
from mtf_spectra.symbols import asymptotic_symbols


def test_eigenvalues_diagonal():
    ev = eigenvalues(np.diag([1.0, 2.0j, -3.0]))
    assert np.allclose(sort_complex(ev), sort_complex([1, 2j, -3]))


def test_eigenvalues_k_tilde_closed_form(teflon_lf):
    ev = eigenvalues(asymptotic_symbols(teflon_lf.media).k_tilde)
    lam = 0.7590721152765898
    assert np.allclose(sort_complex(ev), sort_complex([0, 0, 1j * lam, -1j * lam]), atol=1e-12)


def test_eigenvalues_companion_cube_roots():
    # companion matrix of z^3 - 1
    C = np.array([[0, 0, 1], [1, 0, 0], [0, 1, 0]], complex)
    ev = eigenvalues(C)
    roots = np.exp(2j * np.pi * np.arange(3) / 3)
    assert hausdorff_distance(ev, roots) < 1e-12


def test_eigenvalues_characteristic_residual(teflon_lf):
    for A in (
        np.diag([1.0, 2.0j, -3.0]),
        stf_symbol(3, teflon_lf.media),
        asymptotic_symbols(teflon_lf.media).mtf_inf,
    ):
        n = A.shape[0]
        norm = np.linalg.norm(A, 2)
        for lam in eigenvalues(A):
            assert abs(np.linalg.det(A - lam * np.eye(n))) <= 1e-8 * norm**n


def test_eigenvalue_trace_and_determinant(teflon_lf):
    A = stf_symbol(11, teflon_lf.media)
    ev = eigenvalues(A)
    assert ev.sum() == pytest.approx(np.trace(A), rel=1e-8, abs=1e-10)
    assert np.prod(ev) == pytest.approx(np.linalg.det(A), rel=1e-8)


def test_eigenvalues_similarity_invariance(teflon_lf):
    from mtf_spectra.symbols import mode_scaling, mtf_symbol

    A = mtf_symbol(40, teflon_lf.media)
    t = mode_scaling(40, copies=4)
    B = (A * t[None, :]) / t[:, None]  # T^-1 A T with diagonal T
    assert np.abs(sort_complex(eigenvalues(A)) - sort_complex(eigenvalues(B))).max() < 1e-7


def test_eigenvalues_rejects_nonsquare_and_nonfinite():
    with pytest.raises(ValueError):
        eigenvalues(np.zeros((2, 3)))
    with pytest.raises(ValueError):
        eigenvalues(np.array([[np.inf, 0], [0, 1]]))


def test_min_singular_value_basics():
    assert min_singular_value(np.eye(4)) == pytest.approx(1.0)
    A = np.eye(3)
    A[1] = 0.0
    assert min_singular_value(A) == pytest.approx(0.0, abs=1e-15)
    assert min_singular_value(2 * np.eye(8)) == pytest.approx(2.0)


def test_inverse_basics():
    assert np.allclose(inverse(np.eye(3)), np.eye(3))
    assert np.allclose(inverse(np.diag([2.0, 4.0])), np.diag([0.5, 0.25]))


def test_inverse_residual_on_stf_block(teflon_lf):
    S = stf_symbol(3, teflon_lf.media)
    assert np.abs(S @ inverse(S) - np.eye(4)).max() < 1e-10


def test_inverse_rejects_singular():
    A = np.array([[1.0, 1.0], [1.0, 1.0]])
    with pytest.raises(SingularMatrixError):
        inverse(A)
    with pytest.raises(SingularMatrixError):
        solve(A, np.ones(2))


def test_solve_matches_inverse(teflon_lf):
    S = stf_symbol(9, teflon_lf.media)
    b = np.arange(1.0, 5.0) + 1j
    assert np.allclose(solve(S, b), inverse(S) @ b)


def test_weighted_min_eig_diagonal():
    assert weighted_hermitian_min_eig(np.diag([3.0, 5.0]), np.ones(2)) == pytest.approx(3.0)


def test_weighted_min_eig_antisymmetric_is_zero():
    A = np.array([[0.0, 2.0], [-2.0, 0.0]])
    for w in (np.ones(2), np.array([7.0, 0.3])):
        assert weighted_hermitian_min_eig(A, w) == pytest.approx(0.0, abs=1e-14)


@pytest.mark.parametrize("n", [1, 10, 250])
def test_weighted_min_eig_diagonal_ratio(n):
    # diagonal form with norm weights: the minimum is the smallest
    # entry-to-weight ratio
    om, oe = 1.05, 2.205
    A = np.diag([n / om, oe / n])
    w = np.array([1.0 + n, 1.0 / (1.0 + n)])
    expected = min(n / (om * (1 + n)), oe * (1 + n) / n)
    assert weighted_hermitian_min_eig(A, w) == pytest.approx(expected, rel=1e-12)


def test_weighted_min_eig_rejects_bad_weights():
    with pytest.raises(ValueError):
        weighted_hermitian_min_eig(np.eye(2), np.array([1.0, 0.0]))
    with pytest.raises(ValueError):
        weighted_hermitian_min_eig(np.eye(2), np.ones(3))


def test_sort_complex_bucketing():
    vals = [1.0 + 1e-9 + 2j, 1.0 + 1j]
    srt = sort_complex(vals, tol=1e-7)
    assert srt[0].imag < srt[1].imag  # same real bucket: imag decides


def test_hausdorff_distance():
    assert hausdorff_distance([0j], [3 + 4j]) == pytest.approx(5.0)
    assert hausdorff_distance([0j, 1j], [0j, 1j]) == 0.0
    # asymmetric coverage is penalized both ways
    assert hausdorff_distance([0j], [0j, 10 + 0j]) == pytest.approx(10.0)
    with pytest.raises(ValueError):
        hausdorff_distance([], [1j])
