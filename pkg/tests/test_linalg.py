import numpy as np
import pytest

from cauchyspec import (DegeneratePencil, NotPositiveDefinite, SymMatrix,
                        generalized_sym_eig, solve_spd, sym_eig)
from cauchyspec.interval import assemble_intermediate


def test_sym_matrix_enforces_symmetry():
    m = SymMatrix(np.array([[1.0, 2.0], [2.0 + 1e-18, 3.0]]))
    assert m.entries[0, 1] == m.entries[1, 0]
    with pytest.raises(ValueError):
        SymMatrix(np.array([[np.inf, 0.0], [0.0, 1.0]]))


def test_sym_eig_diagonal():
    w, _ = sym_eig(np.diag([3.0, 1.0, 2.0]))
    assert np.allclose(w, [1.0, 2.0, 3.0])


def test_sym_eig_2x2():
    w, _ = sym_eig(np.array([[0.0, 1.0], [1.0, 0.0]]))
    assert np.allclose(w, [-1.0, 1.0])


def test_sym_eig_residual_certificate():
    rng = np.random.default_rng(7)
    a = rng.standard_normal((10, 10))
    m = (a + a.T) / 2
    m /= np.linalg.norm(m, 2)
    w, v = sym_eig(m)
    resid = np.linalg.norm(m @ v - v * w, axis=0).max()
    assert resid <= 1e-12 * np.linalg.norm(m, 2) * 10
    # eigenvalue sum equals trace
    assert abs(w.sum() - np.trace(m)) <= 1e-10


def test_solve_spd_identity_and_diag():
    x = solve_spd(np.eye(3), np.array([1.0, 0.0, 0.0]))
    assert np.allclose(x, [1.0, 0.0, 0.0])
    x = solve_spd(np.diag([2.0, 4.0]), np.array([2.0, 4.0]))
    assert np.allclose(x, [1.0, 1.0])


def test_solve_spd_gram_residual():
    # Gram matrix at N=4 against the two-band coupling matrix
    C, B, _, _ = assemble_intermediate(4)
    x = solve_spd(B.entries, C.entries)
    resid = np.abs(B.entries @ x - C.entries).max()
    assert resid <= 1e-12


def test_solve_spd_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        solve_spd(np.array([[1.0, 2.0], [2.0, 1.0]]), np.ones(2))


def test_generalized_identity_pencil():
    lam = generalized_sym_eig(np.eye(5), np.arange(1.0, 6.0))
    assert np.allclose(lam, np.arange(1.0, 6.0))


def test_generalized_scaled_pencil():
    lam = generalized_sym_eig(0.5 * np.eye(2), np.array([1.0, 2.0]))
    assert np.allclose(lam, [2.0, 4.0])


def test_generalized_degenerate_direction_warns():
    s = np.diag([1.0, 0.0])
    with pytest.warns(DegeneratePencil):
        lam = generalized_sym_eig(s, np.array([1.0, 2.0]))
    assert np.allclose(lam, [1.0])
