"""Dense symmetric eigensolves and SPD linear solves with residual certificates.

Thin, certificate-bearing wrappers over LAPACK: every eigendecomposition is
checked against an explicit residual bound before it is returned, because the
eigenvalue-bound pipeline downstream treats these numbers as evidence, not as
best-effort output.
"""

from __future__ import annotations

import warnings
from dataclasses import dataclass

import numpy as np
import scipy.linalg

from .errors import DegeneratePencil, NonConvergence, NotPositiveDefinite

__all__ = ["SymMatrix", "sym_eig", "solve_spd", "generalized_sym_eig"]

#: residual certificate threshold, relative to ||M||_2
CERT_TOL = 1e-12

#: eigenvalues of S below this (times ||S||) are treated as degenerate
DEGENERACY_THRESHOLD = 1e-12


@dataclass
class SymMatrix:
    """A dense symmetric matrix; symmetry is enforced exactly on construction
    by mirroring the lower triangle."""

    entries: np.ndarray

    def __post_init__(self):
        a = np.array(self.entries, dtype=float)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError("need a square 2-D array")
        if not np.all(np.isfinite(a)):
            raise ValueError("entries must be finite")
        i, j = np.triu_indices(a.shape[0], 1)
        a[i, j] = a[j, i]
        self.entries = a

    @property
    def order(self) -> int:
        return self.entries.shape[0]


def sym_eig(M: SymMatrix | np.ndarray):
    """Eigenvalues (ascending) and orthonormal eigenvectors of a symmetric M.

    Backed by LAPACK's orthogonal-similarity iteration (`numpy.linalg.eigh`);
    the residual certificate ||M v - theta v|| <= CERT_TOL * ||M|| and
    orthonormality are verified explicitly, and a failed certificate raises
    :class:`NonConvergence` rather than returning unverified numbers.
    """
    a = M.entries if isinstance(M, SymMatrix) else SymMatrix(np.asarray(M)).entries
    theta, vec = np.linalg.eigh(a)
    norm = float(np.linalg.norm(a, 2)) or 1.0
    resid = np.linalg.norm(a @ vec - vec * theta, axis=0).max()
    ortho = np.abs(vec.T @ vec - np.eye(a.shape[0])).max()
    if resid > CERT_TOL * norm * a.shape[0] or ortho > CERT_TOL * a.shape[0]:
        raise NonConvergence(
            f"eigendecomposition certificate failed (residual {resid:.2e}, "
            f"orthogonality defect {ortho:.2e})",
            estimate=theta, error_bound=resid)
    return theta, vec


def solve_spd(M: SymMatrix | np.ndarray, rhs: np.ndarray) -> np.ndarray:
    """Solve M X = rhs for symmetric positive definite M (Cholesky).

    Raises :class:`NotPositiveDefinite` when a factorization pivot fails.
    """
    a = M.entries if isinstance(M, SymMatrix) else SymMatrix(np.asarray(M)).entries
    try:
        cf = scipy.linalg.cho_factor(a, lower=True, check_finite=False)
    except scipy.linalg.LinAlgError as exc:
        raise NotPositiveDefinite(str(exc)) from exc
    return scipy.linalg.cho_solve(cf, np.asarray(rhs, dtype=float),
                                  check_finite=False)


def generalized_sym_eig(S: SymMatrix | np.ndarray,
                        d: np.ndarray) -> np.ndarray:
    """Eigenvalues of the pencil  D a = lambda S a  with D = diag(d) > 0.

    Solved as the symmetric problem D^{-1/2} S D^{-1/2} w = theta w and
    returning lambda = 1/theta sorted ascending.  Directions with
    theta <= DEGENERACY_THRESHOLD (S not safely positive there) carry no
    finite eigenvalue; they are dropped from the result and reported through
    a :class:`DegeneratePencil` warning.
    """
    s = S.entries if isinstance(S, SymMatrix) else SymMatrix(np.asarray(S)).entries
    d = np.asarray(d, dtype=float)
    if d.ndim != 1 or d.shape[0] != s.shape[0]:
        raise ValueError("diagonal length must match the matrix order")
    if np.any(d <= 0):
        raise ValueError("diagonal entries must be positive")
    dh = 1.0 / np.sqrt(d)
    m = dh[:, None] * s * dh[None, :]
    theta, _ = sym_eig(SymMatrix(m))
    cutoff = DEGENERACY_THRESHOLD * max(1.0, float(np.abs(theta).max()))
    good = theta > cutoff
    if not np.all(good):
        warnings.warn(
            f"pencil has {int((~good).sum())} degenerate direction(s); "
            "corresponding eigenvalues omitted", DegeneratePencil, stacklevel=2)
    return np.sort(1.0 / theta[good])
