"""The operator ``H = A + λ v(f^n x0)`` on ``[-L, L]`` and its checked eigendecomposition."""
from __future__ import annotations

import logging
from dataclasses import dataclass

import numpy as np
from scipy.linalg import LinAlgError, eigh, toeplitz

from app.skewshift import orbit_array
from app.utils.errors import EigensolverError

from .types import TransportConfig

logger = logging.getLogger(__name__)

RESIDUAL_TOL = 1e-9


def potential_samples(cfg: TransportConfig) -> np.ndarray:
    """``v(f^n x0)`` for n = -L..L; the first point comes from the closed form."""
    points = orbit_array(cfg.x0, cfg.system, cfg.size, start=-cfg.L)
    return cfg.potential(points)


def build_operator(cfg: TransportConfig) -> np.ndarray:
    """Dense real symmetric matrix of ``H``; rows and columns are indexed by n + L."""
    H = toeplitz(cfg.kernel.column(cfg.size))
    if cfg.coupling != 0.0:
        H[np.diag_indices(cfg.size)] = cfg.coupling * potential_samples(cfg)
    return H


@dataclass(frozen=True)
class Spectrum:
    """Eigenpairs of ``H`` with ``H U = U diag(E)``; residuals are per eigenpair."""

    energies: np.ndarray
    vectors: np.ndarray
    residuals: np.ndarray
    scale: float

    @property
    def size(self) -> int:
        return self.energies.shape[0]

    @property
    def spread(self) -> float:
        return float(self.energies[-1] - self.energies[0]) if self.size else 0.0

    def coefficients(self, state: np.ndarray) -> np.ndarray:
        """``(φ, u_j)`` for every eigenvector."""
        return self.vectors.T @ state


def diagonalize(H: np.ndarray, tol: float = RESIDUAL_TOL) -> Spectrum:
    """Eigendecomposition with a residual check ``‖H u - E u‖ ≤ tol ‖H‖``."""
    try:
        energies, vectors = eigh(H)
    except LinAlgError as exc:
        raise EigensolverError(f"eigensolver failed on a {H.shape[0]}x{H.shape[0]} operator: {exc}", []) from exc
    # Max row sum bounds the spectral norm of a symmetric matrix.
    scale = float(np.abs(H).sum(axis=1).max()) if H.size else 0.0
    residuals = np.linalg.norm(H @ vectors - vectors * energies, axis=0)
    limit = tol * max(scale, 1.0)
    if residuals.size and residuals.max() > limit:
        bad = int(np.count_nonzero(residuals > limit))
        raise EigensolverError(
            f"{bad} eigenpairs miss the residual bound {limit:.3e}", [float(r) for r in residuals]
        )
    logger.debug("diagonalized n=%d, max residual %.3e", H.shape[0], residuals.max(initial=0.0))
    return Spectrum(energies, vectors, residuals, scale)


def spectrum_of(cfg: TransportConfig) -> Spectrum:
    return diagonalize(build_operator(cfg))
