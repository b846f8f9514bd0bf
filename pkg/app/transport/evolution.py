"""Spectral propagation ``e^{-itH} φ``, position moments and their Abel means."""
from __future__ import annotations

import logging
import math
from collections.abc import Sequence

import numpy as np

from app.utils.errors import InputError
from app.utils.workers import parallel_map

from .operator import Spectrum, spectrum_of
from .types import MomentSeries, TransportConfig

logger = logging.getLogger(__name__)

BOUNDARY_FRACTION = 0.9
BOUNDARY_MASS_TOL = 1e-8
QUADRATURE_ORDER = 20
QUADRATURE_HORIZON = 20.0
TIME_BLOCK = 1024


class Propagator:
    """Binds a config to its spectrum; every time evaluation reuses the one eigendecomposition."""

    def __init__(self, cfg: TransportConfig, spectrum: Spectrum | None = None) -> None:
        self.cfg = cfg
        self.spectrum = spectrum if spectrum is not None else spectrum_of(cfg)
        self.coeffs = self.spectrum.coefficients(cfg.initial_state())
        self._amplitudes = self.spectrum.vectors * self.coeffs[None, :]
        self.abs_sites = np.abs(cfg.sites).astype(np.float64)
        self.boundary = self.abs_sites > BOUNDARY_FRACTION * cfg.L

    def state(self, t: float) -> np.ndarray:
        phases = np.exp(-1j * t * self.spectrum.energies)
        return self.spectrum.vectors @ (phases * self.coeffs)

    def densities(self, ts: np.ndarray) -> np.ndarray:
        """``|ψ_n(t)|²`` with shape ``(len(ts), 2L+1)``."""
        phases = np.exp(-1j * np.outer(self.spectrum.energies, ts))
        psi = self._amplitudes @ phases
        return (psi.real**2 + psi.imag**2).T

    def abel_density(self, T: float) -> np.ndarray:
        """Abel mean of ``|ψ_n(t)|²``: each ``e^{-it(E_j - E_k)}`` becomes ``r/(r + i(E_j - E_k))``, r = 2/T."""
        if not T > 0:
            raise InputError(f"Abel time T must be positive, got {T}")
        rate = 2.0 / T
        E = self.spectrum.energies
        W = rate / (rate + 1j * (E[:, None] - E[None, :]))
        A = self._amplitudes
        density = np.einsum("nj,jn->n", A, W @ A.conj().T)
        return np.maximum(density.real, 0.0)

    def weights(self, p: float) -> np.ndarray:
        if p < 0:
            raise InputError(f"moment order p must be non-negative, got {p}")
        return self.abs_sites**p

    def boundary_mass(self, density: np.ndarray) -> float:
        return float(density[..., self.boundary].sum(axis=-1)) if self.boundary.any() else 0.0

    def warn_truncation(self, mass: float, label: str) -> None:
        if mass > BOUNDARY_MASS_TOL:
            logger.warning(
                "%s: mass %.3e beyond |n| > %.0f%% of L=%d; moments feel the box",
                label, mass, 100 * BOUNDARY_FRACTION, self.cfg.L,
            )


def evolve(cfg: TransportConfig, t: float, propagator: Propagator | None = None) -> np.ndarray:
    """``ψ(t) = Σ_j e^{-itE_j} (φ, u_j) u_j`` on the sites ``-L..L``."""
    prop = propagator or Propagator(cfg)
    return prop.state(t)


def weighted_mass(psi: np.ndarray, sites: np.ndarray, p: float, skip_origin: bool = False) -> float:
    """``Σ |n|^p |ψ_n|²``, optionally over ``|n| ≥ 1`` only."""
    density = np.abs(psi) ** 2
    weights = np.abs(sites).astype(np.float64) ** p
    if skip_origin:
        weights = np.where(sites == 0, 0.0, weights)
    return math.fsum(weights * density)


def moment(cfg: TransportConfig, t: float, p: float, propagator: Propagator | None = None) -> float:
    """``⟨|X|^p⟩(t) = Σ_{|n|≤L} |n|^p |ψ_n(t)|²``."""
    prop = propagator or Propagator(cfg)
    density = prop.densities(np.array([float(t)]))[0]
    prop.warn_truncation(prop.boundary_mass(density), f"moment at t={t:g}")
    return math.fsum(prop.weights(p) * density)


def abel_mean(cfg: TransportConfig, T: float, p: float, propagator: Propagator | None = None) -> float:
    """``(2/T) ∫_0^∞ e^{-2t/T} ⟨|X|^p⟩(t) dt`` in closed form over the eigenbasis."""
    prop = propagator or Propagator(cfg)
    density = prop.abel_density(T)
    prop.warn_truncation(prop.boundary_mass(density), f"Abel mean at T={T:g}")
    return math.fsum(prop.weights(p) * density)


def abel_mean_quadrature(
    cfg: TransportConfig,
    T: float,
    p: float,
    propagator: Propagator | None = None,
    order: int = QUADRATURE_ORDER,
) -> float:
    """The Abel mean by composite Gauss–Legendre quadrature on ``[0, 20T]``.

    Panels are at most half a period of the fastest oscillation ``e^{-it(E_max - E_min)}``.
    """
    if not T > 0:
        raise InputError(f"Abel time T must be positive, got {T}")
    prop = propagator or Propagator(cfg)
    horizon = QUADRATURE_HORIZON * T
    panels = max(8, math.ceil(horizon * prop.spectrum.spread / math.pi))
    nodes, node_weights = np.polynomial.legendre.leggauss(order)
    edges = np.linspace(0.0, horizon, panels + 1)
    half = np.diff(edges) / 2
    mid = (edges[:-1] + edges[1:]) / 2
    ts = (mid[:, None] + half[:, None] * nodes[None, :]).ravel()
    ws = (half[:, None] * node_weights[None, :]).ravel() * (2.0 / T) * np.exp(-2.0 * ts / T)
    site_weights = prop.weights(p)
    parts = []
    for lo in range(0, ts.size, TIME_BLOCK):
        block = prop.densities(ts[lo : lo + TIME_BLOCK]) @ site_weights
        parts.append(block * ws[lo : lo + TIME_BLOCK])
    return math.fsum(np.concatenate(parts))


def moment_series(
    cfg: TransportConfig,
    T_grid: Sequence[float],
    p: float,
    averaged: bool = False,
    workers: int | None = None,
    propagator: Propagator | None = None,
) -> MomentSeries:
    """Plain or Abel-averaged moments over a time grid, one shared eigendecomposition."""
    grid = [float(T) for T in T_grid]
    if not grid:
        raise InputError("the time grid is empty")
    prop = propagator or Propagator(cfg)
    weights = prop.weights(p)

    def point(T: float) -> tuple[float, float]:
        density = prop.abel_density(T) if averaged else prop.densities(np.array([T]))[0]
        return math.fsum(weights * density), prop.boundary_mass(density)

    results = parallel_map(point, grid, workers)
    masses = [m for _, m in results]
    saturated = [T for T, m in zip(grid, masses) if m > BOUNDARY_MASS_TOL]
    if saturated:
        logger.warning("%d of %d times reach the boundary (first at T=%g)", len(saturated), len(grid), saturated[0])
    return MomentSeries.of(grid, [v for v, _ in results], p, averaged, masses)
