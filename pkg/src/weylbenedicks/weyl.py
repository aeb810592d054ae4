"""Weyl transform and (modified) Fourier-Wigner transform on the finite grid.

Operators are plain d x d matrices with the 1/M quadrature weight folded in,
so the plain matrix trace plays the role of the continuum trace.  Phase
functions are (d, d) arrays indexed [p, q] for the point (p/M, q/L), x-major.

The quadrature cell is (1/M)(1/L) = 1/d and tr(rho(w) rho(v)^*) = d delta_wv,
so alpha(W(f)) = f and W(alpha(X)) = X hold with constant exactly 1.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .heisenberg import GridError, GridSpec, PhasePoint, check_signal, rho_matrix, section_s, phase


def check_operator(grid: GridSpec, X) -> np.ndarray:
    X = np.asarray(X, dtype=complex)
    if X.shape != (grid.d, grid.d):
        raise GridError(f"operator must be {grid.d}x{grid.d}, got {X.shape}")
    return X


def check_phase_function(grid: GridSpec, f) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    if f.shape != (grid.d, grid.d):
        raise GridError(f"phase function must be {grid.d}x{grid.d}, got {f.shape}")
    return f


def rank_one_matrix(grid: GridSpec, phi, psi) -> np.ndarray:
    """phi (x) conj(psi): mu -> <mu, psi> phi."""
    phi = check_signal(grid, phi)
    psi = check_signal(grid, psi)
    return np.outer(phi, psi.conj()) / grid.M


@dataclass
class FactoredOperator:
    """X = sum_j phi_j (x) conj(psi_j)."""

    grid: GridSpec
    factors: list = field(default_factory=list)

    def __post_init__(self):
        self.factors = [(check_signal(self.grid, f), check_signal(self.grid, g))
                        for f, g in self.factors]

    def matrix(self) -> np.ndarray:
        X = np.zeros((self.grid.d, self.grid.d), dtype=complex)
        for phi, psi in self.factors:
            X += rank_one_matrix(self.grid, phi, psi)
        return X

    def rank(self, rtol: float = 1e-10) -> int:
        """Numerical rank of the Gram matrix of the psi_j."""
        if not self.factors:
            return 0
        psis = np.array([psi for _, psi in self.factors])
        ev = np.linalg.eigvalsh(psis.conj() @ psis.T / self.grid.M)
        top = ev.max()
        if top <= 0:
            return 0
        return int(np.sum(ev > rtol * top))


def weyl_transform(grid: GridSpec, f) -> np.ndarray:
    """sum_{x,y} f(x, y) rho(x, y, 1) dx dy on the full phase grid.

    Entry [n, n+p] collects sum_q f[p, q] exp(i pi (p q + 2 q n)/d) / d,
    evaluated for all n at once by an inverse FFT in q.
    """
    f = check_phase_function(grid, f)
    d = grid.d
    p = np.arange(d)[:, None]
    q = np.arange(d)[None, :]
    h = f * phase(p * q, d)
    # diag[p, n] = sum_q h[p, q] exp(2 pi i q n/d) / d
    diag = np.fft.ifft(h, axis=1)
    W = np.zeros((d, d), dtype=complex)
    n = np.arange(d)
    for pp in range(d):
        W[n, (n + pp) % d] = diag[pp]
    return W


def fourier_wigner(grid: GridSpec, X, w: PhasePoint) -> complex:
    """alpha(X)(w) = tr(X rho(w, 1)^*)."""
    X = check_operator(grid, X)
    if w.grid != grid:
        raise GridError("phase point lives on another grid")
    R = rho_matrix(section_s(w))
    return complex(np.sum(X * R.conj()))


def alpha_full(grid: GridSpec, X) -> np.ndarray:
    """alpha(X) tabulated on the full (d, d) phase grid.

    alpha[p, q] = exp(-i pi p q/d) sum_n X[n, n+p] exp(-2 pi i q n/d).
    """
    X = check_operator(grid, X)
    d = grid.d
    n = np.arange(d)
    diags = np.array([X[n, (n + pp) % d] for pp in range(d)])
    p = np.arange(d)[:, None]
    q = np.arange(d)[None, :]
    return phase(-p * q, d) * np.fft.fft(diags, axis=1)


def alpha_at(grid: GridSpec, X, points) -> np.ndarray:
    """alpha(X) at a list of (possibly unreduced) phase points."""
    X = check_operator(grid, X)
    d = grid.d
    n = np.arange(d)
    out = np.empty(len(points), dtype=complex)
    for i, w in enumerate(points):
        ph = phase(w.p * w.q + 2 * w.q * n, d)
        out[i] = np.sum(X[n, (n + w.p) % d] * ph.conj())
    return out


def heatmap_triples(grid: GridSpec, f) -> np.ndarray:
    """(x, y, |f|) rows for external plotting, x-major."""
    f = check_phase_function(grid, f)
    d = grid.d
    x = np.repeat(np.arange(d) / grid.M, d)
    y = np.tile(np.arange(d) / grid.L, d)
    return np.column_stack([x, y, np.abs(f).ravel()])
