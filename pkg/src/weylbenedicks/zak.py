"""Discrete Zak (Weil-Brezin) transform on the L x M grid of [0,1) x [0,1).

With the signal reshaped into unit blocks B[b, m] = phi(b + m/M),

    (Z phi)(j/L, m/M) = sum_l phi(m/M - l) exp(2 pi i l j/L)
                      = sum_b B[b, m] exp(-2 pi i b j/L),

i.e. numpy's *forward* FFT along the block axis.  The inverse uses the
quasi-periodic extension F(theta, sigma + b) = exp(2 pi i b theta) F(theta, sigma),
so phi(m/M + b) = (1/L) sum_j F[j, m] exp(+2 pi i b j/L), which is ``ifft``.

Zak-domain inner products carry the cell weight 1/(L*M); with that weight Z
is unitary against the 1/M signal weight.
"""

from __future__ import annotations

import numpy as np

from .heisenberg import GridError, GridSpec, GroupElement, check_signal, phase, rho_apply


def check_zak(grid: GridSpec, F) -> np.ndarray:
    F = np.asarray(F, dtype=complex)
    if F.shape != (grid.L, grid.M):
        raise GridError(f"Zak array must have shape {(grid.L, grid.M)}, got {F.shape}")
    return F


def zak_norm(grid: GridSpec, F) -> float:
    return float(np.sqrt(np.sum(np.abs(F) ** 2) / (grid.L * grid.M)))


def zak_inner(grid: GridSpec, F, G) -> complex:
    return complex(np.vdot(G, F)) / (grid.L * grid.M)


def zak_forward(grid: GridSpec, phi) -> np.ndarray:
    phi = check_signal(grid, phi)
    return np.fft.fft(phi.reshape(grid.L, grid.M), axis=0)


def zak_inverse(grid: GridSpec, F) -> np.ndarray:
    F = check_zak(grid, F)
    return np.fft.ifft(F, axis=0).reshape(grid.d)


def zak_matrix(grid: GridSpec) -> np.ndarray:
    """Unitary d x d matrix U with U @ phi = zak_forward(phi).ravel() / sqrt(L)."""
    return zak_forward_batch(grid, np.eye(grid.d)) / np.sqrt(grid.L)


def zak_forward_batch(grid: GridSpec, cols) -> np.ndarray:
    """Zak transform of every column of a (d, k) array, flattened to (L*M, k)."""
    k = cols.shape[1]
    return np.fft.fft(cols.reshape(grid.L, grid.M, k), axis=0).reshape(grid.d, k)


def zak_extend(grid: GridSpec, F, p: int = 0, q: int = 0, *, theta_steps: int = 0,
               sigma_steps: int = 0) -> np.ndarray:
    """Values F(theta + p + theta_steps/L, sigma + q + sigma_steps/M) on the grid.

    Uses F(theta + 1, sigma) = F(theta, sigma) and
    F(theta, sigma + 1) = exp(2 pi i theta) F(theta, sigma).
    """
    F = check_zak(grid, F)
    L, M = grid.L, grid.M
    j = np.arange(L)[:, None] + theta_steps
    m = np.arange(M)[None, :] + sigma_steps + q * M
    b, m0 = np.divmod(m, M)
    # overflow phase exp(2 pi i b theta') with theta' = j'/L; integer j', p drop out
    return phase(2 * b * j, L) * F[j % L, m0]


def zak_covariance_check(grid: GridSpec, g: GroupElement, phi) -> float:
    """max |Z(rho(g) phi) - z exp(i pi (x y + 2 y sigma)) (Z phi)(theta - y, sigma + x)|."""
    phi = check_signal(grid, phi)
    direct = zak_forward(grid, rho_apply(g, phi))
    p, q = g.point.p, g.point.q
    m = np.arange(grid.M)[None, :]
    ph = g.z * phase(p * q + 2 * q * m, grid.d)
    via = ph * zak_extend(grid, zak_forward(grid, phi), theta_steps=-q, sigma_steps=p)
    return float(np.max(np.abs(direct - via)))


def e_mn(grid: GridSpec, m: int, n: int) -> np.ndarray:
    """e_mn(t) = indicator_[0,1)(t - n) exp(2 pi i m t), block n taken mod L."""
    idx = np.arange(grid.d)
    block = idx // grid.M
    t_num = idx  # t = idx / M
    return np.where(block == n % grid.L, phase(2 * m * t_num, grid.M), 0.0)
