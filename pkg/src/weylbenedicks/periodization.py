"""N-periodic operators for N = Z x aZ.

Multiplication operators M_g = Z^-1 g Z, the trace
tau(T) = sum_h <T chi_h, chi_h> over the a indicators of [h/a, (h+1)/a),
Fourier-Wigner coefficients on the dual window N-perp = (1/a)Z x Z,
and the periodization X~ = sum_j M_{g_j} rho(-j/a, 0, 1) of finite-rank X.

Lattice coefficient tables have shape (aL, M), indexed [k, l] for n' = (k/a, l).
"""

from __future__ import annotations

from fractions import Fraction

import numpy as np

from .heisenberg import (GridError, GridSpec, GroupElement, LatticeSpec, PhasePoint, phase,
                         rho_matrix)
from .weyl import FactoredOperator, check_operator, rank_one_matrix
from .zak import check_zak, zak_extend, zak_forward, zak_matrix

PERIODIC_TOL = 1e-10


def mult_op(grid: GridSpec, g) -> np.ndarray:
    """Matrix of phi -> Z^-1(g Z phi)."""
    g = check_zak(grid, g)
    U = zak_matrix(grid)
    return U.conj().T @ (g.reshape(-1, 1) * U)


def zak_diagonal(grid: GridSpec, T) -> np.ndarray:
    """U T U^* for the unitary Zak matrix U; diagonal when T = M_g."""
    U = zak_matrix(grid)
    return U @ check_operator(grid, T) @ U.conj().T


def is_n_periodic(grid: GridSpec, T, tol: float = PERIODIC_TOL) -> tuple[bool, float]:
    """Check rho(n) T rho(n)^-1 = T for both generators of N."""
    T = check_operator(grid, T)
    dev = 0.0
    for n in LatticeSpec(grid).generators:
        R = rho_matrix(GroupElement(n))
        dev = max(dev, float(np.max(np.abs(R @ T @ R.conj().T - T))))
    return dev <= tol, dev


def _chi_blocks(grid: GridSpec) -> list[slice]:
    w = grid.M // grid.a
    return [slice(h * w, (h + 1) * w) for h in range(grid.a)]


def indicator_chi(grid: GridSpec, h: int) -> np.ndarray:
    chi = np.zeros(grid.d, dtype=complex)
    chi[_chi_blocks(grid)[h]] = 1.0
    return chi


def trace_tau(grid: GridSpec, T) -> complex:
    """sum_h <T chi_h, chi_h> with the 1/M weight."""
    T = check_operator(grid, T)
    return complex(sum(T[s, s].sum() for s in _chi_blocks(grid))) / grid.M


def fw_coeffs(grid: GridSpec, T) -> np.ndarray:
    """alpha(T)(k/a, l) = tau(T rho(k/a, l, 1)^*) on the whole dual window.

    (T R^*)[n, n'] = T[n, n'+p] conj(ph(n')) for R = rho(p, q), so each tau
    only needs the a diagonal chi-blocks of a column-rolled T.
    """
    T = check_operator(grid, T)
    lat = LatticeSpec(grid)
    K, Lw = lat.dual_shape
    d, M = grid.d, grid.M
    step = M // grid.a
    nprime = np.arange(M)
    blocks = _chi_blocks(grid)
    out = np.empty((K, Lw), dtype=complex)
    for k in range(K):
        p = k * step
        cols = (nprime + p) % d
        # C[n'] = sum_{n in block(n')} T[n, n'+p], for n' in [0, 1)
        C = np.empty(M, dtype=complex)
        for s in blocks:
            C[s] = T[s][:, cols[s]].sum(axis=0)
        q = np.arange(Lw)[:, None] * grid.L
        ph = phase(p * q + 2 * q * nprime[None, :], d)
        out[k] = (ph.conj() @ C) / M
    return out


def mg_alpha_closed_form(grid: GridSpec, g, k: int, l: int) -> complex:
    """exp(i pi l k/a) int_Omega g exp(-2 pi i (l sigma + k theta/a)) if a | k, else 0."""
    g = check_zak(grid, g)
    K, Lw = LatticeSpec(grid).dual_shape
    if not (0 <= k < K and 0 <= l < Lw):
        raise IndexError(f"(k, l) = ({k}, {l}) outside the dual window {K}x{Lw}")
    if k % grid.a:
        return 0j
    k0 = k // grid.a
    L, M = grid.L, grid.M
    j = np.arange(L)[:, None]
    m = np.arange(M)[None, :]
    # exp(-2 pi i (l m/M + k0 j/L)) = phase(-2 (l m L + k0 j M), d)
    kern = phase(-2 * (l * m * L + k0 * j * M), grid.d)
    return complex(phase(l * k0, 1)) * complex(np.sum(g * kern)) / (L * M)


def mg_alpha_table(grid: GridSpec, g) -> np.ndarray:
    """Closed form on the whole dual window via a 2-D FFT."""
    g = check_zak(grid, g)
    K, Lw = LatticeSpec(grid).dual_shape
    out = np.zeros((K, Lw), dtype=complex)
    G = np.fft.fft2(g) / (grid.L * grid.M)  # G[k0, l] = mean g exp(-2 pi i (k0 j/L + l m/M))
    k0 = np.arange(grid.L)[:, None]
    l = np.arange(Lw)[None, :]
    out[:: grid.a] = phase(l * k0, 1) * G
    return out


def _dual_rho(grid: GridSpec, k: int, l: int) -> np.ndarray:
    return rho_matrix(GroupElement(LatticeSpec(grid).dual_point(k, l)))


def reconstruct_from_coeffs(grid: GridSpec, c) -> np.ndarray:
    """sum_{n'} c(n') rho(n', 1) over the support of c."""
    c = np.asarray(c, dtype=complex)
    K, Lw = LatticeSpec(grid).dual_shape
    if c.shape != (K, Lw):
        raise GridError(f"coefficient table must have shape {(K, Lw)}, got {c.shape}")
    T = np.zeros((grid.d, grid.d), dtype=complex)
    for k, l in zip(*np.nonzero(c)):
        T += c[k, l] * _dual_rho(grid, int(k), int(l))
    return T


def g_functions(grid: GridSpec, phi, psi) -> list[np.ndarray]:
    """g_j(theta, sigma) = (Z phi)(theta, sigma) conj((Z psi)(theta, sigma - j/a))."""
    Zphi = zak_forward(grid, phi)
    Zpsi = zak_forward(grid, psi)
    step = grid.M // grid.a
    return [Zphi * zak_extend(grid, Zpsi, sigma_steps=-j * step).conj() for j in range(grid.a)]


def periodize(X: FactoredOperator) -> np.ndarray:
    """X~ = sum over factors of sum_j M_{g_j} rho(-j/a, 0, 1)."""
    grid = X.grid
    d = grid.d
    out = np.zeros((d, d), dtype=complex)
    if not X.factors:
        return out
    step = grid.M // grid.a
    U = zak_matrix(grid)
    Uh = U.conj().T
    shifts = [rho_matrix(GroupElement(PhasePoint(grid, -j * step, 0))) for j in range(grid.a)]
    for phi, psi in X.factors:
        for g, R in zip(g_functions(grid, phi, psi), shifts):
            out += Uh @ (g.reshape(-1, 1) * (U @ R))
    return out


def full_lattice_periodization(X: FactoredOperator) -> np.ndarray:
    """sum over the L*M/a distinct elements n of N of rho(n) X rho(n)^-1."""
    grid = X.grid
    out = np.zeros((grid.d, grid.d), dtype=complex)
    for n in LatticeSpec(grid).coset_points():
        R = rho_matrix(GroupElement(n))
        for phi, psi in X.factors:
            out += rank_one_matrix(grid, R @ phi, R @ psi)
    return out


def fit_scalar(A, B) -> tuple[complex, float]:
    """Least-squares kappa with A ~ kappa B; returns (kappa, max entrywise residual)."""
    A = np.asarray(A)
    B = np.asarray(B)
    denom = np.vdot(B, B)
    if denom == 0:
        return 0j, float(np.max(np.abs(A)))
    kappa = complex(np.vdot(B, A) / denom)
    return kappa, float(np.max(np.abs(A - kappa * B)))


def distribution_compare(grid: GridSpec, g, lam: float) -> tuple[Fraction, Fraction]:
    """Super-level set measures of g and of |M_g| at level lam.

    The first is a grid count over Omega.  The second is tau of the spectral
    projection of |M_g| onto (lam, inf), with the spectrum read off the
    Zak-domain diagonalization of the matrix M_g.
    """
    if lam < 0:
        raise ValueError("lam must be nonnegative")
    g = check_zak(grid, g)
    cells = grid.L * grid.M
    count_g = Fraction(int(np.sum(np.abs(g) > lam)), cells)
    spectrum = np.abs(np.diag(zak_diagonal(grid, mult_op(grid, g))))
    U = zak_matrix(grid)
    proj = U.conj().T @ ((spectrum > lam).astype(complex)[:, None] * U)
    raw = trace_tau(grid, proj).real * cells
    n = round(raw)
    if abs(raw - n) > 1e-6:
        raise ArithmeticError(f"tau of a spectral projection is not a multiple of 1/{cells}: {raw}")
    return count_g, Fraction(n, cells)
