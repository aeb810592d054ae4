"""Pointwise orthocomplements and kernel vectors for X~ when rank(X) < a.

A vector field has shape (L, M/a, a): entry [j, m, i] is component i at
(j/L, m/M) in Sigma = [0, 1) x [0, 1/a).
"""

from __future__ import annotations

import numpy as np

from .heisenberg import GridError, GridSpec, check_signal
from .weyl import FactoredOperator
from .zak import zak_forward, zak_inverse


class RankError(ValueError):
    """Operator rank is too large for the lattice parameter."""


def stack_field(grid: GridSpec, psi) -> np.ndarray:
    """Components (Z psi)(theta, sigma + i/a), i = 0..a-1, on Sigma."""
    Z = zak_forward(grid, check_signal(grid, psi))
    w = grid.M // grid.a
    # sigma + i/a stays inside [0, 1) for sigma in Sigma, so no quasi-periodic phase
    return np.stack([Z[:, i * w:(i + 1) * w] for i in range(grid.a)], axis=-1)


def pointwise_orthocomplement(grid: GridSpec, fields) -> np.ndarray:
    """Unit field e with sum_i e_i conj(f_i) = 0 for every given field f.

    Per point: e is the last column of the complete QR factorization of the
    a x b matrix whose columns are the given vectors.  The phase is fixed so
    the largest-magnitude component (lowest index on ties) is real positive.
    """
    a = grid.a
    shape = (grid.L, grid.M // a, a)
    fields = [np.asarray(f, dtype=complex) for f in fields]
    for f in fields:
        if f.shape != shape:
            raise GridError(f"vector field must have shape {shape}, got {f.shape}")
    b = len(fields)
    if b >= a:
        raise RankError(f"need fewer than a={a} fields, got {b}")
    if b == 0:
        e = np.zeros(shape, dtype=complex)
        e[..., -1] = 1.0
        return e
    A = np.stack(fields, axis=-1)  # (L, M/a, a, b)
    Q, _ = np.linalg.qr(A, mode="complete")
    e = Q[..., :, -1]
    idx = np.argmax(np.abs(e), axis=-1)
    lead = np.take_along_axis(e, idx[..., None], axis=-1)
    return e * (np.abs(lead) / lead)


def psi_basis(X: FactoredOperator, rtol: float = 1e-10) -> list[np.ndarray]:
    """Orthonormal basis (weighted) of span{psi_j}, from the Gram eigenvectors."""
    if not X.factors:
        return []
    grid = X.grid
    psis = np.array([psi for _, psi in X.factors])
    ev, V = np.linalg.eigh(psis.conj() @ psis.T / grid.M)
    top = ev.max()
    if top <= 0:
        return []
    keep = ev > rtol * top
    basis = (V[:, keep].T @ psis) / np.sqrt(ev[keep])[:, None]
    return list(basis)


def assemble_omega(grid: GridSpec, e) -> np.ndarray:
    """F(theta, sigma) = e(theta, sigma - i/a)_i for sigma in [i/a, (i+1)/a)."""
    return np.concatenate([e[..., i] for i in range(grid.a)], axis=1)


def kernel_vector(X: FactoredOperator) -> np.ndarray:
    """Unit-norm f with X~ f = 0, built from the orthocomplement of the psi fields."""
    grid = X.grid
    basis = psi_basis(X)
    if len(basis) >= grid.a:
        raise RankError(f"rank(X) = {len(basis)} must be below a = {grid.a}")
    e = pointwise_orthocomplement(grid, [stack_field(grid, psi) for psi in basis])
    f = zak_inverse(grid, assemble_omega(grid, e))
    # |e| = 1 on Sigma gives ||F||^2 = 1/a
    return f * np.sqrt(grid.a)
