"""Seeded random inputs shared by the verification suites and tests."""

from __future__ import annotations

import numpy as np

from .heisenberg import GridSpec, GroupElement, PhasePoint
from .weyl import FactoredOperator


def random_signal(grid: GridSpec, rng) -> np.ndarray:
    return rng.normal(size=grid.d) + 1j * rng.normal(size=grid.d)


def random_omega(grid: GridSpec, rng) -> np.ndarray:
    shape = (grid.L, grid.M)
    return rng.normal(size=shape) + 1j * rng.normal(size=shape)


def random_step_function(grid: GridSpec, rng, levels: int = 6) -> np.ndarray:
    """Piecewise constant on 2 x 4 blocks of Omega, moduli in [0.1, 2)."""
    vals = rng.uniform(0.1, 2.0, size=levels) * np.exp(2j * np.pi * rng.uniform(size=levels))
    bj = np.arange(grid.L) * 2 // grid.L
    bm = np.arange(grid.M) * 4 // grid.M
    labels = rng.integers(0, levels, size=(2, 4))
    return vals[labels[bj[:, None], bm[None, :]]]


def random_point(grid: GridSpec, rng, spread: int | None = None) -> PhasePoint:
    """Grid point with numerators in [-spread, spread); default spread is 2d."""
    s = 2 * grid.d if spread is None else spread
    p, q = rng.integers(-s, s, size=2)
    return PhasePoint(grid, int(p), int(q))


def random_group_element(grid: GridSpec, rng) -> GroupElement:
    return GroupElement(random_point(grid, rng), complex(np.exp(2j * np.pi * rng.uniform())))


def random_factored(grid: GridSpec, rank: int, rng) -> FactoredOperator:
    return FactoredOperator(grid, [(random_signal(grid, rng), random_signal(grid, rng))
                                   for _ in range(rank)])


def gaussian_signal(grid: GridSpec, center: float | None = None, width: float = 0.5) -> np.ndarray:
    """Periodized Gaussian exp(-pi ((t - c)/width)^2) on [0, L)."""
    c = grid.L / 2 if center is None else center
    t = grid.t
    out = np.zeros(grid.d)
    for shift in (-grid.L, 0, grid.L):
        out += np.exp(-np.pi * ((t - c + shift) / width) ** 2)
    return out.astype(complex)
