"""Named verification suites. Each returns a list of check records."""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import samples
from .heisenberg import GridSpec, GroupElement, LatticeSpec, PhasePoint, nyquist_interior, rho_matrix
from .nullfield import kernel_vector
from .periodization import (distribution_compare, fit_scalar, full_lattice_periodization, fw_coeffs,
                            is_n_periodic, mg_alpha_table, mult_op, periodize)
from .weyl import alpha_full, weyl_transform
from .zak import e_mn, zak_covariance_check, zak_forward, zak_inverse, zak_norm
from .heisenberg import norm as signal_norm


class ConfigError(ValueError):
    """Suite parameters violate a precondition."""


@dataclass
class Check:
    name: str
    max_error: float
    tolerance: float
    passed: bool


def _check(name, err, tol) -> Check:
    err = float(err)
    return Check(name, err, float(tol), bool(err <= tol))


def dual_window_values(grid: GridSpec, table) -> np.ndarray:
    """Restrict a (d, d) phase-function table to the (aL, M) dual window."""
    K, Lw = LatticeSpec(grid).dual_shape
    k = np.arange(K)[:, None] * (grid.M // grid.a)
    l = np.arange(Lw)[None, :] * grid.L
    return table[k % grid.d, l % grid.d]


def eq1(grid: GridSpec, rng=None, tol=1e-10, **_) -> list[Check]:
    lat = LatticeSpec(grid)
    K, Lw = lat.dual_shape
    interior = nyquist_interior(lat)
    err_all = err_int = 0.0
    for k in range(K):
        for l in range(Lw):
            c = fw_coeffs(grid, rho_matrix(GroupElement(lat.dual_point(k, l))))
            delta = np.zeros((K, Lw))
            delta[k, l] = 1.0
            dev = np.abs(c - delta)
            err_all = max(err_all, dev.max())
            if interior[k, l]:
                err_int = max(err_int, dev[interior].max())
    return [_check("eq1_orthonormality_interior", err_int, tol),
            _check("eq1_orthonormality_full_window", err_all, tol)]


def zak(grid: GridSpec, rng, tol=1e-12, trials=100, **_) -> list[Check]:
    unit = rt = 0.0
    for _ in range(trials):
        phi = samples.random_signal(grid, rng)
        Z = zak_forward(grid, phi)
        unit = max(unit, abs(zak_norm(grid, Z) / signal_norm(grid, phi) - 1))
        rt = max(rt, np.abs(zak_inverse(grid, Z) - phi).max())
    basis = 0.0
    th = np.arange(grid.L)[:, None] / grid.L
    sg = np.arange(grid.M)[None, :] / grid.M
    for m in range(-2, 3):
        for n in range(grid.L):
            expect = np.exp(-2j * np.pi * n * th) * np.exp(2j * np.pi * m * sg)
            basis = max(basis, np.abs(zak_forward(grid, e_mn(grid, m, n)) - expect).max())
    return [_check("zak_unitarity", unit, tol), _check("zak_round_trip", rt, tol),
            _check("zak_e_mn_image", basis, tol)]


def covariance(grid: GridSpec, rng, tol=1e-10, trials=100, **_) -> list[Check]:
    err = max(zak_covariance_check(grid, samples.random_group_element(grid, rng),
                                   samples.random_signal(grid, rng)) for _ in range(trials))
    iso = 0.0
    th = np.arange(grid.L)[:, None] / grid.L
    sg = np.arange(grid.M)[None, :] / grid.M
    for _ in range(trials // 4):
        m1, m2 = (int(x) for x in rng.integers(-5, 6, size=2))
        phi = samples.random_signal(grid, rng)
        g = GroupElement(PhasePoint(grid, m1 * grid.M, m2 * grid.L), (-1.0) ** (m1 * m2))
        lhs = zak_forward(grid, rho_matrix(g) @ phi)
        rhs = np.exp(2j * np.pi * (m2 * sg + m1 * th)) * zak_forward(grid, phi)
        iso = max(iso, np.abs(lhs - rhs).max())
    return [_check("zak_covariance", err, tol), _check("zak_integer_lattice_phase", iso, tol)]


def lemma41(grid: GridSpec, rng, tol=1e-10, trials=10, levels=32, **_) -> list[Check]:
    mismatches = 0
    per = 0.0
    absval = 0.0
    for _ in range(trials):
        g = samples.random_step_function(grid, rng)
        top = np.abs(g).max()
        for lam in np.linspace(0, 1.1 * top, levels):
            cg, cm = distribution_compare(grid, g, lam)
            mismatches += int(cg != cm)
        Mg = mult_op(grid, g)
        per = max(per, is_n_periodic(grid, Mg)[1])
        w, V = np.linalg.eigh(Mg.conj().T @ Mg)
        sqrt_abs = (V * np.sqrt(np.clip(w, 0, None))) @ V.conj().T
        absval = max(absval, np.abs(sqrt_abs - mult_op(grid, np.abs(g))).max())
    return [_check("lemma41_distribution_mismatches", mismatches, 0),
            _check("lemma41_mg_periodic", per, tol),
            _check("lemma41_abs_mg", absval, 1e-9)]


def lemma42(grid: GridSpec, rng, tol=1e-10, trials=10, **_) -> list[Check]:
    S, T = [], []
    for _ in range(trials):
        X = samples.random_factored(grid, 1, rng)
        S.append(full_lattice_periodization(X))
        T.append(periodize(X))
    kappa, resid = fit_scalar(np.array(S), np.array(T))
    return [_check("lemma42_proportionality", resid, tol),
            _check("lemma42_kappa_equals_1_over_a", abs(kappa - 1 / grid.a), tol)]


def lemma43(grid: GridSpec, rng, tol=1e-8, trials=20, rank=None, **_) -> list[Check]:
    rank = grid.a - 1 if rank is None else rank
    if rank >= grid.a:
        raise ConfigError(f"lemma43 needs rank < a, got rank={rank}, a={grid.a}")
    worst = 0.0
    for i in range(trials):
        r = 1 + i % rank if rank > 0 else 0
        X = samples.random_factored(grid, r, rng)
        Xt = periodize(X)
        f = kernel_vector(X)
        scale = np.linalg.norm(Xt, 2)
        worst = max(worst, np.linalg.norm(Xt @ f) / scale if scale else 0.0)
    return [_check("lemma43_kernel_vector", worst, tol)]


def lemma45(grid: GridSpec, rng, tol=1e-10, trials=20, **_) -> list[Check]:
    err = 0.0
    zero = 0.0
    off = np.arange(LatticeSpec(grid).dual_shape[0]) % grid.a != 0
    for _ in range(trials):
        g = samples.random_omega(grid, rng)
        c = fw_coeffs(grid, mult_op(grid, g))
        err = max(err, np.abs(c - mg_alpha_table(grid, g)).max())
        zero = max(zero, np.abs(c[off]).max())
    return [_check("lemma45_closed_form", err, tol), _check("lemma45_zero_pattern", zero, tol)]


def thm46(grid: GridSpec, rng, tol=1e-8, trials=20, rank=None, **_) -> list[Check]:
    err = 0.0
    for i in range(trials):
        X = samples.random_factored(grid, rank if rank else 1 + i % 3, rng)
        lhs = fw_coeffs(grid, periodize(X))
        rhs = dual_window_values(grid, alpha_full(grid, X.matrix()))
        err = max(err, np.abs(lhs - rhs).max())
    return [_check("thm46_coefficient_identity", err, tol)]


def inversion(grid: GridSpec, rng, tol=1e-10, trials=20, **_) -> list[Check]:
    d = grid.d
    ef = ex = 0.0
    for _ in range(trials):
        f = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        ef = max(ef, np.abs(alpha_full(grid, weyl_transform(grid, f)) - f).max())
        X = rng.normal(size=(d, d)) + 1j * rng.normal(size=(d, d))
        ex = max(ex, np.linalg.norm(weyl_transform(grid, alpha_full(grid, X)) - X, 2))
    return [_check("inversion_alpha_of_weyl", ef, tol), _check("inversion_weyl_of_alpha", ex, tol)]


SUITES = {
    "eq1": eq1,
    "zak": zak,
    "covariance": covariance,
    "lemma41": lemma41,
    "lemma42": lemma42,
    "lemma43": lemma43,
    "lemma45": lemma45,
    "thm46": thm46,
    "inversion": inversion,
}

RANDOMIZED = set(SUITES) - {"eq1"}


def run_suite(name: str, grid: GridSpec, seed: int | None = None, tol: float | None = None,
              rank: int | None = None) -> dict:
    if name not in SUITES:
        raise KeyError(name)
    if name in RANDOMIZED and seed is None:
        raise ConfigError(f"suite {name!r} is randomized and needs a seed")
    rng = np.random.default_rng(seed)
    kwargs = {"rank": rank}
    if tol is not None:
        kwargs["tol"] = tol
    checks = SUITES[name](grid, rng, **kwargs)
    return {
        "suite": name,
        "grid": grid.as_dict(),
        "seed": seed,
        "checks": [asdict(c) for c in checks],
        "passed": all(c.passed for c in checks),
    }
