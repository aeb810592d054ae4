from fractions import Fraction

import numpy as np
import pytest

from weylbenedicks import samples
from weylbenedicks.heisenberg import GroupElement, LatticeSpec, PhasePoint, inner, nyquist_interior, rho_matrix
from weylbenedicks.periodization import (distribution_compare, fit_scalar, full_lattice_periodization,
                                         fw_coeffs, g_functions, indicator_chi, is_n_periodic,
                                         mg_alpha_closed_form, mg_alpha_table, mult_op, periodize,
                                         reconstruct_from_coeffs, trace_tau, zak_diagonal)
from weylbenedicks.suites import dual_window_values
from weylbenedicks.weyl import FactoredOperator, alpha_full
from weylbenedicks.zak import zak_forward, zak_inverse


def dual_rho(grid, k, l):
    return rho_matrix(GroupElement(LatticeSpec(grid).dual_point(k, l)))


def brute_tau(grid, T):
    return sum(inner(grid, T @ indicator_chi(grid, h), indicator_chi(grid, h)) for h in range(grid.a))


def random_periodic(grid, rng, terms=6):
    K, Lw = LatticeSpec(grid).dual_shape
    T = mult_op(grid, samples.random_omega(grid, rng))
    for _ in range(terms):
        k, l = int(rng.integers(K)), int(rng.integers(Lw))
        T = T + (rng.normal() + 1j * rng.normal()) * dual_rho(grid, k, l)
    return T


def test_mult_op_definition(grid, rng):
    g = samples.random_omega(grid, rng)
    phi = samples.random_signal(grid, rng)
    direct = zak_inverse(grid, g * zak_forward(grid, phi))
    assert np.abs(mult_op(grid, g) @ phi - direct).max() < 1e-12
    assert np.abs(mult_op(grid, np.ones((grid.L, grid.M))) - np.eye(grid.d)).max() < 1e-12


def test_mult_op_homomorphism(grid, rng):
    g, h = samples.random_omega(grid, rng), samples.random_omega(grid, rng)
    Mg, Mh = mult_op(grid, g), mult_op(grid, h)
    assert np.abs(Mg @ Mh - mult_op(grid, g * h)).max() < 1e-10
    assert np.abs(Mg.conj().T - mult_op(grid, g.conj())).max() < 1e-12
    assert np.abs(Mg + 2 * Mh - mult_op(grid, g + 2 * h)).max() < 1e-12


def test_mult_op_spectrum_in_zak_domain(grid, rng):
    g = samples.random_omega(grid, rng)
    D = zak_diagonal(grid, mult_op(grid, g))
    assert np.abs(np.diag(D) - g.ravel()).max() < 1e-12
    assert np.abs(D - np.diag(np.diag(D))).max() < 1e-12
    ev = np.linalg.eigvals(mult_op(grid, g))
    # eigenvalue multiset, matched greedily
    remaining = list(g.ravel())
    for lam in ev:
        i = int(np.argmin(np.abs(np.array(remaining) - lam)))
        assert abs(remaining.pop(i) - lam) < 1e-9


def test_abs_mult_op(grid, rng):
    g = samples.random_omega(grid, rng)
    Mg = mult_op(grid, g)
    w, V = np.linalg.eigh(Mg.conj().T @ Mg)
    absM = (V * np.sqrt(np.clip(w, 0, None))) @ V.conj().T
    assert np.abs(absM - mult_op(grid, np.abs(g))).max() < 1e-9


def test_n_periodicity(grid, rng):
    lat = LatticeSpec(grid)
    K, Lw = lat.dual_shape
    for _ in range(10):
        k, l = int(rng.integers(K)), int(rng.integers(Lw))
        assert is_n_periodic(grid, dual_rho(grid, k, l))[0]
    assert is_n_periodic(grid, mult_op(grid, samples.random_omega(grid, rng)))[0]
    w = PhasePoint(grid, 1, 0)  # x = 1/M is not in (1/a)Z
    ok, dev = is_n_periodic(grid, rho_matrix(GroupElement(w)))
    assert not ok and dev > 0.1
    w = PhasePoint(grid, 0, 1)  # y = 1/L is not in Z
    assert not is_n_periodic(grid, rho_matrix(GroupElement(w)))[0]


def test_tau_definition(grid, rng):
    T = rng.normal(size=(grid.d, grid.d)) + 1j * rng.normal(size=(grid.d, grid.d))
    assert abs(trace_tau(grid, T) - brute_tau(grid, T)) < 1e-12
    assert abs(trace_tau(grid, np.eye(grid.d)) - 1) < 1e-15


def test_tau_of_dual_rho(grid4):
    K, Lw = LatticeSpec(grid4).dual_shape
    for k in range(K):
        for l in range(Lw):
            expect = 1.0 if (k, l) == (0, 0) else 0.0
            assert abs(trace_tau(grid4, dual_rho(grid4, k, l)) - expect) < 1e-10


def test_tau_is_tracial_state(grid, rng):
    for _ in range(5):
        A, B = random_periodic(grid, rng), random_periodic(grid, rng)
        assert abs(trace_tau(grid, A @ B) - trace_tau(grid, B @ A)) < 1e-10
        t = trace_tau(grid, A @ A.conj().T)
        assert t.real > 0 and abs(t.imag) < 1e-10
        assert abs(trace_tau(grid, A + 3 * B) - trace_tau(grid, A) - 3 * trace_tau(grid, B)) < 1e-10
        # on N-periodic operators, tau is the normalized plain trace
        assert abs(trace_tau(grid, A) - np.trace(A) / grid.d) < 1e-10


def test_tau_not_normalized_trace_off_algebra(grid, rng):
    T = rng.normal(size=(grid.d, grid.d)) + 0j
    assert abs(trace_tau(grid, T) - np.trace(T) / grid.d) > 1e-3


def test_fw_coeffs_matches_tau_definition(grid, rng):
    T = random_periodic(grid, rng)
    c = fw_coeffs(grid, T)
    K, Lw = LatticeSpec(grid).dual_shape
    for _ in range(20):
        k, l = int(rng.integers(K)), int(rng.integers(Lw))
        assert abs(c[k, l] - brute_tau(grid, T @ dual_rho(grid, k, l).conj().T)) < 1e-12


def test_fw_coeffs_delta(grid):
    K, Lw = LatticeSpec(grid).dual_shape
    for k, l in [(0, 0), (1, 0), (3, 5), (K - 1, Lw - 1)]:
        c = fw_coeffs(grid, dual_rho(grid, k, l))
        delta = np.zeros((K, Lw))
        delta[k, l] = 1
        assert np.abs(c - delta).max() < 1e-12


def test_fw_coeffs_zero_and_completeness(grid, rng):
    assert np.all(fw_coeffs(grid, np.zeros((grid.d, grid.d))) == 0)
    for _ in range(3):
        T = random_periodic(grid, rng)
        c = fw_coeffs(grid, T)
        assert abs(np.sum(np.abs(c) ** 2) - trace_tau(grid, T @ T.conj().T)) < 1e-9
        assert np.abs(reconstruct_from_coeffs(grid, c) - T).max() < 1e-9


def test_reconstruct_trivial(grid):
    K, Lw = LatticeSpec(grid).dual_shape
    c = np.zeros((K, Lw), dtype=complex)
    assert np.all(reconstruct_from_coeffs(grid, c) == 0)
    c[3, 2] = 1
    assert np.abs(reconstruct_from_coeffs(grid, c) - dual_rho(grid, 3, 2)).max() < 1e-15


def test_mult_op_coeffs_zero_pattern(grid, rng):
    c = fw_coeffs(grid, mult_op(grid, samples.random_omega(grid, rng)))
    off = np.arange(c.shape[0]) % grid.a != 0
    assert np.abs(c[off]).max() < 1e-12


def test_closed_form_constant(grid):
    g = np.ones((grid.L, grid.M))
    K, Lw = LatticeSpec(grid).dual_shape
    for k in range(K):
        for l in range(Lw):
            expect = 1.0 if (k, l) == (0, 0) else 0.0
            assert abs(mg_alpha_closed_form(grid, g, k, l) - expect) < 1e-12


def test_closed_form_window_check(grid):
    with pytest.raises(IndexError):
        mg_alpha_closed_form(grid, np.ones((grid.L, grid.M)), grid.a * grid.L, 0)


def test_closed_form_vs_trace_definition(grid, grid4, rng):
    for G in (grid, grid4):
        g = samples.random_omega(G, rng)
        c = fw_coeffs(G, mult_op(G, g))
        table = mg_alpha_table(G, g)
        K, Lw = LatticeSpec(G).dual_shape
        pointwise = np.array([[mg_alpha_closed_form(G, g, k, l) for l in range(Lw)] for k in range(K)])
        assert np.abs(table - pointwise).max() < 1e-12
        assert np.abs(c - pointwise).max() < 1e-10


def test_pure_exponential_single_coefficient(grid):
    """g = exp(2 pi i (a theta + sigma)); exhaustive scan locates its coefficient at (a^2, 1)."""
    th = np.arange(grid.L)[:, None] / grid.L
    sg = np.arange(grid.M)[None, :] / grid.M
    g = np.exp(2j * np.pi * (grid.a * th + sg))
    c = fw_coeffs(grid, mult_op(grid, g))
    hits = np.argwhere(np.abs(c) > 1e-9)
    assert hits.tolist() == [[grid.a ** 2, 1]]
    # exp(i pi l k/a) = exp(i pi a) and the integral is 1
    assert abs(c[grid.a ** 2, 1] - np.exp(1j * np.pi * grid.a)) < 1e-12


def test_g_functions_shift(grid, rng):
    phi, psi = samples.random_signal(grid, rng), samples.random_signal(grid, rng)
    gs = g_functions(grid, phi, psi)
    Zphi, Zpsi = zak_forward(grid, phi), zak_forward(grid, psi)
    step = grid.M // grid.a
    th = np.arange(grid.L) / grid.L
    for j, g in enumerate(gs):
        for m in range(grid.M):
            mm = m - j * step
            col = Zpsi[:, mm] if mm >= 0 else np.exp(-2j * np.pi * th) * Zpsi[:, mm + grid.M]
            assert np.abs(g[:, m] - Zphi[:, m] * col.conj()).max() < 1e-12


def test_periodize_zero(grid):
    assert np.all(periodize(FactoredOperator(grid)) == 0)


def test_periodize_is_periodic(grid4, rng):
    assert is_n_periodic(grid4, periodize(samples.random_factored(grid4, 2, rng)))[0]


def test_periodize_well_defined(grid, rng):
    X = samples.random_factored(grid, 3, rng)
    phis = np.array([f for f, _ in X.factors])
    psis = np.array([p for _, p in X.factors])
    A = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
    # sum_j phi_j (x) conj(psi_j) = sum_k phi'_k (x) conj(psi'_k) with phi' = A^T phi, psi' = A^-1^* psi
    phi2 = A.T @ phis
    psi2 = np.linalg.inv(A).conj() @ psis
    Y = FactoredOperator(grid, list(zip(phi2, psi2)))
    assert np.abs(X.matrix() - Y.matrix()).max() < 1e-10
    assert np.abs(periodize(X) - periodize(Y)).max() < 1e-10


def test_periodization_coefficient_identity(grid4, rng):
    for r in (1, 2, 3):
        X = samples.random_factored(grid4, r, rng)
        lhs = fw_coeffs(grid4, periodize(X))
        rhs = dual_window_values(grid4, alpha_full(grid4, X.matrix()))
        assert np.abs(lhs - rhs).max() < 1e-8


def test_full_lattice_proportional(grid, rng):
    S, T = [], []
    for _ in range(5):
        X = samples.random_factored(grid, 1, rng)
        S.append(full_lattice_periodization(X))
        T.append(periodize(X))
        n_cosets = grid.L * grid.M // grid.a
        assert abs(np.trace(S[-1]) - n_cosets * np.trace(X.matrix())) < 1e-9
    kappa, resid = fit_scalar(np.array(S), np.array(T))
    assert resid < 1e-10
    assert abs(kappa - 1 / grid.a) < 1e-12


def test_fit_scalar():
    B = np.arange(6.0).reshape(2, 3) + 1j
    kappa, resid = fit_scalar(0.5j * B, B)
    assert abs(kappa - 0.5j) < 1e-15 and resid < 1e-15


def test_distribution_trivial(grid, rng):
    g = samples.random_step_function(grid, rng)
    top = np.abs(g).max()
    assert distribution_compare(grid, g, 2 * top) == (0, 0)
    assert distribution_compare(grid, g, 0.0) == (1, 1)
    with pytest.raises(ValueError):
        distribution_compare(grid, g, -1.0)


def test_distribution_sweep(grid, rng):
    for _ in range(3):
        g = samples.random_step_function(grid, rng)
        mags = np.sort(np.unique(np.abs(g)))
        for lam in np.linspace(0, 1.2 * mags[-1], 32):
            cg, cm = distribution_compare(grid, g, lam)
            assert cg == cm
            # oracle: literal count
            assert cg == Fraction(int(sum(abs(v) > lam for v in g.ravel())), grid.L * grid.M)


def test_nyquist_mask(grid):
    mask = nyquist_interior(LatticeSpec(grid))
    assert mask.shape == (grid.a * grid.L, grid.M)
    assert mask[0, 0] and not mask[grid.a * grid.L // 2, 0] and not mask[0, grid.M // 2]
