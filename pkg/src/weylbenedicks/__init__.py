"""Finite-grid Heisenberg group, Zak and Fourier-Wigner transforms, and lattice
periodization of finite-rank operators."""

from .heisenberg import (GridSpec, GroupElement, LatticeSpec, PhasePoint, cocycle_psi,
                         dual_window_points, group_inv, group_mul, pairing_e, rho_apply,
                         rho_matrix, section_s)
from .periodization import (fw_coeffs, full_lattice_periodization, mg_alpha_closed_form, mult_op,
                            periodize, reconstruct_from_coeffs, trace_tau)
from .weyl import FactoredOperator, alpha_full, fourier_wigner, rank_one_matrix, weyl_transform
from .zak import zak_extend, zak_forward, zak_inverse

__version__ = "0.1.0"
