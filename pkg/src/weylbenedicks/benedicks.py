"""Numerical walk through the Benedicks argument for a finite-rank X.

For each shift v: X^v = X rho(s(v))^*, its periodization X~^v, the finite
section N_v = (B - v) cap N-perp of the thresholded support B of alpha(X),
the truncated reconstruction sum_{n' in N_v} alpha(X^v)(n') rho(n', 1),
and the smallest singular value of X~^v.

The finite model has no analogue of Linnell's injectivity theorem (every sum
is finite there, and X~ itself is a finite non-injective sum), so the verdict
reports what the numbers show rather than re-deriving X = 0.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass, field

import numpy as np

from .heisenberg import GridError, GridSpec, GroupElement, LatticeSpec, PhasePoint, rho_apply, rho_matrix
from .periodization import periodize
from .weyl import FactoredOperator, alpha_at, alpha_full, check_phase_function

ZERO_RTOL = 1e-9
INJECTIVE_RTOL = 1e-9
RESIDUAL_RTOL = 1e-6


@dataclass
class SupportSet:
    grid: GridSpec
    mask: np.ndarray  # (d, d) bool, indexed [p, q]
    threshold: float

    @property
    def count(self) -> int:
        return int(self.mask.sum())

    @property
    def measure(self) -> float:
        return self.count / self.grid.d

    def points(self) -> list[PhasePoint]:
        return [PhasePoint(self.grid, int(p), int(q)) for p, q in zip(*np.nonzero(self.mask))]

    def __contains__(self, w: PhasePoint) -> bool:
        c = w.canonical()
        return bool(self.mask[c.p, c.q])


def support_set(grid: GridSpec, alpha_x, threshold: float) -> SupportSet:
    if threshold < 0:
        raise ValueError("threshold must be nonnegative")
    alpha_x = check_phase_function(grid, alpha_x)
    return SupportSet(grid, np.abs(alpha_x) > threshold, float(threshold))


def shifted_operator(X: FactoredOperator, v: PhasePoint) -> FactoredOperator:
    """X rho(s(v))^* = sum_j phi_j (x) conj(rho(s(v)) psi_j)."""
    if v.grid != X.grid:
        raise GridError("shift lives on another grid")
    g = GroupElement(v)
    return FactoredOperator(X.grid, [(phi, rho_apply(g, psi)) for phi, psi in X.factors])


def finite_section(B: SupportSet, v: PhasePoint) -> list[tuple[int, int]]:
    """Dual window indices (k, l) with n' + v in B."""
    grid = B.grid
    lat = LatticeSpec(grid)
    K, Lw = lat.dual_shape
    d = grid.d
    k = np.arange(K)[:, None]
    l = np.arange(Lw)[None, :]
    p = (k * (grid.M // grid.a) + v.p) % d
    q = (l * grid.L + v.q) % d
    hit = B.mask[p, q]
    return [(int(a), int(b)) for a, b in zip(*np.nonzero(hit))]


def injectivity_probe(T) -> float:
    return float(np.linalg.svd(np.asarray(T), compute_uv=False)[-1])


def is_injective(T, rtol: float = INJECTIVE_RTOL) -> bool:
    s = np.linalg.svd(np.asarray(T), compute_uv=False)
    return bool(s[-1] > rtol * s[0])


def default_v_sample(grid: GridSpec, n: int = 8) -> list[PhasePoint]:
    """n x n sub-grid of phase space, x-major."""
    d = grid.d
    return [PhasePoint(grid, (i * d) // n, (j * d) // n) for i in range(n) for j in range(n)]


def linnell_probe(grid: GridSpec, support_size: int, trials: int, rng) -> list[float]:
    """sigma_min / sigma_max of random sums over small random subsets of N-perp."""
    lat = LatticeSpec(grid)
    K, Lw = lat.dual_shape
    out = []
    for _ in range(trials):
        flat = rng.choice(K * Lw, size=support_size, replace=False)
        T = np.zeros((grid.d, grid.d), dtype=complex)
        for f in sorted(flat):
            c = rng.normal() + 1j * rng.normal()
            T += c * rho_matrix(GroupElement(lat.dual_point(*divmod(int(f), Lw))))
        s = np.linalg.svd(T, compute_uv=False)
        out.append(float(s[-1] / s[0]))
    return out


@dataclass
class ShiftRecord:
    v_x: float
    v_y: float
    section_size: int
    norm: float
    sigma_min: float
    residual: float


@dataclass
class PipelineReport:
    grid: GridSpec
    threshold: float
    rank: int
    operator_norm: float
    max_alpha: float
    support_count: int
    support_measure: float
    records: list = field(default_factory=list)
    verdict: str = "zero"

    def to_dict(self) -> dict:
        out = asdict(self)
        out["grid"] = self.grid.as_dict()
        return out


def run_pipeline(X: FactoredOperator, threshold: float, v_sample=None, *,
                 residual_rtol: float = RESIDUAL_RTOL) -> PipelineReport:
    grid = X.grid
    rank = X.rank()
    if grid.a <= rank:
        raise ValueError(f"need a > rank(X), got a={grid.a}, rank={rank}")
    if v_sample is None:
        v_sample = default_v_sample(grid)
    lat = LatticeSpec(grid)
    K, Lw = lat.dual_shape

    Xm = X.matrix()
    xnorm = float(np.linalg.norm(Xm, 2))
    ax = alpha_full(grid, Xm)
    B = support_set(grid, ax, threshold)
    report = PipelineReport(grid, float(threshold), rank, xnorm, float(np.abs(ax).max()),
                            B.count, B.measure)

    for v in v_sample:
        Xv = shifted_operator(X, v)
        Xt = periodize(Xv)
        section = finite_section(B, v)
        coeffs = alpha_at(grid, Xv.matrix(), [lat.dual_point(k, l) for k, l in section])
        recon = np.zeros_like(Xt)
        for (k, l), c in zip(section, coeffs):
            recon += c * rho_matrix(GroupElement(lat.dual_point(k, l)))
        report.records.append(ShiftRecord(
            float(v.x), float(v.y), len(section), float(np.linalg.norm(Xt, 2)),
            injectivity_probe(Xt), float(np.linalg.norm(Xt - recon, 2))))

    norms = np.array([r.norm for r in report.records])
    residuals = np.array([r.residual for r in report.records])
    if np.all(norms <= ZERO_RTOL * xnorm):
        report.verdict = "zero"
    elif np.any(residuals > residual_rtol * xnorm):
        report.verdict = "inconsistent-truncation"
    else:
        report.verdict = "nonzero"
    return report
