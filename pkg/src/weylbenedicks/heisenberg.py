"""Finite cyclic model of the Heisenberg group and its Schrodinger representation.

Signals live on the cyclic grid t_n = n/M, n = 0..d-1 with d = L*M, so the
time axis is [0, L) with wraparound.  Phase-space points are stored by their
integer numerators: x = p/M (p mod d) and y = q/L (q mod d).  All phases are
computed as exp(i*pi*num/den) with ``num`` an exact integer reduced mod 2*den.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import numpy as np


class GridError(ValueError):
    """Invalid grid parameters or mismatched grids."""


class OffGridError(ValueError):
    """A coordinate does not lie on the sample grid."""


@dataclass(frozen=True)
class GridSpec:
    """Finite model parameters: M samples per unit, L unit periods, lattice a."""

    M: int
    L: int
    a: int

    def __post_init__(self):
        for name in ("M", "L", "a"):
            v = getattr(self, name)
            if not isinstance(v, (int, np.integer)) or isinstance(v, bool):
                raise GridError(f"{name} must be an integer, got {v!r}")
        if self.a < 2 or self.L < 2:
            raise GridError(f"need a >= 2 and L >= 2, got a={self.a}, L={self.L}")
        if self.M < 2 * self.a:
            raise GridError(f"need M >= 2a, got M={self.M}, a={self.a}")
        if self.M % self.a:
            raise GridError(f"a={self.a} must divide M={self.M}")

    @property
    def d(self) -> int:
        return self.L * self.M

    @property
    def t(self) -> np.ndarray:
        """Sample points n/M."""
        return np.arange(self.d) / self.M

    @classmethod
    def parse(cls, text: str) -> "GridSpec":
        """Parse ``"M,L,a"``."""
        try:
            M, L, a = (int(s) for s in text.split(","))
        except ValueError:
            raise GridError(f"grid must be 'M,L,a', got {text!r}") from None
        return cls(M, L, a)

    def as_dict(self) -> dict:
        return {"M": self.M, "L": self.L, "a": self.a}


def phase(num, den):
    """exp(i*pi*num/den) with integer ``num`` reduced exactly mod 2*den."""
    num = np.mod(np.asarray(num, dtype=np.int64), 2 * den)
    return np.exp(1j * np.pi * num / den)


def check_signal(grid: GridSpec, phi) -> np.ndarray:
    phi = np.asarray(phi, dtype=complex)
    if phi.shape != (grid.d,):
        raise GridError(f"signal must have length {grid.d}, got shape {phi.shape}")
    return phi


def inner(grid: GridSpec, phi, psi) -> complex:
    """Weighted inner product (1/M) sum phi * conj(psi)."""
    return complex(np.vdot(psi, phi)) / grid.M


def norm(grid: GridSpec, phi) -> float:
    return float(np.sqrt(np.sum(np.abs(phi) ** 2) / grid.M))


@dataclass(frozen=True, eq=False)
class PhasePoint:
    """Grid point w = (p/M, q/L).

    Numerators are kept as given (unreduced), since the half-phase
    exp(i*pi*x*y) of the representation depends on the representative.
    Equality and hashing are mod d in each coordinate.
    """

    grid: GridSpec
    p: int
    q: int

    @classmethod
    def from_coords(cls, grid: GridSpec, x, y) -> "PhasePoint":
        fx, fy = Fraction(x) * grid.M, Fraction(y) * grid.L
        if fx.denominator != 1 or fy.denominator != 1:
            raise OffGridError(f"({x}, {y}) is not on the grid (1/{grid.M})Z x (1/{grid.L})Z")
        return cls(grid, int(fx), int(fy))

    @property
    def x(self) -> Fraction:
        return Fraction(self.p, self.grid.M)

    @property
    def y(self) -> Fraction:
        return Fraction(self.q, self.grid.L)

    def canonical(self) -> "PhasePoint":
        d = self.grid.d
        return PhasePoint(self.grid, self.p % d, self.q % d)

    def _key(self):
        d = self.grid.d
        return (self.grid, self.p % d, self.q % d)

    def __eq__(self, other):
        if not isinstance(other, PhasePoint):
            return NotImplemented
        return self._key() == other._key()

    def __hash__(self):
        return hash(self._key())

    def _check(self, other: "PhasePoint"):
        if other.grid != self.grid:
            raise GridError("phase points live on different grids")

    def __add__(self, other: "PhasePoint") -> "PhasePoint":
        self._check(other)
        return PhasePoint(self.grid, self.p + other.p, self.q + other.q)

    def __sub__(self, other: "PhasePoint") -> "PhasePoint":
        self._check(other)
        return PhasePoint(self.grid, self.p - other.p, self.q - other.q)

    def __neg__(self) -> "PhasePoint":
        return PhasePoint(self.grid, -self.p, -self.q)

    def __repr__(self):
        return f"PhasePoint(x={self.x}, y={self.y})"


@dataclass(frozen=True)
class GroupElement:
    point: PhasePoint
    z: complex = 1.0

    def __post_init__(self):
        if abs(abs(self.z) - 1.0) > 1e-12:
            raise ValueError(f"|z| must be 1, got {abs(self.z)!r}")

    @property
    def grid(self) -> GridSpec:
        return self.point.grid

    def reduced(self) -> "GroupElement":
        """Same operator rho(g), with coordinates reduced into [0, L) x [0, M).

        Shifting p by k*d and q by j*d multiplies rho by (-1)^(p0*j + k*q0 + k*j*d);
        that sign is moved into z.
        """
        d = self.grid.d
        k, p0 = divmod(self.point.p, d)
        j, q0 = divmod(self.point.q, d)
        sign = -1.0 if (p0 * j + k * q0 + k * j * d) % 2 else 1.0
        return GroupElement(PhasePoint(self.grid, p0, q0), self.z * sign)

    def isclose(self, other: "GroupElement", tol: float = 1e-12) -> bool:
        u, v = self.reduced(), other.reduced()
        return u.point == v.point and abs(u.z - v.z) <= tol


def identity(grid: GridSpec) -> GroupElement:
    return GroupElement(PhasePoint(grid, 0, 0), 1.0)


def group_mul(g: GroupElement, h: GroupElement) -> GroupElement:
    """(x, y, z)(x', y', z') = (x+x', y+y', z z' exp(i pi (x y' - y x')))."""
    if g.grid != h.grid:
        raise GridError("group elements live on different grids")
    u, v = g.point, h.point
    z = g.z * h.z * complex(phase(u.p * v.q - u.q * v.p, g.grid.d))
    return GroupElement(u + v, z).reduced()


def group_inv(g: GroupElement) -> GroupElement:
    return GroupElement(-g.point, np.conj(g.z)).reduced()


def pairing_e(w: PhasePoint, v: PhasePoint) -> complex:
    """exp(2 pi i (x y' - y x'))."""
    w._check(v)
    return complex(phase(2 * (w.p * v.q - w.q * v.p), w.grid.d))


def cocycle_psi(w: PhasePoint, v: PhasePoint) -> complex:
    """Scalar part of psi(w, v) = (0, 0, exp(i pi (x y' - y x')))."""
    w._check(v)
    return complex(phase(w.p * v.q - w.q * v.p, w.grid.d))


def section_s(w: PhasePoint) -> GroupElement:
    return GroupElement(w, 1.0)


def project(g: GroupElement) -> PhasePoint:
    return g.point


def _rho_phases(g: GroupElement) -> np.ndarray:
    grid = g.grid
    n = np.arange(grid.d, dtype=np.int64)
    p, q = g.point.p, g.point.q
    # x*y + 2*y*t_n = (p*q + 2*q*n) / d
    return g.z * phase(p * q + 2 * q * n, grid.d)


def rho_apply(g: GroupElement, phi) -> np.ndarray:
    """(rho(x, y, z) phi)(t) = z exp(i pi (x y + 2 y t)) phi(t + x), cyclic in t."""
    grid = g.grid
    phi = check_signal(grid, phi)
    idx = (np.arange(grid.d) + g.point.p) % grid.d
    return _rho_phases(g) * phi[idx]


def rho_matrix(g: GroupElement) -> np.ndarray:
    d = g.grid.d
    n = np.arange(d)
    R = np.zeros((d, d), dtype=complex)
    R[n, (n + g.point.p) % d] = _rho_phases(g)
    return R


@dataclass(frozen=True)
class LatticeSpec:
    """N = Z x aZ with generators (1, 0), (0, a); dual N-perp = (1/a)Z x Z."""

    grid: GridSpec

    @property
    def generators(self) -> tuple[PhasePoint, PhasePoint]:
        g = self.grid
        return PhasePoint(g, g.M, 0), PhasePoint(g, 0, g.a * g.L)

    @property
    def dual_generators(self) -> tuple[PhasePoint, PhasePoint]:
        g = self.grid
        return PhasePoint(g, g.M // g.a, 0), PhasePoint(g, 0, g.L)

    @property
    def dual_shape(self) -> tuple[int, int]:
        return self.grid.a * self.grid.L, self.grid.M

    def dual_point(self, k: int, l: int) -> PhasePoint:
        """n' = (k/a, l)."""
        g = self.grid
        return PhasePoint(g, k * (g.M // g.a), l * g.L)

    def coset_points(self) -> list[PhasePoint]:
        """Distinct elements of N in the finite model: (k, l*a), k < L, l < M/a."""
        g = self.grid
        return [PhasePoint(g, k * g.M, l * g.a * g.L) for k in range(g.L) for l in range(g.M // g.a)]


def dual_window_points(lat: LatticeSpec) -> list[PhasePoint]:
    """n' = (k/a, l) for k = 0..aL-1, l = 0..M-1, k-major."""
    K, Lw = lat.dual_shape
    return [lat.dual_point(k, l) for k in range(K) for l in range(Lw)]


def nyquist_interior(lat: LatticeSpec) -> np.ndarray:
    """Boolean (aL, M) mask of window indices with |k| < aL/2 and |l| < M/2 (signed reps)."""
    K, Lw = lat.dual_shape
    k = np.arange(K)
    l = np.arange(Lw)
    ks = np.minimum(k, K - k)
    ls = np.minimum(l, Lw - l)
    return (2 * ks[:, None] < K) & (2 * ls[None, :] < Lw)
