"""Nystrom discretization and dense solve of the combined-field equation.

The unknown is the Neumann trace of the total wave on the boundary.  The
operator (1/2 + K* - i eta V) is discretized at the realization's nodes with
the classical global trigonometric quadrature for the logarithmic kernel
part: each kernel is split as

    kernel(t, s) = A(t, s) * ln(4 sin^2((t-s)/2)) + B(t, s)

where A and B are smooth and 2*pi-periodic; A is integrated with the
spectrally accurate log-quadrature weights and B with the trapezoidal rule.
Operator diagonals use the analytic limits (curvature term for K*).  The
scheme converges exponentially for analytic boundaries.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .errors import DimensionError, GeometryError, NumericalError
from .geometry import BoundaryRealization, parameter_grid
from .specfun import EULER_GAMMA, hankel_pair

_RESIDUAL_TOL = 1e-10
_CONDITION_LIMIT = 1e12


@dataclass(frozen=True)
class HelmholtzContext:
    """Wavenumber, coupling parameter and incident plane-wave direction."""

    wavenumber: float
    direction: tuple
    coupling: float

    def __post_init__(self):
        if not self.wavenumber > 0:
            raise DimensionError("wavenumber must be positive")
        if self.coupling * self.wavenumber <= 0:
            raise DimensionError("coupling eta must satisfy eta * kappa > 0")
        d = np.asarray(self.direction, dtype=np.float64)
        if d.shape != (2,) or abs(np.hypot(d[0], d[1]) - 1.0) > 1e-14:
            raise DimensionError("direction must be a unit 2-vector")

    @property
    def d(self):
        return np.asarray(self.direction, dtype=np.float64)


def plane_wave_context(wavenumber, direction, coupling=None):
    """Context with a normalized direction; coupling defaults to kappa."""
    d = np.asarray(direction, dtype=np.float64)
    norm = np.hypot(d[0], d[1])
    if norm == 0:
        raise DimensionError("direction must be nonzero")
    if coupling is None:
        coupling = wavenumber
    return HelmholtzContext(wavenumber=float(wavenumber),
                            direction=(float(d[0] / norm), float(d[1] / norm)),
                            coupling=float(coupling))


@dataclass(frozen=True)
class NeumannDensity:
    """Neumann data of the total wave at the boundary nodes."""

    boundary: BoundaryRealization
    values: np.ndarray  # (n,) complex
    context: HelmholtzContext

    def __post_init__(self):
        if len(self.values) != self.boundary.n:
            raise DimensionError("density length does not match the boundary")


@lru_cache(maxsize=8)
def _log_weights(n):
    """Quadrature weights R_m for the ln(4 sin^2((t-s)/2)) factor."""
    m = np.arange(n)
    k = np.arange(1, n // 2)
    cosines = np.cos(2.0 * np.pi * np.outer(m, k) / n)
    r = -(4.0 * np.pi / n) * (cosines @ (1.0 / k))
    r -= (4.0 * np.pi / n**2) * np.where(m % 2 == 0, 1.0, -1.0)
    r.setflags(write=False)
    return r


def incident_trace(ctx, boundary):
    """Dirichlet and Neumann traces of the incident plane wave at the nodes."""
    phase = np.exp(1j * ctx.wavenumber * (boundary.nodes @ ctx.d))
    neumann = 1j * ctx.wavenumber * (boundary.normals @ ctx.d) * phase
    return phase, neumann


def assemble_cfie(ctx, boundary):
    """Dense Nystrom matrix of (1/2 + K* - i eta V) acting on nodal values."""
    n = boundary.n
    if n % 2 != 0:
        raise DimensionError("node count must be even")
    if (boundary.jacobians < 1e-10).any():
        raise GeometryError("degenerate jacobian in boundary realization")
    kappa = ctx.wavenumber
    x = boundary.nodes
    jac = boundary.jacobians
    t = parameter_grid(n)

    diff = x[:, None, :] - x[None, :, :]
    r = np.sqrt(diff[:, :, 0]**2 + diff[:, :, 1]**2)
    np.fill_diagonal(r, 1.0)  # placeholder, diagonals set analytically
    kr = kappa * r

    h0, h1 = hankel_pair(kr)
    j0, j1 = h0.real, h1.real

    dt = t[:, None] - t[None, :]
    lattice = np.log(4.0 * np.sin(dt / 2.0)**2 + np.eye(n))

    # single layer: M = (i/4) H0(kappa r) |gamma'|
    m1 = -(1.0 / (4.0 * np.pi)) * j0 * jac[None, :]
    m2 = (0.25j * h0) * jac[None, :] - m1 * lattice
    np.fill_diagonal(m1, -jac / (4.0 * np.pi))
    np.fill_diagonal(m2, (0.25j - EULER_GAMMA / (2.0 * np.pi)
                          - np.log(kappa * jac / 2.0) / (2.0 * np.pi)) * jac)

    # adjoint double layer: K = (i kappa/4) H1(kappa r) <n_i, x_j - x_i>/r |gamma'|
    theta = -(boundary.normals[:, None, 0] * diff[:, :, 0]
              + boundary.normals[:, None, 1] * diff[:, :, 1])
    theta_over_r = theta / r
    k1 = -(kappa / (4.0 * np.pi)) * j1 * theta_over_r * jac[None, :]
    k2 = (0.25j * kappa * h1) * theta_over_r * jac[None, :] \
        - k1 * lattice
    np.fill_diagonal(k1, 0.0)
    curv = (boundary.normals * boundary.second_derivatives).sum(axis=1)
    np.fill_diagonal(k2, curv / (4.0 * np.pi))

    weights = _log_weights(n)
    idx = (np.arange(n)[:, None] - np.arange(n)[None, :]) % n
    r_mat = weights[idx]
    h = 2.0 * np.pi / n

    v_op = r_mat * m1 + h * m2
    kstar_op = r_mat * k1 + h * k2
    return 0.5 * np.eye(n) + kstar_op - 1j * ctx.coupling * v_op


def solve_neumann(ctx, boundary):
    """Solve the combined-field equation for the total wave's Neumann data."""
    matrix = assemble_cfie(ctx, boundary)
    dirichlet, neumann = incident_trace(ctx, boundary)
    rhs = neumann - 1j * ctx.coupling * dirichlet
    values = np.linalg.solve(matrix, rhs)
    residual = np.abs(matrix @ values - rhs).max() / np.abs(rhs).max()
    if not residual <= _RESIDUAL_TOL:
        cond = float(np.linalg.cond(matrix))
        raise NumericalError(
            f"combined-field solve failed: residual {residual:.3e}, "
            f"condition estimate {cond:.3e} (limit {_CONDITION_LIMIT:.0e})")
    return NeumannDensity(boundary=boundary, values=values, context=ctx)
