"""Independent references: Mie series for the sound-soft circle and the
brute-force correlation evaluation.

Everything here is deliberately self-contained (special functions and raw
coordinate arithmetic only) so it can serve as an oracle for the solver,
the potential evaluations and the low-rank statistics without sharing code
paths with them.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimensionError, DomainError, NumericalError
from .specfun import bessel_jn, bessel_yn

_MAX_MIE_ORDER = 60
_TAIL_TOL = 1e-16


@dataclass(frozen=True)
class MieSolution:
    """Separation-of-variables solution for a sound-soft circle."""

    radius: float
    wavenumber: float
    direction: tuple
    order: int

    @property
    def d_angle(self):
        return float(np.arctan2(self.direction[1], self.direction[0]))


def mie_solution(radius, wavenumber, direction, tail_tol=_TAIL_TOL):
    """Pick the smallest truncation order with a negligible series tail."""
    if radius <= 0 or wavenumber <= 0:
        raise DomainError("radius and wavenumber must be positive")
    d = np.asarray(direction, dtype=np.float64)
    d = d / np.hypot(d[0], d[1])
    ka = wavenumber * radius
    for m in range(_MAX_MIE_ORDER + 1):
        jm = bessel_jn(m, ka)
        hm = complex(jm, bessel_yn(m, ka))
        # both the scattered-field tail (J_m/H_m) and the Neumann-trace
        # tail (1/H_m) must be negligible
        if m > ka and abs(jm / hm) < tail_tol and 1.0 / abs(hm) < tail_tol:
            return MieSolution(radius=float(radius), wavenumber=float(wavenumber),
                               direction=(float(d[0]), float(d[1])), order=m)
    raise NumericalError(
        f"Mie series needs order > {_MAX_MIE_ORDER} for kappa*a = {ka:g}")


def _mode_table(sol, argument):
    """J_m and H_m for m = 0..order at a fixed argument."""
    j = np.array([bessel_jn(m, argument) for m in range(sol.order + 1)])
    y = np.array([bessel_yn(m, argument) for m in range(sol.order + 1)])
    return j, j + 1j * y


def mie_scattered(sol, x):
    """Scattered field of the sound-soft circle at exterior points."""
    pts = np.atleast_2d(np.asarray(x, dtype=np.float64))
    r = np.hypot(pts[:, 0], pts[:, 1])
    if (r < sol.radius * (1.0 - 1e-12)).any():
        raise DomainError("evaluation point inside the circular scatterer")
    theta = np.arctan2(pts[:, 1], pts[:, 0]) - sol.d_angle
    ka = sol.wavenumber * sol.radius
    j_a, h_a = _mode_table(sol, ka)
    out = np.zeros(len(pts), dtype=np.complex128)
    for m in range(sol.order + 1):
        eps = 1.0 if m == 0 else 2.0
        h_r = bessel_jn(m, sol.wavenumber * r) + 1j * bessel_yn(m, sol.wavenumber * r)
        out -= eps * (1j**m) * (j_a[m] / h_a[m]) * h_r * np.cos(m * theta)
    return out if np.ndim(x) > 1 else out[0]


def mie_neumann(sol, phi):
    """Neumann data of the total wave on the circle, via the Wronskian."""
    phi = np.asarray(phi, dtype=np.float64)
    ka = sol.wavenumber * sol.radius
    _, h_a = _mode_table(sol, ka)
    out = np.zeros(phi.shape, dtype=np.complex128)
    for m in range(sol.order + 1):
        eps = 1.0 if m == 0 else 2.0
        out += eps * (1j**m) * np.cos(m * (phi - sol.d_angle)) / h_a[m]
    return out * (-2j / (np.pi * sol.radius))


def mie_farfield(sol, xhat):
    """Far-field pattern of the circle for unit directions ``xhat``."""
    d = np.atleast_2d(np.asarray(xhat, dtype=np.float64))
    if (np.abs(np.hypot(d[:, 0], d[:, 1]) - 1.0) > 1e-12).any():
        raise DomainError("far-field directions must be unit vectors")
    theta = np.arctan2(d[:, 1], d[:, 0]) - sol.d_angle
    ka = sol.wavenumber * sol.radius
    j_a, h_a = _mode_table(sol, ka)
    out = np.zeros(len(d), dtype=np.complex128)
    for m in range(sol.order + 1):
        eps = 1.0 if m == 0 else 2.0
        out -= eps * (j_a[m] / h_a[m]) * np.cos(m * theta)
    out *= np.sqrt(2.0 / (np.pi * sol.wavenumber)) * np.exp(-0.25j * np.pi)
    return out if np.ndim(xhat) > 1 else out[0]


def full_correlation_at(corr_matrix, interface, wavenumber, x):
    """O(n^2) double-sum evaluation of the field correlation at x.

    ``corr_matrix`` is the 2n x 2n Hermitian second-moment matrix of the
    stacked Cauchy data [u_s; du_s/dn] at the interface nodes.  The kernels
    are re-derived here rather than shared with the potential module, so
    this is an independent check of the low-rank evaluation path.
    """
    corr_matrix = np.asarray(corr_matrix)
    n = interface.n_sigma
    if corr_matrix.shape != (2 * n, 2 * n):
        raise DimensionError("correlation matrix does not match the interface")
    x = np.asarray(x, dtype=np.float64)
    if np.hypot(x[0], x[1]) <= interface.radius:
        raise DomainError("evaluation point must lie outside the interface")
    dx = x[None, :] - interface.nodes
    r = np.hypot(dx[:, 0], dx[:, 1])
    kr = wavenumber * r
    h0 = bessel_jn(0, kr) + 1j * bessel_yn(0, kr)
    h1 = bessel_jn(1, kr) + 1j * bessel_yn(1, kr)
    single = 0.25j * h0
    to_node = -dx  # z - x
    double = -0.25j * wavenumber * h1 \
        * (to_node * interface.normals).sum(axis=1) / r
    w = 2.0 * np.pi * interface.radius / n
    row = w * np.concatenate([double, -single])
    value = row @ (corr_matrix.astype(row.dtype) @ row.conj())
    return float(value.real)
