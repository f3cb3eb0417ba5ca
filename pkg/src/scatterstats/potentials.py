"""Layer-potential evaluations away from the scatterer.

The scattered wave is represented either from the boundary Neumann data,

    u_s(x) = - int_Gamma Phi(x, z) dudn(z) dsigma(z),

or, outside the circular interface of radius R, from its Cauchy data there,

    u_s(x) = int_Sigma { dPhi/dn(x, z) u_s(z) - Phi(x, z) dudn_s(z) } dsigma(z).

The sign conventions are tied to the combined-field solve in :mod:`.bem`;
the circle reference solution and the mutual consistency of both
representations pin them down (see the test suite).  Far-field variants
replace Phi by the plane-wave kernel of the outgoing asymptotics.

All quadratures are plain trapezoidal rules on equidistant nodes, which is
spectrally accurate here because every integrand is smooth and periodic:
evaluation points keep a positive clearance of 0.1 wavelengths from the
integration curve.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import ContainmentError, DimensionError, DomainError
from .specfun import hankel_pair

CLEARANCE_WAVELENGTHS = 0.1


@dataclass(frozen=True)
class ArtificialInterface:
    """Circle of radius R with n_sigma equidistant nodes."""

    radius: float
    n_sigma: int

    def __post_init__(self):
        if self.radius <= 0:
            raise DimensionError("interface radius must be positive")
        if self.n_sigma < 16 or self.n_sigma % 2 != 0:
            raise DimensionError("interface node count must be even and >= 16")

    @property
    def angles(self):
        return 2.0 * np.pi * np.arange(self.n_sigma) / self.n_sigma

    @property
    def nodes(self):
        a = self.angles
        return self.radius * np.stack([np.cos(a), np.sin(a)], axis=1)

    @property
    def normals(self):
        return self.nodes / self.radius

    @property
    def weight(self):
        """Trapezoidal weight per node: jacobian R times step 2 pi / n."""
        return 2.0 * np.pi * self.radius / self.n_sigma


@dataclass(frozen=True)
class CauchyData:
    """Scattered-wave trace and normal derivative at the interface nodes."""

    interface: ArtificialInterface
    u: np.ndarray      # (n_sigma,) complex
    dn_u: np.ndarray   # (n_sigma,) complex
    wavenumber: float

    def __post_init__(self):
        if len(self.u) != self.interface.n_sigma or len(self.dn_u) != self.interface.n_sigma:
            raise DimensionError("Cauchy vectors do not match the interface")

    def stacked(self):
        """The 2n vector [u; du/dn] the statistics modules operate on."""
        return np.concatenate([self.u, self.dn_u])


def _as_points(x):
    pts = np.asarray(x, dtype=np.float64)
    single = pts.ndim == 1
    pts = np.atleast_2d(pts)
    if pts.shape[-1] != 2:
        raise DimensionError("points must be 2-vectors")
    return pts, single


def _as_directions(xhat):
    d, single = _as_points(xhat)
    if (np.abs(np.hypot(d[:, 0], d[:, 1]) - 1.0) > 1e-12).any():
        raise DomainError("directions must be unit vectors to 1e-12")
    return d, single


def incident_plane_wave(wavenumber, direction, points):
    """e^{i kappa <d, x>} at the given points."""
    pts, single = _as_points(points)
    out = np.exp(1j * wavenumber * (pts @ np.asarray(direction, dtype=np.float64)))
    return out[0] if single else out


def eval_scattered_from_gamma(density, x):
    """Scattered field from the boundary representation at exterior points."""
    pts, single = _as_points(x)
    boundary = density.boundary
    kappa = density.context.wavenumber
    dx = pts[:, None, :] - boundary.nodes[None, :, :]
    r = np.hypot(dx[:, :, 0], dx[:, :, 1])
    if (r < 1e-6).any():
        raise DomainError("evaluation point within 1e-6 of a boundary node")
    h0, _ = hankel_pair(kappa * r)
    w = boundary.jacobians * (2.0 * np.pi / boundary.n)
    out = -(0.25j * h0) @ (w * density.values)
    return out[0] if single else out


def farfield_kernel(wavenumber, xhat, z):
    """Phi_inf(xhat, z) = e^{i pi/4}/sqrt(8 kappa pi) e^{-i kappa <xhat, z>}."""
    prefactor = np.exp(0.25j * np.pi) / np.sqrt(8.0 * np.pi * wavenumber)
    return prefactor * np.exp(-1j * wavenumber * (xhat @ z.T))


def farfield_from_gamma(density, xhat):
    """Far-field pattern from the boundary representation."""
    d, single = _as_directions(xhat)
    boundary = density.boundary
    kappa = density.context.wavenumber
    w = boundary.jacobians * (2.0 * np.pi / boundary.n)
    out = -farfield_kernel(kappa, d, boundary.nodes) @ (w * density.values)
    return out[0] if single else out


def cauchy_on_sigma(density, interface):
    """Cauchy data of the scattered wave at the interface nodes."""
    boundary = density.boundary
    if boundary.max_radius >= interface.radius:
        raise ContainmentError(
            f"boundary realization (max radius {boundary.max_radius:.4f}) is "
            f"not strictly inside the interface R = {interface.radius:g}")
    kappa = density.context.wavenumber
    z = interface.nodes
    dx = z[:, None, :] - boundary.nodes[None, :, :]
    r = np.hypot(dx[:, :, 0], dx[:, :, 1])
    h0, h1 = hankel_pair(kappa * r)
    w = boundary.jacobians * (2.0 * np.pi / boundary.n)
    weighted = w * density.values
    u = -(0.25j * h0) @ weighted
    radial = (dx[:, :, 0] * interface.normals[:, 0:1]
              + dx[:, :, 1] * interface.normals[:, 1:2])
    du = (0.25j * kappa * h1 * radial / r) @ weighted
    return CauchyData(interface=interface, u=u, dn_u=du, wavenumber=kappa)


def _check_clearance(interface, wavenumber, pts):
    clearance = CLEARANCE_WAVELENGTHS * 2.0 * np.pi / wavenumber
    radii = np.hypot(pts[:, 0], pts[:, 1])
    if (radii < (interface.radius + clearance) * (1.0 - 1e-12)).any():
        raise DomainError(
            f"evaluation points must satisfy |x| >= R + {CLEARANCE_WAVELENGTHS} "
            f"wavelengths = {interface.radius + clearance:.4f}")


def sigma_field_rows(interface, wavenumber, points):
    """Evaluation functionals g with u_s(x) = g . [u; du/dn] on Sigma.

    Returns an (npoints, 2 n_sigma) complex matrix; the first block carries
    the double-layer kernel against u, the second block -Phi against du/dn.
    """
    pts, _ = _as_points(points)
    _check_clearance(interface, wavenumber, pts)
    z = interface.nodes
    dx = pts[:, None, :] - z[None, :, :]
    r = np.hypot(dx[:, :, 0], dx[:, :, 1])
    h0, h1 = hankel_pair(wavenumber * r)
    to_node = -(dx[:, :, 0] * interface.normals[None, :, 0]
                + dx[:, :, 1] * interface.normals[None, :, 1])  # <z - x, n_z>
    double = -0.25j * wavenumber * h1 * to_node / r
    single = 0.25j * h0
    return interface.weight * np.concatenate([double, -single], axis=1)


def sigma_farfield_rows(interface, wavenumber, xhat):
    """Far-field evaluation functionals against the stacked Cauchy data."""
    d, _ = _as_directions(xhat)
    phi_inf = farfield_kernel(wavenumber, d, interface.nodes)
    dn_phi_inf = -1j * wavenumber * (d @ interface.normals.T) * phi_inf
    return interface.weight * np.concatenate([dn_phi_inf, -phi_inf], axis=1)


def eval_scattered_from_sigma(cauchy, x):
    """Scattered field outside the interface from its Cauchy data."""
    pts, single = _as_points(x)
    rows = sigma_field_rows(cauchy.interface, cauchy.wavenumber, pts)
    out = rows @ cauchy.stacked()
    return out[0] if single else out


def farfield_from_sigma(cauchy, xhat):
    """Far-field pattern from the interface Cauchy data."""
    d, single = _as_directions(xhat)
    rows = sigma_farfield_rows(cauchy.interface, cauchy.wavenumber, d)
    out = rows @ cauchy.stacked()
    return out[0] if single else out
