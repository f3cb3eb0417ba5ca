"""Parametrized closed boundary curves and their sampled realizations.

Supported shapes: the fixed kite-shaped obstacle, the kite with a random
radial Fourier perturbation attached along ``e_r(phi)``, and circles.  A
:class:`BoundaryRealization` carries everything the quadrature needs at the
``n`` equidistant parameter values ``phi_i = 2*pi*i/n``: nodes, tangents,
unit outward normals, jacobians ``|gamma'(phi_i)|`` and second derivatives
(for the curvature limits on operator diagonals).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .errors import DimensionError, GeometryError

KITE_COS = 5.0
KITE_COS2 = 3.25
KITE_SIN = 7.5

_MIN_JACOBIAN = 1e-10


def parameter_grid(n):
    """Equidistant parameter values 2*pi*i/n, i = 0..n-1."""
    return 2.0 * np.pi * np.arange(n) / n


def kite_point(phi):
    """Kite boundary point (5cos(phi) - 3.25cos(2phi), 7.5sin(phi))."""
    phi = np.asarray(phi, dtype=np.float64)
    return np.stack([KITE_COS * np.cos(phi) - KITE_COS2 * np.cos(2 * phi),
                     KITE_SIN * np.sin(phi)], axis=-1)


def kite_tangent(phi):
    """Analytic derivative of :func:`kite_point` with respect to phi."""
    phi = np.asarray(phi, dtype=np.float64)
    return np.stack([-KITE_COS * np.sin(phi) + 2 * KITE_COS2 * np.sin(2 * phi),
                     KITE_SIN * np.cos(phi)], axis=-1)


def _kite_second(phi):
    return np.stack([-KITE_COS * np.cos(phi) + 4 * KITE_COS2 * np.cos(2 * phi),
                     -KITE_SIN * np.sin(phi)], axis=-1)


@dataclass(frozen=True)
class RadialPerturbation:
    """Truncated random Fourier series r(phi, y) for the radius fluctuation.

    ``coefficients[k-1]`` is the amplitude ``a`` shared by the sin(k phi) and
    cos(k phi) modes; the parameter vector interleaves them as
    ``y = (y_1, y_2, ...)`` with ``y_{2k-1}`` driving sin and ``y_{2k}``
    driving cos.  The parameter dimension is ``2 * len(coefficients)``.
    """

    coefficients: np.ndarray

    @classmethod
    def cubic_decay(cls, dimension=1000, amplitude=1.0):
        """Amplitudes a_k = amplitude / k^3 for k = 1..dimension//2."""
        if dimension % 2 != 0 or dimension < 2:
            raise DimensionError("parameter dimension must be even and >= 2")
        k = np.arange(1, dimension // 2 + 1, dtype=np.float64)
        return cls(coefficients=amplitude / k**3)

    @property
    def dimension(self):
        return 2 * len(self.coefficients)

    def _split(self, y):
        y = np.asarray(y, dtype=np.float64)
        if y.shape != (self.dimension,):
            raise DimensionError(
                f"parameter vector has length {y.size}, expected {self.dimension}")
        return y[0::2], y[1::2]

    def radius(self, phi, y):
        """r(phi, y) = sum_k a_k (sin(k phi) y_{2k-1} + cos(k phi) y_{2k})."""
        y_sin, y_cos = self._split(y)
        phi = np.asarray(phi, dtype=np.float64)
        k = np.arange(1, len(self.coefficients) + 1, dtype=np.float64)
        arg = np.multiply.outer(phi, k)
        return np.sin(arg) @ (self.coefficients * y_sin) \
            + np.cos(arg) @ (self.coefficients * y_cos)

    def radius_derivative(self, phi, y):
        y_sin, y_cos = self._split(y)
        phi = np.asarray(phi, dtype=np.float64)
        k = np.arange(1, len(self.coefficients) + 1, dtype=np.float64)
        arg = np.multiply.outer(phi, k)
        return np.cos(arg) @ (k * self.coefficients * y_sin) \
            - np.sin(arg) @ (k * self.coefficients * y_cos)

    def radius_second_derivative(self, phi, y):
        y_sin, y_cos = self._split(y)
        phi = np.asarray(phi, dtype=np.float64)
        k = np.arange(1, len(self.coefficients) + 1, dtype=np.float64)
        arg = np.multiply.outer(phi, k)
        return -np.sin(arg) @ (k**2 * self.coefficients * y_sin) \
            - np.cos(arg) @ (k**2 * self.coefficients * y_cos)

    def radius_jet(self, phi, y):
        """(r, r', r'') sharing one pass of the trigonometric tables."""
        y_sin, y_cos = self._split(y)
        phi = np.asarray(phi, dtype=np.float64)
        k = np.arange(1, len(self.coefficients) + 1, dtype=np.float64)
        arg = np.multiply.outer(phi, k)
        sin_t, cos_t = np.sin(arg), np.cos(arg)
        a_sin = self.coefficients * y_sin
        a_cos = self.coefficients * y_cos
        r = sin_t @ a_sin + cos_t @ a_cos
        dr = cos_t @ (k * a_sin) - sin_t @ (k * a_cos)
        ddr = -sin_t @ (k**2 * a_sin) - cos_t @ (k**2 * a_cos)
        return r, dr, ddr


@dataclass(frozen=True)
class BoundaryRealization:
    """One sampled closed curve at n equidistant parameter values."""

    nodes: np.ndarray              # (n, 2)
    tangents: np.ndarray           # (n, 2)
    normals: np.ndarray            # (n, 2), unit, outward
    jacobians: np.ndarray          # (n,), |gamma'|
    second_derivatives: np.ndarray = field(repr=False, default=None)  # (n, 2)

    @property
    def n(self):
        return len(self.jacobians)

    @property
    def max_radius(self):
        return float(np.sqrt((self.nodes**2).sum(axis=1)).max())


def _assemble_realization(nodes, tangents, second, check_simple):
    jac = np.sqrt((tangents**2).sum(axis=1))
    if (jac < _MIN_JACOBIAN).any():
        raise GeometryError("degenerate boundary: vanishing jacobian")
    normals = np.stack([tangents[:, 1], -tangents[:, 0]], axis=1) / jac[:, None]
    if check_simple:
        _check_simple(nodes)
    return BoundaryRealization(nodes=nodes, tangents=tangents, normals=normals,
                               jacobians=jac, second_derivatives=second)


def _check_simple(nodes):
    """Reject self-intersecting polylines (proper crossings at node scale)."""
    n = len(nodes)
    d = np.roll(nodes, -1, axis=0) - nodes
    rel = nodes[None, :, :] - nodes[:, None, :]
    cross = d[:, None, 0] * rel[:, :, 1] - d[:, None, 1] * rel[:, :, 0]
    straddle = cross * np.roll(cross, -1, axis=1) < 0.0
    proper = straddle & straddle.T
    idx = np.arange(n)
    gap = np.abs(idx[:, None] - idx[None, :])
    adjacent = (gap <= 1) | (gap >= n - 1)
    if (proper & ~adjacent).any():
        raise GeometryError("boundary realization is self-intersecting")


def realize_boundary(kind, n, y=None, perturbation=None, radius=1.0,
                     check_simple=True):
    """Sample a boundary curve at n equidistant parameter values.

    Parameters
    ----------
    kind : str
        One of ``"nominal-kite"``, ``"perturbed-kite"``, ``"circle"``.
    n : int
        Node count, even and >= 16.
    y : ndarray, optional
        Parameter vector in [-1, 1]^P, required for the perturbed kite.
    perturbation : RadialPerturbation, optional
        Fluctuation model, required for the perturbed kite.
    radius : float
        Circle radius (``kind="circle"`` only).
    check_simple : bool
        Run the O(n^2) self-intersection scan (on by default).

    Returns
    -------
    BoundaryRealization
    """
    if n % 2 != 0 or n < 16:
        raise DimensionError(f"node count must be even and >= 16, got {n}")
    phi = parameter_grid(n)
    e_r = np.stack([np.cos(phi), np.sin(phi)], axis=1)
    e_phi = np.stack([-np.sin(phi), np.cos(phi)], axis=1)

    if kind == "nominal-kite":
        return _assemble_realization(kite_point(phi), kite_tangent(phi),
                                     _kite_second(phi), check_simple)
    if kind == "circle":
        if radius <= 0:
            raise GeometryError("circle radius must be positive")
        return _assemble_realization(radius * e_r, radius * e_phi,
                                     -radius * e_r, check_simple=False)
    if kind == "perturbed-kite":
        if perturbation is None or y is None:
            raise DimensionError("perturbed-kite needs a perturbation and y")
        r, dr, ddr = perturbation.radius_jet(phi, y)
        nodes = kite_point(phi) + r[:, None] * e_r
        tangents = kite_tangent(phi) + dr[:, None] * e_r + r[:, None] * e_phi
        second = _kite_second(phi) + (ddr - r)[:, None] * e_r \
            + 2 * dr[:, None] * e_phi
        return _assemble_realization(nodes, tangents, second, check_simple)
    raise DimensionError(f"unknown boundary kind {kind!r}")
