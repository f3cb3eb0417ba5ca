import numpy as np
import pytest

from scatterstats import (ArtificialInterface, CauchyAccumulator,
                          HaltonSampler, RadialPerturbation, build_bundle,
                          cauchy_on_sigma, eval_scattered_from_gamma,
                          farfield_from_gamma, mie_solution,
                          plane_wave_context, realize_boundary, solve_neumann)


@pytest.fixture(scope="session")
def circle_setup():
    """Unit circle, kappa = 2, solved at n = 128, with its Mie reference."""
    ctx = plane_wave_context(2.0, (1.0, 0.0), coupling=2.0)
    boundary = realize_boundary("circle", 128, radius=1.0)
    density = solve_neumann(ctx, boundary)
    sol = mie_solution(1.0, 2.0, (1.0, 0.0))
    return ctx, boundary, density, sol


@pytest.fixture(scope="session")
def kite_setup():
    """Nominal kite, kappa = 2, n = 300, with interface R = 11."""
    ctx = plane_wave_context(2.0, (1.0, 0.0))
    boundary = realize_boundary("nominal-kite", 300)
    density = solve_neumann(ctx, boundary)
    interface = ArtificialInterface(radius=11.0, n_sigma=300)
    cauchy = cauchy_on_sigma(density, interface)
    return ctx, density, interface, cauchy


@pytest.fixture(scope="session")
def mini_uq():
    """Small random pipeline shared by the statistics tests.

    64 Halton samples of the perturbed kite at kappa = 2, n = 120, R = 11,
    with per-sample direct evaluations kept for estimator-identity checks.
    """
    kappa, n, n_samples = 2.0, 120, 64
    ctx = plane_wave_context(kappa, (1.0, 0.0))
    perturbation = RadialPerturbation.cubic_decay(dimension=1000)
    sampler = HaltonSampler(dimension=1000)
    interface = ArtificialInterface(radius=11.0, n_sigma=n)
    accumulator = CauchyAccumulator(n_sigma=n)
    points = np.array([[14.0, 3.0], [0.0, -20.0], [-30.0, 8.0], [25.0, 25.0],
                       [12.0, -12.0], [-16.0, -25.0]])
    angles = np.linspace(0.0, 2.0 * np.pi, 12, endpoint=False)
    directions = np.stack([np.cos(angles), np.sin(angles)], axis=1)
    field_samples = np.empty((n_samples, len(points)), dtype=np.complex128)
    farfield_samples = np.empty((n_samples, len(directions)),
                                dtype=np.complex128)
    for i, y in enumerate(sampler.parameters(n_samples)):
        boundary = realize_boundary("perturbed-kite", n, y=y,
                                    perturbation=perturbation)
        density = solve_neumann(ctx, boundary)
        accumulator.accumulate(cauchy_on_sigma(density, interface))
        field_samples[i] = eval_scattered_from_gamma(density, points)
        farfield_samples[i] = farfield_from_gamma(density, directions)
    bundle, corr = build_bundle(accumulator, interface, kappa, 1e-12)
    return {
        "kappa": kappa,
        "interface": interface,
        "accumulator": accumulator,
        "bundle": bundle,
        "corr": corr,
        "points": points,
        "directions": directions,
        "field_samples": field_samples,
        "farfield_samples": farfield_samples,
    }
