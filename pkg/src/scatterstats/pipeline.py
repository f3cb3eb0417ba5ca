"""Pipeline orchestration: nominal runs, the sampling loop, output files.

Per sample: realize the boundary, check containment inside the interface,
solve the combined-field equation, collect Cauchy data on the interface and
fold it into the accumulator.  Afterwards the second-moment matrix is
factorized once and every field or far-field statistic is evaluated through
the low-rank factor.

Output files are plain CSV with a header row and 17-significant-digit
values.  The manifest records the full configuration; timings go into it
only in parallel mode so that deterministic runs rewrite byte-identical
files.
"""

from __future__ import annotations

import csv
import logging
import multiprocessing
import time
from dataclasses import dataclass, replace
from pathlib import Path

import numpy as np

from . import __version__
from .bem import plane_wave_context, solve_neumann
from .config import write_manifest
from .errors import ConfigError, ContainmentError
from .geometry import RadialPerturbation, realize_boundary
from .oracle import mie_farfield, mie_scattered, mie_solution
from .potentials import (ArtificialInterface, cauchy_on_sigma,
                         eval_scattered_from_gamma, farfield_from_gamma,
                         incident_plane_wave)
from .randomfield import HaltonSampler
from .stats import CauchyAccumulator, build_bundle

logger = logging.getLogger(__name__)

_FMT = "%.17g"


@dataclass(frozen=True)
class UqRun:
    """Finished sampling run: statistics bundle plus bookkeeping."""

    bundle: object
    correlation: np.ndarray
    config: object
    seconds_sampling: float
    seconds_factorization: float


def _context(config):
    return plane_wave_context(config.wavenumber, config.direction,
                              config.effective_coupling)


def _boundary_factory(config):
    """Callable mapping a parameter vector (or None) to a realization."""
    if config.scatterer == "circle":
        def factory(y=None):
            return realize_boundary("circle", config.n_gamma,
                                    radius=config.circle_radius)
        return factory
    perturbation = RadialPerturbation.cubic_decay(config.dimension,
                                                  config.amplitude)

    def factory(y=None):
        if y is None:
            return realize_boundary("nominal-kite", config.n_gamma)
        return realize_boundary("perturbed-kite", config.n_gamma, y=y,
                                perturbation=perturbation)
    return factory


def annulus_grid(config):
    """Polar evaluation grid on [r_min, r_max] x [0, 2 pi)."""
    if config.grid_nr <= 0 or config.grid_ntheta <= 0:
        return np.zeros((0, 2))
    r = np.linspace(config.effective_grid_r_min, config.grid_r_max,
                    config.grid_nr)
    theta = 2.0 * np.pi * np.arange(config.grid_ntheta) / config.grid_ntheta
    rr, tt = np.meshgrid(r, theta, indexing="ij")
    return np.stack([(rr * np.cos(tt)).ravel(), (rr * np.sin(tt)).ravel()],
                    axis=1)


def farfield_directions(count):
    angles = 2.0 * np.pi * np.arange(count) / count
    return angles, np.stack([np.cos(angles), np.sin(angles)], axis=1)


def _write_csv(path, header, columns):
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    with open(path, "w", newline="", encoding="utf-8") as handle:
        writer = csv.writer(handle)
        writer.writerow(header)
        for row in zip(*columns):
            writer.writerow([_FMT % v for v in row])
    return path


def run_nominal(config):
    """Solve the unperturbed problem; write total-field and far-field files.

    Returns the list of files written.
    """
    config.validate()
    ctx = _context(config)
    boundary = _boundary_factory(config)(None)
    density = solve_neumann(ctx, boundary)
    out = Path(config.out_dir)
    written = []

    grid = annulus_grid(config)
    if len(grid):
        scattered = eval_scattered_from_gamma(density, grid)
        total = scattered + incident_plane_wave(config.wavenumber,
                                                config.direction, grid)
        written.append(_write_csv(
            out / "field_nominal.csv",
            ["x", "y", "re_total", "im_total", "abs_total",
             "re_scattered", "im_scattered"],
            [grid[:, 0], grid[:, 1], total.real, total.imag, np.abs(total),
             scattered.real, scattered.imag]))

    angles, dirs = farfield_directions(config.farfield_directions)
    ff = farfield_from_gamma(density, dirs)
    written.append(_write_csv(
        out / "farfield_nominal.csv",
        ["angle_rad", "re_farfield", "im_farfield", "abs_farfield"],
        [angles, ff.real, ff.imag, np.abs(ff)]))
    return written


def _accumulate_range(config, start, stop):
    """Accumulate samples with Halton indices start..stop-1 (0-based)."""
    ctx = _context(config)
    factory = _boundary_factory(config)
    interface = ArtificialInterface(radius=config.radius_sigma,
                                    n_sigma=config.n_sigma)
    sampler = HaltonSampler(dimension=config.dimension,
                            start_index=config.halton_start + start)
    params = sampler.parameters(stop - start) if stop > start else []
    acc = CauchyAccumulator(n_sigma=config.n_sigma)
    for offset in range(stop - start):
        y = params[offset]
        boundary = factory(y)
        if boundary.max_radius >= config.radius_sigma:
            raise ContainmentError(
                f"sample {start + offset}: boundary reaches radius "
                f"{boundary.max_radius:.4f} >= R = {config.radius_sigma:g}")
        density = solve_neumann(ctx, boundary)
        acc.accumulate(cauchy_on_sigma(density, interface))
    return acc


def _worker(args):
    config, start, stop = args
    acc = _accumulate_range(config, start, stop)
    return acc._mean_sum, acc._corr_sum, acc.count


def sample_statistics(config):
    """Run the sampling loop and factorize the second-moment matrix."""
    config.validate()
    interface = ArtificialInterface(radius=config.radius_sigma,
                                    n_sigma=config.n_sigma)
    t0 = time.perf_counter()
    if config.mode == "parallel" and config.threads > 1:
        bounds = np.linspace(0, config.samples, config.threads + 1).astype(int)
        jobs = [(config, int(lo), int(hi))
                for lo, hi in zip(bounds[:-1], bounds[1:]) if hi > lo]
        acc = CauchyAccumulator(n_sigma=config.n_sigma)
        with multiprocessing.get_context("fork").Pool(len(jobs)) as pool:
            for mean_sum, corr_sum, count in pool.map(_worker, jobs):
                part = CauchyAccumulator(n_sigma=config.n_sigma)
                part._mean_sum, part._corr_sum, part.count = \
                    mean_sum, corr_sum, count
                acc.merge(part)
    else:
        acc = _accumulate_range(config, 0, config.samples)
    t1 = time.perf_counter()
    logger.info("sampled %d boundaries in %.1f s", acc.count, t1 - t0)
    bundle, corr = build_bundle(acc, interface, config.wavenumber, config.eps)
    t2 = time.perf_counter()
    logger.info("pivoted Cholesky: rank %d, trace ratio %.3e (%.1f s)",
                bundle.rank, bundle.factor.trace_ratio, t2 - t1)
    return UqRun(bundle=bundle, correlation=corr, config=config,
                 seconds_sampling=t1 - t0, seconds_factorization=t2 - t1)


def run_uq(config, farfield_only=False):
    """Full statistics pipeline; writes grids, far-field stats and manifest."""
    run = sample_statistics(config)
    bundle = run.bundle
    out = Path(config.out_dir)
    written = []

    grid = annulus_grid(config) if not farfield_only else np.zeros((0, 2))
    if len(grid):
        field = bundle.field_statistics(grid)
        incident = incident_plane_wave(config.wavenumber, config.direction,
                                       grid)
        total = field.expectation + incident
        written.append(_write_csv(
            out / "expectation_grid.csv",
            ["x", "y", "re_mean_scattered", "im_mean_scattered",
             "re_mean_total", "im_mean_total", "abs_mean_total"],
            [grid[:, 0], grid[:, 1], field.expectation.real,
             field.expectation.imag, total.real, total.imag, np.abs(total)]))
        written.append(_write_csv(
            out / "variance_grid.csv",
            ["x", "y", "variance", "std_dev"],
            [grid[:, 0], grid[:, 1], field.variance,
             np.sqrt(field.variance)]))

    angles, dirs = farfield_directions(config.farfield_directions)
    ff = bundle.farfield_statistics(dirs)
    written.append(_write_csv(
        out / "farfield_stats.csv",
        ["angle_rad", "re_mean", "im_mean", "abs_mean", "std_dev"],
        [angles, ff.expectation.real, ff.expectation.imag,
         np.abs(ff.expectation), np.sqrt(ff.variance)]))

    factor = bundle.factor
    written.append(_write_csv(
        out / "rank_report.csv",
        ["step", "pivot_index", "residual_trace"],
        [np.arange(1, factor.rank + 1), factor.pivots,
         factor.residual_history]))

    results = {
        "package_version": __version__,
        "numpy_version": np.__version__,
        "sample_count": bundle.sample_count,
        "rank": factor.rank,
        "trace": factor.trace,
        "trace_ratio": factor.trace_ratio,
        "farfield_count": config.farfield_directions,
        "grid_points": len(grid),
    }
    if config.mode != "deterministic":
        results["seconds_sampling"] = round(run.seconds_sampling, 3)
        results["seconds_factorization"] = round(run.seconds_factorization, 3)
    manifest = out / "manifest.ini"
    out.mkdir(parents=True, exist_ok=True)
    write_manifest(manifest, config, results)
    written.append(manifest)
    return written


def run_table_ranks(config, radii=(11, 12, 13, 14, 15),
                    wavenumbers=(1, 2, 4, 8)):
    """Rank of the low-rank factor over a (R, kappa) grid; one CSV."""
    config.validate()
    rows = []
    for radius in radii:
        for kappa in wavenumbers:
            sub = replace(config, radius_sigma=float(radius),
                          wavenumber=float(kappa), coupling=None,
                          grid_r_min=None)
            run = sample_statistics(sub)
            rows.append((float(radius), float(kappa), run.bundle.rank,
                         run.bundle.factor.trace_ratio))
            logger.info("R = %g, kappa = %g -> rank %d",
                        radius, kappa, run.bundle.rank)
    out = Path(config.out_dir)
    arr = np.array(rows)
    return _write_csv(out / "table_ranks.csv",
                      ["radius_sigma", "wavenumber", "rank", "trace_ratio"],
                      [arr[:, 0], arr[:, 1], arr[:, 2], arr[:, 3]])


def oracle_dump(config):
    """Write the frozen circle reference values (byte-stable output)."""
    config.validate()
    if config.scatterer != "circle":
        raise ConfigError("oracle-dump requires a circle configuration")
    sol = mie_solution(config.circle_radius, config.wavenumber,
                       config.direction)
    lines = [
        "# scatterstats oracle reference values (sound-soft circle, Mie series)",
        f"# package_version = {__version__}",
        f"radius = {_FMT % sol.radius}",
        f"wavenumber = {_FMT % sol.wavenumber}",
        f"direction = {_FMT % sol.direction[0]}, {_FMT % sol.direction[1]}",
        f"series_order = {sol.order}",
    ]
    points = [(3.0, 0.0), (0.0, 5.0), (-2.0, -2.0), (10.0, 3.0)]
    for p in points:
        value = mie_scattered(sol, np.array(p))
        lines.append(f"scattered({_FMT % p[0]}, {_FMT % p[1]}) = "
                     f"{_FMT % value.real} {'+' if value.imag >= 0 else '-'} "
                     f"{_FMT % abs(value.imag)}i")
    for angle in (0.0, np.pi / 4, np.pi / 2, np.pi):
        xhat = np.array([np.cos(angle), np.sin(angle)])
        value = mie_farfield(sol, xhat)
        lines.append(f"farfield(angle = {_FMT % angle}) = "
                     f"{_FMT % value.real} {'+' if value.imag >= 0 else '-'} "
                     f"{_FMT % abs(value.imag)}i")
    out = Path(config.out_dir)
    out.mkdir(parents=True, exist_ok=True)
    path = out / "oracle_reference.txt"
    path.write_text("\n".join(lines) + "\n", encoding="utf-8")
    return path
