"""Second-order statistics of 2D acoustic scattering from randomly
perturbed sound-soft obstacles.

Per-sample boundary-integral solves feed Cauchy-data statistics on a fixed
circular interface; a pivoted-Cholesky factor of the two-point correlation
matrix then yields expectations and variances of the scattered field and of
the far-field pattern anywhere outside the interface.
"""

__version__ = "0.1.0"

from .bem import (HelmholtzContext, NeumannDensity, assemble_cfie,
                  incident_trace, plane_wave_context, solve_neumann)
from .config import RunConfig, apply_overrides, load_config
from .errors import (ConfigError, ContainmentError, DimensionError,
                     DomainError, GeometryError, NumericalError,
                     ScatterStatsError)
from .geometry import (BoundaryRealization, RadialPerturbation, kite_point,
                       kite_tangent, parameter_grid, realize_boundary)
from .oracle import (MieSolution, full_correlation_at, mie_farfield,
                     mie_neumann, mie_scattered, mie_solution)
from .potentials import (ArtificialInterface, CauchyData, cauchy_on_sigma,
                         eval_scattered_from_gamma, eval_scattered_from_sigma,
                         farfield_from_gamma, farfield_from_sigma,
                         incident_plane_wave, sigma_farfield_rows,
                         sigma_field_rows)
from .randomfield import HaltonSampler, first_primes, halton_point, radical_inverse
from .specfun import bessel_j, bessel_jn, bessel_y, bessel_yn, hankel1, hankel1n
from .stats import (CauchyAccumulator, CorrelationBundle, FieldStatistics,
                    LowRankFactor, build_bundle, pivoted_cholesky)
