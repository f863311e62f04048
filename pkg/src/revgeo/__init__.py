"""Geodesics on tori of revolution via effective-potential reduction.

Layers, roughly bottom to top:

  surface        profile, metric, Christoffel symbols, curvature
  dynamics       geodesic ODEs, conservation, event-tagged integration
  potential      1d radial reduction: wells, turning points, critical angles
  integrals      orbit-angle / arc-length / affine-time quadratures
  closed         closed-geodesic spectrum [m, n; p] and self-intersections
  two_point      boundary value problem and exponential-map fans
  flat_torus     the flat comparison case
  central_force  the same reduction applied to planar orbits
"""

from .central_force import (CircularOrbit, ForceParams, OrbitClass, PlaneOrbit,
                            apsidal_angle, circular_radii, classify_orbit,
                            epicyclic_frequency, integrate_orbit,
                            perihelion_precession, total_potential,
                            total_potential_derivative)
from .closed import (ClosedGeodesic, ClosedLabel, CrossingRadius,
                     PrecessionData, RefineResult, SelfIntersection,
                     SpectrumEntry, SpectrumResult, crossing_points,
                     find_closed, precession_rate, refine_via_ode,
                     self_intersections, spectrum, verify_closure)
from .dynamics import (INNER_EQUATOR, OUTER_EQUATOR, TURNING_POINT,
                       ConservedSet, Event, GeodesicState, IntegratorConfig,
                       OrbitTrace, conserved, geodesic_rhs,
                       initial_state_from_angle, integrate)
from .errors import (ConvergenceError, DomainError, ForbiddenRegionError,
                     IntegrationError, InvalidParameterError,
                     NonexistentGeodesicError, NoSolutionError, RevgeoError,
                     SingularAxisError, UnstableOrbitError)
from .flat_torus import FlatEntry, flat_lattice, flat_length, flat_segments
from .integrals import (QuadratureConfig, affine_time, arc_length_bound_period,
                        arc_length_unbound_loop, critical_divergence_estimate,
                        orbit_angle, theta_frequency_bound,
                        theta_frequency_unbound)
from .potential import (CriticalAngles, GeodesicClass, OscillationData,
                        PotentialProfile, TurningPoints, classify,
                        critical_angles, effective_potential,
                        effective_potential_derivative, potential_profile,
                        small_oscillation, turning_point)
from .surface import (Family, SurfaceSpec, christoffel, embed,
                      gaussian_curvature, make_torus, metric, normal, profile)
from .two_point import (ConnectingGeodesic, RayPath, TwoPointResult,
                        arclength_of_momentum, exp_map_rays, rmax_of_momentum,
                        solve_two_point, theta_of_momentum)

__version__ = "0.1.0"

__all__ = [name for name in dir() if not name.startswith("_")]
