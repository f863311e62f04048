"""
The effective potential and launch-angle classification
========================================================

Conserving ell = R^2 dtheta/dlambda reduces geodesic motion to a particle
in U(chi) = ell^2 / (2 R^2). Everything about a geodesic is decided by
where its energy sits in that well.
"""

import numpy as np

from revgeo import SurfaceSpec
from revgeo.potential import (classify, critical_angles, effective_potential,
                              small_oscillation, turning_point)

ring = SurfaceSpec(2.0, 1.0)

# the well bottom is the outer equator, the local max the inner equator
for chi in (0.0, np.pi):
    print(f"U(chi={chi:.4f}) = {effective_potential(ring, 1.0, chi):.6f}")

crit = critical_angles(ring)
print(f"beta_crit  = {crit.beta_crit:.10f}  (asymptotic to inner equator)")
print(f"beta_polar = {crit.beta_polar:.10f}"
      f"  = {np.degrees(crit.beta_polar):.1f} deg (reaches polar circles)")

# sweep launch angles across the critical values; at unit speed E = 1/2 and
# ell = R(0) sin(beta0)
R0 = ring.R(0.0)
for beta0 in (0.0, 0.1, crit.beta_crit, 0.5, 1.2, np.pi / 2.0):
    kinds = classify(ring, 0.5, R0 * np.sin(beta0))
    tp = turning_point(ring, beta0)
    reach = "escapes the hole" if tp.chi_max is None \
        else f"chi_max = {tp.chi_max:.4f}"
    names = " + ".join(k.value for k in kinds)
    print(f"beta0 = {beta0:.4f}: {names:40s} {reach}")

# near the bottom the well is a harmonic oscillator: sqrt(c+2) radial
# oscillations per revolution, refocusing after pi sqrt(c+2) b of arc
# (the convergence length)
osc = small_oscillation(ring, 1.0)
print(f"oscillations/revolution = {osc.freq_per_rev:.6f} = sqrt(3)")
print(f"convergence length      = {osc.convergence_length:.6f} = pi sqrt(3)")
