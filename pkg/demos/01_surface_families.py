"""
Torus families and their curvature
==================================

The shape parameter c = (a - b)/b splits surfaces of revolution
R = a + b cos(r/b) into ring, horn, spindle and sphere families.
"""

import numpy as np

from revgeo import SurfaceSpec
from revgeo.surface import embed, gaussian_curvature

for a in (2.0, 1.0, 0.5, 0.0):
    spec = SurfaceSpec(a, 1.0)
    print(f"a={a}: family={spec.family.value:7s} c={spec.c:+.2f}")

ring = SurfaceSpec(2.0, 1.0)

# curvature is positive on the outer half, negative on the inner half,
# and zero exactly on the polar circles chi = +-pi/2
for chi in (0.0, np.pi / 2.0, np.pi):
    K = gaussian_curvature(ring, chi * ring.b)
    print(f"K(chi={chi:.4f}) = {K:+.6f}")

# total curvature over one full tube vanishes (the torus has genus one)
chi = np.linspace(-np.pi, np.pi, 20001)
dA = ring.R(chi * ring.b) * ring.b          # area element per dchi dtheta
total = 2.0 * np.pi * np.trapezoid(gaussian_curvature(ring, chi * ring.b) * dA,
                                   chi)
print(f"integral K dA = {total:.2e}  (Gauss-Bonnet: 0 for genus 1)")

# the embedding realizes (r, theta) in 3-space; distance from the axis is R
pts = embed(ring, np.pi / 3.0, 1.0)
print("embed(pi/3, 1.0) =", np.round(pts, 6),
      " axis distance", round(float(np.hypot(pts[0], pts[1])), 6))
