"""
Closed lines on the flat square torus
=====================================

On the unit square with opposite edges glued, closed geodesics are
straight lines of rational slope n/m, with length sqrt(m^2 + n^2) and
no length-minimizing subtlety at all. A useful foil for the curved case:
same labels, completely different spectrum.
"""

from math import gcd

from revgeo.flat_torus import flat_lattice, flat_length, flat_segments

# the (2, 3) line: length sqrt(13), drawn as m + n - 1 = 4 segments
# inside the fundamental square
print(f"length of (2,3) line = {flat_length(2, 3):.10f} = sqrt(13)")
for seg in flat_segments(2, 3):
    (x0, y0), (x1, y1) = seg
    print(f"  ({x0:.6f}, {y0:.6f}) -> ({x1:.6f}, {y1:.6f})")

# the primitive spectrum up to (6, 6): one entry per coprime pair plus
# the two axis directions
entries = flat_lattice(6, 6)
print(f"primitive lines with m, n <= 6: {len(entries)}")
shortest = ", ".join(f"({e.m},{e.n}) {e.length:.4f}" for e in entries[:6])
print("shortest:", shortest)

# cross-check the count against a direct coprime sieve
sieve = 2 + sum(1 for m in range(1, 7) for n in range(1, 7)
                if gcd(m, n) == 1)
print(f"coprime sieve agrees: {len(entries)} == {sieve}")

# every off-axis length is doubled by the (m,n) <-> (n,m) mirror, the
# discrete shadow of the curved torus's azimuth-reversal symmetry
sq = [round(e.length ** 2) for e in entries]
doubled = sum(1 for s in set(sq) if sq.count(s) == 2)
print(f"mirror-degenerate lengths: {doubled} of {len(set(sq))} distinct norms")
