"""Closed geodesics on the square flat torus R^2 / Z^2.

The degenerate comparison case: every geodesic is a straight line, the
closed ones are exactly the rational slopes, and the [m, n] circuit has
length sqrt(m^2 + n^2) with no transcendental content. Useful as a limit
check for the curved-torus spectrum machinery.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .errors import InvalidParameterError


def flat_length(m: int, n: int) -> float:
    """Length of the primitive closed line [m, n] on the unit square torus."""
    _validate(m, n)
    return math.hypot(m, n)


def _validate(m, n):
    if m < 0 or n < 0 or (m == 0 and n == 0):
        raise InvalidParameterError("need m, n >= 0, not both zero")
    d = math.gcd(m, n)
    if d != 1:
        raise InvalidParameterError(
            f"[{m},{n}] retraces the primitive [{m // d},{n // d}] {d} times")


def flat_segments(m: int, n: int) -> tuple:
    """The [m, n] line cut into segments by the unit square.

    Returns ((x0, y0), (x1, y1)) pairs in drawing order; a primitive closed
    line with m, n >= 1 always yields m + n - 1 segments.
    """
    _validate(m, n)
    # breakpoints where the line crosses x = integer or y = integer
    ts = {0.0, 1.0}
    for i in range(1, m):
        ts.add(i / m)
    for j in range(1, n):
        ts.add(j / n)
    ts = sorted(ts)
    segments = []
    for t0, t1 in zip(ts[:-1], ts[1:]):
        tm = 0.5 * (t0 + t1)
        # anchor the segment by its midpoint cell so endpoints touching the
        # boundary land on 0 or 1 instead of wrapping
        cx, cy = np.floor(m * tm), np.floor(n * tm)
        segments.append(((m * t0 - cx, n * t0 - cy), (m * t1 - cx, n * t1 - cy)))
    return tuple(segments)


@dataclass(frozen=True)
class FlatEntry:
    m: int
    n: int
    length: float


def flat_lattice(m_max: int, n_max: int) -> tuple:
    """All primitive closed lines with m <= m_max, n <= n_max, sorted by length.

    Includes the two axis circles [1, 0] and [0, 1].
    """
    if m_max < 1 or n_max < 1:
        raise InvalidParameterError("need m_max >= 1 and n_max >= 1")
    entries = [FlatEntry(1, 0, 1.0), FlatEntry(0, 1, 1.0)]
    for m in range(1, m_max + 1):
        for n in range(1, n_max + 1):
            if math.gcd(m, n) == 1:
                entries.append(FlatEntry(m, n, math.hypot(m, n)))
    entries.sort(key=lambda e: (e.length, e.m, e.n))
    return tuple(entries)
