"""Newton polygons over K and the root-distance data they encode.

For a polynomial with plot points ``(i, val(a_i))`` each lower-hull segment of
slope s and horizontal length l accounts for l roots of valuation -s (in an
algebraic closure).  A factor X^k accounts for k roots at 0, reported with
valuation ``INF``.
"""
from __future__ import annotations

from dataclasses import dataclass

from .ground_field import INF, FieldElem, Poly, RationalFunction, taylor_shift


def lower_hull(points: list) -> list:
    """Lower convex hull of points sorted by x (exact monotone chain)."""
    hull: list = []
    for p in points:
        while len(hull) >= 2:
            (x1, y1), (x2, y2) = hull[-2], hull[-1]
            # drop hull[-1] if it lies on or above the segment hull[-2] -> p
            if (y2 - y1) * (p[0] - x1) >= (p[1] - y1) * (x2 - x1):
                hull.pop()
            else:
                break
        hull.append(p)
    return hull


def newton_polygon(f: Poly) -> list:
    """Segments ``(slope, length)`` of the lower hull, left to right."""
    pts = [(i, c.val) for i, c in enumerate(f.coeffs) if not c.is_zero()]
    hull = lower_hull(pts)
    return [((y2 - y1) / (x2 - x1), x2 - x1) for (x1, y1), (x2, y2) in zip(hull, hull[1:])]


def root_valuations(f: Poly) -> list:
    """Multiset of root valuations as sorted ``(valuation, multiplicity)`` pairs."""
    if f.is_zero():
        raise ValueError("the zero polynomial has no root data")
    low = next(i for i, c in enumerate(f.coeffs) if not c.is_zero())
    out = [(-slope, length) for slope, length in reversed(newton_polygon(f))]
    if low:
        out.append((INF, low))
    return out


@dataclass(frozen=True)
class DistanceMultiset:
    """Distances ``val(s - alpha)`` from a center to the zeros and poles of a function."""

    zeros: tuple
    poles: tuple

    @property
    def entries(self) -> list:
        """Net ``(distance, zeros - poles)``, dropping cancelled distances."""
        acc: dict = {}
        for d, m in self.zeros:
            acc[d] = acc.get(d, 0) + m
        for d, m in self.poles:
            acc[d] = acc.get(d, 0) - m
        return sorted((d, m) for d, m in acc.items() if m)

    @property
    def radii(self) -> list:
        """Every distance at which a zero or a pole sits."""
        return sorted({d for d, _ in self.zeros} | {d for d, _ in self.poles})

    def count_at_least(self, bound) -> tuple:
        """Zeros and poles with distance ``>= bound``."""
        z = sum(m for d, m in self.zeros if d >= bound)
        p = sum(m for d, m in self.poles if d >= bound)
        return z, p

    def signed_at_least(self, bound) -> int:
        z, p = self.count_at_least(bound)
        return z - p


def root_distances(phi: RationalFunction, s) -> DistanceMultiset:
    phi = RationalFunction.of(phi)
    s = FieldElem.of(s, phi.backend)
    zeros = tuple(root_valuations(taylor_shift(phi.num, s)))
    poles = tuple(root_valuations(taylor_shift(phi.den, s))) if not phi.den.is_constant() else ()
    return DistanceMultiset(zeros, poles)


@dataclass(frozen=True)
class StabilizedCount:
    count: int
    certified_at: int | None
    status: str          # "certified", "heuristic" or "uncertified"
    below: tuple = ()    # distances of the remaining roots, read at the certifying index


def stabilized_distance_count(f: Poly, E, expected: int | None = None, start: int = 0,
                              window: int = 3) -> StabilizedCount:
    """Number of roots of f that track E, read off Newton data of ``f(X + s_n)``.

    With ``expected`` (the number of roots that are pseudo-limits, when known in
    closed form) the first index where exactly that many roots sit at distance
    ``>= delta_n`` certifies the count: every other root then has a distance
    ``< delta_n`` that no longer changes.  Without it, the count is accepted once
    it and the lower distances stay unchanged over ``window`` further steps and
    tracked roots sit at distance exactly delta_n (status ``heuristic``).
    """
    history = []
    for n in range(start, E.max_index + 1):
        s, dn = E.s(n), E.delta(n)
        dists = root_valuations(taylor_shift(f, s)) if f.degree > 0 else []
        high = sum(m for d, m in dists if d >= dn)
        exact = all(d == dn for d, m in dists if d >= dn)
        below = tuple(sorted((d, m) for d, m in dists if d < dn))
        if expected is not None:
            if high == expected:
                return StabilizedCount(high, n, "certified", below)
            continue
        history.append((high, exact, below))
        if len(history) > window:
            recent = history[-window - 1:]
            if all(h == recent[0][0] and ok and b == recent[0][2] for h, ok, b in recent):
                return StabilizedCount(high, n - window, "heuristic", below)
    return StabilizedCount(history[-1][0] if history else 0, None, "uncertified")
