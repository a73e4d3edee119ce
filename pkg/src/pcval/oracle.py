"""Definitional cross-checks that only evaluate along the sequence terms.

Nothing here uses Newton polygons, breadth arithmetic beyond equality, or the
closed-form profile law; the functions are meant as independent witnesses.
"""
from __future__ import annotations

from typing import Iterable

from .ground_field import INF, PoleError, RationalFunction, rf_eval

DEFAULT_SETTLE = 8


def value_at(phi: RationalFunction, s):
    """``val(phi(s))`` with ``-INF`` at a pole."""
    try:
        return rf_eval(phi, s).val
    except PoleError:
        return -INF


def profile_scan(phi: RationalFunction, E, ns: Iterable[int]) -> list:
    """``[val(phi(s_n)) for n in ns]``."""
    return [value_at(phi, E.s(n)) for n in ns]


def member_definitional(phi: RationalFunction, E, n0: int | None = None, depth: int = 40) -> bool:
    """``val(phi(s_n)) >= 0`` for every n in the settling window ``n0..depth``."""
    n0 = DEFAULT_SETTLE if n0 is None else n0
    depth = min(depth, E.max_index)
    if n0 > depth:
        raise ValueError(f"settling index {n0} exceeds depth {depth}")
    return all(v >= 0 for v in profile_scan(phi, E, range(n0, depth + 1)))


def gauge_matches(E, depth: int = 20) -> bool:
    """``val(s_{n+1} - s_n) == delta_n`` for n < depth."""
    return all((E.s(n + 1) - E.s(n)).val == E.delta(n) for n in range(min(depth, E.max_index)))


def constant_tail(phi: RationalFunction, E, depth: int = 24, window: int = 8) -> bool:
    vals = profile_scan(phi, E, range(max(depth - window, 0), depth))
    return len(set(vals)) == 1 and vals[0] not in (INF, -INF)


def equivalent_definitional(E, F, k_max: int = 10, depth: int = 40, margin: int = 6) -> bool:
    """Equal breadths, and for every k <= k_max some c with
    ``val(s_i - t_j) > val(t_{k+1} - t_k)`` for all i, j in ``c..depth``.

    The witness index c must leave at least ``margin`` indices before ``depth``.
    """
    if E.breadth != F.breadth:
        return False
    depth = min(depth, E.max_index, F.max_index)
    cross = [[(E.s(i) - F.s(j)).val for j in range(depth + 1)] for i in range(depth + 1)]
    # tail_min[c] = min of cross[i][j] over i, j >= c
    tail_min = [INF] * (depth + 2)
    for c in range(depth, -1, -1):
        m = tail_min[c + 1]
        for j in range(c, depth + 1):
            m = min(m, cross[c][j])
        for i in range(c, depth + 1):
            m = min(m, cross[i][c])
        tail_min[c] = m
    for k in range(k_max + 1):
        g = (F.s(k + 1) - F.s(k)).val
        if not any(tail_min[c] > g for c in range(0, depth - margin + 1)):
            return False
    return True
