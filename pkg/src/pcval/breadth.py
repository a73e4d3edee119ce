"""Breadths of pseudo-convergent sequences and the value group Q + Z*delta.

A breadth is a rational number, a real quadratic irrational ``a + b*sqrt(d)``
or infinity.  Every comparison against rationals is exact.
"""
from __future__ import annotations

import math
import re
from dataclasses import dataclass
from typing import Iterator

from gmpy2 import isqrt, mpq

INF = math.inf


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def quad_sign(x, y, d: int) -> int:
    """Sign of ``x + y*sqrt(d)`` for rationals x, y and a non-square d > 1."""
    sx, sy = _sign(x), _sign(y)
    if sy == 0:
        return sx
    if sx == 0 or sx == sy:
        return sy
    # opposite signs: compare x^2 with y^2 d
    return sx * _sign(x * x - y * y * d)


def _squarefree_split(d: int):
    """Write d = k^2 * r with r squarefree."""
    k, r = 1, d
    f = 2
    while f * f <= r:
        while r % (f * f) == 0:
            r //= f * f
            k *= f
        f += 1
    return k, r


@dataclass(frozen=True)
class Breadth:
    """Limit of a gauge: ``rational``, ``quadirr`` (a + b*sqrt(d)) or ``infinity``."""

    kind: str
    a: mpq = mpq(0)
    b: mpq = mpq(0)
    d: int = 0

    @classmethod
    def rational(cls, q) -> "Breadth":
        return cls("rational", mpq(q))

    @classmethod
    def quadirr(cls, a, b, d: int) -> "Breadth":
        a, b, d = mpq(a), mpq(b), int(d)
        if d < 2:
            raise ValueError("d must exceed 1")
        k, r = _squarefree_split(d)
        if r == 1 or b == 0:
            return cls.rational(a + b * k)
        return cls("quadirr", a, b * k, r)

    @classmethod
    def infinity(cls) -> "Breadth":
        return cls("infinity")

    @property
    def is_rational(self) -> bool:
        return self.kind == "rational"

    @property
    def is_infinite(self) -> bool:
        return self.kind == "infinity"

    @property
    def is_torsion(self) -> bool:
        # the value group is Q, so torsion modulo it means rational
        return self.kind == "rational"

    def cmp(self, x) -> int:
        """Sign of ``self - x`` for a rational or infinite x."""
        if x == INF:
            return 0 if self.is_infinite else -1
        if x == -INF:
            return 1
        x = mpq(x)
        if self.kind == "infinity":
            return 1
        if self.kind == "rational":
            return _sign(self.a - x)
        return quad_sign(self.a - x, self.b, self.d)

    def le(self, x) -> bool:
        """``self <= x``; for an irrational breadth this means ``x > self``."""
        return self.cmp(x) <= 0

    def lt(self, x) -> bool:
        return self.cmp(x) < 0

    def gt(self, x) -> bool:
        return self.cmp(x) > 0

    def __str__(self):
        if self.kind == "rational":
            return str(self.a)
        if self.kind == "infinity":
            return "inf"
        root = f"sqrt({self.d})" if self.b == 1 else (
            f"-sqrt({self.d})" if self.b == -1 else f"{self.b}*sqrt({self.d})"
        )
        if self.a == 0:
            return root
        if root.startswith("-"):
            return f"{self.a} - {root[1:]}"
        return f"{self.a} + {root}"

    def floor(self) -> int:
        if self.kind == "rational":
            return int(math.floor(self.a))
        if self.kind == "infinity":
            raise ValueError("floor of infinity")
        n = int(math.floor(self.a + self.b * math.isqrt(self.d)))
        # fix up the float-free estimate
        while self.cmp(n) < 0:
            n -= 1
        while self.cmp(n + 1) >= 0:
            n += 1
        return n

    def rational_above(self, below=None):
        """A rational strictly greater than the breadth (and than ``below``)."""
        if self.kind == "infinity":
            raise ValueError("no rational exceeds infinity")
        q = self.a + 1 if self.kind == "rational" else mpq(self.floor() + 1)
        if below is not None and below != INF and q <= below:
            q = mpq(below) + 1
        return q


_QUAD = re.compile(
    r"^\s*(?:(?P<a>-?\d+(?:/\d+)?)\s*(?P<op>[+-])\s*)?(?:(?P<b>\d+(?:/\d+)?)\s*\*\s*)?(?P<neg>-)?\s*sqrt\(\s*(?P<d>\d+)\s*\)\s*$"
)


def parse_breadth(text: str) -> Breadth:
    """Parse ``1/2``, ``inf``, ``sqrt(2)`` or ``a + b*sqrt(d)``."""
    s = text.strip()
    if s.lower() in ("inf", "infinity", "oo"):
        return Breadth.infinity()
    m = _QUAD.match(s)
    if m:
        a = mpq(m.group("a") or 0)
        b = mpq(m.group("b") or 1)
        if m.group("op") == "-":
            b = -b
        if m.group("neg"):
            b = -b
        return Breadth.quadirr(a, b, int(m.group("d")))
    try:
        return Breadth.rational(mpq(s))
    except ValueError as exc:
        raise ValueError(f"not a breadth literal: {text!r}") from exc


def quad_continued_fraction(a, b, d: int) -> Iterator[int]:
    """Partial quotients of ``a + b*sqrt(d)`` (exact, via the (P + sqrt D)/Q recurrence)."""
    a, b = mpq(a), mpq(b)
    L = math.lcm(int(a.denominator), int(b.denominator))
    P = int(a * L)
    bl = b * L
    D = int(bl * bl) * d
    Q = L
    if b < 0:
        P, Q = -P, -Q
    # ensure Q | D - P^2
    if (D - P * P) % Q:
        P, D, Q = P * abs(Q), D * Q * Q, Q * abs(Q)
    r = int(isqrt(D))
    while True:
        if Q > 0:
            q = (P + r) // Q
        else:
            q = -((P + r) // -Q) - 1
        yield q
        P = q * Q - P
        Q = (D - P * P) // Q


def lower_convergents(a, b, d: int) -> Iterator[mpq]:
    """Strictly increasing continued-fraction convergents below ``a + b*sqrt(d)``."""
    h0, h1 = 1, 0
    k0, k1 = 0, 1
    last = None
    for i, q in enumerate(quad_continued_fraction(a, b, d)):
        h0, h1 = q * h0 + h1, h0
        k0, k1 = q * k0 + k1, k0
        if i % 2 == 0:
            c = mpq(h0, k0)
            if last is None or c > last:
                last = c
                yield c


def convergents(a, b, d: int) -> Iterator[mpq]:
    """All continued-fraction convergents of ``a + b*sqrt(d)``, alternating around it."""
    h0, h1 = 1, 0
    k0, k1 = 0, 1
    for q in quad_continued_fraction(a, b, d):
        h0, h1 = q * h0 + h1, h0
        k0, k1 = q * k0 + k1, k0
        yield mpq(h0, k0)


@dataclass(frozen=True)
class GroupValue:
    """Element ``q + m*delta`` of the value group Q + Z*delta.

    When delta is rational the pair is folded so that ``m == 0``.
    """

    q: mpq
    m: int = 0
    delta: Breadth = Breadth.rational(0)

    def __post_init__(self):
        q, m, delta = mpq(self.q), int(self.m), self.delta
        if m and delta.is_infinite:
            raise ValueError("an infinite breadth has no finite multiples")
        if delta.is_rational and m:
            q, m = q + m * delta.a, 0
        object.__setattr__(self, "q", q)
        object.__setattr__(self, "m", m)

    @classmethod
    def of(cls, q, delta: Breadth | None = None) -> "GroupValue":
        return cls(mpq(q), 0, delta or Breadth.rational(0))

    def _same(self, other: "GroupValue") -> Breadth:
        if self.m and other.m and self.delta != other.delta:
            raise ValueError(f"values over different breadths {self.delta} and {other.delta}")
        return self.delta if self.m else other.delta

    def sign(self) -> int:
        if self.m == 0:
            return _sign(self.q)
        dl = self.delta
        return quad_sign(self.q + self.m * dl.a, self.m * dl.b, dl.d)

    def __add__(self, other):
        if not isinstance(other, GroupValue):
            other = GroupValue.of(other)
        return GroupValue(self.q + other.q, self.m + other.m, self._same(other))

    __radd__ = __add__

    def __neg__(self):
        return GroupValue(-self.q, -self.m, self.delta)

    def __sub__(self, other):
        if not isinstance(other, GroupValue):
            other = GroupValue.of(other)
        return self + (-other)

    def __mul__(self, k: int):
        return GroupValue(self.q * k, self.m * k, self.delta)

    __rmul__ = __mul__

    def _cmp(self, other) -> int:
        if other == INF:
            return -1
        if other == -INF:
            return 1
        return (self - other).sign()

    def __eq__(self, other):
        if isinstance(other, GroupValue):
            return self.q == other.q and self.m == other.m and (
                self.m == 0 or self.delta == other.delta
            )
        if isinstance(other, int) or hasattr(other, "denominator"):
            return self.m == 0 and self.q == other
        return NotImplemented

    def __hash__(self):
        return hash((self.q, self.m))

    def __lt__(self, other):
        return self._cmp(other) < 0

    def __le__(self, other):
        return self._cmp(other) <= 0

    def __gt__(self, other):
        return self._cmp(other) > 0

    def __ge__(self, other):
        return self._cmp(other) >= 0

    def __str__(self):
        if self.m == 0:
            return str(self.q)
        dl = "delta" if self.delta.kind != "quadirr" else str(self.delta)
        mpart = dl if self.m == 1 else f"{self.m}*({dl})" if " " in dl else f"{self.m}*{dl}"
        if self.q == 0:
            return mpart
        return f"{self.q} + {mpart}"

    def to_json(self) -> dict:
        return {"q": str(self.q), "m": self.m, "delta": str(self.delta)}


def rational_between(lo, hi) -> mpq:
    """A rational r with ``lo <= r < hi`` (``lo < r`` when lo is irrational).

    ``lo`` and ``hi`` are rationals, GroupValues or +-INF with ``lo < hi``.
    """
    def real(x):
        if isinstance(x, GroupValue):
            if x.m == 0:
                return x.q
            return x
        return x

    lo, hi = real(lo), real(hi)
    if lo == -INF:
        if hi == INF:
            return mpq(0)
        if isinstance(hi, GroupValue):
            return mpq(Breadth.quadirr(hi.q + hi.m * hi.delta.a, hi.m * hi.delta.b, hi.delta.d).floor() - 1)
        return mpq(hi) - 1
    if not isinstance(lo, GroupValue):
        return mpq(lo)
    x = Breadth.quadirr(lo.q + lo.m * lo.delta.a, lo.m * lo.delta.b, lo.delta.d)
    for c in convergents(x.a, x.b, x.d):
        if x.lt(c) and (hi == INF or c < hi):
            return c
    raise AssertionError("unreachable")
