"""Pseudo-convergent sequences in K: gauges, closed-form kinds and their basic predicates.

Each sequence is given in closed form, so every term is exact.  The gauge
``delta_n = val(s_{n+1} - s_n)`` is strictly increasing and its limit is the
breadth.
"""
from __future__ import annotations

import json
from dataclasses import dataclass, field, replace
from itertools import islice
from pathlib import Path

from gmpy2 import mpq

from .breadth import Breadth, lower_convergents, parse_breadth
from .expr import parse_elem, parse_poly
from .ground_field import INF, QQ, Backend, FieldElem, Poly, RationalFunction, SparseSum

DEFAULT_MAX_INDEX = 64


class PreconditionError(ValueError):
    """An operation was called outside its domain."""


class IndexOverflow(PreconditionError):
    pass


# -- gauges ----------------------------------------------------------------

@dataclass(frozen=True)
class Dyadic:
    """``delta_n = limit - scale / 2^n``."""

    limit: mpq
    scale: mpq = mpq(1)

    def __post_init__(self):
        object.__setattr__(self, "limit", mpq(self.limit))
        object.__setattr__(self, "scale", mpq(self.scale))
        if self.scale <= 0:
            raise PreconditionError("Dyadic scale must be positive")

    def value(self, n: int) -> mpq:
        return self.limit - self.scale / mpq(2) ** n

    @property
    def breadth(self) -> Breadth:
        return Breadth.rational(self.limit)

    def to_json(self) -> dict:
        return {"kind": "Dyadic", "params": {"limit": str(self.limit), "scale": str(self.scale)}}


@dataclass(frozen=True)
class QuadIrr:
    """Lower continued-fraction convergents of ``a + b*sqrt(d)``; index 0 sits one below the first."""

    a: mpq
    b: mpq
    d: int
    _cache: list = field(default_factory=list, compare=False, repr=False)

    def __post_init__(self):
        object.__setattr__(self, "a", mpq(self.a))
        object.__setattr__(self, "b", mpq(self.b))
        if not self.breadth.kind == "quadirr":
            raise PreconditionError("QuadIrr gauge needs an irrational target")

    @property
    def breadth(self) -> Breadth:
        return Breadth.quadirr(self.a, self.b, self.d)

    def value(self, n: int) -> mpq:
        if n == 0:
            return self.value(1) - 1
        if len(self._cache) < n:
            br = self.breadth
            self._cache[:] = list(islice(lower_convergents(br.a, br.b, br.d), n + 8))
        return self._cache[n - 1]

    def to_json(self) -> dict:
        return {"kind": "QuadIrr", "params": {"a": str(self.a), "b": str(self.b), "d": self.d}}


@dataclass(frozen=True)
class Linear:
    """``delta_n = slope * (n + 1)``; the breadth is infinite."""

    slope: mpq = mpq(1)

    def __post_init__(self):
        object.__setattr__(self, "slope", mpq(self.slope))
        if self.slope <= 0:
            raise PreconditionError("Linear slope must be positive")

    def value(self, n: int) -> mpq:
        return self.slope * (n + 1)

    @property
    def breadth(self) -> Breadth:
        return Breadth.infinity()

    def to_json(self) -> dict:
        return {"kind": "Linear", "params": {"slope": str(self.slope)}}


Gauge = Dyadic | QuadIrr | Linear


def gauge_from_json(obj: dict) -> Gauge:
    kind, params = obj["kind"], obj.get("params", {})
    if kind == "Dyadic":
        return Dyadic(mpq(params["limit"]), mpq(params.get("scale", 1)))
    if kind == "QuadIrr":
        return QuadIrr(mpq(params.get("a", 0)), mpq(params.get("b", 1)), int(params["d"]))
    if kind == "Linear":
        return Linear(mpq(params.get("slope", 1)))
    raise PreconditionError(f"unknown gauge kind {kind!r}")


# -- sequences -------------------------------------------------------------

@dataclass(frozen=True, eq=False)
class PCSeq:
    """Base class; subclasses define ``term(n)``."""

    gauge: Gauge
    name: str = ""
    backend: Backend = QQ
    max_index: int = DEFAULT_MAX_INDEX
    _terms: dict = field(default_factory=dict, compare=False, repr=False)

    kind = "abstract"
    declared_type = "algebraic"

    def term(self, n: int) -> FieldElem:
        raise NotImplementedError

    @property
    def breadth(self) -> Breadth:
        return self.gauge.breadth

    @property
    def pseudo_limit(self) -> FieldElem | None:
        """A pseudo-limit in K when one is known."""
        return None

    @property
    def minimal_polynomial(self) -> Poly | None:
        return None

    @property
    def is_cauchy(self) -> bool:
        return self.breadth.is_infinite

    def delta(self, n: int) -> mpq:
        return self.gauge.value(n)

    def s(self, n: int) -> FieldElem:
        if n < 0 or n > self.max_index:
            raise IndexOverflow(f"index {n} outside 0..{self.max_index} for {self.label}")
        if n not in self._terms:
            self._terms[n] = self.term(n)
        return self._terms[n]

    def with_max_index(self, n: int) -> "PCSeq":
        if n < 8:
            raise PreconditionError("max_index must be at least 8")
        return replace(self, max_index=n, _terms={})

    @property
    def label(self) -> str:
        return self.name or self.kind

    def to_json(self) -> dict:
        out = {"kind": self.kind, "gauge": self.gauge.to_json(), "declared_type": self.declared_type}
        if self.name:
            out["name"] = self.name
        return out

    def __repr__(self):
        return f"{self.kind}({self.label})"


@dataclass(frozen=True, eq=False)
class SingleTerm(PCSeq):
    """``s_n = beta + t^{delta_n}``."""

    beta: FieldElem = None
    kind = "SingleTerm"

    def __post_init__(self):
        if self.beta is None:
            object.__setattr__(self, "beta", FieldElem.zero(self.backend))

    def term(self, n: int) -> FieldElem:
        return self.beta + FieldElem.t_pow(self.delta(n), self.backend)

    @property
    def pseudo_limit(self) -> FieldElem:
        return self.beta

    @property
    def minimal_polynomial(self) -> Poly | None:
        if self.is_cauchy:
            return Poly([-self.beta, 1], self.backend)
        return None

    def to_json(self) -> dict:
        return {**super().to_json(), "beta": str(self.beta)}


@dataclass(frozen=True, eq=False)
class PartialSum(PCSeq):
    """``s_n = sum_{i<n} c * t^{delta_i}``; of transcendental type for a finite breadth."""

    coefficient: FieldElem = None
    kind = "PartialSum"
    declared_type = "transcendental"

    def __post_init__(self):
        if self.coefficient is None:
            object.__setattr__(self, "coefficient", FieldElem.one(self.backend))
        if self.coefficient.is_zero() or not self.coefficient.val == 0:
            raise PreconditionError("PartialSum coefficient must be a nonzero constant")
        if isinstance(self.gauge, Linear):
            raise PreconditionError("PartialSum with an infinite breadth converges in K; use CauchyToK")

    def term(self, n: int) -> FieldElem:
        if n == 0:
            return FieldElem.zero(self.backend)
        return self.s(n - 1) + self.coefficient * FieldElem.t_pow(self.delta(n - 1), self.backend)

    def to_json(self) -> dict:
        return {**super().to_json(), "coefficient": str(self.coefficient)}


@dataclass(frozen=True, eq=False)
class CauchyToK(PCSeq):
    """Truncations of the t-adic expansion of ``beta``, adjusted so ``val(beta - s_n) = delta_n``."""

    beta: FieldElem = None
    kind = "CauchyToK"

    def __post_init__(self):
        if self.beta is None:
            raise PreconditionError("CauchyToK needs a limit")
        if not isinstance(self.gauge, Linear):
            raise PreconditionError("CauchyToK needs a Linear gauge")

    def term(self, n: int) -> FieldElem:
        d = self.delta(n)
        head = self.beta.expand(d, inclusive=True)
        a_n = head.coefficient(d)
        s = head.truncate(d) + SparseSum.monomial(a_n - 1, d, self.backend)
        return FieldElem(s)

    @property
    def pseudo_limit(self) -> FieldElem:
        return self.beta

    @property
    def minimal_polynomial(self) -> Poly:
        return Poly([-self.beta, 1], self.backend)

    def to_json(self) -> dict:
        return {**super().to_json(), "beta": str(self.beta)}


def _binomial(r: mpq, i: int) -> mpq:
    c = mpq(1)
    for j in range(i):
        c = c * (r - j) / (j + 1)
    return c


@dataclass(frozen=True, eq=False)
class CauchySeries(PCSeq):
    """Partial sums ``sum_{i<=n} binom(power, i) t^{slope*i}`` of ``(1 + t^slope)^power``."""

    power: mpq = mpq(1, 2)
    minpoly: Poly = None
    kind = "CauchySeries"

    def __post_init__(self):
        object.__setattr__(self, "power", mpq(self.power))
        if not isinstance(self.gauge, Linear):
            raise PreconditionError("CauchySeries needs a Linear gauge")
        if self.power.denominator == 1:
            raise PreconditionError("an integer power gives a finite sum, not a Cauchy sequence")
        if self.backend.p:
            raise PreconditionError("binomial series are only supported over Q")
        if self.minpoly is None:
            num, den = int(self.power.numerator), int(self.power.denominator)
            base = FieldElem(SparseSum([(0, 1), (self.gauge.slope, 1)], self.backend)) ** num
            coeffs = [-base] + [0] * (den - 1) + [1]
            object.__setattr__(self, "minpoly", Poly(coeffs, self.backend))

    def term(self, n: int) -> FieldElem:
        slope = self.gauge.slope
        prev = self.s(n - 1).num if n else SparseSum((), self.backend)
        return FieldElem(prev + SparseSum.monomial(_binomial(self.power, n), slope * n, self.backend))

    @property
    def minimal_polynomial(self) -> Poly:
        return self.minpoly

    def to_json(self) -> dict:
        return {
            **super().to_json(),
            "series": {"rule": "binomial", "power": str(self.power)},
            "minimal_polynomial": str(self.minpoly),
        }


# -- named fixtures ---------------------------------------------------------

def fixture(name: str, backend: Backend = QQ) -> PCSeq:
    """The shipped sequences E1..E5."""
    if name == "E1":
        return SingleTerm(Dyadic(1, 1), name="E1", backend=backend)
    if name == "E2":
        return SingleTerm(QuadIrr(0, 1, 2), name="E2", backend=backend)
    if name == "E3":
        beta = parse_elem("t/(1 - t)", backend)
        return CauchyToK(Linear(1), name="E3", backend=backend, beta=beta)
    if name == "E4":
        if backend.p:
            raise PreconditionError("E4 is defined over Q only")
        return CauchySeries(Linear(1), name="E4", backend=backend, power=mpq(1, 2),
                            minpoly=parse_poly("X^2 - (1 + t)", backend))
    if name == "E5":
        return PartialSum(Dyadic(1, 1), name="E5", backend=backend)
    raise KeyError(name)


FIXTURE_NAMES = ("E1", "E2", "E3", "E4", "E5")


def fixtures(backend: Backend = QQ) -> dict:
    return {n: fixture(n, backend) for n in FIXTURE_NAMES}


def seq_from_json(obj: dict, backend: Backend = QQ) -> PCSeq:
    kind = obj["kind"]
    gauge = gauge_from_json(obj["gauge"])
    name = obj.get("name", "")
    declared = obj.get("declared_type")
    if kind == "SingleTerm":
        seq = SingleTerm(gauge, name=name, backend=backend, beta=parse_elem(obj.get("beta", "0"), backend))
    elif kind == "PartialSum":
        seq = PartialSum(gauge, name=name, backend=backend,
                         coefficient=parse_elem(obj.get("coefficient", "1"), backend))
    elif kind == "CauchyToK":
        seq = CauchyToK(gauge, name=name, backend=backend, beta=parse_elem(obj["beta"], backend))
    elif kind == "CauchySeries":
        series = obj.get("series", {"rule": "binomial", "power": "1/2"})
        if series.get("rule", "binomial") != "binomial":
            raise PreconditionError(f"unknown series rule {series['rule']!r}")
        mp = obj.get("minimal_polynomial")
        seq = CauchySeries(gauge, name=name, backend=backend, power=mpq(series["power"]),
                           minpoly=parse_poly(mp, backend) if mp else None)
    else:
        raise PreconditionError(f"unknown sequence kind {kind!r}")
    if declared is not None and declared != seq.declared_type:
        raise PreconditionError(
            f"{kind} sequences are of {seq.declared_type} type, not {declared}"
        )
    return seq


def load_seq(ref: str, backend: Backend = QQ) -> PCSeq:
    """A fixture name or ``@path`` to a JSON sequence file."""
    if ref.startswith("@"):
        return seq_from_json(json.loads(Path(ref[1:]).read_text()), backend)
    try:
        return fixture(ref, backend)
    except KeyError:
        raise PreconditionError(f"unknown sequence {ref!r}; use E1..E5 or @file.json") from None


# -- verdicts and predicates -------------------------------------------------

@dataclass(frozen=True)
class Verdict:
    value: bool | None
    status: str = "exact"
    reason: str = ""

    def __bool__(self):
        return self.value is True


def materialize(E: PCSeq, n: int):
    """``(s_n, delta_n)``."""
    return E.s(n), E.delta(n)


def breadth_contains(breadth: Breadth, v) -> bool:
    """``v >= breadth``, i.e. ``v > delta_n`` for every n."""
    return breadth.le(v)


def is_pseudo_limit(E: PCSeq, alpha, depth: int = 32) -> Verdict:
    """Whether ``val(alpha - s_n) = delta_n`` for all n."""
    alpha = FieldElem.of(alpha, E.backend)
    beta = E.pseudo_limit
    if beta is not None:
        return Verdict(breadth_contains(E.breadth, (alpha - beta).val), "exact",
                       "compared with the closed-form pseudo-limit")
    if isinstance(E, CauchySeries):
        return Verdict(False, "exact", "the limit has a minimal polynomial of degree > 1")
    depth = min(depth, E.max_index)
    ok = all((alpha - E.s(n)).val == E.delta(n) for n in range(depth + 1))
    if ok:
        return Verdict(True, "definitional", f"val(alpha - s_n) = delta_n for n <= {depth}")
    return Verdict(False, "exact", "a term violates val(alpha - s_n) = delta_n")


def in_breadth_ideal(E: PCSeq, b) -> bool:
    b = FieldElem.of(b, E.backend)
    return breadth_contains(E.breadth, b.val)


@dataclass(frozen=True)
class TypeReport:
    type: str
    status: str
    certificate: dict


def classify_type(E: PCSeq, depth: int = 24) -> TypeReport:
    if E.pseudo_limit is not None:
        return TypeReport("algebraic", "exact", {"pseudo_limit": str(E.pseudo_limit)})
    if isinstance(E, CauchySeries):
        q = E.minimal_polynomial
        depth = min(depth, E.max_index)
        vals = [q(E.s(n)).val for n in range(depth)]
        increasing = all(a < b for a, b in zip(vals, vals[1:]))
        return TypeReport("algebraic", "exact" if increasing else "unverified",
                          {"minimal_polynomial": str(q), "profile_increasing": increasing})
    if isinstance(E, PartialSum):
        # a pseudo-limit in the algebraic closure would be a Puiseux series with
        # bounded exponent denominators, but the terms need unbounded ones
        depth = min(depth, E.max_index)
        dens = [int(E.delta(n).denominator) for n in range(depth)]
        unbounded = all(a < b for a, b in zip(dens[1:], dens[2:]))
        from .oracle import constant_tail

        battery = [Poly([0, 1], E.backend), Poly([-1, 1], E.backend),
                   Poly([-FieldElem.t_pow(1, E.backend), 0, 1], E.backend),
                   Poly([-FieldElem.t_pow(2, E.backend), 0, 0, 1], E.backend)]
        scans = {str(f): constant_tail(RationalFunction(f), E, depth) for f in battery}
        ok = unbounded and all(scans.values())
        return TypeReport("transcendental", "exact" if ok else "unverified",
                          {"exponent_denominators_unbounded": unbounded, "scan": scans})
    return TypeReport(E.declared_type, "declared", {})


def equivalent(E: PCSeq, F: PCSeq) -> Verdict:
    """Equal breadths and mutually cofinal terms (the same valuation ring)."""
    if E.breadth != F.breadth:
        return Verdict(False, "exact", f"breadths {E.breadth} vs {F.breadth}")
    if E.declared_type != F.declared_type:
        return Verdict(False, "exact", f"types {E.declared_type} vs {F.declared_type}")
    bE, bF = E.pseudo_limit, F.pseudo_limit
    if bE is not None and bF is not None:
        d = (bE - bF).val
        if breadth_contains(E.breadth, d):
            return Verdict(True, "exact", f"val(beta_E - beta_F) = {d} reaches the breadth")
        return Verdict(False, "exact", f"val(beta_E - beta_F) = {d} is below the breadth {E.breadth}")
    if E.is_cauchy:
        if (bE is None) != (bF is None):
            return Verdict(False, "exact", "one limit lies in K and the other does not")
        qE, qF = E.minimal_polynomial, F.minimal_polynomial
        if not qE == qF:
            return Verdict(False, "exact", "limits have different minimal polynomials")
        if isinstance(E, CauchySeries) and isinstance(F, CauchySeries) and E.power == F.power:
            return Verdict(True, "exact", "same binomial series")
    from .oracle import equivalent_definitional

    res = equivalent_definitional(E, F)
    return Verdict(res, "definitional", "depth-bounded cofinality check")
