"""Valuations on K(X) attached to a pseudo-convergent sequence E.

The value profile ``val(phi(s_n)) = lam * delta_n + gamma`` (n >= N) drives
everything here.  ``lam`` is the dominating degree: zeros minus poles of phi
that are pseudo-limits of E.  It is counted in closed form from the sequence
data, and N comes from the largest distance of the remaining critical points.
"""
from __future__ import annotations

from dataclasses import dataclass

from gmpy2 import mpq

from .breadth import Breadth, GroupValue
from .ground_field import INF, FieldElem, Poly, PoleError, RationalFunction, rf_eval, taylor_shift
from .newton import root_distances, root_valuations
from .pcv import CauchySeries, PCSeq, PreconditionError


class CertificationError(RuntimeError):
    """An internal consistency check failed."""


# -- value types -------------------------------------------------------------

@dataclass(frozen=True)
class ValueProfile:
    lam: int
    gamma: mpq
    start: int

    def at(self, delta_n) -> mpq:
        return self.lam * delta_n + self.gamma

    def __str__(self):
        return f"lambda = {self.lam}, gamma = {self.gamma}, from n = {self.start}"


@dataclass(frozen=True)
class Socle:
    """``w_E = +inf`` (phi lies in the socle) or ``-inf`` (phi^-1 does)."""

    order: int

    def __str__(self):
        if self.order > 0:
            return f"+inf (socle: the limit is a zero of order {self.order})"
        return f"-inf (the limit is a pole of order {-self.order})"


@dataclass(frozen=True, order=True)
class RankTwoValue:
    """``(w_E(phi), -degdom_E(phi))`` ordered lexicographically."""

    first: GroupValue
    second: int

    def __add__(self, other):
        return RankTwoValue(self.first + other.first, self.second + other.second)

    def nonnegative(self) -> bool:
        s = self.first.sign()
        return s > 0 or (s == 0 and self.second >= 0)

    def __str__(self):
        return f"({self.first}, {self.second})"


@dataclass(frozen=True, order=True)
class CauchyValue:
    """Value for a Cauchy sequence: (order of vanishing at the limit, value of the unit part)."""

    order: int
    value: mpq

    def __add__(self, other):
        return CauchyValue(self.order + other.order, self.value + other.value)

    def nonnegative(self) -> bool:
        return self.order > 0 or (self.order == 0 and self.value >= 0)

    def __str__(self):
        return f"(order {self.order}, value {self.value})"


@dataclass(frozen=True)
class RankReport:
    rank: int
    reason: str
    minimal_polynomial: Poly | None = None
    overring: str | None = None
    notes: tuple = ()

    def __str__(self):
        out = f"rank {self.rank} ({self.reason})"
        if self.minimal_polynomial is not None:
            out += f"; q = {self.minimal_polynomial}; overring {self.overring}"
        return out


@dataclass(frozen=True)
class AnnulusLaw:
    lam: int
    gamma: mpq

    def at(self, m) -> mpq:
        return self.lam * m + self.gamma


def _rf(phi) -> RationalFunction:
    return RationalFunction.of(phi)


def _is_finite(x) -> bool:
    return x not in (INF, -INF)


# -- monomial valuations ------------------------------------------------------

def _poly_monomial_val(f: Poly, alpha, delta: Breadth) -> tuple:
    g = taylor_shift(f, alpha)
    best, idx = None, []
    for i, c in enumerate(g.coeffs):
        if c.is_zero():
            continue
        v = GroupValue(c.val, i, delta)
        if best is None or v < best:
            best, idx = v, [i]
        elif v == best:
            idx.append(i)
    return best, idx


def monomial_val(phi, alpha, delta: Breadth) -> GroupValue:
    """``min_i val(a_i) + i*delta`` over the expansion in powers of ``X - alpha``."""
    if delta.is_infinite:
        raise PreconditionError("monomial valuation needs a finite delta")
    phi = _rf(phi)
    if phi.is_zero():
        raise PreconditionError("valuation of the zero function")
    alpha = FieldElem.of(alpha, phi.backend)
    vn, _ = _poly_monomial_val(phi.num, alpha, delta)
    vd, _ = _poly_monomial_val(phi.den, alpha, delta)
    return vn - vd


def monomial_argmin(f: Poly, alpha, delta: Breadth) -> list:
    """Indices attaining the monomial valuation of a polynomial."""
    return _poly_monomial_val(f, FieldElem.of(alpha, f.backend), delta)[1]


# -- dominating degree and the profile ---------------------------------------

def q_order(f: Poly, q: Poly) -> int:
    """Largest k with q^k dividing f."""
    k = 0
    while f.degree >= q.degree:
        quo, rem = f.divmod(q)
        if not rem.is_zero():
            break
        f, k = quo, k + 1
    return k


def pseudo_limit_counts(phi, E: PCSeq) -> tuple:
    """Zeros and poles of phi (with multiplicity) that are pseudo-limits of E."""
    phi = _rf(phi)
    if phi.is_zero():
        raise PreconditionError("the zero function has no dominating degree")
    beta = E.pseudo_limit
    if beta is not None:
        dm = root_distances(phi, beta)
        z = sum(m for d, m in dm.zeros if E.breadth.le(d))
        p = sum(m for d, m in dm.poles if E.breadth.le(d))
        return z, p
    if isinstance(E, CauchySeries):
        q = E.minimal_polynomial
        return q_order(phi.num, q), q_order(phi.den, q)
    if E.declared_type == "transcendental":
        return 0, 0
    raise PreconditionError(f"no closed-form pseudo-limit data for {E.label}")


def degdom(phi, E: PCSeq) -> int:
    z, p = pseudo_limit_counts(phi, E)
    return z - p


def _first_index_above(E: PCSeq, tau) -> int:
    if tau == -INF:
        return 0
    n = 0
    while not E.delta(n) > tau:
        n += 1
        if n > E.max_index:
            raise PreconditionError(f"gauge of {E.label} stays below {tau} up to max_index")
    return n


def critical_radius(phi, E: PCSeq, counts: tuple | None = None) -> tuple:
    """``(N, tau)``: tau bounds the distance from the pseudo-limits to every
    critical point of phi that is not itself a pseudo-limit, and the profile law
    holds exactly from index N on.

    For a transcendental E, tau is read at ``s_N`` instead, where every critical
    point is closer than ``delta_N``.
    """
    phi = _rf(phi)
    counts = counts or pseudo_limit_counts(phi, E)
    beta = E.pseudo_limit
    if beta is not None:
        dm = root_distances(phi, beta)
        tau = max((d for d in dm.radii if E.breadth.gt(d)), default=-INF)
        return _first_index_above(E, tau), tau
    for n in range(E.max_index + 1):
        dm = root_distances(phi, E.s(n))
        dn = E.delta(n)
        if dm.count_at_least(dn) == counts:
            tau = max((d for d in dm.radii if d < dn), default=-INF)
            if E.declared_type == "transcendental":
                # no critical point within delta_n of s_n: the value is frozen from here
                return n, tau
            return _first_index_above(E, tau), tau
    raise PreconditionError(f"profile of {phi} along {E.label} not certified by max_index")


def profile_start(phi, E: PCSeq, counts: tuple | None = None) -> int:
    """First index from which the profile law holds exactly."""
    return critical_radius(phi, E, counts)[0]


def value_profile(phi, E: PCSeq, check: int = 3) -> ValueProfile:
    """``(lam, gamma, N)`` with ``val(phi(s_n)) = lam*delta_n + gamma`` for n >= N."""
    phi = _rf(phi)
    counts = pseudo_limit_counts(phi, E)
    lam = counts[0] - counts[1]
    start = profile_start(phi, E, counts)
    v = rf_eval(phi, E.s(start)).val
    gamma = v - lam * E.delta(start)
    for n in range(start + 1, min(start + check, E.max_index) + 1):
        if rf_eval(phi, E.s(n)).val != lam * E.delta(n) + gamma:
            raise CertificationError(f"profile law fails for {phi} along {E.label} at n = {n}")
    return ValueProfile(lam, gamma, start)


# -- the valuations ---------------------------------------------------------

def w_E(phi, E: PCSeq, cross_check: bool = True):
    """Limit of ``val(phi(s_n))``: a GroupValue, or a Socle flag for a Cauchy E."""
    prof = value_profile(phi, E)
    if E.is_cauchy:
        if prof.lam:
            return Socle(prof.lam)
        return GroupValue.of(prof.gamma)
    w = GroupValue(prof.gamma, prof.lam, E.breadth)
    if cross_check and E.pseudo_limit is not None:
        mv = monomial_val(phi, E.pseudo_limit, E.breadth)
        if mv != w:
            raise CertificationError(f"w_E = {w} but the monomial valuation gives {mv}")
    return w


def regime(E: PCSeq) -> str:
    """``rank2``, ``rank1`` or ``cauchy``: the shape of v_E."""
    if E.is_cauchy:
        return "cauchy"
    if E.declared_type == "algebraic" and E.breadth.is_rational:
        return "rank2"
    return "rank1"


def v_E(phi, E: PCSeq):
    """The valuation whose ring is V_E."""
    phi = _rf(phi)
    prof = value_profile(phi, E)
    kind = regime(E)
    if kind == "cauchy":
        out = CauchyValue(prof.lam, prof.gamma)
        beta = E.pseudo_limit
        if beta is not None and prof.lam == 0 and rf_eval(phi, beta).val != prof.gamma:
            raise CertificationError("value at the limit disagrees with the profile")
        return out
    w = GroupValue(prof.gamma, prof.lam, E.breadth)
    if kind == "rank2":
        return RankTwoValue(w, -prof.lam)
    return w


def is_nonnegative(value) -> bool:
    if isinstance(value, GroupValue):
        return value.sign() >= 0
    if isinstance(value, Socle):
        return value.order > 0
    return value.nonnegative()


def member(phi, E: PCSeq, ring: str = "V") -> bool:
    """Membership of phi in V_E or in W_E (``w_E >= 0``)."""
    ring = ring.upper()
    if ring == "V":
        return is_nonnegative(v_E(phi, E))
    if ring == "W":
        return is_nonnegative(w_E(phi, E))
    raise PreconditionError(f"ring must be V or W, not {ring!r}")


def rank_report(E: PCSeq) -> RankReport:
    same_residue = "residue field of V_E equals that of V (not computed)"
    if E.declared_type == "transcendental":
        return RankReport(1, "transcendental", notes=(same_residue, "V_E is an immediate extension of V"))
    if E.is_cauchy:
        return RankReport(2, "infinite breadth", E.minimal_polynomial, "K[X]_(q)")
    if E.breadth.is_torsion:
        return RankReport(2, f"torsion: delta = {E.breadth}", notes=(same_residue,))
    return RankReport(1, f"non-torsion: delta = {E.breadth}", notes=(same_residue,))


def torsion_witness(E: PCSeq) -> RationalFunction:
    """``(X - beta)/c`` with ``val(c) = delta``: in W_E but not in V_E when delta is rational."""
    beta = E.pseudo_limit
    if beta is None or not E.breadth.is_rational:
        raise PreconditionError("needs a pseudo-limit in K and a rational breadth")
    b = E.backend
    x = RationalFunction.X(b)
    return (x - beta) / FieldElem.t_pow(E.breadth.a, b)


# -- annuli -------------------------------------------------------------------

def _probe_radii(theta1, theta2) -> list:
    if theta1 == -INF and theta2 == INF:
        return [mpq(-1), mpq(0), mpq(1)]
    if theta2 == INF:
        return [theta1 + 1, theta1 + 2, theta1 + 3]
    if theta1 == -INF:
        return [theta2 - 3, theta2 - 2, theta2 - 1]
    w = theta2 - theta1
    return [theta1 + w / 4, theta1 + w / 2, theta1 + 3 * w / 4]


def valid_annuli(radii: list) -> list:
    """Maximal open intervals between consecutive critical radii."""
    pts = [-INF] + [r for r in radii if _is_finite(r)] + [INF]
    return list(zip(pts, pts[1:]))


def annulus_law(phi, s, theta1, theta2) -> AnnulusLaw:
    """``val(phi(x)) = lam*val(x - s) + gamma`` for ``theta1 < val(x - s) < theta2``."""
    phi = _rf(phi)
    b = phi.backend
    s = FieldElem.of(s, b)
    if not theta1 < theta2:
        raise PreconditionError("need theta1 < theta2")
    dm = root_distances(phi, s)
    inside = [r for r in dm.radii if theta1 < r < theta2]
    if inside:
        raise PreconditionError(
            f"critical radii {[str(r) for r in inside]} inside the annulus; "
            f"valid annuli: {[(str(a), str(c)) for a, c in valid_annuli(dm.radii)]}"
        )
    lam = dm.signed_at_least(theta2)
    radii = _probe_radii(mpq(theta1) if _is_finite(theta1) else theta1,
                         mpq(theta2) if _is_finite(theta2) else theta2)
    coeffs = [1, 2, 3] if b.p == 0 else [c.v for c in b.elements()[1:]]
    gammas = set()
    for i, m in enumerate(radii):
        for c in (coeffs if i == 1 else coeffs[:1]):
            x = s + FieldElem.monomial(c, m, b)
            gammas.add(rf_eval(phi, x).val - lam * m)
    if len(gammas) != 1:
        raise CertificationError(f"annulus probes disagree: {sorted(gammas)}")
    return AnnulusLaw(lam, gammas.pop())


def stable_annulus(phi, E: PCSeq):
    """``(delta', sign)``: on ``delta' < val(x - beta) < delta`` no critical point sits
    and ``val(phi(x))`` has constant sign."""
    beta = E.pseudo_limit
    if beta is None or E.is_cauchy:
        raise PreconditionError("needs a pseudo-limit in K and a finite breadth")
    phi = _rf(phi)
    dm = root_distances(phi, beta)
    below = [d for d in dm.radii if E.breadth.gt(d)]
    above = [d for d in dm.radii if E.breadth.le(d)]
    lower = max(below, default=-INF)
    upper = min(above, default=INF)
    law = annulus_law(phi, beta, lower, upper)
    cands = [lower]
    if law.lam:
        root = -law.gamma / law.lam
        if root > lower and E.breadth.gt(root):
            cands.append(root)
    dprime = max(cands)
    if dprime == -INF:
        dprime = E.delta(0)
    v = law.at(E.delta(_first_index_above(E, dprime)))
    return dprime, (v > 0) - (v < 0)
