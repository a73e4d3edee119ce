"""Basic open sets of the space of valuation rings V_E and separation witnesses.

Rings are ``VE(E)``, ``WE(E)`` or ``WPoint(s)`` (the ring of phi with
``val(phi(s)) >= 0``).  ``Omega(s, gamma)`` collects the V_E with
``w_E(X - s) <= gamma``; it coincides with ``B(t^gamma / (X - s))``.
"""
from __future__ import annotations

from dataclasses import dataclass, field

from gmpy2 import mpq

from .breadth import GroupValue, rational_between
from .ground_field import INF, FieldElem, PoleError, RationalFunction, rf_eval
from .newton import root_distances
from .oracle import value_at
from .pcv import CauchyToK, Linear, PCSeq, PreconditionError
from .valuations import (
    Socle,
    annulus_law,
    critical_radius,
    member,
    value_profile,
    w_E,
)


@dataclass(frozen=True)
class VE:
    seq: PCSeq


@dataclass(frozen=True)
class WE:
    seq: PCSeq


@dataclass(frozen=True, eq=False)
class WPoint:
    s: FieldElem


def _rf(phi) -> RationalFunction:
    return RationalFunction.of(phi)


def in_B(phi, ring) -> bool:
    """Whether phi lies in the ring."""
    if isinstance(ring, VE):
        return member(phi, ring.seq, "V")
    if isinstance(ring, WE):
        return member(phi, ring.seq, "W")
    if isinstance(ring, WPoint):
        return rf_eval(_rf(phi), ring.s).val >= 0
    raise TypeError(f"not a ring descriptor: {ring!r}")


def cauchy_at(s, backend=None) -> PCSeq:
    """A Cauchy sequence converging to s; its ring V_E is W_s."""
    s = FieldElem.of(s) if backend is None else FieldElem.of(s, backend)
    return CauchyToK(Linear(1), name=f"to {s}", backend=s.backend, beta=s)


def _x_minus(s, backend) -> RationalFunction:
    return RationalFunction.X(backend) - FieldElem.of(s, backend)


def distance_value(E: PCSeq, s):
    """``w_E(X - s)``: a GroupValue, or +INF when s is the limit of a Cauchy E."""
    w = w_E(_x_minus(s, E.backend), E, cross_check=False)
    if isinstance(w, Socle):
        return INF
    return w


def omega_membership(E: PCSeq, s, gamma) -> bool:
    w = distance_value(E, s)
    return w != INF and w <= mpq(gamma)


def omega_identity_witness(s, gamma, backend=None):
    """``(c, k)`` with ``val(c) = k*gamma`` so that Omega(s, gamma) = B(c/(X - s)^k).

    The value group is Q, so k = 1 and c = t^gamma always work.
    """
    c = FieldElem.t_pow(mpq(gamma)) if backend is None else FieldElem.t_pow(mpq(gamma), backend)
    return c, 1


def omega_function(s, gamma, backend) -> RationalFunction:
    c, k = omega_identity_witness(s, gamma, backend)
    return RationalFunction.of(c, backend) / _x_minus(s, backend) ** k


# -- constructible convergence -------------------------------------------------

@dataclass(frozen=True)
class ConvergenceResult:
    phi: RationalFunction
    target: bool
    final: bool
    stabilized_at: int
    status: str  # "converged", "undecided" or "mismatch"


def convergence_scan(E: PCSeq, phis, depth: int = 40, margin: int = 4) -> list:
    """Compare ``phi in W_{s_n}`` for n <= depth with ``phi in V_E``."""
    depth = min(depth, E.max_index)
    out = []
    for phi in phis:
        phi = _rf(phi)
        bits = [value_at(phi, E.s(n)) >= 0 for n in range(depth + 1)]
        last_change = max((n for n in range(1, depth + 1) if bits[n] != bits[n - 1]), default=0)
        target = member(phi, E, "V")
        if bits[-1] != target:
            status = "mismatch" if last_change <= depth - margin else "undecided"
        else:
            status = "converged" if last_change <= depth - margin else "undecided"
        out.append(ConvergenceResult(phi, target, bits[-1], last_change, status))
    return out


# -- breadths realizing a prescribed value ---------------------------------------

@dataclass(frozen=True)
class Candidate:
    center: FieldElem
    delta: mpq
    lam: int
    gamma: mpq


def enumerate_increasing(phi, target, centers=None) -> list:
    """Breadths d of sequences around each center with ``w(phi) = target`` and positive degdom.

    Between consecutive critical radii the law ``lam*d + gamma`` is linear, so
    each interval contributes at most one solution.
    """
    phi = _rf(phi)
    b = phi.backend
    target = mpq(target)
    centers = [FieldElem.zero(b)] if centers is None else [FieldElem.of(c, b) for c in centers]
    out = []
    for c in centers:
        dm = root_distances(phi, c)
        finite = [r for r in dm.radii if r != INF]
        bounds = [-INF] + finite + [INF]
        for lo, hi in zip(bounds, bounds[1:]):
            lam = dm.signed_at_least(hi)
            if lam <= 0:
                continue
            gamma = annulus_law(phi, c, lo, hi).gamma
            d = (target - gamma) / lam
            if lo < d and (d <= hi if hi != INF else True):
                out.append(Candidate(c, d, lam, gamma))
    return out


# -- separation witnesses ------------------------------------------------------

@dataclass(frozen=True, eq=False)
class OmegaSet:
    center: FieldElem
    radius: mpq
    complement: bool = False

    def contains(self, E: PCSeq) -> bool:
        return omega_membership(E, self.center, self.radius) != self.complement

    def __str__(self):
        core = f"Omega({self.center}, {self.radius})"
        return f"complement of {core}" if self.complement else core


@dataclass(frozen=True, eq=False)
class BSet:
    functions: tuple

    def contains(self, E: PCSeq) -> bool:
        return all(member(f, E, "V") for f in self.functions)

    def __str__(self):
        return "B(" + ", ".join(str(f) for f in self.functions) + ")"


@dataclass(frozen=True, eq=False)
class Piece:
    """Disjoint open sets: ``point_side`` holds V_E, ``closed_side`` holds the covered samples."""

    point_side: object
    closed_side: object
    covers: tuple
    kind: str

    def __str__(self):
        return f"[{self.kind}] {self.point_side}  |  {self.closed_side}  covers {list(self.covers)}"


@dataclass
class SeparationWitness:
    case: str
    pieces: list
    premise_met: bool
    notes: list = field(default_factory=list)

    def verify(self, E: PCSeq, sample: list) -> list:
        """Indices of sample rings the witness fails on (empty when valid)."""
        if not all(p.point_side.contains(E) for p in self.pieces):
            return list(range(len(sample)))
        bad = []
        for i, F in enumerate(sample):
            if not any(i in p.covers and p.closed_side.contains(F) for p in self.pieces):
                bad.append(i)
        return bad

    def __str__(self):
        lines = [f"case: {self.case}" + ("" if self.premise_met else " (sample meets B(Phi))")]
        lines += [str(p) for p in self.pieces]
        lines += [f"note: {n}" for n in self.notes]
        return "\n".join(lines)


class SeparationFailure(RuntimeError):
    def __init__(self, ring, witness):
        super().__init__(f"witness does not separate sample ring {ring!r}")
        self.ring = ring
        self.witness = witness


def _as_seq(ring) -> PCSeq:
    if isinstance(ring, PCSeq):
        return ring
    if isinstance(ring, VE):
        return ring.seq
    if isinstance(ring, WPoint):
        return cauchy_at(ring.s)
    raise TypeError(f"sample rings must be V_E or W_s, not {ring!r}")


def _omega_piece(center, radius, sample, point_inside: bool, kind: str) -> Piece:
    inner = OmegaSet(center, radius)
    outer = OmegaSet(center, radius, complement=True)
    point, closed = (inner, outer) if point_inside else (outer, inner)
    covers = tuple(i for i, F in enumerate(sample) if closed.contains(F))
    return Piece(point, closed, covers, kind)


def _case_transcendental(E, phis, sample, notes) -> list:
    b = E.backend
    n = max(critical_radius(phi, E)[0] for phi in phis)
    s, dn = E.s(n), E.delta(n)
    tau = max((r for phi in phis for r in root_distances(phi, s).radii), default=-INF)
    lo = tau
    for F in sample:
        w = distance_value(F, s)
        if isinstance(w, GroupValue) and w.m == 0 and w.q < dn:
            lo = max(lo, w.q)
    gamma = (lo + dn) / 2 if lo != -INF else dn - 1
    notes.append(f"center s_{n} = {s}, delta_{n} = {dn}, critical radii below {tau}")
    return [_omega_piece(s, gamma, sample, point_inside=False, kind="transcendental")]


def _case_k_limit(E, phis, sample, notes) -> list:
    alpha, br = E.pseudo_limit, E.breadth
    radii = [r for phi in phis for r in root_distances(phi, alpha).radii]
    zeta1 = max((r for r in radii if br.gt(r)), default=-INF)
    zeta2 = min((r for r in radii if br.le(r)), default=INF)
    theta1, theta2 = zeta1, zeta2
    for phi in phis:
        law = annulus_law(phi, alpha, zeta1, zeta2)
        if law.lam > 0:
            theta1 = max(theta1, -law.gamma / law.lam)
        elif law.lam < 0:
            theta2 = min(theta2, -law.gamma / law.lam)
    if theta1 == -INF:
        theta1 = E.delta(0)
    notes.append(f"annulus around {alpha}: ({theta1}, {theta2}]")
    pieces = [_omega_piece(alpha, theta1, sample, point_inside=False, kind="inner ball")]
    if br.is_infinite:
        return pieces
    if theta2 == INF or br.lt(theta2):
        top = rational_between(GroupValue(0, 1, br), theta2)
    else:
        top = theta2
    pieces.append(_omega_piece(alpha, top, sample, point_inside=True, kind="outer ball"))
    if not br.is_rational:
        return pieces
    covered = {i for p in pieces for i in p.covers}
    for i, F in enumerate(sample):
        if i in covered or distance_value(F, alpha) != br.a:
            continue
        pieces.extend(_boundary_pieces(E, phis, i, F, sample))
    return pieces


def _boundary_pieces(E, phis, i, F, sample) -> list:
    """Rings at the same distance delta from alpha as V_E."""
    b = E.backend
    for phi in phis:
        if member(phi, F, "V"):
            continue
        w = w_E(phi, F, cross_check=False)
        if isinstance(w, Socle) or w.sign() < 0:
            e = mpq(-1)
            if isinstance(w, GroupValue):
                while not w < e:
                    e /= 2
            d = FieldElem.t_pow(e, b)
            return [Piece(BSet(tuple(phis)), BSet((RationalFunction.of(d, b) / phi,)), (i,), "D")]
        # w_F(phi) = 0: a ball around a deep term of F
        dE = E.breadth.a
        n = next((k for k in range(F.max_index + 1) if F.delta(k) > dE), None)
        if n is None:
            return []
        gamma = (dE + F.delta(n)) / 2
        piece = _omega_piece(F.s(n), gamma, sample, point_inside=True, kind="H")
        if F.pseudo_limit is not None:
            found = any(c.delta == F.breadth.a for c in enumerate_increasing(phi, 0, [F.pseudo_limit])) \
                if F.breadth.is_rational else False
            piece = Piece(piece.point_side, piece.closed_side, piece.covers,
                          "H (enumerated)" if found else "H")
        return [piece]
    return []


def _case_no_k_limit(E, phis, sample, notes) -> list:
    theta = -INF
    for phi in phis:
        prof = value_profile(phi, E)
        _, tau = critical_radius(phi, E)
        theta = max(theta, tau)
        if prof.lam > 0:
            theta = max(theta, -prof.gamma / prof.lam)
    n = 0
    while not E.delta(n) > theta:
        n += 1
    s = E.s(n)
    radius = theta if theta != -INF else E.delta(n) - 1
    notes.append(f"limit outside K; center s_{n} = {s}, radius {radius}")
    return [_omega_piece(s, radius, sample, point_inside=False, kind="deep term")]


def _pairwise_piece(E, F, i, sample) -> Piece | None:
    """Fallback: a ball around some term that tells V_E and V_F apart."""
    centers = [E.s(n) for n in range(0, min(E.max_index, 24) + 1, 2)]
    centers += [F.s(n) for n in range(0, min(F.max_index, 24) + 1, 2)]
    for lim in (E.pseudo_limit, F.pseudo_limit):
        if lim is not None:
            centers.append(lim)
    for c in centers:
        a, b = distance_value(E, c), distance_value(F, c)
        if a == b:
            continue
        if b == INF or (a != INF and a < b):
            r = rational_between(a, b)
            return _omega_piece_for(c, r, i, True)
        r = rational_between(b, a)
        return _omega_piece_for(c, r, i, False)
    return None


def _omega_piece_for(center, radius, i, point_inside) -> Piece:
    inner = OmegaSet(center, radius)
    outer = OmegaSet(center, radius, complement=True)
    point, closed = (inner, outer) if point_inside else (outer, inner)
    return Piece(point, closed, (i,), "pairwise")


def separator(E: PCSeq, phis, sample) -> SeparationWitness:
    """Open sets separating V_E (inside B(phis)) from the closed set given by the sample."""
    phis = [_rf(p) for p in phis]
    sample = [_as_seq(r) for r in sample]
    if not all(member(phi, E, "V") for phi in phis):
        raise PreconditionError("V_E does not lie in B(Phi)")
    premise = all(not all(member(phi, F, "V") for phi in phis) for F in sample)
    notes: list = []
    if E.declared_type == "transcendental":
        case, pieces = "transcendental", _case_transcendental(E, phis, sample, notes)
    elif E.pseudo_limit is not None:
        case, pieces = "pseudo-limit in K", _case_k_limit(E, phis, sample, notes)
    else:
        case, pieces = "algebraic, limit outside K", _case_no_k_limit(E, phis, sample, notes)
    covered = {i for p in pieces for i in p.covers if p.closed_side.contains(sample[i])}
    for i, F in enumerate(sample):
        if i not in covered:
            piece = _pairwise_piece(E, F, i, sample)
            if piece is not None:
                pieces.append(piece)
                notes.append(f"sample {i} separated by a fallback ball")
    witness = SeparationWitness(case, pieces, premise, notes)
    bad = witness.verify(E, sample)
    if bad:
        raise SeparationFailure(sample[bad[0]], witness)
    return witness


# -- residue-field separator ---------------------------------------------------

@dataclass(frozen=True)
class ResidueSeparator:
    psi: RationalFunction
    probes: tuple   # (x, val(x - s), psi(x) in V)

    @property
    def ok(self) -> bool:
        return all(inside == (d < self.delta) for _, d, inside in self.probes)

    delta: mpq = mpq(0)


def residue_separator(s, delta, backend) -> ResidueSeparator:
    """``psi = z^p / prod_u ((X - s) - z*u)`` over all residues u, with val(z) = delta.

    Then ``psi(x) in V`` exactly when ``val(x - s) < delta``.  Needs F_p coefficients.
    """
    if backend.p == 0:
        raise PreconditionError("the residue separator needs a finite residue field (fp:<p>)")
    delta = mpq(delta)
    s = FieldElem.of(s, backend)
    z = FieldElem.t_pow(delta, backend)
    x = RationalFunction.X(backend) - s
    den = RationalFunction.of(1, backend)
    for u in backend.elements():
        den = den * (x - z * FieldElem.of(u, backend))
    psi = RationalFunction.of(z ** backend.p, backend) / den
    probes = []
    radii = [delta - 2, delta - 1, delta - mpq(1, 3), delta, delta + mpq(1, 3), delta + 1]
    for m in radii:
        for u in backend.elements()[1:]:
            pts = [s + FieldElem.monomial(u, m, backend)]
            if m == delta:
                pts.append(pts[0] + FieldElem.t_pow(delta + mpq(1, 2), backend))
            for pt in pts:
                try:
                    inside = rf_eval(psi, pt).val >= 0
                except PoleError:
                    inside = False
                probes.append((pt, (pt - s).val, inside))
    return ResidueSeparator(psi, tuple(probes), delta)


# -- integer-valued rational functions ---------------------------------------------

@dataclass(frozen=True)
class IntRReport:
    probes_in_V: bool
    consistent: bool
    counterexample: FieldElem | None = None
    witness_value: object = None
    failing_sample: tuple = ()


def probe_grid(backend) -> list:
    radii = [mpq(r) for r in (-2, -1, mpq(-1, 2), 0, mpq(1, 3), mpq(1, 2), 1, 2, 3)]
    coeffs = [1, 2, -1, 3] if backend.p == 0 else [c.v for c in backend.elements()[1:]]
    pts = [FieldElem.zero(backend)]
    pts += [FieldElem.monomial(c, r, backend) for r in radii for c in coeffs]
    pts += [FieldElem.one(backend) + FieldElem.t_pow(r, backend) for r in radii if r > 0]
    return pts


def intR_consistency(phi, sample, grid=None) -> IntRReport:
    """Check phi against ``Int^R(K, V) = intersection of the W_E``.

    If every probe maps into V, phi must lie in each sampled W_E.  Otherwise a
    Cauchy sequence at a nearby non-critical point gives ``w_E(phi) < 0``.
    """
    phi = _rf(phi)
    b = phi.backend
    grid = probe_grid(b) if grid is None else grid
    bad = next((x for x in grid if value_at(phi, x) < 0), None)
    if bad is None:
        failing = tuple(F.label for F in (_as_seq(r) for r in sample) if not member(phi, F, "W"))
        return IntRReport(True, not failing, failing_sample=failing)
    x = bad
    m = max(bad.val, 0) + 1 if bad.val != INF else mpq(1)
    for _ in range(64):
        v = value_at(phi, x)
        if v != -INF and v < 0 and not any(r == INF for r in root_distances(phi, x).radii):
            break
        x = bad + FieldElem.t_pow(m, b)
        m += 1
    else:
        raise PreconditionError(f"no non-critical point near {bad} with a negative value")
    E = cauchy_at(x)
    w = w_E(phi, E)
    return IntRReport(False, isinstance(w, GroupValue) and w.sign() < 0, x, w)
