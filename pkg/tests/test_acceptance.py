"""Acceptance criteria, checked at exact equality.

Run with ``pytest tests/test_acceptance.py``; a PASS/FAIL line per criterion is
printed in the terminal summary.
"""
import random
import sys
import time

import pytest
from gmpy2 import mpq

from pcval.ground_field import GF, QQ, elem, rfun
from pcval.oracle import equivalent_definitional, profile_scan
from pcval.pcv import (
    CauchyToK,
    Dyadic,
    Linear,
    PartialSum,
    QuadIrr,
    SingleTerm,
    equivalent,
)
from pcval.pool import pool
from pcval.topology import (
    VE,
    WPoint,
    cauchy_at,
    convergence_scan,
    in_B,
    omega_function,
    omega_membership,
    residue_separator,
    separator,
)
from pcval.valuations import member, monomial_val, rank_report, torsion_witness, v_E, value_profile, w_E


def test_01_profile_law(fx, fn_pool, criterion):
    assert len(fn_pool) >= 50
    start = time.perf_counter()
    bad = []
    for name, E in fx.items():
        for phi in fn_pool:
            prof = value_profile(phi, E)
            ns = range(prof.start, prof.start + 20)
            if profile_scan(phi, E, ns) != [prof.at(E.delta(n)) for n in ns]:
                bad.append((name, str(phi)))
    elapsed = time.perf_counter() - start
    ok = criterion(1, "profile law on pool x E1..E5", not bad and elapsed < 60,
                   f"{len(fn_pool)} functions, {len(bad)} mismatches, {elapsed:.1f}s")
    assert ok, bad


def test_02_monomial_valuation_identity(fx, fn_pool, criterion):
    bad = [(name, str(phi)) for name in ("E1", "E2") for phi in fn_pool
           if w_E(phi, fx[name], cross_check=False)
           != monomial_val(phi, fx[name].pseudo_limit, fx[name].breadth)]
    assert criterion(2, "w_E equals the monomial valuation on E1, E2", not bad,
                     f"{len(bad)} mismatches"), bad


def test_03_valuation_axioms(fx, fn_pool, criterion):
    E = fx["E1"]
    rng = random.Random(20261019)
    cache: dict = {}

    def v(f):
        key = str(f)
        if key not in cache:
            cache[key] = v_E(f, E)
        return cache[key]

    bad = []
    for _ in range(200):
        f, g = rng.choice(fn_pool), rng.choice(fn_pool)
        if v(f * g) != v(f) + v(g):
            bad.append(("product", str(f), str(g)))
        s = f + g
        if not s.is_zero() and v(s) < min(v(f), v(g)):
            bad.append(("sum", str(f), str(g)))
    assert criterion(3, "v_E multiplicative and ultrametric on 200 pairs (E1)", not bad,
                     f"{len(bad)} violations"), bad


def test_04_rank_dichotomy(fx, fn_pool, criterion):
    E1, E2 = fx["E1"], fx["E2"]
    witness = torsion_witness(E1)
    in_W_not_V = member(witness, E1, "W") and not member(witness, E1, "V")
    gap = [str(phi) for phi in fn_pool if member(phi, E2, "V") != member(phi, E2, "W")]
    r3, r4 = rank_report(fx["E3"]), rank_report(fx["E4"])
    cauchy_ok = (r3.rank, r4.rank) == (2, 2) \
        and r3.minimal_polynomial == fx["E3"].minimal_polynomial \
        and str(r4.minimal_polynomial) == "X^2 - (1 + t)" \
        and r3.overring == r4.overring == "K[X]_(q)"
    ok = in_W_not_V and not gap and cauchy_ok
    assert criterion(4, "rank dichotomy", ok,
                     f"witness {witness} in W\\V: {in_W_not_V}; E2 gaps: {len(gap)}")


def equivalence_pairs(fx):
    E1, E2, E3, E4, E5 = (fx[k] for k in ("E1", "E2", "E3", "E4", "E5"))

    def e1(beta):
        return SingleTerm(Dyadic(1, 1), beta=elem(beta))

    def e2(beta):
        return SingleTerm(QuadIrr(0, 1, 2), beta=elem(beta))

    squared = SingleTerm(Dyadic(2, 2))
    return [
        (E1, E1, True), (E1, e1("t"), True), (e1("t"), E1, True), (E1, e1("t^2"), True),
        (E1, e1("t^(3/2)"), True), (E1, e1("t^(1/2)"), False),
        (E1, SingleTerm(Dyadic(1, 2)), True), (SingleTerm(Dyadic(1, 2)), E1, True),
        (E1, squared, False), (squared, E1, False), (E1, E2, False), (E2, E1, False),
        (E2, E2, True), (E2, e2("t^(3/2)"), True), (E2, e2("t^(7/5)"), False), (E2, e2("t^2"), True),
        (E1, E5, False), (E5, E1, False), (E5, E5, True),
        (E5, PartialSum(Dyadic(1, 1), coefficient=elem("2")), False),
        (E3, E3, True), (E3, E4, False), (E4, E4, True),
        (E3, SingleTerm(Linear(1), beta=elem("t/(1 - t)")), True),
        (E3, CauchyToK(Linear(1), beta=elem("t")), False),
    ]


def test_05_equivalence(fx, fn_pool, criterion):
    pairs = equivalence_pairs(fx)
    disagree, wrong, split = [], [], []
    for E, F, expected in pairs:
        symbolic = equivalent(E, F).value
        if symbolic != equivalent_definitional(E, F):
            disagree.append((E.label, F.label))
        if symbolic != expected:
            wrong.append((E.label, F.label))
        if symbolic:
            split += [(E.label, F.label, str(phi)) for phi in fn_pool
                      if member(phi, E, "V") != member(phi, F, "V")]
    ok = len(pairs) >= 20 and not disagree and not wrong and not split
    assert criterion(5, "equivalence agrees with the definitional check", ok,
                     f"{len(pairs)} pairs, {len(disagree)} disagreements, {len(split)} V-splits"), \
        (disagree, wrong, split)


def test_06_constructible_convergence(fx, criterion):
    fns = pool(limit=30)
    results = {name: convergence_scan(fx[name], fns, depth=40) for name in ("E1", "E3")}
    bad = [(name, str(r.phi), r.status) for name, rs in results.items() for r in rs
           if r.status != "converged"]
    assert criterion(6, "W_{s_n} membership converges to V_E (E1, E3)", not bad,
                     f"{len(bad)} unconverged"), bad


def test_07_omega_identity(fx, criterion):
    centers = [elem(s) for s in ("0", "1", "t", "t^(1/2)", "1 + t")]
    radii = [mpq(-1), mpq(0), mpq(1, 2), mpq(1), mpq(2)]
    bad = [(name, str(s), g) for name, E in fx.items() for s in centers for g in radii
           if omega_membership(E, s, g) != in_B(omega_function(s, g, QQ), VE(E))]
    assert criterion(7, "Omega(s, gamma) = B(c/(X - s)^k) on 5x5x5 grid", not bad,
                     f"{len(bad)} mismatches"), bad


def test_08_X_is_pseudo_limit(fx, criterion):
    X = rfun("X")
    bad = []
    for name, E in fx.items():
        vals = [v_E(X - E.s(n), E) for n in range(22)]
        bad += [(name, n) for n in range(21) if not vals[n] < vals[n + 1]]
    assert criterion(8, "v_E(X - s_n) strictly increasing for n <= 20", not bad,
                     f"{len(bad)} failures"), bad


def test_09_residue_separator(criterion):
    cases = [(2, "0", "1"), (2, "1 + t", "1/2"), (2, "t^(1/3)", "2"),
             (3, "0", "1"), (3, "1 + t", "1/2"), (3, "2*t^(1/3)", "2")]
    bad, probes = [], 0
    for p, s, d in cases:
        b = GF(p)
        center = elem(s, b)
        rs = residue_separator(center, mpq(d), b)
        probes += len(rs.probes)
        residues = {(x - center).expand(rs.delta, inclusive=True).coefficient(rs.delta)
                    for x, dist, _ in rs.probes if dist == rs.delta}
        if not rs.ok or len(residues) < p - 1:
            bad.append((p, s, d))
    assert criterion(9, "residue separator over F_2 and F_3", not bad,
                     f"{probes} probes, {len(bad)} failing cases"), bad


def separation_scenarios(fx):
    E1, E2, E3, E4, E5 = (fx[k] for k in ("E1", "E2", "E3", "E4", "E5"))
    e = elem
    return [
        (E1, ["t/X"], [SingleTerm(Dyadic(4, 1), beta=e("t^3"))]),
        (E1, ["t/X"], [WPoint(e("0"))]),
        (E1, ["t/X"], [cauchy_at(e("t^3")), WPoint(e("t^2"))]),
        (E1, ["t^2/X^2", "t*(X - 1)/X"], [SingleTerm(Dyadic(2, 1)), WPoint(e("0"))]),
        (E1, ["t/(X - t)"], [SingleTerm(Dyadic(2, 1), beta=e("t"))]),
        (E2, ["X^2/t^2"], [WPoint(e("t^(1/2)")), E1]),
        (E2, ["t^2/X"], [WPoint(e("t^3")), SingleTerm(Dyadic(3, 3))]),
        (E3, ["1/(X - 1)"], [WPoint(e("1")), cauchy_at(e("1 + t"))]),
        (E3, ["(X - t/(1 - t))/t^3"], [E1, WPoint(e("t"))]),
        (E4, ["(X^2 - (1 + t))/t^2"], [E1, WPoint(e("1")), cauchy_at(e("1 + t"))]),
        (E5, ["(X - 1)/t^(1/2)"], [WPoint(e("2")), E1]),
        (E5, ["(X - 1 - t^(1/2))/t^(3/4)"], [cauchy_at(e("1")), WPoint(e("1 + t"))]),
        (E5, ["1"], [E1]),
        (SingleTerm(Dyadic(1, 1), beta=e("1")), ["(X - 1)/t^(1/2)"], [E1, WPoint(e("0"))]),
    ]


def test_10_separation_witnesses(fx, criterion):
    scenarios = separation_scenarios(fx)
    failures, cases = [], set()
    for E, phis, sample in scenarios:
        try:
            w = separator(E, [rfun(f) for f in phis], sample)
        except Exception as exc:  # any failure counts against the criterion
            failures.append((E.label, phis, repr(exc)))
            continue
        cases.add(w.case)
        if w.verify(E, [s if not isinstance(s, WPoint) else cauchy_at(s.s) for s in sample]):
            failures.append((E.label, phis, "verify"))
    ok = len(scenarios) >= 10 and not failures and len(cases) == 3
    assert criterion(10, "separation witnesses verify", ok,
                     f"{len(scenarios)} scenarios, cases {sorted(cases)}, {len(failures)} failures"), failures


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
