import pytest
from gmpy2 import mpq
from hypothesis import given, strategies as st

from pcval.breadth import Breadth, GroupValue
from pcval.ground_field import INF, FieldElem, elem, rfun
from pcval.oracle import profile_scan
from pcval.pcv import PreconditionError
from pcval.pool import POOL_TEXT
from pcval.valuations import (
    CauchyValue,
    RankTwoValue,
    Socle,
    annulus_law,
    degdom,
    is_nonnegative,
    member,
    monomial_val,
    rank_report,
    stable_annulus,
    torsion_witness,
    v_E,
    valid_annuli,
    value_profile,
    w_E,
)

SQRT2 = Breadth.quadirr(0, 1, 2)


def test_value_profile_example(fx):
    p = value_profile(rfun("X/t"), fx["E1"])
    assert (p.lam, p.gamma, p.start) == (1, -1, 0)


def test_profiles_of_minimal_polynomial(fx):
    phi = rfun("X^2 - (1 + t)")
    p4 = value_profile(phi, fx["E4"])
    assert (p4.lam, p4.gamma) == (1, 0)
    assert value_profile(phi, fx["E5"]).gamma == mpq(1, 2)
    assert degdom(phi, fx["E4"]) == 1


def test_monomial_valuation():
    assert monomial_val(rfun("X/t"), 0, SQRT2) == GroupValue(-1, 1, SQRT2)


def test_w_E_examples(fx):
    assert w_E(rfun("X^2/t^2"), fx["E2"]) == GroupValue(-2, 2, SQRT2)
    assert str(w_E(rfun("X^2/t^2"), fx["E2"])) == "-2 + 2*sqrt(2)"
    assert w_E(rfun("X - t/(1 - t)"), fx["E3"]) == Socle(1)
    assert w_E(rfun("1/(X - t/(1 - t))"), fx["E3"]) == Socle(-1)


def test_v_E_examples(fx):
    E1 = fx["E1"]
    assert str(v_E(rfun("X/t"), E1)) == "(0, -1)"
    assert str(v_E(rfun("t/X"), E1)) == "(0, 1)"
    assert v_E(rfun("t^(1/2)"), E1) == RankTwoValue(GroupValue.of(mpq(1, 2), E1.breadth), 0)
    assert v_E(rfun("(X - t/(1 - t))/t^3"), fx["E3"]) == CauchyValue(1, -3)


def test_membership_examples(fx):
    phi = rfun("X/t")
    assert (member(phi, fx["E1"], "V"), member(phi, fx["E1"], "W")) == (False, True)
    assert (member(phi, fx["E2"], "V"), member(phi, fx["E2"], "W")) == (True, True)
    with pytest.raises(PreconditionError):
        member(phi, fx["E1"], "U")


def test_V_inside_W(fx, fn_pool):
    for E in fx.values():
        for phi in fn_pool:
            if member(phi, E, "V"):
                assert member(phi, E, "W"), (E, phi)


def test_rank_reports(fx):
    assert rank_report(fx["E1"]).rank == 2
    assert str(rank_report(fx["E2"])) == "rank 1 (non-torsion: delta = sqrt(2))"
    r3, r4 = rank_report(fx["E3"]), rank_report(fx["E4"])
    assert (r3.rank, r3.overring, str(r3.minimal_polynomial)) == (2, "K[X]_(q)", "X - ((t)/(1 - t))")
    assert (r4.rank, str(r4.minimal_polynomial)) == (2, "X^2 - (1 + t)")
    assert rank_report(fx["E5"]).rank == 1


def test_torsion_witness(fx):
    w = torsion_witness(fx["E1"])
    assert member(w, fx["E1"], "W") and not member(w, fx["E1"], "V")
    with pytest.raises(PreconditionError):
        torsion_witness(fx["E2"])


def test_annulus_law_examples():
    law = annulus_law(rfun("X/t"), 0, mpq(1, 2), INF)
    assert (law.lam, law.gamma) == (1, -1)
    law = annulus_law(rfun("(X - t)/(X - t^2)"), 0, 1, 2)
    assert (law.lam, law.gamma) == (-1, 1)


def test_annulus_law_rejects_critical_radius():
    with pytest.raises(PreconditionError):
        annulus_law(rfun("X - t"), 0, 0, 2)
    assert valid_annuli([1, 2]) == [(-INF, 1), (1, 2), (2, INF)]


def test_stable_annulus(fx):
    E1 = fx["E1"]
    assert stable_annulus(rfun("X - t^(1/2)"), E1) == (mpq(1, 2), 1)
    assert stable_annulus(rfun("X/t"), E1) == (0, -1)
    assert stable_annulus(rfun("3"), E1) == (0, 0)


def test_pseudo_limit_of_X(fx):
    X = rfun("X")
    for E in fx.values():
        vals = [v_E(X - E.s(n), E) for n in range(12)]
        assert all(a < b for a, b in zip(vals, vals[1:])), E


def test_distance_law(fx):
    # w_E(X - s) is the breadth at a pseudo-limit, else val(s - beta)
    E1 = fx["E1"]
    assert w_E(rfun("X - t^2"), E1) == 1
    assert w_E(rfun("X - t^(1/3)"), E1) == mpq(1, 3)


@given(st.sampled_from(POOL_TEXT), st.sampled_from(POOL_TEXT))
def test_v_E_is_a_valuation(fx, a, b):
    E = fx["E1"]
    f, g = rfun(a), rfun(b)
    assert v_E(f * g, E) == v_E(f, E) + v_E(g, E)
    if not (f + g).is_zero():
        assert v_E(f + g, E) >= min(v_E(f, E), v_E(g, E))


@given(st.sampled_from(POOL_TEXT), st.sampled_from(["E1", "E2", "E5"]))
def test_monotone_trichotomy(fx, text, name):
    E, phi = fx[name], rfun(text)
    p = value_profile(phi, E)
    vals = profile_scan(phi, E, range(p.start, p.start + 6))
    steps = {(b > a) - (b < a) for a, b in zip(vals, vals[1:])}
    assert steps == {(p.lam > 0) - (p.lam < 0)}


def test_constants(fx):
    c = elem("5*t^(2/3)")
    assert v_E(rfun("5*t^(2/3)"), fx["E1"]) == RankTwoValue(GroupValue.of(c.val, fx["E1"].breadth), 0)
    assert is_nonnegative(v_E(rfun("1"), fx["E2"]))
