import pytest
from gmpy2 import mpq

from pcval.expr import parse_elem
from pcval.ground_field import GF, QQ, elem, rfun
from pcval.pcv import Dyadic, PartialSum, PreconditionError, SingleTerm
from pcval.topology import (
    VE,
    WPoint,
    cauchy_at,
    convergence_scan,
    enumerate_increasing,
    in_B,
    intR_consistency,
    omega_function,
    omega_identity_witness,
    omega_membership,
    residue_separator,
    separator,
)
from pcval.valuations import value_profile


def test_omega_examples(fx):
    E1 = fx["E1"]
    assert not omega_membership(E1, 0, mpq(1, 2))
    assert omega_membership(E1, elem("t^(1/4)"), mpq(1, 2))
    c, k = omega_identity_witness(0, mpq(1, 2))
    assert (c, k) == (elem("t^(1/2)"), 1)


def test_omega_identity_small_grid(fx):
    for E in fx.values():
        for s in ("0", "t"):
            for g in (0, 1):
                assert omega_membership(E, elem(s), g) == in_B(omega_function(elem(s), g, QQ), VE(E))


def test_cauchy_at_gives_point_ring():
    E = cauchy_at(elem("t"))
    for text in ("X/t", "t/X", "1/(X - t)", "(X - t)/t^5"):
        phi = rfun(text)
        assert in_B(phi, VE(E)) == in_B(phi, WPoint(elem("t"))) if text != "1/(X - t)" \
            else not in_B(phi, VE(E))


def test_convergence_scan(fx):
    res = convergence_scan(fx["E1"], [rfun("X/t"), rfun("t/X")], depth=40)
    assert [r.status for r in res] == ["converged", "converged"]
    assert [r.target for r in res] == [False, True]


def test_enumerate_increasing():
    assert [c.delta for c in enumerate_increasing(rfun("X/t"), 0)] == [1]
    assert [c.delta for c in enumerate_increasing(rfun("X^2/t^3"), 0)] == [mpq(3, 2)]
    assert enumerate_increasing(rfun("t"), 0) == []


def test_enumerated_candidates_realize_target():
    phi = rfun("(X - t)/t^3")
    for c in enumerate_increasing(phi, 0, [elem("0"), elem("t")]):
        F = SingleTerm(Dyadic(c.delta, 1), beta=c.center)
        p = value_profile(phi, F)
        assert p.lam > 0 and p.lam * c.delta + p.gamma == 0


def test_separator_ball_example(fx):
    sample = [SingleTerm(Dyadic(4, 1), beta=elem("t^3"))]
    w = separator(fx["E1"], [rfun("t/X")], sample)
    assert w.premise_met and w.verify(fx["E1"], sample) == []
    outer = next(p for p in w.pieces if p.kind == "outer ball")
    assert str(outer.point_side) == "Omega(0, 1)" and outer.covers == (0,)


def test_separator_fallback_when_sample_meets_B(fx):
    w = separator(fx["E5"], [rfun("1")], [fx["E1"]])
    assert not w.premise_met
    assert [p.kind for p in w.pieces][-1] == "pairwise"


def test_separator_precondition(fx):
    with pytest.raises(PreconditionError):
        separator(fx["E1"], [rfun("X/t")], [])


def test_residue_separator_char_two():
    rs = residue_separator(0, 1, GF(2))
    assert str(rs.psi) == "((t^2))/(X^2 + (t)*X)"
    assert rs.ok


def test_residue_separator_char_three():
    b = GF(3)
    assert residue_separator(parse_elem("1 + t", b), mpq(1, 2), b).ok
    with pytest.raises(PreconditionError):
        residue_separator(0, 1, QQ)


def test_intR_consistency():
    rep = intR_consistency(rfun("X/t"), [])
    assert not rep.probes_in_V and rep.consistent
    assert rep.counterexample == elem("t^(-2)") and rep.witness_value == -3
    rep = intR_consistency(rfun("1/(1 + X^2)"), [])
    assert rep.probes_in_V and rep.consistent
    rep = intR_consistency(rfun("t^2"), [])
    assert rep.probes_in_V and rep.consistent
