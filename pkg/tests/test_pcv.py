import json

import pytest
from gmpy2 import mpq

from pcval.breadth import Breadth
from pcval.ground_field import GF, elem
from pcval.oracle import gauge_matches
from pcval.pcv import (
    CauchySeries,
    CauchyToK,
    Dyadic,
    IndexOverflow,
    Linear,
    PartialSum,
    PreconditionError,
    QuadIrr,
    SingleTerm,
    breadth_contains,
    classify_type,
    equivalent,
    fixture,
    in_breadth_ideal,
    is_pseudo_limit,
    load_seq,
    materialize,
    seq_from_json,
)


def terms(E, k=3):
    return [str(E.s(n)) for n in range(k)]


def test_fixture_terms(fx):
    assert terms(fx["E1"]) == ["1", "t^(1/2)", "t^(3/4)"]
    assert terms(fx["E2"]) == ["1", "t", "t^(7/5)"]
    assert terms(fx["E3"]) == ["0", "t", "t + t^2"]
    assert terms(fx["E4"]) == ["1", "1 + 1/2*t", "1 + 1/2*t - 1/8*t^2"]
    assert terms(fx["E5"]) == ["0", "1", "1 + t^(1/2)"]


def test_materialize(fx):
    assert materialize(fx["E1"], 3) == (elem("t^(7/8)"), mpq(7, 8))
    assert materialize(fx["E2"], 1) == (elem("t"), 1)
    assert [fx["E3"].delta(n) for n in range(3)] == [1, 2, 3]


def test_gauges_match_definition(fx):
    for E in fx.values():
        assert gauge_matches(E, depth=16)


def test_breadths(fx):
    assert fx["E1"].breadth == Breadth.rational(1)
    assert fx["E2"].breadth == Breadth.quadirr(0, 1, 2)
    assert fx["E3"].breadth.is_infinite and fx["E4"].is_cauchy


def test_index_overflow(fx):
    E = fx["E1"].with_max_index(10)
    with pytest.raises(IndexOverflow):
        E.s(11)


def test_partial_sum_preconditions():
    with pytest.raises(PreconditionError):
        PartialSum(Linear(1))
    with pytest.raises(PreconditionError):
        PartialSum(Dyadic(1, 1), coefficient=elem("t"))


def test_cauchy_series_needs_rationals():
    with pytest.raises(PreconditionError):
        fixture("E4", GF(3))


def test_breadth_predicates(fx):
    E1 = fx["E1"]
    assert breadth_contains(E1.breadth, 1) and not breadth_contains(E1.breadth, mpq(99, 100))
    assert in_breadth_ideal(E1, elem("t^2")) and not in_breadth_ideal(E1, elem("t^(1/2)"))
    assert is_pseudo_limit(E1, elem("t^(3/2)")).value
    assert not is_pseudo_limit(E1, elem("t^(1/2)")).value


def test_classify_type(fx):
    assert classify_type(fx["E1"]).type == "algebraic"
    rep = classify_type(fx["E5"])
    assert (rep.type, rep.status) == ("transcendental", "exact")


def test_equivalence_is_not_symmetric_in_the_definition(fx):
    squared = SingleTerm(Dyadic(2, 2))
    v = equivalent(fx["E1"], squared)
    assert not v.value and v.reason == "breadths 1 vs 2"


def test_perturbed_limits(fx):
    E2 = fx["E2"]
    assert equivalent(E2, SingleTerm(QuadIrr(0, 1, 2), beta=elem("t^(3/2)"))).value
    assert not equivalent(E2, SingleTerm(QuadIrr(0, 1, 2), beta=elem("t^(7/5)"))).value


def test_json_roundtrip(fx, tmp_path):
    for E in list(fx.values()) + [SingleTerm(Dyadic(2, 2), beta=elem("t^3"))]:
        obj = json.loads(json.dumps(E.to_json()))
        F = seq_from_json(obj)
        assert terms(F, 4) == terms(E, 4)
        assert F.breadth == E.breadth
    path = tmp_path / "seq.json"
    path.write_text(json.dumps(fx["E3"].to_json()))
    assert terms(load_seq(f"@{path}"), 3) == terms(fx["E3"])


def test_cauchy_kinds_have_minimal_polynomials(fx):
    assert str(fx["E3"].minimal_polynomial) == "X - ((t)/(1 - t))"
    assert str(fx["E4"].minimal_polynomial) == "X^2 - (1 + t)"
    assert isinstance(fx["E3"], CauchyToK) and isinstance(fx["E4"], CauchySeries)
