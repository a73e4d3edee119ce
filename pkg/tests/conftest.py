import pytest
from gmpy2 import mpq
from hypothesis import settings, strategies as st

from pcval.ground_field import QQ, FieldElem, Poly
from pcval.pcv import fixtures
from pcval.pool import pool

settings.register_profile("default", max_examples=60, deadline=None)
settings.load_profile("default")

exponents = st.builds(mpq, st.integers(-4, 6), st.sampled_from([1, 2, 3, 4]))
small_coeffs = st.integers(-3, 3).filter(bool)


@st.composite
def sparse_elems(draw, max_terms=3, nonzero=False):
    terms = draw(st.lists(st.tuples(small_coeffs, exponents), min_size=1 if nonzero else 0,
                          max_size=max_terms))
    x = FieldElem.zero(QQ)
    for c, e in terms:
        x = x + FieldElem.monomial(c, e)
    if nonzero and x.is_zero():
        x = FieldElem.one(QQ)
    return x


@st.composite
def polys(draw, max_degree=3):
    coeffs = draw(st.lists(sparse_elems(max_terms=2), min_size=1, max_size=max_degree + 1))
    lead = draw(sparse_elems(max_terms=2, nonzero=True))
    return Poly(coeffs + [lead], QQ)


@pytest.fixture(scope="session")
def fx():
    return fixtures()


@pytest.fixture(scope="session")
def fn_pool():
    return pool()


ACCEPTANCE: dict = {}


@pytest.fixture
def criterion():
    def record(number: int, title: str, ok: bool, detail: str = ""):
        ACCEPTANCE[number] = (title, ok, detail)
        return ok
    return record


def pytest_terminal_summary(terminalreporter):
    if not ACCEPTANCE:
        return
    terminalreporter.section("acceptance criteria")
    for number in sorted(ACCEPTANCE):
        title, ok, detail = ACCEPTANCE[number]
        line = f"[{'PASS' if ok else 'FAIL'}] {number:2d}. {title}"
        terminalreporter.write_line(line + (f"  ({detail})" if detail else ""))
