"""A fixed pool of small rational functions used by the checks and reports."""
from __future__ import annotations

from .expr import parse_rfun
from .ground_field import QQ, Backend

POOL_TEXT = (
    # constants and monomials
    "1", "t", "1/t", "t^(1/2)", "3*t^(-2)",
    "X", "X/t", "t/X", "X^2", "X^2/t^2", "X^2/t^3", "t^3/X^2", "X^3/t^2",
    # linear factors through the fixture pseudo-limits and terms
    "X - 1", "X - t", "X - t^(1/2)", "(X - t^(1/2))/t", "X - t^(3/4)",
    "X - t^(7/5)", "(X - t)/(X - t^2)", "1/(X - t)", "1/(X - 1)",
    "X - t/(1 - t)", "(X - t/(1 - t))/t^3", "1/(X - t/(1 - t))",
    "X - t - t^2", "X - 1 - t^(1/2)", "(X - 1 - t^(1/2))/t",
    # quadratics and cubics
    "X^2 - t", "X^2 - (1 + t)", "(X^2 - (1 + t))/t^2", "1/(X^2 - (1 + t))",
    "X^2 - 1", "X^2 + X", "X^2 + t*X + t^3", "(X^2 - t^3)/t^2",
    "X^2 - 2*t*X + t^2", "X*(X - t)*(X - t^2)", "X^3 - t^2",
    "(X^3 - t)/(X - 1)", "X^3 + X + 1", "(X - 1)^2/t",
    # mixed rational functions
    "(X + 1)/(X - 1)", "X/(X + t)", "(X - t)/(X + t^(1/2))",
    "t^2/(X^2 + t^3)", "(X^2 + 1)/(X^3 - t)", "(X - t^(1/3))/(X^2 - t)",
    "(1 + X)/(t + X^2)", "(X - 2)/(X - t^(3/2))", "(X^2 - 2*X + 1 - t)/t",
    "X/(X - 1 - t/2)", "(X - 1 - t/2)/t^2", "(X - t^(1/2))^2/t^2",
    "(X + t^(1/4))/(X - t^(5/4))", "t/(X^2 - X)",
)


def pool(backend: Backend = QQ, limit: int | None = None) -> list:
    fns = [parse_rfun(s, backend) for s in POOL_TEXT]
    return fns if limit is None else fns[:limit]
