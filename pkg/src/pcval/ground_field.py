"""Exact arithmetic in K = k(t^Q) and in the rational function field K(X).

An element of K is a fraction of two finite sparse sums ``sum c_e t^e`` with
rational exponents.  The coefficient field k is Q (gmpy2 rationals) or a prime
field F_p.  The t-adic valuation of a sparse sum is its least exponent.
"""
from __future__ import annotations

import math
from functools import lru_cache
from typing import Iterable, Iterator

from gmpy2 import is_prime, mpq

INF = math.inf

# dense gcd reduction is skipped above this degree (after clearing exponent denominators)
_GCD_DEGREE_CAP = 256


class FieldDivisionError(ZeroDivisionError):
    """Division by the zero element."""


class PoleError(ArithmeticError):
    """A rational function was evaluated at a zero of its denominator."""


class BackendMismatch(TypeError):
    pass


def Q(x) -> mpq:
    """Exact rational from int, str, Fraction or mpq."""
    return mpq(x)


class Fp:
    """Element of the prime field F_p."""

    __slots__ = ("v", "p")

    def __init__(self, v: int, p: int):
        self.v = v % p
        self.p = p

    def _val(self, other) -> int:
        if isinstance(other, Fp):
            if other.p != self.p:
                raise BackendMismatch(f"F_{self.p} vs F_{other.p}")
            return other.v
        return GF(self.p).coerce(other).v

    def __add__(self, other):
        return Fp(self.v + self._val(other), self.p)

    __radd__ = __add__

    def __sub__(self, other):
        return Fp(self.v - self._val(other), self.p)

    def __rsub__(self, other):
        return Fp(self._val(other) - self.v, self.p)

    def __mul__(self, other):
        return Fp(self.v * self._val(other), self.p)

    __rmul__ = __mul__

    def __neg__(self):
        return Fp(-self.v, self.p)

    def __truediv__(self, other):
        d = self._val(other)
        if d == 0:
            raise FieldDivisionError("division by zero in F_p")
        return Fp(self.v * pow(d, -1, self.p), self.p)

    def __rtruediv__(self, other):
        return Fp(self._val(other), self.p) / self

    def __pow__(self, k: int):
        if k < 0:
            return Fp(1, self.p) / Fp(pow(self.v, -k, self.p), self.p)
        return Fp(pow(self.v, k, self.p), self.p)

    def __eq__(self, other):
        if isinstance(other, Fp):
            return self.p == other.p and self.v == other.v
        if isinstance(other, int):
            return (self.v - other) % self.p == 0
        return NotImplemented

    def __hash__(self):
        return hash((self.v, self.p))

    def __bool__(self):
        return self.v != 0

    def __repr__(self):
        return f"Fp({self.v}, {self.p})"

    def __str__(self):
        return str(self.v)


class Backend:
    """Coefficient field: Q when ``p == 0``, otherwise F_p."""

    __slots__ = ("p", "zero", "one")

    def __init__(self, p: int = 0):
        if p and not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.p = p
        self.zero = self.coerce(0)
        self.one = self.coerce(1)

    def coerce(self, x):
        if self.p == 0:
            if isinstance(x, Fp):
                raise BackendMismatch("F_p coefficient in a Q computation")
            return mpq(x)
        if isinstance(x, Fp):
            if x.p != self.p:
                raise BackendMismatch(f"F_{x.p} coefficient in F_{self.p}")
            return x
        q = mpq(x)
        num, den = int(q.numerator), int(q.denominator)
        if den % self.p == 0:
            raise FieldDivisionError(f"{q} has no image in F_{self.p}")
        return Fp(num * pow(den, -1, self.p), self.p)

    def elements(self) -> list:
        """All residues (F_p only)."""
        if self.p == 0:
            raise ValueError("Q has no finite residue list")
        return [Fp(i, self.p) for i in range(self.p)]

    def __eq__(self, other):
        return isinstance(other, Backend) and other.p == self.p

    def __hash__(self):
        return hash(("backend", self.p))

    def __repr__(self):
        return "QQ" if self.p == 0 else f"GF({self.p})"

    @property
    def name(self) -> str:
        return "q" if self.p == 0 else f"fp:{self.p}"


QQ = Backend(0)


@lru_cache(maxsize=None)
def GF(p: int) -> Backend:
    return Backend(p)


def backend_from_name(name: str) -> Backend:
    """Parse ``q`` or ``fp:<p>``."""
    name = name.strip().lower()
    if name in ("q", "qq"):
        return QQ
    if name.startswith("fp:"):
        return GF(int(name[3:]))
    raise ValueError(f"unknown backend {name!r}")


def _coeff_str(c) -> str:
    return str(c)


def _exp_str(e) -> str:
    if e == 1:
        return "t"
    if e.denominator == 1 and e >= 0:
        return f"t^{e.numerator}"
    return f"t^({e})"


class SparseSum:
    """Finite sum ``sum c_e t^e`` with rational exponents, sorted by exponent."""

    __slots__ = ("terms", "backend")

    def __init__(self, terms: Iterable = (), backend: Backend = QQ):
        acc: dict = {}
        for e, c in terms:
            e = mpq(e)
            acc[e] = acc.get(e, backend.zero) + backend.coerce(c)
        self.terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        self.backend = backend

    @classmethod
    def _make(cls, acc: dict, backend: Backend) -> "SparseSum":
        obj = cls.__new__(cls)
        obj.terms = tuple(sorted((e, c) for e, c in acc.items() if c))
        obj.backend = backend
        return obj

    @classmethod
    def monomial(cls, coeff, exp, backend: Backend = QQ) -> "SparseSum":
        return cls([(exp, coeff)], backend)

    @classmethod
    def const(cls, c, backend: Backend = QQ) -> "SparseSum":
        return cls([(0, c)], backend)

    def _check(self, other: "SparseSum"):
        if other.backend != self.backend:
            raise BackendMismatch(f"{self.backend} vs {other.backend}")

    @property
    def val(self):
        return self.terms[0][0] if self.terms else INF

    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_one(self) -> bool:
        return len(self.terms) == 1 and self.terms[0][0] == 0 and self.terms[0][1] == 1

    def lowest(self):
        return self.terms[0]

    def coefficient(self, exp):
        for e, c in self.terms:
            if e == exp:
                return c
        return self.backend.zero

    def __add__(self, other: "SparseSum") -> "SparseSum":
        self._check(other)
        acc = dict(self.terms)
        zero = self.backend.zero
        for e, c in other.terms:
            acc[e] = acc.get(e, zero) + c
        return SparseSum._make(acc, self.backend)

    def __neg__(self) -> "SparseSum":
        obj = SparseSum.__new__(SparseSum)
        obj.terms = tuple((e, -c) for e, c in self.terms)
        obj.backend = self.backend
        return obj

    def __sub__(self, other: "SparseSum") -> "SparseSum":
        return self + (-other)

    def __mul__(self, other: "SparseSum") -> "SparseSum":
        self._check(other)
        if len(other.terms) == 1:
            e2, c2 = other.terms[0]
            return self.scale(c2, e2)
        if len(self.terms) == 1:
            e1, c1 = self.terms[0]
            return other.scale(c1, e1)
        acc: dict = {}
        zero = self.backend.zero
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                e = e1 + e2
                acc[e] = acc.get(e, zero) + c1 * c2
        return SparseSum._make(acc, self.backend)

    def scale(self, coeff, exp=0) -> "SparseSum":
        """Multiply by ``coeff * t^exp``."""
        obj = SparseSum.__new__(SparseSum)
        obj.backend = self.backend
        if not coeff:
            obj.terms = ()
        else:
            obj.terms = tuple((e + exp, c * coeff) for e, c in self.terms)
        return obj

    def __pow__(self, k: int) -> "SparseSum":
        if k < 0:
            raise ValueError("negative power of a sparse sum")
        result = SparseSum.const(1, self.backend)
        base = self
        while k:
            if k & 1:
                result = result * base
            base = base * base
            k >>= 1
        return result

    def truncate(self, bound, inclusive: bool = False) -> "SparseSum":
        obj = SparseSum.__new__(SparseSum)
        obj.backend = self.backend
        if inclusive:
            obj.terms = tuple(tc for tc in self.terms if tc[0] <= bound)
        else:
            obj.terms = tuple(tc for tc in self.terms if tc[0] < bound)
        return obj

    def __eq__(self, other):
        if not isinstance(other, SparseSum):
            return NotImplemented
        return self.backend == other.backend and self.terms == other.terms

    def __hash__(self):
        return hash((self.terms, self.backend.p))

    def __iter__(self) -> Iterator:
        return iter(self.terms)

    def __len__(self):
        return len(self.terms)

    def __repr__(self):
        return f"SparseSum({self})"

    def __str__(self):
        if not self.terms:
            return "0"
        parts = []
        signed = self.backend.p == 0
        for i, (e, c) in enumerate(self.terms):
            neg = signed and c < 0
            a = -c if neg else c
            if e == 0:
                body = _coeff_str(a)
            elif a == 1:
                body = _exp_str(e)
            else:
                body = f"{_coeff_str(a)}*{_exp_str(e)}"
            if i == 0:
                parts.append(f"-{body}" if neg else body)
            else:
                parts.append(f" - {body}" if neg else f" + {body}")
        return "".join(parts)


# -- dense helpers used only to cancel common factors of a fraction --------

def _to_dense(s: SparseSum, shift, scale: int) -> list:
    deg = int((s.terms[-1][0] - shift) * scale)
    out = [s.backend.zero] * (deg + 1)
    for e, c in s.terms:
        out[int((e - shift) * scale)] = c
    return out


def _from_dense(coeffs: list, shift, scale: int, backend: Backend) -> SparseSum:
    return SparseSum._make({shift + mpq(i, scale): c for i, c in enumerate(coeffs) if c}, backend)


def _dense_divmod(a: list, b: list):
    a = list(a)
    q = [a[0] * 0] * max(len(a) - len(b) + 1, 1)
    lead = b[-1]
    for i in range(len(a) - len(b), -1, -1):
        c = a[i + len(b) - 1] / lead
        q[i] = c
        if c:
            for j, bj in enumerate(b):
                a[i + j] = a[i + j] - c * bj
    r = a[: len(b) - 1]
    while r and not r[-1]:
        r.pop()
    return q, r


def _dense_gcd(a: list, b: list) -> list:
    while b:
        _, r = _dense_divmod(a, b)
        a, b = b, r
    return a


def _cancel(num: SparseSum, den: SparseSum):
    """Divide out the polynomial gcd of num and den when cheap to find."""
    scale = 1
    for e, _ in num.terms + den.terms:
        scale = math.lcm(scale, int(e.denominator))
    nshift, dshift = num.val, den.val
    if (num.terms[-1][0] - nshift) * scale > _GCD_DEGREE_CAP:
        return num, den
    if (den.terms[-1][0] - dshift) * scale > _GCD_DEGREE_CAP:
        return num, den
    a = _to_dense(num, nshift, scale)
    b = _to_dense(den, dshift, scale)
    g = _dense_gcd(a, b) if len(a) >= len(b) else _dense_gcd(b, a)
    if len(g) <= 1:
        return num, den
    qa, _ = _dense_divmod(a, g)
    qb, _ = _dense_divmod(b, g)
    return _from_dense(qa, nshift, scale, num.backend), _from_dense(qb, dshift, scale, den.backend)


class FieldElem:
    """Element ``num/den`` of K with sparse-sum numerator and denominator.

    Monomial denominators are folded into the numerator, so most elements have
    ``den == 1``.  Equality is decided by cross-multiplication.
    """

    __slots__ = ("num", "den")

    def __init__(self, num: SparseSum, den: SparseSum | None = None):
        backend = num.backend
        if den is None:
            den = SparseSum.const(1, backend)
        num._check(den)
        if den.is_zero():
            raise FieldDivisionError("denominator is zero")
        if num.is_zero():
            den = SparseSum.const(1, backend)
        elif den.is_monomial():
            e, c = den.terms[0]
            if not (e == 0 and c == 1):
                num = num.scale(backend.one / c, -e)
                den = SparseSum.const(1, backend)
        else:
            e, c = den.terms[0]
            inv = backend.one / c
            num, den = num.scale(inv, -e), den.scale(inv, -e)
            num, den = _cancel(num, den)
            c = den.terms[0][1]
            if not c == 1:
                num, den = num.scale(backend.one / c), den.scale(backend.one / c)
            if den.is_monomial():
                e, c = den.terms[0]
                num = num.scale(backend.one / c, -e)
                den = SparseSum.const(1, backend)
        self.num = num
        self.den = den

    @property
    def backend(self) -> Backend:
        return self.num.backend

    @classmethod
    def of(cls, x, backend: Backend = QQ) -> "FieldElem":
        """Coerce an int, rational, SparseSum or FieldElem."""
        if isinstance(x, FieldElem):
            return x
        if isinstance(x, SparseSum):
            return cls(x)
        return cls(SparseSum.const(x, backend))

    @classmethod
    def monomial(cls, coeff, exp, backend: Backend = QQ) -> "FieldElem":
        return cls(SparseSum.monomial(coeff, exp, backend))

    @classmethod
    def t_pow(cls, exp, backend: Backend = QQ) -> "FieldElem":
        return cls(SparseSum.monomial(1, exp, backend))

    @classmethod
    def zero(cls, backend: Backend = QQ) -> "FieldElem":
        return cls(SparseSum((), backend))

    @classmethod
    def one(cls, backend: Backend = QQ) -> "FieldElem":
        return cls(SparseSum.const(1, backend))

    def _lift(self, other) -> "FieldElem":
        if isinstance(other, FieldElem):
            return other
        return FieldElem.of(other, self.backend)

    @property
    def val(self):
        if self.num.is_zero():
            return INF
        return self.num.val - self.den.val

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def is_sparse(self) -> bool:
        return self.den.is_one()

    def __add__(self, other) -> "FieldElem":
        if not isinstance(other, FieldElem):
            if isinstance(other, RationalFunction):
                return NotImplemented
            other = self._lift(other)
        if self.den == other.den:
            return FieldElem(self.num + other.num, self.den)
        return FieldElem(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "FieldElem":
        obj = FieldElem.__new__(FieldElem)
        obj.num, obj.den = -self.num, self.den
        return obj

    def __sub__(self, other) -> "FieldElem":
        if isinstance(other, RationalFunction):
            return NotImplemented
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "FieldElem":
        return self._lift(other) - self

    def __mul__(self, other) -> "FieldElem":
        if not isinstance(other, FieldElem):
            if isinstance(other, RationalFunction):
                return NotImplemented
            other = self._lift(other)
        if self.den.is_one() and other.den.is_one():
            obj = FieldElem.__new__(FieldElem)
            obj.num, obj.den = self.num * other.num, self.den
            return obj
        return FieldElem(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "FieldElem":
        if self.is_zero():
            raise FieldDivisionError("inverse of zero")
        return FieldElem(self.den, self.num)

    def __truediv__(self, other) -> "FieldElem":
        if isinstance(other, RationalFunction):
            return NotImplemented
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other) -> "FieldElem":
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int) -> "FieldElem":
        if k < 0:
            return self.inverse() ** (-k)
        return FieldElem(self.num ** k, self.den ** k)

    def __eq__(self, other):
        if isinstance(other, RationalFunction):
            return NotImplemented
        if not isinstance(other, FieldElem):
            try:
                other = self._lift(other)
            except (TypeError, ValueError):
                return NotImplemented
        if self.backend != other.backend:
            return False
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def expand(self, bound, inclusive: bool = False) -> SparseSum:
        """Terms of the t-adic expansion with exponent below ``bound``."""
        lead_e, lead_c = self.den.terms[0]
        inv = self.backend.one / lead_c
        num = self.num.scale(inv, -lead_e)
        if self.den.is_monomial():
            return num.truncate(bound, inclusive)
        rest = self.den.scale(inv, -lead_e) - SparseSum.const(1, self.backend)
        if num.is_zero():
            return num
        rel = bound - num.val
        acc = SparseSum.const(1, self.backend)
        power = acc
        step = -rest
        while True:
            power = (power * step).truncate(rel, inclusive)
            if power.is_zero():
                break
            acc = acc + power
        return (num * acc).truncate(bound, inclusive)

    def __repr__(self):
        return f"FieldElem({self})"

    def __str__(self):
        if self.den.is_one():
            return str(self.num)
        return f"({self.num})/({self.den})"


def val(x):
    """t-adic valuation; ``INF`` for zero."""
    if isinstance(x, (FieldElem, SparseSum)):
        return x.val
    return FieldElem.of(x).val


class Poly:
    """Dense univariate polynomial over K; ``coeffs[i]`` multiplies ``X^i``."""

    __slots__ = ("coeffs", "backend")

    def __init__(self, coeffs: Iterable, backend: Backend | None = None):
        coeffs = list(coeffs)
        if backend is None:
            backend = next((c.backend for c in coeffs if isinstance(c, FieldElem)), QQ)
        cs = [FieldElem.of(c, backend) for c in coeffs]
        while cs and cs[-1].is_zero():
            cs.pop()
        self.coeffs = tuple(cs)
        self.backend = backend

    @classmethod
    def X(cls, backend: Backend = QQ) -> "Poly":
        return cls([0, 1], backend)

    @classmethod
    def const(cls, c, backend: Backend = QQ) -> "Poly":
        return cls([c], backend)

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def is_constant(self) -> bool:
        return len(self.coeffs) <= 1

    def coeff(self, i: int) -> FieldElem:
        if 0 <= i < len(self.coeffs):
            return self.coeffs[i]
        return FieldElem.zero(self.backend)

    def lead(self) -> FieldElem:
        return self.coeffs[-1]

    def _lift(self, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        return Poly([other], self.backend)

    def __add__(self, other) -> "Poly":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        return Poly([self.coeff(i) + other.coeff(i) for i in range(n)], self.backend)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly([-c for c in self.coeffs], self.backend)

    def __sub__(self, other) -> "Poly":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "Poly":
        return self._lift(other) - self

    def __mul__(self, other) -> "Poly":
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return Poly([], self.backend)
        out = [FieldElem.zero(self.backend)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a.is_zero():
                continue
            for j, b in enumerate(other.coeffs):
                if not b.is_zero():
                    out[i + j] = out[i + j] + a * b
        return Poly(out, self.backend)

    __rmul__ = __mul__

    def __pow__(self, k: int) -> "Poly":
        result = Poly([1], self.backend)
        for _ in range(k):
            result = result * self
        return result

    def divmod(self, other: "Poly"):
        if other.is_zero():
            raise FieldDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        dq = len(self.coeffs) - len(other.coeffs)
        if dq < 0:
            return Poly([], self.backend), self
        quot = [FieldElem.zero(self.backend)] * (dq + 1)
        inv = other.lead().inverse()
        for i in range(dq, -1, -1):
            c = rem[i + other.degree] * inv
            quot[i] = c
            if not c.is_zero():
                for j, b in enumerate(other.coeffs):
                    rem[i + j] = rem[i + j] - c * b
        return Poly(quot, self.backend), Poly(rem[: other.degree], self.backend)

    def __call__(self, x) -> FieldElem:
        x = FieldElem.of(x, self.backend)
        acc = FieldElem.zero(self.backend)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def __eq__(self, other):
        if not isinstance(other, Poly):
            return NotImplemented
        return len(self.coeffs) == len(other.coeffs) and all(
            a == b for a, b in zip(self.coeffs, other.coeffs)
        )

    __hash__ = None

    def __repr__(self):
        return f"Poly({self})"

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k in range(len(self.coeffs) - 1, -1, -1):
            c = self.coeffs[k]
            if c.is_zero():
                continue
            neg, body = _coeff_body(c)
            xpart = "" if k == 0 else ("X" if k == 1 else f"X^{k}")
            if xpart:
                if body == "1":
                    term = xpart
                else:
                    term = f"{body}*{xpart}"
            else:
                term = body
            if not parts:
                parts.append(f"-{term}" if neg else term)
            else:
                parts.append(f" - {term}" if neg else f" + {term}")
        return "".join(parts)


def _coeff_body(c: FieldElem):
    """Sign and printable body of a polynomial coefficient."""
    signed = c.backend.p == 0
    if c.den.is_one() and c.num.is_monomial() and c.num.terms[0][0] == 0:
        q = c.num.terms[0][1]
        if signed and q < 0:
            return True, str(-q)
        return False, str(q)
    if signed and c.num.terms[0][1] < 0:
        return True, f"({-c})"
    return False, f"({c})"


def taylor_shift(f: Poly, a) -> Poly:
    """Coefficients of ``f(X + a)``."""
    a = FieldElem.of(a, f.backend)
    shift = Poly([a, FieldElem.one(f.backend)], f.backend)
    acc = Poly([], f.backend)
    for c in reversed(f.coeffs):
        acc = acc * shift + c
    return acc


class RationalFunction:
    """``num/den`` in K(X).  Constant denominators are divided out."""

    __slots__ = ("num", "den")

    def __init__(self, num: Poly, den: Poly | None = None):
        backend = num.backend
        if den is None:
            den = Poly([1], backend)
        if den.is_zero():
            raise FieldDivisionError("zero denominator")
        if num.is_zero():
            den = Poly([1], backend)
        else:
            lead = den.lead()
            if not lead == FieldElem.one(backend):
                inv = lead.inverse()
                num = Poly([c * inv for c in num.coeffs], backend)
                den = Poly([c * inv for c in den.coeffs], backend)
        self.num = num
        self.den = den

    @property
    def backend(self) -> Backend:
        return self.num.backend

    @classmethod
    def of(cls, x, backend: Backend = QQ) -> "RationalFunction":
        if isinstance(x, RationalFunction):
            return x
        if isinstance(x, Poly):
            return cls(x)
        if isinstance(x, FieldElem):
            backend = x.backend
        return cls(Poly([x], backend))

    @classmethod
    def X(cls, backend: Backend = QQ) -> "RationalFunction":
        return cls(Poly.X(backend))

    def _lift(self, other) -> "RationalFunction":
        return RationalFunction.of(other, self.backend)

    def is_constant(self) -> bool:
        return self.num.is_constant() and self.den.is_constant()

    def constant(self) -> FieldElem:
        if not self.is_constant():
            raise ValueError("not a constant")
        return self.num.coeff(0)

    def is_zero(self) -> bool:
        return self.num.is_zero()

    def __add__(self, other) -> "RationalFunction":
        other = self._lift(other)
        if self.den == other.den:
            return RationalFunction(self.num + other.num, self.den)
        return RationalFunction(self.num * other.den + other.num * self.den, self.den * other.den)

    __radd__ = __add__

    def __neg__(self) -> "RationalFunction":
        return RationalFunction(-self.num, self.den)

    def __sub__(self, other) -> "RationalFunction":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RationalFunction":
        return self._lift(other) - self

    def __mul__(self, other) -> "RationalFunction":
        other = self._lift(other)
        return RationalFunction(self.num * other.num, self.den * other.den)

    __rmul__ = __mul__

    def inverse(self) -> "RationalFunction":
        if self.num.is_zero():
            raise FieldDivisionError("inverse of the zero function")
        return RationalFunction(self.den, self.num)

    def __truediv__(self, other) -> "RationalFunction":
        return self * self._lift(other).inverse()

    def __rtruediv__(self, other) -> "RationalFunction":
        return self._lift(other) * self.inverse()

    def __pow__(self, k: int) -> "RationalFunction":
        if k < 0:
            return self.inverse() ** (-k)
        return RationalFunction(self.num ** k, self.den ** k)

    def __call__(self, s) -> FieldElem:
        return rf_eval(self, s)

    def __eq__(self, other):
        if not isinstance(other, RationalFunction):
            try:
                other = self._lift(other)
            except (TypeError, ValueError):
                return NotImplemented
        return self.num * other.den == other.num * self.den

    __hash__ = None

    def __repr__(self):
        return f"RationalFunction({self})"

    def __str__(self):
        if self.den.is_constant():
            return str(self.num)
        return f"({self.num})/({self.den})"


def rf_eval(phi: RationalFunction, s) -> FieldElem:
    """Value of ``phi`` at ``s``; raises PoleError at a zero of the denominator."""
    phi = RationalFunction.of(phi)
    s = FieldElem.of(s, phi.backend)
    d = phi.den(s)
    if d.is_zero():
        raise PoleError(f"denominator of {phi} vanishes at {s}")
    return phi.num(s) / d


def elem(x, backend: Backend = QQ) -> FieldElem:
    """Shorthand: coerce or parse into K."""
    if isinstance(x, str):
        from .expr import parse_elem

        return parse_elem(x, backend)
    return FieldElem.of(x, backend)


def rfun(x, backend: Backend = QQ) -> RationalFunction:
    """Shorthand: coerce or parse into K(X)."""
    if isinstance(x, str):
        from .expr import parse_rfun

        return parse_rfun(x, backend)
    return RationalFunction.of(x, backend)
