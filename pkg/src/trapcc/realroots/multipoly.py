"""Sparse multivariate polynomials over Q and Sylvester resultants."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Mapping, Sequence

from .poly import ExactPolynomial, _frac

Monomial = tuple[int, ...]


class MultiPolynomial:
    """Polynomial in named variables, stored as {exponent tuple: coefficient}."""

    __slots__ = ("variables", "terms")

    def __init__(self, variables: Sequence[str], terms: Mapping[Monomial, object] | None = None):
        self.variables: tuple[str, ...] = tuple(variables)
        n = len(self.variables)
        clean: dict[Monomial, Fraction] = {}
        for mono, c in (terms or {}).items():
            if len(mono) != n:
                raise ValueError(f"monomial {mono} does not match {n} variables")
            c = _frac(c)
            if c != 0:
                clean[tuple(mono)] = c
        self.terms = clean

    # -- construction --------------------------------------------------------
    @classmethod
    def var(cls, variables: Sequence[str], name: str) -> "MultiPolynomial":
        idx = list(variables).index(name)
        mono = tuple(1 if i == idx else 0 for i in range(len(variables)))
        return cls(variables, {mono: 1})

    @classmethod
    def const(cls, variables: Sequence[str], value) -> "MultiPolynomial":
        return cls(variables, {(0,) * len(variables): value})

    @classmethod
    def gens(cls, variables: Sequence[str]) -> tuple["MultiPolynomial", ...]:
        return tuple(cls.var(variables, v) for v in variables)

    def _lift(self, v) -> "MultiPolynomial":
        if isinstance(v, MultiPolynomial):
            if v.variables != self.variables:
                raise ValueError("variable lists differ")
            return v
        return MultiPolynomial.const(self.variables, v)

    # -- properties ----------------------------------------------------------
    def is_zero(self) -> bool:
        return not self.terms

    def total_degree(self) -> int:
        return max((sum(m) for m in self.terms), default=-1)

    def degree_in(self, name: str) -> int:
        i = self.variables.index(name)
        return max((m[i] for m in self.terms), default=-1)

    def free_variables(self) -> set[str]:
        return {v for i, v in enumerate(self.variables) if any(m[i] for m in self.terms)}

    def __eq__(self, other) -> bool:
        if not isinstance(other, MultiPolynomial):
            other = self._lift(other)
        return self.variables == other.variables and self.terms == other.terms

    def __repr__(self) -> str:
        return f"MultiPolynomial({self.variables}, {len(self.terms)} terms)"

    # -- arithmetic ----------------------------------------------------------
    def __add__(self, other) -> "MultiPolynomial":
        other = self._lift(other)
        out = dict(self.terms)
        for m, c in other.terms.items():
            out[m] = out.get(m, Fraction(0)) + c
        return MultiPolynomial(self.variables, out)

    __radd__ = __add__

    def __neg__(self) -> "MultiPolynomial":
        return MultiPolynomial(self.variables, {m: -c for m, c in self.terms.items()})

    def __sub__(self, other) -> "MultiPolynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "MultiPolynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "MultiPolynomial":
        other = self._lift(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                m = tuple(x + y for x, y in zip(m1, m2))
                out[m] = out.get(m, Fraction(0)) + c1 * c2
        return MultiPolynomial(self.variables, out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "MultiPolynomial":
        result = MultiPolynomial.const(self.variables, 1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def exact_div(self, other: "MultiPolynomial") -> "MultiPolynomial":
        """Quotient of an exact division (lex order); raises if not exact."""
        other = self._lift(other)
        if other.is_zero():
            raise ZeroDivisionError("division by zero polynomial")
        lead_m = max(other.terms)
        lead_c = other.terms[lead_m]
        rem = dict(self.terms)
        quot: dict[Monomial, Fraction] = {}
        while rem:
            m = max(rem)
            diff = tuple(x - y for x, y in zip(m, lead_m))
            if any(d < 0 for d in diff):
                raise ArithmeticError("division is not exact")
            t = rem[m] / lead_c
            quot[diff] = quot.get(diff, Fraction(0)) + t
            for om, oc in other.terms.items():
                k = tuple(x + y for x, y in zip(om, diff))
                v = rem.get(k, Fraction(0)) - t * oc
                if v == 0:
                    rem.pop(k, None)
                else:
                    rem[k] = v
        return MultiPolynomial(self.variables, quot)

    # -- views ---------------------------------------------------------------
    def coefficients_in(self, name: str) -> list["MultiPolynomial"]:
        """Coefficients of name**0, name**1, ... (each free of ``name``)."""
        i = self.variables.index(name)
        deg = self.degree_in(name)
        buckets: list[dict] = [dict() for _ in range(max(deg, 0) + 1)]
        for m, c in self.terms.items():
            k = m[i]
            mm = m[:i] + (0,) + m[i + 1:]
            buckets[k][mm] = c
        return [MultiPolynomial(self.variables, b) for b in buckets]

    def substitute(self, values: Mapping[str, object]) -> "MultiPolynomial":
        """Replace variables by exact numbers or by MultiPolynomials."""
        out = MultiPolynomial(self.variables)
        for m, c in self.terms.items():
            term = MultiPolynomial.const(self.variables, c)
            mono = [0] * len(m)
            for i, e in enumerate(m):
                name = self.variables[i]
                if e and name in values:
                    v = values[name]
                    term = term * (self._lift(v) ** e)
                else:
                    mono[i] = e
            out = out + term * MultiPolynomial(self.variables, {tuple(mono): 1})
        return out

    def evaluate(self, values: Mapping[str, float]) -> float:
        total = 0.0
        for m, c in self.terms.items():
            t = float(c)
            for i, e in enumerate(m):
                if e:
                    t *= values[self.variables[i]] ** e
            total += t
        return total

    def to_univariate(self, name: str) -> ExactPolynomial:
        others = self.free_variables() - {name}
        if others:
            raise ValueError(f"still depends on {sorted(others)}")
        return ExactPolynomial(c.terms.get((0,) * len(self.variables), 0) for c in self.coefficients_in(name))

    def content_free(self) -> "MultiPolynomial":
        """Integer coefficients with gcd 1 (positive scaling)."""
        if not self.terms:
            return self
        den = lcm(*(c.denominator for c in self.terms.values()))
        g = 0
        for c in self.terms.values():
            g = gcd(g, int(c * den))
        return MultiPolynomial(self.variables, {m: c * den / g for m, c in self.terms.items()})

    def remove_monomial_factor(self) -> tuple["MultiPolynomial", Monomial]:
        """Divide out the largest monomial dividing every term."""
        if not self.terms:
            return self, (0,) * len(self.variables)
        low = tuple(min(m[i] for m in self.terms) for i in range(len(self.variables)))
        return (
            MultiPolynomial(self.variables, {tuple(x - y for x, y in zip(m, low)): c for m, c in self.terms.items()}),
            low,
        )


def bareiss_determinant(matrix: list[list]) -> object:
    """Fraction-free determinant over an integral domain with exact division.

    Entries must support +, -, * and ``exact_div`` (MultiPolynomial) or be
    exact numbers.
    """
    n = len(matrix)
    if n == 0:
        return 1
    m = [list(row) for row in matrix]

    def is_zero(v):
        return v.is_zero() if isinstance(v, MultiPolynomial) else v == 0

    def div(a, b):
        if isinstance(a, MultiPolynomial):
            return a.exact_div(b)
        return Fraction(a) / Fraction(b)

    sign = 1
    prev = 1
    for k in range(n - 1):
        if is_zero(m[k][k]):
            for i in range(k + 1, n):
                if not is_zero(m[i][k]):
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return m[k][k] * 0  # whole column is zero
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                num = m[k][k] * m[i][j] - m[i][k] * m[k][j]
                m[i][j] = num if k == 0 else div(num, prev)
        prev = m[k][k]
    det = m[n - 1][n - 1]
    return det if sign > 0 else -det


def sylvester_matrix(p: MultiPolynomial, q: MultiPolynomial, name: str) -> list[list[MultiPolynomial]]:
    """Sylvester matrix of p and q viewed as polynomials in ``name``."""
    pc = p.coefficients_in(name)[::-1]  # descending
    qc = q.coefficients_in(name)[::-1]
    deg_p, deg_q = len(pc) - 1, len(qc) - 1
    size = deg_p + deg_q
    zero = MultiPolynomial(p.variables)
    rows = []
    for i in range(deg_q):
        rows.append([zero] * i + pc + [zero] * (size - i - len(pc)))
    for i in range(deg_p):
        rows.append([zero] * i + qc + [zero] * (size - i - len(qc)))
    return rows


def _pure_square_radicand(q: MultiPolynomial, name: str) -> MultiPolynomial | None:
    """g if q == name**2 - g with g free of name, else None."""
    cs = q.coefficients_in(name)
    if len(cs) == 3 and cs[1].is_zero() and cs[2] == MultiPolynomial.const(q.variables, 1):
        return -cs[0]
    return None


def norm_resultant(p: MultiPolynomial, g: MultiPolynomial, name: str) -> MultiPolynomial:
    """Res(p, name**2 - g) = A**2 - g*B**2 where p = A + name*B mod name**2 - g.

    This is the product of p over the two roots of name**2 = g, i.e. what
    squaring out a single square root produces.
    """
    even = MultiPolynomial(p.variables)
    odd = MultiPolynomial(p.variables)
    for k, ck in enumerate(p.coefficients_in(name)):
        term = ck * g ** (k // 2)
        if k % 2:
            odd = odd + term
        else:
            even = even + term
    return even * even - g * odd * odd


def sylvester_resultant(
    p: MultiPolynomial, q: MultiPolynomial, eliminate: str, method: str = "auto"
) -> MultiPolynomial:
    """Res(p, q) with respect to ``eliminate``, exactly.

    Both inputs must actually involve ``eliminate``; the result is free of it.
    ``method="sylvester"`` always takes the Bareiss determinant of the
    Sylvester matrix; ``"auto"`` uses the closed norm form when ``q`` is
    ``x**2 - g`` (same value, far cheaper).
    """
    if p.variables != q.variables:
        raise ValueError("variable lists differ")
    if p.degree_in(eliminate) < 1 or q.degree_in(eliminate) < 1:
        raise ValueError(f"both polynomials must involve {eliminate!r}")
    if method not in ("auto", "sylvester"):
        raise ValueError(f"unknown method {method!r}")
    if method == "auto":
        g = _pure_square_radicand(q, eliminate)
        if g is not None:
            return norm_resultant(p, g, eliminate)
    det = bareiss_determinant(sylvester_matrix(p, q, eliminate))
    return det if isinstance(det, MultiPolynomial) else MultiPolynomial.const(p.variables, det)


def univariate_resultant(p: ExactPolynomial, q: ExactPolynomial) -> Fraction:
    """Resultant of two univariate polynomials (a number)."""
    var = ("x",)
    mp = MultiPolynomial(var, {(k,): c for k, c in enumerate(p.coeffs)})
    mq = MultiPolynomial(var, {(k,): c for k, c in enumerate(q.coeffs)})
    r = sylvester_resultant(mp, mq, "x")
    return r.terms.get((0,), Fraction(0))


def from_univariate(p: ExactPolynomial, variables: Sequence[str], name: str) -> MultiPolynomial:
    idx = list(variables).index(name)
    terms = {}
    for k, c in enumerate(p.coeffs):
        mono = tuple(k if i == idx else 0 for i in range(len(variables)))
        terms[mono] = c
    return MultiPolynomial(variables, terms)


def parse_terms(variables: Sequence[str], items: Iterable[tuple[object, Monomial]]) -> MultiPolynomial:
    """Build from (coefficient, exponents) pairs."""
    out: dict[Monomial, Fraction] = {}
    for c, m in items:
        out[tuple(m)] = out.get(tuple(m), Fraction(0)) + _frac(c)
    return MultiPolynomial(variables, out)
