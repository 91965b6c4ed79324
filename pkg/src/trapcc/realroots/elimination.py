"""Radical-free polynomials for the equal-mass conditions on C1.

On C1 (a = 2/sqrt3, b = 1/sqrt3) both conditions are algebraic in c but
carry square roots.  With u = sqrt3 * c every radicand has integer
coefficients and the admissible range -1/sqrt3 < c < 1/sqrt3 becomes the
rational interval -1 < u < 1:

    K = sqrt(u^2 - 4u + 7)     (= sqrt(3c^2 - 4 sqrt3 c + 7))
    L = sqrt(u^2 + 3)          (= sqrt3 * sqrt(c^2 + 1))
    M = sqrt(u^2 - 2u + 1)     (= sqrt(3c^2 - 2 sqrt3 c + 1))

m2 = m3:  -2 M^2 (8 - K^3) - K^3 (8 - M^3) = 0
m2 = 1:    4 K^3 - L^3 K^3 + 4 L^3 = 0

(after clearing positive denominators).  Each radical is squared out in
turn; a squaring of A + R*B = 0 with R > 0 can only introduce roots where
A*B > 0, so the last squaring yields an exact sign test that separates the
genuine roots from the ones it introduced.  Every surviving root is also
substituted back into the radical expression at high precision.
"""

from __future__ import annotations

import logging
import warnings
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable

import mpmath

from .poly import ExactPolynomial, poly_gcd, square_free, strip_factor
from .sturm import IsolatingInterval, isolate, refine, sturm_chain, sturm_count

log = logging.getLogger(__name__)

TARGET_M2M3 = "m2m3-on-c1"
TARGET_M2EQ1 = "m2eq1-on-c1"
TARGETS = (TARGET_M2M3, TARGET_M2EQ1)

EXPECTED_DEGREE = {TARGET_M2M3: 24, TARGET_M2EQ1: 22}
FILTER_TOL = 1e-10

_U = ExactPolynomial.x()
RADICANDS = {
    "K": _U * _U - 4 * _U + 7,
    "L": _U * _U + 3,
    "M": _U * _U - 2 * _U + 1,
}


class DegreeMismatch(UserWarning):
    pass


class RadicalExpression:
    """Element of Q[u][K, L, M] reduced modulo R^2 = radicand(R).

    Stored as {frozenset of radicals present: coefficient polynomial in u}.
    """

    def __init__(self, parts: dict[frozenset, ExactPolynomial] | None = None):
        self.parts = {k: v for k, v in (parts or {}).items() if not v.is_zero()}

    @classmethod
    def poly(cls, p) -> "RadicalExpression":
        p = p if isinstance(p, ExactPolynomial) else ExactPolynomial([p])
        return cls({frozenset(): p})

    @classmethod
    def radical(cls, name: str) -> "RadicalExpression":
        return cls({frozenset([name]): ExactPolynomial([1])})

    def _lift(self, v) -> "RadicalExpression":
        return v if isinstance(v, RadicalExpression) else RadicalExpression.poly(v)

    def __add__(self, other) -> "RadicalExpression":
        other = self._lift(other)
        out = dict(self.parts)
        for k, v in other.parts.items():
            out[k] = out.get(k, ExactPolynomial()) + v
        return RadicalExpression(out)

    __radd__ = __add__

    def __neg__(self) -> "RadicalExpression":
        return RadicalExpression({k: -v for k, v in self.parts.items()})

    def __sub__(self, other) -> "RadicalExpression":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "RadicalExpression":
        return self._lift(other) - self

    def __mul__(self, other) -> "RadicalExpression":
        other = self._lift(other)
        out: dict[frozenset, ExactPolynomial] = {}
        for k1, v1 in self.parts.items():
            for k2, v2 in other.parts.items():
                coef = v1 * v2
                for r in k1 & k2:
                    coef = coef * RADICANDS[r]
                key = k1 ^ k2
                out[key] = out.get(key, ExactPolynomial()) + coef
        return RadicalExpression(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "RadicalExpression":
        out = RadicalExpression.poly(1)
        for _ in range(n):
            out = out * self
        return out

    def radicals(self) -> set[str]:
        return set().union(*self.parts.keys()) if self.parts else set()

    def split(self, name: str) -> tuple["RadicalExpression", "RadicalExpression"]:
        """(A, B) with self = A + name * B, both free of ``name``."""
        a, b = {}, {}
        for k, v in self.parts.items():
            if name in k:
                b[k - {name}] = v
            else:
                a[k] = v
        return RadicalExpression(a), RadicalExpression(b)

    def as_polynomial(self) -> ExactPolynomial:
        if self.radicals():
            raise ValueError(f"radicals {sorted(self.radicals())} remain")
        return self.parts.get(frozenset(), ExactPolynomial())


@dataclass(frozen=True)
class SquaringStep:
    radical: str
    radicand: str
    degree_after: int
    branch_condition: ExactPolynomial | None  # -A*B, must be >= 0 at genuine roots


@dataclass
class EliminationResult:
    target: str
    variable: str  # "u", with c = u / sqrt3
    raw_polynomial: ExactPolynomial
    polynomial: ExactPolynomial  # raw with interval-endpoint factors removed
    endpoint_multiplicity: int
    expected_degree: int
    steps: list[SquaringStep]
    sturm_count: int  # distinct roots of ``polynomial`` in (-1, 1)
    candidate_roots_u: list[float]
    admissible_count: int  # exact: roots in (-1, 1) satisfying the branch condition
    roots_u: list[float]
    roots_c: list[float]
    residuals: list[float]  # |radical expression| at each reported root
    all_residuals: list[float] = field(default_factory=list)

    @property
    def degree(self) -> int:
        return self.polynomial.degree

    @property
    def raw_degree(self) -> int:
        return self.raw_polynomial.degree

    @property
    def degree_matches(self) -> bool:
        return self.degree == self.expected_degree


def _expression(target: str) -> tuple[RadicalExpression, tuple[str, ...]]:
    k = RadicalExpression.radical("K")
    l_ = RadicalExpression.radical("L")
    m = RadicalExpression.radical("M")
    if target == TARGET_M2M3:
        return -2 * m ** 2 * (8 - k ** 3) - k ** 3 * (8 - m ** 3), ("M", "K")
    if target == TARGET_M2EQ1:
        return 4 * k ** 3 - l_ ** 3 * k ** 3 + 4 * l_ ** 3, ("K", "L")
    raise ValueError(f"unknown target {target!r}; expected one of {TARGETS}")


def square_out(expr: RadicalExpression, name: str) -> tuple[RadicalExpression, RadicalExpression, RadicalExpression]:
    """A^2 - radicand * B^2 for expr = A + R*B; also returns (A, B)."""
    a, b = expr.split(name)
    return a * a - RadicalExpression.poly(RADICANDS[name]) * b * b, a, b


def radical_value(target: str, c, dps: int = 50):
    """The untouched radical expression in c, evaluated with mpmath."""
    with mpmath.workdps(dps):
        c = mpmath.mpf(c)
        s3 = mpmath.sqrt(3)
        k1 = mpmath.sqrt(c * c + 1) ** 3
        k2 = mpmath.sqrt(3 * c * c - 4 * s3 * c + 7) ** 3
        if target == TARGET_M2M3:
            k3 = mpmath.sqrt(3 * c * c - 2 * s3 * c + 1) ** 3
            inner = -6 * (1 / s3 - c) ** 2 / (8 - k3) - k2 / (8 - k2)
            return (8 / (3 * s3) - k1) * inner / k1
        if target == TARGET_M2EQ1:
            return (8 * s3 - 9 * k1) * k2 / (9 * k1 * (k2 - 8)) - 1
    raise ValueError(f"unknown target {target!r}")


def _sign_on(cond: ExactPolynomial, p: ExactPolynomial, iv: IsolatingInterval, max_iter: int = 400) -> int:
    """Exact sign of ``cond`` at the root of p isolated by ``iv``.

    The interval is bisected until cond has no root in [lo, hi]; then its
    sign there is constant.  Returns 0 if cond and p share the root.
    """
    if poly_gcd(cond, p).degree > 0:
        shared = square_free(poly_gcd(cond, p))
        if sturm_count(shared, iv.lo, iv.hi) > 0:
            return 0
    cur = iv
    for _ in range(max_iter):
        if cond.sign_at(cur.lo) != 0 and sturm_count(cond, cur.lo, cur.hi) == 0:
            return cond.sign_at(cur.hi)
        cur = refine(p, cur, cur.width() / 2)
        if cur.width() == 0:
            return cond.sign_at(cur.lo)
    raise ArithmeticError("could not separate the root from the branch condition")


def eliminate_radicals_c1(
    target: str,
    tol: float = 1e-15,
    filter_tol: float = FILTER_TOL,
    value: Callable | None = None,
) -> EliminationResult:
    """Square out every radical of the target condition on C1.

    Returns the radical-free polynomial in u = sqrt3 * c, its exact Sturm
    count on (-1, 1), and the roots that survive both the exact branch test
    and back-substitution.  Emits DegreeMismatch if the degree differs from
    the reference value (not an error: another elimination order may give
    another degree).
    """
    expr, order = _expression(target)
    steps: list[SquaringStep] = []
    cond: ExactPolynomial | None = None
    for name in order:
        expr, a, b = square_out(expr, name)
        if not a.radicals() and not b.radicals():
            cond = -(a.as_polynomial() * b.as_polynomial())
        else:
            cond = None
        log.debug("squared out %s: degree %s", name, max((v.degree for v in expr.parts.values()), default=-1))
        steps.append(SquaringStep(name, str(RADICANDS[name]), max(v.degree for v in expr.parts.values()), cond))
    raw = expr.as_polynomial().primitive()

    poly, mult = raw, 0
    for endpoint in (ExactPolynomial([-1, 1]), ExactPolynomial([1, 1])):
        poly, k = strip_factor(poly, endpoint)
        mult += k
    poly = poly.primitive()

    expected = EXPECTED_DEGREE[target]
    if poly.degree != expected:
        warnings.warn(f"{target}: degree {poly.degree}, reference {expected}", DegreeMismatch)

    lo, hi = Fraction(-1), Fraction(1)
    count = sturm_chain(square_free(poly)).count(lo, hi)
    intervals = isolate(poly, lo, hi)
    t = Fraction(tol)
    refined = [refine(poly, iv, t) for iv in intervals]

    keep = []
    for iv, fine in zip(intervals, refined):
        ok = True
        if cond is not None:
            ok = _sign_on(cond, square_free(poly), iv) >= 0
        keep.append(ok)
    admissible = sum(keep)

    value = value or (lambda c: radical_value(target, c))
    s3 = mpmath.sqrt(3)
    cand_u = [float(f.midpoint()) for f in refined]
    all_res = [float(abs(value(mpmath.mpf(f.midpoint().numerator) / f.midpoint().denominator / s3))) for f in refined]
    roots_u, roots_c, residuals = [], [], []
    for ok, u, res in zip(keep, cand_u, all_res):
        if ok and res <= filter_tol:
            roots_u.append(u)
            roots_c.append(float(mpmath.mpf(u) / s3))
            residuals.append(res)
        elif ok != (res <= filter_tol):
            log.warning("%s: branch test and back-substitution disagree at u=%r", target, u)
    return EliminationResult(
        target=target,
        variable="u",
        raw_polynomial=raw,
        polynomial=poly,
        endpoint_multiplicity=mult,
        expected_degree=expected,
        steps=steps,
        sturm_count=count,
        candidate_roots_u=cand_u,
        admissible_count=admissible,
        roots_u=roots_u,
        roots_c=roots_c,
        residuals=residuals,
        all_residuals=all_res,
    )
