"""Sturm chains, exact real-root counting and isolation on rational intervals."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

from .poly import ExactPolynomial, Number, _frac, square_free


@dataclass(frozen=True)
class SturmChain:
    polys: tuple[ExactPolynomial, ...]

    def sign_changes(self, x: Number) -> int:
        return _changes([p.sign_at(x) for p in self.polys])

    def sign_changes_pos_inf(self) -> int:
        return _changes([p.sign_at_pos_inf() for p in self.polys])

    def sign_changes_neg_inf(self) -> int:
        return _changes([p.sign_at_neg_inf() for p in self.polys])

    def count(self, lo: Number, hi: Number) -> int:
        """Distinct roots in (lo, hi]."""
        return self.sign_changes(lo) - self.sign_changes(hi)

    def __len__(self) -> int:
        return len(self.polys)


@dataclass(frozen=True)
class IsolatingInterval:
    lo: Fraction
    hi: Fraction
    square_free: bool = True

    def midpoint(self) -> Fraction:
        return (self.lo + self.hi) / 2

    def width(self) -> Fraction:
        return self.hi - self.lo


def _changes(signs: Sequence[int]) -> int:
    nz = [s for s in signs if s != 0]
    return sum(1 for x, y in zip(nz, nz[1:]) if x != y)


def sturm_chain(p: ExactPolynomial) -> SturmChain:
    """p0 = p, p1 = p', p_{k+1} = -rem(p_{k-1}, p_k).

    Every element is rescaled by a positive factor to a primitive integer
    polynomial, which leaves all sign sequences unchanged.
    """
    if p.is_zero():
        raise ValueError("Sturm chain of the zero polynomial")
    chain = [p.positive_primitive()]
    d = p.derivative()
    if d.is_zero():
        return SturmChain(tuple(chain))
    chain.append(d.positive_primitive())
    while True:
        r = chain[-2] % chain[-1]
        if r.is_zero():
            break
        chain.append((-r).positive_primitive())
    return SturmChain(tuple(chain))


def sturm_count(p: ExactPolynomial, lo: Number, hi: Number) -> int:
    """Number of distinct real roots of p in (lo, hi]."""
    lo, hi = _frac(lo), _frac(hi)
    if lo >= hi:
        return 0
    if p.degree <= 0:
        return 0
    return sturm_chain(square_free(p)).count(lo, hi)


def isolate(p: ExactPolynomial, lo: Number, hi: Number) -> list[IsolatingInterval]:
    """Disjoint intervals (lo_i, hi_i] each holding exactly one root, ascending."""
    lo, hi = _frac(lo), _frac(hi)
    if p.degree <= 0 or lo >= hi:
        return []
    q = square_free(p)
    chain = sturm_chain(q)
    out: list[IsolatingInterval] = []
    stack = [(lo, hi, chain.sign_changes(lo), chain.sign_changes(hi))]
    while stack:
        a, b, va, vb = stack.pop()
        n = va - vb
        if n == 0:
            continue
        if n == 1:
            out.append(IsolatingInterval(a, b))
            continue
        m = (a + b) / 2
        vm = chain.sign_changes(m)
        stack.append((a, m, va, vm))
        stack.append((m, b, vm, vb))
    out.sort(key=lambda iv: iv.lo)
    return out


def refine(p: ExactPolynomial, iv: IsolatingInterval, tol: Number) -> IsolatingInterval:
    """Bisect on exact signs until the interval is narrower than tol."""
    q = square_free(p)
    tol = _frac(tol)
    a, b = iv.lo, iv.hi
    sb = q.sign_at(b)
    if sb == 0:
        return IsolatingInterval(b, b)
    while b - a > tol:
        m = (a + b) / 2
        sm = q.sign_at(m)
        if sm == 0:
            return IsolatingInterval(m, m)
        if sm == sb:
            b = m
        else:
            a = m
    return IsolatingInterval(a, b)


def isolate_and_refine(p: ExactPolynomial, lo: Number, hi: Number, tol: float = 1e-12) -> list[float]:
    """Roots of p in (lo, hi], ascending, each accurate to ``tol``."""
    t = Fraction(tol)
    return [float(refine(p, iv, t).midpoint()) for iv in isolate(p, lo, hi)]


def sqrt_bracket(num: int, den: int, digits: int) -> tuple[Fraction, Fraction]:
    """Rationals lo < sqrt(num/den) < hi with hi - lo <= 10**-digits (num/den not a square)."""
    from math import isqrt

    scale = 10 ** digits
    # sqrt(num/den) = sqrt(num*den)/den
    k = isqrt(num * den * scale * scale)
    lo = Fraction(k, den * scale)
    hi = Fraction(k + 1, den * scale)
    return lo, hi


def count_in_open_interval_sqrt(p: ExactPolynomial, num: int, den: int, max_digits: int = 200) -> int:
    """Distinct roots of p in (-sqrt(num/den), sqrt(num/den)), exactly.

    The irrational endpoints are bracketed by rationals that are tightened
    until the Sturm count in both bracketing gaps is zero; p must not vanish
    at the endpoints.
    """
    q = square_free(p)
    chain = sturm_chain(q)
    digits = 8
    while digits <= max_digits:
        lo, hi = sqrt_bracket(num, den, digits)
        gap_right = chain.count(lo, hi)
        gap_left = chain.count(-hi, -lo)
        if gap_left == 0 and gap_right == 0:
            return chain.count(-lo, lo)
        digits *= 2
    raise ArithmeticError("polynomial appears to vanish at the interval endpoint")
