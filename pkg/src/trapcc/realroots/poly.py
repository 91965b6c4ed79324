"""Dense univariate polynomials with exact rational coefficients."""

from __future__ import annotations

from fractions import Fraction
from math import gcd, lcm
from typing import Iterable, Sequence, Union

Number = Union[int, Fraction]


def _frac(x) -> Fraction:
    if isinstance(x, Fraction):
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, str):
        return Fraction(x)
    raise TypeError(f"exact coefficient expected, got {type(x).__name__}")


class ExactPolynomial:
    """Polynomial over Q stored ascending: coeffs[k] multiplies x**k.

    Trailing zeros are stripped, so the zero polynomial has ``coeffs == ()``
    and degree -1.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [_frac(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs: tuple[Fraction, ...] = tuple(cs)

    # -- construction --------------------------------------------------------
    @classmethod
    def x(cls) -> "ExactPolynomial":
        return cls([0, 1])

    @classmethod
    def constant(cls, v: Number) -> "ExactPolynomial":
        return cls([v])

    @classmethod
    def from_roots(cls, roots: Sequence[Number]) -> "ExactPolynomial":
        p = cls([1])
        for r in roots:
            p = p * cls([-_frac(r), 1])
        return p

    # -- basic properties ----------------------------------------------------
    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def leading(self) -> Fraction:
        return self.coeffs[-1] if self.coeffs else Fraction(0)

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = ExactPolynomial([other])
        return isinstance(other, ExactPolynomial) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __repr__(self) -> str:
        return f"ExactPolynomial({[str(c) for c in self.coeffs]})"

    def __str__(self) -> str:
        if not self.coeffs:
            return "0"
        terms = []
        for k in range(self.degree, -1, -1):
            c = self.coeffs[k]
            if c == 0:
                continue
            mono = "" if k == 0 else ("x" if k == 1 else f"x^{k}")
            if mono and abs(c) == 1:
                body = mono
            else:
                body = f"{abs(c)}" + (f"*{mono}" if mono else "")
            terms.append(("- " if c < 0 else "+ ") + body)
        s = " ".join(terms)
        return s[2:] if s.startswith("+ ") else "-" + s[2:]

    # -- arithmetic ----------------------------------------------------------
    @staticmethod
    def _lift(v) -> "ExactPolynomial":
        return v if isinstance(v, ExactPolynomial) else ExactPolynomial([v])

    def __add__(self, other) -> "ExactPolynomial":
        other = self._lift(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (Fraction(0),) * (n - len(self.coeffs))
        b = other.coeffs + (Fraction(0),) * (n - len(other.coeffs))
        return ExactPolynomial(x + y for x, y in zip(a, b))

    __radd__ = __add__

    def __neg__(self) -> "ExactPolynomial":
        return ExactPolynomial(-c for c in self.coeffs)

    def __sub__(self, other) -> "ExactPolynomial":
        return self + (-self._lift(other))

    def __rsub__(self, other) -> "ExactPolynomial":
        return self._lift(other) - self

    def __mul__(self, other) -> "ExactPolynomial":
        other = self._lift(other)
        if self.is_zero() or other.is_zero():
            return ExactPolynomial()
        out = [Fraction(0)] * (len(self.coeffs) + len(other.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(other.coeffs):
                out[i + j] += a * b
        return ExactPolynomial(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "ExactPolynomial":
        if n < 0:
            raise ValueError("negative power")
        result = ExactPolynomial([1])
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def divmod(self, other: "ExactPolynomial") -> tuple["ExactPolynomial", "ExactPolynomial"]:
        if other.is_zero():
            raise ZeroDivisionError("polynomial division by zero")
        rem = list(self.coeffs)
        q = [Fraction(0)] * max(0, len(rem) - len(other.coeffs) + 1)
        lead = other.leading()
        dv = other.degree
        for k in range(len(rem) - 1, dv - 1, -1):
            coef = rem[k]
            if coef == 0:
                continue
            t = coef / lead
            q[k - dv] = t
            for j, b in enumerate(other.coeffs):
                rem[k - dv + j] -= t * b
        return ExactPolynomial(q), ExactPolynomial(rem[:dv] if dv > 0 else [])

    def __floordiv__(self, other) -> "ExactPolynomial":
        return self.divmod(self._lift(other))[0]

    def __mod__(self, other) -> "ExactPolynomial":
        return self.divmod(self._lift(other))[1]

    def exact_div(self, other: "ExactPolynomial") -> "ExactPolynomial":
        q, r = self.divmod(other)
        if not r.is_zero():
            raise ArithmeticError("division is not exact")
        return q

    # -- calculus and normalisation -----------------------------------------
    def derivative(self) -> "ExactPolynomial":
        return ExactPolynomial(k * c for k, c in enumerate(self.coeffs) if k)

    def monic(self) -> "ExactPolynomial":
        if self.is_zero():
            return self
        lead = self.leading()
        return ExactPolynomial(c / lead for c in self.coeffs)

    def primitive(self) -> "ExactPolynomial":
        """Integer coefficients with gcd 1 and positive leading coefficient.

        The scaling factor is positive iff the leading coefficient was, so use
        ``positive_primitive`` when signs matter.
        """
        p = self.positive_primitive()
        return -p if p.leading() < 0 else p

    def positive_primitive(self) -> "ExactPolynomial":
        """Integer coefficients with gcd 1, scaled by a positive factor only."""
        if self.is_zero():
            return self
        den = lcm(*(c.denominator for c in self.coeffs))
        ints = [int(c * den) for c in self.coeffs]
        g = 0
        for v in ints:
            g = gcd(g, v)
        return ExactPolynomial(v // g for v in ints)

    def integer_coefficients(self) -> list[int]:
        p = self.primitive()
        return [int(c) for c in p.coeffs]

    def compose_scale(self, factor: Number) -> "ExactPolynomial":
        """p(factor * x)."""
        f = _frac(factor)
        return ExactPolynomial(c * f ** k for k, c in enumerate(self.coeffs))

    # -- evaluation ----------------------------------------------------------
    def __call__(self, x):
        """Horner evaluation; exact for int/Fraction, else in x's own number type."""
        if isinstance(x, (int, Fraction)):
            return self.eval_exact(x)
        zero = x * 0
        acc = zero
        for c in reversed(self.coeffs):
            acc = acc * x + (zero + c.numerator) / (zero + c.denominator)
        return acc

    def eval_exact(self, x: Number) -> Fraction:
        x = _frac(x)
        acc = Fraction(0)
        for c in reversed(self.coeffs):
            acc = acc * x + c
        return acc

    def sign_at(self, x: Number) -> int:
        v = self.eval_exact(x)
        return (v > 0) - (v < 0)

    def sign_at_pos_inf(self) -> int:
        lead = self.leading()
        return (lead > 0) - (lead < 0)

    def sign_at_neg_inf(self) -> int:
        s = self.sign_at_pos_inf()
        return s if self.degree % 2 == 0 else -s


def poly_gcd(p: ExactPolynomial, q: ExactPolynomial) -> ExactPolynomial:
    """Monic gcd by the Euclidean algorithm (primitive parts keep sizes down)."""
    a, b = p.positive_primitive(), q.positive_primitive()
    while not b.is_zero():
        a, b = b, (a % b).positive_primitive()
    return a.monic() if not a.is_zero() else a


def square_free(p: ExactPolynomial) -> ExactPolynomial:
    """p / gcd(p, p'), as a primitive integer polynomial."""
    if p.degree <= 0:
        return p
    g = poly_gcd(p, p.derivative())
    return p.exact_div(g).primitive() if g.degree > 0 else p.primitive()


def strip_factor(p: ExactPolynomial, f: ExactPolynomial) -> tuple[ExactPolynomial, int]:
    """Divide out f as often as it divides p; returns (quotient, multiplicity)."""
    k = 0
    while p.degree >= f.degree > 0:
        q, r = p.divmod(f)
        if not r.is_zero():
            break
        p, k = q, k + 1
    return p, k
