"""Positions, mutual distances, oriented areas and trapezoid shape labels.

Bodies sit on the two vertical lines x=0 and x=1:

    q1 = (0, 0), q2 = (0, a), q3 = (1, b), q4 = (1, c)

with a >= 1 and b > c.  Every function here is pure; the dataclasses are
frozen.  Distance fields may hold numpy arrays when a whole grid is
evaluated at once (see ``distance_arrays``).
"""

from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import Sequence

import numpy as np

Point = tuple[float, float]

DEFAULT_EPS_CLASS = 1e-9


class InvalidConfig(ValueError):
    """Raised when (a, b, c) violates a >= 1 or b > c."""


@dataclass(frozen=True)
class TrapezoidConfig:
    a: float
    b: float
    c: float

    def __post_init__(self):
        if not (self.a >= 1.0):
            raise InvalidConfig(f"a must be >= 1, got {self.a!r}")
        if not (self.b > self.c):
            raise InvalidConfig(f"b must exceed c, got b={self.b!r}, c={self.c!r}")

    def relabeled(self) -> "TrapezoidConfig":
        """Swap m1<->m2 and m3<->m4 (reflection y -> a - y)."""
        return TrapezoidConfig(self.a, self.a - self.c, self.a - self.b)


@dataclass(frozen=True)
class MutualDistances:
    r12: float
    r13: float
    r14: float
    r23: float
    r24: float
    r34: float

    def as_tuple(self) -> tuple:
        return (self.r12, self.r13, self.r14, self.r23, self.r24, self.r34)

    def scale(self) -> float:
        return max(self.as_tuple())

    def cubes(self) -> tuple:
        return tuple(r ** 3 for r in self.as_tuple())


@dataclass(frozen=True)
class OrientedAreas:
    d1: float
    d2: float
    d3: float
    d4: float

    def total(self) -> float:
        return self.d1 + self.d2 + self.d3 + self.d4


class TrapezoidClass(str, enum.Enum):
    ACUTE = "AcuteTrapezoid"
    OBTUSE = "ObtuseTrapezoid"
    RIGHT = "RightTrapezoid"
    ISOSCELES = "IsoscelesTrapezoid"
    THREE_SIDES_EQUAL = "ThreeSidesEqual"
    PARALLELOGRAM = "Parallelogram"
    RHOMBUS = "Rhombus"
    RECTANGLE = "Rectangle"
    SQUARE = "Square"
    NON_TRAPEZOID = "NonTrapezoid"


def positions_from_config(cfg: TrapezoidConfig) -> list[Point]:
    return [(0.0, 0.0), (0.0, cfg.a), (1.0, cfg.b), (1.0, cfg.c)]


def mutual_distances(cfg: TrapezoidConfig) -> MutualDistances:
    a, b, c = cfg.a, cfg.b, cfg.c
    return MutualDistances(
        r12=a,
        r13=math.sqrt(1.0 + b * b),
        r14=math.sqrt(1.0 + c * c),
        r23=math.sqrt(1.0 + (a - b) ** 2),
        r24=math.sqrt(1.0 + (a - c) ** 2),
        r34=b - c,
    )


def distance_arrays(a, b, c) -> MutualDistances:
    """Vectorized ``mutual_distances`` with no validation (for grids)."""
    a, b, c = np.asarray(a, float), np.asarray(b, float), np.asarray(c, float)
    return MutualDistances(
        r12=a,
        r13=np.sqrt(1.0 + b * b),
        r14=np.sqrt(1.0 + c * c),
        r23=np.sqrt(1.0 + (a - b) ** 2),
        r24=np.sqrt(1.0 + (a - c) ** 2),
        r34=b - c,
    )


def distances_from_points(points: Sequence[Point]) -> MutualDistances:
    q = [np.asarray(p, float) for p in points]

    def d(i, j):
        return float(np.hypot(*(q[i] - q[j])))

    return MutualDistances(d(0, 1), d(0, 2), d(0, 3), d(1, 2), d(1, 3), d(2, 3))


def _signed_area(p: Point, q: Point, r: Point) -> float:
    return 0.5 * ((q[0] - p[0]) * (r[1] - p[1]) - (r[0] - p[0]) * (q[1] - p[1]))


def oriented_areas(points: Sequence[Point]) -> OrientedAreas:
    """Delta_i = (-1)**(i+1) * A_i, A_i the signed area with body i removed."""
    deltas = []
    for i in range(4):
        rest = [points[j] for j in range(4) if j != i]
        sign = 1.0 if i % 2 == 0 else -1.0
        deltas.append(sign * _signed_area(*rest))
    return OrientedAreas(*deltas)


def cayley_menger(r: MutualDistances) -> float:
    """Bordered 5x5 Cayley-Menger determinant, equal to 288 * V**2."""
    s = {k: v * v for k, v in zip(("12", "13", "14", "23", "24", "34"), r.as_tuple())}
    m = np.array(
        [
            [0.0, 1.0, 1.0, 1.0, 1.0],
            [1.0, 0.0, s["12"], s["13"], s["14"]],
            [1.0, s["12"], 0.0, s["23"], s["24"]],
            [1.0, s["13"], s["23"], 0.0, s["34"]],
            [1.0, s["14"], s["24"], s["34"], 0.0],
        ]
    )
    return float(np.linalg.det(m))


def _angle_cos(vertex: Point, p: Point, q: Point) -> float:
    u = np.subtract(p, vertex)
    v = np.subtract(q, vertex)
    return float(np.dot(u, v) / (np.linalg.norm(u) * np.linalg.norm(v)))


def _cross(u, v) -> float:
    return float(u[0] * v[1] - u[1] * v[0])


def classify_points(points: Sequence[Point], eps: float = DEFAULT_EPS_CLASS) -> TrapezoidClass:
    """Label a quadrilateral q1 q2 q3 q4 (taken in cyclic order).

    Sides q1q2 and q3q4 are the candidate bases; if they are not parallel the
    other pair is tried.  Anything with a collinear triple, no parallel pair or
    a non-convex outline is a NonTrapezoid.
    """
    q = [tuple(map(float, p)) for p in points]
    for i in range(4):
        rest = [q[j] for j in range(4) if j != i]
        if abs(_signed_area(*rest)) <= eps:
            return TrapezoidClass.NON_TRAPEZOID
    # convexity: every consecutive turn has the same orientation
    turns = [_signed_area(q[i], q[(i + 1) % 4], q[(i + 2) % 4]) for i in range(4)]
    if not (all(t > 0 for t in turns) or all(t < 0 for t in turns)):
        return TrapezoidClass.NON_TRAPEZOID

    sides = [float(np.hypot(*np.subtract(q[(i + 1) % 4], q[i]))) for i in range(4)]
    dirs = [np.subtract(q[(i + 1) % 4], q[i]) / sides[i] for i in range(4)]
    par_02 = abs(_cross(dirs[0], dirs[2])) <= eps
    par_13 = abs(_cross(dirs[1], dirs[3])) <= eps
    if not (par_02 or par_13):
        return TrapezoidClass.NON_TRAPEZOID

    cosines = [_angle_cos(q[i], q[(i - 1) % 4], q[(i + 1) % 4]) for i in range(4)]
    right = [abs(cv) <= eps for cv in cosines]

    if par_02 and par_13:
        all_equal = max(sides) - min(sides) <= eps
        has_right = any(right)
        if all_equal and has_right:
            return TrapezoidClass.SQUARE
        if all_equal:
            return TrapezoidClass.RHOMBUS
        if has_right:
            return TrapezoidClass.RECTANGLE
        return TrapezoidClass.PARALLELOGRAM

    # bases are sides (0, 2) or (1, 3); legs are the other two
    base_idx = (0, 2) if par_02 else (1, 3)
    leg_idx = (1, 3) if par_02 else (0, 2)
    legs = [sides[i] for i in leg_idx]
    bases = [sides[i] for i in base_idx]
    # base angles: vertices at both ends of each base
    base_vertices = [(base_idx[0], (base_idx[0] + 1) % 4), (base_idx[1], (base_idx[1] + 1) % 4)]
    if abs(legs[0] - legs[1]) <= eps:
        # equal legs and not a parallelogram: isosceles
        if any(abs(leg - base) <= eps for base in bases for leg in legs[:1]):
            return TrapezoidClass.THREE_SIDES_EQUAL
        return TrapezoidClass.ISOSCELES
    if any(right):
        return TrapezoidClass.RIGHT
    for v0, v1 in base_vertices:
        if cosines[v0] > eps and cosines[v1] > eps:
            return TrapezoidClass.ACUTE
    return TrapezoidClass.OBTUSE


def classify(cfg: TrapezoidConfig, eps: float = DEFAULT_EPS_CLASS) -> TrapezoidClass:
    return classify_points(positions_from_config(cfg), eps)
