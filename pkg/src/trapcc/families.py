"""One-parameter families on the surface of four-body central configurations.

The surface is the zero set of D(a, b, c) restricted by the ordering chain.
Its boundary is made of three curves, all known in closed form or via a
scalar root solve:

* C1  (2/sqrt3, 1/sqrt3, c): m1, m2, m3 on an equilateral triangle, m4 = 0
* C2  rhombus family, m1 = m3 = 1, m2 = m4
* C3  isosceles family a = b + c, m1 = m2 = 1, m3 = m4

plus the corner points P1, P2, P3 (P3 is the square).  The right-trapezoid
family c = 0 and the curves m2 = m3 and m2 = 1 cross the interior.
"""

from __future__ import annotations

import enum
import logging
import math
from dataclasses import dataclass, field
from typing import Callable

import numpy as np
from scipy.optimize import brentq, minimize_scalar

from . import dziobeck as dz
from .geometry import (
    MutualDistances,
    TrapezoidClass,
    TrapezoidConfig,
    classify,
    mutual_distances,
)

log = logging.getLogger(__name__)

SQRT3 = math.sqrt(3.0)
INV_SQRT3 = 1.0 / SQRT3
TWO_OVER_SQRT3 = 2.0 / SQRT3

P1 = (TWO_OVER_SQRT3, INV_SQRT3, INV_SQRT3)
P2 = (TWO_OVER_SQRT3, INV_SQRT3, -INV_SQRT3)
P3 = (1.0, 1.0, 0.0)

ROOT_TOL = 1e-12


class FamilyId(str, enum.Enum):
    C1 = "C1"
    C2 = "C2"
    C3 = "C3"
    RIGHT = "RightTrapezoid"
    EQUAL_MASS_23 = "EqualMass23"
    EQUAL_MASS_12 = "EqualMass12"
    SURFACE = "SurfaceGrid"


class OutOfRange(ValueError):
    pass


class BracketFailure(RuntimeError):
    pass


class TraceDiverged(RuntimeError):
    partial: "FamilyTrace | None" = None  # points traced before the failure


@dataclass(frozen=True)
class Sample:
    param: float
    config: TrapezoidConfig
    distances: MutualDistances
    masses: dz.MassSet
    shape: TrapezoidClass


@dataclass
class FamilyTrace:
    family: FamilyId
    samples: list[Sample] = field(default_factory=list)

    def params(self) -> np.ndarray:
        return np.array([s.param for s in self.samples])

    def column(self, name: str) -> np.ndarray:
        if name in ("a", "b", "c"):
            return np.array([getattr(s.config, name) for s in self.samples])
        if name in ("m1", "m2", "m3", "m4", "lam"):
            return np.array([getattr(s.masses, name) for s in self.samples])
        return np.array([getattr(s.distances, name) for s in self.samples])


def _root(fn: Callable[[float], float], lo: float, hi: float, tol: float = ROOT_TOL) -> float:
    return brentq(fn, lo, hi, xtol=min(tol, 1e-14), rtol=4 * np.finfo(float).eps, maxiter=200)


def _raw_distances(a: float, b: float, c: float) -> MutualDistances:
    # no validation: finite-difference stencils may step just outside a >= 1
    return MutualDistances(
        r12=a,
        r13=math.sqrt(1.0 + b * b),
        r14=math.sqrt(1.0 + c * c),
        r23=math.sqrt(1.0 + (a - b) ** 2),
        r24=math.sqrt(1.0 + (a - c) ** 2),
        r34=b - c,
    )


def _d_at(a: float, b: float, c: float) -> float:
    return dz.dziobeck_d(_raw_distances(a, b, c))


def make_sample(param: float, a: float, b: float, c: float, masses: dz.MassSet | None = None,
                eps_class: float = 1e-9) -> Sample:
    cfg = TrapezoidConfig(a, b, c)
    r = mutual_distances(cfg)
    if masses is None:
        m2, m3, m4 = dz.mass_formulas(r)
        try:
            lam, _ = dz.lambda_of(r)
        except ZeroDivisionError:
            lam = math.nan
        masses = dz.MassSet(1.0, m2, m3, m4, lam)
    return Sample(param, cfg, r, masses, classify(cfg, eps_class))


def _lam(cfg: TrapezoidConfig) -> float:
    try:
        return dz.lambda_of(mutual_distances(cfg))[0]
    except ZeroDivisionError:
        return math.nan


# ---------------------------------------------------------------- C1 -------

def mu2_c1(c: float) -> float:
    k1 = math.sqrt(c * c + 1.0)
    k2 = math.sqrt(3.0 * c * c - 4.0 * SQRT3 * c + 7.0)
    return (8.0 * SQRT3 - 9.0 * k1 ** 3) * k2 ** 3 / (9.0 * k1 ** 3 * (k2 ** 3 - 8.0))


def mu3_c1(c: float) -> float:
    k1 = math.sqrt(c * c + 1.0)
    k2 = math.sqrt(3.0 * c * c - 4.0 * SQRT3 * c + 7.0)
    return (2.0 * (SQRT3 - 3.0 * c) ** 2 * (8.0 * SQRT3 - 9.0 * k1 ** 3)
            / (27.0 * (SQRT3 * c + 1.0) * k1 ** 3 * k2 ** 2))


def curve_c1(c: float) -> tuple[TrapezoidConfig, dz.MassSet]:
    if not (-INV_SQRT3 < c < INV_SQRT3):
        raise OutOfRange(f"C1 needs c in (-1/sqrt3, 1/sqrt3), got {c!r}")
    cfg = TrapezoidConfig(TWO_OVER_SQRT3, INV_SQRT3, c)
    return cfg, dz.MassSet(1.0, mu2_c1(c), mu3_c1(c), 0.0, _lam(cfg))


def maximize_mu2_c1() -> tuple[float, float]:
    """Location and value of the interior maximum of m2 along C1."""
    res = minimize_scalar(lambda c: -mu2_c1(c), bounds=(-0.5, 0.55), method="bounded",
                          options={"xatol": 1e-12})
    # polish: the maximum is where the derivative changes sign
    h = 1e-6

    def slope(c):
        return (mu2_c1(c + h) - mu2_c1(c - h)) / (2 * h)

    c0 = _root(slope, res.x - 1e-3, res.x + 1e-3)
    return c0, mu2_c1(c0)


# ---------------------------------------------------------------- C2 -------

def mu_r(c: float) -> float:
    k = math.sqrt(1.0 + c * c)
    t24 = ((c - k) ** 2 + 1.0) ** 1.5
    t13 = ((c + k) ** 2 + 1.0) ** 1.5
    return -t24 * (t13 - k ** 3) / ((k ** 3 - t24) * t13)


def curve_c2(c: float) -> tuple[TrapezoidConfig, dz.MassSet]:
    if not (-INV_SQRT3 - 1e-15 <= c <= 0.0):
        raise OutOfRange(f"C2 needs c in [-1/sqrt3, 0], got {c!r}")
    k = math.sqrt(1.0 + c * c)
    cfg = TrapezoidConfig(max(k, 1.0), c + k, c)
    m = mu_r(c)
    return cfg, dz.MassSet(1.0, m, 1.0, m, _lam(cfg))


# ---------------------------------------------------------------- C3 -------

def isosceles_f(b, c):
    """D restricted to a = b + c; its zero set in (b, c) is the isosceles family."""
    k3 = (c * c + 1.0) ** 1.5
    q3 = (b * b + 1.0) ** 1.5
    return ((b + c) ** 3 - k3) * (q3 - (b - c) ** 3) - (q3 - (b + c) ** 3) * (k3 - (b - c) ** 3)


def isosceles_bracket(c: float) -> tuple[float, float]:
    """b-range where a = b + c keeps r12 >= r23 and r14 >= r34."""
    k = math.sqrt(1.0 + c * c)
    return k - c, k + c


def solve_isosceles_b(c: float) -> float:
    if not (0.0 < c < INV_SQRT3):
        raise OutOfRange(f"C3 needs c in (0, 1/sqrt3), got {c!r}")
    lo, hi = isosceles_bracket(c)
    flo, fhi = isosceles_f(lo, c), isosceles_f(hi, c)
    if flo == 0.0:
        return lo
    if fhi == 0.0:
        return hi
    if flo * fhi > 0:
        raise BracketFailure(f"no sign change of f on [{lo}, {hi}] at c={c}")
    return _root(lambda b: isosceles_f(b, c), lo, hi)


def curve_c3(c: float) -> tuple[TrapezoidConfig, dz.MassSet]:
    b = solve_isosceles_b(c)
    cfg = TrapezoidConfig(b + c, b, c)
    m2, m3, m4 = dz.mass_formulas(mutual_distances(cfg))
    return cfg, dz.MassSet(1.0, m2, m3, m4, _lam(cfg))


# ------------------------------------------------------ right trapezoid ----

def a1(b: float) -> float:
    return math.sqrt(1.0 + b * b)


def a2(b: float) -> float:
    return (b * b + 1.0) / (2.0 * b)


def solve_right_trapezoid_a(b: float) -> float:
    """The a with D(a, b, 0) = 0 on [a2(b), a1(b)); D decreases across it."""
    if not (INV_SQRT3 <= b <= 1.0):
        raise OutOfRange(f"right trapezoid needs b in (1/sqrt3, 1], got {b!r}")
    lo, hi = a2(b), a1(b)
    if hi - lo <= 1e-15:
        return 0.5 * (lo + hi)
    dlo, dhi = _d_at(lo, b, 0.0), _d_at(hi, b, 0.0)
    if abs(dlo) <= 1e-15:
        return lo
    if dlo * dhi > 0:
        raise BracketFailure(f"D does not change sign on [{lo}, {hi}] at b={b}")
    return _root(lambda a: _d_at(a, b, 0.0), lo, hi)


# -------------------------------------------------------- whole surface ----

def admissible_a_intervals(b: float, c: float) -> list[tuple[float, float]]:
    """Closed a-intervals compatible with the ordering chain at fixed (b, c)."""
    if b <= c or b <= 0.0:
        return []
    if math.sqrt(1.0 + c * c) < b - c:  # r14 >= r34 does not involve a
        return []
    lo = max(1.0, a2(b), b + c)  # a >= 1, r12 >= r23, r24 >= r13
    hi = a1(b)  # r13 >= r12
    # r23 >= r14  <=>  |a - b| >= |c|
    pieces = [(lo, min(hi, b - abs(c))), (max(lo, b + abs(c)), hi)]
    out = []
    for p, q in pieces:
        if q >= p - 1e-15:
            out.append((p, max(p, q)))
    if len(out) == 2 and out[0][1] >= out[1][0]:
        out = [(out[0][0], out[1][1])]
    return out


def solve_surface_a(b: float, c: float, n_scan: int = 48, tol_surface: float = dz.SURFACE_TOL) -> list[float]:
    """All a with D(a, b, c) = 0 and (a, b, c) in the closed admissible set."""
    roots: list[float] = []

    def add(x):
        if all(abs(x - y) > 1e-10 for y in roots):
            roots.append(x)

    for lo, hi in admissible_a_intervals(b, c):
        tol = tol_surface * max(hi, 1.0) ** 3
        if hi - lo <= 1e-14:
            if abs(_d_at(lo, b, c)) <= tol:
                add(lo)
            continue
        xs = np.linspace(lo, hi, n_scan + 1)
        ds = [_d_at(x, b, c) for x in xs]
        for x, d in ((xs[0], ds[0]), (xs[-1], ds[-1])):
            if abs(d) <= tol:
                add(float(x))
        for i in range(n_scan):
            d0, d1 = ds[i], ds[i + 1]
            if abs(d0) <= tol or abs(d1) <= tol:
                continue
            if d0 * d1 < 0:
                add(_root(lambda a: _d_at(a, b, c), xs[i], xs[i + 1]))
    roots.sort()
    return [x for x in roots if dz.in_omega_tilde(mutual_distances(TrapezoidConfig(x, b, c)), 1e-10)]


# --------------------------------------------------------------- traces ----

def _linspace_open(lo: float, hi: float, n: int) -> np.ndarray:
    return np.linspace(lo, hi, n)


def trace_c1(n: int = 200, lo: float = -INV_SQRT3 + 1e-6, hi: float = INV_SQRT3 - 1e-6) -> FamilyTrace:
    tr = FamilyTrace(FamilyId.C1)
    for c in _linspace_open(lo, hi, n):
        cfg, m = curve_c1(float(c))
        tr.samples.append(make_sample(float(c), cfg.a, cfg.b, cfg.c, m))
    return tr


def trace_c2(n: int = 200, lo: float = -INV_SQRT3, hi: float = 0.0) -> FamilyTrace:
    tr = FamilyTrace(FamilyId.C2)
    for c in _linspace_open(lo, hi, n):
        cfg, m = curve_c2(float(c))
        tr.samples.append(make_sample(float(c), cfg.a, cfg.b, cfg.c, m))
    return tr


def trace_c3(n: int = 200, lo: float = 1e-6, hi: float = INV_SQRT3 - 1e-6) -> FamilyTrace:
    tr = FamilyTrace(FamilyId.C3)
    for c in _linspace_open(lo, hi, n):
        cfg, m = curve_c3(float(c))
        tr.samples.append(make_sample(float(c), cfg.a, cfg.b, cfg.c, m))
    return tr


def trace_right(n: int = 1000, lo: float = INV_SQRT3, hi: float = 1.0) -> FamilyTrace:
    """Right trapezoids c = 0, sampled from b = hi down to b = lo."""
    tr = FamilyTrace(FamilyId.RIGHT)
    for b in np.linspace(hi, lo, n):
        b = float(b)
        a = solve_right_trapezoid_a(b)
        tr.samples.append(make_sample(b, a, b, 0.0))
    return tr


def trace_surface(n_b: int = 40, n_c: int = 40, tol_surface: float = dz.SURFACE_TOL) -> FamilyTrace:
    """Grid over (b, c); every admissible root a becomes a sample."""
    tr = FamilyTrace(FamilyId.SURFACE)
    k = 0
    for b in np.linspace(INV_SQRT3, 1.0, n_b):
        for c in np.linspace(-INV_SQRT3, INV_SQRT3, n_c):
            for a in solve_surface_a(float(b), float(c), tol_surface=tol_surface):
                try:
                    tr.samples.append(make_sample(float(k), a, float(b), float(c)))
                except ZeroDivisionError:
                    # corner of the region: closed forms are 0/0 there
                    log.debug("surface grid: skipped degenerate point b=%r c=%r", b, c)
                    continue
                k += 1
    return tr


def sample_surface(n: int, seed: int = 0, tol_surface: float = dz.SURFACE_TOL,
                   max_draws: int | None = None) -> list[Sample]:
    """``n`` surface points from uniform (b, c) draws, seeded.

    Draws whose vertical line misses the admissible part of the surface are
    discarded; masses come from the closed forms at ``tol_surface``.
    """
    rng = np.random.default_rng(seed)
    out: list[Sample] = []
    draws = 0
    limit = max_draws if max_draws is not None else 50 * max(n, 1)
    while len(out) < n and draws < limit:
        draws += 1
        b = float(rng.uniform(INV_SQRT3, 1.0))
        c = float(rng.uniform(-INV_SQRT3, INV_SQRT3))
        for a in solve_surface_a(b, c, tol_surface=tol_surface):
            cfg = TrapezoidConfig(a, b, c)
            masses = dz.masses_closed_form(mutual_distances(cfg), tol_surface=tol_surface)
            out.append(make_sample(float(len(out)), a, b, c, masses))
            if len(out) == n:
                break
    if len(out) < n:
        raise BracketFailure(f"only {len(out)} of {n} surface samples after {draws} draws")
    return out


# ------------------------------------------------------ equal-mass curves ---

def _h_equal_23(a: float, b: float, c: float) -> float:
    m2, m3, _ = dz.mass_formulas(_raw_distances(a, b, c))
    return m2 - m3


def _h_equal_12(a: float, b: float, c: float) -> float:
    m2, _, _ = dz.mass_formulas(_raw_distances(a, b, c))
    return m2 - 1.0


EQUAL_MASS_TARGETS = {
    FamilyId.EQUAL_MASS_23: _h_equal_23,
    FamilyId.EQUAL_MASS_12: _h_equal_12,
}


def surface_a_near(b: float, c: float, a_guess: float) -> float:
    """Newton on a -> D(a, b, c) from a nearby surface point.

    dD/da stays well away from zero on the surface, so a handful of steps
    reach full precision; falls back to the bracketing solve otherwise.
    """
    a = a_guess
    for _ in range(30):
        d = _d_at(a, b, c)
        h = 1e-7 * max(1.0, abs(a))
        slope = (_d_at(a + h, b, c) - _d_at(a - h, b, c)) / (2 * h)
        if slope == 0.0:
            break
        step = d / slope
        a -= step
        if abs(step) <= 1e-15 * max(1.0, abs(a)):
            return a
        if abs(a - a_guess) > 0.05:
            break
    roots = solve_surface_a(b, c)
    if not roots:
        raise TraceDiverged(f"no surface point above (b, c) = ({b}, {c})")
    return min(roots, key=lambda x: abs(x - a_guess))


def _margins(x: np.ndarray) -> dict[str, float]:
    return dz.chain_margins(_raw_distances(*x))


def c1_root(which: FamilyId) -> float:
    """Parameter on C1 where the equal-mass curve ends (scalar bracketing)."""
    eps = 1e-9
    if which is FamilyId.EQUAL_MASS_23:
        return _root(lambda c: mu2_c1(c) - mu3_c1(c), -INV_SQRT3 + eps, INV_SQRT3 - eps)
    if which is FamilyId.EQUAL_MASS_12:
        c0, _ = maximize_mu2_c1()
        return _root(lambda c: mu2_c1(c) - 1.0, -INV_SQRT3 + eps, c0)
    raise ValueError(which)


class _PlaneContinuation:
    """Pseudo-arclength tracing of {H(b, c) = 0}, H = h(a(b, c), b, c)."""

    def __init__(self, h, step=2e-3, max_step=1e-2, min_step=1e-7, tol_h=1e-10, land_tol=1e-8,
                 max_points=20000):
        self.h = h
        self.step = step
        self.max_step = max_step
        self.min_step = min_step
        self.tol_h = tol_h
        self.land_tol = land_tol
        self.max_points = max_points
        self.a_last = TWO_OVER_SQRT3

    def lift(self, y: np.ndarray) -> np.ndarray:
        b, c = float(y[0]), float(y[1])
        return np.array([surface_a_near(b, c, self.a_last), b, c])

    def value(self, y: np.ndarray) -> float:
        x = self.lift(y)
        return self.h(*x)

    def grad(self, y: np.ndarray, fd: float) -> np.ndarray:
        g = np.empty(2)
        for i in range(2):
            e = np.zeros(2)
            e[i] = fd
            g[i] = (self.value(y + e) - self.value(y - e)) / (2 * fd)
        return g

    def tangent(self, y: np.ndarray, prev: np.ndarray | None, fd: float) -> np.ndarray:
        g = self.grad(y, fd)
        t = np.array([-g[1], g[0]])
        t /= np.linalg.norm(t)
        if prev is not None and np.dot(t, prev) < 0:
            t = -t
        return t

    def correct(self, y_pred: np.ndarray, t: np.ndarray, fd: float) -> np.ndarray | None:
        y = y_pred.copy()
        for it in range(20):
            try:
                hv = self.value(y)
            except (ValueError, ZeroDivisionError, TraceDiverged):
                return None
            if abs(hv) <= self.tol_h and it > 0:
                return y
            g = self.grad(y, fd)
            jac = np.array([g, t])
            rhs = -np.array([hv, float(np.dot(t, y - y_pred))])
            try:
                dy = np.linalg.solve(jac, rhs)
            except np.linalg.LinAlgError:
                return None
            y = y + dy
            if np.linalg.norm(dy) <= 1e-14 and abs(hv) <= 10 * self.tol_h:
                return y
        return None

    def run(self, start: np.ndarray) -> list[np.ndarray]:
        """Trace from ``start`` (on C1) into the surface; returns lifted points."""
        y = start[1:].copy()
        self.a_last = float(start[0])
        fd = 1e-7
        t = self.tangent(y, None, fd)
        if t[0] < 0:  # b grows away from C1 (b = 1/sqrt3)
            t = -t
        pts = [start.copy()]
        step = self.step
        while len(pts) < self.max_points:
            # level sets can fan out of a corner point: keep steps well below
            # the distance to the nearest boundary corner
            corner = min(np.linalg.norm(pts[-1] - np.array(p)) for p in (P1, P2, P3))
            step = min(step, 0.2 * corner)
            fd = min(1e-7, 1e-3 * corner)
            y_new = self.correct(y + step * t, t, fd)
            ok = False
            if y_new is not None:
                x_new = self.lift(y_new)
                ok = min(_margins(x_new).values()) >= -self.land_tol
            if not ok:
                step *= 0.5
                if step < self.min_step:
                    break
                continue
            pts.append(x_new)
            self.a_last = float(x_new[0])
            y = y_new
            t = self.tangent(y, t, fd)
            step = min(step * 1.5, self.max_step)
        return pts


def _project_to_boundary(x: np.ndarray, corner_tol: float = 1e-4) -> tuple[np.ndarray, str]:
    for name, p in (("P3", P3), ("P1", P1), ("P2", P2)):
        if np.linalg.norm(x - np.array(p)) < corner_tol:
            return np.array(p), name
    m = _margins(x)
    worst = min(("r13-r12", "r23-r14", "r14-r34", "r12-r23"), key=lambda k: m[k])
    c = float(x[2])
    if worst == "r13-r12":
        return np.array([TWO_OVER_SQRT3, INV_SQRT3, c]), "C1"
    if worst == "r23-r14" and 0.0 < c < INV_SQRT3:
        b = solve_isosceles_b(c)
        return np.array([b + c, b, c]), "C3"
    if -INV_SQRT3 <= c <= 0.0:
        k = math.sqrt(1 + c * c)
        return np.array([k, c + k, c]), "C2"
    return x, "interior"


@dataclass
class EqualMassTrace:
    trace: FamilyTrace
    start_boundary: str
    end_boundary: str
    landing_distance: float
    raw_end: tuple[float, float, float]


def trace_equal_mass_curve(which: FamilyId, step: float = 2e-3) -> EqualMassTrace:
    """Follow the zero set of h on the surface from its end on C1 until the
    ordering chain becomes an equality, then land on the analytic boundary.

    h is m2 - m3 (EqualMass23) or m2 - 1 (EqualMass12).  The returned samples
    run from the far boundary to C1; ``param`` is arc length in (a, b, c).
    """
    if which not in EQUAL_MASS_TARGETS:
        raise ValueError(f"not an equal-mass family: {which}")
    h = EQUAL_MASS_TARGETS[which]
    start = np.array([TWO_OVER_SQRT3, INV_SQRT3, c1_root(which)])
    pts = _PlaneContinuation(h, step=step).run(start)
    if len(pts) < 3:
        raise TraceDiverged("continuation stalled at its first step")
    end, where = _project_to_boundary(pts[-1])
    dist = float(np.linalg.norm(end - pts[-1]))
    if where == "interior" or dist > 1e-4:
        exc = TraceDiverged(f"trace stopped at {pts[-1]} away from the boundary ({where}, {dist:.2e})")
        partial = FamilyTrace(which)
        for i, x in enumerate(pts):
            try:
                partial.samples.append(make_sample(float(i), *(float(v) for v in x)))
            except InvalidConfig:
                break
        exc.partial = partial
        raise exc
    log.info("%s: %d points, landed on %s at distance %.2e", which.value, len(pts), where, dist)
    path = pts[::-1]
    if dist > 0.0:
        path[0] = end
    tr = FamilyTrace(which)
    s = 0.0
    for i, x in enumerate(path):
        if i:
            s += float(np.linalg.norm(x - path[i - 1]))
        a, b, c = (float(v) for v in x)
        if i == 0 and where == "P3":
            sq = TrapezoidConfig(1.0, 1.0, 0.0)
            tr.samples.append(make_sample(s, a, b, c, dz.MassSet(1.0, 1.0, 1.0, 1.0, _lam(sq))))
        else:
            tr.samples.append(make_sample(s, a, b, c))
    return EqualMassTrace(tr, where, "C1", dist, tuple(float(v) for v in pts[-1]))
