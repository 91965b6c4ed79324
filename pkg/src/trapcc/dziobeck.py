"""Central-configuration algebra in mutual distances.

The factored Dziobeck function ``dziobeck_d``, the multiplier lambda, the
closed-form masses (with m1 = 1) and the ordering predicate of the admissible
set.  ``masses_cartesian_oracle`` solves the Newtonian equations directly in
the plane and shares no code with the closed forms, so it can certify them.
"""

from __future__ import annotations

import math
import statistics
from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .geometry import MutualDistances, Point

EPS_BRANCH = 1e-9
SURFACE_TOL = 1e-11  # relative to scale**3, see surface_tolerance
ORACLE_RESIDUAL = 1e-9


class NotOnSurface(ValueError):
    pass


class NonPositiveMass(ValueError):
    pass


class DegeneratePairing(ZeroDivisionError):
    pass


class AllEqual(ZeroDivisionError):
    pass


class NoSolution(ValueError):
    pass


@dataclass(frozen=True)
class MassSet:
    m1: float
    m2: float
    m3: float
    m4: float
    lam: float

    def as_tuple(self) -> tuple[float, float, float, float]:
        return (self.m1, self.m2, self.m3, self.m4)


@dataclass(frozen=True)
class SumsProducts:
    s1: float
    s2: float
    s3: float
    p1: float
    p2: float
    p3: float


@dataclass(frozen=True)
class GFunctions:
    g1: float
    g2: float
    g3: float
    f1: float
    f2: float
    f3: float
    f4: float
    f5: float
    f6: float
    dD_da: float


@dataclass(frozen=True)
class OracleResult:
    masses: MassSet
    residual: float


def sums_products(r: MutualDistances) -> SumsProducts:
    i12, i13, i14, i23, i24, i34 = (x ** -3 for x in r.as_tuple())
    return SumsProducts(
        s1=i12 + i34, s2=i13 + i24, s3=i14 + i23,
        p1=i12 * i34, p2=i13 * i24, p3=i14 * i23,
    )


def dziobeck_d(r: MutualDistances):
    """Factored Dziobeck function; works elementwise on array fields."""
    c12, c13, c14, c23, c24, c34 = r.cubes()
    return (c13 - c12) * (c23 - c34) * (c24 - c14) - (c12 - c14) * (c24 - c34) * (c13 - c23)


def collinearity_det(r: MutualDistances) -> float:
    """det [[1,1,1],[s1,s2,s3],[p1,p2,p3]]; vanishes exactly when D does."""
    sp = sums_products(r)
    m = np.array([[1.0, 1.0, 1.0], [sp.s1, sp.s2, sp.s3], [sp.p1, sp.p2, sp.p3]])
    return float(np.linalg.det(m))


def surface_tolerance(r: MutualDistances, tol: float = SURFACE_TOL) -> float:
    # D is homogeneous of degree 9; measure it against scale**3 as configured
    return tol * r.scale() ** 3


def on_surface(r: MutualDistances, tol: float = SURFACE_TOL) -> bool:
    return abs(dziobeck_d(r)) <= surface_tolerance(r, tol)


def lambda_quotients(r: MutualDistances, rel: float = 1e-12) -> list[float]:
    """The finite slopes through the points (s_i, p_i).

    A pair of coincident points contributes nothing.  A pair with equal s but
    different p has no finite slope.
    """
    sp = sums_products(r)
    pts = [(sp.s1, sp.p1), (sp.s2, sp.p2), (sp.s3, sp.p3)]
    s_scale = max(abs(p[0]) for p in pts)
    p_scale = max(abs(p[1]) for p in pts)
    out = []
    for i, j in ((0, 1), (1, 2), (2, 0)):
        ds = pts[i][0] - pts[j][0]
        dp = pts[i][1] - pts[j][1]
        if abs(ds) <= rel * s_scale:
            if abs(dp) <= rel * p_scale:
                continue
            raise DegeneratePairing(f"s{i + 1} == s{j + 1} but p{i + 1} != p{j + 1}")
        out.append(dp / ds)
    if not out:
        raise AllEqual("all three (s, p) points coincide")
    return out


def lambda_of(r: MutualDistances) -> tuple[float, float]:
    """(median quotient, max pairwise spread of the quotients)."""
    q = lambda_quotients(r)
    return statistics.median(q), max(q) - min(q)


def _is_rhombus_branch(r: MutualDistances, eps: float) -> bool:
    return abs(r.r12 - r.r14) <= eps and abs(r.r23 - r.r34) <= eps


def in_omega_tilde(r: MutualDistances, eps: float = 1e-12, strict: bool = False) -> bool:
    """r24 >= r13 > r12 >= r23 >= r14 >= r34.

    Non-strict links get ``eps`` slack.  By default r13 > r12 is relaxed to
    r13 >= r12 - eps as well so the restricted-problem boundary (m4 = 0,
    r13 = r12) counts as a member of the closed set; pass ``strict=True`` to
    require r13 - r12 > eps.
    """
    ok = (
        r.r24 >= r.r13 - eps
        and r.r12 >= r.r23 - eps
        and r.r23 >= r.r14 - eps
        and r.r14 >= r.r34 - eps
    )
    if strict:
        return ok and r.r13 - r.r12 > eps
    return ok and r.r13 >= r.r12 - eps


def chain_margins(r: MutualDistances) -> dict[str, float]:
    """Slack of each link in the ordering chain (negative means violated)."""
    return {
        "r24-r13": r.r24 - r.r13,
        "r13-r12": r.r13 - r.r12,
        "r12-r23": r.r12 - r.r23,
        "r23-r14": r.r23 - r.r14,
        "r14-r34": r.r14 - r.r34,
    }


def mass_formulas(r: MutualDistances, eps_branch: float = EPS_BRANCH) -> tuple[float, float, float]:
    """m2, m3, m4 from the closed forms without any membership checks."""
    c12, c13, c14, c23, c24, c34 = r.cubes()
    m2 = c23 * c24 * (c13 - c14) / (c13 * c14 * (c24 - c23))
    if _is_rhombus_branch(r, eps_branch):
        m3 = (r.r34 ** 5 * (c14 - c24) * (c14 - c13)) / (r.r14 ** 5 * (c13 - c34) * (c24 - c34))
    else:
        m3 = c23 * r.r34 ** 2 * (c12 - c14) / (r.r12 ** 2 * c14 * (c23 - c34))
    m4 = c24 * r.r34 ** 2 * (c13 - c12) / (r.r12 ** 2 * c13 * (c24 - c34))
    return m2, m3, m4


def masses_closed_form(
    r: MutualDistances,
    tol_surface: float = SURFACE_TOL,
    eps_branch: float = EPS_BRANCH,
    mass_slack: float = 1e-12,
) -> MassSet:
    """Masses (m1 = 1) of the trapezoid CC with mutual distances ``r``.

    Raises NotOnSurface when |D| is beyond tolerance and NonPositiveMass when
    a mass comes out negative beyond ``mass_slack`` (zero is allowed: the
    restricted problem lives on the boundary).
    """
    d = dziobeck_d(r)
    if abs(d) > surface_tolerance(r, tol_surface):
        raise NotOnSurface(f"|D| = {abs(d):.3e} exceeds tolerance")
    m2, m3, m4 = mass_formulas(r, eps_branch)
    for name, m in (("m2", m2), ("m3", m3), ("m4", m4)):
        if not math.isfinite(m) or m < -mass_slack:
            raise NonPositiveMass(f"{name} = {m!r}")
    try:
        lam, _ = lambda_of(r)
    except (DegeneratePairing, AllEqual):
        lam = math.nan
    return MassSet(1.0, m2, m3, m4, lam)


def _accelerations_matrix(q: np.ndarray) -> np.ndarray:
    """A[k, :, j] = (q_j - q_k) / |q_j - q_k|**3, i.e. acc_k = A[k] @ m."""
    n = len(q)
    a = np.zeros((n, 2, n))
    for k in range(n):
        for j in range(n):
            if j != k:
                d = q[j] - q[k]
                a[k, :, j] = d / np.linalg.norm(d) ** 3
    return a


def masses_cartesian_oracle(
    positions: Sequence[Point], threshold: float = ORACLE_RESIDUAL
) -> OracleResult:
    """Least-squares masses from the planar CC equations, m1 fixed to 1.

    With acc_k the Newtonian acceleration of body k, a CC satisfies
    acc_k + lam * q_k = lam * c for every k.  Differencing against body 1
    removes the centre of mass and leaves six equations linear in
    (m2, m3, m4, lam).  The Newtonian lam is divided by the total mass so it
    is comparable with ``lambda_of``.
    """
    q = np.asarray(positions, float)
    if q.shape != (4, 2):
        raise ValueError("need four planar points")
    acc = _accelerations_matrix(q)
    rows, rhs = [], []
    for k in range(1, 4):
        diff = acc[k] - acc[0]  # 2 x 4 in masses
        for axis in range(2):
            rows.append([diff[axis, 1], diff[axis, 2], diff[axis, 3], q[k, axis] - q[0, axis]])
            rhs.append(-diff[axis, 0])
    mat = np.array(rows)
    vec = np.array(rhs)
    sol, *_ = np.linalg.lstsq(mat, vec, rcond=None)
    residual = float(np.linalg.norm(mat @ sol - vec))
    if residual > threshold:
        raise NoSolution(f"residual {residual:.3e} > {threshold:.1e}")
    m2, m3, m4, lam = (float(x) for x in sol)
    return OracleResult(MassSet(1.0, m2, m3, m4, lam / (1.0 + m2 + m3 + m4)), residual)


def g_functions(r: MutualDistances) -> GFunctions:
    """The f_i split of dD/da and the auxiliary g1, g2, g3 (right trapezoids).

    dD/da = 3 * (f1 + ... + f6) holds for c = 0, where d(r23)/da equals
    (r12 - r34) / r23.
    """
    r12, r13, r14, r23, r24, r34 = r.as_tuple()
    c12, c13, c14, c23, c24, c34 = r.cubes()
    f1 = -r12 ** 2 * (c24 - c14) * (c23 - c34)
    f2 = -r12 ** 2 * (c13 - c23) * (c24 - c34)
    f3 = r23 * (r12 - r34) * (c13 - c12) * (c24 - c14)
    f4 = r23 * (r12 - r34) * (c12 - c14) * (c24 - c34)
    f5 = r12 * r24 * (c13 - c12) * (c23 - c34)
    f6 = -r12 * r24 * (c12 - c14) * (c13 - c23)
    g1 = -r34 * r23 * (c13 - c12) - r12 * (r12 - r23) * (r12 * r23 * (r12 + r23) + c13)
    g2 = -r12 * (r24 - r12) * (c14 + r12 ** 2 * r24 + r12 * r24 ** 2)
    g3 = -r24 * r12 * (c23 - c34) + r23 * (r12 - r34) * (c24 - c34)
    return GFunctions(g1, g2, g3, f1, f2, f3, f4, f5, f6, 3.0 * (f1 + f2 + f3 + f4 + f5 + f6))
