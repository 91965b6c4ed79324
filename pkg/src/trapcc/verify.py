"""Executable claim registry: each claim is a check returning a ClaimReport.

Every check is deterministic given ``VerifyConfig.seed``.  A check that
raises is reported as a failure carrying the exception text, so a run with
absurd tolerances still produces a full report.
"""

from __future__ import annotations

import json
import logging
import math
import time
from dataclasses import asdict, dataclass, field
from typing import Callable

import numpy as np

from . import dziobeck as dz
from . import families as fam
from .geometry import (
    MutualDistances,
    TrapezoidConfig,
    cayley_menger,
    distance_arrays,
    mutual_distances,
    positions_from_config,
)

log = logging.getLogger(__name__)

PASS, FAIL, SKIPPED = "pass", "fail", "skipped"


@dataclass
class VerifyConfig:
    samples: int = 10000
    seed: int = 20240611
    tol_surface: float = dz.SURFACE_TOL
    tol_root: float = 1e-12
    grid: int = 400

    def __post_init__(self):
        if self.samples < 0:
            raise ValueError("samples must be >= 0")
        if not (self.tol_surface > 0 and self.tol_root > 0):
            raise ValueError("tolerances must be positive")
        if self.grid < 2:
            raise ValueError("grid must be >= 2")

    def scaled(self, divisor: int) -> int:
        return 0 if self.samples == 0 else max(1, self.samples // divisor)


@dataclass
class ClaimReport:
    claim_id: str
    location: str
    quote: str  # restated claim
    status: str
    evidence: dict = field(default_factory=dict)
    seed: int = 0

    def to_json(self) -> dict:
        return asdict(self)


@dataclass(frozen=True)
class Claim:
    claim_id: str
    location: str
    statement: str
    check: Callable[[VerifyConfig], tuple[bool, dict]]


def _rng(cfg: VerifyConfig, salt: int) -> np.random.Generator:
    return np.random.default_rng([cfg.seed, salt])


def _fmax(values) -> float:
    values = list(values)
    return float(max(values)) if values else 0.0


# ------------------------------------------------------------------ checks --

def check_lemma_biggest_side(cfg: VerifyConfig) -> tuple[bool, dict]:
    """Convex quadrilaterals with q1, q2 on x=0 and q3, q4 on x=1.

    Among those whose diagonals beat every side and whose longest and
    shortest sides are opposite, the longest side must be r12 or r34.  The
    four vertical arrangements of the proof are checked as identities, and
    the scalar inequality used for two of them on random pairs.
    """
    n = cfg.samples
    rng = _rng(cfg, 1)
    cols: dict[str, list[np.ndarray]] = {k: [] for k in ("a", "y3", "y4", "hyp")}
    n_hyp = 0
    draws = 0
    # hypotheses hold for roughly 1 in 20 draws from this box
    while n_hyp < n and draws < 200 * n:
        m = max(1000, 4 * (n - n_hyp) * 5)
        a_ = rng.uniform(0.5, 2.0, m)
        y4_ = rng.uniform(-1.0, 1.0, m)
        y3_ = y4_ + rng.uniform(0.5, 2.0, m)
        sides_ = np.stack([a_, np.hypot(1.0, y3_ - a_), y3_ - y4_, np.hypot(1.0, y4_)])  # cyclic order
        diag_ok = np.minimum(np.hypot(1.0, y3_), np.hypot(1.0, y4_ - a_)) > sides_.max(axis=0)
        opposite = (sides_.argmax(axis=0) - sides_.argmin(axis=0)) % 4 == 2
        h = diag_ok & opposite
        for k, v in (("a", a_), ("y3", y3_), ("y4", y4_), ("hyp", h)):
            cols[k].append(v)
        n_hyp += int(h.sum())
        draws += m
    a, y3, y4, hyp = (np.concatenate(cols[k]) for k in ("a", "y3", "y4", "hyp"))
    r12 = a
    r14 = np.hypot(1.0, y4)
    r23 = np.hypot(1.0, y3 - a)
    r34 = y3 - y4
    leg_max = np.maximum(r23, r14) > np.maximum(r12, r34)
    counter = int(np.sum(hyp & leg_max))

    # r34 = r12 + s3 sqrt(r23^2 - 1) + s4 sqrt(r14^2 - 1), signs from the arrangement
    s3 = np.where(y3 >= a, 1.0, -1.0)
    s4 = np.where(y4 <= 0.0, 1.0, -1.0)
    ident = np.abs(r34 - (r12 + s3 * np.sqrt(r23 ** 2 - 1) + s4 * np.sqrt(r14 ** 2 - 1)))
    # sqrt(r^2 - 1) loses digits like eps * r^2 / sqrt(r^2 - 1) when a vertex is
    # nearly level with its neighbour; measure the error in units of that bound
    eps = np.finfo(float).eps

    def cond(r):
        return r * r / np.maximum(np.sqrt(np.abs(r * r - 1)), eps)

    bound = 1e-12 + 16 * eps * (cond(r23) + cond(r14) + np.abs(r12) + np.abs(r34))
    ratio = ident / bound
    scen = {}
    for name, (p, q) in zip("abcd", ((1, 1), (1, -1), (-1, 1), (-1, -1))):
        mask = (s3 == p) & (s4 == q)
        scen[name] = {
            "count": int(mask.sum()),
            "max_identity_error": _fmax(ident[mask]),
            "max_error_over_bound": _fmax(ratio[mask]),
        }

    x = rng.uniform(1.0, 5.0, n)
    y = rng.uniform(1.0, 5.0, n)
    lhs = x - np.sqrt(x * x - 1) + np.sqrt(y * y - 1)
    apart = np.abs(x - y) > 1e-9
    ineq_bad = int(np.sum(apart & (np.sign(lhs - y) != np.sign(y - x))))

    ok = counter == 0 and n_hyp >= n and ineq_bad == 0 and _fmax(ratio) <= 1.0
    return ok, {
        "samples": n,
        "draws": int(draws),
        "satisfying_hypotheses": int(hyp.sum()),
        "counterexamples": counter,
        "scenarios": scen,
        "scalar_inequality_violations": ineq_bad,
    }


def _three_sides_equal(rng: np.random.Generator, n: int) -> dict:
    """D against (beta^3 - alpha^3)^2 (alpha^3 - r^3) for both 3-equal layouts."""
    worst = 0.0
    worst_planar = 0.0
    for _ in range(n):
        alpha = float(rng.uniform(0.5, 3.0))
        other = float(rng.uniform(0.1, 3.0))
        if abs(other - alpha) < 1e-3:
            continue
        # isosceles trapezoid with legs alpha and bases alpha, other: Ptolemy
        beta = math.sqrt(alpha * alpha + alpha * other)
        for r in (
            MutualDistances(other, beta, alpha, alpha, beta, alpha),  # r23 = r14 = r34 = alpha
            MutualDistances(alpha, beta, alpha, alpha, beta, other),  # r12 = r23 = r14 = alpha
        ):
            d = dz.dziobeck_d(r)
            fac = (beta ** 3 - alpha ** 3) ** 2 * (alpha ** 3 - other ** 3)
            scale = max(abs(fac), r.scale() ** 9 * 1e-300)
            worst = max(worst, abs(d - fac) / scale)
            worst_planar = max(worst_planar, abs(cayley_menger(r)) / r.scale() ** 6)
    return {"max_relative_error": worst, "max_cayley_menger": worst_planar}


def check_nonrealizable(cfg: VerifyConfig) -> tuple[bool, dict]:
    """Parallelograms (not rhombi) and rectangles (not squares) keep |D| away from 0."""
    n = cfg.samples
    rng = _rng(cfg, 2)
    n_rect = n // 5
    n_par = n - n_rect
    a = rng.uniform(0.2, 5.0, n_par)
    c = rng.uniform(-3.0, 3.0, n_par)
    side = np.hypot(1.0, c)
    # keep well away from rhombi, where D does vanish
    keep = np.abs(a - side) > 0.05 * np.maximum(a, side)
    while not keep.all():
        k = ~keep
        a[k] = rng.uniform(0.2, 5.0, k.sum())
        c[k] = rng.uniform(-3.0, 3.0, k.sum())
        side = np.hypot(1.0, c)
        keep = np.abs(a - side) > 0.05 * np.maximum(a, side)
    r_par = distance_arrays(a, c + a, c)
    ar = rng.uniform(0.2, 5.0, n_rect)
    bad = np.abs(ar - 1.0) <= 0.05 * np.maximum(ar, 1.0)
    while bad.any():
        ar[bad] = rng.uniform(0.2, 5.0, bad.sum())
        bad = np.abs(ar - 1.0) <= 0.05 * np.maximum(ar, 1.0)
    r_rect = distance_arrays(ar, ar, np.zeros_like(ar))

    def ratio(r):
        scale = np.max(np.stack(r.as_tuple()), axis=0)
        return np.abs(dz.dziobeck_d(r)) / scale ** 9

    rp, rr = ratio(r_par), ratio(r_rect)
    min_ratio = float(min(rp.min(initial=np.inf), rr.min(initial=np.inf)))
    tse = _three_sides_equal(rng, max(1, n // 10))
    ok = min_ratio > 1e-6 and tse["max_relative_error"] <= 1e-12 and tse["max_cayley_menger"] <= 1e-9
    return ok, {
        "parallelograms": n_par,
        "rectangles": n_rect,
        "min_abs_D_over_scale9": min_ratio,
        "three_sides_equal": tse,
    }


def check_right_trapezoid_theorem(cfg: VerifyConfig) -> tuple[bool, dict]:
    """Sign pattern of the dD/da split along the right-trapezoid family and
    the signs of D on the two boundary arcs of its region."""
    n = max(cfg.scaled(10), 3)
    bs = np.linspace(fam.INV_SQRT3, 1.0, n + 2)[1:-1]
    viol = {"f1+f4": 0, "f2+f5": 0, "f3+f6": 0, "dD_da": 0}
    worst_fd = 0.0
    worst_d = 0.0
    for b in bs:
        b = float(b)
        a = fam.solve_right_trapezoid_a(b)
        r = mutual_distances(TrapezoidConfig(a, b, 0.0))
        worst_d = max(worst_d, abs(dz.dziobeck_d(r)) / dz.surface_tolerance(r, 1.0))
        g = dz.g_functions(r)
        viol["f1+f4"] += g.f1 + g.f4 >= 0
        viol["f2+f5"] += g.f2 + g.f5 >= 0
        viol["f3+f6"] += g.f3 + g.f6 > 1e-14
        viol["dD_da"] += g.dD_da >= 0
        h = 1e-6
        fd = (fam._d_at(a + h, b, 0.0) - fam._d_at(a - h, b, 0.0)) / (2 * h)
        worst_fd = max(worst_fd, abs(fd - g.dD_da) / max(1.0, abs(fd)))
    upper = [fam._d_at(fam.a2(float(b)), float(b), 0.0) for b in bs]
    lower = [fam._d_at(fam.a1(float(b)), float(b), 0.0) for b in bs]
    pos_a2 = sum(1 for v in upper if v > 0)
    neg_a1 = sum(1 for v in lower if v < 0)
    ok = (
        not any(viol.values())
        and worst_fd < 1e-6
        and pos_a2 == len(bs)
        and neg_a1 == len(bs)
        and worst_d <= cfg.tol_surface
    )
    return ok, {
        "samples": len(bs),
        "sign_violations": {k: int(v) for k, v in viol.items()},
        "max_rel_fd_mismatch": worst_fd,
        "max_abs_D_over_scale3": worst_d,
        "D_positive_on_lower_arc": pos_a2,
        "D_negative_on_upper_arc": neg_a1,
    }


_ROOT_TABLE_B = (0.61283303, 0.69216326, 0.71614387, 0.76874157, 0.79099409, 0.82966657, 0.91953907, 1.0)
_ROOT_TABLE_A = (1.0, 1.04304633, 1.07124596, 1.08484650, 1.09217286, 1.10559255, 1.16459040)


def _d_g3(a, b):
    r = distance_arrays(a, b, 0.0 * np.asarray(a, float))
    return np.array([dz.dziobeck_d(r), dz.g_functions(r).g3])


def _sign_change_cells(x: np.ndarray) -> np.ndarray:
    s = np.sign(x)
    return (
        (s[:-1, :-1] * s[1:, :-1] <= 0)
        | (s[:-1, :-1] * s[:-1, 1:] <= 0)
        | (s[:-1, :-1] * s[1:, 1:] <= 0)
    )


def common_zeros_d_g3(grid: int = 400, cluster: float = 1e-6) -> list[tuple[float, float]]:
    """Grid cells where D and g3 both change sign, polished by 2D Newton."""
    bs = np.linspace(fam.INV_SQRT3, 1.0, grid)
    ts = np.linspace(0.0, 1.0, grid)
    bb, tt = np.meshgrid(bs, ts, indexing="ij")
    lo = (bb ** 2 + 1) / (2 * bb)
    hi = np.sqrt(1 + bb ** 2)
    aa = lo + tt * (hi - lo)
    d, g3 = _d_g3(aa, bb)
    cells = np.argwhere(_sign_change_cells(d) & _sign_change_cells(g3))
    found: list[np.ndarray] = []
    for i, j in cells:
        x = np.array([aa[i, j], bb[i, j]])
        for _ in range(60):
            f = _d_g3(x[0], x[1])
            h = 1e-7
            jac = np.column_stack([
                (_d_g3(x[0] + h, x[1]) - _d_g3(x[0] - h, x[1])) / (2 * h),
                (_d_g3(x[0], x[1] + h) - _d_g3(x[0], x[1] - h)) / (2 * h),
            ])
            try:
                dx = np.linalg.solve(jac, -f)
            except np.linalg.LinAlgError:
                break
            x = x + dx
            if np.linalg.norm(dx) < 1e-15:
                break
        if np.max(np.abs(_d_g3(x[0], x[1]))) > 1e-12:
            continue
        a, b = float(x[0]), float(x[1])
        inside = fam.INV_SQRT3 - 1e-9 < b <= 1.0 + 1e-9 and fam.a2(b) - 1e-9 <= a <= fam.a1(b) + 1e-9
        if inside and all(np.linalg.norm(x - y) > cluster for y in found):
            found.append(x)
    return [(float(p[0]), float(p[1])) for p in found]


def check_d_g3_common_zeros(cfg: VerifyConfig) -> tuple[bool, dict]:
    sols = common_zeros_d_g3(cfg.grid)
    unique_ok = len(sols) == 1 and abs(sols[0][0] - 1) <= 1e-8 and abs(sols[0][1] - 1) <= 1e-8
    rejected = 0
    min_other = math.inf
    origin = None
    for a in _ROOT_TABLE_A:
        for b in _ROOT_TABLE_B:
            v = float(np.max(np.abs(_d_g3(a, b))))
            if a == 1.0 and b == 1.0:
                origin = v
                continue
            min_other = min(min_other, v)
            rejected += v > 1e-4
    total = len(_ROOT_TABLE_A) * len(_ROOT_TABLE_B) - 1
    ok = unique_ok and rejected == total and origin is not None and origin <= 1e-10
    return ok, {
        "grid": cfg.grid,
        "solutions": [list(s) for s in sols],
        "table_pairs_rejected": rejected,
        "table_pairs_other": total,
        "min_residual_other_pairs": min_other,
        "residual_at_1_1": origin,
    }


def _surface_samples(cfg: VerifyConfig):
    return fam.sample_surface(cfg.scaled(10), seed=cfg.seed, tol_surface=cfg.tol_surface)


def check_mass_ordering(cfg: VerifyConfig) -> tuple[bool, dict]:
    """m4 <= m3 <= 1 and m4 <= m2 on surface, right-trapezoid and C1 samples."""
    slack = 1e-10
    groups = {
        "surface": [s.masses for s in _surface_samples(cfg)],
        "right": [s.masses for s in fam.trace_right(max(cfg.scaled(10), 2)).samples],
        "c1": [s.masses for s in fam.trace_c1(max(cfg.scaled(50), 2)).samples],
    }
    bad = {}
    for name, ms in groups.items():
        bad[name] = sum(
            1 for m in ms
            if not (m.m4 <= m.m3 + slack and m.m3 <= 1 + slack and m.m4 <= m.m2 + slack)
        )
    c1_m4 = _fmax(abs(m.m4) for m in groups["c1"])
    ok = not any(bad.values()) and c1_m4 == 0.0
    return ok, {"counts": {k: len(v) for k, v in groups.items()}, "violations": bad, "max_m4_on_c1": c1_m4}


def check_oracle_equivalence(cfg: VerifyConfig) -> tuple[bool, dict]:
    """Closed-form masses against the planar least-squares solve, and the
    agreement of the three multiplier quotients, on seeded surface samples."""
    worst_mass = 0.0
    worst_lam = 0.0
    worst_q = 0.0
    n_dropped = 0
    samples = _surface_samples(cfg)
    for s in samples:
        oracle = dz.masses_cartesian_oracle(positions_from_config(s.config))
        cf = s.masses
        for x, y in zip(cf.as_tuple(), oracle.masses.as_tuple()):
            worst_mass = max(worst_mass, abs(x - y) / max(abs(y), 1e-300) if abs(y) > 1e-8 else abs(x - y))
        worst_lam = max(worst_lam, abs(cf.lam - oracle.masses.lam) / abs(oracle.masses.lam))
        q, dropped = well_conditioned_quotients(s.distances)
        n_dropped += dropped
        if len(q) >= 2:
            worst_q = max(worst_q, (max(q) - min(q)) / abs(cf.lam))
    ok = worst_mass <= 1e-8 and worst_q <= 1e-9 and worst_lam <= 1e-8
    return ok, {
        "samples": len(samples),
        "ill_conditioned_pairs_dropped": n_dropped,
        "max_rel_mass_mismatch": worst_mass,
        "max_rel_lambda_mismatch": worst_lam,
        "max_rel_quotient_spread": worst_q,
    }


def well_conditioned_quotients(r: MutualDistances, min_gap: float = 1e-6) -> tuple[list[float], int]:
    """Slopes through pairs of (s_i, p_i) points whose s-gap is at least
    ``min_gap`` relative to max |s|.

    A slope over an s-gap of size g carries a rounding error of order
    eps / g, so near-vertical pairs say nothing about collinearity.
    """
    sp = dz.sums_products(r)
    pts = [(sp.s1, sp.p1), (sp.s2, sp.p2), (sp.s3, sp.p3)]
    scale = max(abs(p[0]) for p in pts)
    out, dropped = [], 0
    for i, j in ((0, 1), (1, 2), (2, 0)):
        ds = pts[i][0] - pts[j][0]
        if abs(ds) < min_gap * scale:
            dropped += 1
            continue
        out.append((pts[i][1] - pts[j][1]) / ds)
    return out, dropped


def check_right_endpoint_masses(cfg: VerifyConfig) -> tuple[bool, dict]:
    cfg3 = TrapezoidConfig(fam.TWO_OVER_SQRT3, fam.INV_SQRT3, 0.0)
    m = dz.masses_closed_form(mutual_distances(cfg3), tol_surface=cfg.tol_surface)
    s3, s7 = math.sqrt(3), math.sqrt(7)
    m2_exact = 7 * (8 * s3 - 9) * (49 + 8 * s7) / 2511
    m3_exact = 2 * (8 * s3 - 9) / 63
    err = {"m2": abs(m.m2 - m2_exact), "m3": abs(m.m3 - m3_exact), "m4": abs(m.m4)}
    ok = err["m2"] <= 1e-10 and err["m3"] <= 1e-10 and err["m4"] <= 1e-10
    return ok, {"m2": m.m2, "m3": m.m3, "m4": m.m4, "errors": err}


def check_mu2_maximum(cfg: VerifyConfig) -> tuple[bool, dict]:
    c0, mu = fam.maximize_mu2_c1()
    ok = abs(c0 - 0.27448350) <= 1e-6 and abs(mu - 1.0912476) <= 1e-6
    return ok, {"c0": c0, "mu2_max": mu}


def check_c1_sturm_roots(cfg: VerifyConfig) -> tuple[bool, dict]:
    from .realroots import TARGET_M2EQ1, TARGET_M2M3, eliminate_radicals_c1

    expected = {TARGET_M2M3: (-0.351839354, 1e-8), TARGET_M2EQ1: (0.0517595932, 1e-9)}
    ev = {}
    ok = True
    for target, (ref, tol) in expected.items():
        res = eliminate_radicals_c1(target, tol=cfg.tol_root)
        bisect = fam.c1_root(fam.FamilyId.EQUAL_MASS_23 if target == TARGET_M2M3 else fam.FamilyId.EQUAL_MASS_12)
        this_ok = (
            res.admissible_count == 1
            and len(res.roots_c) == 1
            and abs(res.roots_c[0] - ref) <= tol
            and abs(res.roots_c[0] - bisect) <= 1e-10
            and max(res.residuals) <= 1e-10
        )
        ok &= this_ok
        ev[target] = {
            "degree": res.degree,
            "raw_degree": res.raw_degree,
            "reference_degree": res.expected_degree,
            "sturm_count": res.sturm_count,
            "admissible_count": res.admissible_count,
            "roots_c": res.roots_c,
            "bisection_root": bisect,
            "residuals": res.residuals,
        }
    return ok, ev


def check_equal_mass_endpoints(cfg: VerifyConfig) -> tuple[bool, dict]:
    t23 = fam.trace_equal_mass_curve(fam.FamilyId.EQUAL_MASS_23)
    t12 = fam.trace_equal_mass_curve(fam.FamilyId.EQUAL_MASS_12)

    def ends(t):
        s = t.trace.samples
        return [s[0].config.a, s[0].config.b, s[0].config.c], [s[-1].config.a, s[-1].config.b, s[-1].config.c]

    s23, e23 = ends(t23)
    s12, e12 = ends(t12)
    c1 = fam.c1_root(fam.FamilyId.EQUAL_MASS_12)
    q = (1.13102016, 0.896392974, 0.234627188)
    ok = (
        t23.start_boundary == "P3"
        and np.allclose(s23, fam.P3, atol=1e-5, rtol=0)
        and abs(e23[2] + 0.351839354) <= 1e-5
        and t12.start_boundary == "C3"
        and np.allclose(s12, q, atol=1e-5, rtol=0)
        and abs(e12[2] - c1) <= 1e-5
    )
    return ok, {
        "m2m3": {"start": s23, "end": e23, "landing": t23.landing_distance, "points": len(t23.trace.samples)},
        "m2eq1": {"start": s12, "end": e12, "landing": t12.landing_distance, "points": len(t12.trace.samples)},
    }


def check_p2_discontinuity(cfg: VerifyConfig) -> tuple[bool, dict]:
    """m3 near P2 from the closed forms: -> 1 along C2, -> 1/2 along C1."""
    c = -fam.INV_SQRT3 + 1e-4
    rc2, _ = fam.curve_c2(c)
    m3_c2 = dz.mass_formulas(mutual_distances(rc2))[1]
    rc1, _ = fam.curve_c1(c)
    m3_c1 = dz.mass_formulas(mutual_distances(rc1))[1]
    ok = abs(m3_c2 - 1.0) <= 2e-3 and abs(m3_c1 - 0.5) <= 2e-3
    return ok, {"distance": 1e-4, "m3_along_c2": m3_c2, "m3_along_c1": m3_c1, "mu3_closed": fam.mu3_c1(c)}


def check_boundary_sign_m2_m3(cfg: VerifyConfig) -> tuple[bool, dict]:
    """m2 - m3 < 0 on the rhombus arc and > 0 on the isosceles arc."""
    n = max(cfg.scaled(100), 3)
    c2 = [s.masses.m2 - s.masses.m3 for s in fam.trace_c2(n, -fam.INV_SQRT3 + 1e-6, -1e-6).samples]
    c3 = [s.masses.m2 - s.masses.m3 for s in fam.trace_c3(n).samples]
    ok = max(c2) < 0 and min(c3) > 0
    return ok, {"samples": n, "max_on_c2": max(c2), "min_on_c3": min(c3)}


def check_resultant_chain(cfg: VerifyConfig) -> tuple[bool, dict]:
    """Eliminating r13, r23, r24 from (D, g3) on right trapezoids."""
    from .realroots.multipoly import MultiPolynomial, sylvester_resultant

    names = ("a", "b", "r13", "r23", "r24")
    a, b, r13, r23, r24 = MultiPolynomial.gens(names)
    e1 = (r13 ** 3 - a ** 3) * (r23 ** 3 - b ** 3) * (r24 ** 3 - 1) - (a ** 3 - 1) * (r24 ** 3 - b ** 3) * (r13 ** 3 - r23 ** 3)
    e2 = -r24 * a * (r23 ** 3 - b ** 3) + r23 * (a - b) * (r24 ** 3 - b ** 3)
    e3 = r13 ** 2 - (b ** 2 + 1)
    e4 = r23 ** 2 - ((a - b) ** 2 + 1)
    e5 = r24 ** 2 - (a ** 2 + 1)
    s2 = sylvester_resultant(e2, e4, "r23")
    t2, mono2 = sylvester_resultant(s2, e5, "r24").remove_monomial_factor()
    s1 = sylvester_resultant(sylvester_resultant(e1, e3, "r13"), e4, "r23")
    t1, mono1 = sylvester_resultant(s1, e5, "r24").remove_monomial_factor()
    # containment: the square is a common zero of (D, g3), so both vanish there
    at_square = {"a": 1, "b": 1}
    v1 = float(t1.substitute(at_square).terms.get((0,) * 5, 0))
    v2 = float(t2.substitute(at_square).terms.get((0,) * 5, 0))
    ok = (
        t1.total_degree() == 64
        and t2.total_degree() == 16
        and mono1 == (2, 2, 0, 0, 0)
        and mono2 == (0, 4, 0, 0, 0)
        and abs(v1) == 0.0
        and abs(v2) == 0.0
    )
    return ok, {
        "T1_degree": t1.total_degree(),
        "T1_monomial_factor": list(mono1),
        "T2_degree": t2.total_degree(),
        "T2_monomial_factor": list(mono2),
        "T1_at_square": v1,
        "T2_at_square": v2,
    }


REGISTRY: tuple[Claim, ...] = (
    Claim("lemma-biggest-side", "two-parallel-line lemma",
          "The longest side of a convex trapezoid CC lies on one of the two parallel lines.",
          check_lemma_biggest_side),
    Claim("nonrealizable", "parallelogram and 3-sides-equal proposition",
          "No parallelogram CC other than rhombi and the square exists; for 3-sides-equal trapezoids "
          "D factors as (beta^3 - alpha^3)^2 (alpha^3 - r^3).",
          check_nonrealizable),
    Claim("right-trapezoid-theorem", "right trapezoid theorem",
          "On the right-trapezoid curve dD/da < 0 with f1+f4 < 0, f2+f5 < 0, f3+f6 <= 0; "
          "D > 0 on a = a2(b) and D < 0 on a = a1(b).",
          check_right_trapezoid_theorem),
    Claim("d-g3-common-zeros", "right trapezoid resultant argument",
          "(a, b) = (1, 1) is the only common zero of D and g3 in the right-trapezoid region.",
          check_d_g3_common_zeros),
    Claim("resultant-chain", "right trapezoid resultant argument",
          "Eliminating the three diagonal-type distances yields 16 a^2 b^2 T1 and b^4 T2 with "
          "T1, T2 of total degree 64 and 16.",
          check_resultant_chain),
    Claim("right-endpoint-masses", "right trapezoid endpoint",
          "At (2/sqrt3, 1/sqrt3, 0) the masses are m4 = 0, m2 = 7(8 sqrt3 - 9)(49 + 8 sqrt7)/2511, "
          "m3 = (2/63)(8 sqrt3 - 9).",
          check_right_endpoint_masses),
    Claim("mass-ordering", "mass ordering on the admissible region",
          "m4 <= m3 <= m1 = 1 and m4 <= m2 on every trapezoid CC of the region.",
          check_mass_ordering),
    Claim("oracle-equivalence", "mass formulas",
          "The closed-form masses and multiplier solve the planar CC equations.",
          check_oracle_equivalence),
    Claim("mu2-maximum", "restricted boundary C1",
          "Along C1 the mass m2 peaks at c0 = 0.27448350... with value 1.0912476...",
          check_mu2_maximum),
    Claim("c1-sturm-roots", "equal-mass curves",
          "On C1, m2 = m3 holds only at c = -0.351839354... and m2 = 1 only at c = 0.0517595932...",
          check_c1_sturm_roots),
    Claim("equal-mass-endpoints", "equal-mass curves",
          "The m2 = m3 curve joins the square to C1; the m2 = 1 curve joins C3 to C1.",
          check_equal_mass_endpoints),
    Claim("p2-discontinuity", "rhombus family",
          "m3 tends to 1 along C2 and to 1/2 along C1 at the corner P2.",
          check_p2_discontinuity),
    Claim("boundary-sign-m2-m3", "equal-mass curves",
          "m2 - m3 is negative on C2 and positive on C3.",
          check_boundary_sign_m2_m3),
)

CLAIM_IDS = tuple(c.claim_id for c in REGISTRY)


def run_claim(claim: Claim, cfg: VerifyConfig) -> ClaimReport:
    if cfg.samples == 0:
        return ClaimReport(claim.claim_id, claim.location, claim.statement, SKIPPED, {"reason": "samples = 0"}, cfg.seed)
    try:
        ok, evidence = claim.check(cfg)
        status = PASS if ok else FAIL
    except Exception as exc:  # a crash is a failed claim, not a crashed run
        log.warning("claim %s raised %s: %s", claim.claim_id, type(exc).__name__, exc)
        status, evidence = FAIL, {"error": f"{type(exc).__name__}: {exc}"}
    return ClaimReport(claim.claim_id, claim.location, claim.statement, status, _jsonable(evidence), cfg.seed)


def run_all(cfg: VerifyConfig | None = None, only: list[str] | None = None) -> list[ClaimReport]:
    cfg = cfg or VerifyConfig()
    if only:
        unknown = set(only) - set(CLAIM_IDS)
        if unknown:
            raise KeyError(f"unknown claim id(s): {sorted(unknown)}")
    reports = []
    for claim in REGISTRY:
        if only and claim.claim_id not in only:
            continue
        t = time.perf_counter()
        reports.append(run_claim(claim, cfg))
        log.info("%s: %s (%.2fs)", claim.claim_id, reports[-1].status, time.perf_counter() - t)
    return reports


def all_passed(reports: list[ClaimReport]) -> bool:
    return all(r.status == PASS for r in reports)


def _jsonable(obj):
    if isinstance(obj, dict):
        return {str(k): _jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, (np.floating,)):
        return float(obj)
    if isinstance(obj, (np.integer, np.bool_)):
        return obj.item()
    if isinstance(obj, float) and not math.isfinite(obj):
        return repr(obj)
    return obj


def reports_to_json(reports: list[ClaimReport]) -> str:
    return json.dumps([r.to_json() for r in reports], indent=2, sort_keys=True)
