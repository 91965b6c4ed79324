"""Command line: eval, trace, plot, verify, roots.

Global options come from ``--config FILE`` (key=value lines, ``#`` comments)
and may be overridden by the matching command-line flags.
"""

from __future__ import annotations

import argparse
import configparser
import json
import logging
import math
import sys
from dataclasses import dataclass, fields
from pathlib import Path

from . import dziobeck as dz
from . import families as fam
from .geometry import (
    DEFAULT_EPS_CLASS,
    InvalidConfig,
    TrapezoidConfig,
    classify,
    mutual_distances,
    positions_from_config,
)
from .tracefile import MalformedTrace, atomic_write_text, fmt, read_rows, trace_rows, write_rows

log = logging.getLogger("trapcc")

FAMILIES = ("c1", "c2", "c3", "right", "m2m3", "m2eq1", "surface")


@dataclass
class RunConfig:
    tol_surface: float = dz.SURFACE_TOL
    tol_root: float = 1e-12
    tol_class: float = DEFAULT_EPS_CLASS
    grid_b: int = 40
    grid_c: int = 40
    samples: int = 10000
    seed: int = 20240611
    format: str = "csv"

    def __post_init__(self):
        for name in ("tol_surface", "tol_root", "tol_class"):
            if not getattr(self, name) > 0:
                raise ValueError(f"{name} must be positive")
        if self.grid_b < 2 or self.grid_c < 2:
            raise ValueError("grid resolutions must be >= 2")
        if self.samples < 0:
            raise ValueError("samples must be >= 0")
        if self.format not in ("csv", "json"):
            raise ValueError("format must be csv or json")

    @classmethod
    def from_file(cls, path: str | Path) -> "RunConfig":
        parser = configparser.ConfigParser(inline_comment_prefixes=("#",))
        parser.read_string("[run]\n" + Path(path).read_text())
        known = {f.name: f.type for f in fields(cls)}
        values = {}
        for key, raw in parser["run"].items():
            if key not in known:
                raise ValueError(f"unknown config key {key!r}")
            kind = known[key]
            values[key] = raw.strip() if kind == "str" else (int(raw) if kind == "int" else float(raw))
        return cls(**values)


# ---------------------------------------------------------------- commands --

def _fmt_opt(x) -> str:
    return "nan" if x is None or (isinstance(x, float) and math.isnan(x)) else fmt(x)


def cmd_eval(args, cfg: RunConfig) -> int:
    try:
        tc = TrapezoidConfig(args.a, args.b, args.c)
    except InvalidConfig as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 2
    r = mutual_distances(tc)
    d = dz.dziobeck_d(r)
    report: dict = {
        "a": tc.a, "b": tc.b, "c": tc.c,
        "distances": dict(zip(("r12", "r13", "r14", "r23", "r24", "r34"), r.as_tuple())),
        "D": d,
        "D_tolerance": dz.surface_tolerance(r, cfg.tol_surface),
        "class": classify(tc, cfg.tol_class).value,
        "in_omega": dz.in_omega_tilde(r),
    }
    try:
        lam, spread = dz.lambda_of(r)
        report["lambda"], report["lambda_spread"] = lam, spread
    except ZeroDivisionError as exc:
        report["lambda"], report["lambda_error"] = None, str(exc)
    try:
        m = dz.masses_closed_form(r, tol_surface=cfg.tol_surface)
        report["status"] = "ok"
        report["masses"] = dict(zip(("m1", "m2", "m3", "m4"), m.as_tuple()))
    except (dz.NotOnSurface, dz.NonPositiveMass) as exc:
        report["status"] = type(exc).__name__
        report["detail"] = str(exc)
        # still useful when the input is a rounded surface point
        report["formula_masses"] = dict(zip(("m1", "m2", "m3", "m4"), (1.0, *dz.mass_formulas(r))))
    try:
        o = dz.masses_cartesian_oracle(positions_from_config(tc))
        report["oracle_masses"] = dict(zip(("m1", "m2", "m3", "m4"), o.masses.as_tuple()))
        report["oracle_lambda"] = o.masses.lam
        report["oracle_residual"] = o.residual
    except dz.NoSolution as exc:
        report["oracle_error"] = str(exc)

    if args.json:
        print(json.dumps(report, indent=2))
        return 0
    print(f"config      a={fmt(tc.a)} b={fmt(tc.b)} c={fmt(tc.c)}")
    for k, v in report["distances"].items():
        print(f"{k:<11} {fmt(v)}")
    print(f"D           {fmt(d)}   (tolerance {report['D_tolerance']:.3e})")
    print(f"status      {report['status']}" + (f": {report['detail']}" if "detail" in report else ""))
    if report.get("lambda") is not None:
        print(f"lambda      {fmt(report['lambda'])}   (quotient spread {report['lambda_spread']:.3e})")
    if "masses" in report:
        print("masses      " + " ".join(f"{k}={fmt(v)}" for k, v in report["masses"].items()))
    if "formula_masses" in report:
        print("formulas    " + " ".join(f"{k}={fmt(v)}" for k, v in report["formula_masses"].items())
              + "   (not a central configuration at this tolerance)")
    if "oracle_masses" in report:
        print("oracle      " + " ".join(f"{k}={fmt(v)}" for k, v in report["oracle_masses"].items())
              + f"   residual {report['oracle_residual']:.3e}")
    else:
        print(f"oracle      {report['oracle_error']}")
    print(f"omega       {'member' if report['in_omega'] else 'not a member'}")
    print(f"class       {report['class']}")
    return 0


def _parse_range(text: str | None) -> tuple[float, float] | None:
    if text is None:
        return None
    try:
        lo, hi = (float(x) for x in text.split(","))
    except ValueError:
        raise ValueError(f"range must be LO,HI, got {text!r}") from None
    return lo, hi


def _count(lo: float, hi: float, n: int | None, step: float | None, default: int) -> int:
    if n is not None:
        return max(n, 2)
    if step is not None:
        return max(int(math.ceil(abs(hi - lo) / step)) + 1, 2)
    return default


def build_trace(args, cfg: RunConfig) -> fam.FamilyTrace:
    rng = _parse_range(args.range)
    family = args.family
    if family == "c1":
        lo, hi = rng or (-fam.INV_SQRT3 + 1e-6, fam.INV_SQRT3 - 1e-6)
        return fam.trace_c1(_count(lo, hi, args.n, args.step, 200), lo, hi)
    if family == "c2":
        lo, hi = rng or (-fam.INV_SQRT3, 0.0)
        return fam.trace_c2(_count(lo, hi, args.n, args.step, 200), lo, hi)
    if family == "c3":
        lo, hi = rng or (1e-6, fam.INV_SQRT3 - 1e-6)
        return fam.trace_c3(_count(lo, hi, args.n, args.step, 200), lo, hi)
    if family == "right":
        lo, hi = rng or (fam.INV_SQRT3, 1.0)
        return fam.trace_right(_count(lo, hi, args.n, args.step, 1000), lo, hi)
    if family in ("m2m3", "m2eq1"):
        which = fam.FamilyId.EQUAL_MASS_23 if family == "m2m3" else fam.FamilyId.EQUAL_MASS_12
        return fam.trace_equal_mass_curve(which, step=args.step or 2e-3).trace
    if family == "surface":
        return fam.trace_surface(cfg.grid_b, cfg.grid_c, tol_surface=cfg.tol_surface)
    raise ValueError(family)


def cmd_trace(args, cfg: RunConfig) -> int:
    out_fmt = args.format or cfg.format
    try:
        trace = build_trace(args, cfg)
    except (fam.TraceDiverged, fam.BracketFailure, fam.OutOfRange, InvalidConfig, ValueError) as exc:
        print(f"error: trace failed: {exc}", file=sys.stderr)
        partial = getattr(exc, "partial", None)
        if args.out and partial is not None:
            write_rows(args.out, trace_rows(partial), out_fmt, args.family)
        return 1
    rows = trace_rows(trace, classify=lambda c: classify(c, cfg.tol_class))
    if args.out:
        write_rows(args.out, rows, out_fmt, args.family)
        log.info("wrote %d rows to %s", len(rows), args.out)
    else:
        from .tracefile import rows_to_csv, rows_to_json

        sys.stdout.write(rows_to_csv(rows) if out_fmt == "csv" else rows_to_json(rows, args.family) + "\n")
    return 0


def cmd_plot(args, cfg: RunConfig) -> int:
    from .plotting import render_svg

    try:
        rows = read_rows(args.trace)
    except (OSError, MalformedTrace) as exc:
        print(f"error: {exc}", file=sys.stderr)
        return 1
    atomic_write_text(args.out, render_svg(rows, args.kind, args.title or ""))
    return 0


def cmd_verify(args, cfg: RunConfig) -> int:
    from .verify import CLAIM_IDS, VerifyConfig, reports_to_json, run_all

    vcfg = VerifyConfig(
        samples=cfg.samples if args.samples is None else args.samples,
        seed=cfg.seed if args.seed is None else args.seed,
        tol_surface=cfg.tol_surface,
        tol_root=cfg.tol_root,
    )
    if args.only and set(args.only) - set(CLAIM_IDS):
        print(f"error: unknown claim id; known: {', '.join(CLAIM_IDS)}", file=sys.stderr)
        return 2
    reports = run_all(vcfg, args.only)
    text = reports_to_json(reports) + "\n"
    if args.out:
        atomic_write_text(args.out, text)
    for r in reports:
        print(f"{r.status.upper():<8} {r.claim_id}")
    if not args.out:
        sys.stdout.write(text)
    return 1 if any(r.status == "fail" for r in reports) else 0


def cmd_roots(args, cfg: RunConfig) -> int:
    from .realroots import eliminate_radicals_c1

    res = eliminate_radicals_c1(args.target, tol=min(cfg.tol_root, 1e-12))
    out = {
        "target": res.target,
        "variable": "u = sqrt(3) c",
        "squarings": [s.radical for s in res.steps],
        "raw_degree": res.raw_degree,
        "degree": res.degree,
        "reference_degree": res.expected_degree,
        "sturm_count": res.sturm_count,
        "admissible_count": res.admissible_count,
        "candidate_roots_c": [u / math.sqrt(3) for u in res.candidate_roots_u],
        "roots_c": res.roots_c,
        "filter_residuals": res.all_residuals,
    }
    if args.json:
        print(json.dumps(out, indent=2))
        return 0
    print(f"target             {res.target}")
    print(f"squared out        {', '.join(out['squarings'])}   (variable u = sqrt3 * c)")
    print(f"degree             {res.degree}   (raw {res.raw_degree}, reference {res.expected_degree})")
    print(f"sturm count        {res.sturm_count} distinct roots in -1 < u < 1")
    for c, resid in zip(out["candidate_roots_c"], res.all_residuals):
        tag = "root" if any(abs(c - x) < 1e-12 for x in res.roots_c) else "spurious"
        print(f"  c = {fmt(c):<24} |expression| = {resid:.3e}   {tag}")
    print(f"admissible roots   {res.admissible_count}")
    return 0


# ------------------------------------------------------------------ parser --

def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="trapcc", description=__doc__.splitlines()[0])
    p.add_argument("--config", help="key=value file (tol_surface, tol_root, tol_class, grid_b, grid_c, "
                                    "samples, seed, format)")
    p.add_argument("--log-level", default="WARNING")
    sub = p.add_subparsers(dest="command", required=True)

    e = sub.add_parser("eval", help="evaluate one configuration (a, b, c)")
    e.add_argument("--a", type=float, required=True)
    e.add_argument("--b", type=float, required=True)
    e.add_argument("--c", type=float, required=True)
    e.add_argument("--json", action="store_true")
    e.set_defaults(func=cmd_eval)

    t = sub.add_parser("trace", help="sample a family of configurations")
    t.add_argument("--family", choices=FAMILIES, required=True)
    t.add_argument("--range", help="LO,HI of the family parameter")
    t.add_argument("--step", type=float, help="parameter step (continuation step for m2m3/m2eq1)")
    t.add_argument("--n", type=int, help="number of samples")
    t.add_argument("--out")
    t.add_argument("--format", choices=("csv", "json"))
    t.set_defaults(func=cmd_trace)

    pl = sub.add_parser("plot", help="render a trace file as SVG")
    pl.add_argument("trace")
    pl.add_argument("--kind", choices=("masses", "projection"), default="masses")
    pl.add_argument("--out", required=True)
    pl.add_argument("--title")
    pl.set_defaults(func=cmd_plot)

    v = sub.add_parser("verify", help="run the claim checks")
    v.add_argument("--only", nargs="+", metavar="CLAIM")
    v.add_argument("--seed", type=int)
    v.add_argument("--samples", type=int)
    v.add_argument("--out", help="JSON report path")
    v.set_defaults(func=cmd_verify)

    r = sub.add_parser("roots", help="exact root count for an equal-mass condition on C1")
    r.add_argument("--target", choices=("m2m3-on-c1", "m2eq1-on-c1"), required=True)
    r.add_argument("--json", action="store_true")
    r.set_defaults(func=cmd_roots)
    return p


def _glue_range(argv: list[str]) -> list[str]:
    # "--range -0.5,0" would read as an unknown option; pass it as --range=-0.5,0
    out, i = [], 0
    while i < len(argv):
        if argv[i] == "--range" and i + 1 < len(argv):
            out.append(f"--range={argv[i + 1]}")
            i += 2
        else:
            out.append(argv[i])
            i += 1
    return out


def main(argv: list[str] | None = None) -> int:
    parser = build_parser()
    args = parser.parse_args(_glue_range(list(sys.argv[1:] if argv is None else argv)))
    logging.basicConfig(level=getattr(logging, str(args.log_level).upper(), logging.WARNING),
                        format="%(levelname)s %(name)s: %(message)s")
    try:
        cfg = RunConfig.from_file(args.config) if args.config else RunConfig()
    except (OSError, ValueError) as exc:
        print(f"error: bad config: {exc}", file=sys.stderr)
        return 2
    return args.func(args, cfg)


if __name__ == "__main__":
    raise SystemExit(main())
