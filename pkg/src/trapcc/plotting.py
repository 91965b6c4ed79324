"""SVG rendering of trace files (matplotlib, Agg backend)."""

from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

from . import families as fam  # noqa: E402

KINDS = ("masses", "projection")

_MASS_STYLE = {"m2": ("m2", "-"), "m3": ("m3", "--"), "m4": ("m4", ":")}


def _boundary(ax) -> None:
    """Thin grey outline of the admissible region in the (c, b) plane."""
    cs = np.linspace(-fam.INV_SQRT3, fam.INV_SQRT3, 60)
    ax.plot(cs, np.full_like(cs, fam.INV_SQRT3), color="0.6", lw=0.8)
    c2 = np.linspace(-fam.INV_SQRT3, 0.0, 60)
    ax.plot(c2, c2 + np.sqrt(1 + c2 ** 2), color="0.6", lw=0.8)
    c3 = np.linspace(1e-4, fam.INV_SQRT3 - 1e-4, 60)
    ax.plot(c3, [fam.solve_isosceles_b(float(c)) for c in c3], color="0.6", lw=0.8)


def render_svg(rows: list[dict], kind: str, title: str = "") -> str:
    if kind not in KINDS:
        raise ValueError(f"kind must be one of {KINDS}")
    plt.rcParams["svg.hashsalt"] = "trapcc"
    fig, ax = plt.subplots(figsize=(6, 4.5))
    if kind == "masses":
        if rows:
            x = np.array([r["param"] for r in rows])
            for key, (label, ls) in _MASS_STYLE.items():
                ax.plot(x, [r[key] for r in rows], ls, color="k", label=label)
            ax.legend(frameon=False)
        ax.set_xlabel("parameter")
        ax.set_ylabel("mass (m1 = 1)")
    else:
        _boundary(ax)
        if rows:
            ax.plot([r["c"] for r in rows], [r["b"] for r in rows], ".-" if len(rows) < 50 else "-",
                    color="k", ms=2)
        ax.set_xlabel("c")
        ax.set_ylabel("b")
    if title:
        ax.set_title(title)
    fig.tight_layout()
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata={"Date": None})
    plt.close(fig)
    return buf.getvalue()
