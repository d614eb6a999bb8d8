"""Static SVG figures: coverage curves and confidence bands.

Output is byte-reproducible: the SVG id salt is fixed and the creation
date is omitted.
"""
from __future__ import annotations

import io

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

_RC = {"svg.hashsalt": "fdboot", "svg.fonttype": "path", "path.simplify": False}
_META = {"Date": None, "Creator": "fdboot"}


def _to_svg(fig) -> str:
    buf = io.StringIO()
    fig.savefig(buf, format="svg", metadata=_META)
    plt.close(fig)
    return buf.getvalue()


def coverage_svg(table, title=None) -> str:
    """Empirical against nominal coverage, one line per method, with the diagonal."""
    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(5, 5))
        styles = {"single": dict(color="tab:red", marker="o"),
                  "double": dict(color="tab:blue", marker="s", linestyle="--")}
        lo, hi = 1.0, 0.0
        for method, style in styles.items():
            rows = sorted((r for r in table if r.method == method), key=lambda r: r.nominal)
            if not rows:
                continue
            x = [r.nominal for r in rows]
            ax.plot(x, [r.empirical for r in rows], label=f"{method} bootstrap", **style)
            lo, hi = min(lo, x[0]), max(hi, x[-1])
        if hi > lo:
            ax.plot([lo, hi], [lo, hi], color="grey", linewidth=0.8, label="nominal")
        ax.set_xlabel("nominal coverage")
        ax.set_ylabel("empirical coverage")
        ax.set_ylim(0, 1.02)
        if title:
            ax.set_title(title)
        ax.legend(loc="lower right")
        fig.tight_layout()
        return _to_svg(fig)


def band_svg(sample, bands: dict, title=None, ylabel="value") -> str:
    """Sample curves (thin grey), estimate (black), single band (red) and double band (blue, dotted)."""
    t = sample.grid.points
    with matplotlib.rc_context(_RC):
        fig, ax = plt.subplots(figsize=(7, 4.5))
        for row in sample.values:
            ax.plot(t, row, color="0.8", linewidth=0.4)
        first = next(iter(bands.values()))
        ax.plot(t, first.estimate.values, color="black", linewidth=1.5, label="estimate")
        styles = {"single": dict(color="tab:red", linestyle="-"),
                  "double": dict(color="tab:blue", linestyle=":")}
        for name, band in bands.items():
            st = styles.get(name, {})
            ax.plot(t, band.lower.values, label=f"{name} {band.level:.0%} band", **st)
            ax.plot(t, band.upper.values, **st)
        ax.set_xlabel("t")
        ax.set_ylabel(ylabel)
        if title:
            ax.set_title(title)
        ax.legend(loc="best", fontsize="small")
        fig.tight_layout()
        return _to_svg(fig)
