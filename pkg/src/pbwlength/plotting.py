"""Figures for the CLI report paths.  Headless (Agg); each call writes one file."""
from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

STYLE = {
    "figure.figsize": (5.5, 3.6),
    "font.size": 9,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 150,
}


def rank_growth(ranks, n: int, path, title: str | None = None):
    """Step plot of r_i against i, with n^2 and the 2n-3 / 2n-2 / Paz markers."""
    c = len(ranks) - 2
    paz = -(-(n * n + 2) // 3)
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        levels = list(range(len(ranks)))
        ax.step(levels, ranks, where="post", color="k", lw=1.5, label="$r_i$")
        ax.plot(levels, ranks, "o", color="k", ms=3)
        ax.axhline(n * n, color="0.6", ls=":", lw=1, label="$n^2$")
        for x, style, lab in ((2 * n - 3, "--", "2n-3"), (2 * n - 2, "-", "2n-2"), (paz, "-.", "Paz")):
            ax.axvline(x, color="tab:blue", ls=style, lw=0.8, alpha=0.7, label=lab)
        ax.axvline(c, color="tab:red", lw=1.2, label=f"c = {c}")
        ax.set_xlabel("product length i")
        ax.set_ylabel("dim $L_i$")
        ax.set_xlim(-0.3, max(len(ranks), 2 * n - 1, paz + 1))
        ax.set_ylim(0, n * n + 1)
        if title:
            ax.set_title(title)
        ax.legend(frameon=False, fontsize=7, loc="lower right")
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)


def search_summary(results, path, title: str | None = None):
    """Measured c per candidate against the 2n-2 and 2n-3 lines."""
    with plt.rc_context(STYLE):
        fig, ax = plt.subplots()
        if results:
            ns = sorted({r.n for r in results})
            lo, hi = ns[0], ns[-1]
            xs = range(lo, hi + 1)
            ax.plot(xs, [2 * n - 2 for n in xs], "-", color="0.5", lw=1, label="2n-2")
            ax.plot(xs, [2 * n - 3 for n in xs], "--", color="0.5", lw=1, label="2n-3")
            ax.scatter([r.n for r in results], [r.c for r in results], s=14, alpha=0.6,
                       color="tab:blue", label="measured c")
            best = {}
            for r in results:
                best[r.n] = max(best.get(r.n, -1), r.c)
            ax.plot(list(best), list(best.values()), "x", color="tab:red", ms=7, label="max c")
            ax.set_xticks(list(xs))
        ax.set_xlabel("n")
        ax.set_ylabel("c")
        if title:
            ax.set_title(title)
        ax.legend(frameon=False, fontsize=7)
        fig.tight_layout()
        fig.savefig(path)
        plt.close(fig)
