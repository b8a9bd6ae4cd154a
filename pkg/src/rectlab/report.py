"""Report generation: delimited tables plus rendered figures.

Figures are written to files (Agg backend); nothing interactive.
"""

from __future__ import annotations

import csv
import os

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
from matplotlib.patches import Rectangle as MplRect

from .bijection import TABLE_ROWS, row_patterns
from .generators import gen_all_rectangulations, is_vortex, iter_tree_paths, build_simple_whirl
from .permutations import count_avoiders
from .series import (
    catalan, load_cases, solve_system, whirl_pipeline, vortex_recurrence,
    asymptotic_ratio, QSeries,
)

PALETTE = ["#dbe9f6", "#f6dbdb", "#e3f6db", "#f6f0db", "#eadbf6",
           "#dbf6f0", "#f6dbe9", "#e9e9e9"]


def draw_drawing(ax, d, lw=1.4):
    for i, (x1, y1, x2, y2) in enumerate(d.rects):
        ax.add_patch(MplRect((x1, y1), x2 - x1, y2 - y1,
                             facecolor=PALETTE[i % len(PALETTE)],
                             edgecolor="black", linewidth=lw))
    ax.set_xlim(-0.05 * d.width, 1.05 * d.width)
    ax.set_ylim(-0.05 * d.height, 1.05 * d.height)
    ax.set_aspect("equal")
    ax.axis("off")


def gallery_figure(drawings, path, cols=8, title=None):
    n = len(drawings)
    cols = min(cols, max(1, n))
    rows = (n + cols - 1) // cols
    fig, axes = plt.subplots(rows, cols, figsize=(1.6 * cols, 1.6 * rows))
    axes = [axes] if rows * cols == 1 else list(axes.flat)
    for ax in axes[n:]:
        ax.axis("off")
    for ax, d in zip(axes, drawings):
        draw_drawing(ax, d)
    if title:
        fig.suptitle(title)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)


def counts_table(n_max=10):
    """Rows (row_id, n, count) from the generating functions, with the
    permutation filter cross-checked where cheap."""
    cases = load_cases()
    by_row = {c.row: c for c in cases.values()}
    out = []
    for row in TABLE_ROWS:
        F = solve_system(by_row[row], n_max)["F"]
        for n in range(1, n_max + 1):
            out.append((row, n, int(F.coeff(n)), "gf"))
    V = whirl_pipeline(n_max)["V"]
    for n in range(1, n_max + 1):
        out.append(("1345678", n, int(V.coeff(n)), "gf"))
    return out


def write_report(out_dir, n_max=10, oracle_n=6, ratio_points=(10, 30, 100, 300, 1000, 2000)):
    """Write counts.csv, series_coefficients.csv, asymptotics.csv and the
    figures; returns the list of files created."""
    os.makedirs(out_dir, exist_ok=True)
    created = []

    path = os.path.join(out_dir, "counts.csv")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["row", "n", "count", "method"])
        for rec in counts_table(n_max):
            w.writerow(rec)
    created.append(path)

    N = max(20, n_max)
    pipe = whirl_pipeline(N)
    series_cols = {"catalan": catalan(N), "V": pipe["V"], "P": pipe["P"],
                   "W": pipe["W"], "Z": pipe["Z"],
                   "F4": (QSeries.t(N) ** 5) * catalan(N) ** 4}
    path = os.path.join(out_dir, "series_coefficients.csv")
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["k"] + list(series_cols))
        for k in range(N + 1):
            w.writerow([k] + [int(s.coeff(k)) for s in series_cols.values()])
    created.append(path)

    vmax = max(ratio_points)
    v = vortex_recurrence(vmax)
    path = os.path.join(out_dir, "asymptotics.csv")
    ratios = []
    with open(path, "w", newline="") as fh:
        w = csv.writer(fh)
        w.writerow(["n", "ratio_lo", "ratio_hi"])
        for n in ratio_points:
            lo, hi = asymptotic_ratio(n, v[n])
            ratios.append((n, float(lo), float(hi)))
            w.writerow([n, f"{float(lo):.9f}", f"{float(hi):.9f}"])
    created.append(path)

    # figures ---------------------------------------------------------------
    classes = list(gen_all_rectangulations(oracle_n).values())
    path = os.path.join(out_dir, "classes.png")
    vort = [d for d in classes if is_vortex(d)]
    gallery_figure(vort, path, title=f"vortex rectangulations of size {oracle_n}")
    created.append(path)

    whirls = [build_simple_whirl(p) for depth in (0, 1, 2)
              for p, _ in iter_tree_paths(depth)]
    path = os.path.join(out_dir, "simple_whirls.png")
    gallery_figure(whirls, path, cols=7, title="simple whirls of sizes 5-7")
    created.append(path)

    path = os.path.join(out_dir, "asymptotic_ratio.png")
    fig, ax = plt.subplots(figsize=(6, 4))
    ns = [r[0] for r in ratios]
    mid = [(r[1] + r[2]) / 2 for r in ratios]
    ax.semilogx(ns, mid, "o-")
    ax.axhline(1.0, color="gray", linestyle="--", linewidth=0.8)
    ax.set_xlabel("n")
    ax.set_ylabel(r"$v_n \sqrt{\pi}\, n^{3/2} / 4^{n+2}$")
    ax.set_title("vortex asymptotics")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    created.append(path)

    path = os.path.join(out_dir, "row_growth.png")
    fig, ax = plt.subplots(figsize=(6, 4))
    cases = load_cases()
    by_row = {c.row: c for c in cases.values()}
    for row in TABLE_ROWS:
        F = solve_system(by_row[row], n_max)["F"]
        ax.semilogy(range(1, n_max + 1),
                    [int(F.coeff(n)) for n in range(1, n_max + 1)],
                    marker=".", label=row)
    ax.set_xlabel("size n")
    ax.set_ylabel("classes")
    ax.legend(fontsize=6, ncol=2)
    ax.set_title("pattern-avoiding rectangulation counts")
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
    created.append(path)

    return created
