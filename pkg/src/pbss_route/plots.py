"""Figures written next to the report files."""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402

from .bench import REFERENCE_SWEEP_GAP, BenchReport, Fig17Result, fig17_grid  # noqa: E402


def plot_fig17_grids(results: list[Fig17Result], path) -> None:
    """One annotated step grid per escort count; suboptimal cells show h/o."""
    n = len(results)
    cols = min(3, n) or 1
    rows = (n + cols - 1) // cols or 1
    fig, axes = plt.subplots(rows, cols, figsize=(4.2 * cols, 2.8 * rows), squeeze=False)
    for ax in axes.flat[n:]:
        ax.axis("off")
    for ax, res in zip(axes.flat, results):
        gh = fig17_grid(res, "heuristic_mean")
        go = fig17_grid(res, "oracle")
        shade = [[0.0 if h is None else 1.0 for h in row] for row in gh]
        ax.imshow(shade, cmap="Greys", vmin=0, vmax=2.5)
        for r, (rh, ro) in enumerate(zip(gh, go)):
            for c, (h, o) in enumerate(zip(rh, ro)):
                if h is None:
                    continue
                if o is not None and h == o:
                    ax.text(c, r, f"{o}", ha="center", va="center", fontsize=7, color="white")
                else:
                    ax.text(c, r, f"{h:.3g}\n{o if o is not None else '?'}", ha="center",
                            va="center", fontsize=6, color="black")
        ax.set_title(f"{res.k} escort{'s' if res.k > 1 else ''}, gap {res.gap:.2f}%", fontsize=9)
        ax.set_xticks([])
        ax.set_yticks([])
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_fig17_gaps(results: list[Fig17Result], path) -> None:
    ks = [r.k for r in results]
    ours = [r.gap for r in results]
    ref = [REFERENCE_SWEEP_GAP.get(k, 0.0) for k in ks]
    fig, ax = plt.subplots(figsize=(5, 3))
    w = 0.38
    ax.bar([k - w / 2 for k in ks], ours, w, label="this run")
    ax.bar([k + w / 2 for k in ks], ref, w, label="reference")
    ax.set_xlabel("escorts")
    ax.set_ylabel("gap (%)")
    ax.set_xticks(ks)
    ax.legend()
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)


def plot_bench(rep: BenchReport, path) -> None:
    ids = [r.case_id for r in rep.rows]
    steps = [r.heuristic_steps for r in rep.rows]
    colors = ["tab:blue" if r.solved else "tab:red" for r in rep.rows]
    fig, ax = plt.subplots(figsize=(max(4, 0.45 * len(ids) + 1), 3))
    ax.bar(range(len(ids)), steps, color=colors)
    if rep.mean_steps is not None:
        ax.axhline(rep.mean_steps, color="black", lw=1, label=f"mean {rep.mean_steps:.1f}")
    if rep.reference_mean_steps is not None:
        ax.axhline(rep.reference_mean_steps, color="gray", ls="--", lw=1,
                   label=f"reference {rep.reference_mean_steps}")
    ax.set_xticks(range(len(ids)))
    ax.set_xticklabels(ids, rotation=60, fontsize=7)
    ax.set_ylabel("steps")
    if rep.rows:
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
