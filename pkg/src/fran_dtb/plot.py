"""Optional figure of DTB against cache size, drawn from sweep rows.

matplotlib is imported only here and only when a figure is requested.
"""

from __future__ import annotations

from collections import defaultdict


def plot_rows(rows, path: str) -> None:
    try:
        import matplotlib

        matplotlib.use("Agg")
        import matplotlib.pyplot as plt
    except ImportError as exc:  # pragma: no cover - depends on the environment
        raise RuntimeError("figures need matplotlib; install the 'plot' extra") from exc

    curves = defaultdict(list)
    for r in rows:
        if r.dtb_den == 0:
            continue
        curves[(r.n, r.mode, r.nF)].append((r.mu_num / r.mu_den, r.dtb_num / r.dtb_den))
    fig, ax = plt.subplots(figsize=(6.4, 4.4))
    for (n, mode, nF), pts in sorted(curves.items()):
        xs, ys = zip(*sorted(pts))
        style = "-" if mode == "serial" else "--"
        ax.plot(xs, ys, style, marker=".", label=f"n={n} {mode} nF={nF}")
    ax.set_xlabel("fractional cache size mu")
    ax.set_ylabel("delivery time per bit")
    ax.grid(alpha=0.3)
    if len(curves) <= 12:
        ax.legend(fontsize=7)
    fig.tight_layout()
    fig.savefig(path, dpi=120)
    plt.close(fig)
