"""Figure rendering for bound curves.

Renders the passive/active comparison to an image file next to the CSV the
scenario emits. Uses the Agg backend so it works headless.
"""

from __future__ import annotations

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt  # noqa: E402  (backend must be set first)

from .scenario import BoundCurve

_SERIES_STYLE = {
    "passive_q_ub": ("tab:blue", "Passive quantum UB"),
    "passive_c_ub": ("tab:cyan", "Passive classical UB"),
    "passive_q_lb_hashing": ("tab:purple", "Passive quantum LB (hashing)"),
}


def render_curve_figure(curve: BoundCurve, path, ymax: float | None = None) -> None:
    """Render the bound curves to ``path`` (format from the file extension)."""
    fig, ax = plt.subplots(figsize=(8.0, 5.0))
    active_colors = ("tab:green", "tab:red", "tab:orange", "tab:brown")
    n_active = 0
    for name in sorted(curve.columns):
        values = curve.columns[name]
        if name in _SERIES_STYLE:
            color, label = _SERIES_STYLE[name]
        elif name.startswith("active_q_lb_l"):
            level = name.rsplit("l", 1)[1]
            color = active_colors[n_active % len(active_colors)]
            label = f"Active quantum LB (level {level}, rescaled)"
            n_active += 1
        else:
            color, label = None, name
        ax.plot(curve.grid, values, label=label, color=color, linewidth=1.2)
    ax.set_xlabel("channel iteration $t$")
    ax.set_ylabel("capacity (bits)")
    ax.set_xlim(curve.grid[0], curve.grid[-1])
    finite = [v[~(v == float("inf"))] for v in curve.columns.values()]
    top = ymax if ymax is not None else max(float(v.max()) for v in finite if v.size)
    ax.set_ylim(0.0, top * 1.05 if top > 0 else 1.0)
    ax.grid(True, alpha=0.4)
    ax.legend(loc="upper right", fontsize=9)
    fig.tight_layout()
    fig.savefig(path, dpi=150)
    plt.close(fig)
