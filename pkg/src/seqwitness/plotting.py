"""Figure rendering for the CLI report path.

Plots are written next to the delimited output when requested; the data
files remain the primary artifact.
"""

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt

STYLE = {
    "figure.figsize": (5.2, 3.4),
    "font.size": 9,
    "axes.grid": True,
    "grid.alpha": 0.3,
    "axes.spines.top": False,
    "axes.spines.right": False,
    "savefig.dpi": 160,
    "savefig.bbox": "tight",
}


def _new_axes():
    plt.rcParams.update(STYLE)
    fig, ax = plt.subplots()
    return fig, ax


def save_entanglement_sweep(points, path) -> None:
    """Step plot of observer count vs. initial entanglement."""
    fig, ax = _new_axes()
    xs = [p.entanglement for p in points]
    ys = [p.max_bobs for p in points]
    ax.step(xs, ys, where="post", color="tab:blue")
    ax.plot(xs, ys, ".", color="tab:blue", markersize=4)
    ax.set_xlabel("initial entanglement (ebits)")
    ax.set_ylabel("observers detecting entanglement")
    fig.savefig(path)
    plt.close(fig)


def save_lambda_sweep(points, path) -> None:
    """Staircase of observer count vs. the common sharpness parameter."""
    fig, ax = _new_axes()
    xs = [p.sharpness for p in points]
    ys = [p.max_bobs for p in points]
    ent = points[0].entanglement if points else float("nan")
    ax.step(xs, ys, where="post", color="tab:red", label=f"{ent:.3f} ebits")
    ax.set_xlabel("common sharpness")
    ax.set_ylabel("observers detecting entanglement")
    ax.legend(frameon=False)
    fig.savefig(path)
    plt.close(fig)


def save_thresholds(report, path) -> None:
    """Per-stage sharpness thresholds of the unequal cascade."""
    fig, ax = _new_axes()
    stages = range(1, report.max_bobs + 1)
    ax.plot(list(stages), list(report.thresholds), "o-", color="tab:green", markersize=4)
    ax.axhline(1.0, color="0.4", linestyle="--", linewidth=0.8)
    ax.set_xlabel("stage")
    ax.set_ylabel("sharpness threshold")
    ax.set_ylim(0.0, 1.2)
    fig.savefig(path)
    plt.close(fig)
