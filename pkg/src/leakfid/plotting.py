"""Sweep figures rendered straight to files, no interactive backend."""

from __future__ import annotations

from matplotlib.figure import Figure

from .qubit_resonator import SweepResult


def sweep_figure(result: SweepResult, title: str | None = None) -> Figure:
    """Both fidelity traces over time, with the retained subspace
    population on a twin axis."""
    fig = Figure(figsize=(7.0, 4.2), dpi=150)
    ax = fig.subplots()
    ax.plot(result.times, result.f1_series, color="tab:blue", lw=1.4,
            label="projected fidelity")
    ax.plot(result.times, result.f2_series, color="tab:red", lw=1.4,
            label="embedded fidelity")
    ax.set_xlabel("time (ns)")
    ax.set_ylabel("average fidelity")
    ax.set_ylim(0.0, 1.02)
    ax.grid(alpha=0.3, lw=0.5)

    pop = ax.twinx()
    pop.plot(result.times, result.leakage_series, color="0.55", lw=0.9, ls="--",
             label="subspace population")
    pop.set_ylabel("subspace population")
    pop.set_ylim(0.0, float(result.leakage_series.max()) * 1.05)

    handles, labels = ax.get_legend_handles_labels()
    extra, extra_labels = pop.get_legend_handles_labels()
    ax.legend(handles + extra, labels + extra_labels, loc="lower right", fontsize=9)
    if title:
        ax.set_title(title)
    fig.tight_layout()
    return fig


def save_sweep_figure(result: SweepResult, path, title: str | None = None) -> None:
    """Write the sweep figure to ``path`` (format from the extension)."""
    sweep_figure(result, title).savefig(path)
