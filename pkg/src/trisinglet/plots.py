"""Convenience SVG plots; the CSVs are the normative outputs."""

from __future__ import annotations

from pathlib import Path


def _pyplot():
    import matplotlib

    matplotlib.use("Agg")
    import matplotlib.pyplot as plt

    return plt


def plot_timeseries(series, schedule, path: str | Path) -> Path:
    """Pulses, logic populations, and fidelity stacked over time."""
    plt = _pyplot()
    t = series.times
    fig, axes = plt.subplots(3, 1, figsize=(7, 8), sharex=True)

    axes[0].plot(t, schedule.pump01(t), label=r"$\Omega_{01}$ (pump)")
    axes[0].plot(t, schedule.stokes02(t), label=r"$\Omega_{02}$ (Stokes)")
    axes[0].set_ylabel(r"Rabi frequency ($\Omega_0$)")
    axes[0].legend(loc="upper left", fontsize="small")

    for k in range(9):
        p = series.populations[:, k]
        style = "-" if k in (0, 2, 6) else ":"
        axes[1].plot(t, p, style, label=f"$P_{k + 1}$")
    axes[1].set_ylabel("population")
    axes[1].legend(loc="center left", fontsize="x-small", ncol=3)

    axes[2].plot(t, series.fidelity, color="tab:red")
    axes[2].set_ylabel("fidelity")
    axes[2].set_xlabel("t / T")
    axes[2].set_ylim(-0.02, 1.02)

    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path


def plot_sweep(result, path: str | Path) -> Path:
    """Line plot (1 axis) or heatmap (2 axes) of final fidelity."""
    plt = _pyplot()
    fig, ax = plt.subplots(figsize=(6, 4.5))
    if len(result.axes) == 1:
        axis = result.axes[0]
        ax.plot(axis.values(), result.grid, marker="o", markersize=3)
        ax.set_xlabel(axis.name)
        ax.set_ylabel("final fidelity")
        ax.set_ylim(-0.02, 1.02)
    else:
        ax1, ax2 = result.axes
        mesh = ax.pcolormesh(
            ax2.values(), ax1.values(), result.grid, shading="nearest",
            vmin=0.0, vmax=1.0, cmap="viridis",
        )
        ax.set_xlabel(ax2.name)
        ax.set_ylabel(ax1.name)
        fig.colorbar(mesh, ax=ax, label="final fidelity")
    fig.tight_layout()
    path = Path(path)
    fig.savefig(path, format="svg")
    plt.close(fig)
    return path
