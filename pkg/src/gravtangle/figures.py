"""Matplotlib renderings of the reproduction CSVs (written next to them)."""
from __future__ import annotations

import math
from pathlib import Path

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt  # noqa: E402
import numpy as np  # noqa: E402

RC = {
    "font.size": 10,
    "axes.labelsize": 11,
    "legend.fontsize": 9,
    "xtick.labelsize": 9,
    "ytick.labelsize": 9,
    "figure.dpi": 120,
}


def _figure(width=5.0, aspect=0.62):
    return plt.subplots(figsize=(width, width * aspect))


def _pi_ticks(ax, axis="x", lo=0.0, hi=2 * math.pi):
    ticks = np.arange(0, 9) * math.pi / 4
    ticks = ticks[(ticks >= lo - 1e-9) & (ticks <= hi + 1e-9)]
    labels = [f"{k / 4:g}π" if k else "0" for k in np.round(ticks / (math.pi / 4)).astype(int)]
    getattr(ax, f"set_{axis}ticks")(ticks)
    getattr(ax, f"set_{axis}ticklabels")(labels)


def _save(fig, path: Path) -> Path:
    path = Path(path).with_suffix(".png")
    fig.tight_layout()
    fig.savefig(path, metadata={"Software": None})
    plt.close(fig)
    return path


def plot_table1(dphi3, lambda2, lambda2_paper, path) -> Path:
    with plt.rc_context(RC):
        fig, ax = _figure()
        ax.plot(dphi3, lambda2, "o-", label="computed")
        ax.plot(dphi3, lambda2_paper, "s", mfc="none", label="reported")
        ax.set_xlabel("Δφ₃")
        ax.set_ylabel("Λ²")
        _pi_ticks(ax)
        ax.legend()
        return _save(fig, path)


def plot_curve_with_fit(dphi3, lambda2, fit, path) -> Path:
    with plt.rc_context(RC):
        fig, ax = _figure()
        ax.plot(dphi3, lambda2, color="tab:blue", label="Λ² (optimized)")
        ax.plot(dphi3, fit, color="tab:red", ls="--", label="arctan fit")
        ax.axvspan(math.pi / 4, 7 * math.pi / 4, color="0.9", zorder=0)
        ax.set_xlabel("Δφ₃")
        ax.set_ylabel("Λ²")
        _pi_ticks(ax)
        ax.legend()
        return _save(fig, path)


def plot_phase_map(dphi2, dphi3, values, label, path) -> Path:
    """``values`` indexed [i2, i3] on the (dphi2, dphi3) grid."""
    with plt.rc_context(RC):
        fig, ax = _figure(4.6, 0.85)
        mesh = ax.pcolormesh(dphi2, dphi3, np.asarray(values).T, shading="nearest", cmap="RdYlBu")
        fig.colorbar(mesh, ax=ax, label=label)
        ax.set_xlabel("Δφ₂")
        ax.set_ylabel("Δφ₃")
        _pi_ticks(ax, "x")
        _pi_ticks(ax, "y")
        return _save(fig, path)


def plot_tau_series(taus, series: dict, path, window=None) -> Path:
    with plt.rc_context(RC):
        fig, ax = _figure()
        for name, vals in series.items():
            ax.plot(taus, vals, label=name)
        if window is not None:
            ax.axvspan(*window, color="0.9", zorder=0)
        ax.set_xlabel("τ (s)")
        ax.legend()
        return _save(fig, path)
