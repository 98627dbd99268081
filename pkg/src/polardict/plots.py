"""Figure rendering for the experiment CSV outputs."""

from __future__ import annotations

from pathlib import Path

import matplotlib

matplotlib.use("Agg")

import matplotlib.pyplot as plt
import numpy as np

_MODEL_LABELS = {
    "near_field_expansion": "near-field expansion",
    "proposed": "separable approximation",
}


def similarity_cdf_figure(path: Path, sims_by_model: dict[str, np.ndarray]) -> None:
    """Empirical CDF of similarity values per approximation model."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for model, sims in sims_by_model.items():
        s = np.sort(sims)
        cdf = np.arange(1, s.size + 1) / s.size
        ax.plot(s, cdf, label=_MODEL_LABELS.get(model, model))
    ax.set_xlabel("similarity to the exact response")
    ax.set_ylabel("empirical CDF")
    ax.grid(alpha=0.3)
    ax.legend(loc="upper left")
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def coherence_sweep_figure(path: Path, rows: list[tuple]) -> None:
    """Normalized coherence (left axis) and dictionary size (right axis) vs threshold."""
    alpha = [r[0] for r in rows]
    mu = [r[1] for r in rows]
    size = [r[2] for r in rows]

    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    valid = [(a, m) for a, m in zip(alpha, mu) if m is not None]
    if valid:
        ax.plot([a for a, _ in valid], [m for _, m in valid], "o-", color="tab:blue")
    ax.set_xlabel(r"$\alpha_{\rm thr}$")
    ax.set_ylabel("normalized column coherence", color="tab:blue")
    ax.tick_params(axis="y", labelcolor="tab:blue")
    ax.grid(alpha=0.3)

    ax2 = ax.twinx()
    ax2.plot(alpha, size, "s--", color="tab:red")
    ax2.set_ylabel("dictionary size", color="tab:red")
    ax2.tick_params(axis="y", labelcolor="tab:red")

    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)


def rmse_figure(path: Path, curves) -> None:
    """Localization RMSE vs SNR, one line per dictionary variant."""
    fig, ax = plt.subplots(figsize=(6.4, 4.2))
    for c in curves:
        snr = [e[0] for e in c.entries]
        rmse = [e[1] for e in c.entries]
        if c.dict_mode == "proposed":
            label = rf"rings, $\alpha_{{\rm thr}}$={c.dict_param} (K={c.dict_size})"
        else:
            label = f"uniform, {c.dict_param} ranges (K={c.dict_size})"
        ax.plot(snr, rmse, "o-", label=label)
    ax.set_xlabel("SNR [dB]")
    ax.set_ylabel("RMSE [m]")
    ax.grid(alpha=0.3)
    ax.legend()
    fig.savefig(path, dpi=150, bbox_inches="tight")
    plt.close(fig)
