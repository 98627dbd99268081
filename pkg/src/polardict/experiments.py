"""Experiment drivers behind the CLI: similarity CDF, coherence sweep, RMSE vs SNR.

Each run writes a CSV whose first line is a comment recording the resolved
configuration and master seed, so any output can be reproduced from the file
alone.  Figures are rendered next to the CSV unless plotting is disabled.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from pathlib import Path
from typing import Iterable

import numpy as np

from .coherence import dictionary_coherence
from .geometry import ArrayConfig
from .localization import RmseCurve, TrialConfig, rmse_experiment
from .parallel import block_starts, ordered_map
from .sampling import Dictionary, SamplingConfig, build_dictionary
from .steering import MODEL_EXPANSION, MODEL_PROPOSED, exact_phases, expansion_phases, proposed_phases

DEFAULT_ARRAY = ArrayConfig(m_h=64, m_v=32, spacing=0.025, wavelength=0.1)
"64x32 quarter-wavelength array at 3 GHz, the default experiment geometry."

REDUCED_ARRAY = ArrayConfig(m_h=16, m_v=8, spacing=0.025, wavelength=0.1)
"CI-scale geometry; its radiative near-field spans roughly 0.6 m to 4 m."

SIMILARITY_CHUNK = 2048
"Grid points per similarity batch; fixed so results never depend on threading."


@dataclass(frozen=True)
class SimilarityGrid:
    """Sampling box for the similarity CDF experiment.

    subsample > 0 evaluates a seeded uniform subsample of the full lattice
    instead of all n_azimuth * n_elevation * n_range points.
    """

    n_azimuth: int = 50
    n_elevation: int = 50
    n_range: int = 50
    angle_span: float = 0.9
    r_min: float = 8.0
    r_max: float = 64.0
    subsample: int = 0

    def __post_init__(self):
        if min(self.n_azimuth, self.n_elevation, self.n_range) < 1:
            raise ValueError("grid densities must be >= 1 per axis")
        if not 0.0 <= self.angle_span <= 1.0:
            raise ValueError(f"angle_span must be in [0, 1], got {self.angle_span}")
        if not 0.0 < self.r_min <= self.r_max:
            raise ValueError(f"need 0 < r_min <= r_max, got [{self.r_min}, {self.r_max}]")
        if self.subsample < 0:
            raise ValueError("subsample must be >= 0")


@dataclass(frozen=True)
class CoherenceSweep:
    """Threshold sweep for the coherence experiment."""

    alpha_thr: tuple[float, ...] = tuple(round(0.2 + 0.15 * k, 2) for k in range(13))
    r_min: float = 8.0
    r_max: float = 64.0
    method: str = "factorized"

    def __post_init__(self):
        if not self.alpha_thr:
            raise ValueError("alpha_thr sweep list must be non-empty")
        if any(a <= 0 for a in self.alpha_thr):
            raise ValueError("alpha_thr values must be positive")
        if self.method not in ("direct", "factorized"):
            raise ValueError(f"unknown coherence method {self.method!r}")


@dataclass(frozen=True)
class RmseSetup:
    """Dictionary variants plus the Monte Carlo trial plan."""

    variants: tuple[SamplingConfig, ...]
    trial: TrialConfig

    def __post_init__(self):
        if not self.variants:
            raise ValueError("need at least one dictionary variant")


def default_rmse_variants(r_min: float = 8.0, r_max: float = 64.0) -> tuple[SamplingConfig, ...]:
    """The five benchmark variants: two ring thresholds and three uniform grids."""
    return (
        SamplingConfig("proposed", alpha_thr=0.6525, r_min=r_min, r_max=r_max),
        SamplingConfig("proposed", alpha_thr=1.0485, r_min=r_min, r_max=r_max),
        SamplingConfig("uniform", n_points=2, r_min=r_min, r_max=r_max),
        SamplingConfig("uniform", n_points=4, r_min=r_min, r_max=r_max),
        SamplingConfig("uniform", n_points=6, r_min=r_min, r_max=r_max),
    )


def _fmt(x) -> str:
    if x is None:
        return ""
    if isinstance(x, float):
        return repr(x)
    return str(x)


def write_csv(path: Path, header: list[str], rows: Iterable[tuple], config: dict) -> None:
    """CSV with a leading comment line holding the resolved config as JSON."""
    lines = ["# config: " + json.dumps(config, sort_keys=True), ",".join(header)]
    lines.extend(",".join(_fmt(x) for x in row) for row in rows)
    path.write_text("\n".join(lines) + "\n")


def _array_dict(cfg: ArrayConfig) -> dict:
    return {"m_h": cfg.m_h, "m_v": cfg.m_v, "spacing": cfg.spacing,
            "wavelength": cfg.wavelength}


def _sampling_dict(sc: SamplingConfig) -> dict:
    return {"mode": sc.mode, "alpha_thr": sc.alpha_thr, "n_points": sc.n_points,
            "r_min": sc.r_min, "r_max": sc.r_max, "angle_fill": sc.angle_fill,
            "include_far_field": sc.include_far_field}


def similarity_samples(cfg: ArrayConfig, grid: SimilarityGrid, seed: int,
                       threads: int = 1) -> tuple[np.ndarray, np.ndarray]:
    """Similarity of the expansion and separable models against the exact response.

    The box is the deterministic lattice of n_azimuth x n_elevation x n_range
    points (azimuth-major order); with subsample > 0, a seeded uniform draw of
    that many lattice points without replacement.  Returns the two similarity
    arrays (expansion, proposed) in evaluation order.
    """
    half = grid.angle_span * math.pi / 2.0
    az = np.linspace(-half, half, grid.n_azimuth)
    el = np.linspace(-half, half, grid.n_elevation)
    rr = np.linspace(grid.r_min, grid.r_max, grid.n_range)
    a, e, r = (x.ravel() for x in np.meshgrid(az, el, rr, indexing="ij"))
    if grid.subsample > 0 and grid.subsample < a.size:
        rng = np.random.default_rng([seed])
        idx = np.sort(rng.choice(a.size, size=grid.subsample, replace=False))
        a, e, r = a[idx], e[idx], r[idx]
    phi = np.cos(e) * np.sin(a)
    omega = np.sin(e)

    def chunk_fn(start: int) -> tuple[np.ndarray, np.ndarray]:
        stop = min(start + SIMILARITY_CHUNK, a.size)
        sl = slice(start, stop)
        psi_exact = exact_phases(cfg, a[sl], e[sl], r[sl])
        psi_exp = expansion_phases(cfg, phi[sl], omega[sl], r[sl])
        psi_prop = proposed_phases(cfg, phi[sl], omega[sl], r[sl])
        sim_exp = np.abs(np.exp(1j * (psi_exact - psi_exp)).mean(axis=1))
        sim_prop = np.abs(np.exp(1j * (psi_exact - psi_prop)).mean(axis=1))
        return sim_exp, sim_prop

    parts = ordered_map(chunk_fn, block_starts(a.size, SIMILARITY_CHUNK), threads)
    sims_exp = np.concatenate([p[0] for p in parts])
    sims_prop = np.concatenate([p[1] for p in parts])
    return sims_exp, sims_prop


def run_similarity_cdf(cfg: ArrayConfig, grid: SimilarityGrid, out: Path, seed: int,
                       threads: int = 1, plot: bool = True) -> dict[str, np.ndarray]:
    """Write the per-model (similarity, empirical CDF) table and optional figure."""
    sims_exp, sims_prop = similarity_samples(cfg, grid, seed, threads)
    by_model = {MODEL_EXPANSION: np.sort(sims_exp), MODEL_PROPOSED: np.sort(sims_prop)}

    rows = []
    for model, sims in by_model.items():
        n = sims.size
        rows.extend((model, float(s), (k + 1) / n) for k, s in enumerate(sims))
    config = {
        "array": _array_dict(cfg), "experiment": "similarity_cdf",
        "n_azimuth": grid.n_azimuth, "n_elevation": grid.n_elevation,
        "n_range": grid.n_range, "angle_span": grid.angle_span,
        "r_min": grid.r_min, "r_max": grid.r_max, "subsample": grid.subsample,
        "seed": seed,
    }
    write_csv(out, ["model", "similarity", "cdf"], rows, config)
    if plot:
        from . import plots
        plots.similarity_cdf_figure(out.with_suffix(".png"), by_model)
    return by_model


def run_coherence_sweep(cfg: ArrayConfig, sweep: CoherenceSweep, out: Path, seed: int,
                        threads: int = 1, plot: bool = True) -> list[tuple]:
    """Per threshold: dictionary size and normalized coherence.

    Thresholds whose dictionary is empty (or has fewer than two columns) are
    emitted with the coherence field left blank.
    """
    rows = []
    for a_thr in sweep.alpha_thr:
        sc = SamplingConfig("proposed", alpha_thr=a_thr, r_min=sweep.r_min,
                            r_max=sweep.r_max)
        try:
            d = build_dictionary(cfg, sc)
        except ValueError:
            rows.append((float(a_thr), None, 0))
            continue
        if d.size < 2:
            rows.append((float(a_thr), None, d.size))
            continue
        rep = dictionary_coherence(d, sweep.method, threads)
        rows.append((float(a_thr), rep.normalized_mu, d.size))
    config = {
        "array": _array_dict(cfg), "experiment": "coherence_sweep",
        "alpha_thr": list(sweep.alpha_thr), "r_min": sweep.r_min,
        "r_max": sweep.r_max, "method": sweep.method, "seed": seed,
    }
    write_csv(out, ["alpha_thr", "normalized_mu", "dict_size"], rows, config)
    if plot:
        from . import plots
        plots.coherence_sweep_figure(out.with_suffix(".png"), rows)
    return rows


def run_rmse(cfg: ArrayConfig, setup: RmseSetup, out: Path, threads: int = 1,
             plot: bool = True) -> list[RmseCurve]:
    """RMSE-vs-SNR curves for every configured dictionary variant."""
    curves = []
    for sc in setup.variants:
        d = build_dictionary(cfg, sc)
        curves.append(rmse_experiment(cfg, d, setup.trial, threads))

    rows = []
    for c in curves:
        rows.extend((snr, rmse, n, c.dict_mode, c.dict_param, c.dict_size)
                    for snr, rmse, n in c.entries)
    config = {
        "array": _array_dict(cfg), "experiment": "rmse_vs_snr",
        "variants": [_sampling_dict(sc) for sc in setup.variants],
        "snr_db": list(setup.trial.snr_grid_db), "n_trials": setup.trial.n_trials,
        "angle_span": setup.trial.angle_span, "r_min": setup.trial.r_min,
        "r_max": setup.trial.r_max, "seed": setup.trial.master_seed,
    }
    write_csv(out, ["snr_db", "rmse_m", "n_trials", "dict_mode", "dict_param",
                    "dict_size"], rows, config)
    if plot:
        from . import plots
        plots.rmse_figure(out.with_suffix(".png"), curves)
    return curves


def run_dict_build(cfg: ArrayConfig, sampling: SamplingConfig, out: Path) -> Dictionary:
    """Build a dictionary and persist its metadata as JSON."""
    d = build_dictionary(cfg, sampling)
    d.save(out)
    return d


def run_dict_info(path: Path, out: Path | None = None) -> dict:
    """Load a persisted dictionary and return (and optionally write) its summary."""
    info = Dictionary.load(path).describe()
    text = json.dumps(info, indent=2, sort_keys=True) + "\n"
    if out is not None:
        out.write_text(text)
    return info
