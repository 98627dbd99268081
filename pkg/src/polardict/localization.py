"""Monte Carlo matched-filter localization of a user against a dictionary."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import ArrayConfig
from .parallel import ordered_map
from .sampling import Dictionary
from .steering import PolarCoordinate, exact_response, polar_to_cartesian

__all__ = [
    "TrialConfig", "RmseCurve", "polar_to_cartesian", "drop_ue",
    "nearest_grid_point", "received_signal", "matched_filter_estimate",
    "rmse_experiment",
]


@dataclass(frozen=True)
class TrialConfig:
    """Monte Carlo setup: user-drop box, SNR grid, trial count, and master seed.

    angle_span scales [-pi/2, pi/2] for both azimuth and elevation; 0 pins the
    user to broadside.  Each trial draws from a substream derived from
    (master_seed, snr index, trial index), so results do not depend on how
    trials are scheduled.
    """

    angle_span: float = 0.9
    r_min: float = 8.0
    r_max: float = 64.0
    snr_grid_db: tuple[float, ...] = (-10.0, -5.0, 0.0, 5.0, 10.0, 15.0, 20.0)
    n_trials: int = 1000
    master_seed: int = 0

    def __post_init__(self):
        if not 0.0 <= self.angle_span <= 1.0:
            raise ValueError(f"angle_span must be in [0, 1], got {self.angle_span}")
        if not 0.0 < self.r_min < self.r_max:
            raise ValueError(f"need 0 < r_min < r_max, got [{self.r_min}, {self.r_max}]")
        if self.n_trials < 1:
            raise ValueError(f"n_trials must be >= 1, got {self.n_trials}")
        if not self.snr_grid_db:
            raise ValueError("snr_grid_db must be non-empty")
        if self.master_seed < 0:
            raise ValueError("master_seed must be a non-negative integer")


@dataclass(frozen=True)
class RmseCurve:
    """Per-SNR localization RMSE for one dictionary variant.

    entries holds (snr_db, rmse_m, n_trials) tuples sorted by snr_db.
    """

    dict_mode: str
    dict_param: float | int
    dict_size: int
    entries: tuple[tuple[float, float, int], ...]


def drop_ue(rng: np.random.Generator, trial_cfg: TrialConfig) -> PolarCoordinate:
    """Draw one user location: angles and range uniform over the trial box.

    Consumes exactly three uniforms from the stream, in the order azimuth,
    elevation, range.
    """
    half = trial_cfg.angle_span * math.pi / 2.0
    return PolarCoordinate(
        azimuth=float(rng.uniform(-half, half)),
        elevation=float(rng.uniform(-half, half)),
        range_m=float(rng.uniform(trial_cfg.r_min, trial_cfg.r_max)),
    )


def nearest_grid_point(dictionary: Dictionary, coord: PolarCoordinate) -> int:
    """Index of the grid point closest to the user in Cartesian distance.

    Ties break toward the lowest index.
    """
    if dictionary.size == 0:
        raise ValueError("empty dictionary")
    delta = dictionary.cartesian - polar_to_cartesian(coord)
    return int(np.argmin(np.einsum("ij,ij->i", delta, delta)))


def received_signal(cfg: ArrayConfig, coord: PolarCoordinate, snr_db: float,
                    rng: np.random.Generator) -> np.ndarray:
    """Noisy narrowband observation y = b_exact + n.

    n has i.i.d. circular complex Gaussian entries of variance 10^(-snr_db/10);
    signal entries are unit modulus, so snr_db is the per-antenna SNR.
    """
    b = exact_response(cfg, coord).entries
    sigma2 = 10.0 ** (-snr_db / 10.0)
    gauss = rng.standard_normal((cfg.n_antennas, 2))
    return b + math.sqrt(sigma2 / 2.0) * (gauss[:, 0] + 1j * gauss[:, 1])


def matched_filter_estimate(dictionary: Dictionary, y: np.ndarray) -> int:
    """Index of the column with the largest |w_k^H y|; ties toward the lowest index."""
    y = np.asarray(y)
    if y.shape != (dictionary.config.n_antennas,):
        raise ValueError(f"signal length {y.shape} does not match M = "
                         f"{dictionary.config.n_antennas}")
    return int(np.argmax(np.abs(dictionary.matrix.conj().T @ y)))


def rmse_experiment(cfg: ArrayConfig, dictionary: Dictionary, trial_cfg: TrialConfig,
                    threads: int = 1) -> RmseCurve:
    """Localization RMSE versus SNR over independent user drops.

    Per trial, the error is the Cartesian distance between the grid point
    nearest to the user and the matched-filter estimate; the RMSE aggregates
    error^2 over trials.  Trial substreams are keyed by (master_seed, snr
    index, trial), so the curve is bit-identical for any thread count.
    """
    if cfg != dictionary.config:
        raise ValueError("dictionary was built for a different array config")
    grid = dictionary.cartesian
    wh = np.ascontiguousarray(dictionary.matrix.conj().T)
    snrs = sorted(trial_cfg.snr_grid_db)

    def run_trial(key: tuple[int, int]) -> float:
        si, t = key
        rng = np.random.default_rng([trial_cfg.master_seed, si, t])
        ue = drop_ue(rng, trial_cfg)
        delta = grid - polar_to_cartesian(ue)
        near = int(np.argmin(np.einsum("ij,ij->i", delta, delta)))
        y = received_signal(cfg, ue, snrs[si], rng)
        est = int(np.argmax(np.abs(wh @ y)))
        gap = grid[near] - grid[est]
        return float(gap @ gap)

    entries = []
    for si, snr in enumerate(snrs):
        keys = [(si, t) for t in range(trial_cfg.n_trials)]
        sq_errors = np.array(ordered_map(run_trial, keys, threads))
        entries.append((float(snr), float(np.sqrt(sq_errors.mean())), trial_cfg.n_trials))

    return RmseCurve(
        dict_mode=dictionary.sampling.mode,
        dict_param=dictionary.sampling.param,
        dict_size=dictionary.size,
        entries=tuple(entries),
    )
