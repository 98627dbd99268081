"""Polar-domain grid construction and dictionary assembly.

Directions are sampled on the sine-space lattice that makes same-ring columns
orthogonal; ranges are sampled either on the closed-form non-uniform rings or
uniformly between the range bounds.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from functools import cached_property
from pathlib import Path
from typing import NamedTuple

import numpy as np

from .geometry import ArrayConfig
from .steering import AngularPair, proposed_phases

DICTIONARY_FORMAT = "polardict-dictionary-v1"

MODE_PROPOSED = "proposed"
MODE_UNIFORM = "uniform"


class EmptyDictionaryError(ValueError):
    """No grid point survives the configured range bounds."""


@dataclass(frozen=True)
class SamplingConfig:
    """Grid-construction parameters.

    mode "proposed" places ranges on the non-uniform rings controlled by
    alpha_thr; mode "uniform" places n_points equally spaced ranges, either
    endpoint-inclusive (default) or at cell centers.  Ranges are kept inside
    [r_min, r_max], both inclusive.  angle_fill < 1 keeps an evenly strided
    subset of the angular lattice.  include_far_field appends one
    infinite-range column per direction (off by default).
    """

    mode: str
    alpha_thr: float | None = None
    n_points: int | None = None
    r_min: float = 8.0
    r_max: float = 64.0
    angle_fill: float = 1.0
    include_far_field: bool = False
    cell_centered: bool = False

    def __post_init__(self):
        if self.mode not in (MODE_PROPOSED, MODE_UNIFORM):
            raise ValueError(f"unknown sampling mode {self.mode!r}")
        if not 0.0 < self.r_min < self.r_max:
            raise ValueError(f"need 0 < r_min < r_max, got [{self.r_min}, {self.r_max}]")
        if self.mode == MODE_PROPOSED:
            if self.alpha_thr is None or self.alpha_thr <= 0.0:
                raise ValueError("proposed mode needs alpha_thr > 0")
        else:
            if self.n_points is None or self.n_points < 1:
                raise ValueError("uniform mode needs n_points >= 1")
        if not 0.0 < self.angle_fill <= 1.0:
            raise ValueError(f"angle_fill must be in (0, 1], got {self.angle_fill}")

    @property
    def param(self) -> float | int:
        """The mode-defining knob: alpha_thr or n_points."""
        return self.alpha_thr if self.mode == MODE_PROPOSED else self.n_points


@dataclass(frozen=True)
class GridPoint:
    """One dictionary column: direction, range, and its lattice/ring provenance.

    range_m is inf for far-field columns (ring_index 0).  In uniform mode,
    ring_index is the 1-based position in the descending-range column order.
    """

    angular: AngularPair
    range_m: float
    ring_index: int
    lattice_m: int
    lattice_n: int


class LatticeAngle(NamedTuple):
    """Sine-space lattice node (m, n) with its angular pair."""

    m: int
    n: int
    angular: AngularPair


def angular_grid(cfg: ArrayConfig) -> list[LatticeAngle]:
    """All sine-space lattice nodes inside the unit disk, row-major in (n, m).

    phi = m * wavelength / (m_h * spacing) for m = 0, +-1, ..,
    +-floor(m_h * spacing / wavelength); omega likewise with m_v.  Pairs with
    phi^2 + omega^2 > 1 are dropped.
    """
    m_max = math.floor(cfg.m_h * cfg.spacing / cfg.wavelength)
    n_max = math.floor(cfg.m_v * cfg.spacing / cfg.wavelength)
    phi_step = cfg.wavelength / (cfg.m_h * cfg.spacing)
    omega_step = cfg.wavelength / (cfg.m_v * cfg.spacing)

    out = []
    for n in range(-n_max, n_max + 1):
        omega = n * omega_step
        for m in range(-m_max, m_max + 1):
            phi = m * phi_step
            if phi * phi + omega * omega <= 1.0:
                out.append(LatticeAngle(m, n, AngularPair(phi, omega)))
    return out


def ring_scale(cfg: ArrayConfig, alpha_thr: float) -> float:
    """Leading range coefficient 2 m_h m_v spacing^2 / (wavelength * alpha_thr)."""
    return 2.0 * cfg.m_h * cfg.m_v * cfg.spacing**2 / (cfg.wavelength * alpha_thr)


def proposed_distances(cfg: ArrayConfig, alpha_thr: float, angular: AngularPair,
                       r_min: float, r_max: float) -> list[tuple[int, float]]:
    """Ring ranges r(s) = ring_scale * (1-phi^2)(1-omega^2) / s inside [r_min, r_max].

    Returns (s, r) pairs for s = 1, 2, ... in descending range order; empty when
    the direction is degenerate (|phi| = 1 or |omega| = 1) or every ring falls
    outside the bounds.
    """
    if alpha_thr <= 0.0:
        raise ValueError(f"alpha_thr must be positive, got {alpha_thr}")
    base = ring_scale(cfg, alpha_thr) * (1.0 - angular.phi_s**2) * (1.0 - angular.omega_s**2)
    out: list[tuple[int, float]] = []
    if base <= 0.0:
        return out
    s = 1
    while True:
        r = base / s
        if r < r_min:
            break
        if r <= r_max:
            out.append((s, r))
        s += 1
    return out


def uniform_distances(n_points: int, r_min: float, r_max: float) -> list[float]:
    """n_points equally spaced ranges spanning [r_min, r_max]; the midpoint for n=1."""
    if n_points < 1:
        raise ValueError(f"n_points must be >= 1, got {n_points}")
    if n_points == 1:
        return [0.5 * (r_min + r_max)]
    return np.linspace(r_min, r_max, n_points).tolist()


def _strided_subset(items: list, fill: float) -> list:
    # evenly strided, order-preserving; keeps at least one element
    count = max(1, round(fill * len(items)))
    if count >= len(items):
        return items
    picks = np.linspace(0, len(items) - 1, count).round().astype(int)
    return [items[i] for i in np.unique(picks)]


@dataclass(frozen=True)
class Dictionary:
    """Ordered grid points with lazily materialized response-vector columns."""

    config: ArrayConfig
    sampling: SamplingConfig
    columns: tuple[GridPoint, ...]

    @property
    def size(self) -> int:
        return len(self.columns)

    @cached_property
    def matrix(self) -> np.ndarray:
        """(M, K) complex matrix of separable-model columns.

        Far-field grid points (infinite range) reduce to plane-wave columns
        through the same phase expression.
        """
        phi = np.array([g.angular.phi_s for g in self.columns])
        omega = np.array([g.angular.omega_s for g in self.columns])
        r = np.array([g.range_m for g in self.columns])
        return np.exp(1j * proposed_phases(self.config, phi, omega, r)).T

    @cached_property
    def cartesian(self) -> np.ndarray:
        """(K, 3) Cartesian grid-point positions in meters.

        Raises for dictionaries holding far-field columns, which have no
        finite position.
        """
        r = np.array([g.range_m for g in self.columns])
        if not np.all(np.isfinite(r)):
            raise ValueError("far-field columns have no finite Cartesian position")
        phi = np.array([g.angular.phi_s for g in self.columns])
        omega = np.array([g.angular.omega_s for g in self.columns])
        x = r * np.sqrt(np.maximum(1.0 - phi * phi - omega * omega, 0.0))
        return np.column_stack([x, r * phi, r * omega])

    def describe(self) -> dict:
        """Summary used by the CLI info command: size, angular counts, ranges, rings."""
        ranges = [g.range_m for g in self.columns if math.isfinite(g.range_m)]
        rings: dict[int, int] = {}
        for g in self.columns:
            rings[g.ring_index] = rings.get(g.ring_index, 0) + 1
        hist_counts: list[int] = []
        hist_edges: list[float] = []
        if ranges:
            counts, edges = np.histogram(ranges, bins=10,
                                         range=(self.sampling.r_min, self.sampling.r_max))
            hist_counts = counts.tolist()
            hist_edges = edges.tolist()
        info = {
            "format": DICTIONARY_FORMAT,
            "mode": self.sampling.mode,
            "param": self.sampling.param,
            "size": self.size,
            "n_angular_pairs": len({(g.lattice_m, g.lattice_n) for g in self.columns}),
            "n_far_field": sum(1 for g in self.columns if not math.isfinite(g.range_m)),
            "range_min": min(ranges) if ranges else None,
            "range_max": max(ranges) if ranges else None,
            "max_ring_index": max(rings) if rings else None,
            "ring_index_counts": {str(s): c for s, c in sorted(rings.items())},
            "distance_histogram": {"edges": hist_edges, "counts": hist_counts},
        }
        if self.sampling.mode == MODE_PROPOSED:
            scale = ring_scale(self.config, self.sampling.alpha_thr)
            info["ring_constants"] = {str(s): s / scale for s in sorted(rings) if s > 0}
        return info

    def save(self, path: str | Path) -> None:
        """Persist metadata as JSON; the matrix is regenerated on load."""
        doc = {
            "format": DICTIONARY_FORMAT,
            "array": {
                "m_h": self.config.m_h,
                "m_v": self.config.m_v,
                "spacing": self.config.spacing,
                "wavelength": self.config.wavelength,
            },
            "sampling": {
                "mode": self.sampling.mode,
                "alpha_thr": self.sampling.alpha_thr,
                "n_points": self.sampling.n_points,
                "r_min": self.sampling.r_min,
                "r_max": self.sampling.r_max,
                "angle_fill": self.sampling.angle_fill,
                "include_far_field": self.sampling.include_far_field,
            },
            "columns": [
                [g.lattice_m, g.lattice_n, g.angular.phi_s, g.angular.omega_s,
                 g.ring_index, g.range_m if math.isfinite(g.range_m) else None]
                for g in self.columns
            ],
        }
        Path(path).write_text(json.dumps(doc))

    @classmethod
    def load(cls, path: str | Path) -> "Dictionary":
        doc = json.loads(Path(path).read_text())
        if doc.get("format") != DICTIONARY_FORMAT:
            raise ValueError(f"not a {DICTIONARY_FORMAT} file: {path}")
        cfg = ArrayConfig(**doc["array"])
        sampling = SamplingConfig(**doc["sampling"])
        columns = tuple(
            GridPoint(AngularPair(phi, omega), math.inf if r is None else r, s, m, n)
            for m, n, phi, omega, s, r in doc["columns"]
        )
        return cls(cfg, sampling, columns)


def build_dictionary(cfg: ArrayConfig, sampling: SamplingConfig) -> Dictionary:
    """Assemble the dictionary: per direction, attach its range samples.

    Column order is the angular lattice order, then descending range within a
    direction.  Raises when no grid point survives the range bounds.
    """
    angles = angular_grid(cfg)
    if sampling.angle_fill < 1.0:
        angles = _strided_subset(angles, sampling.angle_fill)

    points: list[GridPoint] = []
    for la in angles:
        if sampling.include_far_field:
            points.append(GridPoint(la.angular, math.inf, 0, la.m, la.n))
        if sampling.mode == MODE_PROPOSED:
            for s, r in proposed_distances(cfg, sampling.alpha_thr, la.angular,
                                           sampling.r_min, sampling.r_max):
                points.append(GridPoint(la.angular, r, s, la.m, la.n))
        else:
            ranges = uniform_distances(sampling.n_points, sampling.r_min, sampling.r_max)
            for s, r in enumerate(reversed(ranges), start=1):
                points.append(GridPoint(la.angular, r, s, la.m, la.n))

    if not points:
        raise EmptyDictionaryError("no grid points survive the configured range bounds")
    return Dictionary(cfg, sampling, tuple(points))
