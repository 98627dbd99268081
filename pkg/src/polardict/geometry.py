"""Uniform planar array geometry and field-region boundary distances."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

SPEED_OF_LIGHT = 299792458.0
"Speed of light in m/s."


@dataclass(frozen=True)
class ArrayConfig:
    """Geometry of a uniform planar array sitting in the y-z plane.

    Elements are placed on a rectangular lattice with equal horizontal and
    vertical spacing and indexed row by row, starting from the corner element
    at the origin.

    Attributes
    ----------
    m_h : int
        Antennas per row.
    m_v : int
        Antennas per column (number of rows).
    spacing : float
        Element spacing in meters.
    wavelength : float
        Carrier wavelength in meters.  Any positive spacing/wavelength ratio
        is supported.
    """

    m_h: int
    m_v: int
    spacing: float
    wavelength: float

    def __post_init__(self):
        if self.m_h < 1 or self.m_v < 1:
            raise ValueError(f"antenna counts must be >= 1, got {self.m_h}x{self.m_v}")
        if self.spacing <= 0.0:
            raise ValueError(f"spacing must be positive, got {self.spacing}")
        if self.wavelength <= 0.0:
            raise ValueError(f"wavelength must be positive, got {self.wavelength}")

    @property
    def n_antennas(self) -> int:
        """Total element count M."""
        return self.m_h * self.m_v

    @classmethod
    def from_carrier(cls, m_h: int, m_v: int, spacing_in_wavelengths: float,
                     carrier_hz: float) -> "ArrayConfig":
        """Build a config from spacing given in wavelengths at a carrier frequency."""
        wavelength = SPEED_OF_LIGHT / carrier_hz
        return cls(m_h, m_v, spacing_in_wavelengths * wavelength, wavelength)


def antenna_indices(cfg: ArrayConfig, m: int) -> tuple[int, int]:
    """Horizontal and vertical lattice indices (i, j) of the 1-based element m.

    i = mod(m-1, m_h) counts along a row, j = floor((m-1)/m_h) counts rows.
    """
    if not 1 <= m <= cfg.n_antennas:
        raise ValueError(f"antenna index {m} outside 1..{cfg.n_antennas}")
    return (m - 1) % cfg.m_h, (m - 1) // cfg.m_h


def antenna_position(cfg: ArrayConfig, m: int) -> np.ndarray:
    """Cartesian position [0, i*spacing, j*spacing] of element m, in meters."""
    i, j = antenna_indices(cfg, m)
    return np.array([0.0, i * cfg.spacing, j * cfg.spacing])


def element_grids(cfg: ArrayConfig) -> tuple[np.ndarray, np.ndarray]:
    """Vectorized (i, j) index arrays for all elements m = 1..M, in element order."""
    m = np.arange(cfg.n_antennas)
    return m % cfg.m_h, m // cfg.m_h


def aperture_length(cfg: ArrayConfig) -> float:
    """Diagonal aperture length D = sqrt(m_h^2 + m_v^2) * spacing, in meters."""
    return math.hypot(cfg.m_h, cfg.m_v) * cfg.spacing


def fraunhofer_distance(cfg: ArrayConfig) -> float:
    """Far-field boundary 2 D^2 / wavelength, in meters."""
    d = aperture_length(cfg)
    return 2.0 * d * d / cfg.wavelength


def fresnel_distance(cfg: ArrayConfig) -> float:
    """Lower boundary of the radiative near-field, 0.62 sqrt(D^3 / wavelength)."""
    d = aperture_length(cfg)
    return 0.62 * math.sqrt(d**3 / cfg.wavelength)
