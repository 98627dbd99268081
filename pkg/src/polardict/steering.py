"""Near-field array response vectors: exact, approximate, and far-field models."""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .geometry import ArrayConfig, antenna_position, element_grids

HALF_PI = math.pi / 2.0

MODEL_EXACT = "exact"
MODEL_EXPANSION = "near_field_expansion"
MODEL_PROPOSED = "proposed"
MODEL_FAR_FIELD = "far_field"


@dataclass(frozen=True)
class PolarCoordinate:
    """Source location in front of the array: azimuth/elevation in radians, range in meters."""

    azimuth: float
    elevation: float
    range_m: float

    def __post_init__(self):
        if not -HALF_PI <= self.azimuth <= HALF_PI:
            raise ValueError(f"azimuth {self.azimuth} outside [-pi/2, pi/2]")
        if not -HALF_PI <= self.elevation <= HALF_PI:
            raise ValueError(f"elevation {self.elevation} outside [-pi/2, pi/2]")
        if not self.range_m > 0.0:
            raise ValueError(f"range must be positive, got {self.range_m}")


@dataclass(frozen=True)
class AngularPair:
    """Sine-space image of a direction: phi_s = cos(el)sin(az), omega_s = sin(el)."""

    phi_s: float
    omega_s: float

    def __post_init__(self):
        if abs(self.phi_s) > 1.0 or abs(self.omega_s) > 1.0:
            raise ValueError(f"angular pair ({self.phi_s}, {self.omega_s}) outside [-1, 1]^2")


@dataclass(frozen=True)
class ResponseVector:
    """Length-M unit-modulus response with the tag of the model that produced it."""

    entries: np.ndarray
    model: str

    def __len__(self) -> int:
        return len(self.entries)


def angular_transform(coord: PolarCoordinate) -> AngularPair:
    """Map (azimuth, elevation) to the sine-space pair (phi_s, omega_s)."""
    return AngularPair(
        phi_s=math.cos(coord.elevation) * math.sin(coord.azimuth),
        omega_s=math.sin(coord.elevation),
    )


def polar_to_cartesian(coord: PolarCoordinate) -> np.ndarray:
    """Cartesian position [r cos(el)cos(az), r cos(el)sin(az), r sin(el)] in meters."""
    r, az, el = coord.range_m, coord.azimuth, coord.elevation
    return np.array([
        r * math.cos(el) * math.cos(az),
        r * math.cos(el) * math.sin(az),
        r * math.sin(el),
    ])


def exact_distance(cfg: ArrayConfig, coord: PolarCoordinate, m: int) -> float:
    """Euclidean distance from element m to the source, in meters."""
    delta = polar_to_cartesian(coord) - antenna_position(cfg, m)
    return float(np.linalg.norm(delta))


def exact_phases(cfg: ArrayConfig, azimuth: np.ndarray, elevation: np.ndarray,
                 range_m: np.ndarray) -> np.ndarray:
    """Exact spherical-wave phases -2*pi/wavelength * (r_m - r) for a batch of sources.

    Returns an (N, M) array of phases psi such that the exact response entry is
    exp(1j * psi).  The per-element range difference r_m - r is evaluated as
    (|u_m|^2 - 2 x.u_m) / (r_m + r), which is exact for the corner element
    (u_1 = 0 gives phase 0) and avoids cancellation when r greatly exceeds the
    aperture.
    """
    az = np.atleast_1d(np.asarray(azimuth, dtype=float))
    el = np.atleast_1d(np.asarray(elevation, dtype=float))
    r = np.atleast_1d(np.asarray(range_m, dtype=float))

    i, j = element_grids(cfg)
    uy = i * cfg.spacing
    uz = j * cfg.spacing
    u_sq = uy * uy + uz * uz  # (M,)

    # unit direction to the source; ux component never meets the array plane x=0
    dy = np.cos(el) * np.sin(az)
    dz = np.sin(el)
    proj = np.outer(dy, uy) + np.outer(dz, uz)  # (N, M) = direction . u_m

    rcol = r[:, None]
    r_m = np.sqrt(rcol * rcol - 2.0 * rcol * proj + u_sq[None, :])
    delta = (u_sq[None, :] - 2.0 * rcol * proj) / (r_m + rcol)
    return -2.0 * math.pi / cfg.wavelength * delta


def expansion_phases(cfg: ArrayConfig, phi_s: np.ndarray, omega_s: np.ndarray,
                     range_m: np.ndarray) -> np.ndarray:
    """Second-order range-expansion phases for a batch of (phi_s, omega_s, r) points.

    Entry (n, m) is 2*pi/wavelength * [d*(i*phi + j*omega)
    - d^2*(i^2 + j^2 - (i*phi + j*omega)^2) / (2 r)] with d the spacing and
    (i, j) the lattice indices of element m.
    """
    phi = np.atleast_1d(np.asarray(phi_s, dtype=float))
    omega = np.atleast_1d(np.asarray(omega_s, dtype=float))
    r = np.atleast_1d(np.asarray(range_m, dtype=float))

    i, j = element_grids(cfg)
    d = cfg.spacing
    lin = np.outer(phi, i) + np.outer(omega, j)  # (N, M) = i*phi + j*omega
    sq = (i * i + j * j).astype(float)
    quad = (sq[None, :] - lin * lin) / (2.0 * r[:, None])
    return 2.0 * math.pi / cfg.wavelength * (d * lin - d * d * quad)


def proposed_phases(cfg: ArrayConfig, phi_s: np.ndarray, omega_s: np.ndarray,
                    range_m: np.ndarray) -> np.ndarray:
    """Separable approximation phases: the expansion with the i*j cross term dropped.

    Entry (n, m) is 2*pi/wavelength * [d*(i*phi + j*omega)
    - d^2*(i^2*(1 - phi^2) + j^2*(1 - omega^2)) / (2 r)].  Ranges may be inf,
    which reduces to the far-field phases.
    """
    phi = np.atleast_1d(np.asarray(phi_s, dtype=float))
    omega = np.atleast_1d(np.asarray(omega_s, dtype=float))
    r = np.atleast_1d(np.asarray(range_m, dtype=float))

    i, j = element_grids(cfg)
    d = cfg.spacing
    lin = np.outer(phi, i) + np.outer(omega, j)
    curv_h = np.outer((1.0 - phi * phi) / (2.0 * r), (i * i).astype(float))
    curv_v = np.outer((1.0 - omega * omega) / (2.0 * r), (j * j).astype(float))
    return 2.0 * math.pi / cfg.wavelength * (d * lin - d * d * (curv_h + curv_v))


def far_field_phases(cfg: ArrayConfig, phi_s: np.ndarray, omega_s: np.ndarray) -> np.ndarray:
    """Plane-wave phases 2*pi/wavelength * d * (i*phi + j*omega); all 1/r terms dropped."""
    phi = np.atleast_1d(np.asarray(phi_s, dtype=float))
    omega = np.atleast_1d(np.asarray(omega_s, dtype=float))
    i, j = element_grids(cfg)
    lin = np.outer(phi, i) + np.outer(omega, j)
    return 2.0 * math.pi / cfg.wavelength * cfg.spacing * lin


def exact_response(cfg: ArrayConfig, coord: PolarCoordinate) -> ResponseVector:
    """Exact near-field response vector; entry m is exp(-i 2*pi/wavelength (r_m - r))."""
    psi = exact_phases(cfg, np.array([coord.azimuth]), np.array([coord.elevation]),
                       np.array([coord.range_m]))[0]
    return ResponseVector(np.exp(1j * psi), MODEL_EXACT)


def expansion_response(cfg: ArrayConfig, coord: PolarCoordinate) -> ResponseVector:
    """Response under the second-order range expansion."""
    ang = angular_transform(coord)
    psi = expansion_phases(cfg, np.array([ang.phi_s]), np.array([ang.omega_s]),
                           np.array([coord.range_m]))[0]
    return ResponseVector(np.exp(1j * psi), MODEL_EXPANSION)


def proposed_response(cfg: ArrayConfig, coord: PolarCoordinate) -> ResponseVector:
    """Response under the separable (cross-term-free) approximation."""
    ang = angular_transform(coord)
    psi = proposed_phases(cfg, np.array([ang.phi_s]), np.array([ang.omega_s]),
                          np.array([coord.range_m]))[0]
    return ResponseVector(np.exp(1j * psi), MODEL_PROPOSED)


def far_field_response(cfg: ArrayConfig, angular: AngularPair) -> ResponseVector:
    """Plane-wave response for a sine-space direction on the unit disk."""
    s = angular.phi_s**2 + angular.omega_s**2
    if s > 1.0 + 1e-12:
        raise ValueError(f"phi_s^2 + omega_s^2 = {s} exceeds 1")
    psi = far_field_phases(cfg, np.array([angular.phi_s]), np.array([angular.omega_s]))[0]
    return ResponseVector(np.exp(1j * psi), MODEL_FAR_FIELD)


def _entries(v) -> np.ndarray:
    return v.entries if isinstance(v, ResponseVector) else np.asarray(v)


def similarity(a, b) -> float:
    """Normalized absolute inner product |a^H b| / M, between 0 and 1.

    Accepts ResponseVector or plain complex arrays of equal length.
    """
    va, vb = _entries(a), _entries(b)
    if va.shape != vb.shape:
        raise ValueError(f"length mismatch: {va.shape} vs {vb.shape}")
    return float(np.abs(np.vdot(va, vb)) / va.size)
