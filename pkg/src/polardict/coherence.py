"""Column inner products and dictionary coherence.

Pairwise inner-product magnitudes between dictionary columns are available
through three routes: directly from the generated columns, through the
horizontal-by-vertical factorization that is exact for the separable response
model, and through the Fresnel-integral closed form for same-direction pairs.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass
from typing import TYPE_CHECKING

import numpy as np
from scipy import special

from .geometry import ArrayConfig
from .parallel import block_starts, ordered_map
from .steering import AngularPair, _entries

if TYPE_CHECKING:
    from .sampling import Dictionary

COHERENCE_BLOCK = 512
"Column-block width for pairwise sweeps; fixed so results never depend on threading."


@dataclass(frozen=True)
class CoherenceParams:
    """Fresnel arguments for a same-direction column pair.

    alpha is the product alpha_h * alpha_v; alpha_thr carries the sampling
    threshold when the pair comes from a dictionary context, else None.
    """

    alpha_h: float
    alpha_v: float
    alpha: float
    alpha_thr: float | None = None


@dataclass(frozen=True)
class CoherenceReport:
    """Worst-pair coherence of a dictionary.

    mu is the largest absolute inner product over distinct column pairs;
    normalized_mu = mu / M so that 1 means a fully correlated pair.
    """

    mu: float
    normalized_mu: float
    argmax_pair: tuple[int, int]
    n_columns: int
    method: str

    def to_json(self) -> str:
        return json.dumps({
            "mu": self.mu,
            "normalized_mu": self.normalized_mu,
            "argmax_pair": list(self.argmax_pair),
            "n_columns": self.n_columns,
            "method": self.method,
        }, sort_keys=True)


def inner_product_mag(a, b) -> float:
    """Absolute inner product |a^H b|; equals M for identical unit-modulus columns."""
    va, vb = _entries(a), _entries(b)
    if va.shape != vb.shape:
        raise ValueError(f"length mismatch: {va.shape} vs {vb.shape}")
    return float(np.abs(np.vdot(va, vb)))


def _axis_sum(n: int, spacing: float, wavelength: float, c_p: float, r_p: float,
              c_q: float, r_q: float) -> complex:
    idx = np.arange(n, dtype=float)
    quad = idx * idx * (spacing * spacing / 2.0)
    phase = (2.0 * math.pi / wavelength) * (
        spacing * idx * (c_q - c_p)
        - quad * (1.0 - c_q * c_q) / r_q
        + quad * (1.0 - c_p * c_p) / r_p
    )
    return complex(np.exp(1j * phase).sum())


def factorized_inner_mag(cfg: ArrayConfig, angular_p: AngularPair, r_p: float,
                         angular_q: AngularPair, r_q: float) -> float:
    """|a^H b| of two separable-model columns as |H| * |V|.

    H sums over the m_h horizontal indices with the phi components and both
    ranges; V sums over the m_v vertical indices with the omega components.
    Cost is O(m_h + m_v) instead of O(m_h * m_v).  Infinite ranges are allowed
    and drop the corresponding curvature terms.
    """
    h = _axis_sum(cfg.m_h, cfg.spacing, cfg.wavelength,
                  angular_p.phi_s, r_p, angular_q.phi_s, r_q)
    v = _axis_sum(cfg.m_v, cfg.spacing, cfg.wavelength,
                  angular_p.omega_s, r_p, angular_q.omega_s, r_q)
    return abs(h) * abs(v)


def axis_profiles(cfg: ArrayConfig, phi_s: np.ndarray, omega_s: np.ndarray,
                  range_m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Per-column horizontal (K, m_h) and vertical (K, m_v) phase profiles.

    Cross inner products of the profiles reproduce the factorized column inner
    products: H[p] ^H H[q] is the horizontal sum and likewise for V, so the
    separable-model Gram magnitudes are |H H^H| * |V V^H| elementwise.
    """
    phi = np.asarray(phi_s, dtype=float)
    omega = np.asarray(omega_s, dtype=float)
    r = np.asarray(range_m, dtype=float)
    k = 2.0 * math.pi / cfg.wavelength
    d = cfg.spacing

    i = np.arange(cfg.m_h, dtype=float)
    j = np.arange(cfg.m_v, dtype=float)
    h = np.exp(1j * k * (d * np.outer(phi, i)
                         - (d * d / 2.0) * np.outer((1.0 - phi * phi) / r, i * i)))
    v = np.exp(1j * k * (d * np.outer(omega, j)
                         - (d * d / 2.0) * np.outer((1.0 - omega * omega) / r, j * j)))
    return h, v


def dirichlet_mag(n: int, x: float) -> float:
    """|sin(n pi x) / sin(pi x)| with the limit value n at integer x."""
    if n < 1:
        raise ValueError(f"n must be >= 1, got {n}")
    if abs(x - round(x)) < 1e-12:
        return float(n)
    return abs(math.sin(n * math.pi * x) / math.sin(math.pi * x))


def fresnel_c(alpha: float) -> float:
    """Fresnel cosine integral C(alpha) = int_0^alpha cos(pi t^2 / 2) dt."""
    _, c = special.fresnel(alpha)
    return float(c)


def fresnel_s(alpha: float) -> float:
    """Fresnel sine integral S(alpha) = int_0^alpha sin(pi t^2 / 2) dt."""
    s, _ = special.fresnel(alpha)
    return float(s)


def _fresnel_ratio(alpha: float) -> float:
    # |C(a) + i S(a)| / a -> 1 as a -> 0
    if alpha == 0.0:
        return 1.0
    s, c = special.fresnel(alpha)
    return abs(complex(c, s)) / alpha


def same_angle_coherence_approx(cfg: ArrayConfig, angular: AngularPair, r_p: float,
                                r_q: float) -> tuple[float, CoherenceParams]:
    """Fresnel-integral estimate of |a^H b| for one direction sampled at two ranges.

    Returns M * |C(a_h)+iS(a_h)|/a_h * |C(a_v)+iS(a_v)|/a_v together with the
    Fresnel arguments, where a_h = sqrt(2 m_h^2 d^2 (1-phi^2)/wavelength *
    |1/r_p - 1/r_q|) and a_v uses m_v and (1-omega^2).  Equal ranges give M.
    """
    if r_p <= 0.0 or r_q <= 0.0:
        raise ValueError("ranges must be positive")
    inv_gap = abs(1.0 / r_p - 1.0 / r_q)
    d2 = cfg.spacing * cfg.spacing
    base = 2.0 * d2 * inv_gap / cfg.wavelength
    alpha_h = math.sqrt(base * cfg.m_h**2 * (1.0 - angular.phi_s**2))
    alpha_v = math.sqrt(base * cfg.m_v**2 * (1.0 - angular.omega_s**2))
    mag = cfg.n_antennas * _fresnel_ratio(alpha_h) * _fresnel_ratio(alpha_v)
    return mag, CoherenceParams(alpha_h=alpha_h, alpha_v=alpha_v, alpha=alpha_h * alpha_v)


def _masked_block_max(mags: np.ndarray, start: int) -> tuple[float, tuple[int, int]]:
    # keep only unordered pairs p < q; row r of the block is global column start+r
    rows, cols = mags.shape
    for r in range(rows):
        mags[r, :min(start + r + 1, cols)] = -1.0
    flat = int(np.argmax(mags))
    p, q = divmod(flat, cols)
    return float(mags[p, q]), (start + p, q)


def dictionary_coherence(dictionary: "Dictionary", method: str = "factorized",
                         threads: int = 1) -> CoherenceReport:
    """Worst absolute inner product over all distinct column pairs.

    method "factorized" runs the horizontal*vertical kernel on the column
    profiles (valid because dictionary columns use the separable model);
    "direct" forms the actual column Gram and applies to any model.  Ties are
    broken toward the lexicographically smallest (p, q), independent of the
    thread count.
    """
    k = len(dictionary.columns)
    if k < 2:
        raise ValueError(f"coherence needs at least 2 columns, got {k}")

    if method == "factorized":
        phi = np.array([g.angular.phi_s for g in dictionary.columns])
        omega = np.array([g.angular.omega_s for g in dictionary.columns])
        r = np.array([g.range_m for g in dictionary.columns])
        h, v = axis_profiles(dictionary.config, phi, omega, r)
        hc, vc = h.conj(), v.conj()

        def block_fn(start: int) -> tuple[float, tuple[int, int]]:
            stop = min(start + COHERENCE_BLOCK, k)
            mags = np.abs((hc[start:stop] @ h.T) * (vc[start:stop] @ v.T))
            return _masked_block_max(mags, start)
    elif method == "direct":
        w = dictionary.matrix
        wh = w.conj().T

        def block_fn(start: int) -> tuple[float, tuple[int, int]]:
            stop = min(start + COHERENCE_BLOCK, k)
            mags = np.abs(wh[start:stop] @ w)
            return _masked_block_max(mags, start)
    else:
        raise ValueError(f"unknown method {method!r}")

    best, best_pair = -1.0, (0, 1)
    for val, pair in ordered_map(block_fn, block_starts(k, COHERENCE_BLOCK), threads):
        if val > best:
            best, best_pair = val, pair
    m = dictionary.config.n_antennas
    return CoherenceReport(mu=best, normalized_mu=best / m, argmax_pair=best_pair,
                           n_columns=k, method=method)
