"""Naive reference implementations used as independent test oracles.

Everything here is deliberately written with plain Python loops and the math
module, separate from the vectorized library code it checks.
"""

import cmath
import math

from scipy.integrate import quad


def naive_response(cfg, model, azimuth, elevation, range_m):
    """Per-element response entries via literal formula evaluation."""
    lam, d = cfg.wavelength, cfg.spacing
    ct, st = math.cos(elevation), math.sin(elevation)
    x = (range_m * ct * math.cos(azimuth), range_m * ct * math.sin(azimuth), range_m * st)
    phi = ct * math.sin(azimuth)
    omega = st
    k = 2.0 * math.pi / lam

    out = []
    for m in range(1, cfg.m_h * cfg.m_v + 1):
        i = (m - 1) % cfg.m_h
        j = (m - 1) // cfg.m_h
        if model == "exact":
            rm = math.sqrt(x[0] ** 2 + (x[1] - i * d) ** 2 + (x[2] - j * d) ** 2)
            psi = -k * (rm - range_m)
        elif model == "near_field_expansion":
            lin = i * phi + j * omega
            psi = k * (d * lin - d * d * (i * i + j * j - lin * lin) / (2.0 * range_m))
        elif model == "proposed":
            psi = k * (d * (i * phi + j * omega)
                       - d * d * (i * i * (1 - phi * phi) + j * j * (1 - omega * omega))
                       / (2.0 * range_m))
        elif model == "far_field":
            psi = k * d * (i * phi + j * omega)
        else:
            raise ValueError(model)
        out.append(cmath.exp(1j * psi))
    return out


def naive_inner_mag(a, b):
    """|a^H b| accumulated term by term."""
    total = 0j
    for x, y in zip(a, b, strict=True):
        total += x.conjugate() * y
    return abs(total)


def naive_similarity(a, b):
    return naive_inner_mag(a, b) / len(a)


def fresnel_quad(alpha):
    """(C, S) by adaptive quadrature, absolute tolerance well below 1e-10."""
    c, _ = quad(lambda t: math.cos(0.5 * math.pi * t * t), 0.0, alpha,
                epsabs=1e-13, epsrel=1e-13, limit=400)
    s, _ = quad(lambda t: math.sin(0.5 * math.pi * t * t), 0.0, alpha,
                epsabs=1e-13, epsrel=1e-13, limit=400)
    return c, s


def naive_nearest(points, xyz):
    """Exhaustive nearest-point scan; ties go to the lowest index."""
    best, best_d = 0, float("inf")
    for k, p in enumerate(points):
        dist = math.dist(p, xyz)
        if dist < best_d:
            best, best_d = k, dist
    return best


def count_unit_disk_lattice(m_max, n_max):
    """#{(m, n) : (m/m_max)^2 + (n/n_max)^2 <= 1} by integer enumeration."""
    count = 0
    for n in range(-n_max, n_max + 1):
        for m in range(-m_max, m_max + 1):
            if m * m * n_max * n_max + n * n * m_max * m_max <= m_max * m_max * n_max * n_max:
                count += 1
    return count
