"""Numerical lighting math: real spherical harmonics, Monte-Carlo and
quadrature SH projection, cosine-weighted transport with cone occluders,
diffuse image-based lighting, and a brute-force rendering oracle.

Directions are unit 3-vectors.  Environment maps are equirectangular
rasters, rows spanning polar angle theta in [0, pi] and columns azimuth
phi in [0, 2*pi), with non-negative radiance in 1 or 3 channels.

SH convention: real, orthonormal over the sphere, Condon-Shortley phase
omitted.  A coefficient vector of order L has (L+1)**2 entries indexed by
sh_index(l, m) = l*l + l + m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np


def normalize(v) -> np.ndarray:
    v = np.asarray(v, dtype=np.float64)
    n = np.linalg.norm(v)
    if n == 0:
        raise ValueError("cannot normalize a zero vector")
    return v / n


def sh_index(l: int, m: int) -> int:
    return l * l + l + m


def sh_order(coeffs) -> int:
    """Band order L of a coefficient vector with (L+1)**2 entries."""
    n = np.asarray(coeffs).shape[-1]
    order = math.isqrt(n) - 1
    if (order + 1) ** 2 != n:
        raise ValueError(f"coefficient count {n} is not a perfect square")
    return order


def _sh_basis(order: int, dirs: np.ndarray) -> np.ndarray:
    """All real SH values up to `order` for unit rows of `dirs`: (N, (L+1)**2)."""
    dirs = np.atleast_2d(np.asarray(dirs, dtype=np.float64))
    x, y, z = dirs[:, 0], dirs[:, 1], dirs[:, 2]
    n, L = dirs.shape[0], order
    # Associated Legendre P_l^m(cos theta) without the Condon-Shortley phase,
    # by the standard diagonal-then-upward recurrences.
    P = np.zeros((L + 1, L + 1, n))
    sin_t = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    P[0, 0] = 1.0
    for m in range(1, L + 1):
        P[m, m] = (2 * m - 1) * sin_t * P[m - 1, m - 1]
    for m in range(L):
        P[m + 1, m] = (2 * m + 1) * z * P[m, m]
    for m in range(L + 1):
        for l in range(m + 2, L + 1):
            P[l, m] = ((2 * l - 1) * z * P[l - 1, m] - (l + m - 1) * P[l - 2, m]) / (l - m)
    phi = np.arctan2(y, x)
    out = np.empty((n, (L + 1) ** 2))
    for l in range(L + 1):
        for m in range(-l, l + 1):
            am = abs(m)
            k = math.sqrt(
                (2 * l + 1) / (4.0 * math.pi) * math.factorial(l - am) / math.factorial(l + am)
            )
            if m == 0:
                v = k * P[l, 0]
            elif m > 0:
                v = math.sqrt(2.0) * k * np.cos(m * phi) * P[l, m]
            else:
                v = math.sqrt(2.0) * k * np.sin(am * phi) * P[l, am]
            out[:, sh_index(l, m)] = v
    return out


def sh_eval(l: int, m: int, direction):
    """Real orthonormal spherical harmonic Y_l^m at a unit direction."""
    if l < 0 or abs(m) > l:
        raise IndexError(f"invalid SH index (l={l}, m={m})")
    d = np.asarray(direction, dtype=np.float64)
    basis = _sh_basis(l, np.atleast_2d(d))[:, sh_index(l, m)]
    return float(basis[0]) if d.ndim == 1 else basis


def uniform_directions(n: int, seed: int) -> np.ndarray:
    """n unit directions uniform over the sphere, deterministic per seed."""
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    u = rng.random((int(n), 2))
    z = 1.0 - 2.0 * u[:, 0]
    r = np.sqrt(np.maximum(0.0, 1.0 - z * z))
    phi = 2.0 * np.pi * u[:, 1]
    return np.stack([r * np.cos(phi), r * np.sin(phi), z], axis=1)


def _eval_on_dirs(f, dirs: np.ndarray) -> np.ndarray:
    vals = np.asarray(f(dirs), dtype=np.float64)
    if vals.shape == (dirs.shape[0],):
        return vals
    # fall back to per-direction evaluation for non-vectorized callables
    return np.array([float(f(d)) for d in dirs])


_PROJECT_CHUNK = 65536  # keeps the per-chunk basis matrix small


def _accumulate_projection(f, order: int, dirs: np.ndarray, weights) -> np.ndarray:
    acc = np.zeros((order + 1) ** 2)
    for start in range(0, dirs.shape[0], _PROJECT_CHUNK):
        block = dirs[start:start + _PROJECT_CHUNK]
        vals = _eval_on_dirs(f, block)
        if weights is not None:
            vals = vals * weights[start:start + _PROJECT_CHUNK]
        acc += _sh_basis(order, block).T @ vals
    return acc


def project_to_sh(f, order: int, samples: int, seed: int) -> np.ndarray:
    """Monte-Carlo SH projection of a spherical function.

    c_{l,m} = (4*pi / samples) * sum_j f(w_j) * Y_l^m(w_j) over uniform
    directions w_j.  `f` may accept an (N, 3) array (preferred) or a single
    direction.
    """
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    if samples < 1:
        raise ValueError(f"samples must be >= 1, got {samples}")
    dirs = uniform_directions(samples, seed)
    return (4.0 * np.pi / samples) * _accumulate_projection(f, order, dirs, None)


def quad_directions(quad_steps: int) -> tuple[np.ndarray, np.ndarray]:
    """Midpoint theta x phi sphere grid: (directions, solid-angle weights).

    quad_steps cells span theta; 2*quad_steps cells span phi.
    """
    if quad_steps < 1:
        raise ValueError(f"quad_steps must be >= 1, got {quad_steps}")
    nt, np_ = int(quad_steps), 2 * int(quad_steps)
    dt, dp = np.pi / nt, 2.0 * np.pi / np_
    theta = (np.arange(nt) + 0.5) * dt
    phi = (np.arange(np_) + 0.5) * dp
    tt, pp = np.meshgrid(theta, phi, indexing="ij")
    st = np.sin(tt)
    dirs = np.stack([st * np.cos(pp), st * np.sin(pp), np.cos(tt)], axis=-1)
    return dirs.reshape(-1, 3), (st * dt * dp).reshape(-1)


def project_to_sh_quad(f, order: int, quad_steps: int) -> np.ndarray:
    """Deterministic SH projection by midpoint quadrature (no sampling noise)."""
    if order < 0:
        raise ValueError(f"order must be >= 0, got {order}")
    dirs, w = quad_directions(quad_steps)
    return _accumulate_projection(f, order, dirs, w)


@dataclass(frozen=True)
class SurfacePoint:
    """Shading point: unit normal, per-channel albedo in [0, 1], and a set
    of cone blockers (axis, angular radius in radians) defining visibility."""

    normal: np.ndarray
    albedo: float | np.ndarray = 1.0
    occluders: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "normal", normalize(self.normal))
        rho = np.asarray(self.albedo, dtype=np.float64)
        if np.any(rho < 0) or np.any(rho > 1):
            raise ValueError(f"albedo must be within [0, 1], got {self.albedo}")
        occ = tuple(
            (normalize(axis), float(ang)) for axis, ang in self.occluders
        )
        for _, ang in occ:
            if not 0.0 <= ang <= np.pi:
                raise ValueError(f"occluder radius must be in [0, pi], got {ang}")
        object.__setattr__(self, "occluders", occ)


def visibility(point: SurfacePoint, dirs) -> np.ndarray:
    """1 where a direction escapes every occluder cone, else 0."""
    d = np.atleast_2d(np.asarray(dirs, dtype=np.float64))
    blocked = np.zeros(d.shape[0], dtype=bool)
    for axis, ang in point.occluders:
        blocked |= d @ axis >= math.cos(ang)
    v = np.where(blocked, 0.0, 1.0)
    return v if np.asarray(dirs).ndim > 1 else float(v[0])


def transport_weight(point: SurfacePoint, direction):
    """Visibility-gated clamped cosine: V(w) * max(0, n . w)."""
    d = np.atleast_2d(np.asarray(direction, dtype=np.float64))
    cosw = np.maximum(0.0, d @ point.normal)
    t = np.atleast_1d(visibility(point, d)) * cosw
    return t if np.asarray(direction).ndim > 1 else float(t[0])


def transport_to_sh(point: SurfacePoint, order: int, samples: int, seed: int) -> np.ndarray:
    """Monte-Carlo SH projection of the point's transport function."""
    return project_to_sh(lambda d: transport_weight(point, d), order, samples, seed)


def prt_radiance(transport_coeffs, env_coeffs) -> float:
    """Transport-times-environment integral as an SH coefficient dot product."""
    t = np.asarray(transport_coeffs, dtype=np.float64)
    e = np.asarray(env_coeffs, dtype=np.float64)
    if t.shape != e.shape or sh_order(t) != sh_order(e):
        raise ValueError(f"SH order mismatch: {t.shape} vs {e.shape}")
    return float(t @ e)


def env_eval(env, dirs) -> np.ndarray:
    """Nearest-texel equirectangular lookup for an (N, 3) direction block."""
    a = np.asarray(env, dtype=np.float64)
    if a.ndim not in (2, 3):
        raise ValueError(f"environment map must be 2D or 3D, got shape {a.shape}")
    if np.any(a < 0) or not np.all(np.isfinite(a)):
        raise ValueError("environment radiance must be finite and >= 0")
    d = np.atleast_2d(np.asarray(dirs, dtype=np.float64))
    h, w = a.shape[:2]
    theta = np.arccos(np.clip(d[:, 2], -1.0, 1.0))
    phi = np.arctan2(d[:, 1], d[:, 0]) % (2.0 * np.pi)
    row = np.minimum((theta / np.pi * h).astype(int), h - 1)
    col = (phi / (2.0 * np.pi) * w).astype(int) % w
    return a[row, col]


def _ibl_quadrature(env, point: SurfacePoint, quad_steps: int, occlude: bool):
    if quad_steps < 8:
        raise ValueError(f"quad_steps must be >= 8, got {quad_steps}")
    dirs, w = quad_directions(quad_steps)
    radiance = env_eval(env, dirs)
    gain = np.maximum(0.0, dirs @ point.normal) * w
    if occlude:
        gain = gain * visibility(point, dirs)
    rho = np.asarray(point.albedo, dtype=np.float64)
    if radiance.ndim == 1:
        total = float(radiance @ gain)
    else:
        total = radiance.T @ gain  # per channel
    out = rho / np.pi * total
    return float(out) if np.ndim(out) == 0 else out


def diffuse_ibl(env, point: SurfacePoint, quad_steps: int):
    """Lambertian environment irradiance: (rho/pi) * integral of
    L_env(w) * max(0, w . n) over the sphere, by midpoint quadrature.
    Returns a scalar for 1-channel maps, a length-3 array for RGB."""
    return _ibl_quadrature(env, point, quad_steps, occlude=False)


def render_oracle(env, point: SurfacePoint, quad_steps: int):
    """Ground-truth Lambertian radiance including visibility:
    (rho/pi) * integral of L_env(w) * V(w) * max(0, w . n).

    Shares its quadrature grid with diffuse_ibl, so the two agree to
    machine precision whenever the point is unoccluded."""
    return _ibl_quadrature(env, point, quad_steps, occlude=True)
