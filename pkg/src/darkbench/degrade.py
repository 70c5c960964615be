"""Well-lit to low-light synthesis: retinex normalization, linear and gamma
darkening, seeded AWGN, vignetting, and optional Gaussian blur, composed in
a fixed pipeline order.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass

import numpy as np

from . import imgcore

SSR_EPS = 1.0 / 255.0


@dataclass(frozen=True)
class DarkenConfig:
    """Parameters of the six-stage darkening pipeline.

    `gamma=5` follows the usual strong non-linear suppression setting; the
    remaining defaults are toolkit choices and freely overridable.  A
    non-finite `vignette_sigma_frac` yields an all-ones mask (vignetting
    disabled); `blur_sigma=0` disables the final blur stage.
    """

    k: float = 0.4
    gamma: float = 5.0
    noise_level: float = 0.03
    ssr_sigma: float = 30.0
    vignette_sigma_frac: float = 0.6
    blur_sigma: float = 0.8
    blur_size: int = 5
    seed: int = 0

    def __post_init__(self):
        if not 0.0 < self.k <= 1.0:
            raise ValueError(f"k must be in (0, 1], got {self.k}")
        if self.gamma < 1.0:
            raise ValueError(f"gamma must be >= 1, got {self.gamma}")
        if not 0.0 <= self.noise_level < 1.0:
            raise ValueError(f"noise_level must be in [0, 1), got {self.noise_level}")
        if self.ssr_sigma <= 0:
            raise ValueError(f"ssr_sigma must be > 0, got {self.ssr_sigma}")
        if self.vignette_sigma_frac <= 0:
            raise ValueError(
                f"vignette_sigma_frac must be > 0, got {self.vignette_sigma_frac}"
            )
        if self.blur_sigma < 0:
            raise ValueError(f"blur_sigma must be >= 0, got {self.blur_sigma}")
        if self.blur_size < 1 or self.blur_size % 2 == 0:
            raise ValueError(f"blur_size must be odd and >= 1, got {self.blur_size}")
        if self.seed < 0:
            raise ValueError(f"seed must be >= 0, got {self.seed}")

    def to_dict(self) -> dict:
        return asdict(self)


def ssr_normalize(img, ssr_sigma: float) -> np.ndarray:
    """Single-scale retinex normalization.

    Per channel: r = log(I + eps) - log(G_sigma * I + eps), then min-max
    rescaled to [0, 1].  A channel whose log-ratio is constant (e.g. any
    constant input channel) maps to 0.5.
    """
    if ssr_sigma <= 0:
        raise ValueError(f"ssr_sigma must be > 0, got {ssr_sigma}")
    a = imgcore._as_image(img)
    surround = imgcore.gaussian_blur(a, ssr_sigma)
    r = np.log(a + SSR_EPS) - np.log(surround + SSR_EPS)
    if r.ndim == 2:
        return _rescale_channel(r)
    out = np.empty_like(r)
    for c in range(r.shape[2]):
        out[:, :, c] = _rescale_channel(r[:, :, c])
    return out


def _rescale_channel(r: np.ndarray) -> np.ndarray:
    # constant input channels give an exactly constant log-ratio
    lo, hi = r.min(), r.max()
    if hi == lo:
        return np.full_like(r, 0.5)
    return (r - lo) / (hi - lo)


def linear_darken(img, k: float) -> np.ndarray:
    """Scale every sample by the darkening factor k in (0, 1]."""
    if not 0.0 < k <= 1.0:
        raise ValueError(f"k must be in (0, 1], got {k}")
    return np.asarray(img, dtype=np.float64) * k


def gamma_darken(img, gamma: float) -> np.ndarray:
    """Raise every sample to the power gamma (gamma >= 1)."""
    if gamma < 1.0:
        raise ValueError(f"gamma must be >= 1, got {gamma}")
    a = np.asarray(img, dtype=np.float64)
    if np.any(a < 0):
        raise ValueError("gamma_darken requires non-negative samples; clip first")
    if gamma == 1.0:
        return a.copy()
    return np.power(a, gamma)


def add_noise(img, noise_level: float, seed: int) -> np.ndarray:
    """Add seeded white Gaussian noise with std `noise_level` (full-scale
    fraction), then clip to [0, 1]."""
    if not 0.0 <= noise_level < 1.0:
        raise ValueError(f"noise_level must be in [0, 1), got {noise_level}")
    a = np.asarray(img, dtype=np.float64)
    if noise_level == 0:
        return a.copy()
    n = imgcore.sample_awgn_field(a.shape, noise_level, seed)
    return imgcore.clip(a + n)


def vignette_mask(width: int, height: int, sigma_frac: float) -> np.ndarray:
    """Peak-normalized Gaussian falloff mask, max value 1 at the center.

    sigma is `sigma_frac` times the image half-diagonal in pixels; an
    infinite sigma_frac gives an all-ones mask.
    """
    if sigma_frac <= 0:
        raise ValueError(f"sigma_frac must be > 0, got {sigma_frac}")
    if width < 1 or height < 1:
        raise ValueError(f"mask dimensions must be >= 1, got {width}x{height}")
    cy, cx = (height - 1) / 2.0, (width - 1) / 2.0
    half_diag = np.hypot(cx, cy)
    if not np.isfinite(sigma_frac) or half_diag == 0:
        return np.ones((height, width))
    sigma = sigma_frac * half_diag
    yy = (np.arange(height) - cy) ** 2
    xx = (np.arange(width) - cx) ** 2
    m = np.exp(-(yy[:, None] + xx[None, :]) / (2.0 * sigma * sigma))
    return m / m.max()


def apply_vignette(img, mask) -> np.ndarray:
    """Multiply each channel by a single-channel attenuation mask."""
    a = imgcore._as_image(img)
    m = np.asarray(mask, dtype=np.float64)
    if m.ndim != 2 or m.shape != a.shape[:2]:
        raise ValueError(f"mask shape {m.shape} does not match image {a.shape[:2]}")
    return a * m if a.ndim == 2 else a * m[:, :, None]


def darken_pipeline(img, cfg: DarkenConfig) -> np.ndarray:
    """Run the full darkening pipeline in its fixed stage order.

    normalize -> linear darken -> gamma darken -> noise -> vignette ->
    optional blur, with a final clip to [0, 1].
    """
    a = imgcore._as_image(img)
    out = ssr_normalize(a, cfg.ssr_sigma)
    out = linear_darken(out, cfg.k)
    out = gamma_darken(out, cfg.gamma)
    out = add_noise(out, cfg.noise_level, cfg.seed)
    mask = vignette_mask(a.shape[1], a.shape[0], cfg.vignette_sigma_frac)
    out = apply_vignette(out, mask)
    if cfg.blur_sigma > 0:
        out = imgcore.convolve(out, imgcore.gaussian_kernel(cfg.blur_sigma, cfg.blur_size))
    return imgcore.clip(out)
