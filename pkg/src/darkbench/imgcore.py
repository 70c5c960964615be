"""Pixel-buffer primitives: color conversion, convolution, Gaussian kernels,
seeded noise, and image/raster file IO.

Images are numpy float64 arrays in the nominal range [0, 1], shaped (H, W)
for grayscale or (H, W, 3) for RGB.  All functions are pure: they never
mutate their inputs.
"""

from __future__ import annotations

import math
from pathlib import Path

import numpy as np
from PIL import Image
from scipy import ndimage

# ITU-R BT.601 luma weights.
LUMA_WEIGHTS = np.array([0.299, 0.587, 0.114])

# DBF1: lossless float raster. Magic line, then "width height channels",
# then little-endian float32 samples in row-major order.
RASTER_MAGIC = b"DBF1\n"

_GOLDEN = np.uint64(0x9E3779B97F4A7C15)
_MIX1 = np.uint64(0xBF58476D1CE4E5B9)
_MIX2 = np.uint64(0x94D049BB133111EB)


def _as_image(img) -> np.ndarray:
    a = np.asarray(img, dtype=np.float64)
    if a.ndim == 2:
        return a
    if a.ndim == 3 and a.shape[2] in (1, 3):
        return a
    raise ValueError(f"expected (H, W) or (H, W, 1|3) image, got shape {a.shape}")


def channel_count(img) -> int:
    a = _as_image(img)
    return 1 if a.ndim == 2 else a.shape[2]


def to_grayscale(img) -> np.ndarray:
    """Convert an RGB image to single-channel luma (BT.601 weights)."""
    a = _as_image(img)
    if a.ndim == 2 or a.shape[2] == 1:
        raise ValueError("already grayscale")
    return a @ LUMA_WEIGHTS


def clip(img, lo: float = 0.0, hi: float = 1.0) -> np.ndarray:
    """Clamp every sample into [lo, hi]."""
    if lo >= hi:
        raise ValueError(f"clip bounds must satisfy lo < hi, got [{lo}, {hi}]")
    return np.clip(np.asarray(img, dtype=np.float64), lo, hi)


def _gauss_weights_1d(sigma: float, radius: int) -> np.ndarray:
    x = np.arange(-radius, radius + 1, dtype=np.float64)
    w = np.exp(-(x * x) / (2.0 * sigma * sigma))
    return w / w.sum()


def gaussian_kernel(sigma: float, size: int) -> np.ndarray:
    """Normalized 2D Gaussian kernel as the product of two 1D kernels.

    Parameters
    ----------
    sigma : positive standard deviation in pixels
    size : odd kernel side length

    Returns
    -------
    (size, size) array with strictly positive weights summing to 1.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    if size < 1 or size % 2 == 0:
        raise ValueError(f"size must be odd and >= 1, got {size}")
    w1 = _gauss_weights_1d(float(sigma), size // 2)
    return np.outer(w1, w1)


def convolve(img, kernel) -> np.ndarray:
    """Per-channel 2D convolution with replicate (clamp-to-edge) borders.

    Output dimensions equal input dimensions.
    """
    a = _as_image(img)
    k = np.asarray(kernel, dtype=np.float64)
    if k.ndim != 2 or k.shape[0] != k.shape[1] or k.shape[0] % 2 == 0:
        raise ValueError(f"kernel must be odd and square, got shape {k.shape}")
    if a.ndim == 2:
        return ndimage.convolve(a, k, mode="nearest")
    out = np.empty_like(a)
    for c in range(a.shape[2]):
        out[:, :, c] = ndimage.convolve(a[:, :, c], k, mode="nearest")
    return out


def gaussian_blur(img, sigma: float) -> np.ndarray:
    """Separable Gaussian blur, replicate borders, kernel radius ceil(3*sigma).

    Equivalent to `convolve` with `gaussian_kernel(sigma, 2*ceil(3*sigma)+1)`
    but linear in the kernel radius instead of quadratic.
    """
    if sigma <= 0:
        raise ValueError(f"sigma must be > 0, got {sigma}")
    a = _as_image(img)
    w1 = _gauss_weights_1d(float(sigma), math.ceil(3.0 * sigma))

    def blur2d(ch):
        t = ndimage.correlate1d(ch, w1, axis=0, mode="nearest")
        return ndimage.correlate1d(t, w1, axis=1, mode="nearest")

    if a.ndim == 2:
        return blur2d(a)
    out = np.empty_like(a)
    for c in range(a.shape[2]):
        out[:, :, c] = blur2d(a[:, :, c])
    return out


def _splitmix64(idx: np.ndarray, seed: int) -> np.ndarray:
    """Counter-based splitmix64 stream: value i depends only on (seed, i)."""
    z = np.uint64(int(seed) & 0xFFFFFFFFFFFFFFFF) + (idx + np.uint64(1)) * _GOLDEN
    z = (z ^ (z >> np.uint64(30))) * _MIX1
    z = (z ^ (z >> np.uint64(27))) * _MIX2
    return z ^ (z >> np.uint64(31))


def derive_seed(seed: int, index: int) -> int:
    """Stable per-item seed from a master seed, independent of visit order."""
    if index < 0:
        raise ValueError(f"index must be >= 0, got {index}")
    h = _splitmix64(np.asarray([index], dtype=np.uint64), seed)
    return int(h[0])


def sample_awgn_field(shape, sigma: float, seed: int) -> np.ndarray:
    """i.i.d. zero-mean Gaussian field, std `sigma`, deterministic per seed.

    Each sample is produced by a Box-Muller transform over a counter-based
    generator keyed by (seed, sample index), so the field is reproducible
    regardless of evaluation order or chunking.
    """
    if sigma < 0:
        raise ValueError(f"sigma must be >= 0, got {sigma}")
    shape = tuple(int(s) for s in (shape if np.iterable(shape) else (shape,)))
    n = int(np.prod(shape))
    if sigma == 0 or n == 0:
        return np.zeros(shape)
    h = _splitmix64(np.arange(2 * n, dtype=np.uint64), seed)
    # u1 in (0, 1] keeps the log finite; u2 in [0, 1).
    u1 = ((h[0::2] >> np.uint64(11)).astype(np.float64) + 1.0) * 2.0**-53
    u2 = (h[1::2] >> np.uint64(11)).astype(np.float64) * 2.0**-53
    z = np.sqrt(-2.0 * np.log(u1)) * np.cos(2.0 * np.pi * u2)
    return (sigma * z).reshape(shape)


def load_image(path) -> np.ndarray:
    """Load an 8-bit PNG/JPEG as float64 samples in [0, 1]."""
    with Image.open(path) as im:
        if im.mode == "L":
            arr = np.asarray(im, dtype=np.float64)
        else:
            arr = np.asarray(im.convert("RGB"), dtype=np.float64)
    return arr / 255.0


def save_image(img, path) -> None:
    """Save to 8-bit PNG/JPEG: samples are clipped then rounded to 0..255."""
    a = clip(_as_image(img))
    if a.ndim == 3 and a.shape[2] == 1:
        a = a[:, :, 0]
    q = np.round(a * 255.0).astype(np.uint8)
    Image.fromarray(q).save(path)


def save_raster(img, path) -> None:
    """Write the lossless DBF1 float raster format."""
    a = _as_image(img)
    h, w = a.shape[:2]
    c = 1 if a.ndim == 2 else a.shape[2]
    with open(path, "wb") as f:
        f.write(RASTER_MAGIC)
        f.write(f"{w} {h} {c}\n".encode("ascii"))
        f.write(np.ascontiguousarray(a, dtype="<f4").tobytes())


def load_raster(path) -> np.ndarray:
    """Read a DBF1 float raster written by `save_raster`."""
    with open(path, "rb") as f:
        magic = f.read(len(RASTER_MAGIC))
        if magic != RASTER_MAGIC:
            raise ValueError(f"{path}: not a DBF1 raster")
        parts = f.readline().split()
        if len(parts) != 3:
            raise ValueError(f"{path}: malformed DBF1 header")
        w, h, c = (int(p) for p in parts)
        if w < 1 or h < 1 or c not in (1, 3):
            raise ValueError(f"{path}: bad DBF1 dimensions {w}x{h}x{c}")
        data = np.frombuffer(f.read(4 * w * h * c), dtype="<f4")
    if data.size != w * h * c:
        raise ValueError(f"{path}: truncated DBF1 payload")
    a = data.astype(np.float64)
    return a.reshape(h, w) if c == 1 else a.reshape(h, w, c)


def file_sha256(path) -> str:
    import hashlib

    return hashlib.sha256(Path(path).read_bytes()).hexdigest()
