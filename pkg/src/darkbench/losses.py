"""Training objectives as plain evaluable functions: Sobel edge-content
loss, token-level cross-entropy, and their weighted aggregations, plus a
finite-difference gradient checker.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage, signal

from .imgcore import LUMA_WEIGHTS, to_grayscale

SOBEL_X = np.array([[-1.0, 0.0, 1.0], [-2.0, 0.0, 2.0], [-1.0, 0.0, 1.0]])
SOBEL_Y = SOBEL_X.T


@dataclass(frozen=True)
class LossWeights:
    """Aggregation weights: phi scales the edge term, omega the OCR term."""

    phi: float = 1.0e5
    omega: float = 100.0

    def __post_init__(self):
        if self.phi < 0 or self.omega < 0:
            raise ValueError(f"weights must be >= 0, got phi={self.phi} omega={self.omega}")


def _luma(img) -> np.ndarray:
    a = np.asarray(img, dtype=np.float64)
    if a.ndim == 3 and a.shape[2] == 3:
        return to_grayscale(a)
    if a.ndim == 3 and a.shape[2] == 1:
        return a[:, :, 0]
    return a


def sobel_edges(img) -> np.ndarray:
    """Gradient-magnitude edge map sqrt(Gx^2 + Gy^2) with the 3x3 Sobel
    kernels and replicate borders.  RGB input is converted to luma first."""
    g = _luma(img)
    gx = ndimage.correlate(g, SOBEL_X, mode="nearest")
    gy = ndimage.correlate(g, SOBEL_Y, mode="nearest")
    return np.hypot(gx, gy)


def edge_content_loss(out, low) -> float:
    """Mean squared difference between the two images' Sobel edge maps."""
    a, b = np.asarray(out), np.asarray(low)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    d = sobel_edges(a) - sobel_edges(b)
    return float(np.mean(d * d))


def _sobel_components(gray):
    gx = ndimage.correlate(gray, SOBEL_X, mode="nearest")
    gy = ndimage.correlate(gray, SOBEL_Y, mode="nearest")
    return gx, gy, np.hypot(gx, gy)


def _fold_edge_pad(gpad: np.ndarray, radius: int, h: int, w: int) -> np.ndarray:
    # adjoint of np.pad(mode="edge"): padded cells accumulate onto the
    # border pixels they replicated
    rows = np.clip(np.arange(h + 2 * radius) - radius, 0, h - 1)
    cols = np.clip(np.arange(w + 2 * radius) - radius, 0, w - 1)
    g = np.zeros((h, w))
    np.add.at(g, (rows[:, None], cols[None, :]), gpad)
    return g


def edge_content_loss_grad(out, low) -> np.ndarray:
    """Analytic gradient of edge_content_loss with respect to `out`."""
    a, b = np.asarray(out, dtype=np.float64), np.asarray(low, dtype=np.float64)
    if a.shape != b.shape:
        raise ValueError(f"shape mismatch: {a.shape} vs {b.shape}")
    ga, gb = _luma(a), _luma(b)
    gx, gy, mag = _sobel_components(ga)
    _, _, mag_b = _sobel_components(gb)
    h, w = ga.shape
    dmag = (2.0 / mag.size) * (mag - mag_b)
    with np.errstate(invalid="ignore", divide="ignore"):
        cx = np.where(mag > 0, dmag * gx / mag, 0.0)
        cy = np.where(mag > 0, dmag * gy / mag, 0.0)
    # adjoint of valid correlation on the edge-padded array is a full
    # convolution, then the padding fold
    dpad = signal.convolve2d(cx, SOBEL_X, mode="full") + signal.convolve2d(
        cy, SOBEL_Y, mode="full"
    )
    dgray = _fold_edge_pad(dpad, 1, h, w)
    if a.ndim == 3 and a.shape[2] == 3:
        return dgray[:, :, None] * LUMA_WEIGHTS
    if a.ndim == 3:
        return dgray[:, :, None]
    return dgray


def ocr_cross_entropy(logits, targets) -> float:
    """Mean token-level cross-entropy of decoder logits (N_t, V) against
    integer target indices, computed in the max-subtracted stable form."""
    z = np.asarray(logits, dtype=np.float64)
    y = np.asarray(targets, dtype=np.int64)
    if z.ndim != 2 or z.shape[0] < 1 or z.shape[1] < 2:
        raise ValueError(f"logits must be (N_t >= 1, V >= 2), got shape {z.shape}")
    if not np.all(np.isfinite(z)):
        raise ValueError("logits must be finite")
    if y.shape != (z.shape[0],):
        raise ValueError(f"need {z.shape[0]} targets, got shape {y.shape}")
    if np.any(y < 0) or np.any(y >= z.shape[1]):
        raise ValueError("target index out of vocabulary range")
    m = z.max(axis=1, keepdims=True)
    lse = m[:, 0] + np.log(np.exp(z - m).sum(axis=1))
    return float(np.mean(lse - z[np.arange(z.shape[0]), y]))


def llie_loss(out, low, sub_terms, phi: float) -> float:
    """Enhancement objective: caller-supplied sub-term values plus the
    phi-weighted edge-content term."""
    if phi < 0:
        raise ValueError(f"phi must be >= 0, got {phi}")
    return float(sum(sub_terms) + phi * edge_content_loss(out, low))


def total_loss(llie: float, ocr: float, omega: float) -> float:
    """Combined objective llie + omega * ocr."""
    if omega < 0:
        raise ValueError(f"omega must be >= 0, got {omega}")
    return float(llie + omega * ocr)


def numeric_gradient_check(f, grad_fn, img, n_probes: int, step: float = 1e-5,
                           seed: int = 0) -> float:
    """Worst relative error between central differences of `f` and the
    analytic gradient `grad_fn(img)` at `n_probes` random sample positions.
    """
    if n_probes < 1:
        raise ValueError(f"n_probes must be >= 1, got {n_probes}")
    a = np.asarray(img, dtype=np.float64)
    analytic = np.asarray(grad_fn(a), dtype=np.float64)
    if analytic.shape != a.shape:
        raise ValueError(f"gradient shape {analytic.shape} != image shape {a.shape}")
    rng = np.random.Generator(np.random.Philox(key=int(seed)))
    probes = rng.choice(a.size, size=min(n_probes, a.size), replace=False)
    worst = 0.0
    for idx in probes:
        p = a.copy()
        p.flat[idx] += step
        f_plus = f(p)
        p.flat[idx] -= 2.0 * step
        f_minus = f(p)
        numeric = (f_plus - f_minus) / (2.0 * step)
        ana = analytic.flat[idx]
        rel = abs(numeric - ana) / max(abs(numeric), abs(ana), 1e-12)
        worst = max(worst, rel)
    return worst
