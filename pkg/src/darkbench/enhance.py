"""Adaptive adjustment curve (AAC) enhancement.

The curve nudges each sample s in [0, 1] by
    s + alpha * (1/beta) * sigmoid(-s + beta - 0.1) * s * (beta - s)
raising intensities below the threshold beta and suppressing those above
it, with alpha controlling the strength.  It is applied per channel and
iterated a fixed number of times.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass, field

import numpy as np

DEFAULT_ITERATIONS = 8

# Parameter box accepted by default validation. Note: the curve is NOT
# monotone over this whole box (positive alpha with small beta overshoots
# past the threshold); use aac_monotonicity_check to gate parameters.
ALPHA_BOX = (-1.0, 1.0)
BETA_BOX = (0.0, 1.0)  # beta in (0, 1]


def _sigmoid(x):
    return 1.0 / (1.0 + np.exp(-np.asarray(x, dtype=np.float64)))


@dataclass(frozen=True, eq=False)
class AacParams:
    """Per-iteration, per-channel (alpha, beta) pairs, shape (iterations, channels)."""

    alpha: np.ndarray
    beta: np.ndarray
    relax_box: bool = field(default=False)

    def __post_init__(self):
        a = np.atleast_2d(np.asarray(self.alpha, dtype=np.float64))
        b = np.atleast_2d(np.asarray(self.beta, dtype=np.float64))
        if a.shape != b.shape:
            raise ValueError(f"alpha shape {a.shape} != beta shape {b.shape}")
        if a.shape[0] < 1:
            raise ValueError("at least one iteration required")
        if np.any(b == 0):
            raise ValueError("beta must be nonzero (it appears as 1/beta)")
        if not self.relax_box:
            if np.any((a < ALPHA_BOX[0]) | (a > ALPHA_BOX[1])):
                raise ValueError(
                    f"alpha outside [{ALPHA_BOX[0]}, {ALPHA_BOX[1]}]; "
                    "pass relax_box=True to override"
                )
            if np.any((b <= BETA_BOX[0]) | (b > BETA_BOX[1])):
                raise ValueError(
                    f"beta outside ({BETA_BOX[0]}, {BETA_BOX[1]}]; "
                    "pass relax_box=True to override"
                )
        object.__setattr__(self, "alpha", a)
        object.__setattr__(self, "beta", b)

    @property
    def iterations(self) -> int:
        return self.alpha.shape[0]

    @property
    def channels(self) -> int:
        return self.alpha.shape[1]

    @classmethod
    def uniform(cls, alpha: float, beta: float, iterations: int = DEFAULT_ITERATIONS,
                channels: int = 3, relax_box: bool = False) -> "AacParams":
        """Same (alpha, beta) for every iteration and channel."""
        shape = (iterations, channels)
        return cls(np.full(shape, alpha), np.full(shape, beta), relax_box)

    @classmethod
    def from_csv(cls, path, relax_box: bool = False) -> "AacParams":
        """Load `iter,channel,alpha,beta` rows (optional header) into params.

        Every (iteration, channel) cell up to the maximum indices present
        must be covered exactly once.
        """
        cells = {}
        with open(path, newline="", encoding="utf-8") as f:
            for row in csv.reader(f):
                if not row or not row[0].strip():
                    continue
                try:
                    i, c = int(row[0]), int(row[1])
                except ValueError:
                    continue  # header row
                if len(row) != 4:
                    raise ValueError(f"{path}: expected 4 columns, got {row}")
                if (i, c) in cells:
                    raise ValueError(f"{path}: duplicate entry for iter {i} channel {c}")
                cells[(i, c)] = (float(row[2]), float(row[3]))
        if not cells:
            raise ValueError(f"{path}: no parameter rows found")
        n_iter = max(i for i, _ in cells) + 1
        n_chan = max(c for _, c in cells) + 1
        alpha = np.zeros((n_iter, n_chan))
        beta = np.ones((n_iter, n_chan))
        for i in range(n_iter):
            for c in range(n_chan):
                if (i, c) not in cells:
                    raise ValueError(f"{path}: missing entry for iter {i} channel {c}")
                alpha[i, c], beta[i, c] = cells[(i, c)]
        return cls(alpha, beta, relax_box)


def aac_scalar(s, alpha: float, beta: float, clamp: bool = True):
    """One curve step on intensities in [0, 1]; clamps back to [0, 1].

    Vectorized over `s`. Set clamp=False for the raw curve value.
    """
    if beta == 0:
        raise ValueError("beta must be nonzero")
    s = np.asarray(s, dtype=np.float64)
    out = s + alpha * (1.0 / beta) * _sigmoid(-s + beta - 0.1) * s * (beta - s)
    if clamp:
        out = np.clip(out, 0.0, 1.0)
    return out if out.ndim else float(out)


def aac_scalar_derivative(s, alpha: float, beta: float):
    """Analytic derivative of the unclamped curve with respect to s."""
    if beta == 0:
        raise ValueError("beta must be nonzero")
    s = np.asarray(s, dtype=np.float64)
    sig = _sigmoid(-s + beta - 0.1)
    dsig = -sig * (1.0 - sig)  # d/ds sigmoid(-s + beta - 0.1)
    out = 1.0 + (alpha / beta) * (dsig * s * (beta - s) + sig * (beta - 2.0 * s))
    return out if out.ndim else float(out)


def aac_apply(img, params: AacParams) -> np.ndarray:
    """Iterate the curve over every pixel, per channel."""
    a = np.asarray(img, dtype=np.float64)
    n_chan = 1 if a.ndim == 2 else a.shape[2]
    if n_chan != params.channels:
        raise ValueError(
            f"image has {n_chan} channels but params expect {params.channels}"
        )
    out = a.copy()
    for i in range(params.iterations):
        al = params.alpha[i] if a.ndim == 3 else params.alpha[i, 0]
        be = params.beta[i] if a.ndim == 3 else params.beta[i, 0]
        out = np.clip(
            out + al / be * _sigmoid(-out + be - 0.1) * out * (be - out), 0.0, 1.0
        )
    return out


def aac_apply_derivative(img, params: AacParams) -> np.ndarray:
    """Elementwise d(output)/d(input) of aac_apply via the chain rule.

    The clamp contributes a zero factor wherever an iteration's raw value
    leaves (0, 1), so the result is meaningful away from clamp boundaries.
    """
    a = np.asarray(img, dtype=np.float64)
    n_chan = 1 if a.ndim == 2 else a.shape[2]
    if n_chan != params.channels:
        raise ValueError(
            f"image has {n_chan} channels but params expect {params.channels}"
        )
    s = a.copy()
    deriv = np.ones_like(s)
    for i in range(params.iterations):
        al = params.alpha[i] if a.ndim == 3 else params.alpha[i, 0]
        be = params.beta[i] if a.ndim == 3 else params.beta[i, 0]
        sig = _sigmoid(-s + be - 0.1)
        raw = s + al / be * sig * s * (be - s)
        dsig = -sig * (1.0 - sig)
        step = 1.0 + al / be * (dsig * s * (be - s) + sig * (be - 2.0 * s))
        deriv *= np.where((raw > 0.0) & (raw < 1.0), step, 0.0)
        s = np.clip(raw, 0.0, 1.0)
    return deriv


def aac_monotonicity_check(alpha: float, beta: float, grid: int = 4096) -> bool:
    """True iff the raw (unclamped) curve is non-decreasing on a uniform grid.

    Used as a validation gate: enhancement parameters that fail this check
    reorder intensities and can invert stroke contrast.
    """
    if grid < 2:
        raise ValueError(f"grid must be >= 2, got {grid}")
    s = np.linspace(0.0, 1.0, grid)
    v = aac_scalar(s, alpha, beta, clamp=False)
    return bool(np.all(np.diff(v) >= 0.0))
