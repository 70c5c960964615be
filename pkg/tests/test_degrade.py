import math

import numpy as np
import pytest

from darkbench import degrade
from darkbench.degrade import DarkenConfig


def rand_img(shape, seed=0):
    return np.random.default_rng(seed).random(shape)


def identity_config(**overrides):
    base = dict(k=1.0, gamma=1.0, noise_level=0.0, ssr_sigma=2.0,
                vignette_sigma_frac=math.inf, blur_sigma=0.0, blur_size=1, seed=0)
    base.update(overrides)
    return DarkenConfig(**base)


# --- ssr_normalize ---

def ssr_reference(img, sigma):
    """Straight-line re-implementation: naive 2D convolution for the
    surround, then log ratio and per-channel min-max rescale."""
    eps = 1.0 / 255.0
    radius = math.ceil(3 * sigma)
    k = np.array([[math.exp(-(u * u + v * v) / (2 * sigma * sigma))
                   for v in range(-radius, radius + 1)]
                  for u in range(-radius, radius + 1)])
    k /= k.sum()
    h, w = img.shape
    padded = np.pad(img, radius, mode="edge")
    surround = np.zeros_like(img)
    for i in range(h):
        for j in range(w):
            surround[i, j] = np.sum(padded[i:i + 2 * radius + 1, j:j + 2 * radius + 1] * k)
    r = np.log(img + eps) - np.log(surround + eps)
    lo, hi = r.min(), r.max()
    if hi == lo:
        return np.full_like(r, 0.5)
    return (r - lo) / (hi - lo)


def test_ssr_constant_image_maps_to_half():
    out = degrade.ssr_normalize(np.full((10, 12, 3), 0.25), ssr_sigma=4.0)
    assert np.all(out == 0.5)


def test_ssr_output_spans_unit_range_per_channel():
    out = degrade.ssr_normalize(rand_img((20, 20, 3), seed=1), ssr_sigma=3.0)
    for c in range(3):
        assert out[:, :, c].min() == 0.0
        assert out[:, :, c].max() == 1.0


def test_ssr_matches_reference_implementation():
    img = np.zeros((8, 8))
    img[:, 4:] = 1.0
    out = degrade.ssr_normalize(img, ssr_sigma=2.0)
    ref = ssr_reference(img, 2.0)
    assert np.max(np.abs(out - ref)) < 1e-6


def test_ssr_rejects_nonpositive_sigma():
    with pytest.raises(ValueError):
        degrade.ssr_normalize(rand_img((4, 4)), 0.0)


# --- linear_darken ---

def test_linear_darken_identity_at_one():
    img = rand_img((6, 6, 3))
    assert np.array_equal(degrade.linear_darken(img, 1.0), img)


def test_linear_darken_arithmetic():
    out = degrade.linear_darken(np.array([[0.8]]), 0.3)
    assert abs(out[0, 0] - 0.24) < 1e-15


def test_linear_darken_scales_mean_exactly():
    img = rand_img((16, 16), seed=2)
    out = degrade.linear_darken(img, 0.5)
    assert out.mean() == pytest.approx(0.5 * img.mean(), abs=1e-15)


def test_linear_darken_rejects_out_of_range_k():
    for k in (0.0, -0.5, 1.5):
        with pytest.raises(ValueError):
            degrade.linear_darken(rand_img((4, 4)), k)


def test_linear_darken_order_preserving():
    s = np.sort(rand_img((100,), seed=3))
    out = degrade.linear_darken(s, 0.7)
    assert np.all(np.diff(out) >= 0)


# --- gamma_darken ---

def test_gamma_one_is_identity():
    img = rand_img((6, 6))
    assert np.array_equal(degrade.gamma_darken(img, 1.0), img)


def test_gamma_five_on_half():
    assert degrade.gamma_darken(np.array([[0.5]]), 5.0)[0, 0] == 0.03125


def test_gamma_fixed_points():
    img = np.array([[0.0, 1.0]])
    for g in (1.0, 2.0, 5.0, 9.0):
        assert np.array_equal(degrade.gamma_darken(img, g), img)


def test_gamma_rejects_negative_samples():
    with pytest.raises(ValueError, match="non-negative"):
        degrade.gamma_darken(np.array([[-0.1]]), 2.0)


def test_gamma_rejects_gamma_below_one():
    with pytest.raises(ValueError):
        degrade.gamma_darken(rand_img((4, 4)), 0.5)


def test_gamma_order_preserving():
    s = np.sort(rand_img((200,), seed=4))
    assert np.all(np.diff(degrade.gamma_darken(s, 5.0)) >= 0)


# --- add_noise ---

def test_add_noise_zero_level_is_identity():
    img = rand_img((8, 8, 3))
    assert np.array_equal(degrade.add_noise(img, 0.0, seed=1), img)


def test_add_noise_statistics_mid_gray():
    img = np.full((512, 512), 0.5)
    out = degrade.add_noise(img, 0.05, seed=21)
    resid = out - 0.5
    assert 0.049 <= resid.std() <= 0.051
    assert abs(resid.mean()) <= 0.002


def test_add_noise_clips_one_sided_at_black():
    out = degrade.add_noise(np.zeros((64, 64)), 0.05, seed=3)
    assert np.all(out >= 0.0)
    assert out.mean() > 0.0


def test_add_noise_deterministic():
    img = rand_img((32, 32), seed=5)
    a = degrade.add_noise(img, 0.1, seed=77)
    b = degrade.add_noise(img, 0.1, seed=77)
    assert np.array_equal(a, b)


# --- vignette ---

def test_vignette_center_of_odd_mask_is_one():
    m = degrade.vignette_mask(11, 9, 0.5)
    assert m[4, 5] == 1.0
    assert m.max() == 1.0


def test_vignette_flip_symmetric():
    m = degrade.vignette_mask(10, 14, 0.7)
    assert np.allclose(m, m[::-1, :])
    assert np.allclose(m, m[:, ::-1])


def test_vignette_corner_closed_form():
    m = degrade.vignette_mask(101, 101, 0.5)
    half_diag = math.hypot(50, 50)
    sigma = 0.5 * half_diag
    expected = math.exp(-(50**2 + 50**2) / (2 * sigma * sigma))
    assert abs(m[0, 0] - expected) < 1e-9


def test_vignette_radially_monotone():
    m = degrade.vignette_mask(31, 31, 0.4)
    row = m[15, 15:]  # center outwards along +x
    assert np.all(np.diff(row) <= 0)
    diag = np.array([m[15 + t, 15 + t] for t in range(16)])
    assert np.all(np.diff(diag) <= 0)


def test_vignette_infinite_sigma_is_all_ones():
    assert np.all(degrade.vignette_mask(8, 6, math.inf) == 1.0)


def test_apply_vignette_all_ones_mask_is_identity():
    img = rand_img((6, 8, 3))
    assert np.array_equal(degrade.apply_vignette(img, np.ones((6, 8))), img)


def test_apply_vignette_on_white_replicates_mask():
    m = degrade.vignette_mask(8, 6, 0.5)
    out = degrade.apply_vignette(np.ones((6, 8, 3)), m)
    for c in range(3):
        assert np.array_equal(out[:, :, c], m)


def test_apply_vignette_never_brightens():
    img = rand_img((9, 9), seed=6)
    out = degrade.apply_vignette(img, degrade.vignette_mask(9, 9, 0.6))
    assert np.all(out <= img)


def test_apply_vignette_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        degrade.apply_vignette(rand_img((6, 8)), np.ones((8, 6)))


# --- pipeline ---

def test_pipeline_identity_tail_reduces_to_ssr():
    img = rand_img((12, 16, 3), seed=7)
    out = degrade.darken_pipeline(img, identity_config())
    assert np.array_equal(out, degrade.ssr_normalize(img, 2.0))


def test_pipeline_darkens_mean_luminance_over_corpus():
    # either darkening stage alone, or both together, must lose light
    for cfg in (identity_config(k=0.6, gamma=3.0),
                identity_config(k=0.8),
                identity_config(gamma=2.0)):
        for seed in range(100):
            img = rand_img((16, 20, 3), seed=seed)
            base = degrade.ssr_normalize(img, cfg.ssr_sigma)
            out = degrade.darken_pipeline(img, cfg)
            assert out.mean() < base.mean()


def test_pipeline_deterministic():
    img = rand_img((20, 24, 3), seed=8)
    cfg = DarkenConfig(k=0.5, gamma=2.0, noise_level=0.05, ssr_sigma=3.0,
                       vignette_sigma_frac=0.6, blur_sigma=0.7, blur_size=5, seed=99)
    a = degrade.darken_pipeline(img, cfg)
    b = degrade.darken_pipeline(img, cfg)
    assert a.tobytes() == b.tobytes()


def test_pipeline_without_noise_is_seed_independent():
    img = rand_img((14, 18, 3), seed=12)
    base = dict(k=0.5, gamma=2.0, noise_level=0.0, ssr_sigma=3.0,
                vignette_sigma_frac=0.8, blur_sigma=0.6, blur_size=5)
    a = degrade.darken_pipeline(img, DarkenConfig(**base, seed=1))
    b = degrade.darken_pipeline(img, DarkenConfig(**base, seed=987654321))
    assert np.array_equal(a, b)


def test_pipeline_output_in_unit_range():
    img = rand_img((16, 16, 3), seed=9)
    cfg = DarkenConfig(ssr_sigma=4.0, seed=1)
    out = degrade.darken_pipeline(img, cfg)
    assert out.min() >= 0.0 and out.max() <= 1.0


def test_stage_outputs_stay_in_unit_range():
    img = degrade.ssr_normalize(rand_img((10, 10, 3), seed=10), 3.0)
    for stage in (
        lambda x: degrade.linear_darken(x, 0.4),
        lambda x: degrade.gamma_darken(x, 5.0),
        lambda x: degrade.add_noise(x, 0.1, seed=0),
        lambda x: degrade.apply_vignette(x, degrade.vignette_mask(10, 10, 0.5)),
    ):
        img = stage(img)
        assert img.min() >= 0.0 and img.max() <= 1.0


def test_config_validation():
    with pytest.raises(ValueError):
        DarkenConfig(k=0.0)
    with pytest.raises(ValueError):
        DarkenConfig(gamma=0.9)
    with pytest.raises(ValueError):
        DarkenConfig(noise_level=1.0)
    with pytest.raises(ValueError):
        DarkenConfig(blur_size=4)
    with pytest.raises(ValueError):
        DarkenConfig(vignette_sigma_frac=-1.0)
