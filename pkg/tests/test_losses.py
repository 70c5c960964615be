import math

import numpy as np
import pytest

from darkbench import enhance, losses
from darkbench.enhance import AacParams


def step_image(n=6, height=1.0):
    """Left half 0, right half `height`."""
    img = np.zeros((n, n))
    img[:, n // 2:] = height
    return img


# --- sobel_edges ---

def test_sobel_constant_image_is_flat():
    # cancellation of the +/- taps leaves only float dust
    assert np.max(losses.sobel_edges(np.full((8, 8), 0.42))) < 1e-12


def test_sobel_vertical_step_hand_oracle():
    # for a unit step between columns 2 and 3, the horizontal kernel sums
    # its 1/2/1 column against the step: response 4 on both adjacent
    # columns, every row (replicate padding keeps rows uniform)
    edges = losses.sobel_edges(step_image(6))
    expected = np.zeros((6, 6))
    expected[:, 2] = 4.0
    expected[:, 3] = 4.0
    assert np.array_equal(edges, expected)


def test_sobel_rotation_covariance():
    img = np.random.default_rng(0).random((9, 9))
    rotated = losses.sobel_edges(np.rot90(img))
    assert np.max(np.abs(rotated - np.rot90(losses.sobel_edges(img)))) < 1e-12


def test_sobel_rgb_uses_luma():
    img = np.random.default_rng(1).random((7, 7, 3))
    from darkbench.imgcore import to_grayscale
    assert np.array_equal(losses.sobel_edges(img), losses.sobel_edges(to_grayscale(img)))


# --- edge_content_loss ---

def test_edge_loss_identical_images_is_zero():
    img = np.random.default_rng(2).random((10, 10, 3))
    assert losses.edge_content_loss(img, img) == 0.0


def test_edge_loss_symmetric():
    a = np.random.default_rng(3).random((8, 8))
    b = np.random.default_rng(4).random((8, 8))
    assert losses.edge_content_loss(a, b) == losses.edge_content_loss(b, a)


def test_edge_loss_step_vs_constant_hand_value():
    # twelve pixels respond with 4.0, the rest are 0: mean of squares 16*12/36
    got = losses.edge_content_loss(np.zeros((6, 6)), step_image(6))
    assert got == pytest.approx(16.0 * 12 / 36, abs=1e-12)


def test_edge_loss_nonnegative_and_discriminates():
    a = np.random.default_rng(5).random((8, 8))
    b = a.copy()
    b[4, 4] += 0.25
    assert losses.edge_content_loss(a, b) > 0.0


def test_edge_loss_rejects_shape_mismatch():
    with pytest.raises(ValueError):
        losses.edge_content_loss(np.zeros((4, 4)), np.zeros((4, 5)))


# --- ocr_cross_entropy ---

def test_xent_uniform_logits():
    z = np.zeros((3, 4))
    assert abs(losses.ocr_cross_entropy(z, [0, 1, 3]) - math.log(4)) < 1e-12


def test_xent_saturated_logits_near_zero():
    z = np.zeros((2, 5))
    z[0, 2] = 1000.0
    z[1, 0] = 1000.0
    assert losses.ocr_cross_entropy(z, [2, 0]) <= 1e-6


def test_xent_two_token_scalar_oracle():
    z = np.array([[1.0, 0.0, 0.0], [0.0, 2.0, 0.0]])
    expected = 0.5 * ((math.log(math.e + 2) - 1) + (math.log(math.e**2 + 2) - 2))
    assert losses.ocr_cross_entropy(z, [0, 1]) == pytest.approx(expected, abs=1e-12)


def test_xent_shift_invariance():
    rng = np.random.default_rng(6)
    z = rng.normal(size=(5, 7)) * 3
    y = rng.integers(0, 7, size=5)
    shifted = z + rng.normal(size=(5, 1)) * 10
    a = losses.ocr_cross_entropy(z, y)
    b = losses.ocr_cross_entropy(shifted, y)
    assert abs(a - b) < 1e-9
    assert a >= 0.0


def test_xent_rejects_bad_targets():
    with pytest.raises(ValueError):
        losses.ocr_cross_entropy(np.zeros((2, 3)), [0, 3])
    with pytest.raises(ValueError):
        losses.ocr_cross_entropy(np.zeros((2, 3)), [-1, 0])


def test_xent_rejects_nonfinite_logits():
    z = np.zeros((2, 3))
    z[0, 0] = np.inf
    with pytest.raises(ValueError):
        losses.ocr_cross_entropy(z, [0, 0])


# --- aggregations ---

def test_llie_loss_empty_terms_identical_images():
    img = np.random.default_rng(7).random((6, 6))
    assert losses.llie_loss(img, img, [], 1e5) == 0.0


def test_llie_loss_zero_phi_passes_sub_terms_through():
    a = np.random.default_rng(8).random((6, 6))
    b = np.random.default_rng(9).random((6, 6))
    assert losses.llie_loss(a, b, [0.5], 0.0) == 0.5


def test_llie_loss_heavyweight_edge_term_arithmetic():
    # engineer an edge loss of 2e-6: a step of height d against a flat
    # image gives 16*d^2/3, so d = sqrt(3 * 2e-6 / 16)
    d = math.sqrt(3 * 2e-6 / 16)
    out = step_image(6, height=d)
    low = np.zeros((6, 6))
    assert losses.edge_content_loss(out, low) == pytest.approx(2e-6, rel=1e-9)
    assert losses.llie_loss(out, low, [0.1], 1e5) == pytest.approx(0.3, abs=1e-9)


def test_total_loss_values():
    assert losses.total_loss(0.0, 0.0, 100.0) == 0.0
    assert losses.total_loss(1.0, 0.02, 100.0) == 3.0


def test_loss_weights_defaults_and_linearity():
    w = losses.LossWeights()
    assert w.phi == 1.0e5
    assert w.omega == 100.0
    a = np.random.default_rng(10).random((5, 5))
    b = np.random.default_rng(11).random((5, 5))
    lec = losses.edge_content_loss(a, b)
    assert losses.llie_loss(a, b, [0.25], w.phi) == 0.25 + w.phi * lec
    assert losses.total_loss(1.5, 0.01, w.omega) == 1.5 + w.omega * 0.01
    with pytest.raises(ValueError):
        losses.LossWeights(phi=-1.0)


# --- gradient checking ---

def test_gradient_check_linear_function():
    img = np.random.default_rng(12).random((8, 8))
    err = losses.numeric_gradient_check(
        lambda x: float(np.mean(x)),
        lambda x: np.full_like(x, 1.0 / x.size),
        img, n_probes=8, step=1e-5, seed=1,
    )
    assert err < 1e-8


def test_gradient_check_edge_loss_grayscale():
    rng = np.random.default_rng(13)
    out = rng.random((12, 12)) * 0.6 + 0.2
    low = rng.random((12, 12)) * 0.6 + 0.2
    err = losses.numeric_gradient_check(
        lambda x: losses.edge_content_loss(x, low),
        lambda x: losses.edge_content_loss_grad(x, low),
        out, n_probes=16, step=1e-5, seed=2,
    )
    assert err < 1e-4


def test_gradient_check_edge_loss_rgb():
    rng = np.random.default_rng(14)
    out = rng.random((10, 10, 3)) * 0.6 + 0.2
    low = rng.random((10, 10, 3)) * 0.6 + 0.2
    err = losses.numeric_gradient_check(
        lambda x: losses.edge_content_loss(x, low),
        lambda x: losses.edge_content_loss_grad(x, low),
        out, n_probes=16, step=1e-5, seed=3,
    )
    assert err < 1e-4


def test_gradient_check_aac_composition():
    rng = np.random.default_rng(15)
    img = rng.random((9, 9, 3)) * 0.5 + 0.25  # interior, away from clamps
    params = AacParams.uniform(0.8, 1.0, iterations=4)
    err = losses.numeric_gradient_check(
        lambda x: float(np.mean(enhance.aac_apply(x, params))),
        lambda x: enhance.aac_apply_derivative(x, params) / x.size,
        img, n_probes=16, step=1e-5, seed=4,
    )
    assert err < 1e-4


def test_gradient_check_validates_arguments():
    img = np.zeros((4, 4))
    with pytest.raises(ValueError):
        losses.numeric_gradient_check(lambda x: 0.0, lambda x: img, img, n_probes=0)
    with pytest.raises(ValueError):
        losses.numeric_gradient_check(lambda x: 0.0, lambda x: np.zeros((2, 2)), img, 4)
