"""The training objectives as plain numbers: edge-content loss on stroke
images, token cross-entropy, the weighted aggregate, and a finite-
difference audit of the analytic gradients.

    python demos/losses_and_gradients.py
"""

import math

import numpy as np

from darkbench import enhance, losses
from darkbench.enhance import AacParams


def edge_loss_demo():
    stroke = np.zeros((24, 48))
    stroke[:, 20:28] = 1.0
    blurred = stroke.copy()
    blurred[:, 18:20] = 0.4
    blurred[:, 28:30] = 0.4
    flat = np.full_like(stroke, stroke.mean())
    print("edge-content loss against a crisp stroke image:")
    print(f"    identical image:   {losses.edge_content_loss(stroke, stroke):.6f}")
    print(f"    softened stroke:   {losses.edge_content_loss(blurred, stroke):.6f}")
    print(f"    flat gray:         {losses.edge_content_loss(flat, stroke):.6f}")
    print("losing the stroke costs far more than softening it.\n")


def cross_entropy_demo():
    print("token cross-entropy on a 5-word vocabulary:")
    uniform = np.zeros((1, 5))
    confident = np.array([[8.0, 0.0, 0.0, 0.0, 0.0]])
    wrong = np.array([[0.0, 8.0, 0.0, 0.0, 0.0]])
    for name, z in (("uniform", uniform), ("confident+right", confident),
                    ("confident+wrong", wrong)):
        print(f"    {name:<16} {losses.ocr_cross_entropy(z, [0]):.4f}")
    print(f"    (ln 5 = {math.log(5):.4f})\n")


def aggregate_demo():
    rng = np.random.default_rng(0)
    low = rng.random((32, 32, 3)) * 0.2
    out = np.clip(low * 4.0, 0, 1)
    w = losses.LossWeights()
    lec = losses.edge_content_loss(out, low)
    llie = losses.llie_loss(out, low, [0.11, 0.05], w.phi)
    ocr = 0.02
    print("weighted aggregate with the default weights:")
    print(f"    edge term            {lec:.3e}")
    print(f"    enhancement loss     {llie:.4f}  (sub-terms 0.16 + phi * edge)")
    print(f"    total with OCR 0.02  {losses.total_loss(llie, ocr, w.omega):.4f}  "
          f"(omega = {w.omega:g})\n")


def gradient_audit():
    rng = np.random.default_rng(1)
    low = rng.random((16, 16, 3)) * 0.6 + 0.2
    out = rng.random((16, 16, 3)) * 0.6 + 0.2
    err_edge = losses.numeric_gradient_check(
        lambda x: losses.edge_content_loss(x, low),
        lambda x: losses.edge_content_loss_grad(x, low),
        out, n_probes=24, seed=2,
    )
    params = AacParams.uniform(0.8, 1.0, iterations=4)
    err_aac = losses.numeric_gradient_check(
        lambda x: float(np.mean(enhance.aac_apply(x, params))),
        lambda x: enhance.aac_apply_derivative(x, params) / x.size,
        out, n_probes=24, seed=3,
    )
    print("finite-difference audit of the analytic gradients (relative error):")
    print(f"    edge-content loss      {err_edge:.2e}")
    print(f"    curve-then-mean chain  {err_aac:.2e}")


if __name__ == "__main__":
    edge_loss_demo()
    cross_entropy_demo()
    aggregate_demo()
    gradient_audit()
