"""Walk a well-lit synthetic text card through every darkening stage.

Writes the input, each intermediate, and a side-by-side strip into
demos/out/, and prints the brightness statistics after each stage so you
can see where the light goes.

    python demos/degradation_pipeline.py
"""

from pathlib import Path

import numpy as np

from darkbench import DarkenConfig, brightness_stats, imgcore
from darkbench.degrade import (
    add_noise,
    apply_vignette,
    gamma_darken,
    linear_darken,
    ssr_normalize,
    vignette_mask,
)

OUT = Path(__file__).parent / "out"


def make_text_card(height=96, width=256, seed=7):
    """A light card with dark bar 'glyphs' and a soft illumination gradient,
    standing in for a photographed sign."""
    rng = np.random.default_rng(seed)
    img = np.full((height, width), 0.85)
    x0 = 16
    while x0 < width - 24:
        w = int(rng.integers(8, 18))
        y0 = int(rng.integers(18, 34))
        h = int(rng.integers(34, 52))
        img[y0:y0 + h, x0:x0 + w] = 0.08  # vertical stroke
        if rng.random() < 0.5:
            img[y0:y0 + 6, x0:x0 + w + 10] = 0.08  # crossbar
        x0 += w + int(rng.integers(8, 16))
    # uneven illumination across the card
    ramp = np.linspace(0.75, 1.15, width)[None, :]
    img = np.clip(img * ramp, 0.0, 1.0)
    return np.repeat(img[:, :, None], 3, axis=2)


def describe(name, img):
    s = brightness_stats(img)
    print(f"  {name:<12} mean {s['mean']:.3f}  median {s['median']:.3f}  "
          f"p5 {s['p5']:.3f}  p95 {s['p95']:.3f}")
    return img


def main():
    OUT.mkdir(exist_ok=True)
    cfg = DarkenConfig(k=0.45, gamma=5.0, noise_level=0.04, ssr_sigma=25.0,
                       vignette_sigma_frac=0.55, blur_sigma=0.8, blur_size=5, seed=3)
    card = make_text_card()
    print("darkening a synthetic text card, stage by stage:")
    stages = [("input", card)]
    img = describe("input", card)

    img = describe("normalized", ssr_normalize(img, cfg.ssr_sigma))
    stages.append(("normalized", img))
    img = describe("linear-dark", linear_darken(img, cfg.k))
    stages.append(("linear", img))
    img = describe("gamma-dark", gamma_darken(img, cfg.gamma))
    stages.append(("gamma", img))
    img = describe("noisy", add_noise(img, cfg.noise_level, cfg.seed))
    stages.append(("noisy", img))
    mask = vignette_mask(card.shape[1], card.shape[0], cfg.vignette_sigma_frac)
    img = describe("vignetted", apply_vignette(img, mask))
    stages.append(("vignetted", img))
    img = describe("blurred", imgcore.clip(
        imgcore.convolve(img, imgcore.gaussian_kernel(cfg.blur_sigma, cfg.blur_size))))
    stages.append(("final", img))

    for name, stage_img in stages:
        imgcore.save_image(stage_img, OUT / f"stage_{name}.png")
    strip = np.concatenate([s for _, s in stages], axis=0)
    imgcore.save_image(strip, OUT / "degradation_strip.png")
    print(f"\nwrote {len(stages)} stage images and degradation_strip.png to {OUT}/")
    print("note how the gamma stage crushes the mid-tones while the strokes "
          "survive until noise and blur start eating them.")


if __name__ == "__main__":
    main()
