"""End-to-end evaluation round trip: build a tiny labeled corpus, darken it
at several brightness levels, fake two recognizers of different quality,
and read the character error rates out of the sweep report.

    python demos/cer_and_sweep.py
"""

import json
from pathlib import Path

import numpy as np

from darkbench import DarkenConfig, corpus_cer, darkness_sweep, imgcore
from darkbench.evalkit import dataset_stats, save_manifest

OUT = Path(__file__).parent / "out" / "sweep_corpus"

WORDS = ["OPEN", "exit", "Café", "night", "24h", "parking"]


def build_corpus():
    OUT.mkdir(parents=True, exist_ok=True)
    rng = np.random.default_rng(11)
    records = []
    for i, word in enumerate(WORDS):
        name = f"sign_{i}.png"
        imgcore.save_image(rng.random((20, 60, 3)) * 0.5 + 0.4, OUT / name)
        records.append((name, word))
    save_manifest(records, OUT / "manifest.tsv")
    return records


def fake_recognizer(records, flip_every):
    """Corrupt every flip_every-th character, a stand-in for OCR output."""
    preds = {}
    for path, label in records:
        chars = list(label)
        for j in range(0, len(chars), flip_every):
            chars[j] = "#"
        preds[path] = "".join(chars)
    return preds


def main():
    records = build_corpus()
    stats = dataset_stats(records)
    print(f"corpus: {stats['n_images']} images, "
          f"{stats['total_label_chars']} label characters, "
          f"charset size {len(stats['charset'])}")

    sloppy = fake_recognizer(records, flip_every=2)
    careful = fake_recognizer(records, flip_every=5)
    print(f"careful recognizer CER: {corpus_cer(records, careful):.2f}%")
    print(f"sloppy recognizer CER:  {corpus_cer(records, sloppy):.2f}%")
    print(f"perfect predictions:    "
          f"{corpus_cer(records, {p: t for p, t in records}):.2f}%\n")

    cfg = DarkenConfig(gamma=3.0, noise_level=0.0, ssr_sigma=4.0,
                       vignette_sigma_frac=0.8, blur_sigma=0.0, blur_size=1, seed=0)
    levels = [1.0, 0.7, 0.4, 0.2]
    # pretend recognition quality tracks the lighting
    preds = {1.0: careful, 0.7: careful, 0.4: sloppy, 0.2: {p: "" for p, _ in records}}
    report = darkness_sweep(records, cfg, levels, OUT,
                            preds_per_level=preds, cer_mode="lenient")
    print("darkness sweep (noise off, so luminance falls monotonically):")
    print(f"    {'k':>4}  {'mean luma':>9}  {'edge loss':>9}  {'CER %':>6}")
    for lv in report["levels"]:
        print(f"    {lv['k']:>4}  {lv['luminance']['mean']:>9.4f}  "
              f"{lv['edge_content_loss_vs_original']:>9.4f}  "
              f"{lv['cer_percent']:>6.2f}")
    out_path = OUT.parent / "sweep_report.json"
    out_path.write_text(json.dumps(report, indent=2))
    print(f"\nfull report -> {out_path}")
    print("brightness alone is not the story: the edge loss keeps climbing "
          "even between levels where the fake recognizers tie.")


if __name__ == "__main__":
    main()
