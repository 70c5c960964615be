"""Recognition-facing evaluation: character error rate over manifests,
brightness statistics, dataset statistics, and the darkness-sweep study.

A manifest is an ordered list of (image_path, label) pairs; on disk it is
UTF-8 text with one `path<TAB>label` record per line.  Predictions use the
same format and are keyed by path.
"""

from __future__ import annotations

from pathlib import Path

import numpy as np

from . import degrade, imgcore, losses

SWEEP_SCHEMA_ID = "darkbench.sweep_report.v1"
STATS_SCHEMA_ID = "darkbench.dataset_stats.v1"


def edit_distance(a: str, b: str) -> int:
    """Levenshtein distance over Unicode code points."""
    if a == b:
        return 0
    if len(a) < len(b):
        a, b = b, a
    if not b:
        return len(a)
    prev = list(range(len(b) + 1))
    for i, ca in enumerate(a, start=1):
        cur = [i]
        for j, cb in enumerate(b, start=1):
            cur.append(min(prev[j] + 1, cur[j - 1] + 1, prev[j - 1] + (ca != cb)))
        prev = cur
    return prev[-1]


def validate_manifest(records) -> list[tuple[str, str]]:
    """Check path uniqueness and non-empty labels; returns the records."""
    recs = [(str(p), str(t)) for p, t in records]
    seen = set()
    for path, label in recs:
        if path in seen:
            raise ValueError(f"duplicate manifest path: {path}")
        seen.add(path)
        if not label.strip():
            raise ValueError(f"empty label for {path}")
    return recs


def load_manifest(path) -> list[tuple[str, str]]:
    records = []
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        if "\t" not in line:
            raise ValueError(f"{path}:{lineno}: expected 'path<TAB>label'")
        p, label = line.split("\t", 1)
        records.append((p, label))
    return validate_manifest(records)


def save_manifest(records, path) -> None:
    text = "".join(f"{p}\t{t}\n" for p, t in records)
    Path(path).write_text(text, encoding="utf-8")


def load_predictions(path) -> dict[str, str]:
    """Predictions file: `path<TAB>predicted text` per line (text may be empty)."""
    preds = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        if not line.strip():
            continue
        p, _, text = line.partition("\t")
        if p in preds:
            raise ValueError(f"{path}:{lineno}: duplicate prediction for {p}")
        preds[p] = text
    return preds


def corpus_cer(manifest, preds, mode: str = "strict", casefold: bool = False,
               per_sample_mean: bool = False) -> float:
    """Character error rate in percent.

    The default is the corpus-level micro average, 100 * total edits /
    total reference characters; `per_sample_mean` switches to the mean of
    per-record rates.  In strict mode every manifest path must be present
    in `preds`; in lenient mode missing entries count as empty predictions.
    """
    if mode not in ("strict", "lenient"):
        raise ValueError(f"mode must be 'strict' or 'lenient', got {mode!r}")
    records = validate_manifest(manifest)
    if not records:
        raise ValueError("cannot score an empty manifest")
    edits, ref_chars, rates = 0, 0, []
    for path, label in records:
        if path not in preds and mode == "strict":
            raise ValueError(f"missing prediction for {path}")
        hyp = preds.get(path, "")
        if casefold:
            label, hyp = label.casefold(), hyp.casefold()
        d = edit_distance(hyp, label)
        edits += d
        ref_chars += len(label)
        rates.append(100.0 * d / len(label))
    if per_sample_mean:
        return float(np.mean(rates))
    return 100.0 * edits / ref_chars


def brightness_stats(img) -> dict[str, float]:
    """Mean / median / 5th / 95th percentile of the image's luma."""
    a = np.asarray(img, dtype=np.float64)
    luma = imgcore.to_grayscale(a) if a.ndim == 3 and a.shape[2] == 3 else a
    return {
        "mean": float(luma.mean()),
        "median": float(np.median(luma)),
        "p5": float(np.percentile(luma, 5)),
        "p95": float(np.percentile(luma, 95)),
    }


def dataset_stats(manifest) -> dict:
    """Image count, label-length histogram, and character set of a manifest."""
    records = validate_manifest(manifest)
    hist: dict[str, int] = {}
    charset = set()
    total_chars = 0
    for _, label in records:
        hist[str(len(label))] = hist.get(str(len(label)), 0) + 1
        charset.update(label)
        total_chars += len(label)
    return {
        "schema": STATS_SCHEMA_ID,
        "n_images": len(records),
        "total_label_chars": total_chars,
        "label_length_histogram": dict(sorted(hist.items(), key=lambda kv: int(kv[0]))),
        "charset": sorted(charset),
    }


def darkness_sweep(manifest, base_cfg: degrade.DarkenConfig, k_levels, images_root,
                   preds_per_level=None, cer_mode: str = "strict") -> dict:
    """Darken the corpus at each brightness factor k and report statistics.

    Per level (ordered by decreasing k): the config used, pooled luminance
    statistics, per-image mean/median luma, the mean edge-content loss of
    the darkened image against its well-lit original, and, when
    `preds_per_level` supplies a prediction set for that k, the CER.
    Noise is keyed per image by (base seed, image index), so reports are
    reproducible and independent of processing order.
    """
    levels = [float(k) for k in k_levels]
    if not levels:
        raise ValueError("k_levels must be non-empty")
    for k in levels:
        if not 0.0 < k <= 1.0:
            raise ValueError(f"every k must be in (0, 1], got {k}")
    if len(set(levels)) != len(levels):
        raise ValueError("k_levels must be distinct")
    levels = sorted(levels, reverse=True)
    records = validate_manifest(manifest)
    root = Path(images_root)

    originals = [(p, imgcore.load_image(root / p)) for p, _ in records]
    report_levels = []
    for k in levels:
        cfg = degrade.DarkenConfig(**{**base_cfg.to_dict(), "k": k})
        lumas, per_image, ec = [], [], []
        for index, (path, img) in enumerate(originals):
            file_cfg = degrade.DarkenConfig(
                **{**cfg.to_dict(), "seed": imgcore.derive_seed(cfg.seed, index)}
            )
            dark = degrade.darken_pipeline(img, file_cfg)
            stats = brightness_stats(dark)
            grey = imgcore.to_grayscale(dark) if dark.ndim == 3 else dark
            lumas.append(grey.reshape(-1))
            per_image.append({"path": path, "mean": stats["mean"], "median": stats["median"]})
            ec.append(losses.edge_content_loss(dark, img))
        pooled = np.concatenate(lumas)
        entry = {
            "k": k,
            "config": cfg.to_dict(),
            "luminance": {
                "mean": float(pooled.mean()),
                "median": float(np.median(pooled)),
                "p5": float(np.percentile(pooled, 5)),
                "p95": float(np.percentile(pooled, 95)),
            },
            "edge_content_loss_vs_original": float(np.mean(ec)),
            "cer_percent": None,
            "per_image": per_image,
        }
        if preds_per_level and k in preds_per_level:
            entry["cer_percent"] = corpus_cer(records, preds_per_level[k], mode=cer_mode)
        report_levels.append(entry)
    return {
        "schema": SWEEP_SCHEMA_ID,
        "n_images": len(records),
        "base_config": base_cfg.to_dict(),
        "levels": report_levels,
    }
