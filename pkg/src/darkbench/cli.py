"""darkbench: one executable exposing the degradation, enhancement, loss,
rendering-demo, and evaluation pipelines.

Exit codes: 0 success, 1 partial failure (some files failed), 2 usage or
configuration error.  All randomness is keyed by (master seed, stable file
index); `DARKBENCH_SEED` provides the master seed when no flag or config
value gives one.
"""

from __future__ import annotations

import argparse
import dataclasses
import json
import os
import sys
from pathlib import Path

import numpy as np

from . import __version__, degrade, enhance, evalkit, imgcore, losses, render

IMAGE_SUFFIXES = (".png", ".jpg", ".jpeg")
PROVENANCE_NAME = "darkbench_provenance.json"


def _fail(msg: str) -> int:
    print(f"darkbench: error: {msg}", file=sys.stderr)
    return 2


def _master_seed(flag_value, config_value=None) -> int:
    if flag_value is not None:
        return int(flag_value)
    if config_value is not None:
        return int(config_value)
    return int(os.environ.get("DARKBENCH_SEED", "0"))


def _read_config(path) -> dict:
    """Flat key=value config, keys matching DarkenConfig fields."""
    known = {f.name for f in dataclasses.fields(degrade.DarkenConfig)}
    out = {}
    for lineno, line in enumerate(Path(path).read_text(encoding="utf-8").splitlines(), 1):
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        if "=" not in line:
            raise ValueError(f"{path}:{lineno}: expected key=value")
        key, _, value = line.partition("=")
        key, value = key.strip(), value.strip()
        if key not in known:
            raise ValueError(f"{path}:{lineno}: unknown config key {key!r}")
        out[key] = int(value) if key in ("blur_size", "seed") else float(value)
    return out


def _iter_inputs(in_path: Path):
    """(relative name, absolute path) pairs from a directory or a manifest file."""
    if in_path.is_dir():
        names = sorted(
            p.name for p in in_path.iterdir() if p.suffix.lower() in IMAGE_SUFFIXES
        )
        return [(n, in_path / n) for n in names]
    records = evalkit.load_manifest(in_path)
    base = in_path.parent
    return [(p, base / p) for p, _ in records]


def _write_provenance(out_dir: Path, command: str, config: dict, master_seed: int,
                      files: list, failures: list) -> None:
    payload = {
        "schema": "darkbench.provenance.v1",
        "tool": "darkbench",
        "version": __version__,
        "command": command,
        "config": config,
        "master_seed": master_seed,
        "files": files,
        "failures": failures,
    }
    (out_dir / PROVENANCE_NAME).write_text(
        json.dumps(payload, indent=2) + "\n", encoding="utf-8"
    )


def cmd_darken(args) -> int:
    in_path = Path(args.in_path)
    if not in_path.exists():
        return _fail(f"input path does not exist: {in_path}")
    try:
        config = _read_config(args.config) if args.config else {}
        master = _master_seed(args.seed, config.pop("seed", None))
        cfg = degrade.DarkenConfig(**{**config, "seed": master})
        inputs = _iter_inputs(in_path)
    except ValueError as e:
        return _fail(str(e))
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    files, failures = [], []
    for index, (name, src) in enumerate(inputs):
        noise_seed = imgcore.derive_seed(master, 2 * index)
        blur_draw = imgcore.derive_seed(master, 2 * index + 1) / 2.0**64
        apply_blur = cfg.blur_sigma > 0 and blur_draw < args.blur_prob
        try:
            img = imgcore.load_image(src)
            file_cfg = dataclasses.replace(
                cfg, seed=noise_seed, blur_sigma=cfg.blur_sigma if apply_blur else 0.0
            )
            dark = degrade.darken_pipeline(img, file_cfg)
            dst = out_dir / Path(name).name
            imgcore.save_image(dark, dst)
            files.append({
                "input": str(src),
                "output": str(dst),
                "seed": noise_seed,
                "input_sha256": imgcore.file_sha256(src),
                "output_sha256": imgcore.file_sha256(dst),
                "blur_applied": bool(apply_blur),
            })
        except Exception as e:  # keep going; report per-file failures
            failures.append({"input": str(src), "error": str(e)})
    _write_provenance(out_dir, "darken", cfg.to_dict(), master, files, failures)
    for rec in failures:
        print(f"darkbench: failed: {rec['input']}: {rec['error']}", file=sys.stderr)
    print(f"darkened {len(files)} image(s) -> {out_dir}")
    return 1 if failures else 0


def cmd_enhance(args) -> int:
    if args.method != "aac":
        return _fail(f"unknown enhancement method {args.method!r}")
    in_path = Path(args.in_path)
    if not in_path.exists():
        return _fail(f"input path does not exist: {in_path}")
    try:
        params = enhance.AacParams.from_csv(args.params, relax_box=args.relax_box)
    except ValueError as e:
        return _fail(str(e))
    if not args.allow_nonmonotone:
        for i in range(params.iterations):
            for c in range(params.channels):
                if not enhance.aac_monotonicity_check(params.alpha[i, c], params.beta[i, c]):
                    return _fail(
                        f"params iter {i} channel {c} "
                        f"(alpha={params.alpha[i, c]}, beta={params.beta[i, c]}) are "
                        "non-monotone; pass --allow-nonmonotone to force"
                    )
    out_dir = Path(args.out)
    out_dir.mkdir(parents=True, exist_ok=True)
    failures = 0
    inputs = _iter_inputs(in_path)
    for name, src in inputs:
        try:
            img = imgcore.load_image(src)
            out = enhance.aac_apply(img, params)
            imgcore.save_image(out, out_dir / Path(name).name)
        except Exception as e:
            failures += 1
            print(f"darkbench: failed: {src}: {e}", file=sys.stderr)
    print(f"enhanced {len(inputs) - failures} image(s) -> {out_dir}")
    return 1 if failures else 0


def cmd_loss(args) -> int:
    low = imgcore.load_image(args.low)
    out = imgcore.load_image(args.out_image)
    lec = losses.edge_content_loss(out, low)
    print(f"L_EC {lec:.9g}")
    print(f"phi*L_EC {args.phi * lec:.9g}")
    return 0


def _read_matrix(path) -> np.ndarray:
    rows = []
    for line in Path(path).read_text(encoding="utf-8").splitlines():
        line = line.strip()
        if line:
            rows.append([float(v) for v in line.replace(",", " ").split()])
    if not rows:
        raise ValueError(f"{path}: no rows")
    return np.asarray(rows, dtype=np.float64)


def cmd_xent(args) -> int:
    logits = _read_matrix(args.logits)
    targets = _read_matrix(args.targets).astype(np.int64).reshape(-1)
    value = losses.ocr_cross_entropy(logits, targets)
    print(f"L_OCR {value:.9g}")
    return 0


def cmd_cer(args) -> int:
    manifest = evalkit.load_manifest(args.manifest)
    preds = evalkit.load_predictions(args.preds)
    value = evalkit.corpus_cer(
        manifest, preds,
        mode="lenient" if args.lenient else "strict",
        casefold=args.casefold,
        per_sample_mean=args.per_sample_mean,
    )
    print(f"{value:.2f}")
    return 0


def cmd_stats(args) -> int:
    stats = evalkit.dataset_stats(evalkit.load_manifest(args.manifest))
    print(json.dumps(stats, indent=2, ensure_ascii=False))
    return 0


def cmd_sweep(args) -> int:
    try:
        manifest = evalkit.load_manifest(args.manifest)
        config = _read_config(args.config) if args.config else {}
        master = _master_seed(args.seed, config.pop("seed", None))
        cfg = degrade.DarkenConfig(**{**config, "seed": master})
        k_levels = [float(v) for v in args.k_levels.split(",") if v.strip()]
        preds_per_level = {}
        for spec_arg in args.preds or []:
            k_str, _, path = spec_arg.partition("=")
            if not path:
                raise ValueError(f"--preds expects K=FILE, got {spec_arg!r}")
            preds_per_level[float(k_str)] = evalkit.load_predictions(path)
    except ValueError as e:
        return _fail(str(e))
    root = Path(args.root) if args.root else Path(args.manifest).parent
    report = evalkit.darkness_sweep(
        manifest, cfg, k_levels, root,
        preds_per_level=preds_per_level or None,
        cer_mode="lenient" if args.lenient else "strict",
    )
    text = json.dumps(report, indent=2) + "\n"
    if args.out:
        Path(args.out).write_text(text, encoding="utf-8")
        print(f"sweep report -> {args.out}")
    else:
        print(text, end="")
    return 0


def cmd_prt_demo(args) -> int:
    env = imgcore.load_raster(args.env)
    try:
        normal = [float(v) for v in args.normal.split(",")]
        point = render.SurfacePoint(normal=np.asarray(normal), albedo=args.albedo)
    except ValueError as e:
        return _fail(str(e))
    seed = _master_seed(args.seed)
    channels = 1 if env.ndim == 2 else env.shape[2]
    t_coeffs = render.transport_to_sh(point, args.order, args.samples, seed)
    env_coeffs, dots = [], []
    for c in range(channels):
        plane = env if env.ndim == 2 else env[:, :, c]
        e_coeffs = render.project_to_sh(
            lambda d: render.env_eval(plane, d), args.order, args.samples,
            imgcore.derive_seed(seed, c + 1),
        )
        env_coeffs.append([float(v) for v in e_coeffs])
        dots.append(render.prt_radiance(t_coeffs, e_coeffs))
    oracle = render.render_oracle(env, point, args.quad_steps)
    oracle_list = [float(oracle)] if np.ndim(oracle) == 0 else [float(v) for v in oracle]
    report = {
        "schema": "darkbench.prt_demo.v1",
        "env_file": str(args.env),
        "order": args.order,
        "samples": args.samples,
        "seed": seed,
        "quad_steps": args.quad_steps,
        "normal": [float(v) for v in point.normal],
        "albedo": float(args.albedo),
        "channels": channels,
        "transport_coefficients": [float(v) for v in t_coeffs],
        "env_coefficients": env_coeffs,
        "transport_integral": [float(v) for v in dots],
        "prt_radiance": [float(args.albedo / np.pi * v) for v in dots],
        "oracle_radiance": oracle_list,
    }
    print(json.dumps(report, indent=2))
    return 0


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog="darkbench",
        description="Low-light scene-text degradation, enhancement, and evaluation toolkit.",
    )
    parser.add_argument("--version", action="version", version=f"darkbench {__version__}")
    sub = parser.add_subparsers(dest="command", required=True)

    p = sub.add_parser("darken", help="run the low-light degradation pipeline over images")
    p.add_argument("--in", dest="in_path", required=True,
                   help="input directory or path<TAB>label manifest file")
    p.add_argument("--out", required=True, help="output directory")
    p.add_argument("--config", help="flat key=value config file (DarkenConfig fields)")
    p.add_argument("--seed", type=int, help="master seed (overrides config and env)")
    p.add_argument("--blur-prob", type=float, default=1.0,
                   help="probability of applying the blur stage per image (default 1.0)")
    p.set_defaults(func=cmd_darken)

    p = sub.add_parser("enhance", help="apply the adaptive adjustment curve to images")
    p.add_argument("--method", default="aac", help="enhancement method (only: aac)")
    p.add_argument("--params", required=True, help="CSV of iter,channel,alpha,beta rows")
    p.add_argument("--in", dest="in_path", required=True)
    p.add_argument("--out", required=True)
    p.add_argument("--relax-box", action="store_true",
                   help="accept alpha/beta outside the default validation box")
    p.add_argument("--allow-nonmonotone", action="store_true",
                   help="skip the curve monotonicity gate")
    p.set_defaults(func=cmd_enhance)

    p = sub.add_parser("loss", help="edge-content loss between two images")
    p.add_argument("--low", required=True, help="reference (low-light input) image")
    p.add_argument("--out", dest="out_image", required=True, help="enhanced output image")
    p.add_argument("--phi", type=float, default=losses.LossWeights().phi,
                   help="edge-term weight (default 1e5)")
    p.set_defaults(func=cmd_loss)

    p = sub.add_parser("xent", help="token cross-entropy of a logits matrix")
    p.add_argument("--logits", required=True, help="CSV matrix, one token per row")
    p.add_argument("--targets", required=True, help="target index list")
    p.set_defaults(func=cmd_xent)

    p = sub.add_parser("cer", help="character error rate of predictions vs a manifest")
    p.add_argument("--manifest", required=True)
    p.add_argument("--preds", required=True)
    p.add_argument("--lenient", action="store_true",
                   help="score missing predictions as empty strings")
    p.add_argument("--casefold", action="store_true", help="case-insensitive comparison")
    p.add_argument("--per-sample-mean", action="store_true",
                   help="mean of per-record rates instead of the corpus micro-average")
    p.set_defaults(func=cmd_cer)

    p = sub.add_parser("stats", help="dataset statistics of a manifest")
    p.add_argument("--manifest", required=True)
    p.set_defaults(func=cmd_stats)

    p = sub.add_parser("sweep", help="darkness sweep over brightness factors")
    p.add_argument("--manifest", required=True)
    p.add_argument("--config", help="base DarkenConfig key=value file")
    p.add_argument("--k-levels", required=True, help="comma-separated k values in (0, 1]")
    p.add_argument("--root", help="image root (default: manifest directory)")
    p.add_argument("--out", help="write the JSON report here instead of stdout")
    p.add_argument("--preds", action="append", metavar="K=FILE",
                   help="prediction file for darkness level K (repeatable)")
    p.add_argument("--seed", type=int)
    p.add_argument("--lenient", action="store_true")
    p.set_defaults(func=cmd_sweep)

    p = sub.add_parser("prt-demo", help="spherical-harmonic transport vs quadrature oracle")
    p.add_argument("--env", required=True, help="equirectangular DBF1 radiance raster")
    p.add_argument("--order", type=int, required=True)
    p.add_argument("--samples", type=int, required=True)
    p.add_argument("--seed", type=int)
    p.add_argument("--quad-steps", type=int, default=256)
    p.add_argument("--normal", default="0,0,1", help="surface normal as x,y,z")
    p.add_argument("--albedo", type=float, default=1.0)
    p.set_defaults(func=cmd_prt_demo)

    return parser


def main(argv=None) -> int:
    args = build_parser().parse_args(argv)
    try:
        return args.func(args)
    except (ValueError, OSError) as e:
        return _fail(str(e))


if __name__ == "__main__":
    sys.exit(main())
