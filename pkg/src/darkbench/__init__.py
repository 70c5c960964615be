"""darkbench: synthesize low-light scene-text images, enhance them with a
deterministic adjustment curve, validate the lighting math behind
re-rendering enhancers, and score OCR predictions by character error rate.
"""

__version__ = "0.1.0"

from .degrade import (
    DarkenConfig,
    add_noise,
    apply_vignette,
    darken_pipeline,
    gamma_darken,
    linear_darken,
    ssr_normalize,
    vignette_mask,
)
from .enhance import AacParams, aac_apply, aac_monotonicity_check, aac_scalar
from .evalkit import (
    brightness_stats,
    corpus_cer,
    darkness_sweep,
    dataset_stats,
    edit_distance,
    load_manifest,
    load_predictions,
)
from .imgcore import (
    clip,
    convolve,
    gaussian_blur,
    gaussian_kernel,
    load_image,
    load_raster,
    sample_awgn_field,
    save_image,
    save_raster,
    to_grayscale,
)
from .losses import (
    LossWeights,
    edge_content_loss,
    llie_loss,
    numeric_gradient_check,
    ocr_cross_entropy,
    sobel_edges,
    total_loss,
)
from .render import (
    SurfacePoint,
    diffuse_ibl,
    prt_radiance,
    project_to_sh,
    render_oracle,
    sh_eval,
    transport_to_sh,
    transport_weight,
)

__all__ = [
    "AacParams",
    "DarkenConfig",
    "LossWeights",
    "SurfacePoint",
    "__version__",
    "aac_apply",
    "aac_monotonicity_check",
    "aac_scalar",
    "add_noise",
    "apply_vignette",
    "brightness_stats",
    "clip",
    "convolve",
    "corpus_cer",
    "darken_pipeline",
    "darkness_sweep",
    "dataset_stats",
    "diffuse_ibl",
    "edge_content_loss",
    "edit_distance",
    "gamma_darken",
    "gaussian_blur",
    "gaussian_kernel",
    "linear_darken",
    "llie_loss",
    "load_image",
    "load_manifest",
    "load_predictions",
    "load_raster",
    "numeric_gradient_check",
    "ocr_cross_entropy",
    "prt_radiance",
    "project_to_sh",
    "render_oracle",
    "sample_awgn_field",
    "save_image",
    "save_raster",
    "sh_eval",
    "sobel_edges",
    "ssr_normalize",
    "to_grayscale",
    "total_loss",
    "transport_to_sh",
    "transport_weight",
    "vignette_mask",
]
