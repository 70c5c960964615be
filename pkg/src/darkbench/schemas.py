"""JSON schemas for every machine-readable report the toolkit emits.

Each report carries a `schema` field naming its schema id; `SCHEMAS` maps
those ids to JSON Schema documents (draft 2020-12 subset).
"""

_NUMBER = {"type": "number"}
_LUMINANCE = {
    "type": "object",
    "required": ["mean", "median", "p5", "p95"],
    "properties": {"mean": _NUMBER, "median": _NUMBER, "p5": _NUMBER, "p95": _NUMBER},
    "additionalProperties": False,
}
_DARKEN_CONFIG = {
    "type": "object",
    "required": [
        "k", "gamma", "noise_level", "ssr_sigma",
        "vignette_sigma_frac", "blur_sigma", "blur_size", "seed",
    ],
    "properties": {
        "k": _NUMBER,
        "gamma": _NUMBER,
        "noise_level": _NUMBER,
        "ssr_sigma": _NUMBER,
        "vignette_sigma_frac": _NUMBER,
        "blur_sigma": _NUMBER,
        "blur_size": {"type": "integer"},
        "seed": {"type": "integer"},
    },
    "additionalProperties": False,
}

SWEEP_REPORT = {
    "type": "object",
    "required": ["schema", "n_images", "base_config", "levels"],
    "properties": {
        "schema": {"const": "darkbench.sweep_report.v1"},
        "n_images": {"type": "integer", "minimum": 0},
        "base_config": _DARKEN_CONFIG,
        "levels": {
            "type": "array",
            "minItems": 1,
            "items": {
                "type": "object",
                "required": [
                    "k", "config", "luminance",
                    "edge_content_loss_vs_original", "cer_percent", "per_image",
                ],
                "properties": {
                    "k": {"type": "number", "exclusiveMinimum": 0, "maximum": 1},
                    "config": _DARKEN_CONFIG,
                    "luminance": _LUMINANCE,
                    "edge_content_loss_vs_original": {"type": "number", "minimum": 0},
                    "cer_percent": {"type": ["number", "null"]},
                    "per_image": {
                        "type": "array",
                        "items": {
                            "type": "object",
                            "required": ["path", "mean", "median"],
                            "properties": {
                                "path": {"type": "string"},
                                "mean": _NUMBER,
                                "median": _NUMBER,
                            },
                            "additionalProperties": False,
                        },
                    },
                },
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

DATASET_STATS = {
    "type": "object",
    "required": [
        "schema", "n_images", "total_label_chars",
        "label_length_histogram", "charset",
    ],
    "properties": {
        "schema": {"const": "darkbench.dataset_stats.v1"},
        "n_images": {"type": "integer", "minimum": 0},
        "total_label_chars": {"type": "integer", "minimum": 0},
        "label_length_histogram": {
            "type": "object",
            "patternProperties": {"^[0-9]+$": {"type": "integer", "minimum": 1}},
            "additionalProperties": False,
        },
        "charset": {"type": "array", "items": {"type": "string"}},
    },
    "additionalProperties": False,
}

PROVENANCE = {
    "type": "object",
    "required": [
        "schema", "tool", "version", "command",
        "config", "master_seed", "files", "failures",
    ],
    "properties": {
        "schema": {"const": "darkbench.provenance.v1"},
        "tool": {"const": "darkbench"},
        "version": {"type": "string"},
        "command": {"type": "string"},
        "config": {"type": "object"},
        "master_seed": {"type": "integer", "minimum": 0},
        "files": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["input", "output", "seed", "input_sha256", "output_sha256"],
                "properties": {
                    "input": {"type": "string"},
                    "output": {"type": "string"},
                    "seed": {"type": "integer", "minimum": 0},
                    "input_sha256": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
                    "output_sha256": {"type": "string", "pattern": "^[0-9a-f]{64}$"},
                    "blur_applied": {"type": "boolean"},
                },
                "additionalProperties": False,
            },
        },
        "failures": {
            "type": "array",
            "items": {
                "type": "object",
                "required": ["input", "error"],
                "properties": {"input": {"type": "string"}, "error": {"type": "string"}},
                "additionalProperties": False,
            },
        },
    },
    "additionalProperties": False,
}

PRT_DEMO = {
    "type": "object",
    "required": [
        "schema", "env_file", "order", "samples", "seed", "quad_steps",
        "normal", "albedo", "channels", "transport_coefficients",
        "env_coefficients", "transport_integral", "prt_radiance",
        "oracle_radiance",
    ],
    "properties": {
        "schema": {"const": "darkbench.prt_demo.v1"},
        "env_file": {"type": "string"},
        "order": {"type": "integer", "minimum": 0},
        "samples": {"type": "integer", "minimum": 1},
        "seed": {"type": "integer", "minimum": 0},
        "quad_steps": {"type": "integer", "minimum": 8},
        "normal": {"type": "array", "items": _NUMBER, "minItems": 3, "maxItems": 3},
        "albedo": _NUMBER,
        "channels": {"enum": [1, 3]},
        "transport_coefficients": {"type": "array", "items": _NUMBER},
        "env_coefficients": {
            "type": "array",
            "items": {"type": "array", "items": _NUMBER},
        },
        "transport_integral": {"type": "array", "items": _NUMBER},
        "prt_radiance": {"type": "array", "items": _NUMBER},
        "oracle_radiance": {"type": "array", "items": _NUMBER},
    },
    "additionalProperties": False,
}

SCHEMAS = {
    "darkbench.sweep_report.v1": SWEEP_REPORT,
    "darkbench.dataset_stats.v1": DATASET_STATS,
    "darkbench.provenance.v1": PROVENANCE,
    "darkbench.prt_demo.v1": PRT_DEMO,
}
