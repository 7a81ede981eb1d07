"""Magnitude and maximum diversity of finite metric spaces."""

from ._maglab import (
    MaglabError,
    MetricSpace,
    approx_magnitude,
    fourier_upper_bound,
    gamma_hat,
    generate,
    growth_lower_bound,
    is_positively_weighted,
    lp_ball_volume,
    lp_product,
    magnitude,
    max_diversity,
    negative_type_test,
    product_counterexample,
    rayleigh,
    scale,
    scale_sweep,
    snowflake,
    spectrum,
    stability_scan,
    validate_metric,
    weighting,
    witness_search,
)

__all__ = [
    "MaglabError",
    "MetricSpace",
    "approx_magnitude",
    "fourier_upper_bound",
    "gamma_hat",
    "generate",
    "growth_lower_bound",
    "is_positively_weighted",
    "lp_ball_volume",
    "lp_product",
    "magnitude",
    "max_diversity",
    "negative_type_test",
    "product_counterexample",
    "rayleigh",
    "scale",
    "scale_sweep",
    "snowflake",
    "spectrum",
    "stability_scan",
    "validate_metric",
    "weighting",
    "witness_search",
]
