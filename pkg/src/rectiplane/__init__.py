"""Exact isometric embedding of finite metric spaces into the l1 plane."""

from .metric import (
    MetricError,
    MetricSpace,
    NegativeOrZeroOffDiagonal,
    NonzeroDiagonal,
    NotSymmetric,
    PlanePoint,
    TriangleViolation,
    format_scalar,
    l1_distance,
    parse_scalar,
    validate_metric,
    verify_isometric,
)
from .oracle import (
    NotAMetricAfterPerturbation,
    TooLarge,
    oracle_embed,
    perturb_instance,
    random_planar_instance,
)
from .planar import EmbedResult, embed
from .svgout import render_svg

__version__ = "0.1.0"

__all__ = [
    "EmbedResult",
    "MetricError",
    "MetricSpace",
    "NegativeOrZeroOffDiagonal",
    "NonzeroDiagonal",
    "NotAMetricAfterPerturbation",
    "NotSymmetric",
    "PlaneEmbedding",
    "PlanePoint",
    "TooLarge",
    "TriangleViolation",
    "embed",
    "format_scalar",
    "l1_distance",
    "oracle_embed",
    "parse_scalar",
    "perturb_instance",
    "random_planar_instance",
    "render_svg",
    "validate_metric",
    "verify_isometric",
]


def __getattr__(name):
    # sklearn import is deferred so the core library stays light.
    if name == "PlaneEmbedding":
        from .estimator import PlaneEmbedding
        return PlaneEmbedding
    raise AttributeError(f"module {__name__!r} has no attribute {name!r}")
