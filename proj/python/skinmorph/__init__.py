"""Rule-based morphological post-processing of binary skin masks.

Masks are 2-D arrays; any nonzero value is foreground. Functions return
boolean arrays of the same shape.
"""

from ._skinmorph import (
    Error,
    ThresholdParams,
    average_precision,
    classify,
    confusion,
    dilate,
    erode,
    f1,
    features,
    fill_holes,
    format_params,
    global_rank,
    grid_search,
    load_params,
    postprocess,
    postprocess_baseline,
    remove_small_components,
    wilcoxon,
)

__all__ = [
    "Error",
    "ThresholdParams",
    "average_precision",
    "classify",
    "confusion",
    "dilate",
    "erode",
    "f1",
    "features",
    "fill_holes",
    "format_params",
    "global_rank",
    "grid_search",
    "load_params",
    "postprocess",
    "postprocess_baseline",
    "remove_small_components",
    "wilcoxon",
]
