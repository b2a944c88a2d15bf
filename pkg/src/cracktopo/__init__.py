"""Crack Topology Score (CTS): skeleton-based evaluation of crack masks.

Compares the skeletons of a ground-truth and a predicted binary mask as sets
of curve segments. Each side's segments are matched against the other side
under a Euclidean buffer, and the matched fractions are length-weighted into
PCS (precision-like), RCS (recall-like), and their harmonic mean CTS.
"""

from .io import MaskFormatError, load_mask, save_mask_png, save_rgb_png
from .mask import (
    DiskElement,
    as_mask,
    border_reachable_background,
    connected_components,
    dilate,
    disk,
    erode,
)
from .matching import MatchConfig, MatchTable, SegmentMatch, candidates_for, match_all, match_one
from .preprocess import PreprocessConfig, fill_holes, run_preprocess, smooth
from .report import (
    CSV_HEADER,
    EvalReport,
    render_csv,
    render_json,
    render_overlay,
    summarize,
    write_report,
)
from .scoring import (
    DimensionMismatchError,
    EvalConfig,
    EvalDiagnostics,
    Scores,
    compute_pcs,
    compute_rcs,
    evaluate,
    harmonic_cts,
)
from .skeleton import (
    PixelClass,
    SegmentDecomposition,
    SegmentKind,
    SkeletonSegment,
    classify,
    decompose,
    is_thinning_fixed_point,
    neighbor_counts,
    segment_length,
    thin,
)

__version__ = "0.1.0"

__all__ = [
    "MaskFormatError",
    "load_mask",
    "save_mask_png",
    "save_rgb_png",
    "DiskElement",
    "as_mask",
    "border_reachable_background",
    "connected_components",
    "dilate",
    "disk",
    "erode",
    "MatchConfig",
    "MatchTable",
    "SegmentMatch",
    "candidates_for",
    "match_all",
    "match_one",
    "PreprocessConfig",
    "fill_holes",
    "run_preprocess",
    "smooth",
    "CSV_HEADER",
    "EvalReport",
    "render_csv",
    "render_json",
    "render_overlay",
    "summarize",
    "write_report",
    "DimensionMismatchError",
    "EvalConfig",
    "EvalDiagnostics",
    "Scores",
    "compute_pcs",
    "compute_rcs",
    "evaluate",
    "harmonic_cts",
    "PixelClass",
    "SegmentDecomposition",
    "SegmentKind",
    "SkeletonSegment",
    "classify",
    "decompose",
    "is_thinning_fixed_point",
    "neighbor_counts",
    "segment_length",
    "thin",
    "__version__",
]
