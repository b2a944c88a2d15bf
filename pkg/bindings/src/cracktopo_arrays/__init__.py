"""Array-level bindings for the Crack Topology Score.

Call :func:`cts_score` on in-memory 2-D masks (anything numpy can view as an
integer or boolean array, e.g. CPU torch tensors) inside an evaluation loop;
no files involved. Nonzero means foreground - binarize probability maps
yourself before calling. Results are numerically identical to the cracktopo
pipeline, double for double.
"""
from __future__ import annotations

from concurrent.futures import ThreadPoolExecutor

import numpy as np

from cracktopo import EvalConfig, MatchConfig, PreprocessConfig, evaluate

__version__ = "0.1.0"

__all__ = ["cts_score", "cts_score_batch", "__version__"]


def cts_score(
    gt,
    pred,
    *,
    buffer_radius: float = 10.0,
    overlap_threshold: float = 0.5,
    hole_area_threshold: int = 0,
    smooth_mode: str = "none",
    smooth_radius: int = 0,
    apply_to: str = "prediction_only",
) -> dict:
    """Score one prediction mask against one ground-truth mask.

    Both inputs must be 2-D arrays of equal shape with integer or boolean
    elements; nonzero pixels are foreground. Returns a mapping with keys
    ``pcs``, ``rcs``, ``cts``, ``degenerate_flag`` and ``lengths`` (the
    matched/total skeleton lengths behind the scores). Input arrays are
    never modified.
    """
    gt_mask = _to_mask(gt, "gt")
    pred_mask = _to_mask(pred, "pred")
    if gt_mask.shape != pred_mask.shape:
        raise ValueError(
            f"shape mismatch: gt is {gt_mask.shape}, pred is {pred_mask.shape}"
        )
    cfg = _build_config(
        buffer_radius,
        overlap_threshold,
        hole_area_threshold,
        smooth_mode,
        smooth_radius,
        apply_to,
    )
    scores = evaluate(gt_mask, pred_mask, cfg)
    return {
        "pcs": scores.pcs,
        "rcs": scores.rcs,
        "cts": scores.cts,
        "degenerate_flag": scores.degenerate_flag,
        "lengths": {
            "pred_total": scores.pred_total_len,
            "pred_matched": scores.pred_matched_len,
            "gt_total": scores.gt_total_len,
            "gt_matched": scores.gt_matched_len,
        },
    }


def cts_score_batch(gt_stack, pred_stack, *, workers: int = 1, **options) -> list[dict]:
    """Score a batch: element i of the result is cts_score(gt[i], pred[i]).

    Both stacks must be 3-D with the same leading batch dimension and the
    same per-item shape. ``workers`` > 1 evaluates items in a thread pool
    (the numeric kernels release the GIL); result order always follows
    input order.
    """
    gt_arr = np.asarray(gt_stack)
    pred_arr = np.asarray(pred_stack)
    if gt_arr.ndim != 3 or pred_arr.ndim != 3:
        raise ValueError(
            f"batch inputs must be 3-D (batch, rows, cols); got gt {gt_arr.ndim}-D, "
            f"pred {pred_arr.ndim}-D"
        )
    if gt_arr.shape[0] != pred_arr.shape[0]:
        raise ValueError(
            f"batch size mismatch: gt has {gt_arr.shape[0]} items, pred has {pred_arr.shape[0]}"
        )
    items = list(zip(gt_arr, pred_arr))
    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as pool:
            return list(pool.map(lambda gp: cts_score(gp[0], gp[1], **options), items))
    return [cts_score(g, p, **options) for g, p in items]


def _to_mask(a, name: str) -> np.ndarray:
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise ValueError(f"{name} must be a 2-D array, got {arr.ndim}-D shape {arr.shape}")
    if arr.dtype == bool:
        return arr
    if not np.issubdtype(arr.dtype, np.integer):
        raise TypeError(
            f"{name} must have boolean or integer elements, got dtype {arr.dtype}; "
            "threshold probability maps before scoring"
        )
    return arr != 0


def _build_config(
    buffer_radius, overlap_threshold, hole_area_threshold, smooth_mode, smooth_radius, apply_to
) -> EvalConfig:
    return EvalConfig(
        preprocess=PreprocessConfig(
            hole_area_threshold=hole_area_threshold,
            smooth_mode=smooth_mode,
            smooth_radius=smooth_radius,
            apply_to=apply_to,
        ),
        match=MatchConfig(
            buffer_radius=buffer_radius, overlap_threshold=overlap_threshold
        ),
    )
