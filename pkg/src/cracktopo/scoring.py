"""Length-weighted PCS/RCS aggregation, the CTS harmonic mean, and the
end-to-end evaluation pipeline for a mask pair.

Degenerate inputs follow fixed conventions, recorded in Scores.degenerate_flag:
two empty skeletons score a perfect (1, 1, 1); one empty side scores (0, 0, 0).
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .mask import as_mask
from .matching import MatchConfig, MatchTable, match_all
from .preprocess import PreprocessConfig, run_preprocess
from .skeleton import SegmentDecomposition, decompose, thin

DEGENERATE_NONE = "none"
DEGENERATE_BOTH_EMPTY = "both_empty"
DEGENERATE_PRED_EMPTY = "pred_empty"
DEGENERATE_GT_EMPTY = "gt_empty"


class DimensionMismatchError(ValueError):
    """Ground truth and prediction rasters differ in size."""


@dataclass(frozen=True)
class EvalConfig:
    """Everything that parameterizes one evaluation."""

    preprocess: PreprocessConfig = field(default_factory=PreprocessConfig)
    match: MatchConfig = field(default_factory=MatchConfig)
    binarize_threshold: int = 128


@dataclass(frozen=True)
class Scores:
    """PCS, RCS, CTS plus the matched/total lengths they derive from."""

    pcs: float
    rcs: float
    cts: float
    pred_total_len: float
    pred_matched_len: float
    gt_total_len: float
    gt_matched_len: float
    degenerate_flag: str = DEGENERATE_NONE


@dataclass(frozen=True)
class EvalDiagnostics:
    """Intermediate products of one evaluation, for overlays and debugging."""

    gt_skeleton: np.ndarray
    pred_skeleton: np.ndarray
    gt_decomposition: SegmentDecomposition | None
    pred_decomposition: SegmentDecomposition | None
    gt_table: MatchTable
    pred_table: MatchTable


def harmonic_cts(pcs: float, rcs: float) -> float:
    """Harmonic mean of PCS and RCS; 0 when both are 0."""
    if pcs + rcs == 0.0:
        return 0.0
    return 2.0 * pcs * rcs / (pcs + rcs)


def compute_pcs(pred_table: MatchTable, pred_decomp: SegmentDecomposition) -> tuple[float, float, float]:
    """Length-weighted fraction of predicted segments matched.

    Returns (pcs, matched_len, total_len); pcs is 0 for an empty decomposition
    (degenerate handling belongs to :func:`evaluate`).
    """
    return _length_weighted_fraction(pred_table, pred_decomp)


def compute_rcs(gt_table: MatchTable, gt_decomp: SegmentDecomposition) -> tuple[float, float, float]:
    """Length-weighted fraction of ground-truth segments recovered."""
    return _length_weighted_fraction(gt_table, gt_decomp)


def _length_weighted_fraction(
    table: MatchTable, decomp: SegmentDecomposition
) -> tuple[float, float, float]:
    ids = decomp.segment_ids
    if set(table.keys()) != set(ids):
        raise ValueError("match table does not cover exactly the decomposition's segments")
    matched_len = 0.0
    total_len = 0.0
    # accumulate in segment-id order so sums are reproducible
    for seg in sorted(decomp.segments, key=lambda s: s.id):
        total_len += seg.length
        if table[seg.id].matched:
            matched_len += seg.length
    fraction = matched_len / total_len if total_len > 0.0 else 0.0
    return fraction, matched_len, total_len


def evaluate(
    gt: np.ndarray,
    pred: np.ndarray,
    cfg: EvalConfig | None = None,
    *,
    with_diagnostics: bool = False,
):
    """Score a prediction mask against a ground-truth mask.

    Pipeline: preprocess -> thin both -> decompose -> match both directions ->
    length-weighted PCS/RCS -> harmonic CTS. Returns Scores, or
    (Scores, EvalDiagnostics) when with_diagnostics is set.
    """
    if cfg is None:
        cfg = EvalConfig()
    gt = as_mask(gt)
    pred = as_mask(pred)
    if gt.shape != pred.shape:
        raise DimensionMismatchError(
            f"mask sizes differ: gt {gt.shape[1]}x{gt.shape[0]} vs pred {pred.shape[1]}x{pred.shape[0]}"
        )
    gt, pred = run_preprocess(gt, pred, cfg.preprocess)
    gt_skel = thin(gt)
    pred_skel = thin(pred)
    gt_empty = not gt_skel.any()
    pred_empty = not pred_skel.any()

    if gt_empty or pred_empty:
        return _degenerate_result(
            gt_skel, pred_skel, gt_empty, pred_empty, with_diagnostics
        )

    gt_decomp = decompose(gt_skel)
    pred_decomp = decompose(pred_skel)
    pred_table = match_all(pred_decomp, gt_decomp, cfg.match)
    gt_table = match_all(gt_decomp, pred_decomp, cfg.match)
    pcs, pred_matched, pred_total = compute_pcs(pred_table, pred_decomp)
    rcs, gt_matched, gt_total = compute_rcs(gt_table, gt_decomp)
    scores = Scores(
        pcs=pcs,
        rcs=rcs,
        cts=harmonic_cts(pcs, rcs),
        pred_total_len=pred_total,
        pred_matched_len=pred_matched,
        gt_total_len=gt_total,
        gt_matched_len=gt_matched,
    )
    if with_diagnostics:
        diag = EvalDiagnostics(
            gt_skeleton=gt_skel,
            pred_skeleton=pred_skel,
            gt_decomposition=gt_decomp,
            pred_decomposition=pred_decomp,
            gt_table=gt_table,
            pred_table=pred_table,
        )
        return scores, diag
    return scores


def _degenerate_result(gt_skel, pred_skel, gt_empty, pred_empty, with_diagnostics):
    gt_decomp = None if gt_empty else decompose(gt_skel)
    pred_decomp = None if pred_empty else decompose(pred_skel)
    if gt_empty and pred_empty:
        flag, value = DEGENERATE_BOTH_EMPTY, 1.0
    elif pred_empty:
        flag, value = DEGENERATE_PRED_EMPTY, 0.0
    else:
        flag, value = DEGENERATE_GT_EMPTY, 0.0
    scores = Scores(
        pcs=value,
        rcs=value,
        cts=value,
        pred_total_len=pred_decomp.total_length if pred_decomp else 0.0,
        pred_matched_len=0.0,
        gt_total_len=gt_decomp.total_length if gt_decomp else 0.0,
        gt_matched_len=0.0,
        degenerate_flag=flag,
    )
    if with_diagnostics:
        empty_table: MatchTable = {}
        diag = EvalDiagnostics(
            gt_skeleton=gt_skel,
            pred_skeleton=pred_skel,
            gt_decomposition=gt_decomp,
            pred_decomposition=pred_decomp,
            gt_table=empty_table,
            pred_table=empty_table,
        )
        return scores, diag
    return scores
