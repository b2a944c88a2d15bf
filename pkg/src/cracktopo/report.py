"""Transparency outputs: color-coded skeleton overlays and report files.

Overlay palette (exact byte values; prediction is drawn last and wins where
both skeletons touch the same pixel):

==================  =================
ground truth        prediction
==================  =================
matched   0,0,255   matched   0,255,0
unmatched 255,255,0 unmatched 255,0,0
junction 128,128,255 junction 255,128,128
==================  =================
"""
from __future__ import annotations

import csv
import dataclasses
import json
from dataclasses import dataclass
from pathlib import Path

import numpy as np

from .matching import MatchTable
from .scoring import EvalConfig, Scores, harmonic_cts
from .skeleton import SegmentDecomposition

COLOR_BACKGROUND = (0, 0, 0)
COLOR_GT_MATCHED = (0, 0, 255)
COLOR_GT_UNMATCHED = (255, 255, 0)
COLOR_GT_JUNCTION = (128, 128, 255)
COLOR_PRED_MATCHED = (0, 255, 0)
COLOR_PRED_UNMATCHED = (255, 0, 0)
COLOR_PRED_JUNCTION = (255, 128, 128)

CSV_HEADER = (
    "pair_id,gt_path,pred_path,pcs,rcs,cts,"
    "pred_total_len,pred_matched_len,gt_total_len,gt_matched_len,degenerate_flag"
)

REPORT_FORMATS = ("json", "csv")


@dataclass(frozen=True)
class EvalReport:
    """One evaluated pair plus the config that produced it."""

    pair_id: str
    gt_path: str
    pred_path: str
    scores: Scores
    config_echo: EvalConfig


def render_overlay(
    gt_decomp: SegmentDecomposition | None,
    pred_decomp: SegmentDecomposition | None,
    gt_table: MatchTable,
    pred_table: MatchTable,
    dims: tuple[int, int],
) -> np.ndarray:
    """Paint both skeletons onto an (H, W, 3) uint8 canvas.

    ``dims`` is (height, width). Either decomposition may be None (empty side).
    """
    height, width = dims
    image = np.zeros((height, width, 3), dtype=np.uint8)
    _paint_side(image, gt_decomp, gt_table, COLOR_GT_MATCHED, COLOR_GT_UNMATCHED, COLOR_GT_JUNCTION)
    _paint_side(
        image, pred_decomp, pred_table, COLOR_PRED_MATCHED, COLOR_PRED_UNMATCHED, COLOR_PRED_JUNCTION
    )
    return image


def _paint_side(image, decomp, table, matched_color, unmatched_color, junction_color):
    if decomp is None:
        return
    for seg in decomp.segments:
        verdict = table.get(seg.id)
        color = matched_color if (verdict is not None and verdict.matched) else unmatched_color
        image[seg.pixels[:, 0], seg.pixels[:, 1]] = color
    jy, jx = np.nonzero(decomp.junction_pixels)
    image[jy, jx] = junction_color


def summarize(reports: list[EvalReport]) -> dict[str, float]:
    """Macro mean CTS plus micro CTS pooled from summed lengths."""
    if not reports:
        return {"mean_cts": 0.0, "micro_cts": 0.0}
    mean_cts = sum(r.scores.cts for r in reports) / len(reports)
    pred_total = sum(r.scores.pred_total_len for r in reports)
    pred_matched = sum(r.scores.pred_matched_len for r in reports)
    gt_total = sum(r.scores.gt_total_len for r in reports)
    gt_matched = sum(r.scores.gt_matched_len for r in reports)
    micro_pcs = pred_matched / pred_total if pred_total > 0.0 else 0.0
    micro_rcs = gt_matched / gt_total if gt_total > 0.0 else 0.0
    return {"mean_cts": mean_cts, "micro_cts": harmonic_cts(micro_pcs, micro_rcs)}


def write_report(reports: list[EvalReport], format: str, path) -> None:
    """Write reports as CSV (fixed header, 6-decimal floats) or JSON."""
    if format not in REPORT_FORMATS:
        raise ValueError(f"report format must be one of {REPORT_FORMATS}")
    path = Path(path)
    if format == "csv":
        path.write_text(render_csv(reports), encoding="utf-8", newline="")
    else:
        path.write_text(render_json(reports), encoding="utf-8", newline="")


def render_csv(reports: list[EvalReport]) -> str:
    """CSV text with the exact fixed header and 6-decimal float fields."""
    import io as _io

    buf = _io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(CSV_HEADER.split(","))
    for r in reports:
        s = r.scores
        writer.writerow(
            [
                r.pair_id,
                r.gt_path,
                r.pred_path,
                f"{s.pcs:.6f}",
                f"{s.rcs:.6f}",
                f"{s.cts:.6f}",
                f"{s.pred_total_len:.6f}",
                f"{s.pred_matched_len:.6f}",
                f"{s.gt_total_len:.6f}",
                f"{s.gt_matched_len:.6f}",
                s.degenerate_flag,
            ]
        )
    return buf.getvalue()


def render_json(reports: list[EvalReport]) -> str:
    """JSON text: config echo, per-pair scores at full precision, summary."""
    config = reports[0].config_echo if reports else EvalConfig()
    payload = {
        "config": dataclasses.asdict(config),
        "pairs": [
            {
                "pair_id": r.pair_id,
                "gt_path": r.gt_path,
                "pred_path": r.pred_path,
                "pcs": r.scores.pcs,
                "rcs": r.scores.rcs,
                "cts": r.scores.cts,
                "pred_total_len": r.scores.pred_total_len,
                "pred_matched_len": r.scores.pred_matched_len,
                "gt_total_len": r.scores.gt_total_len,
                "gt_matched_len": r.scores.gt_matched_len,
                "degenerate_flag": r.scores.degenerate_flag,
            }
            for r in reports
        ],
        "summary": summarize(reports),
    }
    return json.dumps(payload, indent=2) + "\n"
