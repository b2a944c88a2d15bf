"""Command-line front end: single-pair ``eval`` and directory ``batch`` modes.

Exit codes: 0 success, 1 usage error, 2 I/O or image-format error,
3 dimension mismatch or unpairable batch inputs.
"""
from __future__ import annotations

import argparse
import sys
from concurrent.futures import ThreadPoolExecutor
from pathlib import Path

from .io import MaskFormatError, load_mask, save_rgb_png
from .matching import MatchConfig
from .preprocess import PreprocessConfig
from .report import EvalReport, render_csv, render_json, render_overlay, summarize, write_report
from .scoring import DimensionMismatchError, EvalConfig, evaluate

EXIT_OK = 0
EXIT_USAGE = 1
EXIT_IO = 2
EXIT_DIMENSION = 3


class _Parser(argparse.ArgumentParser):
    """argparse parser that exits 1 (not 2) on usage errors."""

    def error(self, message):
        self.print_usage(sys.stderr)
        self.exit(EXIT_USAGE, f"{self.prog}: error: {message}\n")


def main(argv=None) -> int:
    parser = _build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return int(exc.code or 0)
    try:
        cfg = _config_from_args(args)
    except ValueError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    try:
        if args.command == "eval":
            return _run_eval(args, cfg)
        return _run_batch(args, cfg)
    except DimensionMismatchError as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_DIMENSION
    except (MaskFormatError, OSError) as exc:
        print(f"{parser.prog}: error: {exc}", file=sys.stderr)
        return EXIT_IO


def _build_parser() -> _Parser:
    parser = _Parser(prog="cracktopo", description=__doc__)
    sub = parser.add_subparsers(dest="command", required=True)

    p_eval = sub.add_parser("eval", help="evaluate one ground-truth/prediction pair")
    p_eval.add_argument("--gt", required=True, help="ground-truth mask image (PNG or PGM)")
    p_eval.add_argument("--pred", required=True, help="predicted mask image (PNG or PGM)")
    _add_metric_flags(p_eval)
    p_eval.add_argument("--overlay", metavar="FILE", help="write a skeleton overlay PNG")
    p_eval.add_argument("--report", metavar="FILE", help="write a report file")
    p_eval.add_argument("--format", choices=["json", "csv"], default="csv")

    p_batch = sub.add_parser("batch", help="evaluate same-named files from two directories")
    p_batch.add_argument("--gt-dir", required=True)
    p_batch.add_argument("--pred-dir", required=True)
    _add_metric_flags(p_batch)
    p_batch.add_argument("--overlay-dir", metavar="DIR", help="write one overlay PNG per pair")
    p_batch.add_argument("--report", metavar="FILE", help="write the report here instead of stdout")
    p_batch.add_argument("--format", choices=["json", "csv"], default="csv")
    p_batch.add_argument(
        "--strict", action="store_true", help="fail (exit 3) when a file lacks its counterpart"
    )
    p_batch.add_argument("--jobs", type=int, default=1, metavar="N", help="parallel pair evaluations")
    return parser


def _add_metric_flags(p: argparse.ArgumentParser) -> None:
    p.add_argument("--buffer-radius", type=float, default=10.0, metavar="N")
    p.add_argument("--overlap-threshold", type=float, default=0.5, metavar="F")
    p.add_argument("--hole-fill-area", type=int, default=0, metavar="N")
    p.add_argument("--smooth", choices=["none", "open", "close"], default="none")
    p.add_argument("--smooth-radius", type=int, default=0, metavar="N")
    p.add_argument("--apply-to", choices=["pred", "both"], default="pred")
    p.add_argument("--binarize-threshold", type=int, default=128, metavar="N")


def _config_from_args(args) -> EvalConfig:
    preprocess = PreprocessConfig(
        hole_area_threshold=args.hole_fill_area,
        smooth_mode=args.smooth,
        smooth_radius=args.smooth_radius,
        apply_to="prediction_only" if args.apply_to == "pred" else "both",
    )
    match = MatchConfig(
        buffer_radius=args.buffer_radius, overlap_threshold=args.overlap_threshold
    )
    return EvalConfig(preprocess=preprocess, match=match, binarize_threshold=args.binarize_threshold)


def _run_eval(args, cfg: EvalConfig) -> int:
    gt = load_mask(args.gt, cfg.binarize_threshold)
    pred = load_mask(args.pred, cfg.binarize_threshold)
    scores, diag = evaluate(gt, pred, cfg, with_diagnostics=True)
    print(f"PCS={scores.pcs:.6f} RCS={scores.rcs:.6f} CTS={scores.cts:.6f}")
    if args.overlay:
        image = render_overlay(
            diag.gt_decomposition,
            diag.pred_decomposition,
            diag.gt_table,
            diag.pred_table,
            gt.shape,
        )
        save_rgb_png(image, args.overlay)
    if args.report:
        report = EvalReport(
            pair_id=Path(args.pred).name,
            gt_path=str(args.gt),
            pred_path=str(args.pred),
            scores=scores,
            config_echo=cfg,
        )
        write_report([report], args.format, args.report)
    return EXIT_OK


def _run_batch(args, cfg: EvalConfig) -> int:
    gt_dir = Path(args.gt_dir)
    pred_dir = Path(args.pred_dir)
    for d in (gt_dir, pred_dir):
        if not d.is_dir():
            raise FileNotFoundError(f"not a directory: {d}")
    gt_names = {p.name for p in gt_dir.iterdir() if p.is_file()}
    pred_names = {p.name for p in pred_dir.iterdir() if p.is_file()}
    unpaired = sorted(gt_names ^ pred_names)
    if unpaired:
        for name in unpaired:
            side = "pred" if name in gt_names else "gt"
            print(f"cracktopo: warning: {name} has no {side} counterpart", file=sys.stderr)
        if args.strict:
            print("cracktopo: error: unpaired files in strict mode", file=sys.stderr)
            return EXIT_DIMENSION
    names = sorted(gt_names & pred_names)
    if not names:
        print("cracktopo: error: no matching file pairs found", file=sys.stderr)
        return EXIT_DIMENSION

    overlay_dir = Path(args.overlay_dir) if args.overlay_dir else None
    if overlay_dir is not None:
        overlay_dir.mkdir(parents=True, exist_ok=True)

    def work(name: str):
        gt = load_mask(gt_dir / name, cfg.binarize_threshold)
        pred = load_mask(pred_dir / name, cfg.binarize_threshold)
        scores, diag = evaluate(gt, pred, cfg, with_diagnostics=True)
        overlay = None
        if overlay_dir is not None:
            overlay = render_overlay(
                diag.gt_decomposition,
                diag.pred_decomposition,
                diag.gt_table,
                diag.pred_table,
                gt.shape,
            )
        report = EvalReport(
            pair_id=name,
            gt_path=str(gt_dir / name),
            pred_path=str(pred_dir / name),
            scores=scores,
            config_echo=cfg,
        )
        return report, overlay

    jobs = max(1, args.jobs)
    if jobs == 1:
        results = [work(name) for name in names]
    else:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            results = list(pool.map(work, names))

    reports = []
    for name, (report, overlay) in zip(names, results):
        reports.append(report)
        if overlay_dir is not None and overlay is not None:
            save_rgb_png(overlay, overlay_dir / (Path(name).stem + ".png"))

    summary = summarize(reports)
    summary_line = (
        f"pairs={len(reports)} mean_cts={summary['mean_cts']:.6f} "
        f"micro_cts={summary['micro_cts']:.6f}"
    )
    if args.report:
        write_report(reports, args.format, args.report)
        print(summary_line)
    else:
        text = render_csv(reports) if args.format == "csv" else render_json(reports)
        sys.stdout.write(text)
        print(summary_line, file=sys.stderr)
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
