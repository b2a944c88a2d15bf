"""Binding acceptance: array results must equal the CLI, double for double."""
import json
import subprocess
import sys

import numpy as np

from cracktopo_arrays import cts_score, cts_score_batch

from test_arrays import walk_mask


def write_pgm(path, mask):
    arr = np.where(np.asarray(mask, dtype=bool), 255, 0).astype(np.uint8)
    h, w = arr.shape
    with open(path, "wb") as f:
        f.write(f"P5\n{w} {h}\n255\n".encode("ascii"))
        f.write(arr.tobytes())


def cli_eval_json(gt_path, pred_path, report_path):
    proc = subprocess.run(
        [
            sys.executable,
            "-m",
            "cracktopo",
            "eval",
            "--gt", str(gt_path),
            "--pred", str(pred_path),
            "--report", str(report_path),
            "--format", "json",
        ],
        capture_output=True,
        text=True,
    )
    assert proc.returncode == 0, proc.stderr
    return json.loads(report_path.read_text())["pairs"][0]


def test_criterion_11_binding_equals_cli_on_50_pairs(tmp_path):
    rng = np.random.default_rng(11011)
    gts, preds, results = [], [], []
    for i in range(50):
        gt = walk_mask((48, 48), rng)
        pred = walk_mask((48, 48), rng)
        gts.append(gt)
        preds.append(pred)
        results.append(cts_score(gt, pred))

        gt_path = tmp_path / f"gt_{i}.pgm"
        pred_path = tmp_path / f"pred_{i}.pgm"
        write_pgm(gt_path, gt)
        write_pgm(pred_path, pred)
        row = cli_eval_json(gt_path, pred_path, tmp_path / f"r_{i}.json")

        out = results[-1]
        assert out["pcs"] == row["pcs"]
        assert out["rcs"] == row["rcs"]
        assert out["cts"] == row["cts"]
        assert out["lengths"]["pred_total"] == row["pred_total_len"]
        assert out["lengths"]["pred_matched"] == row["pred_matched_len"]
        assert out["lengths"]["gt_total"] == row["gt_total_len"]
        assert out["lengths"]["gt_matched"] == row["gt_matched_len"]
        assert out["degenerate_flag"] == row["degenerate_flag"]

    batch = cts_score_batch(np.stack(gts), np.stack(preds))
    assert batch == results
    print("ACCEPTANCE 11 PASS: binding equals CLI on 50 PGM pairs, doubles bit-identical")
