import numpy as np
import pytest

from cracktopo import EvalConfig, MatchConfig, PreprocessConfig, evaluate
from cracktopo_arrays import cts_score, cts_score_batch


def walk_mask(shape, rng, steps=None):
    h, w = shape
    m = np.zeros(shape, dtype=bool)
    y, x = int(rng.integers(h)), int(rng.integers(w))
    dirs = [(-1, -1), (-1, 0), (-1, 1), (0, -1), (0, 1), (1, -1), (1, 0), (1, 1)]
    d = int(rng.integers(8))
    for _ in range(steps if steps is not None else 2 * (h + w)):
        m[y, x] = True
        if rng.random() < 0.3:
            d = int(rng.integers(8))
        dy, dx = dirs[d]
        y = min(max(y + dy, 0), h - 1)
        x = min(max(x + dx, 0), w - 1)
    return m


def test_identical_nonempty_pair_scores_one():
    rng = np.random.default_rng(1)
    m = walk_mask((48, 48), rng)
    out = cts_score(m, m.copy())
    assert out["pcs"] == 1.0
    assert out["rcs"] == 1.0
    assert out["cts"] == 1.0
    assert out["degenerate_flag"] == "none"
    assert out["lengths"]["pred_total"] == out["lengths"]["gt_total"] > 0


def test_both_empty_is_degenerate_perfect():
    z = np.zeros((16, 16), dtype=np.uint8)
    out = cts_score(z, z)
    assert out["cts"] == 1.0
    assert out["degenerate_flag"] == "both_empty"


def test_nonzero_means_foreground():
    a = np.zeros((20, 20), dtype=np.int32)
    a[10, 2:18] = 255
    b = np.zeros((20, 20), dtype=np.int64)
    b[10, 2:18] = -7  # any nonzero value counts
    out = cts_score(a, b)
    assert out["cts"] == 1.0


def test_shape_and_rank_errors():
    with pytest.raises(ValueError, match="2-D"):
        cts_score(np.zeros((4, 4, 4), dtype=np.uint8), np.zeros((4, 4), dtype=np.uint8))
    with pytest.raises(ValueError, match="shape mismatch"):
        cts_score(np.zeros((4, 4), dtype=np.uint8), np.zeros((4, 5), dtype=np.uint8))


def test_float_dtype_rejected():
    with pytest.raises(TypeError, match="threshold"):
        cts_score(np.zeros((4, 4)), np.zeros((4, 4)))


def test_inputs_never_mutated():
    rng = np.random.default_rng(2)
    gt = (walk_mask((32, 32), rng)).astype(np.uint8)
    pred = (walk_mask((32, 32), rng)).astype(np.uint8)
    gt.setflags(write=False)
    pred.setflags(write=False)
    gt_copy = gt.copy()
    pred_copy = pred.copy()
    cts_score(gt, pred, hole_area_threshold=9, smooth_mode="close", smooth_radius=1)
    assert np.array_equal(gt, gt_copy)
    assert np.array_equal(pred, pred_copy)


def test_matches_primary_evaluate_bit_exactly():
    rng = np.random.default_rng(3)
    for _ in range(10):
        gt = walk_mask((64, 64), rng)
        pred = walk_mask((64, 64), rng)
        out = cts_score(gt, pred, buffer_radius=7, overlap_threshold=0.4)
        cfg = EvalConfig(match=MatchConfig(buffer_radius=7, overlap_threshold=0.4))
        ref = evaluate(gt, pred, cfg)
        assert out["pcs"] == ref.pcs
        assert out["rcs"] == ref.rcs
        assert out["cts"] == ref.cts
        assert out["lengths"]["pred_matched"] == ref.pred_matched_len


def test_preprocess_options_are_honored():
    gt = np.zeros((40, 40), dtype=np.uint8)
    gt[18:23, 5:35] = 1
    pred = gt.copy()
    pred[20, 19:21] = 0
    plain = cts_score(gt, pred)
    filled = cts_score(gt, pred, hole_area_threshold=4)
    cfg = EvalConfig(preprocess=PreprocessConfig(hole_area_threshold=4))
    ref = evaluate(gt != 0, pred != 0, cfg)
    assert filled["lengths"]["pred_total"] == ref.pred_total_len
    assert plain["lengths"]["pred_total"] != filled["lengths"]["pred_total"]


def test_batch_singleton_equals_single():
    rng = np.random.default_rng(4)
    gt = walk_mask((32, 32), rng)
    pred = walk_mask((32, 32), rng)
    single = cts_score(gt, pred)
    batch = cts_score_batch(gt[None], pred[None])
    assert batch == [single]


def test_batch_equals_per_item_calls():
    rng = np.random.default_rng(5)
    gts = np.stack([walk_mask((48, 48), rng) for _ in range(8)])
    preds = np.stack([walk_mask((48, 48), rng) for _ in range(8)])
    batch = cts_score_batch(gts, preds)
    singles = [cts_score(g, p) for g, p in zip(gts, preds)]
    assert batch == singles


def test_batch_two_identical_pairs():
    rng = np.random.default_rng(6)
    m = walk_mask((32, 32), rng)
    batch = cts_score_batch(np.stack([m, m]), np.stack([m, m]))
    assert batch[0] == batch[1]
    assert batch[0]["cts"] == 1.0


def test_batch_workers_preserve_order_and_values():
    rng = np.random.default_rng(7)
    gts = np.stack([walk_mask((48, 48), rng) for _ in range(6)])
    preds = np.stack([walk_mask((48, 48), rng) for _ in range(6)])
    assert cts_score_batch(gts, preds, workers=4) == cts_score_batch(gts, preds)


def test_batch_size_mismatch_errors():
    with pytest.raises(ValueError, match="batch size"):
        cts_score_batch(np.zeros((2, 4, 4), dtype=np.uint8), np.zeros((3, 4, 4), dtype=np.uint8))
    with pytest.raises(ValueError, match="3-D"):
        cts_score_batch(np.zeros((4, 4), dtype=np.uint8), np.zeros((4, 4), dtype=np.uint8))
