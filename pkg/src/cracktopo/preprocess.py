"""Optional mask cleanup before skeletonization: hole filling and smoothing.

Both steps default to off, in which case ``run_preprocess`` is the bit-exact
identity and downstream scores are unaffected.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy import ndimage

from .mask import STRUCTURE_4, as_mask, dilate, disk, erode

SMOOTH_MODES = ("none", "open", "close")
APPLY_TO = ("prediction_only", "both")


@dataclass(frozen=True)
class PreprocessConfig:
    """Cleanup tunables. Defaults disable every step."""

    hole_area_threshold: int = 0
    smooth_mode: str = "none"
    smooth_radius: int = 0
    apply_to: str = "prediction_only"

    def __post_init__(self):
        if self.hole_area_threshold < 0:
            raise ValueError("hole_area_threshold must be >= 0")
        if self.smooth_mode not in SMOOTH_MODES:
            raise ValueError(f"smooth_mode must be one of {SMOOTH_MODES}")
        if self.smooth_radius < 0:
            raise ValueError("smooth_radius must be >= 0")
        if self.apply_to not in APPLY_TO:
            raise ValueError(f"apply_to must be one of {APPLY_TO}")

    @property
    def is_identity(self) -> bool:
        return self.hole_area_threshold == 0 and (
            self.smooth_mode == "none" or self.smooth_radius == 0
        )


def fill_holes(mask: np.ndarray, max_area: int) -> np.ndarray:
    """Fill enclosed background components of pixel count <= max_area.

    A hole is a 4-connected background component containing no image-border
    pixel; larger holes and border-connected gaps are left untouched.
    max_area = 0 disables the step entirely.
    """
    m = as_mask(mask)
    if max_area == 0:
        return m
    labels, n = ndimage.label(~m, structure=STRUCTURE_4)
    if n == 0:
        return m
    border = np.concatenate([labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]])
    touches_border = np.zeros(n + 1, dtype=bool)
    touches_border[border[border > 0]] = True
    sizes = np.bincount(labels.ravel(), minlength=n + 1)
    fillable = ~touches_border & (sizes <= max_area)
    fillable[0] = False
    return m | fillable[labels]


def smooth(mask: np.ndarray, mode: str, radius: int) -> np.ndarray:
    """Morphological open or close with a Euclidean disk of the given radius."""
    if mode not in SMOOTH_MODES:
        raise ValueError(f"smooth mode must be one of {SMOOTH_MODES}")
    m = as_mask(mask)
    if mode == "none" or radius == 0:
        return m
    se = disk(radius)
    if mode == "open":
        return dilate(erode(m, se), se)
    return erode(dilate(m, se), se)


def run_preprocess(
    gt: np.ndarray, pred: np.ndarray, cfg: PreprocessConfig | None = None
) -> tuple[np.ndarray, np.ndarray]:
    """Apply hole filling then smoothing per the config's routing rule."""
    if cfg is None:
        cfg = PreprocessConfig()
    gt = as_mask(gt)
    pred = as_mask(pred)
    if cfg.is_identity:
        return gt, pred
    pred = _apply(pred, cfg)
    if cfg.apply_to == "both":
        gt = _apply(gt, cfg)
    return gt, pred


def _apply(mask: np.ndarray, cfg: PreprocessConfig) -> np.ndarray:
    out = fill_holes(mask, cfg.hole_area_threshold)
    return smooth(out, cfg.smooth_mode, cfg.smooth_radius)
