"""Binary raster masks and the morphology/connectivity kernels built on them.

A mask is a 2-D numpy bool array (``True`` = foreground/crack). All kernels
treat out-of-bounds pixels as background.
"""
from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np
from scipy import ndimage

# 3x3 structuring elements for pixel connectivity.
STRUCTURE_4 = np.array([[0, 1, 0], [1, 1, 1], [0, 1, 0]], dtype=bool)
STRUCTURE_8 = np.ones((3, 3), dtype=bool)


def as_mask(a) -> np.ndarray:
    """Validate and convert input to a 2-D bool mask.

    Accepts bool arrays or integer arrays with values in {0, 1}.
    """
    arr = np.asarray(a)
    if arr.ndim != 2:
        raise ValueError(f"mask must be 2-D, got shape {arr.shape}")
    if arr.shape[0] < 1 or arr.shape[1] < 1:
        raise ValueError(f"mask must be non-empty, got shape {arr.shape}")
    if arr.dtype == bool:
        return arr.copy()
    vals = np.unique(arr)
    if not np.isin(vals, (0, 1)).all():
        raise ValueError("mask values must be 0 or 1")
    return arr.astype(bool)


@dataclass(frozen=True)
class DiskElement:
    """Euclidean disk structuring element: offsets with dx^2 + dy^2 <= radius^2.

    ``footprint`` is the (2R+1)x(2R+1) bool stencil with the origin at the
    center; it is symmetric under negation by construction.
    """

    radius: float
    footprint: np.ndarray = field(repr=False, compare=False)

    @property
    def offsets(self) -> set[tuple[int, int]]:
        """Offsets as a set of (dx, dy) pairs."""
        r = self.footprint.shape[0] // 2
        ys, xs = np.nonzero(self.footprint)
        return {(int(x - r), int(y - r)) for y, x in zip(ys, xs)}


def disk(radius: float) -> DiskElement:
    """Build the disk element of the given pixel radius (>= 0)."""
    if radius < 0:
        raise ValueError("disk radius must be >= 0")
    r_int = int(np.floor(radius))
    span = np.arange(-r_int, r_int + 1)
    dy, dx = np.meshgrid(span, span, indexing="ij")
    footprint = (dx * dx + dy * dy) <= float(radius) * float(radius)
    footprint.setflags(write=False)
    return DiskElement(radius=radius, footprint=footprint)


def dilate(mask: np.ndarray, se: DiskElement) -> np.ndarray:
    """Set every pixel within the disk of a foreground pixel."""
    m = as_mask(mask)
    if se.footprint.shape == (1, 1):
        return m
    return ndimage.binary_dilation(m, structure=se.footprint, border_value=0)


def erode(mask: np.ndarray, se: DiskElement) -> np.ndarray:
    """Keep a pixel only if its whole disk neighborhood is in-bounds foreground."""
    m = as_mask(mask)
    if se.footprint.shape == (1, 1):
        return m
    return ndimage.binary_erosion(m, structure=se.footprint, border_value=0)


def connected_components(mask: np.ndarray, connectivity: int = 8) -> tuple[np.ndarray, list[int]]:
    """Label foreground components (0 = background).

    Returns (labels, sizes) where labels are 1..K in raster-scan order of each
    component's first pixel and sizes[k-1] is the pixel count of component k.
    """
    m = as_mask(mask)
    structure = _structure_for(connectivity)
    raw, n = ndimage.label(m, structure=structure)
    if n == 0:
        return raw.astype(np.int32), []
    labels = _relabel_raster_order(raw, n)
    sizes = np.bincount(labels.ravel(), minlength=n + 1)[1:]
    return labels, [int(s) for s in sizes]


def border_reachable_background(mask: np.ndarray) -> np.ndarray:
    """Mark background pixels 4-connected to any border background pixel."""
    m = as_mask(mask)
    bg = ~m
    labels, n = ndimage.label(bg, structure=STRUCTURE_4)
    if n == 0:
        return np.zeros_like(m)
    border = np.concatenate(
        [labels[0, :], labels[-1, :], labels[:, 0], labels[:, -1]]
    )
    reachable = np.unique(border[border > 0])
    return np.isin(labels, reachable)


def _structure_for(connectivity: int) -> np.ndarray:
    if connectivity == 4:
        return STRUCTURE_4
    if connectivity == 8:
        return STRUCTURE_8
    raise ValueError(f"connectivity must be 4 or 8, got {connectivity}")


def _relabel_raster_order(labels: np.ndarray, n: int) -> np.ndarray:
    """Renumber labels so that 1..n follow the raster order of first pixels."""
    flat = labels.ravel()
    first = np.full(n + 1, flat.size, dtype=np.int64)
    idx = np.flatnonzero(flat)
    # np.minimum.at keeps the earliest raster index per label
    np.minimum.at(first, flat[idx], idx)
    order = np.argsort(first[1:], kind="stable")
    remap = np.zeros(n + 1, dtype=np.int32)
    remap[order + 1] = np.arange(1, n + 1, dtype=np.int32)
    return remap[labels]
