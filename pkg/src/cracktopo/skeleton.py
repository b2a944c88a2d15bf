"""Zhang-Suen thinning and decomposition of skeletons into curve segments.

The skeleton is represented as a bool array of the same shape as the source
mask. Decomposition removes junction pixels (3+ skeleton neighbors under
8-connectivity) and turns each remaining 8-connected component into one
segment: a simple open path, a simple loop, or an isolated pixel. Segment
lengths are polygonal chain lengths (1 per orthogonal step, sqrt(2) per
diagonal step), never below 1.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from enum import Enum, IntEnum

import numpy as np
from scipy import ndimage

from .mask import STRUCTURE_8, as_mask

SQRT2 = math.sqrt(2.0)

_NEIGHBOR_OFFSETS = (
    (-1, -1), (-1, 0), (-1, 1),
    (0, -1), (0, 1),
    (1, -1), (1, 0), (1, 1),
)


class PixelClass(IntEnum):
    """Skeleton pixel role by 8-neighbor count (3 stands for >= 3)."""

    ISOLATED = 0
    ENDPOINT = 1
    REGULAR = 2
    JUNCTION = 3


BACKGROUND = -1


class SegmentKind(Enum):
    OPEN_PATH = "open_path"
    LOOP = "loop"
    ISOLATED_PIXEL = "isolated_pixel"
    JUNCTION_CLUSTER = "junction_cluster"


@dataclass(frozen=True)
class SkeletonSegment:
    """One junction-delimited skeleton curve.

    ``pixels`` is an (N, 2) int32 array of (row, col) coordinates. For open
    paths and loops it is in traversal order; for junction clusters it is in
    raster order.
    """

    id: int
    kind: SegmentKind
    pixels: np.ndarray
    length: float


@dataclass(frozen=True)
class SegmentDecomposition:
    """All segments of one skeleton plus the junction pixels between them."""

    width: int
    height: int
    segments: list[SkeletonSegment]
    junction_pixels: np.ndarray  # (H, W) bool
    label_map: np.ndarray  # (H, W) int32, segment id per pixel, 0 = none
    total_length: float

    @property
    def segment_ids(self) -> list[int]:
        return [seg.id for seg in self.segments]


def thin(mask: np.ndarray) -> np.ndarray:
    """Two-subiteration Zhang-Suen thinning to a fixed point."""
    img = as_mask(mask)
    while True:
        flags = _subiteration_flags(img, 1)
        changed = bool(flags.any())
        if changed:
            img[flags] = False
        flags = _subiteration_flags(img, 2)
        if flags.any():
            img[flags] = False
            changed = True
        if not changed:
            return img


def is_thinning_fixed_point(skel: np.ndarray) -> bool:
    """True iff one full Zhang-Suen iteration would delete nothing."""
    s = as_mask(skel)
    return not (_subiteration_flags(s, 1).any() or _subiteration_flags(s, 2).any())


def neighbor_counts(skel: np.ndarray) -> np.ndarray:
    """Count of set 8-neighbors for every pixel (out-of-bounds read as 0)."""
    p = np.pad(np.asarray(skel, dtype=bool), 1).astype(np.uint8)
    return (
        p[:-2, :-2] + p[:-2, 1:-1] + p[:-2, 2:]
        + p[1:-1, :-2] + p[1:-1, 2:]
        + p[2:, :-2] + p[2:, 1:-1] + p[2:, 2:]
    ).astype(np.int32)


def classify(skel: np.ndarray) -> np.ndarray:
    """Per-pixel PixelClass codes; BACKGROUND (-1) off the skeleton."""
    s = as_mask(skel)
    counts = neighbor_counts(s)
    out = np.full(s.shape, BACKGROUND, dtype=np.int8)
    out[s] = np.minimum(counts[s], int(PixelClass.JUNCTION)).astype(np.int8)
    return out


def decompose(skel: np.ndarray) -> SegmentDecomposition:
    """Split a fixed-point skeleton into junction-delimited segments."""
    s = as_mask(skel)
    if not is_thinning_fixed_point(s):
        raise ValueError("decompose requires a thinning fixed point; run thin() first")
    height, width = s.shape
    counts = neighbor_counts(s)
    junction = s & (counts >= 3)
    body = s & ~junction

    raw: list[tuple[tuple[int, int], SegmentKind, list[tuple[int, int]]]] = []

    body_labels, n_body = ndimage.label(body, structure=STRUCTURE_8)
    for k in range(1, n_body + 1):
        pixels = _label_pixels(body_labels, k)
        path, kind = _trace_component(pixels)
        raw.append((min(path), kind, path))

    # Junction clusters with no adjacent segment pixel become segments
    # themselves so a nonempty skeleton never decomposes to nothing.
    junction_keep = junction.copy()
    cluster_labels, n_clusters = ndimage.label(junction, structure=STRUCTURE_8)
    for k in range(1, n_clusters + 1):
        pixels = _label_pixels(cluster_labels, k)
        if _touches(pixels, body):
            continue
        raw.append((min(pixels), SegmentKind.JUNCTION_CLUSTER, pixels))
        for y, x in pixels:
            junction_keep[y, x] = False

    raw.sort(key=lambda item: item[0])
    segments: list[SkeletonSegment] = []
    label_map = np.zeros(s.shape, dtype=np.int32)
    total = 0.0
    for seg_id, (_, kind, path) in enumerate(raw, start=1):
        coords = np.asarray(path, dtype=np.int32).reshape(-1, 2)
        seg = SkeletonSegment(
            id=seg_id, kind=kind, pixels=coords, length=_chain_length(coords, kind)
        )
        segments.append(seg)
        label_map[coords[:, 0], coords[:, 1]] = seg_id
        total += seg.length

    return SegmentDecomposition(
        width=width,
        height=height,
        segments=segments,
        junction_pixels=junction_keep,
        label_map=label_map,
        total_length=total,
    )


def segment_length(seg: SkeletonSegment) -> float:
    """Continuous length of a segment (recomputed from its pixels)."""
    return _chain_length(seg.pixels, seg.kind)


def _chain_length(coords: np.ndarray, kind: SegmentKind) -> float:
    n = len(coords)
    if kind is SegmentKind.ISOLATED_PIXEL:
        return 1.0
    if kind is SegmentKind.JUNCTION_CLUSTER:
        return float(max(1, n - 1))
    if kind is SegmentKind.LOOP:
        steps = np.abs(coords - np.roll(coords, -1, axis=0))
    else:
        steps = np.abs(np.diff(coords, axis=0))
    diagonal = int(np.count_nonzero(steps.min(axis=1)))
    return (len(steps) - diagonal) * 1.0 + diagonal * SQRT2


def _subiteration_flags(img: np.ndarray, step: int) -> np.ndarray:
    """Deletion flags for one Zhang-Suen subiteration (simultaneous update)."""
    p = np.pad(img, 1)
    n = p[:-2, 1:-1]  # P2
    ne = p[:-2, 2:]  # P3
    e = p[1:-1, 2:]  # P4
    se = p[2:, 2:]  # P5
    s = p[2:, 1:-1]  # P6
    sw = p[2:, :-2]  # P7
    w = p[1:-1, :-2]  # P8
    nw = p[:-2, :-2]  # P9

    ring = (n, ne, e, se, s, sw, w, nw, n)
    b = np.zeros(img.shape, dtype=np.uint8)
    a = np.zeros(img.shape, dtype=np.uint8)
    for i in range(8):
        b += ring[i]
        a += ~ring[i] & ring[i + 1]

    flags = img & (b >= 2) & (b <= 6) & (a == 1)
    if step == 1:
        flags &= ~(n & e & s) & ~(e & s & w)
    else:
        flags &= ~(n & e & w) & ~(n & s & w)
    return flags


def _label_pixels(labels: np.ndarray, k: int) -> list[tuple[int, int]]:
    ys, xs = np.nonzero(labels == k)
    return [(int(y), int(x)) for y, x in zip(ys, xs)]


def _touches(pixels: list[tuple[int, int]], mask: np.ndarray) -> bool:
    h, w = mask.shape
    for y, x in pixels:
        for dy, dx in _NEIGHBOR_OFFSETS:
            ny, nx = y + dy, x + dx
            if 0 <= ny < h and 0 <= nx < w and mask[ny, nx]:
                return True
    return False


def _trace_component(pixels: list[tuple[int, int]]) -> tuple[list[tuple[int, int]], SegmentKind]:
    """Order a <=2-degree component as a path or loop.

    Every pixel here has at most 2 neighbors within the component (junctions
    were removed), so the component is a simple path, cycle, or single pixel.
    """
    if len(pixels) == 1:
        return pixels, SegmentKind.ISOLATED_PIXEL
    pixset = set(pixels)
    nbrs: dict[tuple[int, int], list[tuple[int, int]]] = {}
    for y, x in pixels:
        nbrs[(y, x)] = sorted(
            (y + dy, x + dx)
            for dy, dx in _NEIGHBOR_OFFSETS
            if (y + dy, x + dx) in pixset
        )
    endpoints = sorted(p for p, ns in nbrs.items() if len(ns) == 1)
    if endpoints:
        start = endpoints[0]
        kind = SegmentKind.OPEN_PATH
    else:
        start = min(pixels)
        kind = SegmentKind.LOOP
    path = [start]
    prev: tuple[int, int] | None = None
    current = start
    while True:
        options = [q for q in nbrs[current] if q != prev]
        if not options:
            break  # far endpoint of an open path
        nxt = options[0]
        if nxt == start and kind is SegmentKind.LOOP:
            break
        path.append(nxt)
        prev, current = current, nxt
    return path, kind
