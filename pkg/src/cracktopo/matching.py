"""Buffered matching of skeleton segments between two decompositions.

A subject segment is compared against the union of all reference segments
that come within the buffer radius of it ("candidate integration"), so a
reference structure fragmented into several segments can jointly match one
subject segment. The buffer is a Euclidean disk; membership is the integer
predicate dx^2 + dy^2 <= radius^2, realized either by disk dilation
(:func:`match_one`) or by an equivalent KD-tree range query
(:func:`match_all`) - the two routes agree exactly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np
from scipy.spatial import cKDTree

from .mask import dilate, disk
from .skeleton import SegmentDecomposition, SkeletonSegment


@dataclass(frozen=True)
class MatchConfig:
    """Buffer radius in pixels and the inclusive overlap threshold."""

    buffer_radius: float = 10.0
    overlap_threshold: float = 0.5

    def __post_init__(self):
        if self.buffer_radius <= 0:
            raise ValueError("buffer_radius must be > 0")
        if not 0.0 <= self.overlap_threshold <= 1.0:
            raise ValueError("overlap_threshold must be in [0, 1]")


@dataclass(frozen=True)
class SegmentMatch:
    """Match verdict for one subject segment."""

    segment_id: int
    matched: bool
    overlap_ratio: float
    candidate_ids: tuple[int, ...]


MatchTable = dict[int, SegmentMatch]


def candidates_for(
    subject: SkeletonSegment, reference: SegmentDecomposition, radius: float
) -> list[int]:
    """Reference segment ids with any pixel within ``radius`` of the subject."""
    raster = _segment_raster(subject, reference.height, reference.width)
    near = dilate(raster, disk(radius))
    ids = np.unique(reference.label_map[near])
    return [int(i) for i in ids if i != 0]


def match_one(
    subject: SkeletonSegment, reference: SegmentDecomposition, cfg: MatchConfig
) -> SegmentMatch:
    """Match one subject segment against the integrated candidate mask."""
    ids = candidates_for(subject, reference, cfg.buffer_radius)
    if not ids:
        return SegmentMatch(subject.id, False, 0.0, ())
    union = np.isin(reference.label_map, ids)
    buffer = dilate(union, disk(cfg.buffer_radius))
    covered = int(np.count_nonzero(buffer[subject.pixels[:, 0], subject.pixels[:, 1]]))
    ratio = covered / len(subject.pixels)
    return SegmentMatch(
        subject.id, ratio >= cfg.overlap_threshold, ratio, tuple(ids)
    )


def match_all(
    subject: SegmentDecomposition,
    reference: SegmentDecomposition,
    cfg: MatchConfig | None = None,
) -> MatchTable:
    """Match every subject segment independently; one table entry per id.

    Equivalent to calling :func:`match_one` per segment, but candidate lookup
    and buffer membership are answered by a single KD-tree over the reference
    pixels (a reference pixel within radius of a subject pixel always belongs
    to a candidate segment, so the integrated-candidate buffer and the full
    reference buffer agree on subject pixels).
    """
    if cfg is None:
        cfg = MatchConfig()
    if (subject.width, subject.height) != (reference.width, reference.height):
        raise ValueError(
            f"decompositions differ in size: {subject.width}x{subject.height} "
            f"vs {reference.width}x{reference.height}"
        )
    table: MatchTable = {}
    if not subject.segments:
        return table
    if not reference.segments:
        for seg in subject.segments:
            table[seg.id] = SegmentMatch(seg.id, False, 0.0, ())
        return table

    ref_coords = np.concatenate([seg.pixels for seg in reference.segments])
    ref_ids = np.concatenate(
        [np.full(len(seg.pixels), seg.id, dtype=np.int32) for seg in reference.segments]
    )
    tree = cKDTree(ref_coords)
    threshold = cfg.overlap_threshold
    for seg in subject.segments:
        hits = tree.query_ball_point(seg.pixels, cfg.buffer_radius)
        covered = 0
        candidates: set[int] = set()
        for hit in hits:
            if hit:
                covered += 1
                candidates.update(int(ref_ids[j]) for j in hit)
        ratio = covered / len(seg.pixels)
        table[seg.id] = SegmentMatch(
            seg.id, ratio >= threshold, ratio, tuple(sorted(candidates))
        )
    return table


def _segment_raster(seg: SkeletonSegment, height: int, width: int) -> np.ndarray:
    if len(seg.pixels) and (
        seg.pixels[:, 0].max() >= height or seg.pixels[:, 1].max() >= width
    ):
        raise ValueError("segment pixels fall outside the reference raster")
    raster = np.zeros((height, width), dtype=bool)
    raster[seg.pixels[:, 0], seg.pixels[:, 1]] = True
    return raster
