"""Image I/O: PNG (8-bit gray or RGB) and binary PGM (P5) readers, PNG writer.

Grayscale intensities are thresholded to produce masks; RGB is first reduced
to integer luminance round(0.299 R + 0.587 G + 0.114 B) so binarization is
bit-reproducible across platforms.
"""
from __future__ import annotations

from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

DEFAULT_BINARIZE_THRESHOLD = 128

_PNG_MAGIC = b"\x89PNG\r\n\x1a\n"


class MaskFormatError(Exception):
    """Raised for unsupported or malformed image formats."""


def load_mask(path, binarize_threshold: int = DEFAULT_BINARIZE_THRESHOLD) -> np.ndarray:
    """Read a PNG or PGM file and binarize it to a bool mask.

    A pixel becomes foreground iff its 8-bit luminance >= binarize_threshold.
    """
    path = Path(path)
    with open(path, "rb") as f:
        magic = f.read(8)
    if magic.startswith(_PNG_MAGIC):
        gray = _read_png_luminance(path)
    elif magic.startswith(b"P5"):
        gray = _read_pgm(path)
    else:
        raise MaskFormatError(f"{path}: not a PNG or binary PGM file")
    return gray >= int(binarize_threshold)


def save_mask_png(mask: np.ndarray, path) -> None:
    """Write a bool mask as an 8-bit grayscale PNG (foreground = 255)."""
    arr = (np.asarray(mask, dtype=bool).astype(np.uint8)) * 255
    Image.fromarray(arr).save(path, format="PNG")


def save_rgb_png(image: np.ndarray, path) -> None:
    """Write an (H, W, 3) uint8 array as an RGB PNG."""
    arr = np.asarray(image)
    if arr.ndim != 3 or arr.shape[2] != 3 or arr.dtype != np.uint8:
        raise ValueError(f"expected (H, W, 3) uint8 image, got {arr.shape} {arr.dtype}")
    Image.fromarray(arr).save(path, format="PNG")


def _read_png_luminance(path: Path) -> np.ndarray:
    try:
        with Image.open(path) as img:
            img.load()
            mode = img.mode
            if mode == "1":
                img = img.convert("L")
                mode = "L"
            elif mode == "P":
                img = img.convert("RGB")
                mode = "RGB"
            if mode == "L":
                return np.asarray(img, dtype=np.uint8)
            if mode == "RGB":
                rgb = np.asarray(img, dtype=np.uint16)
                return _integer_luminance(rgb)
            raise MaskFormatError(f"{path}: unsupported PNG mode {mode!r} (need 8-bit gray or RGB)")
    except UnidentifiedImageError as exc:
        raise MaskFormatError(f"{path}: cannot decode PNG") from exc


def _integer_luminance(rgb: np.ndarray) -> np.ndarray:
    r = rgb[..., 0].astype(np.uint32)
    g = rgb[..., 1].astype(np.uint32)
    b = rgb[..., 2].astype(np.uint32)
    # round-half-up in pure integer arithmetic
    return ((299 * r + 587 * g + 114 * b + 500) // 1000).astype(np.uint8)


def _read_pgm(path: Path) -> np.ndarray:
    with open(path, "rb") as f:
        data = f.read()
    header, offset = _parse_pgm_header(data, path)
    width, height, maxval = header
    expected = width * height
    pixels = data[offset : offset + expected]
    if len(pixels) < expected:
        raise MaskFormatError(f"{path}: PGM truncated ({len(pixels)} of {expected} bytes)")
    arr = np.frombuffer(pixels, dtype=np.uint8).reshape(height, width)
    if maxval == 255:
        return arr
    # rescale to 8-bit with integer round-half-up
    scaled = (arr.astype(np.uint32) * 255 * 2 + maxval) // (2 * maxval)
    return scaled.astype(np.uint8)


def _parse_pgm_header(data: bytes, path: Path) -> tuple[tuple[int, int, int], int]:
    """Parse 'P5 <w> <h> <maxval>' allowing whitespace and # comments."""
    if not data.startswith(b"P5"):
        raise MaskFormatError(f"{path}: not a binary PGM (P5) file")
    pos = 2
    fields: list[int] = []
    while len(fields) < 3:
        while pos < len(data) and data[pos : pos + 1].isspace():
            pos += 1
        if pos < len(data) and data[pos : pos + 1] == b"#":
            while pos < len(data) and data[pos] not in (0x0A, 0x0D):
                pos += 1
            continue
        start = pos
        while pos < len(data) and data[pos : pos + 1].isdigit():
            pos += 1
        if pos == start:
            raise MaskFormatError(f"{path}: malformed PGM header")
        fields.append(int(data[start:pos]))
    if pos >= len(data) or not data[pos : pos + 1].isspace():
        raise MaskFormatError(f"{path}: malformed PGM header")
    pos += 1  # single whitespace byte separates header from raster
    width, height, maxval = fields
    if width < 1 or height < 1:
        raise MaskFormatError(f"{path}: bad PGM dimensions {width}x{height}")
    if not 1 <= maxval <= 255:
        raise MaskFormatError(f"{path}: PGM maxval {maxval} unsupported (need 1..255)")
    return (width, height, maxval), pos
