"""Image and mask codecs plus resampling.

Decoding normalizes 8-bit values to [0, 1] floats; encoding clamps to
[0, 1] and quantizes back to 8 bits, so a decode after encode moves no
pixel by more than one quantization step (1/255). Masks are single-channel
PNGs with foreground stored as 255.
"""

from pathlib import Path

import numpy as np
from PIL import Image, UnidentifiedImageError

from .errors import NonBinaryMaskError, UndecodableImageError
from .types import validate_image, validate_mask

IMAGE_EXTENSIONS = (".png", ".ppm")


def decode_image(path) -> np.ndarray:
    """Read a PNG or PPM file as a (3, H, W) float64 array in [0, 1]."""
    path = Path(path)
    try:
        with Image.open(path) as im:
            rgb = np.asarray(im.convert("RGB"), dtype=np.float64)
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise UndecodableImageError(f"cannot decode image {path}: {exc}") from exc
    return np.ascontiguousarray(rgb.transpose(2, 0, 1)) / 255.0


def encode_image(image, path) -> None:
    """Clamp to [0, 1], quantize to 8 bits and write PNG or PPM by extension."""
    x = validate_image(image, check_range=False)
    path = Path(path)
    quantized = np.rint(np.clip(x, 0.0, 1.0) * 255.0).astype(np.uint8)
    Image.fromarray(quantized.transpose(1, 2, 0)).save(path)


def decode_mask(path) -> np.ndarray:
    """Read a single-channel mask PNG; values must be 0 or 255. Returns
    an (H, W) bool array."""
    path = Path(path)
    try:
        with Image.open(path) as im:
            gray = np.asarray(im.convert("L"))
    except (UnidentifiedImageError, OSError, ValueError) as exc:
        raise UndecodableImageError(f"cannot decode mask {path}: {exc}") from exc
    values = np.unique(gray)
    if not np.isin(values, (0, 255)).all():
        raise NonBinaryMaskError(
            f"mask {path} holds values other than 0 and 255: {values[:8]}"
        )
    return gray == 255


def encode_mask(mask, path) -> None:
    """Write a binary mask as an 8-bit single-channel PNG, foreground 255."""
    m = validate_mask(mask)
    Image.fromarray(m.astype(np.uint8) * 255).save(Path(path))


def clamp01(image) -> np.ndarray:
    """Clip values into [0, 1]."""
    return np.clip(np.asarray(image, dtype=np.float64), 0.0, 1.0)


def _source_coords(out_size: int, in_size: int) -> np.ndarray:
    # map output pixel centers onto input pixel centers
    return (np.arange(out_size) + 0.5) * (in_size / out_size) - 0.5


def resize_bilinear(image, height: int, width: int) -> np.ndarray:
    """Resample a (C, H, W) image with center-aligned bilinear interpolation,
    clamping at the edges. No antialias prefilter is applied."""
    x = validate_image(image, check_range=False)
    _, in_h, in_w = x.shape
    if (in_h, in_w) == (height, width):
        return x.copy()
    rows = _source_coords(height, in_h)
    cols = _source_coords(width, in_w)
    r0 = np.floor(rows).astype(np.int64)
    c0 = np.floor(cols).astype(np.int64)
    fr = rows - r0
    fc = cols - c0
    r0c = np.clip(r0, 0, in_h - 1)
    r1c = np.clip(r0 + 1, 0, in_h - 1)
    c0c = np.clip(c0, 0, in_w - 1)
    c1c = np.clip(c0 + 1, 0, in_w - 1)
    top = x[:, r0c, :][:, :, c0c] * (1.0 - fc) + x[:, r0c, :][:, :, c1c] * fc
    bottom = x[:, r1c, :][:, :, c0c] * (1.0 - fc) + x[:, r1c, :][:, :, c1c] * fc
    return top * (1.0 - fr[:, None]) + bottom * fr[:, None]


def resize_nearest(mask, height: int, width: int) -> np.ndarray:
    """Resample a binary mask with nearest-neighbor sampling so it stays binary."""
    m = validate_mask(mask)
    in_h, in_w = m.shape
    if (in_h, in_w) == (height, width):
        return m.copy()
    rows = np.clip(np.rint(_source_coords(height, in_h)).astype(np.int64), 0, in_h - 1)
    cols = np.clip(np.rint(_source_coords(width, in_w)).astype(np.int64), 0, in_w - 1)
    return m[rows[:, None], cols[None, :]]
