"""Array conventions and validity checks used throughout the package.

Images are real float64 arrays of shape (C, H, W), row-major, with decoded
pixel intensities in [0, 1]. Spectra are complex128 arrays of the same
shape, indexed (c, u, v) with the zero frequency at index (0, 0). Masks
are 2-D binary arrays of shape (H, W). All values are treated as immutable
once built; no function in this package mutates its inputs.

Intermediate images produced by the augmentation math may leave [0, 1];
the range check applies when data crosses the decode or encode boundary,
which is why the transforms validate with check_range=False.
"""

from typing import NamedTuple

import numpy as np

from .errors import (
    DimensionMismatchError,
    NonBinaryMaskError,
    NonFiniteValueError,
    PixelRangeError,
)

CUP = "cup"
DISC = "disc"
STRUCTURES = (CUP, DISC)


class AmplitudePhase(NamedTuple):
    """Polar form of a spectrum: non-negative magnitudes and principal angles."""

    amplitude: np.ndarray
    phase: np.ndarray


def validate_image(image, check_range: bool = True) -> np.ndarray:
    """Check that image is a finite real (C, H, W) array; return it as float64.

    check_range=False skips the [0, 1] bound, for tensors that live between
    the decode and encode boundaries.
    """
    x = np.asarray(image)
    if np.iscomplexobj(x):
        raise DimensionMismatchError(
            "expected real-valued (C, H, W) image data, got complex dtype"
        )
    x = x.astype(np.float64, copy=False)
    if x.ndim != 3 or min(x.shape) < 1:
        raise DimensionMismatchError(
            f"expected (C, H, W) image with positive dimensions, got shape {x.shape}"
        )
    if not np.isfinite(x).all():
        raise NonFiniteValueError("image contains NaN or infinite values")
    if check_range and ((x < 0.0).any() or (x > 1.0).any()):
        raise PixelRangeError(
            f"pixel values outside [0, 1]: min={x.min():g}, max={x.max():g}"
        )
    return x


def validate_spectrum(spectrum) -> np.ndarray:
    """Check that spectrum is a finite (C, H, W) array; return it as complex128."""
    x = np.asarray(spectrum).astype(np.complex128, copy=False)
    if x.ndim != 3 or min(x.shape) < 1:
        raise DimensionMismatchError(
            f"expected (C, H, W) spectrum with positive dimensions, got shape {x.shape}"
        )
    if not np.isfinite(x).all():
        raise NonFiniteValueError("spectrum contains NaN or infinite components")
    return x


def validate_mask(mask) -> np.ndarray:
    """Check that mask is a 2-D array of zeros and ones; return it as bool."""
    m = np.asarray(mask)
    if m.ndim != 2 or min(m.shape) < 1:
        raise DimensionMismatchError(
            f"expected (H, W) mask with positive dimensions, got shape {m.shape}"
        )
    if m.dtype != bool:
        values = np.unique(m)
        if not np.isin(values, (0, 1)).all():
            raise NonBinaryMaskError(f"mask contains non-binary values: {values[:8]}")
        m = m.astype(bool)
    return m


def validate(data) -> None:
    """Dispatch to the matching check: 3-D real -> image, 3-D complex ->
    spectrum, 2-D -> mask. Raises a ValidationError subclass on failure."""
    x = np.asarray(data)
    if x.ndim == 3:
        if np.iscomplexobj(x):
            validate_spectrum(x)
        else:
            validate_image(x)
    elif x.ndim == 2:
        validate_mask(x)
    else:
        raise DimensionMismatchError(
            f"expected a 2-D mask or 3-D image/spectrum, got shape {x.shape}"
        )
