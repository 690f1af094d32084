"""Per-channel 2-D transforms and the polar split of a spectrum.

The forward transform is the plain unnormalized sum with the zero
frequency at index (0, 0); the inverse carries the 1/(HW) factor. No
centering shift is applied here; shifting is a display concern and lives
next to the visualization code. Everything is computed in double
precision regardless of the input dtype.
"""

import numpy as np

from .errors import (
    ImaginaryResidualError,
    NegativeAmplitudeError,
    NonFiniteValueError,
    ShapeMismatchError,
)
from .types import AmplitudePhase, validate_image, validate_spectrum

# An inverse transform of a conjugate-symmetric spectrum is real up to
# rounding noise; a residual above this fraction of the output peak means
# the spectrum never came from a real image.
IMAG_RESIDUAL_TOL = 1e-6


def dft2(image) -> np.ndarray:
    """Forward 2-D transform of each channel of a real (C, H, W) array."""
    x = validate_image(image, check_range=False)
    return np.fft.fft2(x, axes=(-2, -1))


def idft2(spectrum, strict: bool = False) -> tuple[np.ndarray, float]:
    """Inverse 2-D transform of each channel; returns (image, imag_residual).

    The real part is returned as the image. imag_residual is the largest
    absolute imaginary component left behind, reported so callers can
    confirm the spectrum was conjugate-symmetric. With strict=True a
    residual above IMAG_RESIDUAL_TOL times the output peak raises
    ImaginaryResidualError instead.
    """
    x = validate_spectrum(spectrum)
    z = np.fft.ifft2(x, axes=(-2, -1))
    image = np.ascontiguousarray(z.real)
    residual = float(np.abs(z.imag).max())
    if strict:
        limit = IMAG_RESIDUAL_TOL * float(np.abs(image).max())
        if residual > limit:
            raise ImaginaryResidualError(
                f"imaginary residual {residual:g} exceeds {limit:g}; "
                "spectrum is not conjugate-symmetric"
            )
    return image, residual


def decompose(spectrum) -> AmplitudePhase:
    """Split a spectrum into (amplitude, phase) with phase in (-pi, pi].

    Zero entries get phase 0 by convention; atan2 would otherwise report
    pi for a signed-zero real part.
    """
    x = validate_spectrum(spectrum)
    amplitude = np.abs(x)
    phase = np.angle(x)
    phase[phase == -np.pi] = np.pi
    phase[amplitude == 0.0] = 0.0
    return AmplitudePhase(amplitude, phase)


def recompose(amplitude, phase) -> np.ndarray:
    """Rebuild the complex spectrum as amplitude * exp(+i * phase)."""
    a = np.asarray(amplitude, dtype=np.float64)
    p = np.asarray(phase, dtype=np.float64)
    if a.shape != p.shape:
        raise ShapeMismatchError(
            f"amplitude shape {a.shape} does not match phase shape {p.shape}"
        )
    if not (np.isfinite(a).all() and np.isfinite(p).all()):
        raise NonFiniteValueError("amplitude or phase contains non-finite values")
    if (a < 0.0).any():
        raise NegativeAmplitudeError(f"amplitude has negative entries: min={a.min():g}")
    return a * np.exp(1j * p)


def hermitian_defect(spectrum) -> float:
    """Deviation from X(c,u,v) == conj(X(c,-u mod H,-v mod W)), relative
    to the peak magnitude. Zero for spectra of real images, up to rounding."""
    x = validate_spectrum(spectrum)
    mirrored = np.roll(x[:, ::-1, ::-1], shift=(1, 1), axis=(1, 2))
    defect = float(np.abs(x - np.conj(mirrored)).max())
    peak = float(np.abs(x).max())
    return defect / peak if peak > 0.0 else 0.0
