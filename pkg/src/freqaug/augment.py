"""Amplitude-space augmentation.

An augmented image takes its structure from the source image's phase and
its style from a convex mix of the source and target amplitude spectra.
Optionally the target amplitude is shrunk first with a soft threshold,
which kills small entries attributed to background interference before
they leak into the mix. Thresholds are chosen per channel as a fraction
of that channel's peak amplitude.

All functions here are pure; clamping to [0, 1] is deliberately left to
the encode step so the algebraic identities stay exactly testable.
"""

from dataclasses import dataclass

import numpy as np

from .errors import (
    ChannelCountMismatchError,
    DimensionMismatchError,
    NegativeAmplitudeError,
    ShapeMismatchError,
    ValidationError,
)
from .fourier import decompose, dft2, idft2, recompose
from .types import validate_image

DEFAULT_ALPHA = 0.05  # threshold fraction; larger values darken the output


@dataclass(frozen=True)
class AugmentParams:
    """Knobs for one augmentation call.

    lam is the mixing strength toward the target amplitude. The operating
    range is (0, 1]; 0 is accepted as a testing endpoint that reproduces
    the source. alpha is the soft-threshold fraction in [0, 1), applied to
    the target amplitude when st_enabled. window, if set, restricts mixing
    to a centered low-frequency band covering that fraction of each axis
    (1.0 mixes the full spectrum, the default behaviour).
    """

    lam: float = 1.0
    alpha: float = DEFAULT_ALPHA
    st_enabled: bool = True
    window: float | None = None

    def __post_init__(self):
        if not (np.isfinite(self.lam) and 0.0 <= self.lam <= 1.0):
            raise ValidationError(f"lam must lie in [0, 1], got {self.lam}")
        if not (np.isfinite(self.alpha) and 0.0 <= self.alpha < 1.0):
            raise ValidationError(f"alpha must lie in [0, 1), got {self.alpha}")
        if self.window is not None and not (
            np.isfinite(self.window) and 0.0 <= self.window <= 1.0
        ):
            raise ValidationError(f"window must lie in [0, 1], got {self.window}")


def soft_threshold(values, thresholds) -> np.ndarray:
    """Shrink each entry toward zero: sign(v) * max(|v| - t_c, 0).

    thresholds holds one non-negative entry per channel (a scalar is
    broadcast). On non-negative amplitudes this reduces to
    max(values - t_c, 0).
    """
    a = np.asarray(values, dtype=np.float64)
    if a.ndim != 3:
        raise DimensionMismatchError(f"expected (C, H, W) array, got shape {a.shape}")
    t = np.asarray(thresholds, dtype=np.float64)
    if t.ndim == 0:
        t = np.full(a.shape[0], float(t))
    if t.shape != (a.shape[0],):
        raise ChannelCountMismatchError(
            f"expected {a.shape[0]} thresholds, got shape {t.shape}"
        )
    if not np.isfinite(t).all() or (t < 0.0).any():
        raise ValidationError("thresholds must be finite and non-negative")
    return np.sign(a) * np.maximum(np.abs(a) - t[:, None, None], 0.0)


def compute_thresholds(amplitude, alpha: float = DEFAULT_ALPHA) -> np.ndarray:
    """Per-channel threshold: alpha times that channel's peak amplitude."""
    a = np.asarray(amplitude, dtype=np.float64)
    if a.ndim != 3:
        raise DimensionMismatchError(f"expected (C, H, W) array, got shape {a.shape}")
    if (a < 0.0).any():
        raise NegativeAmplitudeError("amplitude must be non-negative")
    if not (np.isfinite(alpha) and 0.0 <= alpha < 1.0):
        raise ValidationError(f"alpha must lie in [0, 1), got {alpha}")
    return alpha * a.max(axis=(1, 2))


def mix_amplitudes(a_source, a_target, lam: float) -> np.ndarray:
    """Convex combination (1 - lam) * source + lam * target, elementwise."""
    a = np.asarray(a_source, dtype=np.float64)
    b = np.asarray(a_target, dtype=np.float64)
    if a.shape != b.shape:
        raise ShapeMismatchError(f"shape {a.shape} does not match {b.shape}")
    if not (np.isfinite(lam) and 0.0 <= lam <= 1.0):
        raise ValidationError(f"lam must lie in [0, 1], got {lam}")
    return (1.0 - lam) * a + lam * b


def low_frequency_mask(height: int, width: int, fraction: float) -> np.ndarray:
    """Boolean (H, W) mask selecting wrapped frequencies within fraction of
    the Nyquist band on each axis. fraction=1 selects everything,
    fraction=0 selects only the zero-frequency bin."""
    fu = np.minimum(np.arange(height), height - np.arange(height))
    fv = np.minimum(np.arange(width), width - np.arange(width))
    return (fu[:, None] <= fraction * (height / 2.0)) & (
        fv[None, :] <= fraction * (width / 2.0)
    )


def _augment(x_source, x_target, params: AugmentParams, apply_st: bool):
    xs = validate_image(x_source, check_range=False)
    xt = validate_image(x_target, check_range=False)
    if xs.shape != xt.shape:
        raise ShapeMismatchError(
            f"source shape {xs.shape} does not match target shape {xt.shape}"
        )
    a_source, p_source = decompose(dft2(xs))
    a_target = np.abs(dft2(xt))
    if apply_st:
        a_target = soft_threshold(a_target, compute_thresholds(a_target, params.alpha))
    mixed = mix_amplitudes(a_source, a_target, params.lam)
    if params.window is not None:
        keep = low_frequency_mask(xs.shape[1], xs.shape[2], params.window)
        mixed = np.where(keep, mixed, a_source)
    return idft2(recompose(mixed, p_source))


def fdg_augment(x_source, x_target, params: AugmentParams) -> tuple[np.ndarray, float]:
    """Mix the target's amplitude into the source spectrum, keep the source
    phase, and transform back. Returns (image, imag_residual); the image is
    not clamped. Requires params.st_enabled to be False."""
    if params.st_enabled:
        raise ValidationError("fdg_augment requires params.st_enabled=False")
    return _augment(x_source, x_target, params, apply_st=False)


def fdg_st_augment(x_source, x_target, params: AugmentParams) -> tuple[np.ndarray, float]:
    """Like fdg_augment, but the target amplitude is soft-thresholded first
    with per-channel thresholds alpha * max(target amplitude). Requires
    params.st_enabled to be True."""
    if not params.st_enabled:
        raise ValidationError("fdg_st_augment requires params.st_enabled=True")
    return _augment(x_source, x_target, params, apply_st=True)


def augment_pair(x_source, x_target, params: AugmentParams) -> tuple[np.ndarray, float]:
    """Dispatch on params.st_enabled."""
    if params.st_enabled:
        return fdg_st_augment(x_source, x_target, params)
    return fdg_augment(x_source, x_target, params)
