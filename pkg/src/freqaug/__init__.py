"""Frequency-domain image augmentation and binary segmentation metrics.

The augmentation restyles an image by mixing its amplitude spectrum with
a target image's while keeping the source phase; an optional per-channel
soft threshold shrinks small target amplitudes before mixing. A metric
engine scores binary masks (dice, Hausdorff and average surface
distance), and a pipeline batch-processes multi-domain datasets.
"""

from .augment import (
    AugmentParams,
    augment_pair,
    compute_thresholds,
    fdg_augment,
    fdg_st_augment,
    low_frequency_mask,
    mix_amplitudes,
    soft_threshold,
)
from .errors import (
    ChannelCountMismatchError,
    DataError,
    DimensionMismatchError,
    EmptyMaskError,
    EmptySetError,
    FreqaugError,
    ImaginaryResidualError,
    InsufficientDomainsError,
    MaskSizeMismatchError,
    MissingCounterpartError,
    MissingDirectoryError,
    NegativeAmplitudeError,
    NonBinaryMaskError,
    NonFiniteValueError,
    PixelRangeError,
    ShapeMismatchError,
    UndecodableImageError,
    ValidationError,
)
from .fourier import decompose, dft2, hermitian_defect, idft2, recompose
from .imgio import (
    clamp01,
    decode_image,
    decode_mask,
    encode_image,
    encode_mask,
    resize_bilinear,
    resize_nearest,
)
from .metrics import (
    MetricReport,
    average_surface_distance,
    dice,
    extract_boundary,
    hausdorff,
    point_to_set_distance,
)
from .pipeline import (
    DomainDataset,
    ImageEntry,
    RunConfig,
    ingest,
    inspect_spectrum,
    leave_one_out_splits,
    run_augmentation,
    run_metrics,
)
from .types import AmplitudePhase, validate, validate_image, validate_mask, validate_spectrum

__version__ = "0.1.0"
