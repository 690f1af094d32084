"""Exception hierarchy shared by all freqaug modules.

Two families matter to callers: ValidationError covers bad in-memory data
or parameters, DataError covers problems with files on disk. The command
line maps them to exit codes 1 and 2 respectively.
"""


class FreqaugError(Exception):
    """Base class for every error raised by this package."""


class ValidationError(FreqaugError, ValueError):
    """Invalid array contents, shapes or parameter values."""


class DimensionMismatchError(ValidationError):
    """Array rank or axis lengths do not match the expected layout."""


class NonFiniteValueError(ValidationError):
    """NaN or infinity found where finite values are required."""


class PixelRangeError(ValidationError):
    """Pixel intensity outside the decoded [0, 1] range."""


class NonBinaryMaskError(ValidationError):
    """Mask contains values other than 0 and 1."""


class NegativeAmplitudeError(ValidationError):
    """Amplitude array contains negative entries."""


class ShapeMismatchError(ValidationError):
    """Two arrays that must share a shape do not."""


class ChannelCountMismatchError(ValidationError):
    """Per-channel parameter vector does not match the channel count."""


class EmptyMaskError(ValidationError):
    """Mask has no foreground pixels, so no surface can be extracted."""


class EmptySetError(ValidationError):
    """Point set is empty, so nearest-point distances are undefined."""


class ImaginaryResidualError(ValidationError):
    """Inverse transform left a large imaginary part; the spectrum was
    not conjugate-symmetric, i.e. it did not come from a real image."""


class InsufficientDomainsError(ValidationError):
    """Fewer than two domains, so hold-one-out splits cannot be formed."""


class DataError(FreqaugError):
    """Problems locating, decoding or pairing files on disk."""


class MissingDirectoryError(DataError):
    """A required directory does not exist."""


class UndecodableImageError(DataError):
    """A file could not be decoded as an image."""


class MaskSizeMismatchError(DataError):
    """A mask's dimensions do not match its image."""


class MissingCounterpartError(DataError):
    """A prediction or ground-truth file has no matching partner."""
