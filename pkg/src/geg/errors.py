"""Exception hierarchy shared by the whole package.

Callers that need to branch (resample on a singular draw, distinguish a
framing problem from a protocol desync) catch the specific class; everything
derives from :class:`GegError` so a blanket handler stays possible.
"""


class GegError(Exception):
    """Base class for all package-specific errors."""


class SingularMatrixError(GegError):
    """A matrix required to be invertible has zero determinant."""


class ProtocolError(GegError):
    """Protocol state machine misuse or inconsistent peer data."""


class CodecError(GegError):
    """Base class for wire-format and block-codec errors."""


class FrameMagicError(CodecError):
    """Frame does not start with the supported magic/version bytes."""


class FrameTypeError(CodecError):
    """Frame carries an unknown message type."""


class FrameLengthError(CodecError):
    """Frame is truncated or its declared payload length is wrong."""


class FrameValueError(CodecError):
    """Frame payload contains a value outside its allowed domain."""


class PaddingError(CodecError):
    """Plaintext block padding is malformed."""


class CorruptBlockError(CodecError):
    """A decoded block does not represent valid packed plaintext."""


class UnsupportedModulusError(CodecError):
    """The byte codec only supports moduli that fit a single byte."""
