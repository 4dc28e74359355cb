"""Byte-exact wire encodings: frames, matrix serialization, block packing.

Frame layout (all integers big-endian)::

    offset  size  field
    0       4     magic "GEG1"
    4       1     message type
    5       1     matrix dimension d
    6       4     payload length
    10      n     payload

Message types:

    0x01 basis-init        payload = d*d matrix bytes
    0x02 generator-init    payload = d*d matrix bytes
    0x03 token-initial     payload = d*d matrix bytes
    0x04 session-open-token payload = d*d matrix bytes
    0x05 session-ack-token payload = d*d matrix bytes
    0x06 cipher-block      payload = 2*d*d matrix bytes (y1 then y2)
    0x07 context-params    payload = 2 bytes, the prime modulus

Matrix bytes are row-major, one byte per entry, every byte < 251.  Plaintext
packs at a fixed rate: each 7-byte chunk becomes a 56-bit integer written as
8 base-251 digits (most significant first), and d*d digits fill one matrix,
so a d=8 block carries exactly 56 plaintext bytes.  Padding over the byte
layer is always appended: pad length in [1, capacity], every pad byte equal
to the pad length.
"""

from __future__ import annotations

import struct
from dataclasses import dataclass
from typing import Iterator

import numpy as np

from .errors import (
    CorruptBlockError,
    FrameLengthError,
    FrameMagicError,
    FrameTypeError,
    FrameValueError,
    PaddingError,
    UnsupportedModulusError,
)
from .linalg import MatrixFp
from .protocol import CipherBlock

MAGIC = b"GEG1"
HEADER_LEN = 10

MSG_BASIS_INIT = 0x01
MSG_GENERATOR_INIT = 0x02
MSG_TOKEN_INITIAL = 0x03
MSG_TOKEN_OPEN = 0x04
MSG_TOKEN_ACK = 0x05
MSG_CIPHER_BLOCK = 0x06
MSG_CONTEXT_PARAMS = 0x07

_MATRIX_COUNT = {
    MSG_BASIS_INIT: 1,
    MSG_GENERATOR_INIT: 1,
    MSG_TOKEN_INITIAL: 1,
    MSG_TOKEN_OPEN: 1,
    MSG_TOKEN_ACK: 1,
    MSG_CIPHER_BLOCK: 2,
}
_KNOWN_TYPES = frozenset(_MATRIX_COUNT) | {MSG_CONTEXT_PARAMS}

_PACK_CHUNK = 7          # plaintext bytes per digit group
_DIGITS_PER_CHUNK = 8    # base-251 digits per group; 251**8 > 2**56
_PACK_BASE = 251


@dataclass(frozen=True)
class WireMessage:
    msg_type: int
    d: int
    payload: bytes


# -- framing -----------------------------------------------------------------

def frame(msg: WireMessage) -> bytes:
    return MAGIC + struct.pack(">BBI", msg.msg_type, msg.d, len(msg.payload)) + msg.payload


def read_frame(data: bytes, offset: int = 0) -> tuple[WireMessage, int]:
    """Parse one frame starting at `offset`; returns (message, next offset).

    Never reads past the declared payload length; every rejection raises a
    distinct CodecError subclass.
    """
    if len(data) - offset < HEADER_LEN:
        raise FrameLengthError("truncated frame header")
    if data[offset : offset + 4] != MAGIC:
        raise FrameMagicError(f"unsupported magic {data[offset:offset + 4]!r}")
    msg_type, d, length = struct.unpack_from(">BBI", data, offset + 4)
    if msg_type not in _KNOWN_TYPES:
        raise FrameTypeError(f"unknown message type 0x{msg_type:02x}")
    if d < 2:
        raise FrameValueError(f"dimension byte must be >= 2, got {d}")
    end = offset + HEADER_LEN + length
    if end > len(data):
        raise FrameLengthError(f"declared payload of {length} bytes is truncated")
    payload = bytes(data[offset + HEADER_LEN : end])
    count = _MATRIX_COUNT.get(msg_type)
    if count is not None:
        if length != count * d * d:
            raise FrameLengthError(
                f"type 0x{msg_type:02x} at d={d} requires {count * d * d} payload bytes, got {length}"
            )
        if any(b >= _PACK_BASE for b in payload):
            raise FrameValueError("matrix payload byte out of range (must be < 251)")
    else:
        if length != 2:
            raise FrameLengthError("context-params payload must be exactly 2 bytes")
    return WireMessage(msg_type, d, payload), end


def parse(data: bytes) -> WireMessage:
    """Strict single-frame parse: the buffer must hold exactly one frame."""
    msg, end = read_frame(data, 0)
    if end != len(data):
        raise FrameLengthError(f"{len(data) - end} trailing bytes after frame")
    return msg


def iter_frames(data: bytes) -> Iterator[WireMessage]:
    offset = 0
    while offset < len(data):
        msg, offset = read_frame(data, offset)
        yield msg


# -- matrix serialization ------------------------------------------------------

def matrix_to_bytes(m: MatrixFp) -> bytes:
    """Row-major, one byte per entry; bijective with the entry grid."""
    if m.p > 256:
        raise UnsupportedModulusError("one-byte matrix coding requires p <= 256")
    return m.array.tobytes()


def bytes_to_matrix(data: bytes, d: int, p: int = 251) -> MatrixFp:
    if p > 256:
        raise UnsupportedModulusError("one-byte matrix coding requires p <= 256")
    if len(data) != d * d:
        raise FrameLengthError(f"expected {d * d} matrix bytes, got {len(data)}")
    arr = np.frombuffer(data, dtype=np.uint8).astype(np.int64)
    if (arr >= p).any():
        raise FrameValueError(f"matrix byte out of range for p={p}")
    return MatrixFp(arr.reshape(d, d), p)


# -- message helpers -----------------------------------------------------------

def matrix_message(msg_type: int, m: MatrixFp) -> WireMessage:
    if _MATRIX_COUNT.get(msg_type) != 1:
        raise ValueError(f"type 0x{msg_type:02x} does not carry a single matrix")
    return WireMessage(msg_type, m.d, matrix_to_bytes(m))


def matrix_from_message(msg: WireMessage, p: int = 251) -> MatrixFp:
    if _MATRIX_COUNT.get(msg.msg_type) != 1:
        raise FrameTypeError(f"type 0x{msg.msg_type:02x} does not carry a single matrix")
    return bytes_to_matrix(msg.payload, msg.d, p)


def cipher_block_message(block: CipherBlock) -> WireMessage:
    return WireMessage(
        MSG_CIPHER_BLOCK,
        block.y1.d,
        matrix_to_bytes(block.y1) + matrix_to_bytes(block.y2),
    )


def cipher_block_from_message(msg: WireMessage, p: int = 251) -> CipherBlock:
    if msg.msg_type != MSG_CIPHER_BLOCK:
        raise FrameTypeError("not a cipher-block message")
    half = msg.d * msg.d
    return CipherBlock(
        bytes_to_matrix(msg.payload[:half], msg.d, p),
        bytes_to_matrix(msg.payload[half:], msg.d, p),
    )


def context_message(d: int, p: int) -> WireMessage:
    if not 2 <= p <= 0xFFFF:
        raise ValueError("modulus out of range for context message")
    return WireMessage(MSG_CONTEXT_PARAMS, d, struct.pack(">H", p))


def context_from_message(msg: WireMessage) -> tuple[int, int]:
    if msg.msg_type != MSG_CONTEXT_PARAMS:
        raise FrameTypeError("not a context-params message")
    (p,) = struct.unpack(">H", msg.payload)
    return msg.d, p


# -- plaintext block codec -------------------------------------------------------

def block_capacity(d: int) -> int:
    """Plaintext bytes carried per matrix block."""
    if d % 4 != 0 or d < 4:
        raise ValueError("block codec requires the dimension to be a multiple of 4")
    cap = _PACK_CHUNK * d * d // _DIGITS_PER_CHUNK
    if cap > 255:
        raise ValueError("block capacity exceeds one-byte padding range (d too large)")
    return cap


def encode_plaintext(data: bytes, d: int = 8, p: int = 251) -> list[MatrixFp]:
    """Pack bytes into message matrices at 7 bytes per 8 entries, then pad.

    Padding is always appended (a full final block gains one extra all-pad
    block), so decoding is unambiguous for every input length including zero.
    """
    if p != _PACK_BASE:
        raise UnsupportedModulusError("block codec is defined for p = 251")
    cap = block_capacity(d)
    pad = cap - len(data) % cap
    padded = data + bytes([pad]) * pad
    digits = np.empty(len(padded) // _PACK_CHUNK * _DIGITS_PER_CHUNK, dtype=np.int64)
    pos = 0
    for i in range(0, len(padded), _PACK_CHUNK):
        value = int.from_bytes(padded[i : i + _PACK_CHUNK], "big")
        group = []
        for _ in range(_DIGITS_PER_CHUNK):
            group.append(value % _PACK_BASE)
            value //= _PACK_BASE
        digits[pos : pos + _DIGITS_PER_CHUNK] = group[::-1]
        pos += _DIGITS_PER_CHUNK
    per_block = d * d
    return [
        MatrixFp(digits[i : i + per_block].reshape(d, d), p)
        for i in range(0, len(digits), per_block)
    ]


def decode_plaintext(blocks: list[MatrixFp]) -> bytes:
    """Inverse of encode_plaintext; validates digit groups and padding."""
    if not blocks:
        raise CorruptBlockError("no blocks to decode")
    d = blocks[0].d
    cap = block_capacity(d)
    out = bytearray()
    for block in blocks:
        if block.d != d:
            raise CorruptBlockError("inconsistent block dimensions")
        digits = block.array.reshape(-1).astype(np.int64)
        for i in range(0, digits.size, _DIGITS_PER_CHUNK):
            value = 0
            for digit in digits[i : i + _DIGITS_PER_CHUNK]:
                value = value * _PACK_BASE + int(digit)
            if value >= 1 << (8 * _PACK_CHUNK):
                raise CorruptBlockError("digit group exceeds the packed-chunk range")
            out += value.to_bytes(_PACK_CHUNK, "big")
    pad = out[-1] if out else 0
    if not 1 <= pad <= cap:
        raise PaddingError(f"pad length byte {pad} outside [1, {cap}]")
    if any(b != pad for b in out[-pad:]):
        raise PaddingError("pad bytes are not uniform")
    return bytes(out[:-pad])
