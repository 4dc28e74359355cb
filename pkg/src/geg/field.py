"""Prime-field scalar arithmetic and the seedable randomness source.

The default modulus is 251, the largest prime that fits in one byte: every
canonical residue is a single byte, which keeps the matrix layer and the wire
codec inside fixed-width arithmetic (no arbitrary-precision values on any
protocol path).
"""

from __future__ import annotations

import random
import secrets
from functools import lru_cache
from math import isqrt

import numpy as np

DEFAULT_PRIME = 251


@lru_cache(maxsize=None)
def is_prime(n: int) -> bool:
    """Deterministic trial-division primality check (intended for small n)."""
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f <= isqrt(n):
        if n % f == 0:
            return False
        f += 2
    return True


def validate_prime(p: int) -> int:
    if not is_prime(p):
        raise ValueError(f"modulus must be prime, got {p}")
    return p


def inv_mod(a: int, p: int) -> int:
    """Multiplicative inverse of a mod p via the extended Euclidean algorithm."""
    a %= p
    if a == 0:
        raise ZeroDivisionError("inverse of zero")
    lo, hi = a, p
    s_lo, s_hi = 1, 0
    while lo > 1:
        q = hi // lo
        s_lo, s_hi = s_hi - q * s_lo, s_lo
        lo, hi = hi - q * lo, lo
    if lo != 1:
        raise ZeroDivisionError(f"{a} has no inverse mod {p}")
    return s_lo % p


class Fp:
    """An element of GF(p), kept as its canonical residue in [0, p-1]."""

    __slots__ = ("value", "p")

    def __init__(self, value: int, p: int = DEFAULT_PRIME):
        validate_prime(p)
        self.p = p
        self.value = int(value) % p

    def _check(self, other: "Fp") -> None:
        if self.p != other.p:
            raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")

    def __add__(self, other: "Fp") -> "Fp":
        self._check(other)
        return Fp(self.value + other.value, self.p)

    def __sub__(self, other: "Fp") -> "Fp":
        self._check(other)
        return Fp(self.value - other.value, self.p)

    def __mul__(self, other: "Fp") -> "Fp":
        self._check(other)
        return Fp(self.value * other.value, self.p)

    def __neg__(self) -> "Fp":
        return Fp(-self.value, self.p)

    def __pow__(self, e: int) -> "Fp":
        if e < 0:
            raise ValueError("negative exponent; use inv() first")
        return Fp(pow(self.value, e, self.p), self.p)

    def inv(self) -> "Fp":
        return Fp(inv_mod(self.value, self.p), self.p)

    def __eq__(self, other: object) -> bool:
        if isinstance(other, Fp):
            return self.p == other.p and self.value == other.value
        if isinstance(other, int):
            return self.value == other % self.p
        return NotImplemented

    def __hash__(self) -> int:
        return hash((self.value, self.p))

    def __int__(self) -> int:
        return self.value

    def __repr__(self) -> str:
        return f"Fp({self.value}, p={self.p})"


class RandomSource:
    """Uniform sampling over field domains with two interchangeable backends.

    ``deterministic`` reproduces an identical stream from an identical seed
    and exists for tests and replayable transcripts.  ``crypto`` draws from
    the operating system and is the only mode suitable for real key material.
    All integer draws are rejection-based, so no modulo bias in either mode.
    """

    __slots__ = ("_getrandbits", "_randbytes", "mode")

    def __init__(self, getrandbits, randbytes, mode: str):
        self._getrandbits = getrandbits
        self._randbytes = randbytes
        self.mode = mode

    @classmethod
    def deterministic(cls, seed: int | bytes | None = 0) -> "RandomSource":
        if isinstance(seed, (bytes, bytearray)):
            seed = int.from_bytes(bytes(seed), "big") if seed else 0
        rng = random.Random(seed)

        def randbytes(k: int) -> bytes:
            return rng.getrandbits(8 * k).to_bytes(k, "big") if k else b""

        return cls(rng.getrandbits, randbytes, "deterministic-test")

    @classmethod
    def crypto(cls) -> "RandomSource":
        return cls(secrets.randbits, secrets.token_bytes, "cryptographic")

    def randbelow(self, n: int) -> int:
        """Uniform integer in [0, n), by rejection on fixed-width bit draws."""
        if n <= 0:
            raise ValueError("bound must be positive")
        if n == 1:
            return 0
        k = n.bit_length()
        while True:
            r = self._getrandbits(k)
            if r < n:
                return r

    def uniform(self, p: int = DEFAULT_PRIME) -> int:
        """Uniform residue in [0, p-1]."""
        return self.randbelow(p)

    def nonzero(self, p: int = DEFAULT_PRIME) -> int:
        """Uniform residue in [1, p-1]."""
        return 1 + self.randbelow(p - 1)

    def distinct_nonzero(self, count: int, p: int = DEFAULT_PRIME) -> list[int]:
        """`count` pairwise-distinct uniform residues from [1, p-1]."""
        if not 1 <= count <= p - 1:
            raise ValueError(f"cannot draw {count} distinct values from [1, {p - 1}]")
        seen: set[int] = set()
        out: list[int] = []
        while len(out) < count:
            v = self.nonzero(p)
            if v not in seen:
                seen.add(v)
                out.append(v)
        return out

    def array_mod(self, count: int, p: int = DEFAULT_PRIME) -> np.ndarray:
        """Uniform int64 array of `count` residues mod p (byte-sized p only).

        Bulk path used for matrix sampling: raw bytes are drawn, bytes at or
        above the largest multiple of p below 256 are rejected, the rest fold
        by one modulo.  For p = 251 this is plain rejection of {251..255}.
        """
        if p > 251:
            raise ValueError("array_mod supports byte-sized moduli only")
        limit = 256 - 256 % p
        parts: list[np.ndarray] = []
        have = 0
        while have < count:
            need = count - have
            draw = need + (need >> 4) + 16
            buf = np.frombuffer(self._randbytes(draw), dtype=np.uint8)
            kept = buf[buf < limit]
            parts.append(kept)
            have += kept.size
        vals = np.concatenate(parts)[:count].astype(np.int64)
        return vals % p
