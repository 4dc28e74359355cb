"""Dense d-by-d matrix algebra over a prime field.

This is the carrier of the non-commutative group GL(d, F_p).  Entries are
canonical byte residues stored in numpy uint8 arrays; products upcast to
int64, reduce mod p and narrow back, so every operation stays in fixed-width
machine arithmetic.  d is a runtime parameter (8 and 16 are the shipped
protocol sizes, anything >= 2 works for analysis).
"""

from __future__ import annotations

from typing import Iterator

import numpy as np

from .errors import SingularMatrixError
from .field import DEFAULT_PRIME, RandomSource, inv_mod, validate_prime

MAX_BYTE_PRIME = 251


def _check_modulus(p: int) -> int:
    validate_prime(p)
    if p > MAX_BYTE_PRIME:
        raise ValueError(f"matrix layer supports byte-sized primes (p <= 251), got {p}")
    return p


class MatrixFp:
    """Immutable d-by-d matrix over GF(p); may be singular, GL membership is checked not assumed."""

    __slots__ = ("_a", "p")

    def __init__(self, entries, p: int = DEFAULT_PRIME):
        _check_modulus(p)
        a = np.asarray(entries, dtype=np.int64)
        if a.ndim != 2 or a.shape[0] != a.shape[1]:
            raise ValueError(f"square matrix required, got shape {a.shape}")
        if a.shape[0] < 2:
            raise ValueError("dimension must be at least 2")
        if ((a < 0) | (a >= p)).any():
            a = a % p
        self._a = a.astype(np.uint8)
        self._a.setflags(write=False)
        self.p = p

    @classmethod
    def _wrap(cls, canonical: np.ndarray, p: int) -> "MatrixFp":
        # internal fast path: `canonical` is already a reduced int array
        m = object.__new__(cls)
        arr = canonical.astype(np.uint8)
        arr.setflags(write=False)
        object.__setattr__(m, "_a", arr)
        object.__setattr__(m, "p", p)
        return m

    # -- constructors ------------------------------------------------------

    @classmethod
    def identity(cls, d: int, p: int = DEFAULT_PRIME) -> "MatrixFp":
        return cls(np.eye(d, dtype=np.int64), p)

    @classmethod
    def diagonal(cls, values, p: int = DEFAULT_PRIME) -> "MatrixFp":
        return cls(np.diag(np.asarray(list(values), dtype=np.int64)), p)

    @classmethod
    def random(cls, rng: RandomSource, d: int, p: int = DEFAULT_PRIME) -> "MatrixFp":
        return cls(rng.array_mod(d * d, p).reshape(d, d), p)

    @classmethod
    def random_invertible(cls, rng: RandomSource, d: int, p: int = DEFAULT_PRIME) -> "MatrixFp":
        """Uniform over GL(d, F_p) by rejection on det == 0 (about 0.4% at p=251, d=8)."""
        while True:
            m = cls.random(rng, d, p)
            if m.det() != 0:
                return m

    # -- views -------------------------------------------------------------

    @property
    def d(self) -> int:
        return self._a.shape[0]

    @property
    def array(self) -> np.ndarray:
        """Read-only uint8 view, row-major."""
        return self._a

    def tolist(self) -> list[list[int]]:
        return self._a.astype(int).tolist()

    def __getitem__(self, idx: tuple[int, int]) -> int:
        return int(self._a[idx])

    def main_diagonal(self) -> np.ndarray:
        return np.diagonal(self._a).astype(np.int64)

    def anti_diagonal(self) -> np.ndarray:
        """Entries from the lower-left corner (d-1, 0) up to the upper-right (0, d-1)."""
        return np.diagonal(np.flipud(self._a)).astype(np.int64)

    def is_diagonal(self) -> bool:
        off = self._a.astype(np.int64).copy()
        np.fill_diagonal(off, 0)
        return not off.any()

    # -- arithmetic --------------------------------------------------------

    def _compat(self, other: "MatrixFp") -> None:
        if not isinstance(other, MatrixFp):
            raise TypeError("MatrixFp required")
        if self.p != other.p:
            raise ValueError(f"modulus mismatch: {self.p} vs {other.p}")
        if self.d != other.d:
            raise ValueError(f"dimension mismatch: {self.d} vs {other.d}")

    def __matmul__(self, other: "MatrixFp") -> "MatrixFp":
        self._compat(other)
        prod = (self._a.astype(np.int64) @ other._a.astype(np.int64)) % self.p
        return MatrixFp._wrap(prod, self.p)

    def __add__(self, other: "MatrixFp") -> "MatrixFp":
        self._compat(other)
        s = (self._a.astype(np.int64) + other._a.astype(np.int64)) % self.p
        return MatrixFp._wrap(s, self.p)

    def __sub__(self, other: "MatrixFp") -> "MatrixFp":
        self._compat(other)
        s = (self._a.astype(np.int64) - other._a.astype(np.int64)) % self.p
        return MatrixFp._wrap(s, self.p)

    def pow(self, e: int) -> "MatrixFp":
        """Square-and-multiply power; e == 0 gives the identity."""
        if e < 0:
            raise ValueError("negative exponents unsupported; invert first")
        p = self.p
        base = self._a.astype(np.int64)
        result: np.ndarray | None = None
        while e:
            if e & 1:
                result = base.copy() if result is None else (result @ base) % p
            e >>= 1
            if e:
                base = (base @ base) % p
        if result is None:
            return MatrixFp.identity(self.d, p)
        return MatrixFp._wrap(result, p)

    __pow__ = pow

    def trace(self) -> int:
        return int(self._a.astype(np.int64).trace() % self.p)

    def det(self) -> int:
        """Determinant mod p by elimination with first-nonzero pivoting."""
        p = self.p
        a = self._a.astype(np.int64).copy()
        d = self.d
        det = 1
        for col in range(d):
            pivots = np.nonzero(a[col:, col])[0]
            if pivots.size == 0:
                return 0
            row = col + int(pivots[0])
            if row != col:
                a[[col, row]] = a[[row, col]]
                det = -det
            pivot = int(a[col, col])
            det = det * pivot % p
            if col + 1 < d:
                factors = a[col + 1 :, col] * inv_mod(pivot, p) % p
                a[col + 1 :] = (a[col + 1 :] - np.outer(factors, a[col])) % p
        return det % p

    def inv(self) -> "MatrixFp":
        """Inverse via Gauss-Jordan on [A | I]; raises SingularMatrixError if det == 0."""
        p = self.p
        d = self.d
        aug = np.concatenate(
            [self._a.astype(np.int64), np.eye(d, dtype=np.int64)], axis=1
        )
        for col in range(d):
            pivots = np.nonzero(aug[col:, col])[0]
            if pivots.size == 0:
                raise SingularMatrixError(f"matrix has no inverse mod {p}")
            row = col + int(pivots[0])
            if row != col:
                aug[[col, row]] = aug[[row, col]]
            aug[col] = aug[col] * inv_mod(int(aug[col, col]), p) % p
            others = np.nonzero(aug[:, col])[0]
            others = others[others != col]
            if others.size:
                aug[others] = (aug[others] - np.outer(aug[others, col], aug[col])) % p
        return MatrixFp._wrap(aug[:, d:], p)

    # -- comparisons -------------------------------------------------------

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MatrixFp):
            return NotImplemented
        return self.p == other.p and self._a.shape == other._a.shape and bool(
            (self._a == other._a).all()
        )

    def __hash__(self) -> int:
        return hash((self.p, self._a.tobytes()))

    def __repr__(self) -> str:
        return f"MatrixFp(d={self.d}, p={self.p})"


def companion_matrix(poly) -> MatrixFp:
    """Companion matrix of a monic polynomial (degree >= 2).

    Ones on the subdiagonal, negated coefficients down the last column with
    the constant term in row one; its characteristic polynomial equals the
    input, so for irreducible input it generates a cyclic subgroup of
    GL(d, F_p).
    """
    coeffs = tuple(poly.coeffs)
    p = poly.p
    if not coeffs or coeffs[-1] != 1:
        raise ValueError("companion matrix requires a monic polynomial")
    d = len(coeffs) - 1
    if d < 2:
        raise ValueError("companion matrix requires degree >= 2")
    m = np.zeros((d, d), dtype=np.int64)
    m[np.arange(1, d), np.arange(d - 1)] = 1
    m[:, d - 1] = [(-c) % p for c in coeffs[:-1]]
    return MatrixFp(m, p)


def all_matrices(d: int, p: int) -> Iterator[MatrixFp]:
    """Every d-by-d matrix over GF(p), for exhaustive desk-scale checks."""
    total = d * d
    for code in range(p**total):
        entries = []
        v = code
        for _ in range(total):
            entries.append(v % p)
            v //= p
        yield MatrixFp(np.asarray(entries, dtype=np.int64).reshape(d, d), p)
