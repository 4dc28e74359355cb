"""The hidden commutative subgroup inside GL(d, F_p).

Two diagonalizable matrices commute exactly when they share an eigenbasis, so
conjugating diagonal matrices by one fixed invertible basis matrix yields a
commutative subgroup whose members are indistinguishable from generic group
elements.  Every element built from the same context commutes with every
other one; that property is what makes the key agreement close.
"""

from __future__ import annotations

from dataclasses import dataclass

from .field import DEFAULT_PRIME, RandomSource
from .linalg import MatrixFp


@dataclass(frozen=True)
class DiagonalSpec:
    """Eigenvalue list for a subgroup element: nonzero and pairwise distinct.

    Nonzero keeps the element invertible; distinctness pins down the
    commutant (nothing outside the shared-basis family commutes with it).
    """

    values: tuple[int, ...]
    p: int = DEFAULT_PRIME

    def __post_init__(self):
        vals = tuple(int(v) for v in self.values)
        object.__setattr__(self, "values", vals)
        if len(vals) < 2:
            raise ValueError("at least two eigenvalues required")
        if any(not 0 < v < self.p for v in vals):
            raise ValueError("eigenvalues must lie in [1, p-1]")
        if len(set(vals)) != len(vals):
            raise ValueError("eigenvalues must be pairwise distinct")

    @classmethod
    def random(cls, rng: RandomSource, d: int, p: int = DEFAULT_PRIME) -> "DiagonalSpec":
        return cls(tuple(rng.distinct_nonzero(d, p)), p)

    @property
    def d(self) -> int:
        return len(self.values)

    def matrix(self) -> MatrixFp:
        return MatrixFp.diagonal(self.values, self.p)


class CommutingContext:
    """A fixed invertible basis matrix with its cached inverse.

    Immutable: a protocol session update builds a fresh context.  The cached
    inverse is re-derived on construction and checked, because a stale
    inverse silently breaks every later commutation.
    """

    __slots__ = ("basis", "basis_inv")

    def __init__(self, basis: MatrixFp):
        self.basis = basis
        self.basis_inv = basis.inv()  # raises SingularMatrixError if unusable
        assert self.basis @ self.basis_inv == MatrixFp.identity(basis.d, basis.p)

    @classmethod
    def random(cls, rng: RandomSource, d: int, p: int = DEFAULT_PRIME) -> "CommutingContext":
        return cls(MatrixFp.random_invertible(rng, d, p))

    @property
    def d(self) -> int:
        return self.basis.d

    @property
    def p(self) -> int:
        return self.basis.p

    def conjugate(self, spec: DiagonalSpec) -> MatrixFp:
        """basis @ diag(spec) @ basis**-1; invertible, eigenvalues = spec."""
        if spec.d != self.d or spec.p != self.p:
            raise ValueError("diagonal spec does not match context parameters")
        return self.basis @ spec.matrix() @ self.basis_inv

    def random_element(self, rng: RandomSource) -> MatrixFp:
        """Fresh subgroup member; commutes with everything from this context."""
        return self.conjugate(DiagonalSpec.random(rng, self.d, self.p))

    def is_member(self, z: MatrixFp) -> bool:
        """True iff z is an invertible conjugated diagonal of this context."""
        if z.d != self.d or z.p != self.p:
            return False
        inner = self.basis_inv @ z @ self.basis
        return inner.is_diagonal() and all(int(v) != 0 for v in inner.main_diagonal())


def commutes(a: MatrixFp, b: MatrixFp) -> bool:
    return a @ b == b @ a
