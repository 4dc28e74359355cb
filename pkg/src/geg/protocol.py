"""Two-party key agreement and block cipher over GL(d, F_p).

State machine per entity:

    fresh --keygen/derive_session_key--> keyed --open/ack--> session-open

Setup exchanges one token per side (a sandwich of the public generator
between powers of a private commuting element) and both parties derive the
same session key because their private elements share an eigenbasis.  Every
new cipher session re-derives the whole parameter set (key, exponent pair,
basis, generator) from the current shared secret, so the public values move
while the only long-term private material is each party's eigenvalue list.

Both sides must apply updates in lockstep; there is no in-band detection of
a desynchronized peer (a lost acknowledgement surfaces only as garbage
plaintext downstream).
"""

from __future__ import annotations

import enum
from dataclasses import dataclass

from .commuting import CommutingContext, DiagonalSpec
from .errors import ProtocolError, SingularMatrixError
from .field import DEFAULT_PRIME, RandomSource
from .linalg import MatrixFp


class Phase(enum.Enum):
    FRESH = "fresh"
    KEYED = "keyed"
    SESSION_OPEN = "session-open"


@dataclass(frozen=True)
class CipherBlock:
    """One encrypted block: y1 masks the ephemeral element, y2 carries the payload."""

    y1: MatrixFp
    y2: MatrixFp


def extract_exponents(key: MatrixFp) -> tuple[int, int]:
    """Derive the exponent pair (m, n) from a key matrix.

    m multiplies the first nonzero entries found scanning the anti-diagonal
    from both ends (lower-left towards upper-right, then the reverse); n
    does the same on the main diagonal (upper-left towards lower-right, then
    the reverse).  An all-zero diagonal contributes 1.  Both results are in
    [1, p-1]: products of nonzero residues mod a prime are nonzero and the
    fallback is 1.  Any party holding the key derives the identical pair;
    the scan order is a fixed protocol constant.
    """
    p = key.p

    def ends_product(diag) -> int:
        nonzero = [int(v) for v in diag if int(v) != 0]
        if not nonzero:
            return 1
        return nonzero[0] * nonzero[-1] % p

    m = ends_product(key.anti_diagonal())
    n = ends_product(key.main_diagonal())
    return m, n


def setup_shared(
    rng: RandomSource, d: int = 8, p: int = DEFAULT_PRIME
) -> tuple[MatrixFp, MatrixFp]:
    """Sample the two public setup matrices (basis, generator); sent in clear."""
    basis = MatrixFp.random_invertible(rng, d, p)
    generator = MatrixFp.random_invertible(rng, d, p)
    return basis, generator


class Entity:
    """One party's protocol state; single-owner, mutated by the steps below."""

    def __init__(self, role: str, basis: MatrixFp, generator: MatrixFp):
        if basis.p != generator.p or basis.d != generator.d:
            raise ValueError("basis and generator must share dimensions and modulus")
        if generator.det() == 0:
            raise SingularMatrixError("public generator must be invertible")
        self.role = role
        self.context = CommutingContext(basis)  # checks basis invertibility
        self.generator = generator
        self.session_key: MatrixFp | None = None
        self.exponents: tuple[int, int] | None = None
        self.peer_token: MatrixFp | None = None
        self.phase = Phase.FRESH
        self._eigenvalues: DiagonalSpec | None = None
        self._initial_exponents: tuple[int, int] | None = None
        self._private_element: MatrixFp | None = None

    # -- read-only views -----------------------------------------------------

    @property
    def d(self) -> int:
        return self.context.d

    @property
    def p(self) -> int:
        return self.context.p

    @property
    def basis(self) -> MatrixFp:
        return self.context.basis

    @property
    def eigenvalues(self) -> DiagonalSpec | None:
        """Long-term private eigenvalue list (the actual secret)."""
        return self._eigenvalues

    @property
    def private_element(self) -> MatrixFp | None:
        """Current private commuting element; tracks the session basis."""
        return self._private_element

    @property
    def initial_exponents(self) -> tuple[int, int] | None:
        """Private exponent pair used only for the setup token."""
        return self._initial_exponents

    def shared_parameters(self) -> tuple[MatrixFp, tuple[int, int], MatrixFp, MatrixFp]:
        """(key, exponents, basis, generator): identical on both sides after
        every completed exchange."""
        if self.session_key is None or self.exponents is None:
            raise ProtocolError("no session parameters before key derivation")
        return self.session_key, self.exponents, self.basis, self.generator

    # -- setup (run once per pairing) -----------------------------------------

    def keygen(self, rng: RandomSource) -> MatrixFp:
        """Sample private material and return the setup token to transmit."""
        if self.phase is not Phase.FRESH:
            raise ProtocolError("keygen only valid on a fresh entity")
        # exponents from [1, p-1]: zero would degrade the token to the bare generator
        k1 = rng.nonzero(self.p)
        k2 = rng.nonzero(self.p)
        self._initial_exponents = (k1, k2)
        self._eigenvalues = DiagonalSpec.random(rng, self.d, self.p)
        self._private_element = self.context.conjugate(self._eigenvalues)
        a = self._private_element
        return a.pow(k1) @ self.generator @ a.pow(k2)

    def derive_session_key(self, peer_token: MatrixFp) -> None:
        """Combine the peer's setup token into the first common key."""
        if self.phase is not Phase.FRESH or self._initial_exponents is None:
            raise ProtocolError("derive_session_key requires keygen on a fresh entity")
        if peer_token.det() == 0:
            raise ProtocolError("peer token is singular")
        k1, k2 = self._initial_exponents
        a = self._private_element
        assert a is not None
        self.session_key = a.pow(k1) @ peer_token @ a.pow(k2)
        self.exponents = extract_exponents(self.session_key)
        self.peer_token = peer_token
        self.phase = Phase.KEYED

    # -- recursive session updates --------------------------------------------

    def _refresh_session(self) -> MatrixFp:
        assert self.session_key is not None and self.exponents is not None
        assert self._eigenvalues is not None
        m, n = self.exponents
        key = self.session_key.pow(m * n % self.p)  # m, n nonzero, so never K**0
        m2, n2 = extract_exponents(key)
        k_m = key.pow(m2)
        k_n = key.pow(n2)
        self.context = CommutingContext(k_m @ self.basis @ k_n)
        self.generator = k_m @ self.generator @ k_n
        self.session_key = key
        self.exponents = (m2, n2)
        self._private_element = self.context.conjugate(self._eigenvalues)
        self.peer_token = None  # previous session's token is stale now
        a = self._private_element
        return a.pow(m2) @ self.generator @ a.pow(n2)

    def open_session(self) -> MatrixFp:
        """Start a new cipher session; returns the token to send.

        The opener cannot encrypt until the peer's answering token arrives
        (``install_peer_token`` or an explicit argument to encrypt_block).
        """
        if self.phase is Phase.FRESH:
            raise ProtocolError("open_session requires a derived key")
        token = self._refresh_session()
        self.phase = Phase.SESSION_OPEN
        return token

    def ack_session(self, peer_token: MatrixFp) -> MatrixFp:
        """Mirror the peer's session update and return the answering token."""
        if self.phase is Phase.FRESH:
            raise ProtocolError("ack_session requires a derived key")
        token = self._refresh_session()
        self.install_peer_token(peer_token)
        self.phase = Phase.SESSION_OPEN
        return token

    def install_peer_token(self, token: MatrixFp) -> None:
        """Store the peer's current session token (needed to encrypt)."""
        if token.d != self.d or token.p != self.p:
            raise ProtocolError("peer token has wrong dimensions")
        if token.det() == 0:
            raise ProtocolError("peer token is singular")
        self.peer_token = token

    # -- cipher ----------------------------------------------------------------

    def encrypt_block(
        self,
        plain: MatrixFp,
        rng: RandomSource,
        peer_token: MatrixFp | None = None,
    ) -> CipherBlock:
        """Encrypt one matrix block under a fresh ephemeral element.

        The ephemeral element changes per block: reusing it would relate
        blocks algebraically under known plaintext.  The plaintext matrix
        itself may be singular.
        """
        if self.phase is not Phase.SESSION_OPEN:
            raise ProtocolError("encrypt requires an open session")
        token = peer_token if peer_token is not None else self.peer_token
        if token is None:
            raise ProtocolError("no session token from peer")
        if plain.d != self.d or plain.p != self.p:
            raise ValueError("plaintext block has wrong dimensions")
        m, n = self.exponents  # type: ignore[misc]
        j = self.context.random_element(rng)
        j_m = j.pow(m)
        j_n = j.pow(n)
        y1 = j_m @ self.generator @ j_n
        y2 = plain @ (j_m @ token @ j_n)
        return CipherBlock(y1, y2)

    def decrypt_block(self, block: CipherBlock) -> MatrixFp:
        """Invert a block encrypted against this entity's session token."""
        if self.phase is not Phase.SESSION_OPEN:
            raise ProtocolError("decrypt requires an open session")
        m, n = self.exponents  # type: ignore[misc]
        b = self._private_element
        assert b is not None
        inner = b.pow(m) @ block.y1 @ b.pow(n)
        try:
            return block.y2 @ inner.inv()
        except SingularMatrixError as exc:
            raise ProtocolError("malformed ciphertext: masked generator is singular") from exc

    # -- persistence (used by the CLI state files) ------------------------------

    @classmethod
    def restore(
        cls,
        role: str,
        basis: MatrixFp,
        generator: MatrixFp,
        session_key: MatrixFp,
        exponents: tuple[int, int],
        eigenvalues: DiagonalSpec,
        peer_token: MatrixFp | None = None,
    ) -> "Entity":
        """Rebuild a session-open entity from persisted fields."""
        entity = cls(role, basis, generator)
        if session_key.det() == 0:
            raise ProtocolError("persisted session key is singular")
        m, n = int(exponents[0]), int(exponents[1])
        if not (1 <= m < entity.p and 1 <= n < entity.p):
            raise ProtocolError(f"persisted exponents ({m}, {n}) outside [1, p-1]")
        entity.session_key = session_key
        entity.exponents = (m, n)
        entity._eigenvalues = eigenvalues
        entity._private_element = entity.context.conjugate(eigenvalues)
        if peer_token is not None:
            entity.install_peer_token(peer_token)
        entity.phase = Phase.SESSION_OPEN
        return entity

    def __repr__(self) -> str:
        return f"Entity(role={self.role!r}, d={self.d}, p={self.p}, phase={self.phase.value})"
