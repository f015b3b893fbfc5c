# atlantis-ledger: anonymous multi-asset payments on a desk-scale ledger
# Copyright (C) 2026 The atlantis-ledger contributors
#
# This program is free software; you can redistribute it and/or modify
# it under the terms of the GNU General Public License as published by
# the Free Software Foundation; either version 2 of the License, or
# (at your option) any later version.
#
# This program is distributed in the hope that it will be useful,
# but WITHOUT ANY WARRANTY; without even the implied warranty of
# MERCHANTABILITY or FITNESS FOR A PARTICULAR PURPOSE.  See the
# GNU General Public License for more details.
#
# You should have received a copy of the GNU General Public License
# along with this program.  If not, see <http://www.gnu.org/licenses/>.

"""Schnorr signatures and their two-phase aggregation.

Every party of a transfer first publishes a nonce commitment R_i. The signed
aggregate nonce R_agg = sum(sign_i * R_i) fixes one common challenge, and each
party answers with s_i = k_i + e * sk_i. The partials combine with the same
signs into a signature valid under the transaction excess.
"""

import random
import typing as t

from src.const import POINT_BYTES, SCALAR_BYTES, TAG_AGG, TAG_SIG
from src.crypto.exceptions import InvalidKeyException, InvalidParameterException
from src.crypto.group import GroupPoint, Scalar, hash_to_scalar

SIGNATURE_BYTES: int = POINT_BYTES + SCALAR_BYTES

G: GroupPoint = GroupPoint.generator()


class Signature:
    """A Schnorr signature <R, s>.

    Attributes:
        R (GroupPoint): nonce commitment, never the identity
        s (Scalar): response
    """

    __slots__ = ("R", "s")

    def __init__(self, R: GroupPoint, s: Scalar) -> None:
        if R.is_identity():
            raise InvalidParameterException("signature nonce is the identity")
        self.R: GroupPoint = R
        self.s: Scalar = s

    @classmethod
    def from_bytes(cls, data: bytes) -> "Signature":
        if len(data) != SIGNATURE_BYTES:
            raise ValueError(f"signature must be {SIGNATURE_BYTES} bytes")
        return cls(
            GroupPoint.from_bytes(data[:POINT_BYTES]),
            Scalar.from_bytes(data[POINT_BYTES:]),
        )

    def to_bytes(self) -> bytes:
        return self.R.to_bytes() + self.s.to_bytes()

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Signature):
            return NotImplemented
        return self.R == other.R and self.s == other.s

    def __repr__(self) -> str:
        return f"Signature(R={self.R.hex()[:18]}…)"


class NonceCommitment:
    """The public half of a signing nonce, R = k * G."""

    __slots__ = ("R",)

    def __init__(self, R: GroupPoint) -> None:
        if R.is_identity():
            raise InvalidParameterException("nonce commitment is the identity")
        self.R: GroupPoint = R

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, NonceCommitment):
            return NotImplemented
        return self.R == other.R


class Nonce:
    """A secret signing nonce that can be used exactly once.

    Attributes:
        commitment (NonceCommitment): R = k * G, safe to publish
    """

    def __init__(self, k: Scalar) -> None:
        if k.is_zero():
            raise InvalidParameterException("nonce is zero")
        self._k: Scalar | None = k
        self.commitment: NonceCommitment = NonceCommitment(G * k)

    @classmethod
    def generate(cls, rng: random.Random | None = None) -> "Nonce":
        return cls(Scalar.random(rng))

    @property
    def used(self) -> bool:
        return self._k is None

    def peek(self) -> Scalar:
        """Return the secret without consuming it, for persistence only."""
        if self._k is None:
            raise InvalidParameterException("nonce already used")
        return self._k

    def consume(self) -> Scalar:
        """Return the secret and forget it.

        Raises:
            InvalidParameterException: on a second call
        """
        k: Scalar = self.peek()
        self._k = None
        return k


class PartialSignature:
    """One party's share of an aggregate signature.

    Attributes:
        R (GroupPoint): the party's nonce commitment
        s (Scalar): the party's response
        sign (int): +1 for input-side partials, -1 for output-side partials
    """

    __slots__ = ("R", "s", "sign")

    def __init__(self, R: GroupPoint, s: Scalar, sign: int) -> None:
        if sign not in (1, -1):
            raise InvalidParameterException(f"sign must be +1 or -1, got {sign}")
        self.R: GroupPoint = R
        self.s: Scalar = s
        self.sign: int = sign

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, PartialSignature):
            return NotImplemented
        return self.R == other.R and self.s == other.s and self.sign == other.sign

    def __repr__(self) -> str:
        return f"PartialSignature({'+' if self.sign > 0 else '-'}, R={self.R.hex()[:18]}…)"


def _challenge(R: GroupPoint, P: GroupPoint, message: bytes) -> Scalar:
    return hash_to_scalar(TAG_SIG + R.to_bytes() + P.to_bytes() + message)


def sig_gen(sk: Scalar, message: bytes, rng: random.Random | None = None) -> Signature:
    """Sign a message with a fresh random nonce.

    Args:
        sk (Scalar): the secret key
        message (bytes): the signed message
        rng (random.Random | None, optional): nonce randomness

    Raises:
        InvalidKeyException: if sk is zero

    Returns:
        Signature: <R, s> with s = k + e * sk
    """
    if sk.is_zero():
        raise InvalidKeyException("secret key is zero")

    k: Scalar = Scalar.random(rng)
    R: GroupPoint = G * k
    e: Scalar = _challenge(R, G * sk, message)
    return Signature(R, k + e * sk)


def sig_ver(sig: Signature, P: GroupPoint, message: bytes) -> bool:
    """Verify a signature: s * G == R + e * P."""
    if P.is_identity():
        return False
    e: Scalar = _challenge(sig.R, P, message)
    return G * sig.s == sig.R + P * e


def compute_agg_challenge(R_agg: GroupPoint, message: bytes) -> Scalar:
    """Derive the common challenge of an aggregate signature.

    The excess is deliberately left out, since input commitments are private
    to the sender.

    Raises:
        InvalidParameterException: if R_agg is the identity
    """
    if R_agg.is_identity():
        raise InvalidParameterException("aggregate nonce is the identity")
    return hash_to_scalar(TAG_AGG + R_agg.to_bytes() + message)


def partial_sign(
    sk: Scalar, nonce: Scalar, agg_challenge: Scalar, sign: int
) -> PartialSignature:
    """Answer the common challenge with one key.

    Args:
        sk (Scalar): the signer's key
        nonce (Scalar): the signer's secret nonce k
        agg_challenge (Scalar): e from compute_agg_challenge
        sign (int): +1 or -1

    Raises:
        InvalidParameterException: on zero key or nonce

    Returns:
        PartialSignature: R = k * G and s = k + e * sk
    """
    if sk.is_zero() or nonce.is_zero():
        raise InvalidParameterException("zero key or nonce")
    return PartialSignature(G * nonce, nonce + agg_challenge * sk, sign)


def verify_partial(partial: PartialSignature, P: GroupPoint, agg_challenge: Scalar) -> bool:
    """Check one partial against the signer's public key."""
    return G * partial.s == partial.R + P * agg_challenge


def aggregate_nonce(commitments: t.Iterable[t.Tuple[GroupPoint, int]]) -> GroupPoint:
    """Return sum(sign_i * R_i) for (R_i, sign_i) pairs."""
    total: GroupPoint = GroupPoint.identity()
    for R, sign in commitments:
        total = total + R if sign > 0 else total - R
    return total


def aggregate(partials: t.Sequence[PartialSignature]) -> Signature:
    """Combine partials with their signs into one signature.

    Raises:
        InvalidParameterException: on an empty list or an identity aggregate nonce

    Returns:
        Signature: <sum(sign_i * R_i), sum(sign_i * s_i)>
    """
    if len(partials) == 0:
        raise InvalidParameterException("nothing to aggregate")

    R_agg: GroupPoint = aggregate_nonce((p.R, p.sign) for p in partials)
    s_agg: Scalar = Scalar(sum(p.sign * p.s.value for p in partials))
    return Signature(R_agg, s_agg)


def verify_aggregate(sig: Signature, X: GroupPoint, message: bytes) -> bool:
    """Verify an aggregate signature under X, the transaction excess."""
    e: Scalar = compute_agg_challenge(sig.R, message)
    return G * sig.s == sig.R + X * e
