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

"""Messages exchanged during a transfer.

    NonceAnnouncement  recipient -> sender, multi-recipient planning only
    TransferInit       sender -> recipient (M1)
    TransferResponse   recipient -> sender (M2)
    TransferFinal      sender -> ledger (M3)
"""

import typing as t

from src.crypto.commitment import AmountVector, Commitment
from src.crypto.exceptions import InvalidParameterException
from src.crypto.group import GroupPoint, Scalar
from src.crypto.schnorr import PartialSignature
from src.ledger.payloads import TransferPayload, read_proof, write_proof
from src.proofs.backend import Proof
from src.wire.codec import (
    Encodable,
    MessageTag,
    Reader,
    Writer,
    check_nullifier_list,
    read_nullifier_list,
)


class NonceAnnouncement(Encodable):
    """A recipient's nonce commitment, published before the M1s are built."""

    def __init__(self, R: GroupPoint) -> None:
        if R.is_identity():
            raise InvalidParameterException("announced nonce is the identity")
        self.R: GroupPoint = R

    def write(self, writer: Writer) -> None:
        writer.header(MessageTag.NONCE_ANNOUNCEMENT).point(self.R)

    @classmethod
    def read(cls, reader: Reader) -> "NonceAnnouncement":
        reader.header(MessageTag.NONCE_ANNOUNCEMENT)
        return cls(reader.point())


class TransferInit(Encodable):
    """M1: what a recipient needs to answer.

    Attributes:
        nullifiers (list[Scalar]): the spent inputs' nullifiers, sorted
        transfer_amounts (AmountVector): what this recipient receives
        sender_nonce_sum (GroupPoint): sum(input R) - change R
        recipient_nonce (GroupPoint | None): in multi-recipient sessions, the
            nonce this recipient announced
        recipient_nonce_sum (GroupPoint | None): in multi-recipient sessions,
            the sum of all announced nonces, identical in every M1
    """

    def __init__(
        self,
        nullifiers: t.Sequence[Scalar],
        transfer_amounts: AmountVector,
        sender_nonce_sum: GroupPoint,
        recipient_nonce: GroupPoint | None = None,
        recipient_nonce_sum: GroupPoint | None = None,
    ) -> None:
        check_nullifier_list(nullifiers)
        if (recipient_nonce is None) != (recipient_nonce_sum is None):
            raise InvalidParameterException("recipient nonce and nonce sum go together")
        self.nullifiers: list[Scalar] = list(nullifiers)
        self.transfer_amounts: AmountVector = transfer_amounts
        self.sender_nonce_sum: GroupPoint = sender_nonce_sum
        self.recipient_nonce: GroupPoint | None = recipient_nonce
        self.recipient_nonce_sum: GroupPoint | None = recipient_nonce_sum

    @property
    def is_multi(self) -> bool:
        return self.recipient_nonce_sum is not None

    def write(self, writer: Writer) -> None:
        writer.header(MessageTag.TRANSFER_INIT)
        writer.items(self.nullifiers, Writer.scalar)
        writer.amounts(self.transfer_amounts).point(self.sender_nonce_sum)
        if self.recipient_nonce is None or self.recipient_nonce_sum is None:
            writer.u8(0)
        else:
            writer.u8(1).point(self.recipient_nonce).point(self.recipient_nonce_sum)

    @classmethod
    def read(cls, reader: Reader) -> "TransferInit":
        reader.header(MessageTag.TRANSFER_INIT)
        nullifiers: list[Scalar] = read_nullifier_list(reader)
        amounts: AmountVector = reader.amounts()
        sender_nonce_sum: GroupPoint = reader.point()
        flag: int = reader.u8()
        if flag == 0:
            return cls(nullifiers, amounts, sender_nonce_sum)
        if flag != 1:
            reader.offset -= 1
            reader.fail(f"bad multi-recipient flag {flag}")
        return cls(nullifiers, amounts, sender_nonce_sum, reader.point(), reader.point())


def _write_partial(writer: Writer, partial: PartialSignature) -> None:
    writer.point(partial.R).scalar(partial.s).u8(1 if partial.sign > 0 else 0xFF)


def _read_partial(reader: Reader) -> PartialSignature:
    R: GroupPoint = reader.point()
    s: Scalar = reader.scalar()
    sign_byte: int = reader.u8()
    if sign_byte not in (1, 0xFF):
        reader.offset -= 1
        reader.fail(f"bad sign byte 0x{sign_byte:02x}")
    return PartialSignature(R, s, 1 if sign_byte == 1 else -1)


class TransferResponse(Encodable):
    """M2: the recipient's output, nonce, partial signature and range proof.

    Attributes:
        output_commitment (Commitment): C_r
        recipient_nonce (GroupPoint): R_r
        partial (PartialSignature): s_r under the session challenge, sign -1
        range_proof (Proof): range proof of C_r
    """

    def __init__(
        self,
        output_commitment: Commitment,
        recipient_nonce: GroupPoint,
        partial: PartialSignature,
        range_proof: Proof,
    ) -> None:
        self.output_commitment: Commitment = output_commitment
        self.recipient_nonce: GroupPoint = recipient_nonce
        self.partial: PartialSignature = partial
        self.range_proof: Proof = range_proof

    def write(self, writer: Writer) -> None:
        writer.header(MessageTag.TRANSFER_RESPONSE)
        writer.commitment(self.output_commitment).point(self.recipient_nonce)
        _write_partial(writer, self.partial)
        write_proof(writer, self.range_proof)

    @classmethod
    def read(cls, reader: Reader) -> "TransferResponse":
        reader.header(MessageTag.TRANSFER_RESPONSE)
        return cls(
            reader.commitment(), reader.point(), _read_partial(reader), read_proof(reader)
        )


class TransferFinal(Encodable):
    """M3: the payload the sender submits to the ledger."""

    def __init__(self, payload: TransferPayload) -> None:
        self.payload: TransferPayload = payload

    def write(self, writer: Writer) -> None:
        writer.header(MessageTag.TRANSFER_FINAL)
        self.payload.write(writer)

    @classmethod
    def read(cls, reader: Reader) -> "TransferFinal":
        reader.header(MessageTag.TRANSFER_FINAL)
        return cls(TransferPayload.read(reader))
