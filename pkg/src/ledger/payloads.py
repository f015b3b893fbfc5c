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

"""What users submit to the ledger."""

import typing as t

from src.crypto.commitment import Commitment
from src.ledger.exceptions import InvalidPayloadException
from src.proofs.backend import Proof
from src.proofs.relations import SpendStatement, WithdrawStatement
from src.types import AccountId
from src.wire.codec import Encodable, MessageTag, Reader, Writer


def write_proof(writer: Writer, proof: Proof) -> None:
    writer.blob(proof.to_bytes())


def read_proof(reader: Reader) -> Proof:
    return Proof.from_bytes(reader.blob())


class TransferPayload(Encodable):
    """A finished transfer: the spend statement and every proof.

    Attributes:
        spend_statement (SpendStatement): nullifiers, outputs and root
        spend_proof (Proof): proof of the spend relation
        outputs (list[(Commitment, Proof)]): each output with its range proof,
            in the statement's order
    """

    def __init__(
        self,
        spend_statement: SpendStatement,
        spend_proof: Proof,
        outputs: t.Sequence[t.Tuple[Commitment, Proof]],
    ) -> None:
        """Initialize a transfer payload.

        Raises:
            InvalidPayloadException: with no outputs, or outputs that differ from
                the statement's
        """
        if len(outputs) == 0:
            raise InvalidPayloadException("transfer without outputs")
        if [c for c, _ in outputs] != spend_statement.outputs:
            raise InvalidPayloadException("outputs differ from the spend statement")

        self.spend_statement: SpendStatement = spend_statement
        self.spend_proof: Proof = spend_proof
        self.outputs: list[t.Tuple[Commitment, Proof]] = list(outputs)

    def write(self, writer: Writer) -> None:
        writer.header(MessageTag.TRANSFER_PAYLOAD)
        self.spend_statement.write(writer)
        write_proof(writer, self.spend_proof)
        writer.items([p for _, p in self.outputs], write_proof)

    @classmethod
    def read(cls, reader: Reader) -> "TransferPayload":
        reader.header(MessageTag.TRANSFER_PAYLOAD)
        statement: SpendStatement = SpendStatement.read(reader)
        spend_proof: Proof = read_proof(reader)
        range_proofs: list[Proof] = reader.items(read_proof)
        if len(range_proofs) != len(statement.outputs):
            reader.fail("range proof count differs from output count")
        return cls(statement, spend_proof, list(zip(statement.outputs, range_proofs)))


class WithdrawPayload(Encodable):
    """A withdrawal of one coin to a public account.

    Attributes:
        statement (WithdrawStatement): public amounts, nullifier and root
        proof (Proof): proof of the withdraw relation
        destination (AccountId): the credited account
    """

    def __init__(
        self, statement: WithdrawStatement, proof: Proof, destination: AccountId
    ) -> None:
        if statement.amounts.is_zero():
            raise InvalidPayloadException("withdrawal of nothing")
        if len(destination) == 0:
            raise InvalidPayloadException("empty destination account")
        self.statement: WithdrawStatement = statement
        self.proof: Proof = proof
        self.destination: AccountId = destination

    def write(self, writer: Writer) -> None:
        writer.header(MessageTag.WITHDRAW_PAYLOAD)
        self.statement.write(writer)
        write_proof(writer, self.proof)
        writer.text(self.destination)

    @classmethod
    def read(cls, reader: Reader) -> "WithdrawPayload":
        reader.header(MessageTag.WITHDRAW_PAYLOAD)
        return cls(WithdrawStatement.read(reader), read_proof(reader), reader.text())
