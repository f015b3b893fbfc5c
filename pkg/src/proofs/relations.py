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

"""Statements, witnesses and the three relations every proof attests to.

    range:    the committed amounts are all < 2^bit_width
    spend:    the nullifiers belong to tree members whose excess is signed
    withdraw: the nullifier belongs to a tree member committing to public amounts

The checkers are plain predicates: they never raise on bad input.
"""

import logging
import typing as t
from dataclasses import dataclass, field
from enum import IntEnum

from src.const import RANGE_BITS, TAG_NULL, TREE_DEPTH
from src.crypto.commitment import AmountVector, AssetRegistry, Commitment, excess
from src.crypto.exceptions import InvalidKeyException, InvalidParameterException
from src.crypto.group import GroupPoint, Scalar, hash_to_scalar, point_sum
from src.crypto.schnorr import SIGNATURE_BYTES, G, Signature, verify_aggregate
from src.crypto.smt import Digest, MerkleProof, verify_membership
from src.exceptions import AtlantisException
from src.types import AssetId
from src.wire.codec import (
    Encodable,
    Reader,
    Writer,
    check_nullifier_list,
    encode_nullifier_list,
    read_nullifier_list,
)


class Relation(IntEnum):
    RANGE = 1
    SPEND = 2
    WITHDRAW = 3


@dataclass(frozen=True)
class PublicParameters:
    """Ledger parameters every prover and verifier agrees on.

    Attributes:
        registry (AssetRegistry): the asset generators
        depth (int): the commitment tree depth
        bit_width (int): the range proven for every output amount
    """

    registry: AssetRegistry
    depth: int = TREE_DEPTH
    bit_width: int = RANGE_BITS


def nullifier_for(sk: Scalar) -> Scalar:
    """Return the nullifier of a key, published when its coin is spent.

    Raises:
        InvalidKeyException: if sk is zero
    """
    if sk.is_zero():
        raise InvalidKeyException("secret key is zero")
    return hash_to_scalar(TAG_NULL + sk.to_bytes())


def _write_merkle_proof(writer: Writer, proof: MerkleProof) -> None:
    writer.blob(proof.to_bytes())


def _read_merkle_proof(reader: Reader) -> MerkleProof:
    return MerkleProof.from_bytes(reader.blob())


def _write_signature(writer: Writer, sig: Signature) -> None:
    writer.raw(sig.to_bytes())


def _read_signature(reader: Reader) -> Signature:
    return Signature.from_bytes(reader.raw(SIGNATURE_BYTES))


class RangeStatement(Encodable):
    """Public side of the range relation.

    Attributes:
        commitment (Commitment): the output commitment C
        generators (list[(AssetId, GroupPoint)]): every registered asset, sorted by id
        bit_width (int): amounts must be < 2^bit_width
    """

    def __init__(
        self,
        commitment: Commitment,
        generators: t.Sequence[t.Tuple[AssetId, GroupPoint]],
        bit_width: int = RANGE_BITS,
    ) -> None:
        if bit_width < 1 or bit_width > RANGE_BITS:
            raise InvalidParameterException(f"bit width {bit_width} not in [1, {RANGE_BITS}]")
        if len(generators) == 0:
            raise InvalidParameterException("range statement without asset generators")
        ids: list[AssetId] = [asset_id for asset_id, _ in generators]
        if ids != sorted(set(ids)):
            raise InvalidParameterException("generators not sorted or not distinct")

        self.commitment: Commitment = commitment
        self.generators: list[t.Tuple[AssetId, GroupPoint]] = list(generators)
        self.bit_width: int = bit_width

    @classmethod
    def for_commitment(
        cls, commitment: Commitment, params: PublicParameters
    ) -> "RangeStatement":
        """The statement a verifier builds for an output, over every registered asset."""
        return cls(commitment, params.registry.items(), params.bit_width)

    def write(self, writer: Writer) -> None:
        writer.commitment(self.commitment).u8(self.bit_width)
        writer.items(self.generators, lambda w, g: w.blob(g[0]).point(g[1]))

    @classmethod
    def read(cls, reader: Reader) -> "RangeStatement":
        commitment: Commitment = reader.commitment()
        bit_width: int = reader.u8()
        generators = reader.items(lambda r: (r.blob(), r.point()))
        return cls(commitment, generators, bit_width)


class RangeWitness(Encodable):
    def __init__(self, amounts: AmountVector, sk: Scalar) -> None:
        self.amounts: AmountVector = amounts
        self.sk: Scalar = sk

    def write(self, writer: Writer) -> None:
        writer.amounts(self.amounts).scalar(self.sk)

    @classmethod
    def read(cls, reader: Reader) -> "RangeWitness":
        return cls(reader.amounts(), reader.scalar())


class SpendStatement(Encodable):
    """Public side of a transfer.

    Attributes:
        nullifiers (list[Scalar]): the spent inputs' nullifiers, sorted ascending
        outputs (list[Commitment]): recipient outputs, then the change output
        root (Digest): the tree root the membership proofs target
    """

    def __init__(
        self, nullifiers: t.Sequence[Scalar], outputs: t.Sequence[Commitment], root: Digest
    ) -> None:
        check_nullifier_list(nullifiers)
        self.nullifiers: list[Scalar] = list(nullifiers)
        self.outputs: list[Commitment] = list(outputs)
        self.root: Digest = root

    def message(self) -> bytes:
        """The bytes every party signs."""
        return encode_nullifier_list(self.nullifiers)

    def write(self, writer: Writer) -> None:
        writer.raw(self.message())
        writer.items(self.outputs, Writer.commitment)
        writer.scalar(self.root)

    @classmethod
    def read(cls, reader: Reader) -> "SpendStatement":
        nullifiers: list[Scalar] = read_nullifier_list(reader)
        outputs: list[Commitment] = reader.items(Reader.commitment)
        return cls(nullifiers, outputs, reader.scalar())


class SpendWitness(Encodable):
    """Private side of a transfer; inputs are ordered like the sorted nullifiers.

    Attributes:
        input_keys (list[Scalar]): sk of every spent coin
        input_commitments (list[Commitment]): the spent coins
        merkle_proofs (list[MerkleProof]): their membership proofs
        agg_sig (Signature): the aggregate signature over the excess
    """

    def __init__(
        self,
        input_keys: t.Sequence[Scalar],
        input_commitments: t.Sequence[Commitment],
        merkle_proofs: t.Sequence[MerkleProof],
        agg_sig: Signature,
    ) -> None:
        if not len(input_keys) == len(input_commitments) == len(merkle_proofs) >= 1:
            raise InvalidParameterException("witness lists must have equal non-zero length")
        self.input_keys: list[Scalar] = list(input_keys)
        self.input_commitments: list[Commitment] = list(input_commitments)
        self.merkle_proofs: list[MerkleProof] = list(merkle_proofs)
        self.agg_sig: Signature = agg_sig

    def write(self, writer: Writer) -> None:
        writer.items(self.input_keys, Writer.scalar)
        writer.items(self.input_commitments, Writer.commitment)
        writer.items(self.merkle_proofs, _write_merkle_proof)
        _write_signature(writer, self.agg_sig)

    @classmethod
    def read(cls, reader: Reader) -> "SpendWitness":
        return cls(
            reader.items(Reader.scalar),
            reader.items(Reader.commitment),
            reader.items(_read_merkle_proof),
            _read_signature(reader),
        )


class WithdrawStatement(Encodable):
    """Public side of a withdrawal.

    Attributes:
        amounts (AmountVector): the amounts credited to the public balance
        nullifier (Scalar): nullifier of the spent coin
        root (Digest): the tree root the membership proof targets
    """

    def __init__(self, amounts: AmountVector, nullifier: Scalar, root: Digest) -> None:
        self.amounts: AmountVector = amounts
        self.nullifier: Scalar = nullifier
        self.root: Digest = root

    def write(self, writer: Writer) -> None:
        writer.amounts(self.amounts).scalar(self.nullifier).scalar(self.root)

    @classmethod
    def read(cls, reader: Reader) -> "WithdrawStatement":
        return cls(reader.amounts(), reader.scalar(), reader.scalar())


class WithdrawWitness(Encodable):
    def __init__(self, sk: Scalar, commitment: Commitment, merkle_proof: MerkleProof) -> None:
        self.sk: Scalar = sk
        self.commitment: Commitment = commitment
        self.merkle_proof: MerkleProof = merkle_proof

    def write(self, writer: Writer) -> None:
        writer.scalar(self.sk).commitment(self.commitment)
        _write_merkle_proof(writer, self.merkle_proof)

    @classmethod
    def read(cls, reader: Reader) -> "WithdrawWitness":
        return cls(reader.scalar(), reader.commitment(), _read_merkle_proof(reader))


def check_range_relation(stmt: RangeStatement, wit: RangeWitness) -> bool:
    """Return True if every amount is < 2^bit_width and the witness opens C."""
    if wit.sk.is_zero():
        return False

    generators: dict[AssetId, GroupPoint] = dict(stmt.generators)
    bound: int = 1 << stmt.bit_width
    for asset_id, amount in wit.amounts.items():
        if asset_id not in generators or amount >= bound:
            return False

    opened: GroupPoint = point_sum(
        generators[asset_id] * amount for asset_id, amount in wit.amounts.items()
    )
    return opened + G * wit.sk == stmt.commitment.point


def check_spend_relation(
    stmt: SpendStatement, wit: SpendWitness, depth: int = TREE_DEPTH
) -> bool:
    """Return True if the witness spends the statement's nullifiers into its outputs.

    Checks, per input, nullifier = H(sk) and tree membership under the
    statement's root, then the aggregate signature under the excess
    sum(inputs) - sum(outputs). An identity excess is refused.
    """
    if len(wit.input_keys) != len(stmt.nullifiers) or len(stmt.outputs) == 0:
        return False

    for nullifier, sk in zip(stmt.nullifiers, wit.input_keys):
        if sk.is_zero() or nullifier_for(sk) != nullifier:
            return False

    for commitment, proof in zip(wit.input_commitments, wit.merkle_proofs):
        if not verify_membership(commitment, proof, stmt.root, depth):
            return False

    try:
        X: GroupPoint = excess(wit.input_commitments, stmt.outputs)
    except InvalidParameterException:
        return False
    if X.is_identity():
        logging.debug("Refusing spend with identity excess")
        return False

    try:
        return verify_aggregate(wit.agg_sig, X, stmt.message())
    except AtlantisException:
        return False


def check_withdraw_relation(
    stmt: WithdrawStatement, wit: WithdrawWitness, params: PublicParameters
) -> bool:
    """Return True if the witness opens a tree member to the public amounts."""
    if wit.sk.is_zero() or nullifier_for(wit.sk) != stmt.nullifier:
        return False
    if not verify_membership(wit.commitment, wit.merkle_proof, stmt.root, params.depth):
        return False

    generators: dict[AssetId, GroupPoint] = dict(params.registry.items())
    if any(asset_id not in generators for asset_id in stmt.amounts.assets()):
        return False
    opened: GroupPoint = point_sum(
        generators[asset_id] * amount for asset_id, amount in stmt.amounts.items()
    )
    return opened + G * wit.sk == wit.commitment.point


Statement = t.Union[RangeStatement, SpendStatement, WithdrawStatement]
Witness = t.Union[RangeWitness, SpendWitness, WithdrawWitness]


@dataclass(frozen=True)
class RelationEntry:
    """Bindings of one relation: its types and its checker."""

    statement: t.Type[Encodable]
    witness: t.Type[Encodable]
    check: t.Callable[[t.Any, t.Any, PublicParameters], bool] = field(repr=False)


RELATIONS: dict[Relation, RelationEntry] = {
    Relation.RANGE: RelationEntry(
        RangeStatement, RangeWitness, lambda s, w, p: check_range_relation(s, w)
    ),
    Relation.SPEND: RelationEntry(
        SpendStatement, SpendWitness, lambda s, w, p: check_spend_relation(s, w, p.depth)
    ),
    Relation.WITHDRAW: RelationEntry(
        WithdrawStatement, WithdrawWitness, check_withdraw_relation
    ),
}


def check_relation(
    relation: Relation, stmt: Statement, wit: Witness, params: PublicParameters
) -> bool:
    """Dispatch to the checker of a relation, returning False on mismatched types."""
    entry: RelationEntry = RELATIONS[relation]
    if not isinstance(stmt, entry.statement) or not isinstance(wit, entry.witness):
        return False
    return entry.check(stmt, wit, params)
