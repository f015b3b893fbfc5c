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

"""Range proofs by bit decomposition and sigma OR-proofs.

For every asset i and bit j the prover publishes B_ij = b_ij * H_i + r_ij * G
and proves that B_ij opens to 0 or to 1. The blindings satisfy
sum(2^j * r_ij) = sk, so the verifier can also check
sum(2^j * B_ij) == C without learning anything else.

Records are ordered by asset id, then by ascending bit.
"""

import logging
import random
import typing as t

from tqdm import tqdm

from src.const import TAG_OR
from src.crypto.group import GroupPoint, Scalar, hash_to_scalar
from src.crypto.schnorr import G
from src.exceptions import AtlantisException
from src.proofs.backend import BackendTag, Proof, ProofBackend
from src.proofs.exceptions import RelationUnsatisfiedException
from src.proofs.relations import (
    PublicParameters,
    RangeStatement,
    RangeWitness,
    Relation,
    Statement,
    Witness,
    check_range_relation,
)
from src.types import AssetId
from src.wire.codec import Encodable, Reader, Writer, decode


class BitProof(Encodable):
    """One bit commitment and its OR-proof transcript.

    Attributes:
        B (GroupPoint): the bit commitment
        A0 (GroupPoint): first message of the "bit is 0" branch
        A1 (GroupPoint): first message of the "bit is 1" branch
        e0 (Scalar): challenge share of the first branch; e1 = e - e0
        z0 (Scalar): response of the first branch
        z1 (Scalar): response of the second branch
    """

    def __init__(
        self,
        B: GroupPoint,
        A0: GroupPoint,
        A1: GroupPoint,
        e0: Scalar,
        z0: Scalar,
        z1: Scalar,
    ) -> None:
        self.B: GroupPoint = B
        self.A0: GroupPoint = A0
        self.A1: GroupPoint = A1
        self.e0: Scalar = e0
        self.z0: Scalar = z0
        self.z1: Scalar = z1

    def write(self, writer: Writer) -> None:
        writer.point(self.B).point(self.A0).point(self.A1)
        writer.scalar(self.e0).scalar(self.z0).scalar(self.z1)

    @classmethod
    def read(cls, reader: Reader) -> "BitProof":
        return cls(
            reader.point(),
            reader.point(),
            reader.point(),
            reader.scalar(),
            reader.scalar(),
            reader.scalar(),
        )


def _or_challenge(
    C: GroupPoint, B: GroupPoint, A0: GroupPoint, A1: GroupPoint
) -> Scalar:
    return hash_to_scalar(TAG_OR + C.to_bytes() + B.to_bytes() + A0.to_bytes() + A1.to_bytes())


def prove_bit(
    C: GroupPoint, H: GroupPoint, bit: int, r: Scalar, rng: random.Random | None = None
) -> BitProof:
    """Commit to one bit and prove it is 0 or 1.

    The branch that holds is answered honestly, the other one is simulated
    with a challenge share chosen in advance.

    Args:
        C (GroupPoint): the range statement's commitment, bound in the challenge
        H (GroupPoint): the asset generator
        bit (int): 0 or 1
        r (Scalar): the bit blinding

    Returns:
        BitProof: B = bit * H + r * G with its transcript
    """
    B: GroupPoint = H * bit + G * r
    # Y_0 = B claims bit 0, Y_1 = B - H claims bit 1; both must be multiples of G
    Y: t.Tuple[GroupPoint, GroupPoint] = (B, B - H)

    k: Scalar = Scalar.random(rng)
    e_sim: Scalar = Scalar.random(rng)
    z_sim: Scalar = Scalar.random(rng)

    A: list[GroupPoint] = [GroupPoint.identity(), GroupPoint.identity()]
    A[bit] = G * k
    A[1 - bit] = G * z_sim - Y[1 - bit] * e_sim

    e: Scalar = _or_challenge(C, B, A[0], A[1])
    e_real: Scalar = e - e_sim
    z_real: Scalar = k + e_real * r

    if bit == 0:
        return BitProof(B, A[0], A[1], e_real, z_real, z_sim)
    return BitProof(B, A[0], A[1], e_sim, z_sim, z_real)


def verify_bit(C: GroupPoint, H: GroupPoint, proof: BitProof) -> bool:
    e: Scalar = _or_challenge(C, proof.B, proof.A0, proof.A1)
    e1: Scalar = e - proof.e0
    return (
        G * proof.z0 == proof.A0 + proof.B * proof.e0
        and G * proof.z1 == proof.A1 + (proof.B - H) * e1
    )


def _records(stmt: RangeStatement) -> list[t.Tuple[AssetId, GroupPoint, int]]:
    return [
        (asset_id, H, j)
        for asset_id, H in stmt.generators
        for j in range(stmt.bit_width)
    ]


class SigmaRangeBackend(ProofBackend):
    """Honest (zero-knowledge) proofs for the range relation only."""

    tag = BackendTag.SIGMA_RANGE
    relations = frozenset({Relation.RANGE})

    def prove(
        self,
        relation: Relation,
        stmt: Statement,
        wit: Witness,
        params: PublicParameters,
        rng: random.Random | None = None,
    ) -> Proof:
        if (
            relation != Relation.RANGE
            or not isinstance(stmt, RangeStatement)
            or not isinstance(wit, RangeWitness)
            or not check_range_relation(stmt, wit)
        ):
            raise RelationUnsatisfiedException(relation.name.lower())

        records = _records(stmt)

        # Random blindings everywhere except the weight-1 bit of the last
        # asset, which absorbs the remainder so that sum(2^j * r_ij) == sk
        blindings: list[Scalar] = [Scalar.random(rng) for _ in records]
        solved: int = len(records) - stmt.bit_width
        weighted: Scalar = Scalar(
            sum((1 << j) * r.value for (_, _, j), r in zip(records, blindings))
        )
        blindings[solved] = blindings[solved] + (wit.sk - weighted)

        C: GroupPoint = stmt.commitment.point
        proofs: list[BitProof] = list()
        for (asset_id, H, j), r in tqdm(
            list(zip(records, blindings)),
            desc="Proving range",
            disable=not self.progress,
        ):
            bit: int = (wit.amounts.get(asset_id) >> j) & 1
            proofs.append(prove_bit(C, H, bit, r, rng))

        writer: Writer = Writer().items(proofs, lambda w, p: p.write(w))
        logging.debug(f"Range proof with {len(proofs)} bit records")
        return Proof(self.tag, writer.getvalue())

    def verify(
        self, relation: Relation, stmt: Statement, proof: Proof, params: PublicParameters
    ) -> bool:
        if relation != Relation.RANGE or not isinstance(stmt, RangeStatement):
            return False
        try:
            proofs: list[BitProof] = decode(proof.payload, lambda r: r.items(BitProof.read))
        except AtlantisException as e:
            logging.debug(f"Malformed range proof: {e}")
            return False

        records = _records(stmt)
        if len(proofs) != len(records):
            return False

        C: GroupPoint = stmt.commitment.point
        for (_, H, _), bit_proof in zip(records, proofs):
            if not verify_bit(C, H, bit_proof):
                return False

        # Horner per asset, highest bit first: acc = 2 * acc + B_j
        total: GroupPoint = GroupPoint.identity()
        for i in range(len(stmt.generators)):
            acc: GroupPoint = GroupPoint.identity()
            for j in reversed(range(stmt.bit_width)):
                acc = acc + acc + proofs[i * stmt.bit_width + j].B
            total = total + acc
        return total == C
