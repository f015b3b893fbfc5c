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


import random

import pytest

from src.conftest import ASSET_A, amounts
from src.crypto.commitment import AmountVector, AssetRegistry, Commitment, commit
from src.crypto.group import GroupPoint, Scalar
from src.proofs.backend import BackendTag, Proof
from src.proofs.exceptions import RelationUnsatisfiedException
from src.proofs.relations import (
    PublicParameters,
    RangeStatement,
    RangeWitness,
    Relation,
    WithdrawStatement,
    check_range_relation,
)
from src.proofs.sigma_range import BitProof, SigmaRangeBackend, prove_bit, verify_bit
from src.proofs.simulation import SimulationBackend
from src.wire.codec import Writer, decode

G: GroupPoint = GroupPoint.generator()


@pytest.fixture
def single_asset() -> AssetRegistry:
    registry: AssetRegistry = AssetRegistry()
    registry.register(ASSET_A)
    return registry


def _prove(
    backend: SigmaRangeBackend,
    registry: AssetRegistry,
    vector: AmountVector,
    bit_width: int,
    rng: random.Random,
) -> tuple[RangeStatement, Proof, PublicParameters]:
    params: PublicParameters = PublicParameters(registry, bit_width=bit_width)
    sk: Scalar = Scalar.random(rng)
    stmt: RangeStatement = RangeStatement.for_commitment(commit(vector, sk, registry), params)
    return stmt, backend.prove(Relation.RANGE, stmt, RangeWitness(vector, sk), params, rng), params


@pytest.mark.parametrize("bit", [0, 1])
def test_bit_proof(rng, single_asset, bit):
    H: GroupPoint = single_asset.generator(ASSET_A)
    C: GroupPoint = G * Scalar.random(rng)
    proof: BitProof = prove_bit(C, H, bit, Scalar.random(rng), rng)
    assert verify_bit(C, H, proof)

    # The transcript is bound to the statement's commitment
    assert not verify_bit(C + G, H, proof)
    shifted: BitProof = BitProof(
        proof.B + H, proof.A0, proof.A1, proof.e0, proof.z0, proof.z1
    )
    assert not verify_bit(C, H, shifted)
    resplit: BitProof = BitProof(
        proof.B, proof.A0, proof.A1, proof.e0 + 1, proof.z0, proof.z1
    )
    assert not verify_bit(C, H, resplit)


def test_every_amount_of_a_small_width(rng, single_asset):
    backend: SigmaRangeBackend = SigmaRangeBackend()
    for amount in range(16):
        stmt, proof, params = _prove(backend, single_asset, amounts(A=amount), 4, rng)
        assert proof.backend == BackendTag.SIGMA_RANGE
        assert backend.verify(Relation.RANGE, stmt, proof, params)


def test_out_of_range_is_never_proven(rng, single_asset):
    backend: SigmaRangeBackend = SigmaRangeBackend()
    params: PublicParameters = PublicParameters(single_asset, bit_width=4)
    for amount in range(16, 32):
        sk: Scalar = Scalar.random(rng)
        vector: AmountVector = amounts(A=amount)
        stmt: RangeStatement = RangeStatement.for_commitment(
            commit(vector, sk, single_asset), params
        )
        with pytest.raises(RelationUnsatisfiedException):
            backend.prove(Relation.RANGE, stmt, RangeWitness(vector, sk), params, rng)


def test_forged_bit_commitments_are_rejected(rng, single_asset):
    """Shifting a bit commitment by H, which would move the amount out of range, fails."""
    backend: SigmaRangeBackend = SigmaRangeBackend()
    H: GroupPoint = single_asset.generator(ASSET_A)

    for amount in range(16):
        stmt, proof, params = _prove(backend, single_asset, amounts(A=amount), 4, rng)
        records: list[BitProof] = decode(proof.payload, lambda r: r.items(BitProof.read))
        j: int = amount % 4
        records[j] = BitProof(
            records[j].B + H * (1 << (4 - j)),
            records[j].A0,
            records[j].A1,
            records[j].e0,
            records[j].z0,
            records[j].z1,
        )
        forged: Proof = Proof(
            proof.backend, Writer().items(records, lambda w, p: p.write(w)).getvalue()
        )
        assert not backend.verify(Relation.RANGE, stmt, forged, params)

        # Same proof, commitment shifted to amount + 16
        shifted: RangeStatement = RangeStatement(
            stmt.commitment + Commitment(H * 16), stmt.generators, stmt.bit_width
        )
        assert not backend.verify(Relation.RANGE, shifted, proof, params)


def test_multi_asset(rng, registry):
    backend: SigmaRangeBackend = SigmaRangeBackend()
    stmt, proof, params = _prove(backend, registry, amounts(A=200, B=3), 8, rng)
    assert backend.verify(Relation.RANGE, stmt, proof, params)

    # Records are per registered asset, absent ones prove zero
    records: list[BitProof] = decode(proof.payload, lambda r: r.items(BitProof.read))
    assert len(records) == 2 * 8

    stmt, proof, params = _prove(backend, registry, amounts(B=255), 8, rng)
    assert backend.verify(Relation.RANGE, stmt, proof, params)


@pytest.mark.parametrize("amount", [2**128 - 1, 2**64 + 12345])
def test_full_width(rng, single_asset, amount):
    backend: SigmaRangeBackend = SigmaRangeBackend()
    stmt, proof, params = _prove(backend, single_asset, amounts(A=amount), 128, rng)
    assert backend.verify(Relation.RANGE, stmt, proof, params)


def test_rejects_malformed(rng, single_asset):
    backend: SigmaRangeBackend = SigmaRangeBackend()
    stmt, proof, params = _prove(backend, single_asset, amounts(A=9), 4, rng)

    assert not backend.verify(Relation.RANGE, stmt, Proof(proof.backend, b""), params)
    assert not backend.verify(
        Relation.RANGE, stmt, Proof(proof.backend, proof.payload[:-1]), params
    )
    assert not backend.verify(
        Relation.RANGE, stmt, Proof(proof.backend, proof.payload + b"\x00"), params
    )

    # A proof for 4 bits does not verify a statement over 5
    wider: RangeStatement = RangeStatement(stmt.commitment, stmt.generators, 5)
    assert not backend.verify(Relation.RANGE, wider, proof, params)


def test_range_only(rng, single_asset):
    backend: SigmaRangeBackend = SigmaRangeBackend()
    stmt, proof, params = _prove(backend, single_asset, amounts(A=3), 4, rng)
    withdraw: WithdrawStatement = WithdrawStatement(amounts(A=3), Scalar(1), Scalar(2))
    assert not backend.verify(Relation.WITHDRAW, withdraw, proof, params)
    assert not backend.verify(Relation.SPEND, stmt, proof, params)
    with pytest.raises(RelationUnsatisfiedException):
        backend.prove(Relation.WITHDRAW, stmt, RangeWitness(amounts(A=3), Scalar(1)), params)


def test_seeded_proofs_are_reproducible(single_asset):
    backend: SigmaRangeBackend = SigmaRangeBackend()
    first = _prove(backend, single_asset, amounts(A=5), 4, random.Random(7))
    second = _prove(backend, single_asset, amounts(A=5), 4, random.Random(7))
    assert first[1] == second[1]


@pytest.mark.parametrize("seed", range(40))
def test_backends_agree_with_the_checker(single_asset, seed):
    """Both backends prove exactly what the relation checker accepts."""
    rng: random.Random = random.Random(seed)
    bit_width: int = rng.randint(2, 6)
    params: PublicParameters = PublicParameters(single_asset, bit_width=bit_width)
    # about half of the amounts overflow the width
    vector: AmountVector = amounts(A=rng.randrange(2 ** (bit_width + 1)))
    sk: Scalar = Scalar.random(rng)
    commitment: Commitment = commit(vector, sk, single_asset)
    if rng.random() < 0.25:
        commitment = commitment + Commitment(G)
    stmt: RangeStatement = RangeStatement.for_commitment(commitment, params)
    wit: RangeWitness = RangeWitness(vector, sk)
    shifted: RangeStatement = RangeStatement.for_commitment(
        commitment + Commitment(G), params
    )

    expected: bool = check_range_relation(stmt, wit)
    for backend in (SigmaRangeBackend(), SimulationBackend()):
        try:
            proof: Proof = backend.prove(Relation.RANGE, stmt, wit, params, rng)
        except RelationUnsatisfiedException:
            assert not expected
            continue
        assert expected
        assert backend.verify(Relation.RANGE, stmt, proof, params)
        assert not backend.verify(Relation.RANGE, shifted, proof, params)


@pytest.mark.parametrize("amount", [1, 2, 5, 6, 9, 14])
def test_records_swapped_between_weights_are_rejected(rng, single_asset, amount):
    backend: SigmaRangeBackend = SigmaRangeBackend()
    stmt, proof, params = _prove(backend, single_asset, amounts(A=amount), 4, rng)
    records: list[BitProof] = decode(proof.payload, lambda r: r.items(BitProof.read))

    def encoded(swapped: list[BitProof]) -> Proof:
        return Proof(
            proof.backend, Writer().items(swapped, lambda w, p: p.write(w)).getvalue()
        )

    for j in range(3):
        # whole records: every bit transcript still verifies on its own
        swapped: list[BitProof] = list(records)
        swapped[j], swapped[j + 1] = records[j + 1], records[j]
        assert verify_bit(stmt.commitment.point, single_asset.generator(ASSET_A), swapped[j])
        assert not backend.verify(Relation.RANGE, stmt, encoded(swapped), params)

        # only the bit commitments
        a, b = records[j], records[j + 1]
        swapped = list(records)
        swapped[j] = BitProof(b.B, a.A0, a.A1, a.e0, a.z0, a.z1)
        swapped[j + 1] = BitProof(a.B, b.A0, b.A1, b.e0, b.z0, b.z1)
        assert not backend.verify(Relation.RANGE, stmt, encoded(swapped), params)


def test_twenty_full_width_amounts(single_asset):
    rng: random.Random = random.Random(128)
    backend: SigmaRangeBackend = SigmaRangeBackend()
    for _ in range(20):
        vector: AmountVector = amounts(A=rng.randrange(2**128))
        stmt, proof, params = _prove(backend, single_asset, vector, 128, rng)
        assert backend.verify(Relation.RANGE, stmt, proof, params)
