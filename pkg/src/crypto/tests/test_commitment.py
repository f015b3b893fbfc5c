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


import itertools

import pytest

from src.conftest import ASSET_A, ASSET_B, amounts
from src.crypto.commitment import (
    AMOUNT_LIMIT,
    AmountVector,
    AssetRegistry,
    Commitment,
    amounts_point,
    asset_generator,
    commit,
    commit_with_point,
    excess,
)
from src.crypto.exceptions import (
    AssetAlreadyRegisteredException,
    InvalidKeyException,
    InvalidParameterException,
    UnsupportedAssetException,
)
from src.crypto.group import GroupPoint, Scalar

G: GroupPoint = GroupPoint.generator()


def test_amount_vector():
    vector: AmountVector = amounts(A=10, B=0)
    assert vector.assets() == [ASSET_A]
    assert vector.get(ASSET_B) == 0
    assert not vector.is_zero()
    assert AmountVector().is_zero()
    assert amounts(A=3, B=4) + amounts(A=1) == amounts(A=4, B=4)
    assert amounts(A=3, B=4) - amounts(B=4) == amounts(A=3)
    assert amounts(A=3, B=4).covers(amounts(A=3))
    assert not amounts(A=3).covers(amounts(A=3, B=1))


@pytest.mark.parametrize("amount", [-1, AMOUNT_LIMIT, 1.5, True])
def test_amount_vector_rejects(amount):
    with pytest.raises(InvalidParameterException):
        AmountVector({ASSET_A: amount})


def test_amount_vector_negative_subtraction():
    with pytest.raises(InvalidParameterException):
        amounts(A=1) - amounts(A=2)


@pytest.mark.parametrize("parts", [1, 2, 3, 7])
def test_amount_vector_split(parts):
    vector: AmountVector = amounts(A=100, B=50)
    split: list[AmountVector] = vector.split(parts)
    assert len(split) == parts
    assert AmountVector.sum(split) == vector


def test_registry(registry):
    assert ASSET_A in registry
    assert len(registry) == 2
    assert registry.generator(ASSET_A) == asset_generator(ASSET_A)
    assert [a for a, _ in registry.items()] == [ASSET_A, ASSET_B]

    with pytest.raises(AssetAlreadyRegisteredException):
        registry.register(ASSET_A)
    with pytest.raises(UnsupportedAssetException):
        registry.generator(b"C")
    with pytest.raises(InvalidParameterException):
        registry.register(b"")


def test_registry_load_checks_generator():
    registry: AssetRegistry = AssetRegistry()
    registry.load(ASSET_A, asset_generator(ASSET_A))
    with pytest.raises(InvalidParameterException):
        registry.load(ASSET_B, asset_generator(ASSET_A))


def test_commit(registry, rng):
    sk: Scalar = Scalar.random(rng)
    commitment: Commitment = commit(amounts(A=5, B=7), sk, registry)
    expected: GroupPoint = (
        registry.generator(ASSET_A) * 5 + registry.generator(ASSET_B) * 7 + G * sk
    )
    assert commitment.point == expected
    assert commit_with_point(amounts(A=5, B=7), G * sk, registry) == commitment
    assert Commitment.from_hex(commitment.hex()) == commitment


def test_commit_rejects(registry):
    with pytest.raises(InvalidKeyException):
        commit(amounts(A=1), Scalar(0), registry)
    with pytest.raises(InvalidKeyException):
        commit_with_point(amounts(A=1), GroupPoint.identity(), registry)
    with pytest.raises(UnsupportedAssetException):
        commit(amounts(C=1), Scalar(1), registry)
    with pytest.raises(InvalidParameterException):
        Commitment.from_hex("zz")


def test_homomorphism(registry, rng):
    k1, k2 = Scalar.random(rng), Scalar.random(rng)
    left: Commitment = commit(amounts(A=3), k1, registry) + commit(amounts(A=4, B=1), k2, registry)
    assert left == commit(amounts(A=7, B=1), k1 + k2, registry)


def test_excess_is_pure_key_when_amounts_conserve(registry, rng):
    k_in, k_out1, k_out2 = (Scalar.random(rng) for _ in range(3))
    inputs: list[Commitment] = [commit(amounts(A=10, B=4), k_in, registry)]
    outputs: list[Commitment] = [
        commit(amounts(A=6), k_out1, registry),
        commit(amounts(A=4, B=4), k_out2, registry),
    ]
    assert excess(inputs, outputs) == G * (k_in - k_out1 - k_out2)

    outputs[1] = commit(amounts(A=5, B=4), k_out2, registry)
    assert excess(inputs, outputs) != G * (k_in - k_out1 - k_out2)


def test_excess_rejects_no_inputs():
    with pytest.raises(InvalidParameterException):
        excess([], [])


def test_amounts_point(registry):
    assert amounts_point(AmountVector(), registry).is_identity()
    assert amounts_point(amounts(B=2), registry) == registry.generator(ASSET_B) * 2


def _random_amounts(rng, limit: int = 2**16) -> AmountVector:
    return amounts(A=rng.randrange(limit), B=rng.randrange(limit))


def test_homomorphism_random(registry, rng):
    for _ in range(100):
        a1, a2 = _random_amounts(rng), _random_amounts(rng)
        k1, k2 = Scalar.random(rng), Scalar.random(rng)
        left: Commitment = commit(a1, k1, registry) + commit(a2, k2, registry)
        assert left == commit(a1 + a2, k1 + k2, registry)


def test_no_two_openings_collide_at_toy_scale(registry):
    """Every (a_A, a_B, sk) with entries below 8 commits to a distinct point."""

    def multiples(P: GroupPoint) -> list[GroupPoint]:
        table: list[GroupPoint] = [GroupPoint.identity()]
        for _ in range(7):
            table.append(table[-1] + P)
        return table

    H_A = multiples(registry.generator(ASSET_A))
    H_B = multiples(registry.generator(ASSET_B))
    keys = multiples(G)
    seen: dict[bytes, tuple[int, int, int]] = dict()
    for a, b, k in itertools.product(range(8), range(8), range(1, 8)):
        encoding: bytes = (H_A[a] + H_B[b] + keys[k]).to_bytes()
        assert encoding not in seen, f"{(a, b, k)} collides with {seen[encoding]}"
        seen[encoding] = (a, b, k)

    assert Commitment(H_A[3] + H_B[5] + keys[2]) == commit(amounts(A=3, B=5), Scalar(2), registry)


def test_unbalanced_amounts_leave_an_asset_term(registry, rng):
    for _ in range(25):
        total: AmountVector = _random_amounts(rng) + amounts(A=1, B=1)
        first, second = total.split(2)
        asset_id = rng.choice([ASSET_A, ASSET_B])
        delta: int = rng.choice([-1, 1]) * rng.randint(1, first.get(asset_id))
        skewed: AmountVector = AmountVector(
            {**first.amounts, asset_id: first.get(asset_id) + delta}
        )
        k_in, k1, k2 = (Scalar.random(rng) for _ in range(3))
        inputs: list[Commitment] = [commit(total, k_in, registry)]
        outputs: list[Commitment] = [
            commit(skewed, k1, registry),
            commit(second, k2, registry),
        ]
        assert excess(inputs, outputs) != G * (k_in - k1 - k2)
