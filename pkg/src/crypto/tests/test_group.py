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


import hashlib
import json
import pathlib
import subprocess
import sys

import pytest

from src.const import POINT_BYTES, SCALAR_BYTES, TAG_NUMS
from src.crypto.exceptions import PointDecodingException, ScalarDecodingException
from src.crypto.group import (
    FIELD_PRIME,
    ORDER,
    GroupPoint,
    Scalar,
    hash_to_scalar,
    nums_to_point,
    point_sum,
)

G: GroupPoint = GroupPoint.generator()


def test_identity_encoding():
    identity: GroupPoint = GroupPoint.identity()
    assert identity.to_bytes() == bytes(POINT_BYTES)
    assert GroupPoint.from_bytes(bytes(POINT_BYTES)).is_identity()
    assert G - G == identity
    assert G * 0 == identity
    assert G * ORDER == identity


def test_point_encoding_is_compressed():
    data: bytes = (G * 12345).to_bytes()
    assert len(data) == POINT_BYTES
    assert data[0] in (2, 3)
    assert GroupPoint.from_bytes(data) == G * 12345


@pytest.mark.parametrize(
    "data",
    [
        b"",
        bytes(32),
        b"\x04" + bytes(32),
        b"\x02" + FIELD_PRIME.to_bytes(32, "big"),
        b"\x02" + (2**256 - 1).to_bytes(32, "big"),
        bytes(POINT_BYTES + 1),
    ],
)
def test_point_decoding_rejects(data):
    with pytest.raises(PointDecodingException):
        GroupPoint.from_bytes(data)


def test_scalar_encoding():
    assert Scalar(ORDER + 5) == Scalar(5)
    assert len(Scalar(1).to_bytes()) == SCALAR_BYTES
    assert Scalar.from_bytes(Scalar(ORDER - 1).to_bytes()) == Scalar(-1)

    with pytest.raises(ScalarDecodingException):
        Scalar.from_bytes(ORDER.to_bytes(SCALAR_BYTES, "big"))
    with pytest.raises(ScalarDecodingException):
        Scalar.from_bytes(bytes(SCALAR_BYTES - 1))


def test_scalar_values_are_plain_ints(rng):
    assert type(ORDER) is int
    assert type(FIELD_PRIME) is int
    assert type(Scalar(5).value) is int
    assert type(Scalar(ORDER + 5).value) is int
    assert type(Scalar.random(rng).value) is int
    assert type((Scalar(3) * Scalar(4) + Scalar(1)).value) is int
    assert type(Scalar.from_bytes(Scalar(7).to_bytes()).value) is int
    assert json.loads(json.dumps(Scalar(5).value)) == 5


def test_scalar_arithmetic(rng):
    for _ in range(100):
        a: Scalar = Scalar.random(rng)
        b: Scalar = Scalar.random(rng)
        assert a + b == b + a
        assert a * b == b * a
        assert a * a.inverse() == Scalar(1)
        assert -a + a == Scalar(0)
        assert 1 - a == Scalar(1) - a


def test_group_laws(rng):
    identity: GroupPoint = GroupPoint.identity()
    for _ in range(100):
        a, b, c = (Scalar.random(rng) for _ in range(3))
        A, B, C = G * a, G * b, G * c
        assert A + B == B + A
        assert (A + B) + C == A + (B + C)
        assert A + identity == A
        assert A + (-A) == identity
        assert G * (a + b) == A + B
        assert A * b == B * a


def test_random_scalar_is_never_zero(rng):
    assert all(not Scalar.random(rng).is_zero() for _ in range(100))


def test_point_sum(rng):
    keys: list[Scalar] = [Scalar.random(rng) for _ in range(5)]
    assert point_sum(G * k for k in keys) == G * sum(k.value for k in keys)
    assert point_sum([]).is_identity()


def test_hash_to_scalar():
    assert hash_to_scalar(b"x") == hash_to_scalar(b"x")
    assert hash_to_scalar(b"x") != hash_to_scalar(b"y")
    assert hash_to_scalar(b"") != hash_to_scalar(b"\x00")


def test_nums_to_point():
    H: GroupPoint = nums_to_point(b"asset:A")
    assert H == nums_to_point(b"asset:A")
    assert H != nums_to_point(b"asset:B")
    assert not H.is_identity()
    assert H != G

    # The first counter value whose digest is a valid x coordinate wins
    for counter in range(256):
        x: bytes = hashlib.sha256(TAG_NUMS + b"asset:A" + bytes([counter])).digest()
        try:
            expected: GroupPoint = GroupPoint.from_bytes(b"\x02" + x)
        except PointDecodingException:
            continue
        assert H == expected
        break


def test_nums_is_stable_across_processes():
    labels: list[bytes] = [b"asset:A", b"asset:EUR", b"exclude"]
    code: str = (
        "from src.crypto.group import nums_to_point\n"
        f"for label in {labels!r}:\n"
        "    print(nums_to_point(label).hex())\n"
    )
    result = subprocess.run(
        [sys.executable, "-c", code],
        capture_output=True,
        text=True,
        check=True,
        cwd=pathlib.Path(__file__).parents[3],
    )
    assert result.stdout.split() == [nums_to_point(label).hex() for label in labels]
