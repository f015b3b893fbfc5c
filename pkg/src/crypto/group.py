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

"""Prime-order group used by the whole protocol.

The instantiation is secp256k1 through the `ecdsa` package: G is the curve
base point and every other generator is derived with `nums_to_point`.
"""

import hashlib
import random
import secrets
import typing as t

import ecdsa
from ecdsa.ellipticcurve import INFINITY, PointJacobi
from ecdsa.errors import MalformedPointError

from src.const import (
    NUMS_MAX_ATTEMPTS,
    POINT_BYTES,
    SCALAR_BYTES,
    TAG_H2S,
    TAG_NUMS,
)
from src.crypto.exceptions import (
    NumsDerivationException,
    PointDecodingException,
    ScalarDecodingException,
)

CURVE = ecdsa.SECP256k1

# The group order p
ORDER: int = int(CURVE.order)

# The prime of the base field, used to reject non-canonical x coordinates
FIELD_PRIME: int = int(CURVE.curve.p())

_IDENTITY_ENCODING: bytes = bytes(POINT_BYTES)

_system_random = secrets.SystemRandom()


class Scalar:
    """An element of F_p, always held reduced.

    Attributes:
        value (int): the canonical representative, 0 <= value < p
    """

    __slots__ = ("value",)

    def __init__(self, value: int) -> None:
        # ecdsa hands out gmpy2 integers when gmpy2 is installed
        self.value: int = int(value) % ORDER

    @classmethod
    def from_bytes(cls, data: bytes) -> "Scalar":
        """Decode a 32-byte big-endian scalar.

        Args:
            data (bytes): the encoding

        Raises:
            ScalarDecodingException: if the length is wrong or the value is not reduced

        Returns:
            Scalar: the decoded scalar
        """
        if len(data) != SCALAR_BYTES:
            raise ScalarDecodingException(f"must be {SCALAR_BYTES} bytes, got {len(data)}")

        value: int = int.from_bytes(data, "big")
        if value >= ORDER:
            raise ScalarDecodingException("not canonically reduced")
        return cls(value)

    @classmethod
    def random(cls, rng: random.Random | None = None) -> "Scalar":
        """Draw a uniformly random non-zero scalar.

        Args:
            rng (random.Random | None, optional): randomness source.
                Defaults to the operating system CSPRNG.

        Returns:
            Scalar: a scalar in [1, p)
        """
        source: random.Random = rng if rng is not None else _system_random
        return cls(source.randrange(1, ORDER))

    def to_bytes(self) -> bytes:
        return self.value.to_bytes(SCALAR_BYTES, "big")

    def is_zero(self) -> bool:
        return self.value == 0

    def inverse(self) -> "Scalar":
        return Scalar(pow(self.value, -1, ORDER))

    def __add__(self, other: "Scalar | int") -> "Scalar":
        if not isinstance(other, (Scalar, int)):
            return NotImplemented
        return Scalar(self.value + int(other))

    __radd__ = __add__

    def __sub__(self, other: "Scalar | int") -> "Scalar":
        if not isinstance(other, (Scalar, int)):
            return NotImplemented
        return Scalar(self.value - int(other))

    def __rsub__(self, other: int) -> "Scalar":
        if not isinstance(other, int):
            return NotImplemented
        return Scalar(other - self.value)

    def __mul__(self, other: "Scalar | int") -> "Scalar":
        # Scalar * GroupPoint falls through to GroupPoint.__rmul__
        if not isinstance(other, (Scalar, int)):
            return NotImplemented
        return Scalar(self.value * int(other))

    __rmul__ = __mul__

    def __neg__(self) -> "Scalar":
        return Scalar(-self.value)

    def __int__(self) -> int:
        return self.value

    def __index__(self) -> int:
        return self.value

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Scalar):
            return NotImplemented
        return self.value == other.value

    def __lt__(self, other: "Scalar") -> bool:
        return self.value < other.value

    def __hash__(self) -> int:
        return hash(("scalar", self.value))

    def __repr__(self) -> str:
        return f"Scalar({self.to_bytes().hex()[:16]}…)"


class GroupPoint:
    """An element of the secp256k1 group, identity included.

    Notes:
        The identity is kept as `None` internally and encodes as 33 zero bytes;
        every other point uses the standard 33-byte compressed form.
    """

    __slots__ = ("_point", "_encoding")

    def __init__(self, point: PointJacobi | None) -> None:
        if point is not None and point == INFINITY:
            point = None
        self._point: PointJacobi | None = point
        self._encoding: bytes | None = None

    @classmethod
    def identity(cls) -> "GroupPoint":
        return cls(None)

    @classmethod
    def generator(cls) -> "GroupPoint":
        """Return G, the ownership generator."""
        return _GENERATOR

    @classmethod
    def from_bytes(cls, data: bytes, precompute: bool = False) -> "GroupPoint":
        """Decode a compressed point, validating that it lies on the curve.

        Args:
            data (bytes): the 33-byte encoding
            precompute (bool, optional): build a multiplication table, worth it
                for long-lived generators. Defaults to False.

        Raises:
            PointDecodingException: if the encoding is not a canonical group element

        Returns:
            GroupPoint: the decoded point
        """
        if len(data) != POINT_BYTES:
            raise PointDecodingException(f"expected {POINT_BYTES} bytes, got {len(data)}")

        if data == _IDENTITY_ENCODING:
            return cls.identity()

        if data[0] not in (2, 3) or int.from_bytes(data[1:], "big") >= FIELD_PRIME:
            raise PointDecodingException("not a canonical compressed point")

        try:
            point: PointJacobi = PointJacobi.from_bytes(
                CURVE.curve,
                data,
                valid_encodings=("compressed",),
                order=ORDER,
                generator=precompute,
            )
        except MalformedPointError as e:
            raise PointDecodingException(str(e)) from e

        return cls(point)

    def to_bytes(self) -> bytes:
        if self._encoding is None:
            if self._point is None:
                self._encoding = _IDENTITY_ENCODING
            else:
                self._encoding = self._point.to_bytes("compressed")
        return self._encoding

    def hex(self) -> str:
        return self.to_bytes().hex()

    def is_identity(self) -> bool:
        return self._point is None

    def __add__(self, other: "GroupPoint") -> "GroupPoint":
        if self._point is None:
            return other
        if other._point is None:
            return self
        return GroupPoint(self._point + other._point)

    def __neg__(self) -> "GroupPoint":
        if self._point is None:
            return self
        return GroupPoint(-self._point)

    def __sub__(self, other: "GroupPoint") -> "GroupPoint":
        return self + (-other)

    def __mul__(self, scalar: Scalar | int) -> "GroupPoint":
        k: int = int(scalar) % ORDER
        if self._point is None or k == 0:
            return GroupPoint.identity()
        return GroupPoint(self._point * k)

    def __rmul__(self, scalar: Scalar | int) -> "GroupPoint":
        return self.__mul__(scalar)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GroupPoint):
            return NotImplemented
        return self.to_bytes() == other.to_bytes()

    def __hash__(self) -> int:
        return hash(self.to_bytes())

    def __repr__(self) -> str:
        if self._point is None:
            return "GroupPoint(identity)"
        return f"GroupPoint({self.hex()[:18]}…)"


_GENERATOR = GroupPoint(CURVE.generator)


def point_sum(points: t.Iterable[GroupPoint]) -> GroupPoint:
    """Add up points, starting from the identity."""
    total: GroupPoint = GroupPoint.identity()
    for point in points:
        total = total + point
    return total


def hash_to_scalar(message: bytes) -> Scalar:
    """Hash an arbitrary byte-string to a scalar.

    SHA-512 is reduced mod p, so the bias is negligible.

    Args:
        message (bytes): the input, already carrying its own domain tag

    Returns:
        Scalar: the digest as a field element
    """
    digest: bytes = hashlib.sha512(TAG_H2S + message).digest()
    return Scalar(int.from_bytes(digest, "big"))


def nums_to_point(label: bytes) -> GroupPoint:
    """Derive a generator nobody knows the discrete log of.

    Try-and-increment: hash the label with a one-byte counter and read the
    digest as the x coordinate of an even-y compressed point, until the
    encoding is valid.

    Args:
        label (bytes): public derivation label

    Raises:
        NumsDerivationException: if no counter value yields a point

    Returns:
        GroupPoint: a non-identity point, with a precomputed multiplication table
    """
    for counter in range(NUMS_MAX_ATTEMPTS):
        x: bytes = hashlib.sha256(TAG_NUMS + label + bytes([counter])).digest()
        try:
            return GroupPoint.from_bytes(b"\x02" + x, precompute=True)
        except PointDecodingException:
            continue

    raise NumsDerivationException(label.hex())
