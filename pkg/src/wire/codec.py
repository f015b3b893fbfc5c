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

"""Canonical binary encoding shared by every protocol object.

Rules:
    - scalars: 32-byte big-endian
    - points: 33-byte compressed (identity = 33 zero bytes)
    - amounts: 16-byte big-endian
    - lists: 4-byte big-endian count, then the elements
    - byte strings: 4-byte big-endian length, then the bytes
    - maps: entries sorted by key bytes
    - messages: 1-byte type tag and 1-byte version first
"""

import typing as t
from enum import IntEnum

from src.const import AMOUNT_BYTES, POINT_BYTES, SCALAR_BYTES, WIRE_VERSION
from src.crypto.commitment import AmountVector, Commitment
from src.crypto.exceptions import (
    InvalidParameterException,
    PointDecodingException,
    ScalarDecodingException,
)
from src.crypto.group import GroupPoint, Scalar
from src.exceptions import AtlantisException
from src.wire.exceptions import DecodeException, UnsupportedVersionException

T = t.TypeVar("T")


class MessageTag(IntEnum):
    """Type tags of top-level messages."""

    PROOF = 0x01
    SPEND_STATEMENT = 0x02
    WITHDRAW_STATEMENT = 0x03
    TRANSFER_INIT = 0x10
    TRANSFER_RESPONSE = 0x11
    TRANSFER_PAYLOAD = 0x12
    TRANSFER_FINAL = 0x13
    WITHDRAW_PAYLOAD = 0x14
    NONCE_ANNOUNCEMENT = 0x15


class Writer:
    """Append-only encoder."""

    def __init__(self) -> None:
        self._buffer: bytearray = bytearray()

    def header(self, tag: MessageTag, version: int = WIRE_VERSION) -> "Writer":
        self._buffer.append(int(tag))
        self._buffer.append(version)
        return self

    def u8(self, value: int) -> "Writer":
        self._buffer.append(value)
        return self

    def u32(self, value: int) -> "Writer":
        self._buffer += value.to_bytes(4, "big")
        return self

    def u64(self, value: int) -> "Writer":
        self._buffer += value.to_bytes(8, "big")
        return self

    def raw(self, data: bytes) -> "Writer":
        self._buffer += data
        return self

    def blob(self, data: bytes) -> "Writer":
        return self.u32(len(data)).raw(data)

    def text(self, value: str) -> "Writer":
        return self.blob(value.encode("utf-8"))

    def scalar(self, value: Scalar) -> "Writer":
        return self.raw(value.to_bytes())

    def point(self, value: GroupPoint) -> "Writer":
        return self.raw(value.to_bytes())

    def commitment(self, value: Commitment) -> "Writer":
        return self.raw(value.to_bytes())

    def amount(self, value: int) -> "Writer":
        return self.raw(value.to_bytes(AMOUNT_BYTES, "big"))

    def amounts(self, vector: AmountVector) -> "Writer":
        items = vector.items()
        self.u32(len(items))
        for asset_id, amount in items:
            self.blob(asset_id).amount(amount)
        return self

    def items(self, values: t.Sequence[T], encode: t.Callable[["Writer", T], t.Any]) -> "Writer":
        self.u32(len(values))
        for value in values:
            encode(self, value)
        return self

    def getvalue(self) -> bytes:
        return bytes(self._buffer)


class Reader:
    """Decoder over a byte-string; every failure names the offset."""

    def __init__(self, data: bytes) -> None:
        self._data: bytes = bytes(data)
        self.offset: int = 0

    def fail(self, detail: str) -> t.NoReturn:
        raise DecodeException(self.offset, detail)

    def header(self, tag: MessageTag, version: int = WIRE_VERSION) -> None:
        """Consume and check a message header.

        Raises:
            DecodeException: on a different type tag
            UnsupportedVersionException: on a different version byte
        """
        found: int = self.u8()
        if found != int(tag):
            self.offset -= 1
            self.fail(f"expected tag {tag.name}, found 0x{found:02x}")
        found_version: int = self.u8()
        if found_version != version:
            raise UnsupportedVersionException(found_version)

    def raw(self, size: int) -> bytes:
        if size < 0 or self.offset + size > len(self._data):
            self.fail(f"truncated: need {size} bytes")
        chunk: bytes = self._data[self.offset : self.offset + size]
        self.offset += size
        return chunk

    def u8(self) -> int:
        return self.raw(1)[0]

    def u32(self) -> int:
        return int.from_bytes(self.raw(4), "big")

    def u64(self) -> int:
        return int.from_bytes(self.raw(8), "big")

    def count(self) -> int:
        """Read a list length, refusing counts the remaining bytes cannot hold."""
        n: int = self.u32()
        if n > self.remaining():
            self.offset -= 4
            self.fail(f"list count {n} exceeds remaining input")
        return n

    def blob(self) -> bytes:
        return self.raw(self.u32())

    def text(self) -> str:
        start: int = self.offset
        data: bytes = self.blob()
        try:
            return data.decode("utf-8")
        except UnicodeDecodeError:
            self.offset = start
            self.fail("invalid utf-8")

    def scalar(self) -> Scalar:
        start: int = self.offset
        try:
            return Scalar.from_bytes(self.raw(SCALAR_BYTES))
        except ScalarDecodingException as e:
            self.offset = start
            self.fail(str(e))

    def point(self) -> GroupPoint:
        start: int = self.offset
        try:
            return GroupPoint.from_bytes(self.raw(POINT_BYTES))
        except PointDecodingException as e:
            self.offset = start
            self.fail(str(e))

    def commitment(self) -> Commitment:
        return Commitment(self.point())

    def amount(self) -> int:
        return int.from_bytes(self.raw(AMOUNT_BYTES), "big")

    def amounts(self) -> AmountVector:
        start: int = self.offset
        entries: dict[bytes, int] = dict()
        previous: bytes | None = None
        for _ in range(self.count()):
            asset_id: bytes = self.blob()
            amount: int = self.amount()
            if previous is not None and asset_id <= previous:
                self.fail("amount map not sorted")
            if amount == 0:
                self.fail("zero amount entry")
            previous = asset_id
            entries[asset_id] = amount
        try:
            return AmountVector(entries)
        except InvalidParameterException as e:
            self.offset = start
            self.fail(str(e))

    def items(self, decode: t.Callable[["Reader"], T]) -> list[T]:
        return [decode(self) for _ in range(self.count())]

    def sorted_items(
        self, decode: t.Callable[["Reader"], T], key: t.Callable[[T], t.Any] = lambda v: v
    ) -> list[T]:
        """Read a list whose keys must be strictly ascending, so duplicates fail too."""
        values: list[T] = list()
        for _ in range(self.count()):
            start: int = self.offset
            value: T = decode(self)
            if values and not key(values[-1]) < key(value):
                self.offset = start
                self.fail("list not in strictly ascending order")
            values.append(value)
        return values

    def remaining(self) -> int:
        return len(self._data) - self.offset

    def finish(self) -> None:
        if self.remaining() != 0:
            self.fail(f"{self.remaining()} trailing bytes")


def decode(data: bytes, parse: t.Callable[[Reader], T]) -> T:
    """Run a parser over the whole input, rejecting trailing bytes.

    Domain errors raised while building objects (e.g. an invalid sign) are
    reported as DecodeException at the offset where they surfaced.
    """
    reader: Reader = Reader(data)
    try:
        value: T = parse(reader)
    except (DecodeException, UnsupportedVersionException):
        raise
    except (AtlantisException, ValueError) as e:
        raise DecodeException(reader.offset, str(e)) from e
    reader.finish()
    return value


class Encodable:
    """Mixin for protocol objects with one canonical encoding.

    Subclasses implement `write` and `read`; equality is byte equality of the
    canonical form.
    """

    def write(self, writer: Writer) -> None:
        raise NotImplementedError

    @classmethod
    def read(cls: t.Type[T], reader: Reader) -> T:
        raise NotImplementedError

    def to_bytes(self) -> bytes:
        writer: Writer = Writer()
        self.write(writer)
        return writer.getvalue()

    @classmethod
    def from_bytes(cls: t.Type[T], data: bytes) -> T:
        """Decode a complete encoding.

        Raises:
            DecodeException: on truncation, bad tag, trailing bytes or an invalid field
            UnsupportedVersionException: on a version byte this build does not know
        """
        return decode(data, cls.read)  # type: ignore[attr-defined]

    def __eq__(self, other: object) -> bool:
        if type(other) is not type(self):
            return NotImplemented
        return self.to_bytes() == other.to_bytes()  # type: ignore[attr-defined]

    def __hash__(self) -> int:
        return hash(self.to_bytes())


def check_nullifier_list(nullifiers: t.Sequence[Scalar]) -> None:
    """Require a non-empty, strictly ascending list.

    Raises:
        InvalidParameterException: otherwise
    """
    if len(nullifiers) == 0:
        raise InvalidParameterException("empty nullifier list")
    for previous, current in zip(nullifiers, nullifiers[1:]):
        if not previous < current:
            raise InvalidParameterException("nullifiers not sorted or not distinct")


def encode_nullifier_list(nullifiers: t.Sequence[Scalar]) -> bytes:
    """Encode the sorted nullifier list; these exact bytes are the signed message.

    Args:
        nullifiers (Sequence[Scalar]): sorted ascending, distinct, non-empty

    Raises:
        InvalidParameterException: if the list is empty, unsorted or has duplicates

    Returns:
        bytes: 4-byte count followed by 32 bytes per nullifier
    """
    check_nullifier_list(nullifiers)
    return Writer().items(list(nullifiers), Writer.scalar).getvalue()


def read_nullifier_list(reader: Reader) -> list[Scalar]:
    start: int = reader.offset
    nullifiers: list[Scalar] = reader.items(Reader.scalar)
    try:
        check_nullifier_list(nullifiers)
    except InvalidParameterException as e:
        reader.offset = start
        reader.fail(str(e))
    return nullifiers
