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

"""Multi-asset Pedersen commitments: C = sum(a_i * H_i) + sk * G."""

import functools
import logging
import typing as t

from src.const import AMOUNT_BITS, ASSET_LABEL_PREFIX, MAX_OUTPUTS
from src.crypto.exceptions import (
    AssetAlreadyRegisteredException,
    InvalidKeyException,
    InvalidParameterException,
    UnsupportedAssetException,
)
from src.crypto.group import GroupPoint, Scalar, nums_to_point, point_sum
from src.types import AssetId

AMOUNT_LIMIT: int = 2**AMOUNT_BITS


class AmountVector:
    """Per-asset amounts, in token base units.

    Zero entries are normalized away, so an absent key means amount 0.

    Attributes:
        amounts (dict[AssetId, int]): the non-zero amounts, each < 2^128
    """

    __slots__ = ("amounts",)

    def __init__(self, amounts: t.Mapping[AssetId, int] | None = None) -> None:
        """Initialize a new amount vector.

        Args:
            amounts (Mapping[AssetId, int] | None, optional): asset -> amount

        Raises:
            InvalidParameterException: on negative, oversized or non-integer
                amounts, or on an empty asset identifier
        """
        self.amounts: dict[AssetId, int] = dict()
        for asset_id, amount in (amounts or {}).items():
            if not isinstance(asset_id, bytes) or len(asset_id) == 0:
                raise InvalidParameterException(f"bad asset id {asset_id!r}")
            if not isinstance(amount, int) or isinstance(amount, bool):
                raise InvalidParameterException(f"amount {amount!r} is not an integer")
            if amount < 0 or amount >= AMOUNT_LIMIT:
                raise InvalidParameterException(f"amount {amount} out of range")
            if amount != 0:
                self.amounts[asset_id] = amount

    def get(self, asset_id: AssetId) -> int:
        return self.amounts.get(asset_id, 0)

    def assets(self) -> list[AssetId]:
        return sorted(self.amounts)

    def items(self) -> list[t.Tuple[AssetId, int]]:
        """Return (asset, amount) pairs sorted by asset id."""
        return sorted(self.amounts.items())

    def is_zero(self) -> bool:
        return len(self.amounts) == 0

    def covers(self, other: "AmountVector") -> bool:
        """Return True if every per-asset amount is >= the other's."""
        return all(self.get(a) >= amount for a, amount in other.amounts.items())

    def split(self, parts: int) -> list["AmountVector"]:
        """Split into `parts` vectors whose sum is this vector.

        Every asset is divided as evenly as possible; the first vectors
        receive the remainder.

        Args:
            parts (int): number of vectors, >= 1

        Returns:
            list[AmountVector]: the parts
        """
        if parts < 1:
            raise InvalidParameterException("cannot split into less than one part")

        chunks: list[dict[AssetId, int]] = [dict() for _ in range(parts)]
        for asset_id, amount in self.items():
            share, remainder = divmod(amount, parts)
            for i in range(parts):
                chunks[i][asset_id] = share + (1 if i < remainder else 0)
        return [AmountVector(c) for c in chunks]

    def __add__(self, other: "AmountVector") -> "AmountVector":
        total: dict[AssetId, int] = dict(self.amounts)
        for asset_id, amount in other.amounts.items():
            total[asset_id] = total.get(asset_id, 0) + amount
        return AmountVector(total)

    def __sub__(self, other: "AmountVector") -> "AmountVector":
        if not self.covers(other):
            raise InvalidParameterException("subtraction would go negative")

        diff: dict[AssetId, int] = dict(self.amounts)
        for asset_id, amount in other.amounts.items():
            diff[asset_id] = diff.get(asset_id, 0) - amount
        return AmountVector(diff)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, AmountVector):
            return NotImplemented
        return self.amounts == other.amounts

    def __hash__(self) -> int:
        return hash(tuple(self.items()))

    def __repr__(self) -> str:
        inner: str = ", ".join(
            f"{a.decode('utf-8', errors='replace')}={n}" for a, n in self.items()
        )
        return f"AmountVector({inner})"

    @classmethod
    def sum(cls, vectors: t.Iterable["AmountVector"]) -> "AmountVector":
        total: AmountVector = cls()
        for vector in vectors:
            total = total + vector
        return total


@functools.lru_cache(maxsize=None)
def asset_generator(asset_id: AssetId) -> GroupPoint:
    """Derive H_i for an asset, as NUMS("asset:" || id).

    Memoized: state files re-derive every generator on load.
    """
    return nums_to_point(ASSET_LABEL_PREFIX + asset_id)


class AssetRegistry:
    """Asset identifiers and their generators, the public parameters of the ledger.

    Attributes:
        entries (dict[AssetId, GroupPoint]): asset -> H_i
    """

    def __init__(self) -> None:
        self.entries: dict[AssetId, GroupPoint] = dict()
        self._encodings: set[bytes] = set()

    def register(self, asset_id: AssetId) -> GroupPoint:
        """Register an asset, deriving its generator.

        Args:
            asset_id (AssetId): the new asset identifier

        Raises:
            InvalidParameterException: on an empty identifier
            AssetAlreadyRegisteredException: if the asset is already present

        Returns:
            GroupPoint: the generator H_i
        """
        if len(asset_id) == 0:
            raise InvalidParameterException("empty asset id")
        if asset_id in self.entries:
            raise AssetAlreadyRegisteredException(asset_id)

        generator: GroupPoint = asset_generator(asset_id)
        self._insert(asset_id, generator)
        logging.debug(f"Registered asset {asset_id!r} with generator {generator.hex()}")
        return generator

    def load(self, asset_id: AssetId, generator: GroupPoint) -> None:
        """Insert an entry read from storage, re-deriving and checking the generator.

        Raises:
            InvalidParameterException: if the stored generator is not NUMS("asset:" || id)
        """
        if asset_id in self.entries:
            raise AssetAlreadyRegisteredException(asset_id)
        if asset_generator(asset_id) != generator:
            raise InvalidParameterException(f"generator mismatch for asset {asset_id!r}")
        self._insert(asset_id, generator)

    def _insert(self, asset_id: AssetId, generator: GroupPoint) -> None:
        encoding: bytes = generator.to_bytes()
        if encoding in self._encodings:
            raise InvalidParameterException("two assets share a generator")
        self.entries[asset_id] = generator
        self._encodings.add(encoding)

    def generator(self, asset_id: AssetId) -> GroupPoint:
        try:
            return self.entries[asset_id]
        except KeyError:
            raise UnsupportedAssetException(asset_id)

    def check_supported(self, amounts: AmountVector) -> None:
        for asset_id in amounts.assets():
            if asset_id not in self.entries:
                raise UnsupportedAssetException(asset_id)

    def items(self) -> list[t.Tuple[AssetId, GroupPoint]]:
        return sorted(self.entries.items(), key=lambda e: e[0])

    def copy(self) -> "AssetRegistry":
        registry: AssetRegistry = AssetRegistry()
        registry.entries = dict(self.entries)
        registry._encodings = set(self._encodings)
        return registry

    def __contains__(self, asset_id: object) -> bool:
        return asset_id in self.entries

    def __len__(self) -> int:
        return len(self.entries)


class Commitment:
    """A commitment to a vector of amounts and an ownership key.

    Attributes:
        point (GroupPoint): the group element C
    """

    __slots__ = ("point",)

    def __init__(self, point: GroupPoint) -> None:
        self.point: GroupPoint = point

    @classmethod
    def from_bytes(cls, data: bytes) -> "Commitment":
        return cls(GroupPoint.from_bytes(data))

    @classmethod
    def from_hex(cls, data: str) -> "Commitment":
        try:
            raw: bytes = bytes.fromhex(data.strip())
        except ValueError as e:
            raise InvalidParameterException(f"not a hex string: {data!r}") from e
        return cls.from_bytes(raw)

    def to_bytes(self) -> bytes:
        return self.point.to_bytes()

    def hex(self) -> str:
        return self.point.hex()

    def __add__(self, other: "Commitment") -> "Commitment":
        return Commitment(self.point + other.point)

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Commitment):
            return NotImplemented
        return self.point == other.point

    def __lt__(self, other: "Commitment") -> bool:
        return self.to_bytes() < other.to_bytes()

    def __hash__(self) -> int:
        return hash(("commitment", self.to_bytes()))

    def __repr__(self) -> str:
        return f"Commitment({self.hex()[:18]}…)"


def amounts_point(amounts: AmountVector, registry: AssetRegistry) -> GroupPoint:
    """Return sum(a_i * H_i) for the given amounts."""
    return point_sum(
        registry.generator(asset_id) * amount for asset_id, amount in amounts.items()
    )


def commit(amounts: AmountVector, sk: Scalar, registry: AssetRegistry) -> Commitment:
    """Commit to amounts under an ownership key.

    Args:
        amounts (AmountVector): the committed amounts
        sk (Scalar): the owner's secret key
        registry (AssetRegistry): the asset generators

    Raises:
        InvalidKeyException: if sk is zero
        UnsupportedAssetException: if an asset is not registered

    Returns:
        Commitment: sum(a_i * H_i) + sk * G
    """
    if sk.is_zero():
        raise InvalidKeyException("secret key is zero")
    return Commitment(amounts_point(amounts, registry) + GroupPoint.generator() * sk)


def commit_with_point(
    amounts: AmountVector, public_key: GroupPoint, registry: AssetRegistry
) -> Commitment:
    """Commit to amounts under a public key P = sk * G, as the ledger does on deposit."""
    if public_key.is_identity():
        raise InvalidKeyException("public key is the identity")
    return Commitment(amounts_point(amounts, registry) + public_key)


def excess(inputs: t.Sequence[Commitment], outputs: t.Sequence[Commitment]) -> GroupPoint:
    """Return sum(inputs) - sum(outputs).

    When per-asset amounts conserve this is a pure multiple of G.

    Raises:
        InvalidParameterException: with no inputs or more than 2^16 outputs
    """
    if len(inputs) == 0:
        raise InvalidParameterException("excess needs at least one input")
    if len(outputs) > MAX_OUTPUTS:
        raise InvalidParameterException(f"more than {MAX_OUTPUTS} outputs")

    return point_sum(c.point for c in inputs) - point_sum(c.point for c in outputs)
