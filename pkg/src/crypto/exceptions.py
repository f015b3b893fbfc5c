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


from src.exceptions import AtlantisException


class InvalidKeyException(AtlantisException):
    """A secret key is zero or otherwise unusable."""

    reason = "invalid key"


class InvalidParameterException(AtlantisException):
    """An argument violates the precondition of an operation."""

    reason = "invalid parameter"


class UnsupportedAssetException(AtlantisException):
    """The asset is not present in the registry."""

    reason = "unsupported asset"

    def __init__(self, asset_id: bytes, *args: object) -> None:
        """Creates an UnsupportedAssetException.

        Args:
            asset_id (bytes): the unknown asset identifier
        """
        self.asset_id = asset_id
        super().__init__(asset_id.decode("utf-8", errors="replace"), *args)


class AssetAlreadyRegisteredException(AtlantisException):
    reason = "asset already registered"

    def __init__(self, asset_id: bytes, *args: object) -> None:
        self.asset_id = asset_id
        super().__init__(asset_id.decode("utf-8", errors="replace"), *args)


class IndexCollisionException(AtlantisException):
    """The tree slot derived from a commitment is already occupied.

    The transaction must be rejected and retried with a fresh output key.
    """

    reason = "index collision"

    def __init__(self, leaf_index: int, *args: object) -> None:
        self.leaf_index = leaf_index
        super().__init__(f"leaf {leaf_index}", *args)


class LeafNotFoundException(AtlantisException):
    reason = "commitment not found"

    def __init__(self, leaf_index: int, *args: object) -> None:
        self.leaf_index = leaf_index
        super().__init__(f"leaf {leaf_index}", *args)


class NumsDerivationException(AtlantisException):
    """No valid point was found by try-and-increment.

    This signals a broken hash or point encoding, never bad luck.
    """

    reason = "nums derivation failed"


class PointDecodingException(AtlantisException):
    reason = "invalid point encoding"


class ScalarDecodingException(AtlantisException):
    reason = "invalid scalar encoding"
