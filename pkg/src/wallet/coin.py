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


import typing as t
from enum import Enum

from src import types
from src.const import TREE_DEPTH
from src.crypto.commitment import AmountVector, AssetRegistry, Commitment, commit
from src.crypto.exceptions import InvalidParameterException, ScalarDecodingException
from src.crypto.group import Scalar
from src.crypto.smt import leaf_index
from src.proofs.relations import nullifier_for
from src.types import Timestamp


class CoinOrigin(Enum):
    DEPOSIT = "deposit"
    TRANSFER = "transfer"
    CHANGE = "change"


class CoinRecord:
    """A coin the wallet can spend.

    Attributes:
        sk (Scalar): the ownership key
        amounts (AmountVector): the committed amounts
        commitment (Commitment): commit(amounts, sk)
        leaf_index (int): the commitment's tree slot
        origin (CoinOrigin): how the coin was received
        pending (bool): True until the commitment is seen in the tree
        spent (bool): True once its nullifier is recorded by the ledger
        timelock (Timestamp | None): first clock value the coin can be spent at
    """

    def __init__(
        self,
        sk: Scalar,
        amounts: AmountVector,
        commitment: Commitment,
        leaf_index: int,
        origin: CoinOrigin,
        pending: bool = True,
        spent: bool = False,
        timelock: Timestamp | None = None,
    ) -> None:
        self.sk: Scalar = sk
        self.amounts: AmountVector = amounts
        self.commitment: Commitment = commitment
        self.leaf_index: int = leaf_index
        self.origin: CoinOrigin = origin
        self.pending: bool = pending
        self.spent: bool = spent
        self.timelock: Timestamp | None = timelock

    @classmethod
    def create(
        cls,
        sk: Scalar,
        amounts: AmountVector,
        registry: AssetRegistry,
        origin: CoinOrigin,
        timelock: Timestamp | None = None,
        depth: int = TREE_DEPTH,
    ) -> "CoinRecord":
        commitment: Commitment = commit(amounts, sk, registry)
        return cls(
            sk, amounts, commitment, leaf_index(commitment, depth), origin, timelock=timelock
        )

    @property
    def nullifier(self) -> Scalar:
        return nullifier_for(self.sk)

    def is_spendable(self, clock: Timestamp | None = None) -> bool:
        if self.spent or self.pending:
            return False
        return self.timelock is None or clock is None or self.timelock <= clock

    def _to_json(self) -> types.JSONType:
        return {
            "sk": self.sk.to_bytes().hex(),
            "amounts": {a.hex(): n for a, n in self.amounts.items()},
            "commitment": self.commitment.hex(),
            "leaf_index": self.leaf_index,
            "origin": self.origin.value,
            "pending": self.pending,
            "spent": self.spent,
            "timelock": self.timelock,
        }

    @classmethod
    def _from_json(cls, raw_data: dict[str, t.Any]) -> "CoinRecord":
        """Initialize a coin from its wallet-file form.

        Raises:
            InvalidParameterException: on a missing or malformed field
        """
        try:
            return cls(
                sk=Scalar.from_bytes(bytes.fromhex(raw_data["sk"])),
                amounts=AmountVector(
                    {bytes.fromhex(a): int(n) for a, n in raw_data["amounts"].items()}
                ),
                commitment=Commitment.from_hex(raw_data["commitment"]),
                leaf_index=int(raw_data["leaf_index"]),
                origin=CoinOrigin(raw_data["origin"]),
                pending=bool(raw_data["pending"]),
                spent=bool(raw_data["spent"]),
                timelock=raw_data.get("timelock"),
            )
        except (KeyError, ValueError, TypeError, ScalarDecodingException) as e:
            raise InvalidParameterException(f"malformed coin record: {e}") from e

    def __repr__(self) -> str:
        state: str = "spent" if self.spent else "pending" if self.pending else "unspent"
        return f"Coin[{self.leaf_index}] {self.amounts} ({self.origin.value}, {state})"
