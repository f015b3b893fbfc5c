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

"""The ledger's persistent state and its versioned file encoding."""

import logging
import typing as t

from src.const import RANGE_BITS, ROOT_WINDOW, STATE_MAGIC, STATE_VERSION, TREE_DEPTH
from src.crypto.commitment import AssetRegistry, Commitment
from src.crypto.group import GroupPoint, Scalar
from src.crypto.smt import Digest, SparseMerkleTree
from src.proofs.backend import SUITE_SIMULATION
from src.types import AccountId, AssetId, Timestamp
from src.wire.codec import Encodable, Reader, Writer
from src.wire.exceptions import UnsupportedVersionException


class LedgerState(Encodable):
    """Everything the ledger knows.

    Attributes:
        registry (AssetRegistry): asset generators
        tree (SparseMerkleTree): the anonymity set of commitments
        nullifiers (set[Scalar]): nullifiers of spent commitments, only ever growing
        exclusions (set[Commitment]): commitments barred from spending
        timelocks (dict[int, Timestamp]): leaf index -> first spendable clock value
        balances (dict[(AccountId, AssetId), int]): public balances, never negative
        clock (Timestamp): the logical clock
        root_history (list[Digest]): the previous roots, oldest first, at most ROOT_WINDOW
        suite_name (str): the proof suite fixed at creation
        bit_width (int): the range proven for outputs
        admin_key (GroupPoint): the administrator public key, identity if none
    """

    def __init__(
        self,
        suite_name: str = SUITE_SIMULATION,
        bit_width: int = RANGE_BITS,
        admin_key: GroupPoint | None = None,
        depth: int = TREE_DEPTH,
    ) -> None:
        self.registry: AssetRegistry = AssetRegistry()
        self.tree: SparseMerkleTree = SparseMerkleTree(depth)
        self.nullifiers: set[Scalar] = set()
        self.exclusions: set[Commitment] = set()
        self.timelocks: dict[int, Timestamp] = dict()
        self.balances: dict[t.Tuple[AccountId, AssetId], int] = dict()
        self.clock: Timestamp = 0
        self.root_history: list[Digest] = list()
        self.suite_name: str = suite_name
        self.bit_width: int = bit_width
        self.admin_key: GroupPoint = (
            admin_key if admin_key is not None else GroupPoint.identity()
        )

    def remember_root(self, root: Digest) -> None:
        """Push a root that is about to be replaced, keeping the last ROOT_WINDOW."""
        self.root_history.append(root)
        del self.root_history[:-ROOT_WINDOW]

    def is_recent_root(self, root: Digest) -> bool:
        return root == self.tree.root or root in self.root_history

    def balance(self, account: AccountId, asset_id: AssetId) -> int:
        return self.balances.get((account, asset_id), 0)

    def set_balance(self, account: AccountId, asset_id: AssetId, amount: int) -> None:
        if amount == 0:
            self.balances.pop((account, asset_id), None)
        else:
            self.balances[(account, asset_id)] = amount

    def write(self, writer: Writer) -> None:
        writer.raw(STATE_MAGIC).u8(STATE_VERSION)
        writer.text(self.suite_name).u8(self.bit_width).u8(self.tree.depth)
        writer.point(self.admin_key)
        writer.items(self.registry.items(), lambda w, e: w.blob(e[0]).point(e[1]))
        writer.items(sorted(self.tree.leaves.values()), Writer.commitment)
        writer.scalar(self.tree.root)
        writer.items(sorted(self.nullifiers), Writer.scalar)
        writer.items(sorted(self.exclusions), Writer.commitment)
        writer.items(
            sorted(self.timelocks.items()), lambda w, e: w.u32(e[0]).u64(e[1])
        )
        writer.items(
            sorted(self.balances.items()),
            lambda w, e: w.text(e[0][0]).blob(e[0][1]).amount(e[1]),
        )
        writer.u64(self.clock)
        writer.items(self.root_history, Writer.scalar)

    @classmethod
    def read(cls, reader: Reader) -> "LedgerState":
        """Decode a state file, re-deriving every generator and the tree root.

        Raises:
            DecodeException: on any malformed section or a root mismatch
            UnsupportedVersionException: on another state format version
        """
        if reader.raw(len(STATE_MAGIC)) != STATE_MAGIC:
            reader.offset = 0
            reader.fail("not a ledger state file")
        version: int = reader.u8()
        if version != STATE_VERSION:
            raise UnsupportedVersionException(version)

        suite_name: str = reader.text()
        bit_width: int = reader.u8()
        depth: int = reader.u8()
        if bit_width < 1 or bit_width > RANGE_BITS:
            reader.fail(f"bad range bit width {bit_width}")
        state: LedgerState = cls(suite_name, bit_width, reader.point(), depth)

        # Every collection is sorted and duplicate free: one state, one encoding
        for asset_id, generator in reader.sorted_items(
            lambda r: (r.blob(), r.point()), key=lambda e: e[0]
        ):
            state.registry.load(asset_id, generator)

        leaves: list[Commitment] = reader.sorted_items(Reader.commitment)
        state.tree = SparseMerkleTree.from_leaves(leaves, depth)
        stored_root: Digest = reader.scalar()
        if stored_root != state.tree.root:
            reader.fail("tree root does not match the stored leaves")

        state.nullifiers = set(reader.sorted_items(Reader.scalar))
        state.exclusions = set(reader.sorted_items(Reader.commitment))
        for index, unlock_at in reader.sorted_items(
            lambda r: (r.u32(), r.u64()), key=lambda e: e[0]
        ):
            if state.tree.is_free(index):
                reader.fail(f"timelock on empty leaf {index}")
            state.timelocks[index] = unlock_at
        for account, asset_id, amount in reader.sorted_items(
            lambda r: (r.text(), r.blob(), r.amount()), key=lambda e: (e[0], e[1])
        ):
            if amount == 0:
                reader.fail(f"zero balance for {account}")
            state.set_balance(account, asset_id, amount)

        state.clock = reader.u64()
        state.root_history = reader.items(Reader.scalar)
        if len(state.root_history) > ROOT_WINDOW:
            reader.fail(f"{len(state.root_history)} historical roots, at most {ROOT_WINDOW}")

        logging.debug(
            f"Loaded ledger state with {len(state.tree)} leaves "
            f"and {len(state.nullifiers)} nullifiers"
        )
        return state
