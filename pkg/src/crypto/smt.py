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


import logging
import typing as t

from tqdm import tqdm

from src.const import (
    SCALAR_BYTES,
    TAG_EMPTY,
    TAG_LEAF,
    TAG_LEAFVAL,
    TAG_NODE,
    TREE_DEPTH,
)
from src.crypto.commitment import Commitment
from src.crypto.exceptions import (
    IndexCollisionException,
    InvalidParameterException,
    LeafNotFoundException,
)
from src.crypto.group import Scalar, hash_to_scalar

# Digests are field elements, so one hash primitive serves the whole protocol
Digest = Scalar


def leaf_index(commitment: Commitment, depth: int = TREE_DEPTH) -> int:
    """Return the tree slot of a commitment: the low `depth` bits of its hash."""
    h: Scalar = hash_to_scalar(TAG_LEAF + commitment.to_bytes())
    return h.value & ((1 << depth) - 1)


def leaf_digest(commitment: Commitment) -> Digest:
    return hash_to_scalar(TAG_LEAFVAL + commitment.to_bytes())


def node_digest(left: Digest, right: Digest) -> Digest:
    return hash_to_scalar(TAG_NODE + left.to_bytes() + right.to_bytes())


def default_digests(depth: int) -> list[Digest]:
    """Return the digest of the all-empty subtree at every level, leaves first."""
    defaults: list[Digest] = [hash_to_scalar(TAG_EMPTY)]
    for level in range(1, depth + 1):
        defaults.append(node_digest(defaults[level - 1], defaults[level - 1]))
    return defaults


_DEFAULTS_CACHE: dict[int, list[Digest]] = dict()


def _defaults(depth: int) -> list[Digest]:
    if depth not in _DEFAULTS_CACHE:
        _DEFAULTS_CACHE[depth] = default_digests(depth)
    return _DEFAULTS_CACHE[depth]


class MerkleProof:
    """A membership proof: the slot and the sibling digests from leaf to root.

    Attributes:
        leaf_index (int): the slot of the proven commitment
        siblings (list[Digest]): one digest per level, leaf-to-root order
    """

    __slots__ = ("leaf_index", "siblings")

    def __init__(self, leaf_index: int, siblings: t.Sequence[Digest]) -> None:
        self.leaf_index: int = leaf_index
        self.siblings: list[Digest] = list(siblings)

    @classmethod
    def from_bytes(cls, data: bytes) -> "MerkleProof":
        """Decode `4-byte index || depth x 32-byte siblings`."""
        if len(data) < 4 or (len(data) - 4) % SCALAR_BYTES != 0:
            raise ValueError("malformed merkle proof")
        siblings: list[Digest] = [
            Scalar.from_bytes(data[i : i + SCALAR_BYTES])
            for i in range(4, len(data), SCALAR_BYTES)
        ]
        return cls(int.from_bytes(data[:4], "big"), siblings)

    def to_bytes(self) -> bytes:
        return self.leaf_index.to_bytes(4, "big") + b"".join(
            s.to_bytes() for s in self.siblings
        )

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, MerkleProof):
            return NotImplemented
        return self.leaf_index == other.leaf_index and self.siblings == other.siblings


def verify_membership(
    commitment: Commitment, proof: MerkleProof, root: Digest, depth: int = TREE_DEPTH
) -> bool:
    """Fold the leaf digest with the siblings and compare with the root.

    Args:
        commitment (Commitment): the claimed member
        proof (MerkleProof): its proof
        root (Digest): the expected root
        depth (int, optional): the tree depth. Defaults to TREE_DEPTH.

    Returns:
        bool: True if the proof is valid for this commitment and root
    """
    if len(proof.siblings) != depth:
        return False
    if proof.leaf_index != leaf_index(commitment, depth):
        return False

    digest: Digest = leaf_digest(commitment)
    index: int = proof.leaf_index
    for sibling in proof.siblings:
        if index & 1:
            digest = node_digest(sibling, digest)
        else:
            digest = node_digest(digest, sibling)
        index >>= 1

    return digest == root


class SparseMerkleTree:
    """Append-only, fixed-depth sparse Merkle tree of commitments.

    Attributes:
        depth (int): number of levels below the root
        nodes (dict[(int, int), Digest]): non-default digests, keyed by (level, index);
            level 0 holds the leaves
        leaves (dict[int, Commitment]): the stored commitments by slot
        default_digests (list[Digest]): empty-subtree digest per level
    """

    def __init__(self, depth: int = TREE_DEPTH) -> None:
        if depth < 1 or depth > 32:
            raise InvalidParameterException(f"unsupported tree depth {depth}")
        self.depth: int = depth
        self.nodes: dict[t.Tuple[int, int], Digest] = dict()
        self.leaves: dict[int, Commitment] = dict()
        self.default_digests: list[Digest] = _defaults(depth)

    @classmethod
    def from_leaves(
        cls,
        leaves: t.Iterable[Commitment],
        depth: int = TREE_DEPTH,
        progress: bool = False,
    ) -> "SparseMerkleTree":
        """Rebuild a tree from its commitments.

        Args:
            leaves (Iterable[Commitment]): the stored commitments, in any order
            depth (int, optional): the tree depth
            progress (bool, optional): show a progress bar. Defaults to False.

        Raises:
            IndexCollisionException: if two leaves share a slot

        Returns:
            SparseMerkleTree: the tree
        """
        tree: SparseMerkleTree = cls(depth)
        for commitment in tqdm(leaves, desc="Rebuilding tree", disable=not progress):
            index: int = leaf_index(commitment, depth)
            if index in tree.leaves:
                raise IndexCollisionException(index)
            tree.leaves[index] = commitment
            tree.nodes[(0, index)] = leaf_digest(commitment)

        dirty: set[int] = set(tree.leaves)
        for level in range(depth):
            parents: set[int] = {i >> 1 for i in dirty}
            for parent in parents:
                tree._update_parent(level, parent)
            dirty = parents
        return tree

    def _node(self, level: int, index: int) -> Digest:
        return self.nodes.get((level, index), self.default_digests[level])

    def _update_parent(self, level: int, parent: int) -> None:
        self.nodes[(level + 1, parent)] = node_digest(
            self._node(level, parent << 1), self._node(level, (parent << 1) | 1)
        )

    @property
    def root(self) -> Digest:
        return self._node(self.depth, 0)

    def contains(self, commitment: Commitment) -> bool:
        return self.leaves.get(leaf_index(commitment, self.depth)) == commitment

    def is_free(self, index: int) -> bool:
        return index not in self.leaves

    def insert(self, commitment: Commitment) -> Digest:
        """Store a commitment at its slot and return the new root.

        Raises:
            IndexCollisionException: if the slot is occupied

        Returns:
            Digest: the new root
        """
        index: int = leaf_index(commitment, self.depth)
        if index in self.leaves:
            raise IndexCollisionException(index)

        self.leaves[index] = commitment
        self.nodes[(0, index)] = leaf_digest(commitment)
        for level in range(self.depth):
            index >>= 1
            self._update_parent(level, index)

        logging.debug(f"Inserted leaf {leaf_index(commitment, self.depth)}")
        return self.root

    def prove_membership(self, commitment: Commitment) -> MerkleProof:
        """Build the membership proof of a stored commitment.

        Raises:
            LeafNotFoundException: if the commitment is not in the tree
        """
        index: int = leaf_index(commitment, self.depth)
        if self.leaves.get(index) != commitment:
            raise LeafNotFoundException(index)

        siblings: list[Digest] = list()
        position: int = index
        for level in range(self.depth):
            siblings.append(self._node(level, position ^ 1))
            position >>= 1
        return MerkleProof(index, siblings)

    def recompute_root(self) -> Digest:
        """Recompute the root from the leaves only, ignoring cached nodes."""
        return SparseMerkleTree.from_leaves(self.leaves.values(), self.depth).root

    def snapshot(self) -> "SparseMerkleTree":
        """Return an independent copy, safe to read while this tree keeps growing."""
        copy: SparseMerkleTree = SparseMerkleTree(self.depth)
        copy.nodes = dict(self.nodes)
        copy.leaves = dict(self.leaves)
        return copy

    def __len__(self) -> int:
        return len(self.leaves)
