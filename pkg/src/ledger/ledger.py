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

"""The ledger: a serial state machine for deposits, transfers and withdrawals.

Every mutating operation validates first and mutates last, so a rejected
operation leaves the state untouched.
"""

import logging
import random
import typing as t
from dataclasses import dataclass

from src.const import MAX_OUTPUTS, RANGE_BITS, TAG_EXCLUDE, TIMESTAMP_LIMIT, TREE_DEPTH
from src.crypto.commitment import (
    AMOUNT_LIMIT,
    AmountVector,
    AssetRegistry,
    Commitment,
    commit_with_point,
)
from src.crypto.exceptions import IndexCollisionException, InvalidParameterException
from src.crypto.group import GroupPoint, Scalar
from src.crypto.schnorr import Signature, sig_gen, sig_ver
from src.crypto.smt import Digest, SparseMerkleTree, leaf_index
from src.ledger.exceptions import (
    DoubleSpendException,
    ExcludedCommitmentException,
    InsufficientBalanceException,
    InvalidPayloadException,
    InvalidProofException,
    StaleRootException,
    TimelockedException,
    UnauthorizedException,
)
from src.ledger.payloads import TransferPayload, WithdrawPayload
from src.ledger.state import LedgerState
from src.proofs.backend import SUITE_SIMULATION, Proof, ProofSuite
from src.proofs.relations import PublicParameters, RangeStatement, Relation
from src.types import AccountId, AssetId, Timestamp

# One deposit entry: amounts, owner public key, optional timelock
DepositEntry = t.Tuple[AmountVector, GroupPoint, Timestamp | None]


def check_timestamp(value: Timestamp, what: str = "timestamp") -> None:
    """Refuse clock values the state file cannot hold.

    Raises:
        InvalidParameterException: unless 0 <= value < 2^64
    """
    if not 0 <= value < TIMESTAMP_LIMIT:
        raise InvalidParameterException(f"{what} {value} out of range [0, 2^64)")


def exclusion_message(commitment: Commitment) -> bytes:
    return TAG_EXCLUDE + commitment.to_bytes()


def sign_exclusion(
    admin_sk: Scalar, commitment: Commitment, rng: random.Random | None = None
) -> Signature:
    """Authorize the exclusion of a commitment with the administrator key."""
    return sig_gen(admin_sk, exclusion_message(commitment), rng)


def new_admin_key(rng: random.Random | None = None) -> t.Tuple[Scalar, GroupPoint]:
    """Generate an administrator key pair (sk, sk * G)."""
    sk: Scalar = Scalar.random(rng)
    return sk, GroupPoint.generator() * sk


@dataclass(frozen=True)
class LedgerView:
    """A read-only snapshot handed to wallets.

    Attributes:
        registry (AssetRegistry): copy of the asset generators
        tree (SparseMerkleTree): snapshot of the commitment tree
        nullifiers (frozenset[Scalar]): the recorded nullifiers
        suite_name (str): the configured proof suite
        bit_width (int): the range proven for outputs
        clock (Timestamp): the logical clock
    """

    registry: AssetRegistry
    tree: SparseMerkleTree
    nullifiers: frozenset[Scalar]
    suite_name: str
    bit_width: int
    clock: Timestamp

    @property
    def root(self) -> Digest:
        return self.tree.root

    @property
    def params(self) -> PublicParameters:
        return PublicParameters(self.registry, self.tree.depth, self.bit_width)


class Ledger:
    """The contract, holding a LedgerState and its proof suite.

    Attributes:
        state (LedgerState): the authoritative state
        suite (ProofSuite): the verifier configured by the state's suite name
    """

    def __init__(self, state: LedgerState, progress: bool = False) -> None:
        """Wrap an existing state.

        Raises:
            UnsupportedBackendException: if the state names an unknown suite
        """
        self.state: LedgerState = state
        self.suite: ProofSuite = ProofSuite.from_name(state.suite_name, progress)

    @classmethod
    def create(
        cls,
        suite_name: str = SUITE_SIMULATION,
        bit_width: int = RANGE_BITS,
        admin_key: GroupPoint | None = None,
        depth: int = TREE_DEPTH,
    ) -> "Ledger":
        if bit_width < 1 or bit_width > RANGE_BITS:
            raise InvalidParameterException(f"bit width {bit_width} not in [1, {RANGE_BITS}]")
        ProofSuite.from_name(suite_name)
        return cls(LedgerState(suite_name, bit_width, admin_key, depth))

    @property
    def params(self) -> PublicParameters:
        return PublicParameters(
            self.state.registry, self.state.tree.depth, self.state.bit_width
        )

    @property
    def root(self) -> Digest:
        return self.state.tree.root

    def balance(self, account: AccountId, asset_id: AssetId) -> int:
        return self.state.balance(account, asset_id)

    def is_spent(self, nullifier: Scalar) -> bool:
        return nullifier in self.state.nullifiers

    def view(self) -> LedgerView:
        return LedgerView(
            registry=self.state.registry.copy(),
            tree=self.state.tree.snapshot(),
            nullifiers=frozenset(self.state.nullifiers),
            suite_name=self.state.suite_name,
            bit_width=self.state.bit_width,
            clock=self.state.clock,
        )

    def register_asset(self, asset_id: AssetId) -> GroupPoint:
        """Add an asset to the registry.

        Raises:
            AssetAlreadyRegisteredException: if it is already present
        """
        generator: GroupPoint = self.state.registry.register(asset_id)
        logging.info(f"Registered asset {asset_id.decode('utf-8', errors='replace')}")
        return generator

    def fund(self, account: AccountId, amounts: AmountVector) -> None:
        """Credit public balances out of thin air, for tests and demos.

        Raises:
            UnsupportedAssetException: on an unregistered asset
            InvalidParameterException: if a balance would reach 2^128
        """
        self.state.registry.check_supported(amounts)
        credited: dict[AssetId, int] = {
            a: self.balance(account, a) + n for a, n in amounts.items()
        }
        if any(n >= AMOUNT_LIMIT for n in credited.values()):
            raise InvalidParameterException("public balance overflow")
        for asset_id, amount in credited.items():
            self.state.set_balance(account, asset_id, amount)
        logging.info(f"Funded {account} with {amounts}")

    def deposit(
        self,
        account: AccountId,
        amounts: AmountVector,
        public_key: GroupPoint,
        timelock: Timestamp | None = None,
    ) -> int:
        """Move public funds into a new commitment C = sum(a_i * H_i) + P.

        Args:
            account (AccountId): the debited account
            amounts (AmountVector): the deposited amounts
            public_key (GroupPoint): the owner's P = sk * G
            timelock (Timestamp | None, optional): first clock value the coin can be spent at

        Raises:
            UnsupportedAssetException: on an unregistered asset
            InsufficientBalanceException: if the public balance does not cover the amounts
            IndexCollisionException: if the commitment's slot is occupied
            InvalidKeyException: if P is the identity

        Returns:
            int: the leaf index of the commitment
        """
        return self.deposit_many(account, [(amounts, public_key, timelock)])[0]

    def deposit_many(
        self, account: AccountId, entries: t.Sequence[DepositEntry]
    ) -> list[int]:
        """Deposit several independent commitments, all or nothing.

        Raises:
            InvalidParameterException: with no entries or a timelock out of range
            (plus every error of `deposit`)

        Returns:
            list[int]: the leaf index of each commitment, in entry order
        """
        if len(entries) == 0:
            raise InvalidParameterException("nothing to deposit")

        total: AmountVector = AmountVector.sum(amounts for amounts, _, _ in entries)
        self.state.registry.check_supported(total)
        for asset_id, amount in total.items():
            if self.balance(account, asset_id) < amount:
                raise InsufficientBalanceException(account)

        commitments: list[Commitment] = list()
        indices: list[int] = list()
        for amounts, public_key, timelock in entries:
            if timelock is not None:
                check_timestamp(timelock, "timelock")
            commitment: Commitment = commit_with_point(
                amounts, public_key, self.state.registry
            )
            index: int = leaf_index(commitment, self.state.tree.depth)
            if not self.state.tree.is_free(index) or index in indices:
                raise IndexCollisionException(index)
            commitments.append(commitment)
            indices.append(index)

        # Validated: mutate
        for asset_id, amount in total.items():
            self.state.set_balance(account, asset_id, self.balance(account, asset_id) - amount)
        self._insert(commitments)
        for (_, _, timelock), index in zip(entries, indices):
            if timelock is not None:
                self.state.timelocks[index] = timelock

        logging.info(f"Deposited {len(commitments)} commitments from {account}")
        return indices

    def _insert(self, commitments: t.Sequence[Commitment]) -> Digest:
        self.state.remember_root(self.root)
        for commitment in commitments:
            self.state.tree.insert(commitment)
        return self.root

    def _check_nullifiers(self, nullifiers: t.Iterable[Scalar]) -> None:
        for nullifier in nullifiers:
            if nullifier in self.state.nullifiers:
                raise DoubleSpendException(nullifier.to_bytes().hex())

    def _check_root(self, root: Digest) -> None:
        if not self.state.is_recent_root(root):
            raise StaleRootException()

    def _check_inputs(self, relation: Relation, proof: Proof) -> None:
        """Enforce the exclusion list and timelocks on the inputs a proof reveals.

        Only witness-revealing backends expose inputs; with a hiding backend
        these checks cannot run here.
        """
        inputs: list[Commitment] | None = self.suite.revealed_inputs(relation, proof)
        if inputs is None:
            logging.debug("Proof hides its inputs, exclusion and timelock checks skipped")
            return

        for commitment in inputs:
            if commitment in self.state.exclusions:
                raise ExcludedCommitmentException(commitment.hex())
            index: int = leaf_index(commitment, self.state.tree.depth)
            unlock_at: Timestamp | None = self.state.timelocks.get(index)
            if unlock_at is not None and unlock_at > self.state.clock:
                raise TimelockedException(index, unlock_at)

    def apply_transfer(self, payload: TransferPayload) -> Digest:
        """Validate and apply a transfer.

        Raises:
            DoubleSpendException: if a nullifier is already recorded
            StaleRootException: if the statement's root is outside the recent window
            InvalidProofException: if the spend proof or a range proof fails
            ExcludedCommitmentException: if an input is on the exclusion list
            TimelockedException: if an input is still locked
            IndexCollisionException: if an output slot is occupied

        Returns:
            Digest: the new root
        """
        statement = payload.spend_statement
        self._check_nullifiers(statement.nullifiers)
        self._check_root(statement.root)
        if len(statement.outputs) > MAX_OUTPUTS:
            raise InvalidPayloadException(f"more than {MAX_OUTPUTS} outputs")

        params: PublicParameters = self.params
        if not self.suite.verify(Relation.SPEND, statement, payload.spend_proof, params):
            raise InvalidProofException("spend")
        for i, (commitment, range_proof) in enumerate(payload.outputs):
            try:
                range_statement = RangeStatement.for_commitment(commitment, params)
            except InvalidParameterException as e:
                raise InvalidProofException(f"range of output {i}") from e
            if not self.suite.verify(Relation.RANGE, range_statement, range_proof, params):
                raise InvalidProofException(f"range of output {i}")

        self._check_inputs(Relation.SPEND, payload.spend_proof)

        indices: set[int] = set()
        for commitment in statement.outputs:
            index: int = leaf_index(commitment, self.state.tree.depth)
            if not self.state.tree.is_free(index) or index in indices:
                raise IndexCollisionException(index)
            indices.add(index)

        # Validated: mutate
        self.state.nullifiers.update(statement.nullifiers)
        root: Digest = self._insert(statement.outputs)
        logging.info(
            f"Accepted transfer: {len(statement.nullifiers)} inputs, "
            f"{len(statement.outputs)} outputs"
        )
        return root

    def apply_withdraw(self, payload: WithdrawPayload) -> None:
        """Validate a withdrawal and credit the destination's public balance.

        Raises:
            DoubleSpendException, StaleRootException, InvalidProofException,
            ExcludedCommitmentException, TimelockedException: as apply_transfer
            InvalidParameterException: if a balance would reach 2^128
        """
        statement = payload.statement
        self._check_nullifiers([statement.nullifier])
        self._check_root(statement.root)
        if not self.suite.verify(Relation.WITHDRAW, statement, payload.proof, self.params):
            raise InvalidProofException("withdraw")
        self._check_inputs(Relation.WITHDRAW, payload.proof)

        credited: dict[AssetId, int] = {
            a: self.balance(payload.destination, a) + n
            for a, n in statement.amounts.items()
        }
        if any(n >= AMOUNT_LIMIT for n in credited.values()):
            raise InvalidParameterException("public balance overflow")

        # Validated: mutate
        self.state.nullifiers.add(statement.nullifier)
        for asset_id, amount in credited.items():
            self.state.set_balance(payload.destination, asset_id, amount)
        logging.info(f"Accepted withdrawal of {statement.amounts} to {payload.destination}")

    def exclude_commitment(self, commitment: Commitment, signature: Signature) -> None:
        """Bar a commitment from ever being spent. Idempotent.

        Raises:
            UnauthorizedException: without a valid administrator signature
        """
        if self.state.admin_key.is_identity():
            raise UnauthorizedException("ledger has no administrator")
        if not sig_ver(signature, self.state.admin_key, exclusion_message(commitment)):
            raise UnauthorizedException("bad administrator signature")

        if commitment in self.state.exclusions:
            logging.debug(f"Commitment {commitment.hex()[:18]} already excluded")
            return
        self.state.exclusions.add(commitment)
        logging.info(f"Excluded commitment {commitment.hex()}")

    def advance_clock(self, to: Timestamp) -> None:
        """Move the logical clock forward.

        Raises:
            InvalidParameterException: if `to` is before the current clock or
                out of range
        """
        check_timestamp(to, "clock")
        if to < self.state.clock:
            raise InvalidParameterException(
                f"clock cannot go backwards ({to} < {self.state.clock})"
            )
        self.state.clock = to
        logging.info(f"Clock advanced to {to}")
