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


import json
import logging
import random
import typing as t
from pathlib import Path

from src import types
from src.crypto.commitment import AmountVector, AssetRegistry
from src.crypto.exceptions import InvalidParameterException, ScalarDecodingException
from src.crypto.group import GroupPoint, Scalar
from src.ledger.ledger import LedgerView
from src.types import Timestamp
from src.wallet.coin import CoinOrigin, CoinRecord
from src.wallet.exceptions import InsufficientFundsException
from src.wallet.session import SenderSession


class Wallet:
    """Keys, coins and open transfer sessions of one user.

    Attributes:
        coins (list[CoinRecord]): every coin ever received, spent ones included
        sessions (dict[str, SenderSession]): open sender sessions by id
        announced (dict[str, Scalar]): announced nonce secrets by R (hex)
        rng (random.Random | None): randomness for keys and nonces; None means
            the operating system CSPRNG
    """

    def __init__(self, rng: random.Random | None = None) -> None:
        self.coins: list[CoinRecord] = list()
        self.sessions: dict[str, SenderSession] = dict()
        self.announced: dict[str, Scalar] = dict()
        self.rng: random.Random | None = rng

    @classmethod
    def load(cls, file_path: Path, rng: random.Random | None = None) -> "Wallet":
        """Load a wallet file, or return an empty wallet if it does not exist.

        Raises:
            InvalidParameterException: if the file is malformed
        """
        wallet: Wallet = cls(rng)
        try:
            with open(file_path, "r") as f:
                data: types.JSONType = json.load(f)
        except FileNotFoundError:
            logging.debug(f"No wallet at {file_path}, starting empty")
            return wallet
        except json.JSONDecodeError as e:
            raise InvalidParameterException(f"malformed wallet file: {e}") from e

        wallet.coins = [CoinRecord._from_json(c) for c in data.get("coins", [])]
        try:
            wallet.announced = {
                R: Scalar.from_bytes(bytes.fromhex(k))
                for R, k in data.get("announced", {}).items()
            }
        except (ValueError, ScalarDecodingException) as e:
            raise InvalidParameterException(f"malformed announced nonce: {e}") from e
        for session_id, raw in data.get("sessions", {}).items():
            wallet.sessions[session_id] = SenderSession._from_json(raw, wallet)
        return wallet

    def save(self, file_path: Path) -> None:
        data: types.JSONType = {
            "coins": [c._to_json() for c in self.coins],
            "announced": {R: k.to_bytes().hex() for R, k in self.announced.items()},
            "sessions": {i: s._to_json() for i, s in self.sessions.items()},
        }
        with open(file_path, "w+") as f:
            json.dump(data, f, indent=2)
        logging.warning(f"Wallet {file_path} stores secret keys unencrypted")

    def new_key(self) -> Scalar:
        return Scalar.random(self.rng)

    def add_coin(self, coin: CoinRecord) -> None:
        if any(c.commitment == coin.commitment for c in self.coins):
            raise InvalidParameterException(f"coin {coin.leaf_index} already in wallet")
        self.coins.append(coin)

    def coin(self, leaf_index: int) -> CoinRecord:
        """Return the coin stored at a tree slot.

        Raises:
            InvalidParameterException: if the wallet has no such coin
        """
        for coin in self.coins:
            if coin.leaf_index == leaf_index:
                return coin
        raise InvalidParameterException(f"no coin at leaf {leaf_index}")

    def spendable(self, clock: Timestamp | None = None) -> list[CoinRecord]:
        return [c for c in self.coins if c.is_spendable(clock)]

    def balance(self, clock: Timestamp | None = None) -> AmountVector:
        return AmountVector.sum(c.amounts for c in self.spendable(clock))

    def prepare_deposit(
        self,
        amounts: AmountVector,
        registry: AssetRegistry,
        timelock: Timestamp | None = None,
        depth: int | None = None,
    ) -> t.Tuple[CoinRecord, GroupPoint]:
        """Create the pending coin of a deposit and the key the ledger needs.

        Returns:
            (CoinRecord, GroupPoint): the pending coin and its public key P = sk * G
        """
        sk: Scalar = self.new_key()
        kwargs: dict[str, int] = dict() if depth is None else {"depth": depth}
        coin: CoinRecord = CoinRecord.create(
            sk, amounts, registry, CoinOrigin.DEPOSIT, timelock, **kwargs
        )
        self.add_coin(coin)
        return coin, GroupPoint.generator() * sk

    def select_coins(
        self, amounts: AmountVector, clock: Timestamp | None = None
    ) -> list[CoinRecord]:
        """Pick coins covering the amounts, smallest first for each asset.

        Raises:
            InsufficientFundsException: if the spendable coins do not cover the amounts
        """
        selected: list[CoinRecord] = list()
        covered: AmountVector = AmountVector()
        reserved: set[int] = self.reserved_leaves()
        candidates: list[CoinRecord] = [
            c for c in self.spendable(clock) if c.leaf_index not in reserved
        ]
        for asset_id, needed in amounts.items():
            for coin in sorted(
                (c for c in candidates if c.amounts.get(asset_id) > 0),
                key=lambda c: c.amounts.get(asset_id),
            ):
                if covered.get(asset_id) >= needed:
                    break
                if coin not in selected:
                    selected.append(coin)
                    covered = covered + coin.amounts

        if len(selected) == 0 or not covered.covers(amounts):
            raise InsufficientFundsException(f"cannot cover {amounts}")
        return selected

    def sync(self, view: LedgerView) -> None:
        """Confirm coins that reached the tree and mark coins whose nullifier is recorded."""
        confirmed: int = 0
        spent: int = 0
        for coin in self.coins:
            if coin.pending and view.tree.contains(coin.commitment):
                coin.pending = False
                confirmed += 1
            if not coin.spent and coin.nullifier in view.nullifiers:
                coin.spent = True
                spent += 1
        logging.info(f"Wallet sync: {confirmed} coins confirmed, {spent} marked spent")

    def reserved_leaves(self) -> set[int]:
        """Leaf indices of the coins spent by open sessions."""
        return {c.leaf_index for s in self.sessions.values() for c in s.inputs}

    def forget_pending(self, coin: CoinRecord) -> None:
        """Drop a pending coin whose operation was rejected."""
        if coin.pending:
            self.coins.remove(coin)

    def forget(self, leaf_index: int) -> CoinRecord:
        """Drop a received coin that never reached the tree.

        A recipient's coin stays pending until the sender submits the transfer;
        if that never happens the coin can be dropped. Sync first, so that a
        coin which did reach the tree is confirmed and kept.

        Raises:
            InvalidParameterException: if there is no such coin or it is confirmed
        """
        coin: CoinRecord = self.coin(leaf_index)
        if not coin.pending:
            raise InvalidParameterException(f"coin {leaf_index} is confirmed")
        self.coins.remove(coin)
        logging.info(f"Forgot pending coin {leaf_index}")
        return coin

    def abort_session(self, session_id: str) -> None:
        """Abandon an open session. Nothing was submitted, so the ledger is unaffected."""
        if self.sessions.pop(session_id, None) is None:
            raise InvalidParameterException(f"no open session {session_id}")
        logging.info(f"Aborted session {session_id}")
