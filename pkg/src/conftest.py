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


import random
import typing as t

import pytest

from src.crypto.commitment import AmountVector, AssetRegistry
from src.ledger.ledger import Ledger
from src.ledger.payloads import TransferPayload
from src.proofs.backend import SUITE_SIMULATION
from src.types import AccountId, Timestamp
from src.wallet.coin import CoinRecord
from src.wallet.messages import NonceAnnouncement, TransferResponse
from src.wallet.session import (
    announce_nonce,
    finalize_transfer,
    initiate_multi_transfer,
    respond_transfer,
)
from src.wallet.wallet import Wallet

ASSET_A: bytes = b"A"
ASSET_B: bytes = b"B"

# Small enough for fast sigma proofs, large enough for every test amount
TEST_BIT_WIDTH: int = 16


def amounts(**kwargs: int) -> AmountVector:
    """amounts(A=10, B=5) -> AmountVector({b"A": 10, b"B": 5})"""
    return AmountVector({k.encode("utf-8"): v for k, v in kwargs.items()})


class ShadowLedger:
    """Drives a ledger and keeps an independent count of every minted unit.

    Conservation holds when public balances plus the amounts of every live
    coin (in the tree, nullifier not recorded) equal what was minted.
    """

    def __init__(self, ledger: Ledger, rng: random.Random) -> None:
        self.ledger: Ledger = ledger
        self.rng: random.Random = rng
        self.wallets: list[Wallet] = list()
        self.minted: AmountVector = AmountVector()

    def wallet(self) -> Wallet:
        wallet: Wallet = Wallet(random.Random(self.rng.random()))
        self.wallets.append(wallet)
        return wallet

    def fund(self, account: AccountId, vector: AmountVector) -> None:
        self.ledger.fund(account, vector)
        self.minted = self.minted + vector

    def deposit(
        self,
        wallet: Wallet,
        account: AccountId,
        vector: AmountVector,
        timelock: Timestamp | None = None,
    ) -> CoinRecord:
        coin, public_key = wallet.prepare_deposit(
            vector, self.ledger.state.registry, timelock, self.ledger.state.tree.depth
        )
        self.ledger.deposit(account, vector, public_key, timelock)
        wallet.sync(self.ledger.view())
        return coin

    def transfer(
        self,
        sender: Wallet,
        recipients: t.Sequence[t.Tuple[Wallet, AmountVector]],
        coins: t.Sequence[CoinRecord] | None = None,
    ) -> TransferPayload:
        """Run the whole interactive protocol and return the payload, unsubmitted."""
        view = self.ledger.view()
        announcements: list[NonceAnnouncement] | None = None
        if len(recipients) > 1:
            announcements = [announce_nonce(w) for w, _ in recipients]

        per_recipient: list[AmountVector] = [v for _, v in recipients]
        if coins is None:
            coins = sender.select_coins(AmountVector.sum(per_recipient), view.clock)
        session, m1s = initiate_multi_transfer(
            sender, coins, per_recipient, view, announcements
        )
        responses: list[TransferResponse] = [
            respond_transfer(w, m1, view) for (w, _), m1 in zip(recipients, m1s)
        ]
        return finalize_transfer(sender, session, responses, view).payload

    def sync(self) -> None:
        view = self.ledger.view()
        for wallet in self.wallets:
            wallet.sync(view)

    def live_amounts(self) -> AmountVector:
        state = self.ledger.state
        return AmountVector.sum(
            coin.amounts
            for wallet in self.wallets
            for coin in wallet.coins
            if state.tree.contains(coin.commitment)
            and coin.nullifier not in state.nullifiers
        )

    def public_amounts(self) -> AmountVector:
        return AmountVector.sum(
            AmountVector({asset_id: amount})
            for (_, asset_id), amount in self.ledger.state.balances.items()
        )

    def check_conservation(self) -> None:
        assert self.public_amounts() + self.live_amounts() == self.minted


@pytest.fixture
def rng() -> random.Random:
    return random.Random(1337)


@pytest.fixture
def registry() -> AssetRegistry:
    registry: AssetRegistry = AssetRegistry()
    registry.register(ASSET_A)
    registry.register(ASSET_B)
    return registry


@pytest.fixture
def ledger() -> Ledger:
    ledger: Ledger = Ledger.create(SUITE_SIMULATION, TEST_BIT_WIDTH)
    ledger.register_asset(ASSET_A)
    ledger.register_asset(ASSET_B)
    return ledger


@pytest.fixture
def shadow(ledger: Ledger, rng: random.Random) -> ShadowLedger:
    return ShadowLedger(ledger, rng)
