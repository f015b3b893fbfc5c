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
import pathlib
import random

import pytest

from src.conftest import amounts
from src.crypto.exceptions import InvalidParameterException
from src.crypto.group import GroupPoint
from src.ledger.ledger import LedgerView
from src.wallet.coin import CoinOrigin, CoinRecord
from src.wallet.exceptions import InsufficientFundsException
from src.wallet.session import (
    announce_nonce,
    finalize_transfer,
    initiate_transfer,
    respond_transfer,
)
from src.wallet.wallet import Wallet


def test_prepare_deposit_is_pending_until_synced(ledger, registry):
    wallet: Wallet = Wallet(random.Random(1))
    ledger.fund("alice", amounts(A=5))
    coin, public_key = wallet.prepare_deposit(amounts(A=5), registry, 20)

    assert coin.pending
    assert coin.origin == CoinOrigin.DEPOSIT
    assert coin.commitment.point == registry.generator(b"A") * 5 + public_key
    assert wallet.balance().is_zero()

    ledger.deposit("alice", amounts(A=5), public_key, 20)
    wallet.sync(ledger.view())
    assert not coin.pending
    assert wallet.balance(clock=19).is_zero()
    assert wallet.balance(clock=20) == amounts(A=5)


def test_select_coins(shadow):
    wallet: Wallet = shadow.wallet()
    shadow.fund("alice", amounts(A=100, B=5))
    small = shadow.deposit(wallet, "alice", amounts(A=10))
    medium = shadow.deposit(wallet, "alice", amounts(A=30, B=5))
    large = shadow.deposit(wallet, "alice", amounts(A=60))

    assert wallet.select_coins(amounts(A=5)) == [small]
    assert wallet.select_coins(amounts(A=35)) == [small, medium]
    assert wallet.select_coins(amounts(B=1)) == [medium]
    assert set(c.leaf_index for c in wallet.select_coins(amounts(A=100))) == {
        small.leaf_index,
        medium.leaf_index,
        large.leaf_index,
    }
    with pytest.raises(InsufficientFundsException):
        wallet.select_coins(amounts(A=101))
    with pytest.raises(InsufficientFundsException):
        wallet.select_coins(amounts(B=6))


def test_select_coins_skips_locked(shadow):
    wallet: Wallet = shadow.wallet()
    shadow.fund("alice", amounts(A=20))
    shadow.deposit(wallet, "alice", amounts(A=10), timelock=50)
    free = shadow.deposit(wallet, "alice", amounts(A=10))

    assert wallet.select_coins(amounts(A=5), clock=0) == [free]
    with pytest.raises(InsufficientFundsException):
        wallet.select_coins(amounts(A=15), clock=49)
    assert len(wallet.select_coins(amounts(A=15), clock=50)) == 2


def test_coin_lookup(shadow):
    wallet: Wallet = shadow.wallet()
    shadow.fund("alice", amounts(A=1))
    coin = shadow.deposit(wallet, "alice", amounts(A=1))
    assert wallet.coin(coin.leaf_index) is coin
    with pytest.raises(InvalidParameterException):
        wallet.coin(coin.leaf_index ^ 1)
    with pytest.raises(InvalidParameterException):
        wallet.add_coin(coin)


def test_forget_pending(registry):
    wallet: Wallet = Wallet(random.Random(2))
    coin, _ = wallet.prepare_deposit(amounts(A=1), registry)
    wallet.forget_pending(coin)
    assert wallet.coins == []


def test_forget_unsubmitted_transfer(shadow):
    alice, bob = shadow.wallet(), shadow.wallet()
    shadow.fund("alice", amounts(A=10))
    deposited = shadow.deposit(alice, "alice", amounts(A=10))
    abandoned = shadow.transfer(alice, [(bob, amounts(A=3))])
    (received,) = bob.coins
    assert received.pending

    # forgetting is final: a later submission is not picked up again
    assert bob.forget(received.leaf_index) is received
    assert bob.coins == []
    with pytest.raises(InvalidParameterException):
        bob.forget(received.leaf_index)
    with pytest.raises(InvalidParameterException):
        alice.forget(deposited.leaf_index)

    shadow.ledger.apply_transfer(abandoned)
    shadow.sync()
    assert bob.balance().is_zero()
    assert alice.balance() == amounts(A=7)


def test_save_and_load(tmp_path: pathlib.Path, shadow, caplog):
    path: pathlib.Path = tmp_path / "wallet.json"
    alice, bob = shadow.wallet(), shadow.wallet()
    shadow.fund("alice", amounts(A=10, B=2))
    shadow.deposit(alice, "alice", amounts(A=10, B=2), timelock=0)
    view: LedgerView = shadow.ledger.view()

    session, m1 = initiate_transfer(alice, alice.spendable(), amounts(A=4), view)
    announce_nonce(alice)
    with caplog.at_level(logging.WARNING):
        alice.save(path)
    assert "unencrypted" in caplog.text

    restored: Wallet = Wallet.load(path, random.Random(3))
    assert [c._to_json() for c in restored.coins] == [c._to_json() for c in alice.coins]
    assert restored.announced == alice.announced
    assert list(restored.sessions) == [session.session_id]
    assert restored.sessions[session.session_id]._to_json() == session._to_json()

    # The restored session finishes the transfer
    m2 = respond_transfer(bob, m1, view)
    final = finalize_transfer(restored, restored.sessions[session.session_id], [m2], view)
    shadow.ledger.apply_transfer(final.payload)
    shadow.wallets[0] = restored
    shadow.sync()
    shadow.check_conservation()
    assert restored.balance() == amounts(A=6, B=2)


def test_load_missing_and_malformed(tmp_path: pathlib.Path):
    assert Wallet.load(tmp_path / "none.json").coins == []

    path: pathlib.Path = tmp_path / "wallet.json"
    path.write_text("{not json")
    with pytest.raises(InvalidParameterException):
        Wallet.load(path)

    path.write_text(json.dumps({"coins": [{"sk": "00"}]}))
    with pytest.raises(InvalidParameterException):
        Wallet.load(path)

    # 32 bytes, but not a reduced scalar
    path.write_text(json.dumps({"announced": {"02" + "ab" * 32: "ff" * 32}}))
    with pytest.raises(InvalidParameterException):
        Wallet.load(path)


def test_coin_record_json(registry):
    coin: CoinRecord = CoinRecord.create(
        Wallet(random.Random(4)).new_key(), amounts(A=3, B=4), registry, CoinOrigin.CHANGE, 7
    )
    raw = coin._to_json()
    assert CoinRecord._from_json(raw)._to_json() == raw
    assert raw["timelock"] == 7

    with pytest.raises(InvalidParameterException):
        CoinRecord._from_json({**raw, "origin": "gift"})
    with pytest.raises(InvalidParameterException):
        CoinRecord._from_json({**raw, "commitment": "zz"})


def test_seeded_wallets_are_reproducible(registry):
    first, _ = Wallet(random.Random(5)).prepare_deposit(amounts(A=1), registry)
    second, _ = Wallet(random.Random(5)).prepare_deposit(amounts(A=1), registry)
    assert first.commitment == second.commitment
    assert GroupPoint.generator() * first.sk == GroupPoint.generator() * second.sk
