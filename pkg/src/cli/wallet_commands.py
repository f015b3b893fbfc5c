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

"""Wallet commands: deposit, withdraw and forget."""

import argparse
from pathlib import Path

from src.cli.config import CliConfig, open_ledger, open_wallet, write_message_file
from src.crypto.commitment import AmountVector
from src.ledger.ledger import DepositEntry, LedgerView
from src.ledger.payloads import WithdrawPayload
from src.utils import parse_amounts, parse_timestamp
from src.wallet.coin import CoinRecord
from src.wallet.session import build_withdrawal

COMMANDS: tuple[str, ...] = ("deposit", "withdraw", "forget")


def register_args(subparsers: argparse._SubParsersAction):
    deposit_p = subparsers.add_parser(
        "deposit", help="move public funds into new coins of the wallet"
    )
    deposit_p.add_argument("account", help="the debited public account")
    deposit_p.add_argument(
        "--amount",
        help="<asset>=<n>, comma separated or repeated",
        action="append",
        required=True,
    )
    deposit_p.add_argument(
        "--split", help="spread the amounts over k coins", type=int, default=1
    )
    deposit_p.add_argument(
        "--timelock",
        help="the coins cannot be spent before this time",
        type=parse_timestamp,
        default=None,
    )

    withdraw_p = subparsers.add_parser(
        "withdraw", help="pay a coin out to a public account"
    )
    withdraw_p.add_argument("coin", help="leaf index of the coin", type=int)
    withdraw_p.add_argument("--to", help="the credited account", required=True)
    withdraw_p.add_argument(
        "--out",
        help="write the payload to this file instead of submitting it",
        type=Path,
        default=None,
    )

    forget_p = subparsers.add_parser(
        "forget", help="drop a received coin whose transfer was never submitted"
    )
    forget_p.add_argument("coin", help="leaf index of the pending coin", type=int)


def deposit(
    config: CliConfig,
    account: str,
    amounts: AmountVector,
    split: int,
    timelock: int | None,
) -> list[CoinRecord]:
    with open_ledger(config) as ledger:
        with open_wallet(config, ledger) as wallet:
            view: LedgerView = ledger.view()
            coins: list[CoinRecord] = list()
            entries: list[DepositEntry] = list()
            for part in amounts.split(split):
                coin, public_key = wallet.prepare_deposit(
                    part, view.registry, timelock, view.tree.depth
                )
                coins.append(coin)
                entries.append((part, public_key, timelock))

            ledger.deposit_many(account, entries)
            wallet.sync(ledger.view())
    return coins


def withdraw(
    config: CliConfig, leaf_index: int, destination: str, out: Path | None
) -> WithdrawPayload:
    with open_ledger(config, write=out is None) as ledger:
        with open_wallet(config, ledger) as wallet:
            coin: CoinRecord = wallet.coin(leaf_index)
            payload: WithdrawPayload = build_withdrawal(
                wallet, coin, destination, ledger.view()
            )
            if out is None:
                ledger.apply_withdraw(payload)
                wallet.sync(ledger.view())

    if out is not None:
        write_message_file(config, out, payload.to_bytes(), "WITHDRAW_PAYLOAD")
    return payload


def main(args: argparse.Namespace):
    config: CliConfig = CliConfig.from_args(args)

    if args.subcommand == "deposit":
        coins: list[CoinRecord] = deposit(
            config, args.account, parse_amounts(args.amount), args.split, args.timelock
        )
        for coin in coins:
            print(f"Deposited {coin}")

    if args.subcommand == "withdraw":
        payload: WithdrawPayload = withdraw(config, args.coin, args.to, args.out)
        if args.out is None:
            print(f"Withdrew coin {args.coin}: {payload.statement.amounts} to {args.to}")
        else:
            print(f"Withdrawal of coin {args.coin} written to {args.out}")

    if args.subcommand == "forget":
        with open_ledger(config, write=False) as ledger:
            with open_wallet(config, ledger) as wallet:
                forgotten: CoinRecord = wallet.forget(args.coin)
        print(f"Forgot {forgotten}")
