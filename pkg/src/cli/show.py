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


import argparse

from src.cli.config import CliConfig, open_ledger, open_wallet
from src.ledger.ledger import Ledger
from src.ledger.state import LedgerState
from src.utils import format_asset, format_timestamp

WHAT: tuple[str, ...] = ("tree", "nullifiers", "balances", "coins", "state")


def register_args(parser: argparse.ArgumentParser):
    parser.add_argument("what", help="what to show", choices=WHAT)


def tree_lines(state: LedgerState) -> list[str]:
    lines: list[str] = [
        f"root {state.tree.root.to_bytes().hex()}",
        f"{len(state.tree)} commitments (depth {state.tree.depth})",
    ]
    for index in sorted(state.tree.leaves):
        commitment = state.tree.leaves[index]
        flags: list[str] = list()
        if commitment in state.exclusions:
            flags.append("excluded")
        if index in state.timelocks:
            flags.append(f"locked until {format_timestamp(state.timelocks[index])}")
        suffix: str = f" [{', '.join(flags)}]" if flags else ""
        lines.append(f"{index:>10} {commitment.hex()}{suffix}")
    return lines


def nullifier_lines(state: LedgerState) -> list[str]:
    return [n.to_bytes().hex() for n in sorted(state.nullifiers)]


def balance_lines(state: LedgerState) -> list[str]:
    return [
        f"{account} {format_asset(asset_id)} {amount}"
        for (account, asset_id), amount in sorted(state.balances.items())
        if amount != 0
    ]


def state_lines(ledger: Ledger) -> list[str]:
    state: LedgerState = ledger.state
    assets: str = ", ".join(format_asset(a) for a, _ in state.registry.items())
    return [
        f"suite      {state.suite_name}",
        f"range bits {state.bit_width}",
        f"clock      {format_timestamp(state.clock)}",
        f"root       {ledger.root.to_bytes().hex()}",
        f"assets     {assets or '-'}",
        f"leaves     {len(state.tree)}",
        f"nullifiers {len(state.nullifiers)}",
        f"excluded   {len(state.exclusions)}",
        f"admin      {'none' if state.admin_key.is_identity() else state.admin_key.hex()}",
    ]


def main(args: argparse.Namespace):
    config: CliConfig = CliConfig.from_args(args)

    with open_ledger(config, write=False) as ledger:
        lines: list[str]
        if args.what == "coins":
            with open_wallet(config, ledger) as wallet:
                clock: int = ledger.state.clock
                lines = [
                    f"{coin} {coin.commitment.hex()}"
                    + (" (locked)" if coin.timelock is not None and coin.timelock > clock else "")
                    for coin in wallet.coins
                ]
                lines.append(f"spendable: {wallet.balance(clock)}")
                lines.extend(f"open session {i}" for i in wallet.sessions)
        elif args.what == "tree":
            lines = tree_lines(ledger.state)
        elif args.what == "nullifiers":
            lines = nullifier_lines(ledger.state)
        elif args.what == "balances":
            lines = balance_lines(ledger.state)
        else:
            lines = state_lines(ledger)

    for line in lines:
        print(line)
