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

"""Operator commands: init, asset, fund, submit, exclude and clock."""

import argparse
import logging
from pathlib import Path

from src.cli.config import CliConfig, open_ledger, read_message_file
from src.crypto.commitment import AmountVector, Commitment
from src.crypto.exceptions import InvalidParameterException, ScalarDecodingException
from src.crypto.group import Scalar
from src.ledger.exceptions import UnauthorizedException
from src.ledger.ledger import Ledger, new_admin_key, sign_exclusion
from src.ledger.payloads import TransferPayload, WithdrawPayload
from src.ledger.storage import locked_state, save_state
from src.utils import format_timestamp, parse_timestamp
from src.wallet.messages import TransferFinal
from src.wire.codec import MessageTag
from src.wire.exceptions import DecodeException

COMMANDS: tuple[str, ...] = ("init", "asset", "fund", "submit", "exclude", "clock")


def register_args(subparsers: argparse._SubParsersAction):
    init_p = subparsers.add_parser("init", help="create a new ledger state file")
    init_p.add_argument(
        "--force", help="overwrite an existing state file", action="store_true"
    )

    asset_p = subparsers.add_parser("asset", help="manage the asset registry")
    asset_sp = asset_p.add_subparsers(dest="action", required=True)
    register_p = asset_sp.add_parser("register", help="register a new asset")
    register_p.add_argument("asset_id", help="asset identifier, e.g. EUR")

    fund_p = subparsers.add_parser("fund", help="credit a public balance (test faucet)")
    fund_p.add_argument("account", help="the credited account")
    fund_p.add_argument("asset_id", help="a registered asset")
    fund_p.add_argument("amount", help="the credited amount", type=int)

    submit_p = subparsers.add_parser(
        "submit", help="submit a transfer (M3) or withdrawal payload to the ledger"
    )
    submit_p.add_argument("payload", help="payload file, binary or text", type=Path)

    exclude_p = subparsers.add_parser(
        "exclude", help="bar a commitment from being spent (administrator)"
    )
    exclude_p.add_argument("commitment", help="the commitment, hex encoded")
    exclude_p.add_argument(
        "--admin-key",
        help="administrator key file. Defaults to <state>.admin",
        type=Path,
        default=None,
    )

    clock_p = subparsers.add_parser("clock", help="manage the logical clock")
    clock_sp = clock_p.add_subparsers(dest="action", required=True)
    set_p = clock_sp.add_parser("set", help="advance the clock")
    set_p.add_argument(
        "timestamp",
        help="seconds since the epoch or a date, e.g. '2026-01-01 12:00'",
        type=parse_timestamp,
    )


def init(config: CliConfig, force: bool) -> None:
    with locked_state(config.state_path):
        if config.state_path.exists() and not force:
            raise InvalidParameterException(
                f"{config.state_path} already exists, use --force to overwrite it"
            )

        admin_sk, admin_pk = new_admin_key(config.rng("admin"))
        ledger: Ledger = Ledger.create(config.backend, config.range_bits, admin_pk)
        save_state(config.state_path, ledger.state)

    with open(config.admin_key_path, "w+") as f:
        f.write(admin_sk.to_bytes().hex() + "\n")
    config.admin_key_path.chmod(0o600)

    logging.info(f"Administrator key written to {config.admin_key_path}")
    print(
        f"Created ledger {config.state_path} "
        f"(suite {config.backend}, {config.range_bits}-bit range proofs)"
    )


def _load_admin_key(file_path: Path) -> Scalar:
    try:
        with open(file_path, "r") as f:
            return Scalar.from_bytes(bytes.fromhex(f.read().strip()))
    except FileNotFoundError as e:
        raise UnauthorizedException(f"no administrator key at {file_path}") from e
    except (ValueError, ScalarDecodingException) as e:
        raise UnauthorizedException(f"malformed administrator key {file_path}") from e


def submit(ledger: Ledger, data: bytes) -> None:
    """Decode a payload by its type tag and apply it."""
    if len(data) == 0:
        raise DecodeException(0, "empty payload")

    tag: int = data[0]
    if tag == MessageTag.TRANSFER_FINAL:
        ledger.apply_transfer(TransferFinal.from_bytes(data).payload)
    elif tag == MessageTag.TRANSFER_PAYLOAD:
        ledger.apply_transfer(TransferPayload.from_bytes(data))
    elif tag == MessageTag.WITHDRAW_PAYLOAD:
        payload: WithdrawPayload = WithdrawPayload.from_bytes(data)
        ledger.apply_withdraw(payload)
    else:
        raise DecodeException(0, f"not a ledger payload (tag 0x{tag:02x})")


def main(args: argparse.Namespace):
    config: CliConfig = CliConfig.from_args(args)

    if args.subcommand == "init":
        init(config, args.force)
        return

    with open_ledger(config) as ledger:
        if args.subcommand == "asset":
            ledger.register_asset(args.asset_id.encode("utf-8"))
            print(f"Registered asset {args.asset_id}")

        if args.subcommand == "fund":
            asset_id: bytes = args.asset_id.encode("utf-8")
            ledger.fund(args.account, AmountVector({asset_id: args.amount}))
            print(f"{args.account}: {args.asset_id} {ledger.balance(args.account, asset_id)}")

        if args.subcommand == "submit":
            submit(ledger, read_message_file(args.payload))
            print(f"Accepted {args.payload}, root {ledger.root.to_bytes().hex()}")

        if args.subcommand == "exclude":
            admin_sk: Scalar = _load_admin_key(args.admin_key or config.admin_key_path)
            commitment: Commitment = Commitment.from_hex(args.commitment)
            ledger.exclude_commitment(
                commitment,
                sign_exclusion(
                    admin_sk, commitment, config.rng(f"exclude:{commitment.hex()}")
                ),
            )
            print(f"Excluded {commitment.hex()}")

        if args.subcommand == "clock":
            ledger.advance_clock(args.timestamp)
            print(f"Clock: {format_timestamp(ledger.state.clock)}")
