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

"""The interactive transfer, one file per message.

    sender:    transfer init --amount A=10 --out m1
    recipient: transfer respond m1 --out m2
    sender:    transfer finalize m2 --out m3
    anyone:    submit m3

With several recipients, each of them runs `transfer announce` first and the
sender passes every announcement file to `transfer init`.
"""

import argparse
import logging
from pathlib import Path

from src.cli.config import (
    CliConfig,
    open_ledger,
    open_wallet,
    read_message_file,
    write_message_file,
)
from src.crypto.commitment import AmountVector
from src.crypto.exceptions import InvalidParameterException
from src.ledger.ledger import LedgerView
from src.utils import parse_amounts
from src.wallet.coin import CoinRecord
from src.wallet.messages import (
    NonceAnnouncement,
    TransferFinal,
    TransferInit,
    TransferResponse,
)
from src.wallet.session import (
    SenderSession,
    announce_nonce,
    finalize_transfer,
    initiate_multi_transfer,
    respond_transfer,
)
from src.wallet.wallet import Wallet


def register_args(parser: argparse.ArgumentParser):
    subparsers = parser.add_subparsers(dest="action", required=True)

    announce_p = subparsers.add_parser(
        "announce", help="publish a nonce for a multi-recipient transfer (recipient)"
    )
    announce_p.add_argument("--out", help="announcement file", type=Path, required=True)

    init_p = subparsers.add_parser("init", help="start a transfer and write M1 (sender)")
    amounts_g = init_p.add_mutually_exclusive_group(required=True)
    amounts_g.add_argument(
        "--amount",
        help="<asset>=<n> for a single recipient, comma separated or repeated",
        action="append",
    )
    amounts_g.add_argument(
        "--recipient",
        help="comma separated <asset>=<n> of one recipient, repeated per recipient",
        action="append",
    )
    init_p.add_argument(
        "--announcement",
        help="announcement file of each recipient, in --recipient order",
        action="append",
        type=Path,
        default=None,
    )
    init_p.add_argument(
        "--coin",
        help="leaf index of an input coin, repeatable. Defaults to automatic selection",
        action="append",
        type=int,
        default=None,
    )
    init_p.add_argument(
        "--out",
        help="M1 file; with several recipients, <out>.<i> for the i-th",
        type=Path,
        required=True,
    )

    respond_p = subparsers.add_parser("respond", help="answer an M1 and write M2 (recipient)")
    respond_p.add_argument("m1", help="the M1 file", type=Path)
    respond_p.add_argument("--out", help="M2 file", type=Path, required=True)

    finalize_p = subparsers.add_parser(
        "finalize", help="aggregate the responses and write M3 (sender)"
    )
    finalize_p.add_argument(
        "m2", help="the M2 files, in recipient order", type=Path, nargs="+"
    )
    finalize_p.add_argument(
        "--session",
        help="session id. Optional when the wallet has a single open session",
        default=None,
    )
    finalize_p.add_argument("--out", help="M3 file", type=Path, required=True)

    abort_p = subparsers.add_parser("abort", help="abandon an open session (sender)")
    abort_p.add_argument("--session", help="session id", required=True)


def _pick_session(wallet: Wallet, session_id: str | None) -> SenderSession:
    if session_id is not None:
        if session_id not in wallet.sessions:
            raise InvalidParameterException(f"no open session {session_id}")
        return wallet.sessions[session_id]

    if len(wallet.sessions) != 1:
        raise InvalidParameterException(
            f"{len(wallet.sessions)} open sessions, choose one with --session"
        )
    return next(iter(wallet.sessions.values()))


def _m1_paths(out: Path, count: int) -> list[Path]:
    if count == 1:
        return [out]
    return [out.with_name(f"{out.name}.{i}") for i in range(count)]


def init(
    config: CliConfig,
    per_recipient: list[AmountVector],
    announcement_files: list[Path] | None,
    coin_indices: list[int] | None,
    out: Path,
) -> SenderSession:
    announcements: list[NonceAnnouncement] | None = None
    if announcement_files is not None:
        announcements = [
            NonceAnnouncement.from_bytes(read_message_file(p)) for p in announcement_files
        ]

    with open_ledger(config, write=False) as ledger:
        with open_wallet(config, ledger) as wallet:
            view: LedgerView = ledger.view()
            coins: list[CoinRecord]
            if coin_indices is None:
                coins = wallet.select_coins(AmountVector.sum(per_recipient), view.clock)
            else:
                coins = [wallet.coin(i) for i in coin_indices]

            session, m1s = initiate_multi_transfer(
                wallet, coins, per_recipient, view, announcements
            )

    for m1, path in zip(m1s, _m1_paths(out, len(m1s))):
        write_message_file(config, path, m1.to_bytes(), "TRANSFER_INIT")
    return session


def respond(config: CliConfig, m1_file: Path, out: Path) -> TransferResponse:
    m1: TransferInit = TransferInit.from_bytes(read_message_file(m1_file))
    with open_ledger(config, write=False) as ledger:
        with open_wallet(config, ledger, save_on_error=True) as wallet:
            response: TransferResponse = respond_transfer(wallet, m1, ledger.view())

    write_message_file(config, out, response.to_bytes(), "TRANSFER_RESPONSE")
    return response


def finalize(
    config: CliConfig, m2_files: list[Path], session_id: str | None, out: Path
) -> TransferFinal:
    responses: list[TransferResponse] = [
        TransferResponse.from_bytes(read_message_file(p)) for p in m2_files
    ]
    with open_ledger(config, write=False) as ledger:
        with open_wallet(config, ledger, save_on_error=True) as wallet:
            session: SenderSession = _pick_session(wallet, session_id)
            final: TransferFinal = finalize_transfer(
                wallet, session, responses, ledger.view()
            )

    write_message_file(config, out, final.to_bytes(), "TRANSFER_FINAL")
    return final


def main(args: argparse.Namespace):
    config: CliConfig = CliConfig.from_args(args)

    if args.action == "announce":
        with open_wallet(config) as wallet:
            announcement: NonceAnnouncement = announce_nonce(wallet)
        write_message_file(config, args.out, announcement.to_bytes(), "NONCE_ANNOUNCEMENT")
        print(f"Announced nonce in {args.out}")

    if args.action == "init":
        per_recipient: list[AmountVector] = (
            [parse_amounts(args.amount)]
            if args.amount is not None
            else [parse_amounts([r]) for r in args.recipient]
        )
        session: SenderSession = init(
            config, per_recipient, args.announcement, args.coin, args.out
        )
        print(f"Session {session.session_id}: change {session.change_amounts}")

    if args.action == "respond":
        response: TransferResponse = respond(config, args.m1, args.out)
        print(f"Answered {args.m1} with {response.output_commitment.hex()}")

    if args.action == "finalize":
        final: TransferFinal = finalize(config, args.m2, args.session, args.out)
        logging.debug(f"M3 carries {len(final.payload.outputs)} outputs")
        print(f"Transfer ready in {args.out}, submit it with 'submit {args.out}'")

    if args.action == "abort":
        with open_wallet(config) as wallet:
            wallet.abort_session(args.session)
        print(f"Aborted session {args.session}")
