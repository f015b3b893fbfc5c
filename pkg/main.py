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
import logging
import os
import sys
import typing as t

import sentry_sdk

import src.cli.ledger_commands as ledger_commands
import src.cli.show as show
import src.cli.transfer_commands as transfer_commands
import src.cli.wallet_commands as wallet_commands
from src import __version__
from src.cli import config
from src.const import EXIT_OK, EXIT_REJECTED, EXIT_USAGE
from src.exceptions import AtlantisException

parser = argparse.ArgumentParser(
    prog="atlantis",
    description="anonymous multi-asset payments on a local ledger",
)
parser.add_argument("-d", "--debug", action="store_true", help="activate debug logs")
config.register_args(parser)
subparsers = parser.add_subparsers(dest="subcommand", required=True)

ledger_commands.register_args(subparsers)
wallet_commands.register_args(subparsers)
transfer_commands.register_args(
    subparsers.add_parser(
        "transfer",
        help="interactive transfer, one message file per step",
    )
)
show.register_args(
    subparsers.add_parser(
        "show",
        help="inspect the ledger or the wallet",
    )
)

COMMANDS: dict[str, t.Callable[[argparse.Namespace], None]] = {
    **{c: ledger_commands.main for c in ledger_commands.COMMANDS},
    **{c: wallet_commands.main for c in wallet_commands.COMMANDS},
    "transfer": transfer_commands.main,
    "show": show.main,
}


def run(argv: t.Sequence[str] | None = None) -> int:
    """Run one command and return its exit code.

    Returns:
        int: 0 on success, 1 if the protocol rejected the command, 2 on usage errors
    """
    try:
        args: argparse.Namespace = parser.parse_args(argv)
    except SystemExit as e:
        return EXIT_OK if e.code in (0, None) else EXIT_USAGE

    logging.basicConfig(
        stream=sys.stderr,
        format="[%(asctime)s - %(levelname)s] %(message)s",
        level=logging.INFO if not args.debug else logging.DEBUG,
    )

    sentry_dsn: str | None = os.getenv("SENTRY_DSN")
    if sentry_dsn is not None:
        sentry_sdk.init(
            dsn=sentry_dsn,
            release=__version__,
            traces_sample_rate=1.0,
        )
        logging.info("Activated sentry error reporting")

    try:
        COMMANDS[args.subcommand](args)
    except AtlantisException as e:
        logging.debug(e, exc_info=True)
        print(f"error: {e}", file=sys.stderr)
        return EXIT_REJECTED
    except argparse.ArgumentTypeError as e:
        print(f"{parser.prog}: error: {e}", file=sys.stderr)
        return EXIT_USAGE
    except OSError as e:
        print(f"error: {e}", file=sys.stderr)
        return EXIT_REJECTED

    return EXIT_OK


def main():
    sys.exit(run())


if __name__ == "__main__":
    main()
