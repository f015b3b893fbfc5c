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

"""Command line configuration and the plumbing every command shares."""

import argparse
import contextlib
import hashlib
import logging
import os
import random
import typing as t
from dataclasses import dataclass
from pathlib import Path

from src.const import (
    DEFAULT_STATE_PATH,
    DEFAULT_WALLET_PATH,
    RANGE_BITS,
    STATE_ENV_VAR,
)
from src.exceptions import AtlantisException
from src.ledger.exceptions import StateFileException
from src.ledger.ledger import Ledger
from src.ledger.storage import load_state, locked_state, save_state
from src.proofs.backend import SUITE_NAMES, SUITE_SIMULATION
from src.types import Timestamp
from src.utils import _arg_or_default, parse_timestamp
from src.wallet.wallet import Wallet
from src.wire.armor import armor, read_message


def register_args(parser: argparse.ArgumentParser):
    parser.add_argument(
        "--state",
        help=f"ledger state file. Defaults to ${STATE_ENV_VAR}, then {DEFAULT_STATE_PATH}",
        default=None,
    )
    parser.add_argument(
        "--wallet",
        help=f"wallet file. Defaults to {DEFAULT_WALLET_PATH}",
        default=DEFAULT_WALLET_PATH,
    )
    parser.add_argument(
        "--backend",
        help="proof suite, fixed when the ledger is created (only used by 'init')",
        choices=SUITE_NAMES,
        default=SUITE_SIMULATION,
    )
    parser.add_argument(
        "--range-bits",
        help=f"range proven for output amounts, fixed at 'init'. Defaults to {RANGE_BITS}",
        type=int,
        default=RANGE_BITS,
    )
    parser.add_argument(
        "--clock",
        help="advance the ledger clock to this time before running the command",
        type=parse_timestamp,
        default=None,
    )
    parser.add_argument(
        "--seed",
        help="seed every random choice, for reproducible fixtures (needs --insecure)",
        type=int,
        default=None,
    )
    parser.add_argument(
        "--insecure",
        help="allow --seed: keys and nonces become predictable",
        action="store_true",
    )
    parser.add_argument(
        "--format",
        help="encoding of written message files. Read files are auto-detected",
        choices=("binary", "text"),
        default="binary",
    )


@dataclass
class CliConfig:
    """Resolved command line configuration.

    Attributes:
        state_path (Path): the ledger state file
        wallet_path (Path): the wallet file
        backend (str): the proof suite name used by 'init'
        range_bits (int): the range bit width used by 'init'
        clock_override (Timestamp | None): clock value to advance to first
        seed (int | None): seed for every random choice
        format (str): "binary" or "text" for written message files
    """

    state_path: Path
    wallet_path: Path
    backend: str = SUITE_SIMULATION
    range_bits: int = RANGE_BITS
    clock_override: Timestamp | None = None
    seed: int | None = None
    format: str = "binary"

    @classmethod
    def from_args(cls, args: argparse.Namespace) -> "CliConfig":
        """Resolve the configuration.

        Raises:
            argparse.ArgumentTypeError: if --seed is given without --insecure
        """
        seed: int | None = _arg_or_default(args, "seed", None)
        if seed is not None and not _arg_or_default(args, "insecure", False):
            raise argparse.ArgumentTypeError("--seed requires --insecure")

        state: str = _arg_or_default(
            args, "state", os.getenv(STATE_ENV_VAR) or DEFAULT_STATE_PATH
        )
        return cls(
            state_path=Path(state),
            wallet_path=Path(_arg_or_default(args, "wallet", DEFAULT_WALLET_PATH)),
            backend=_arg_or_default(args, "backend", SUITE_SIMULATION),
            range_bits=_arg_or_default(args, "range_bits", RANGE_BITS),
            clock_override=_arg_or_default(args, "clock", None),
            seed=seed,
            format=_arg_or_default(args, "format", "binary"),
        )

    @property
    def admin_key_path(self) -> Path:
        return self.state_path.with_name(self.state_path.name + ".admin")

    def rng(self, purpose: str) -> random.Random | None:
        """A seeded generator per purpose, or None for the system CSPRNG."""
        if self.seed is None:
            return None
        return random.Random(f"{self.seed}/{purpose}")


@contextlib.contextmanager
def open_ledger(config: CliConfig, write: bool = True) -> t.Iterator[Ledger]:
    """Load the ledger under an exclusive lock, saving it back when `write` is set.

    Raises:
        StateFileException: if there is no state file or it does not verify
    """
    with locked_state(config.state_path):
        try:
            state = load_state(config.state_path)
        except FileNotFoundError as e:
            raise StateFileException(
                str(config.state_path), "no ledger state, run 'init' first"
            ) from e

        ledger: Ledger = Ledger(state, progress=logging.getLogger().isEnabledFor(logging.DEBUG))
        if config.clock_override is not None and config.clock_override != state.clock:
            ledger.advance_clock(config.clock_override)
            write = True

        yield ledger

        if write:
            save_state(config.state_path, ledger.state)


def _file_digest(file_path: Path) -> str:
    try:
        with open(file_path, "rb") as f:
            return hashlib.sha256(f.read()).hexdigest()
    except FileNotFoundError:
        return "new"


@contextlib.contextmanager
def open_wallet(
    config: CliConfig, ledger: Ledger | None = None, save_on_error: bool = False
) -> t.Iterator[Wallet]:
    """Load the wallet, synced with the ledger when one is given, and save it back.

    Args:
        config (CliConfig): the configuration
        ledger (Ledger | None, optional): the ledger to sync with
        save_on_error (bool, optional): also save when the command fails.
            Needed once a nonce was used, so that it is never used again.
    """
    # Seeded streams are keyed on the wallet name and contents
    purpose: str = f"wallet:{config.wallet_path.name}:{_file_digest(config.wallet_path)}"
    wallet: Wallet = Wallet.load(config.wallet_path, config.rng(purpose))
    if ledger is not None:
        wallet.sync(ledger.view())

    try:
        yield wallet
    except AtlantisException:
        if save_on_error:
            wallet.save(config.wallet_path)
        raise

    wallet.save(config.wallet_path)


def read_message_file(file_path: Path) -> bytes:
    with open(file_path, "rb") as f:
        return read_message(f.read())


def write_message_file(config: CliConfig, file_path: Path, data: bytes, label: str) -> None:
    if config.format == "text":
        with open(file_path, "w+") as f:
            f.write(armor(data, label))
    else:
        with open(file_path, "wb") as f:
            f.write(data)
    logging.info(f"Wrote {label.lower().replace('_', ' ')} to {file_path}")
