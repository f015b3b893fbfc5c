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


import contextlib
import fcntl
import logging
import os
import pathlib
import typing as t

from src.exceptions import AtlantisException
from src.ledger.exceptions import StateFileException
from src.ledger.state import LedgerState


def load_state(file_path: pathlib.Path) -> LedgerState:
    """Read and validate a ledger state file.

    Raises:
        FileNotFoundError: if the file does not exist
        StateFileException: if the file is malformed or its root does not verify
    """
    with open(file_path, "rb") as f:
        data: bytes = f.read()
    try:
        return LedgerState.from_bytes(data)
    except AtlantisException as e:
        raise StateFileException(str(file_path), str(e)) from e


def save_state(file_path: pathlib.Path, state: LedgerState) -> None:
    """Write the state atomically, through a temporary file in the same directory."""
    data: bytes = state.to_bytes()
    tmp_path: pathlib.Path = file_path.with_name(file_path.name + ".tmp")
    with open(tmp_path, "wb") as f:
        f.write(data)
        f.flush()
        os.fsync(f.fileno())
    os.replace(tmp_path, file_path)
    logging.debug(f"Saved ledger state to {file_path}")


@contextlib.contextmanager
def locked_state(file_path: pathlib.Path) -> t.Iterator[None]:
    """Hold an exclusive lock on a state file for the duration of a command.

    The lock lives on a sibling `.lock` file, so the state file itself can be
    replaced atomically while locked.
    """
    lock_path: pathlib.Path = file_path.with_name(file_path.name + ".lock")
    with open(lock_path, "a+") as lock:
        fcntl.flock(lock.fileno(), fcntl.LOCK_EX)
        try:
            yield
        finally:
            fcntl.flock(lock.fileno(), fcntl.LOCK_UN)
