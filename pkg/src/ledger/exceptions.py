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


from src.exceptions import AtlantisException


class DoubleSpendException(AtlantisException):
    """A nullifier of the payload is already recorded."""

    reason = "double spend"

    def __init__(self, nullifier_hex: str, *args: object) -> None:
        self.nullifier_hex = nullifier_hex
        super().__init__(nullifier_hex[:16], *args)


class InvalidProofException(AtlantisException):
    reason = "invalid proof"

    def __init__(self, what: str, *args: object) -> None:
        """Creates an InvalidProofException.

        Args:
            what (str): which proof failed (e.g. "spend", "range of output 1")
        """
        self.what = what
        super().__init__(what, *args)


class StaleRootException(AtlantisException):
    """The statement targets a root outside the recent-root window."""

    reason = "stale root"


class ExcludedCommitmentException(AtlantisException):
    reason = "excluded commitment"

    def __init__(self, commitment_hex: str, *args: object) -> None:
        self.commitment_hex = commitment_hex
        super().__init__(commitment_hex[:18], *args)


class TimelockedException(AtlantisException):
    reason = "timelocked"

    def __init__(self, leaf_index: int, unlock_at: int, *args: object) -> None:
        """Creates a TimelockedException.

        Args:
            leaf_index (int): the locked leaf
            unlock_at (int): the timestamp from which it can be spent
        """
        self.leaf_index = leaf_index
        self.unlock_at = unlock_at
        super().__init__(f"leaf {leaf_index} until {unlock_at}", *args)


class InsufficientBalanceException(AtlantisException):
    reason = "insufficient public balance"

    def __init__(self, account: str, *args: object) -> None:
        self.account = account
        super().__init__(account, *args)


class UnauthorizedException(AtlantisException):
    """The administrator signature is missing or invalid."""

    reason = "unauthorized"


class InvalidPayloadException(AtlantisException):
    """The payload is internally inconsistent."""

    reason = "invalid payload"


class StateFileException(AtlantisException):
    reason = "corrupt state file"

    def __init__(self, path: str, *args: object) -> None:
        self.path = path
        super().__init__(path, *args)
