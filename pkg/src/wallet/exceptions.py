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


class InsufficientFundsException(AtlantisException):
    """The selected coins do not cover the requested amounts."""

    reason = "insufficient funds"


class CoinSpentException(AtlantisException):
    reason = "coin already spent"

    def __init__(self, leaf_index: int, *args: object) -> None:
        self.leaf_index = leaf_index
        super().__init__(f"leaf {leaf_index}", *args)


class ProtocolException(AtlantisException):
    """A session message is malformed or does not fit the session."""

    reason = "protocol error"


class ChallengeMismatchException(AtlantisException):
    """A recipient's partial signature does not answer the session's challenge."""

    reason = "challenge mismatch"

    def __init__(self, recipient: int, *args: object) -> None:
        """Creates a ChallengeMismatchException.

        Args:
            recipient (int): position of the offending response
        """
        self.recipient = recipient
        super().__init__(f"recipient {recipient}", *args)


class SessionConsumedException(AtlantisException):
    reason = "session already finalized"
