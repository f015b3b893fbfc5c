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

"""Text armor for message files exchanged on the command line.

The armored form only mirrors the binary encoding: it is decoded back to the
exact same bytes before anything is hashed or verified.
"""

import binascii
import textwrap

from src.wire.exceptions import DecodeException

ARMOR_BEGIN: str = "-----BEGIN ATLANTIS {label}-----"
ARMOR_END: str = "-----END ATLANTIS {label}-----"
LINE_WIDTH: int = 64


def armor(data: bytes, label: str = "MESSAGE") -> str:
    """Wrap binary data in a PEM-like text block with a hex body."""
    body: str = "\n".join(textwrap.wrap(data.hex(), LINE_WIDTH))
    return "\n".join(
        [ARMOR_BEGIN.format(label=label), body, ARMOR_END.format(label=label), ""]
    )


def is_armored(data: bytes) -> bool:
    return data.lstrip().startswith(b"-----BEGIN ATLANTIS ")


def dearmor(text: str) -> bytes:
    """Recover the binary data of an armored block.

    Raises:
        DecodeException: on missing delimiters or a non-hex body
    """
    lines: list[str] = [line.strip() for line in text.strip().splitlines()]
    if (
        len(lines) < 2
        or not lines[0].startswith("-----BEGIN ATLANTIS ")
        or not lines[-1].startswith("-----END ATLANTIS ")
    ):
        raise DecodeException(0, "missing armor delimiters")

    label: str = lines[0][len("-----BEGIN ATLANTIS ") : -len("-----")]
    if lines[-1] != ARMOR_END.format(label=label):
        raise DecodeException(0, "mismatched armor label")

    try:
        return bytes.fromhex("".join(lines[1:-1]))
    except (ValueError, binascii.Error) as e:
        raise DecodeException(0, f"armor body is not hex: {e}") from e


def read_message(data: bytes) -> bytes:
    """Return the binary message, de-armoring text files when needed."""
    if is_armored(data):
        try:
            return dearmor(data.decode("ascii"))
        except UnicodeDecodeError as e:
            raise DecodeException(e.start, "armored file is not ascii") from e
    return data
