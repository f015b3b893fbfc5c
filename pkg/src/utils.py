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
import typing as t
import warnings
from datetime import datetime

from dateparser import parse

from src.const import TIMESTAMP_LIMIT, TIMEZONE
from src.crypto.commitment import AmountVector
from src.crypto.exceptions import InvalidParameterException
from src.types import AssetId, Timestamp


def _arg_or_default(args: argparse.Namespace, field: str, default: t.Any) -> t.Any:
    if not hasattr(args, field) or getattr(args, field) is None:
        return default

    return getattr(args, field)


def parse_asset_amount(value: str) -> t.Tuple[AssetId, int]:
    """Parse an `<asset>=<amount>` command line value.

    Raises:
        argparse.ArgumentTypeError: on a malformed value
    """
    asset, sep, amount = value.partition("=")
    if not sep or not asset or not amount.strip().isdigit():
        raise argparse.ArgumentTypeError(f"expected <asset>=<amount>, got {value!r}")
    return asset.strip().encode("utf-8"), int(amount)


def parse_amounts(values: t.Iterable[str]) -> AmountVector:
    """Parse comma-separated or repeated `<asset>=<amount>` values into a vector.

    Repeated assets are summed.

    Raises:
        argparse.ArgumentTypeError: on a malformed value
    """
    total: dict[AssetId, int] = dict()
    for value in values:
        for part in value.split(","):
            asset_id, amount = parse_asset_amount(part)
            total[asset_id] = total.get(asset_id, 0) + amount
    try:
        return AmountVector(total)
    except InvalidParameterException as e:
        raise argparse.ArgumentTypeError(str(e)) from e


def parse_timestamp(value: str) -> Timestamp:
    """Parse seconds since the epoch, or any 'dateparser'-friendly date.

    Raises:
        argparse.ArgumentTypeError: if the value is not understood or not in [0, 2^64)
    """
    if value.strip().isdigit():
        seconds: int = int(value)
        if seconds >= TIMESTAMP_LIMIT:
            raise argparse.ArgumentTypeError(f"timestamp {value} does not fit in 64 bits")
        return seconds

    with warnings.catch_warnings():
        warnings.simplefilter("ignore")
        date: datetime | None = parse(
            value, settings={"TIMEZONE": "UTC", "RETURN_AS_TIMEZONE_AWARE": True}
        )
    if date is None:
        raise argparse.ArgumentTypeError(f"invalid timestamp {value!r}")
    if date.timestamp() < 0:
        raise argparse.ArgumentTypeError(f"timestamp {value!r} is before the epoch")
    return int(date.timestamp())


def format_timestamp(value: Timestamp) -> str:
    try:
        date: datetime = datetime.fromtimestamp(value, tz=TIMEZONE)
    except (OverflowError, OSError, ValueError):
        # Past year 9999
        return f"{value}"
    return f"{value} ({date.isoformat()})"


def format_asset(asset_id: AssetId) -> str:
    return asset_id.decode("utf-8", errors="replace")
