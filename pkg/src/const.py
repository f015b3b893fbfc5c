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


from dateutil import tz

# Timezone used when rendering logical clock values.
TIMEZONE = tz.gettz("UTC")

# Domain separation tags. Every hash in the protocol is prefixed by one of these.
TAG_H2S: bytes = b"atlantis/h2s"
TAG_NUMS: bytes = b"atlantis/nums"
TAG_SIG: bytes = b"atlantis/sig"
TAG_AGG: bytes = b"atlantis/agg"
TAG_LEAF: bytes = b"atlantis/leaf"
TAG_LEAFVAL: bytes = b"atlantis/leafval"
TAG_NODE: bytes = b"atlantis/node"
TAG_EMPTY: bytes = b"atlantis/empty"
TAG_NULL: bytes = b"atlantis/null"
TAG_OR: bytes = b"atlantis/or"
TAG_EXCLUDE: bytes = b"atlantis/exclude"

# Prefix of the NUMS label of an asset generator
ASSET_LABEL_PREFIX: bytes = b"asset:"

# Try-and-increment gives up after this many counter values
NUMS_MAX_ATTEMPTS: int = 256

# Amounts are 128-bit unsigned integers
AMOUNT_BITS: int = 128
AMOUNT_BYTES: int = 16

# Fixed widths of the canonical encodings
SCALAR_BYTES: int = 32
POINT_BYTES: int = 33

# Sparse Merkle tree depth
TREE_DEPTH: int = 32

# Number of historical roots a proof may target
ROOT_WINDOW: int = 64

# Outputs per transaction
MAX_OUTPUTS: int = 2**16

# Default range proof bit width
RANGE_BITS: int = 128

# Clock values and timelocks are stored as u64
TIMESTAMP_LIMIT: int = 2**64

# Wire format
WIRE_VERSION: int = 1
PROOF_FORMAT_VERSION: int = 1
STATE_MAGIC: bytes = b"ATLS"
STATE_VERSION: int = 1

# CLI exit codes
EXIT_OK: int = 0
EXIT_REJECTED: int = 1
EXIT_USAGE: int = 2

# Default CLI paths
DEFAULT_STATE_PATH: str = "atlantis.state"
DEFAULT_WALLET_PATH: str = "wallet.json"
STATE_ENV_VAR: str = "ATLANTIS_STATE"
