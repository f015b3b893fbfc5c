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


"""Drive a whole session through the command line, from init to withdrawal.

Every random choice is seeded, so two runs with the same --seed print the same
commitments and roots. Handy to produce fixture files for other clients.

Usage:
  python scripts/run_cli_fixture.py --workdir /tmp/atlantis-fixture --seed 7
"""
import argparse
import contextlib
import io
import re
import sys
from pathlib import Path

# make repo importable
repo_root = Path(__file__).resolve().parents[1]
sys.path.insert(0, str(repo_root))

from main import run  # noqa: E402

COIN_LEAF = re.compile(r"Coin\[(?P<leaf>\d+)\] .*\(\w+, unspent\)")

parser = argparse.ArgumentParser()
parser.add_argument("--workdir", type=Path, required=True)
parser.add_argument("--seed", type=int, default=7)
parser.add_argument("--format", choices=("binary", "text"), default="text")
args = parser.parse_args()

args.workdir.mkdir(parents=True, exist_ok=True)
state: Path = args.workdir / "ledger.state"


def step(*argv: str, user: str = "operator") -> str:
    """Run one command as `user` and return what it printed."""
    full: list[str] = [
        "--state",
        str(state),
        "--wallet",
        str(args.workdir / f"{user}.json"),
        "--seed",
        str(args.seed),
        "--insecure",
        "--format",
        args.format,
        *argv,
    ]
    out = io.StringIO()
    with contextlib.redirect_stdout(out):
        code: int = run(full)
    print(f"$ [{user}] {' '.join(argv)}")
    print(out.getvalue(), end="")
    if code != 0:
        raise SystemExit(f"step failed with exit code {code}")
    return out.getvalue()


def unspent_leaves(user: str) -> list[int]:
    return [int(m["leaf"]) for m in COIN_LEAF.finditer(step("show", "coins", user=user))]


def path(name: str) -> str:
    return str(args.workdir / name)


step("init", "--force")
step("asset", "register", "A")
step("asset", "register", "B")
step("fund", "alice", "A", "100")
step("fund", "alice", "B", "10")

step("deposit", "alice", "--amount", "A=100,B=10", "--split", "2", user="alice")

# Single recipient
step("transfer", "init", "--amount", "A=30,B=2", "--out", path("m1"), user="alice")
step("transfer", "respond", path("m1"), "--out", path("m2"), user="bob")
step("transfer", "finalize", path("m2"), "--out", path("m3"), user="alice")
step("submit", path("m3"))

# Two recipients: each announces a nonce first
step("transfer", "announce", "--out", path("bob.ann"), user="bob")
step("transfer", "announce", "--out", path("carol.ann"), user="carol")
step(
    "transfer",
    "init",
    "--recipient",
    "A=5",
    "--recipient",
    "A=7,B=1",
    "--announcement",
    path("bob.ann"),
    "--announcement",
    path("carol.ann"),
    "--out",
    path("multi"),
    user="alice",
)
step("transfer", "respond", path("multi.0"), "--out", path("multi.bob"), user="bob")
step("transfer", "respond", path("multi.1"), "--out", path("multi.carol"), user="carol")
step(
    "transfer",
    "finalize",
    path("multi.bob"),
    path("multi.carol"),
    "--out",
    path("multi.m3"),
    user="alice",
)
step("submit", path("multi.m3"))

# Time-locked deposit, spendable once the clock passes it
step("fund", "dave", "A", "20")
step("deposit", "dave", "--amount", "A=20", "--timelock", "1000", user="dave")
step("clock", "set", "1000")

carol_coin: int = unspent_leaves("carol")[0]
step("withdraw", str(carol_coin), "--to", "carol-public", user="carol")

# Exclusion of one of bob's coins
bob_coin: str = next(
    line.split()[-1]
    for line in step("show", "coins", user="bob").splitlines()
    if "unspent" in line
)
step("exclude", bob_coin)

step("show", "state")
step("show", "balances")
