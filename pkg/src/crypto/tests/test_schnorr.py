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


import random

import pytest

from src.crypto.exceptions import InvalidKeyException, InvalidParameterException
from src.crypto.group import GroupPoint, Scalar, point_sum
from src.crypto.schnorr import (
    SIGNATURE_BYTES,
    Nonce,
    PartialSignature,
    Signature,
    aggregate,
    compute_agg_challenge,
    partial_sign,
    sig_gen,
    sig_ver,
    verify_aggregate,
    verify_partial,
)

G: GroupPoint = GroupPoint.generator()


def test_sign_verify(rng):
    sk: Scalar = Scalar.random(rng)
    sig: Signature = sig_gen(sk, b"hello", rng)
    assert sig_ver(sig, G * sk, b"hello")
    assert not sig_ver(sig, G * sk, b"hellO")
    assert not sig_ver(sig, G * (sk + 1), b"hello")
    assert not sig_ver(sig, GroupPoint.identity(), b"hello")
    assert not sig_ver(Signature(sig.R, sig.s + 1), G * sk, b"hello")


def test_signature_encoding(rng):
    sig: Signature = sig_gen(Scalar.random(rng), b"m", rng)
    data: bytes = sig.to_bytes()
    assert len(data) == SIGNATURE_BYTES
    assert Signature.from_bytes(data) == sig
    with pytest.raises(ValueError):
        Signature.from_bytes(data[:-1])


def test_sign_rejects_zero_key():
    with pytest.raises(InvalidKeyException):
        sig_gen(Scalar(0), b"m")


def test_identity_nonce_rejected():
    with pytest.raises(InvalidParameterException):
        Signature(GroupPoint.identity(), Scalar(1))
    with pytest.raises(InvalidParameterException):
        compute_agg_challenge(GroupPoint.identity(), b"m")


def test_nonce_single_use(rng):
    nonce: Nonce = Nonce.generate(rng)
    assert not nonce.used
    k: Scalar = nonce.consume()
    assert nonce.commitment.R == G * k
    assert nonce.used
    with pytest.raises(InvalidParameterException):
        nonce.consume()
    with pytest.raises(InvalidParameterException):
        nonce.peek()


def test_partial_sign_rejects_bad_sign(rng):
    with pytest.raises(InvalidParameterException):
        PartialSignature(G, Scalar(1), 0)
    with pytest.raises(InvalidParameterException):
        partial_sign(Scalar(0), Scalar(1), Scalar(1), 1)


def _sign_round(
    keys: list[Scalar], signs: list[int], message: bytes, rng: random.Random
) -> tuple[Signature, Scalar, list[PartialSignature]]:
    nonces: list[Nonce] = [Nonce.generate(rng) for _ in keys]
    R_agg: GroupPoint = point_sum(
        n.commitment.R if s > 0 else -n.commitment.R for n, s in zip(nonces, signs)
    )
    e: Scalar = compute_agg_challenge(R_agg, message)
    partials: list[PartialSignature] = [
        partial_sign(k, n.consume(), e, s) for k, n, s in zip(keys, nonces, signs)
    ]
    return aggregate(partials), e, partials


@pytest.mark.parametrize("seed", range(100))
def test_aggregate_algebra(seed):
    rng: random.Random = random.Random(seed)
    size: int = rng.randint(1, 8)
    keys: list[Scalar] = [Scalar.random(rng) for _ in range(size)]
    signs: list[int] = [rng.choice((1, -1)) for _ in range(size)]
    message: bytes = rng.randbytes(40)

    sig, e, partials = _sign_round(keys, signs, message, rng)
    X: GroupPoint = point_sum(G * k if s > 0 else -(G * k) for k, s in zip(keys, signs))
    assert verify_aggregate(sig, X, message)
    assert not verify_aggregate(sig, X + G, message)
    assert not verify_aggregate(sig, X, message + b"\x00")
    for partial, key in zip(partials, keys):
        assert verify_partial(partial, G * key, e)


def test_partial_under_wrong_challenge_is_detected(rng):
    keys: list[Scalar] = [Scalar.random(rng) for _ in range(3)]
    sig, e, partials = _sign_round(keys, [1, -1, -1], b"m", rng)
    assert not verify_partial(partials[2], G * keys[2], e + 1)
    assert not verify_aggregate(
        aggregate(partials[:2] + [PartialSignature(partials[2].R, partials[2].s + 1, -1)]),
        G * keys[0] - G * keys[1] - G * keys[2],
        b"m",
    )


def test_aggregate_rejects_empty():
    with pytest.raises(InvalidParameterException):
        aggregate([])


@pytest.mark.parametrize("seed", range(20))
def test_aggregate_ignores_partial_order(seed):
    rng: random.Random = random.Random(seed)
    size: int = rng.randint(2, 6)
    keys: list[Scalar] = [Scalar.random(rng) for _ in range(size)]
    signs: list[int] = [rng.choice((1, -1)) for _ in range(size)]
    sig, _, partials = _sign_round(keys, signs, b"order", rng)

    shuffled: list[PartialSignature] = list(partials)
    rng.shuffle(shuffled)
    assert aggregate(shuffled) == sig
    assert aggregate(list(reversed(partials))).to_bytes() == sig.to_bytes()
