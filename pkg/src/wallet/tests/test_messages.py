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


import pytest

from src.conftest import amounts
from src.crypto.exceptions import InvalidParameterException
from src.crypto.group import GroupPoint
from src.ledger.ledger import LedgerView
from src.ledger.payloads import TransferPayload
from src.wallet.messages import (
    NonceAnnouncement,
    TransferFinal,
    TransferInit,
    TransferResponse,
)
from src.wallet.session import (
    announce_nonce,
    finalize_transfer,
    initiate_multi_transfer,
    respond_transfer,
)
from src.wire.codec import MessageTag
from src.wire.exceptions import DecodeException


@pytest.fixture
def transcript(shadow):
    """Every message of a two-recipient transfer."""
    alice, bob, carol = shadow.wallet(), shadow.wallet(), shadow.wallet()
    shadow.fund("alice", amounts(A=10))
    shadow.deposit(alice, "alice", amounts(A=10))
    view: LedgerView = shadow.ledger.view()

    announcements = [announce_nonce(bob), announce_nonce(carol)]
    session, m1s = initiate_multi_transfer(
        alice, alice.spendable(), [amounts(A=1), amounts(A=2)], view, announcements
    )
    m2s = [respond_transfer(bob, m1s[0], view), respond_transfer(carol, m1s[1], view)]
    m3 = finalize_transfer(alice, session, m2s, view)
    return announcements, m1s, m2s, m3


def test_message_tags(transcript):
    announcements, m1s, m2s, m3 = transcript
    assert announcements[0].to_bytes()[:2] == bytes([MessageTag.NONCE_ANNOUNCEMENT, 1])
    assert m1s[0].to_bytes()[:2] == bytes([MessageTag.TRANSFER_INIT, 1])
    assert m2s[0].to_bytes()[:2] == bytes([MessageTag.TRANSFER_RESPONSE, 1])
    assert m3.to_bytes()[:2] == bytes([MessageTag.TRANSFER_FINAL, 1])
    assert m3.to_bytes()[2:] == m3.payload.to_bytes()


def test_messages_decode(transcript):
    announcements, m1s, m2s, m3 = transcript
    assert NonceAnnouncement.from_bytes(announcements[1].to_bytes()) == announcements[1]
    for m1 in m1s:
        decoded: TransferInit = TransferInit.from_bytes(m1.to_bytes())
        assert decoded == m1
        assert decoded.is_multi
    assert TransferResponse.from_bytes(m2s[0].to_bytes()) == m2s[0]
    assert TransferFinal.from_bytes(m3.to_bytes()) == m3
    assert TransferPayload.from_bytes(m3.payload.to_bytes()) == m3.payload


def test_wrong_message_type(transcript):
    _, m1s, m2s, m3 = transcript
    with pytest.raises(DecodeException):
        TransferResponse.from_bytes(m1s[0].to_bytes())
    with pytest.raises(DecodeException):
        TransferFinal.from_bytes(m3.payload.to_bytes())
    with pytest.raises(DecodeException):
        TransferInit.from_bytes(m2s[0].to_bytes())


def test_single_recipient_flag(transcript):
    _, m1s, _, _ = transcript
    single: TransferInit = TransferInit(
        m1s[0].nullifiers, m1s[0].transfer_amounts, m1s[0].sender_nonce_sum
    )
    data: bytes = single.to_bytes()
    assert data[-1] == 0
    assert not TransferInit.from_bytes(data).is_multi

    with pytest.raises(DecodeException) as e:
        TransferInit.from_bytes(data[:-1] + b"\x02")
    assert e.value.offset == len(data) - 1


def test_bad_sign_byte(transcript):
    _, _, m2s, _ = transcript
    data: bytes = m2s[0].to_bytes()
    # header, commitment, nonce, then the partial's R and s
    at: int = 2 + 33 + 33 + 33 + 32
    assert data[at] == 0xFF
    with pytest.raises(DecodeException):
        TransferResponse.from_bytes(data[:at] + b"\x02" + data[at + 1 :])
    with pytest.raises(DecodeException):
        TransferResponse.from_bytes(data[:at] + b"\x00" + data[at + 1 :])


def test_message_invariants():
    with pytest.raises(InvalidParameterException):
        NonceAnnouncement(GroupPoint.identity())
    with pytest.raises(InvalidParameterException):
        TransferInit([], amounts(A=1), GroupPoint.generator(), GroupPoint.generator())
