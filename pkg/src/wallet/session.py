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

"""The interactive transfer and the withdrawal builder.

Single recipient:

    sender                               recipient
    initiate_transfer  --- M1 --->
                       <--- M2 ---  respond_transfer
    finalize_transfer  --- M3 ---> ledger

Every party derives the same aggregate nonce and challenge:
R_agg = sum(input R) - change R - sum(recipient R). With several recipients,
each one first announces a nonce (announce_nonce), so that every M1 can carry
the same recipient nonce sum.
"""

import logging
import typing as t

from src import types
from src.const import MAX_OUTPUTS
from src.crypto.commitment import AmountVector, amounts_point
from src.crypto.exceptions import InvalidParameterException
from src.crypto.group import GroupPoint, Scalar, point_sum
from src.crypto.schnorr import (
    Nonce,
    PartialSignature,
    Signature,
    aggregate,
    compute_agg_challenge,
    partial_sign,
    verify_partial,
)
from src.crypto.smt import Digest, MerkleProof
from src.exceptions import AtlantisException
from src.ledger.payloads import TransferPayload, WithdrawPayload
from src.proofs.backend import Proof, ProofSuite
from src.proofs.exceptions import RelationUnsatisfiedException
from src.proofs.relations import (
    PublicParameters,
    RangeStatement,
    RangeWitness,
    Relation,
    SpendStatement,
    SpendWitness,
    WithdrawStatement,
    WithdrawWitness,
    nullifier_for,
)
from src.types import AccountId
from src.wallet.coin import CoinOrigin, CoinRecord
from src.wallet.exceptions import (
    ChallengeMismatchException,
    CoinSpentException,
    InsufficientFundsException,
    ProtocolException,
    SessionConsumedException,
)
from src.wallet.messages import (
    NonceAnnouncement,
    TransferFinal,
    TransferInit,
    TransferResponse,
)
from src.wire.codec import encode_nullifier_list

if t.TYPE_CHECKING:
    from src.ledger.ledger import LedgerView
    from src.wallet.wallet import Wallet


def _amounts_to_json(amounts: AmountVector) -> dict[str, int]:
    return {a.hex(): n for a, n in amounts.items()}


def _amounts_from_json(raw: dict[str, int]) -> AmountVector:
    return AmountVector({bytes.fromhex(a): int(n) for a, n in raw.items()})


class SenderSession:
    """The sender's side of one transfer. Single use.

    Attributes:
        inputs (list[CoinRecord]): spent coins, ordered by nullifier
        merkle_proofs (list[MerkleProof]): their membership proofs
        root (Digest): the root the proofs target
        recipient_amounts (list[AmountVector]): what each recipient receives
        change_amounts (AmountVector): what returns to the sender
        input_nonces (list[Nonce]): one nonce per input
        change_nonce (Nonce): the change output's nonce
        recipient_nonces (list[GroupPoint] | None): announced recipient nonces,
            multi-recipient sessions only
        consumed (bool): True once finalized
    """

    def __init__(
        self,
        inputs: t.Sequence[CoinRecord],
        merkle_proofs: t.Sequence[MerkleProof],
        root: Digest,
        recipient_amounts: t.Sequence[AmountVector],
        change_amounts: AmountVector,
        input_nonces: t.Sequence[Nonce],
        change_nonce: Nonce,
        recipient_nonces: t.Sequence[GroupPoint] | None = None,
        consumed: bool = False,
    ) -> None:
        self.inputs: list[CoinRecord] = list(inputs)
        self.merkle_proofs: list[MerkleProof] = list(merkle_proofs)
        self.root: Digest = root
        self.recipient_amounts: list[AmountVector] = list(recipient_amounts)
        self.change_amounts: AmountVector = change_amounts
        self.input_nonces: list[Nonce] = list(input_nonces)
        self.change_nonce: Nonce = change_nonce
        self.recipient_nonces: list[GroupPoint] | None = (
            None if recipient_nonces is None else list(recipient_nonces)
        )
        self.consumed: bool = consumed

    @property
    def nullifiers(self) -> list[Scalar]:
        return [c.nullifier for c in self.inputs]

    @property
    def session_id(self) -> str:
        return self.nullifiers[0].to_bytes().hex()[:16]

    @property
    def message(self) -> bytes:
        return encode_nullifier_list(self.nullifiers)

    @property
    def sender_nonce_sum(self) -> GroupPoint:
        return point_sum(n.commitment.R for n in self.input_nonces) - self.change_nonce.commitment.R

    @property
    def recipient_nonce_sum(self) -> GroupPoint | None:
        if self.recipient_nonces is None:
            return None
        return point_sum(self.recipient_nonces)

    def _to_json(self) -> types.JSONType:
        return {
            "inputs": [c.leaf_index for c in self.inputs],
            "merkle_proofs": [p.to_bytes().hex() for p in self.merkle_proofs],
            "root": self.root.to_bytes().hex(),
            "recipient_amounts": [_amounts_to_json(a) for a in self.recipient_amounts],
            "change_amounts": _amounts_to_json(self.change_amounts),
            "input_nonces": [n.peek().to_bytes().hex() for n in self.input_nonces],
            "change_nonce": self.change_nonce.peek().to_bytes().hex(),
            "recipient_nonces": (
                None
                if self.recipient_nonces is None
                else [R.hex() for R in self.recipient_nonces]
            ),
            "consumed": self.consumed,
        }

    @classmethod
    def _from_json(cls, raw_data: dict[str, t.Any], wallet: "Wallet") -> "SenderSession":
        """Restore an open session from the wallet file, resolving inputs by leaf index."""

        def scalar(h: str) -> Scalar:
            return Scalar.from_bytes(bytes.fromhex(h))

        try:
            return cls(
                inputs=[wallet.coin(i) for i in raw_data["inputs"]],
                merkle_proofs=[
                    MerkleProof.from_bytes(bytes.fromhex(p)) for p in raw_data["merkle_proofs"]
                ],
                root=scalar(raw_data["root"]),
                recipient_amounts=[_amounts_from_json(a) for a in raw_data["recipient_amounts"]],
                change_amounts=_amounts_from_json(raw_data["change_amounts"]),
                input_nonces=[Nonce(scalar(k)) for k in raw_data["input_nonces"]],
                change_nonce=Nonce(scalar(raw_data["change_nonce"])),
                recipient_nonces=(
                    None
                    if raw_data["recipient_nonces"] is None
                    else [
                        GroupPoint.from_bytes(bytes.fromhex(R))
                        for R in raw_data["recipient_nonces"]
                    ]
                ),
                consumed=bool(raw_data.get("consumed", False)),
            )
        except (KeyError, ValueError, TypeError, AtlantisException) as e:
            raise InvalidParameterException(f"malformed session: {e}") from e


def announce_nonce(wallet: "Wallet") -> NonceAnnouncement:
    """Publish a fresh nonce commitment for a multi-recipient session."""
    nonce: Nonce = Nonce.generate(wallet.rng)
    wallet.announced[nonce.commitment.R.hex()] = nonce.peek()
    return NonceAnnouncement(nonce.commitment.R)


def initiate_multi_transfer(
    wallet: "Wallet",
    coins: t.Sequence[CoinRecord],
    per_recipient: t.Sequence[AmountVector],
    view: "LedgerView",
    announcements: t.Sequence[NonceAnnouncement] | None = None,
) -> t.Tuple[SenderSession, list[TransferInit]]:
    """Start a transfer to one or more recipients.

    Args:
        wallet (Wallet): the sender's wallet, which keeps the session
        coins (Sequence[CoinRecord]): the inputs
        per_recipient (Sequence[AmountVector]): the amounts of each recipient
        view (LedgerView): the ledger snapshot the membership proofs target
        announcements (Sequence[NonceAnnouncement] | None, optional): one per
            recipient; required with more than one recipient

    Raises:
        CoinSpentException: if a selected coin is spent
        InsufficientFundsException: if the coins do not cover the recipients
        ProtocolException: on missing announcements, unconfirmed coins or coins
            already held by an open session

    Returns:
        (SenderSession, list[TransferInit]): the session and one M1 per recipient
    """
    if len(per_recipient) == 0 or len(per_recipient) >= MAX_OUTPUTS:
        raise InvalidParameterException(f"{len(per_recipient)} recipients")
    if len(coins) == 0:
        raise InsufficientFundsException("no coins selected")
    if len({c.leaf_index for c in coins}) != len(coins):
        raise InvalidParameterException("coin selected twice")

    for coin in coins:
        if coin.spent or coin.nullifier in view.nullifiers:
            raise CoinSpentException(coin.leaf_index)
        if coin.pending:
            raise ProtocolException(f"coin {coin.leaf_index} is not confirmed yet")
        for session_id, open_session in wallet.sessions.items():
            if any(c.leaf_index == coin.leaf_index for c in open_session.inputs):
                raise ProtocolException(
                    f"coin {coin.leaf_index} is held by open session {session_id}, abort it first"
                )
    for amounts in per_recipient:
        view.registry.check_supported(amounts)

    total: AmountVector = AmountVector.sum(c.amounts for c in coins)
    needed: AmountVector = AmountVector.sum(per_recipient)
    if not total.covers(needed):
        raise InsufficientFundsException(f"{total} does not cover {needed}")

    recipient_nonces: list[GroupPoint] | None = None
    if announcements is not None or len(per_recipient) > 1:
        if announcements is None or len(announcements) != len(per_recipient):
            raise ProtocolException("every recipient must announce a nonce first")
        recipient_nonces = [a.R for a in announcements]

    inputs: list[CoinRecord] = sorted(coins, key=lambda c: c.nullifier)
    session: SenderSession = SenderSession(
        inputs=inputs,
        merkle_proofs=[view.tree.prove_membership(c.commitment) for c in inputs],
        root=view.root,
        recipient_amounts=per_recipient,
        change_amounts=total - needed,
        input_nonces=[Nonce.generate(wallet.rng) for _ in inputs],
        change_nonce=Nonce.generate(wallet.rng),
        recipient_nonces=recipient_nonces,
    )

    m1s: list[TransferInit] = [
        TransferInit(
            session.nullifiers,
            amounts,
            session.sender_nonce_sum,
            None if recipient_nonces is None else recipient_nonces[i],
            session.recipient_nonce_sum,
        )
        for i, amounts in enumerate(per_recipient)
    ]

    wallet.sessions[session.session_id] = session
    logging.info(
        f"Opened session {session.session_id}: {len(inputs)} inputs, "
        f"{len(per_recipient)} recipients, change {session.change_amounts}"
    )
    return session, m1s


def initiate_transfer(
    wallet: "Wallet",
    coins: t.Sequence[CoinRecord],
    transfer_amounts: AmountVector,
    view: "LedgerView",
) -> t.Tuple[SenderSession, TransferInit]:
    """Start a transfer to a single recipient. See initiate_multi_transfer."""
    session, m1s = initiate_multi_transfer(wallet, coins, [transfer_amounts], view)
    return session, m1s[0]


def respond_transfer(
    wallet: "Wallet", m1: TransferInit, view: "LedgerView"
) -> TransferResponse:
    """Answer an M1: create the output, sign the common challenge, prove the range.

    Raises:
        ProtocolException: on an M1 this wallet cannot answer

    Returns:
        TransferResponse: M2, to send back to the sender
    """
    params: PublicParameters = view.params
    try:
        view.registry.check_supported(m1.transfer_amounts)
    except AtlantisException as e:
        raise ProtocolException(str(e)) from e

    sk: Scalar = wallet.new_key()
    coin: CoinRecord = CoinRecord.create(
        sk, m1.transfer_amounts, view.registry, CoinOrigin.TRANSFER, depth=view.tree.depth
    )

    if m1.recipient_nonce is not None and m1.recipient_nonce_sum is not None:
        k: Scalar | None = wallet.announced.pop(m1.recipient_nonce.hex(), None)
        if k is None:
            raise ProtocolException("M1 names a nonce this wallet never announced")
        nonce: Nonce = Nonce(k)
        R_agg: GroupPoint = m1.sender_nonce_sum - m1.recipient_nonce_sum
    else:
        nonce = Nonce.generate(wallet.rng)
        R_agg = m1.sender_nonce_sum - nonce.commitment.R

    try:
        e: Scalar = compute_agg_challenge(R_agg, encode_nullifier_list(m1.nullifiers))
    except InvalidParameterException as err:
        raise ProtocolException(str(err)) from err

    R_r: GroupPoint = nonce.commitment.R
    partial: PartialSignature = partial_sign(sk, nonce.consume(), e, -1)
    range_proof: Proof = ProofSuite.from_name(view.suite_name).prove(
        Relation.RANGE,
        RangeStatement.for_commitment(coin.commitment, params),
        RangeWitness(m1.transfer_amounts, sk),
        params,
        wallet.rng,
    )

    wallet.add_coin(coin)
    logging.info(f"Answered transfer of {m1.transfer_amounts} with leaf {coin.leaf_index}")
    return TransferResponse(coin.commitment, R_r, partial, range_proof)


def finalize_transfer(
    wallet: "Wallet",
    session: SenderSession,
    responses: t.Sequence[TransferResponse],
    view: "LedgerView",
) -> TransferFinal:
    """Build the change, aggregate every partial and prove the spend.

    Args:
        wallet (Wallet): the sender's wallet, which receives the change coin
        session (SenderSession): the open session
        responses (Sequence[TransferResponse]): one M2 per recipient, in M1 order
        view (LedgerView): the ledger snapshot

    Raises:
        SessionConsumedException: if the session was already finalized
        ProtocolException: on a malformed or unverifiable response
        ChallengeMismatchException: if a recipient signed another challenge

    Returns:
        TransferFinal: M3, to submit to the ledger
    """
    if session.consumed:
        raise SessionConsumedException(session.session_id)
    if len(responses) != len(session.recipient_amounts):
        raise ProtocolException(
            f"expected {len(session.recipient_amounts)} responses, got {len(responses)}"
        )

    params: PublicParameters = view.params
    suite: ProofSuite = ProofSuite.from_name(view.suite_name)
    for i, response in enumerate(responses):
        if response.partial.sign != -1 or response.partial.R != response.recipient_nonce:
            raise ProtocolException(f"response {i} is inconsistent")
        if session.recipient_nonces is not None and (
            response.recipient_nonce != session.recipient_nonces[i]
        ):
            raise ChallengeMismatchException(i)
        statement: RangeStatement = RangeStatement.for_commitment(
            response.output_commitment, params
        )
        if not suite.verify(Relation.RANGE, statement, response.range_proof, params):
            raise ProtocolException(f"range proof of response {i} does not verify")

    R_agg: GroupPoint = session.sender_nonce_sum - point_sum(
        r.recipient_nonce for r in responses
    )
    try:
        e: Scalar = compute_agg_challenge(R_agg, session.message)
    except InvalidParameterException as err:
        raise ProtocolException(str(err)) from err

    # The nonces are spent from here on, even if finalizing fails below
    session.consumed = True
    wallet.sessions.pop(session.session_id, None)
    change: CoinRecord = CoinRecord.create(
        wallet.new_key(),
        session.change_amounts,
        view.registry,
        CoinOrigin.CHANGE,
        depth=view.tree.depth,
    )

    partials: list[PartialSignature] = [
        partial_sign(coin.sk, nonce.consume(), e, 1)
        for coin, nonce in zip(session.inputs, session.input_nonces)
    ]
    partials.append(partial_sign(change.sk, session.change_nonce.consume(), e, -1))
    partials.extend(r.partial for r in responses)
    agg_sig: Signature = aggregate(partials)

    outputs = [r.output_commitment for r in responses] + [change.commitment]
    statement_p: SpendStatement = SpendStatement(session.nullifiers, outputs, session.root)
    witness: SpendWitness = SpendWitness(
        [c.sk for c in session.inputs],
        [c.commitment for c in session.inputs],
        session.merkle_proofs,
        agg_sig,
    )

    try:
        spend_proof: Proof = suite.prove(Relation.SPEND, statement_p, witness, params, wallet.rng)
    except RelationUnsatisfiedException as err:
        # Find the recipient whose partial does not answer e under P_r = C_r - sum(a * H)
        for i, (response, amounts) in enumerate(zip(responses, session.recipient_amounts)):
            P_r: GroupPoint = response.output_commitment.point - amounts_point(
                amounts, view.registry
            )
            if not verify_partial(response.partial, P_r, e):
                raise ChallengeMismatchException(i) from err
        raise

    change_proof: Proof = suite.prove(
        Relation.RANGE,
        RangeStatement.for_commitment(change.commitment, params),
        RangeWitness(change.amounts, change.sk),
        params,
        wallet.rng,
    )

    range_proofs: list[Proof] = [r.range_proof for r in responses] + [change_proof]
    payload: TransferPayload = TransferPayload(
        statement_p, spend_proof, list(zip(outputs, range_proofs))
    )

    wallet.add_coin(change)
    logging.info(f"Finalized session {session.session_id}")
    return TransferFinal(payload)


def build_withdrawal(
    wallet: "Wallet",
    coin: CoinRecord,
    destination: AccountId,
    view: "LedgerView",
) -> WithdrawPayload:
    """Prove ownership of a coin and ask the ledger to pay its amounts out.

    Raises:
        CoinSpentException: if the coin is spent
        LeafNotFoundException: if the coin is not in the view's tree
        RelationUnsatisfiedException: if the prover refuses the witness

    Returns:
        WithdrawPayload: the payload to submit
    """
    if coin.spent or coin.nullifier in view.nullifiers:
        raise CoinSpentException(coin.leaf_index)
    if coin.origin == CoinOrigin.DEPOSIT:
        logging.warning(
            f"Withdrawing deposit coin {coin.leaf_index} directly: its amounts can be "
            "matched to the deposit, consider a transfer to a fresh key first"
        )

    params: PublicParameters = view.params
    statement: WithdrawStatement = WithdrawStatement(
        coin.amounts, nullifier_for(coin.sk), view.root
    )
    witness: WithdrawWitness = WithdrawWitness(
        coin.sk, coin.commitment, view.tree.prove_membership(coin.commitment)
    )
    proof: Proof = ProofSuite.from_name(view.suite_name).prove(
        Relation.WITHDRAW, statement, witness, params, wallet.rng
    )
    return WithdrawPayload(statement, proof, destination)
