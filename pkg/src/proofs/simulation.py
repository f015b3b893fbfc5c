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

"""Witness-revealing stand-in for a zero-knowledge proof system.

WARNING: this backend is NOT zero-knowledge. A "proof" is the serialized
witness, and verification re-runs the relation check. It exists to exercise
the protocol logic end to end; anyone reading a proof learns the witness.
"""

import logging
import random

from src.crypto.commitment import Commitment
from src.exceptions import AtlantisException
from src.proofs.backend import BackendTag, Proof, ProofBackend
from src.proofs.exceptions import RelationUnsatisfiedException
from src.proofs.relations import (
    RELATIONS,
    PublicParameters,
    Relation,
    SpendWitness,
    Statement,
    Witness,
    WithdrawWitness,
    check_relation,
)


class SimulationBackend(ProofBackend):
    tag = BackendTag.SIMULATION
    relations = frozenset(Relation)

    def prove(
        self,
        relation: Relation,
        stmt: Statement,
        wit: Witness,
        params: PublicParameters,
        rng: random.Random | None = None,
    ) -> Proof:
        if not check_relation(relation, stmt, wit, params):
            raise RelationUnsatisfiedException(relation.name.lower())
        return Proof(self.tag, bytes([int(relation)]) + wit.to_bytes())

    def _witness(self, relation: Relation, proof: Proof) -> Witness | None:
        if len(proof.payload) < 1 or proof.payload[0] != int(relation):
            return None
        try:
            return RELATIONS[relation].witness.from_bytes(proof.payload[1:])
        except AtlantisException as e:
            logging.debug(f"Malformed simulation proof: {e}")
            return None

    def verify(
        self, relation: Relation, stmt: Statement, proof: Proof, params: PublicParameters
    ) -> bool:
        wit: Witness | None = self._witness(relation, proof)
        if wit is None:
            return False
        return check_relation(relation, stmt, wit, params)

    def revealed_inputs(self, proof: Proof) -> list[Commitment] | None:
        """Return the spent commitments carried in a spend or withdraw proof."""
        if len(proof.payload) < 1:
            return None
        try:
            relation: Relation = Relation(proof.payload[0])
        except ValueError:
            return None

        wit: Witness | None = self._witness(relation, proof)
        if isinstance(wit, SpendWitness):
            return list(wit.input_commitments)
        if isinstance(wit, WithdrawWitness):
            return [wit.commitment]
        return None
