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

"""Pluggable proof systems and the suites a ledger is configured with."""

import abc
import random
import typing as t
from enum import IntEnum

from src.const import PROOF_FORMAT_VERSION
from src.crypto.commitment import Commitment
from src.proofs.exceptions import UnsupportedBackendException
from src.proofs.relations import PublicParameters, Relation, Statement, Witness
from src.wire.exceptions import DecodeException, UnsupportedVersionException


class BackendTag(IntEnum):
    SIMULATION = 1
    SIGMA_RANGE = 2


class Proof:
    """An opaque proof: backend tag, format version and backend payload.

    Attributes:
        backend (BackendTag): the proof system that produced it
        payload (bytes): backend-specific bytes
    """

    __slots__ = ("backend", "payload")

    def __init__(self, backend: BackendTag, payload: bytes) -> None:
        self.backend: BackendTag = backend
        self.payload: bytes = payload

    @classmethod
    def from_bytes(cls, data: bytes) -> "Proof":
        """Decode `backend tag || version || payload`.

        Raises:
            DecodeException: on a short input or an unknown backend tag
            UnsupportedVersionException: on another proof format version
        """
        if len(data) < 2:
            raise DecodeException(len(data), "truncated proof header")
        try:
            backend: BackendTag = BackendTag(data[0])
        except ValueError:
            raise DecodeException(0, f"unknown backend tag 0x{data[0]:02x}")
        if data[1] != PROOF_FORMAT_VERSION:
            raise UnsupportedVersionException(data[1])
        return cls(backend, data[2:])

    def to_bytes(self) -> bytes:
        return bytes([int(self.backend), PROOF_FORMAT_VERSION]) + self.payload

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Proof):
            return NotImplemented
        return self.backend == other.backend and self.payload == other.payload

    def __repr__(self) -> str:
        return f"Proof({self.backend.name}, {len(self.payload)} bytes)"


class ProofBackend(abc.ABC):
    """A proof system for some of the relations.

    Attributes:
        tag (BackendTag): written in front of every proof
        relations (frozenset[Relation]): the relations this backend can prove
    """

    tag: BackendTag
    relations: frozenset[Relation]

    def __init__(self, progress: bool = False) -> None:
        self.progress: bool = progress

    @abc.abstractmethod
    def prove(
        self,
        relation: Relation,
        stmt: Statement,
        wit: Witness,
        params: PublicParameters,
        rng: random.Random | None = None,
    ) -> Proof:
        """Prove a statement.

        Raises:
            RelationUnsatisfiedException: if the witness does not satisfy the relation
        """

    @abc.abstractmethod
    def verify(
        self, relation: Relation, stmt: Statement, proof: Proof, params: PublicParameters
    ) -> bool:
        """Verify a proof. Malformed proofs are rejected, never raised on."""

    def revealed_inputs(self, proof: Proof) -> list[Commitment] | None:
        """Spent commitments visible in a proof, or None for hiding backends."""
        return None


class ProofSuite:
    """One backend per relation, as fixed when the ledger is created.

    Attributes:
        name (str): the suite name stored in the ledger state
        backends (dict[Relation, ProofBackend]): the backend proving each relation
    """

    def __init__(self, name: str, backends: t.Mapping[Relation, ProofBackend]) -> None:
        for relation, backend in backends.items():
            if relation not in backend.relations:
                raise UnsupportedBackendException(f"{backend.tag.name} for {relation.name}")
        self.name: str = name
        self.backends: dict[Relation, ProofBackend] = dict(backends)

    @classmethod
    def from_name(cls, name: str, progress: bool = False) -> "ProofSuite":
        """Build a named suite.

        Raises:
            UnsupportedBackendException: on an unknown name
        """
        # Imported here: the backends import this module
        from src.proofs.sigma_range import SigmaRangeBackend
        from src.proofs.simulation import SimulationBackend

        simulation: SimulationBackend = SimulationBackend(progress)
        if name == SUITE_SIMULATION:
            return cls(name, {r: simulation for r in Relation})
        if name == SUITE_SIGMA_RANGE:
            return cls(
                name,
                {
                    Relation.RANGE: SigmaRangeBackend(progress),
                    Relation.SPEND: simulation,
                    Relation.WITHDRAW: simulation,
                },
            )
        raise UnsupportedBackendException(name)

    def backend_for(self, relation: Relation) -> ProofBackend:
        return self.backends[relation]

    def prove(
        self,
        relation: Relation,
        stmt: Statement,
        wit: Witness,
        params: PublicParameters,
        rng: random.Random | None = None,
    ) -> Proof:
        return self.backend_for(relation).prove(relation, stmt, wit, params, rng)

    def verify(
        self, relation: Relation, stmt: Statement, proof: Proof, params: PublicParameters
    ) -> bool:
        """Verify with the configured backend; proofs from any other backend fail."""
        backend: ProofBackend = self.backend_for(relation)
        if proof.backend != backend.tag:
            return False
        return backend.verify(relation, stmt, proof, params)

    def revealed_inputs(self, relation: Relation, proof: Proof) -> list[Commitment] | None:
        backend: ProofBackend = self.backend_for(relation)
        if proof.backend != backend.tag:
            return None
        return backend.revealed_inputs(proof)


SUITE_SIMULATION: str = "simulation"
SUITE_SIGMA_RANGE: str = "sigma-range+simulation"
SUITE_NAMES: list[str] = [SUITE_SIMULATION, SUITE_SIGMA_RANGE]
