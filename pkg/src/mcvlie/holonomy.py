"""Holonomy-Lie-algebra presentations of arrangement complements and their
finite dimensional modules, represented as residue-matrix tuples.

A Pfaffian system with logarithmic poles along an arrangement is the same
data as a module over the holonomy Lie algebra: an assignment of one square
residue matrix per hyperplane subject to the commutator relations attached
to the codimension-2 families.  This module validates those relations and
implements the zero-extension along an inclusion of arrangements.
"""

from __future__ import annotations

from dataclasses import dataclass

from .arrangement import Arrangement, codim2_flats
from .errors import InputError, InternalInvariantError, PreconditionError
from .exactcore import ExactMatrix, matrix_from_json, matrix_to_json


@dataclass(frozen=True)
class Presentation:
    """Generators (hyperplane ids) and the relation families: for each
    maximal codimension-2 family {H_1..H_m} the relations say every member
    commutes with the family sum."""

    generators: tuple
    relation_families: tuple


def presentation(arr: Arrangement) -> Presentation:
    return Presentation(
        generators=tuple(arr.ids()),
        relation_families=tuple(f.family for f in codim2_flats(arr)),
    )


class PfaffianSystem:
    """An arrangement together with a d×d residue matrix per hyperplane."""

    __slots__ = ("arrangement", "rank", "residues")

    def __init__(self, arrangement: Arrangement, rank: int, residues: dict):
        self.arrangement = arrangement
        self.rank = rank
        self.residues = dict(residues)
        for hid in arrangement.ids():
            if hid not in self.residues:
                raise InputError(f"missing residue for hyperplane {hid!r}")
        if len(self.residues) != len(arrangement):
            extra = set(self.residues) - set(arrangement.ids())
            raise InputError(f"residues for unknown hyperplanes: {sorted(extra)}")
        for hid, m in self.residues.items():
            if m.rows != rank or m.cols != rank:
                raise InputError(f"residue for {hid!r} is not {rank}x{rank}")

    def residue(self, hid: str) -> ExactMatrix:
        try:
            return self.residues[hid]
        except KeyError:
            raise InputError(f"unknown hyperplane id {hid!r}") from None

    def to_json(self):
        return {
            "arrangement": self.arrangement.to_json(),
            "rank": self.rank,
            "residues": {hid: matrix_to_json(m) for hid, m in self.residues.items()},
        }

    @staticmethod
    def from_json(data) -> "PfaffianSystem":
        try:
            arr = Arrangement.from_json(data["arrangement"])
            rank = int(data["rank"])
            residues = {
                str(hid): matrix_from_json(m, shape=(rank, rank))
                for hid, m in data["residues"].items()
            }
        except (KeyError, TypeError) as exc:
            raise InputError(f"malformed system JSON: {exc}") from exc
        return PfaffianSystem(arr, rank, residues)


@dataclass(frozen=True)
class IntegrabilityViolation:
    family: tuple
    member: str
    commutator: ExactMatrix


def check_integrability(system: PfaffianSystem) -> list:
    """All failures of the relations [A_H, sum of the family] = 0, one per
    family member; an empty list means the system is integrable.

    Checking every member (rather than all but the last) is redundant but
    gives a per-member diagnostic.
    """
    violations = []
    for flat in codim2_flats(system.arrangement):
        total = _sum_matrices([system.residue(hid) for hid in flat.family],
                              system.rank)
        for hid in flat.family:
            a = system.residue(hid)
            comm = a * total - total * a
            if not comm.is_zero():
                violations.append(
                    IntegrabilityViolation(flat.family, hid, comm)
                )
    return violations


def is_integrable(system: PfaffianSystem) -> bool:
    return not check_integrability(system)


def zero_extend(system: PfaffianSystem, target: Arrangement) -> PfaffianSystem:
    """Extend along an inclusion of arrangements by assigning the zero
    residue to every new hyperplane (the restriction functor of modules).

    Matching is geometric, so the target may relabel hyperplanes.  The
    output is re-checked: a violation would contradict the fact that the
    extension is induced by a Lie algebra homomorphism.
    """
    if not target.contains_arrangement(system.arrangement):
        raise PreconditionError("target arrangement does not contain the source")
    if check_integrability(system):
        raise PreconditionError("zero_extend requires an integrable system")
    by_key = {h.key: h.id for h in system.arrangement}
    zero = ExactMatrix.zeros(system.rank, system.rank)
    residues = {}
    for h in target:
        src = by_key.get(h.key)
        residues[h.id] = system.residues[src] if src is not None else zero
    out = PfaffianSystem(target, system.rank, residues)
    if check_integrability(out):
        raise InternalInvariantError(
            "zero-extension broke integrability; this should be impossible"
        )
    return out


def residue_sum(system: PfaffianSystem, ids) -> ExactMatrix:
    """Entrywise sum of the selected residues (empty selection: zero)."""
    mats = [system.residue(hid) for hid in ids]
    return _sum_matrices(mats, system.rank)


def _sum_matrices(mats, rank: int) -> ExactMatrix:
    total = ExactMatrix.zeros(rank, rank)
    for m in mats:
        total = total + m
    return total
