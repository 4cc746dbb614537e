"""Covering and ramification data for equivariant bundles: existence of
coverings with prescribed indices, per-orbit local-type sets, and component
counts of the bundle moduli."""

from __future__ import annotations

import json
from dataclasses import dataclass
from typing import Iterable, Sequence

from .cohomology import CohomologySet, h1_group, representative_coweight
from .errors import InvalidAssignment, NotSimplyConnected
from .folding import diagram_automorphism
from .roots import Isogeny, SimpleType, build_root_datum


@dataclass(frozen=True)
class RamifiedOrbit:
    orbit_id: str
    m: int
    group_type: SimpleType
    tau_order: int

    def __post_init__(self):
        if self.m < 2:
            raise ValueError(f"ramified orbit {self.orbit_id}: stabilizer order must be >= 2")
        if self.m % self.tau_order:
            raise ValueError(
                f"ramified orbit {self.orbit_id}: action order {self.tau_order} "
                f"does not divide stabilizer order {self.m}")


@dataclass(frozen=True)
class CoveringData:
    genus: int
    orbits: tuple[RamifiedOrbit, ...]

    def __post_init__(self):
        if self.genus < 0:
            raise ValueError("genus must be non-negative")


def covering_from_json(text: str) -> CoveringData:
    doc = json.loads(text)
    orbits = []
    for i, rec in enumerate(doc.get("orbits", [])):
        orbits.append(RamifiedOrbit(
            orbit_id=str(rec.get("id", i)),
            m=int(rec["m"]),
            group_type=SimpleType(rec["type"], int(rec["rank"])),
            tau_order=int(rec.get("tau_order", 1)),
        ))
    return CoveringData(int(doc["genus"]), tuple(orbits))


def covering_to_json(cd: CoveringData) -> str:
    doc = {
        "genus": cd.genus,
        "orbits": [
            {"id": o.orbit_id, "m": o.m, "type": o.group_type.family,
             "rank": o.group_type.rank, "tau_order": o.tau_order}
            for o in cd.orbits
        ],
    }
    return json.dumps(doc, sort_keys=True)


@dataclass(frozen=True)
class CoveringCheck:
    exists: bool
    reason: str


def covering_exists(genus: int, indices: Sequence[int]) -> CoveringCheck:
    """Whether a connected covering of a genus-g curve with the prescribed
    ramification indices exists; false in exactly two degenerate cases."""
    if genus < 0:
        raise ValueError("genus must be non-negative")
    ms = list(indices)
    if any(m < 2 for m in ms):
        raise ValueError("ramification indices must be >= 2")
    if genus == 0 and len(ms) == 1:
        return CoveringCheck(False, "g=0, s=1")
    if genus == 0 and len(ms) == 2 and ms[0] != ms[1]:
        return CoveringCheck(False, "g=0, s=2 and m_1 != m_2")
    return CoveringCheck(True, "realizable")


def local_type_sets(cd: CoveringData, isogeny: Isogeny) -> tuple[CohomologySet, ...]:
    """One cohomology class set per ramified orbit."""
    out = []
    for orb in cd.orbits:
        datum = build_root_datum(orb.group_type, isogeny)
        da = diagram_automorphism(datum, orb.tau_order)
        out.append(h1_group(da, orb.m))
    return tuple(out)


def component_count(cd: CoveringData, isogeny: Isogeny = Isogeny.SIMPLY_CONNECTED) -> int:
    """Number of components of the bundle moduli: the product of the local
    class counts over the ramified orbits."""
    if isogeny is not Isogeny.SIMPLY_CONNECTED:
        raise NotSimplyConnected("component counting requires the simply connected isogeny")
    total = 1
    for cset in local_type_sets(cd, isogeny):
        total *= cset.cardinality
    return total


@dataclass(frozen=True)
class LocalTypeAssignment:
    """Per-orbit choice of a class index into the orbit's computed set."""

    choices: tuple[int, ...]


def bundle_label(cd: CoveringData, assignment: LocalTypeAssignment,
                 isogeny: Isogeny = Isogeny.SIMPLY_CONNECTED) -> str:
    """Canonical component label; assignments are equal iff labels are equal."""
    sets = local_type_sets(cd, isogeny)
    if len(assignment.choices) != len(sets):
        raise InvalidAssignment(
            f"expected {len(sets)} choices, got {len(assignment.choices)}")
    parts = []
    for orb, cset, choice in zip(cd.orbits, sets, assignment.choices):
        if not 0 <= choice < cset.cardinality:
            raise InvalidAssignment(
                f"orbit {orb.orbit_id}: class index {choice} out of range "
                f"0..{cset.cardinality - 1}")
        elem = representative_coweight(cset, choice)
        lam = ",".join(str(c) for c in elem.lam_ambient)
        parts.append(f"{orb.orbit_id}:m={orb.m}:lambda=({lam})")
    return "|".join(parts)


def all_bundle_labels(cd: CoveringData,
                      isogeny: Isogeny = Isogeny.SIMPLY_CONNECTED) -> tuple[str, ...]:
    """Labels of every component, in lexicographic assignment order."""
    import itertools
    sets = local_type_sets(cd, isogeny)
    ranges = [range(s.cardinality) for s in sets]
    return tuple(bundle_label(cd, LocalTypeAssignment(tuple(c)), isogeny)
                 for c in itertools.product(*ranges))
