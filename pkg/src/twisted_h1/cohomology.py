"""First cohomology of a cyclic group acting through a diagram automorphism:
the torus case as a finite abelian group, the group case as the set of
fixed-Weyl orbits, with alcove and Kac coordinate routes for the simply
connected and adjoint isogenies."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Optional

from .errors import InternalError, MethodUnavailable, TooLarge
from .folding import (DiagramAutomorphism, folded_datum,
                      folded_weyl_generators, norm_operator)
from .lattice import (FiniteAbelianGroup, Vec, enum_cap, enumerate_elements,
                      mat_vec, quotient)
from .roots import Isogeny

CHAR_CAVEAT = "valid over fields whose characteristic does not divide m"

METHODS = ("auto", "orbit", "alcove", "kac")


@dataclass(frozen=True)
class CohomologySet:
    """Orbit representatives of the torus cohomology under the fixed Weyl
    group, as rational coweights lambda/m in invariant coordinates."""

    automorphism: DiagramAutomorphism
    m: int
    classes: tuple
    cardinality: int
    provenance: str
    caveat: str = CHAR_CAVEAT


@dataclass(frozen=True)
class TorusElement:
    """Exponent data (lambda, m) of the m-torsion point zeta_m^lambda."""

    lam_coords: Vec
    lam_ambient: Vec
    m: int


def h1_torus(da: DiagramAutomorphism, m: int) -> FiniteAbelianGroup:
    """Quotient of the invariant cocharacter sublattice by the norm image."""
    from .alcove import _require_compatible
    _require_compatible(da, m)
    fd = folded_datum(da)
    nmat = norm_operator(da, m).matrix
    n = da.rank
    gens = [tuple(nmat[i][j] for i in range(n)) for j in range(n)]
    return quotient(fd.invariant_basis, gens)


def _orbit_classes(da: DiagramAutomorphism, m: int, cap: Optional[int]) -> tuple[Vec, ...]:
    group = h1_torus(da, m)
    limit = enum_cap() if cap is None else cap
    if group.cardinality > limit:
        raise TooLarge(
            f"torus cohomology of order {group.cardinality} exceeds cap {limit}")
    gens = [g.matrix for g in folded_weyl_generators(da)]
    reps = []
    visited = set()
    for elem in enumerate_elements(group, limit):
        if elem.coords in visited:
            continue
        orbit_reps = {elem.rep}
        frontier = [elem.rep]
        coords_seen = {elem.coords}
        while frontier:
            nxt = []
            for vec in frontier:
                for g in gens:
                    img = group.coords_of(mat_vec(g, vec))
                    if img not in coords_seen:
                        coords_seen.add(img)
                        rep = group.rep_of_coords(img)
                        orbit_reps.add(rep)
                        nxt.append(rep)
            frontier = nxt
        visited.update(coords_seen)
        reps.append(min(orbit_reps))
    return tuple(sorted(reps))


def h1_group(da: DiagramAutomorphism, m: int, method: str = "auto",
             cap: Optional[int] = None) -> CohomologySet:
    """Class set of the group-level cohomology.

    orbit: fixed-Weyl orbits on the torus classes (any isogeny).
    alcove: rational alcove points (simply connected only).
    kac: Kac coordinate classes (adjoint only).
    auto: the isogeny-appropriate route, cross-checked against orbit.
    """
    from . import alcove as alc
    alc._require_compatible(da, m)
    if method not in METHODS:
        raise ValueError(f"unknown method {method!r}; expected one of {METHODS}")
    sc = da.base.isogeny is Isogeny.SIMPLY_CONNECTED

    if method == "orbit":
        reps = _orbit_classes(da, m, cap)
        classes = tuple(alc.RationalCoweight(tuple(Fraction(c, m) for c in rep))
                        for rep in reps)
        return CohomologySet(da, m, classes, len(classes), "orbit")

    if method == "alcove":
        if not sc:
            raise MethodUnavailable("the alcove route requires the simply connected isogeny")
        classes = tuple(alc.class_coweight_of_point(da, p, m)
                        for p in alc.enumerate_alcove_points(da, m))
        return CohomologySet(da, m, classes, len(classes), "alcove")

    if method == "kac":
        if sc:
            raise MethodUnavailable("the Kac coordinate route requires the adjoint isogeny")
        classes = tuple(alc.class_coweight_of_point(da, alc.kac_to_alcove(da, kc, m), m)
                        for kc in alc.kac_classes(da, m))
        return CohomologySet(da, m, classes, len(classes), "kac")

    primary = h1_group(da, m, "alcove" if sc else "kac", cap)
    limit = enum_cap() if cap is None else cap
    group = h1_torus(da, m)
    if group.cardinality <= limit:
        check = h1_group(da, m, "orbit", cap)
        if check.cardinality != primary.cardinality:
            raise InternalError(
                f"method cross-check failed: orbit={check.cardinality} "
                f"{primary.provenance}={primary.cardinality}")
    return primary


def group_class_of(da: DiagramAutomorphism, m: int, ambient_vector: Vec):
    """Canonical class representative (as a coweight lambda/m) of an integral
    invariant cocharacter vector, under both the norm image and the fixed
    Weyl group."""
    from .alcove import RationalCoweight
    from .lattice import solve_int, transpose
    group = h1_torus(da, m)
    fd = folded_datum(da)
    coords = solve_int(transpose(fd.invariant_basis), ambient_vector)
    if coords is None:
        raise ValueError("vector is not in the invariant sublattice")
    gens = [g.matrix for g in folded_weyl_generators(da)]
    start = group.canonical_rep(coords)
    orbit = {start}
    frontier = [start]
    while frontier:
        nxt = []
        for vec in frontier:
            for g in gens:
                rep = group.canonical_rep(mat_vec(g, vec))
                if rep not in orbit:
                    orbit.add(rep)
                    nxt.append(rep)
        frontier = nxt
    rep = min(orbit)
    return RationalCoweight(tuple(Fraction(c, m) for c in rep))


def representative_coweight(cs: CohomologySet, index: int) -> TorusElement:
    """The (lambda, m) exponent pair of a class, coordinates reduced to [0, m)."""
    point = cs.classes[index]
    m = cs.m
    lam = []
    for c in point.coords:
        v = c * m
        if v.denominator != 1:
            raise InternalError("class representative is not in (1/m) times the lattice")
        lam.append(int(v) % m)
    fd = folded_datum(cs.automorphism)
    ambient = tuple(
        sum(lam[i] * fd.invariant_basis[i][j] for i in range(fd.rank))
        for j in range(cs.automorphism.rank))
    return TorusElement(tuple(lam), ambient, m)
