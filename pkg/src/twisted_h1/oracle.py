"""Brute-force verification path: cocycle and coboundary enumeration in the
finite torsion torus, and direct orbit counting under the fixed Weyl group.

This module works purely additively modulo m and never touches normal
forms, alcoves, or Kac labels, so it is algorithmically independent of the
lattice-quotient route it checks.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from typing import Optional

from .errors import TooLarge
from .folding import DiagramAutomorphism, ambient_orbit_reflections, norm_operator
from .lattice import Vec, enum_cap, mat_vec


@dataclass(frozen=True)
class BruteForceH1:
    count: int
    classes: tuple[Vec, ...]
    cocycle_count: int
    coboundary_order: int


def _coboundary_subgroup(da: DiagramAutomorphism, m: int) -> frozenset:
    """The subgroup (1 - tau) T_m of (Z/m)^rank, by additive closure."""
    n = da.rank
    p = da.lattice_action.matrix
    gens = []
    for j in range(n):
        gens.append(tuple(((1 if i == j else 0) - p[i][j]) % m for i in range(n)))
    zero = (0,) * n
    sub = {zero}
    frontier = [zero]
    while frontier:
        nxt = []
        for v in frontier:
            for g in gens:
                w = tuple((a + b) % m for a, b in zip(v, g))
                if w not in sub:
                    sub.add(w)
                    nxt.append(w)
        frontier = nxt
    return frozenset(sub)


def _torus_classes(da: DiagramAutomorphism, m: int, cap: Optional[int]):
    n = da.rank
    limit = enum_cap() if cap is None else cap
    if m ** n > limit:
        raise TooLarge(f"state space m^rank = {m ** n} exceeds cap {limit}")
    nmat = norm_operator(da, m).matrix
    cocycles = [t for t in itertools.product(range(m), repeat=n)
                if all(v % m == 0 for v in mat_vec(nmat, t))]
    sub = _coboundary_subgroup(da, m)

    def canon(t: Vec) -> Vec:
        return min(tuple((a + b) % m for a, b in zip(t, s)) for s in sub)

    classes = sorted({canon(t) for t in cocycles})
    return classes, cocycles, sub, canon


def brute_force_h1_torus(da: DiagramAutomorphism, m: int,
                         cap: Optional[int] = None) -> BruteForceH1:
    """Classes of cocycles in the m-torsion torus modulo coboundaries."""
    classes, cocycles, sub, _canon = _torus_classes(da, m, cap)
    return BruteForceH1(len(classes), tuple(classes), len(cocycles), len(sub))


def brute_force_h1_group(da: DiagramAutomorphism, m: int,
                         cap: Optional[int] = None) -> BruteForceH1:
    """Fixed-Weyl orbit count on the brute-force torus classes."""
    classes, cocycles, sub, canon = _torus_classes(da, m, cap)
    gens = [w.matrix for w in ambient_orbit_reflections(da)]
    reps = []
    visited = set()
    for t in classes:
        if t in visited:
            continue
        orbit = {t}
        frontier = [t]
        while frontier:
            nxt = []
            for v in frontier:
                for g in gens:
                    w = canon(tuple(x % m for x in mat_vec(g, v)))
                    if w not in orbit:
                        orbit.add(w)
                        nxt.append(w)
            frontier = nxt
        visited.update(orbit)
        reps.append(min(orbit))
    return BruteForceH1(len(reps), tuple(sorted(reps)), len(cocycles), len(sub))
