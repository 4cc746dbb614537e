"""Root data for the simple types A-G in Bourbaki numbering.

A RootDatum fixes coordinates on the cocharacter lattice: the simple coroots
for the simply connected isogeny, the fundamental coweights for the adjoint
one.  Simple roots are stored as integer functionals on those coordinates,
so every pairing is an exact integer dot product.
"""

from __future__ import annotations

import enum
import json
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from math import lcm
from typing import Sequence

from .errors import InternalError, InvalidRank
from .lattice import (Mat, Vec, freeze, identity_matrix, invert_rational,
                      mat_mul, mat_vec, transpose)

_RANK_RULES = {
    "A": (1, None),
    "B": (2, None),
    "C": (2, None),
    "D": (3, None),
    "E": (6, 8),
    "F": (4, 4),
    "G": (2, 2),
}

_CLOSURE_CAP = 10_000


class Isogeny(enum.Enum):
    SIMPLY_CONNECTED = "sc"
    ADJOINT = "adjoint"

    @classmethod
    def parse(cls, text: str) -> "Isogeny":
        key = text.strip().lower()
        if key in ("sc", "simply_connected", "simply-connected"):
            return cls.SIMPLY_CONNECTED
        if key in ("adjoint", "ad"):
            return cls.ADJOINT
        raise ValueError(f"unknown isogeny {text!r}; expected 'sc' or 'adjoint'")


@dataclass(frozen=True)
class SimpleType:
    family: str
    rank: int

    def __post_init__(self):
        if self.family not in _RANK_RULES:
            raise InvalidRank(f"unknown family {self.family!r}; expected one of A-G")
        lo, hi = _RANK_RULES[self.family]
        if self.rank < lo:
            raise InvalidRank(f"type {self.family} requires rank >= {lo}, got {self.rank}")
        if hi is not None and self.rank > hi:
            if self.family == "E":
                raise InvalidRank(f"type E exists only for ranks 6, 7, 8, got {self.rank}")
            raise InvalidRank(f"type {self.family} has fixed rank {lo}, got {self.rank}")

    def __str__(self):
        return f"{self.family}{self.rank}"


def _edges(st: SimpleType) -> list[tuple[int, int]]:
    n = st.rank
    if st.family in ("A", "B", "C", "F", "G"):
        return [(i, i + 1) for i in range(n - 1)]
    if st.family == "D":
        return [(i, i + 1) for i in range(n - 2)] + [(n - 3, n - 1)]
    if st.family == "E":
        chain = [(0, 2), (2, 3), (3, 4)] + [(i, i + 1) for i in range(4, n - 1)]
        return chain + [(1, 3)]
    raise InternalError(f"no edge table for {st}")


@lru_cache(maxsize=None)
def cartan_matrix(st: SimpleType) -> Mat:
    """Cartan matrix with cartan[i][j] = pairing(coroot_i, root_j)."""
    n = st.rank
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]
    for i, j in _edges(st):
        a[i][j] = a[j][i] = -1
    if st.family == "B":
        a[n - 1][n - 2] = -2
    elif st.family == "C":
        a[n - 2][n - 1] = -2
    elif st.family == "F":
        a[2][1] = -2
    elif st.family == "G":
        a[0][1] = -3
    return freeze(a)


@lru_cache(maxsize=None)
def simple_root_norms(st: SimpleType) -> Vec:
    """Relative squared lengths of the simple roots, propagated along edges."""
    c = cartan_matrix(st)
    n = st.rank
    norms = [Fraction(0)] * n
    norms[0] = Fraction(2)
    pending = [0]
    seen = {0}
    while pending:
        i = pending.pop()
        for j in range(n):
            if j not in seen and c[i][j] != 0:
                # norm_i * c_ij symmetric in (i, j)
                norms[j] = norms[i] * c[i][j] / c[j][i]
                seen.add(j)
                pending.append(j)
    den = lcm(*(x.denominator for x in norms))
    return tuple(int(x * den) for x in norms)


@dataclass(frozen=True)
class Root:
    """A root with coefficients over the simple roots and its coroot's
    coefficients over the simple coroots."""

    coeffs: Vec
    coroot_coeffs: Vec
    norm: int

    @property
    def height(self) -> int:
        return sum(self.coeffs)


@lru_cache(maxsize=None)
def root_system(st: SimpleType) -> tuple[Root, ...]:
    """All roots, by reflection closure from the simple roots."""
    c = cartan_matrix(st)
    norms = simple_root_norms(st)
    n = st.rank
    seen: dict[Vec, Root] = {}
    frontier: list[Root] = []
    for i in range(n):
        e = tuple(1 if j == i else 0 for j in range(n))
        r = Root(e, e, norms[i])
        seen[e] = r
        frontier.append(r)
    steps = 0
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                steps += 1
                if steps > _CLOSURE_CAP * n:
                    raise InternalError(f"root closure failed to terminate for {st}")
                # s_i on roots and on coroots
                ri = sum(r.coeffs[j] * c[i][j] for j in range(n))
                co = sum(r.coroot_coeffs[j] * c[j][i] for j in range(n))
                coeffs = tuple(x - ri * (1 if j == i else 0) for j, x in enumerate(r.coeffs))
                cocoeffs = tuple(x - co * (1 if j == i else 0) for j, x in enumerate(r.coroot_coeffs))
                if coeffs not in seen:
                    img = Root(coeffs, cocoeffs, r.norm)
                    seen[coeffs] = img
                    nxt.append(img)
        frontier = nxt
    return tuple(sorted(seen.values(), key=lambda r: (r.height, r.coeffs)))


def _dominant(st: SimpleType, roots: Sequence[Root]) -> Root:
    best = max(roots, key=lambda r: r.height)
    ties = [r for r in roots if r.height == best.height]
    if len(ties) != 1:
        raise InternalError(f"highest root not unique for {st}")
    return best


@lru_cache(maxsize=None)
def highest_root_abstract(st: SimpleType) -> Root:
    return _dominant(st, root_system(st))


@lru_cache(maxsize=None)
def highest_short_root_abstract(st: SimpleType) -> Root:
    roots = root_system(st)
    shortest = min(r.norm for r in roots)
    return _dominant(st, [r for r in roots if r.norm == shortest])


@dataclass(frozen=True)
class LatticeMap:
    """An exact linear map on cocharacter coordinates (rows of a matrix)."""

    matrix: Mat

    def apply(self, v: Sequence[int]):
        return mat_vec(self.matrix, v)

    def compose(self, other: "LatticeMap") -> "LatticeMap":
        return LatticeMap(freeze(mat_mul(self.matrix, other.matrix)))

    def power(self, k: int) -> "LatticeMap":
        n = len(self.matrix)
        out = LatticeMap(identity_matrix(n))
        for _ in range(k):
            out = out.compose(self)
        return out

    @property
    def is_identity(self) -> bool:
        return self.matrix == identity_matrix(len(self.matrix))


@dataclass(frozen=True)
class RootDatum:
    type: SimpleType
    isogeny: Isogeny
    rank: int
    cartan: Mat
    cochar_basis_labels: tuple[str, ...]
    simple_coroots: Mat      # row i = coords of coroot i
    simple_roots: Mat        # row j = functional of root j
    fundamental_coweights: tuple[tuple[Fraction, ...], ...]

    def pairing(self, coweight: Sequence, root_functional: Sequence):
        """<coweight, root> as an exact number."""
        return sum(a * b for a, b in zip(root_functional, coweight))


@dataclass(frozen=True)
class DatumRoot:
    """A root resolved against a datum: functional plus coroot vector."""

    coeffs: Vec
    coroot_coeffs: Vec
    norm: int
    functional: Vec
    coroot_vector: Vec


def build_root_datum(st: SimpleType, isogeny: Isogeny) -> RootDatum:
    """Root datum with exact coordinates, deterministic in Bourbaki numbering."""
    n = st.rank
    c = cartan_matrix(st)
    if isogeny is Isogeny.SIMPLY_CONNECTED:
        coroots = identity_matrix(n)
        # root j evaluates to cartan[i][j] on coroot i
        roots = transpose(c)
        labels = tuple(f"alphacheck{i + 1}" for i in range(n))
        cinv = invert_rational(c)
        fcw = tuple(tuple(row) for row in cinv)
    else:
        coroots = c
        roots = identity_matrix(n)
        labels = tuple(f"omegacheck{i + 1}" for i in range(n))
        fcw = tuple(tuple(Fraction(1 if i == j else 0) for j in range(n)) for i in range(n))
    return RootDatum(st, isogeny, n, c, labels, freeze(coroots), freeze(roots), fcw)


def resolve_root(d: RootDatum, r: Root) -> DatumRoot:
    functional = tuple(sum(cj * d.simple_roots[j][i] for j, cj in enumerate(r.coeffs))
                       for i in range(d.rank))
    coroot = tuple(sum(cj * d.simple_coroots[j][i] for j, cj in enumerate(r.coroot_coeffs))
                   for i in range(d.rank))
    return DatumRoot(r.coeffs, r.coroot_coeffs, r.norm, functional, coroot)


def highest_root(d: RootDatum) -> DatumRoot:
    return resolve_root(d, highest_root_abstract(d.type))


def highest_short_root(d: RootDatum) -> DatumRoot:
    return resolve_root(d, highest_short_root_abstract(d.type))


def weyl_generators(d: RootDatum) -> tuple[LatticeMap, ...]:
    """Simple reflections s_i(v) = v - <v, root_i> coroot_i on cocharacters."""
    gens = []
    for i in range(d.rank):
        rows = []
        for a in range(d.rank):
            row = []
            for b in range(d.rank):
                # image of basis vector e_b is e_b - root_i(e_b) * coroot_i
                val = (1 if a == b else 0) - d.simple_roots[i][b] * d.simple_coroots[i][a]
                row.append(val)
            rows.append(tuple(row))
        gens.append(LatticeMap(freeze(rows)))
    return tuple(gens)


def datum_to_json(d: RootDatum) -> str:
    doc = {
        "type": d.type.family,
        "rank": d.rank,
        "isogeny": d.isogeny.value,
        "cartan": [list(row) for row in d.cartan],
    }
    return json.dumps(doc, sort_keys=True)
