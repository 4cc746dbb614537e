"""Fundamental alcove machinery: rational points, alcove reduction by
affine reflections, Kac coordinate enumeration, affine diagram symmetry
classes, and finite-order automorphism descriptors.

Points live in the invariant coordinates fixed by a FoldedDatum.  All
arithmetic is exact (ints and Fractions).
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from fractions import Fraction
from math import lcm
from typing import Iterable, Sequence

from .errors import (IncompatibleOrder, InternalError, NotAdjoint,
                     NotInLattice)
from .folding import DiagramAutomorphism, FoldedDatum, diagram_automorphism, \
    folded_datum, norm_operator
from .lattice import (Mat, Vec, enumerate_elements, freeze, hnf,
                      identity_matrix, mat_vec, quotient, solve_int,
                      transpose)
from .roots import Isogeny, build_root_datum

_WALK_CAP = 100_000


@dataclass(frozen=True)
class RationalCoweight:
    """Exact rational coordinates in the invariant basis."""

    coords: tuple[Fraction, ...]

    @staticmethod
    def of(values: Iterable) -> "RationalCoweight":
        return RationalCoweight(tuple(Fraction(v) for v in values))

    def scaled(self, c) -> "RationalCoweight":
        return RationalCoweight(tuple(Fraction(c) * x for x in self.coords))


@dataclass(frozen=True)
class KacCoordinates:
    s: Vec


@dataclass(frozen=True)
class AlcoveInequality:
    """functional . x + offset >= 0"""

    functional: Vec
    offset: int
    label: str

    def value(self, x: Sequence):
        return sum(a * b for a, b in zip(self.functional, x)) + self.offset


@dataclass(frozen=True)
class AutomorphismDescriptor:
    """The data (m, lambda) of a finite-order automorphism tau . Ad_t with
    t = zeta_m^lambda, lambda taken in the invariant cocharacter lattice."""

    family: str
    rank: int
    isogeny: Isogeny
    tau_order: int
    m: int
    lam_coords: Vec        # invariant-basis coordinates of lambda
    lam_ambient: Vec       # expanded in the ambient cocharacter basis
    kac: Vec | None = None


@dataclass(frozen=True)
class ParahoricDescriptor:
    m_min: int
    lam: Vec               # invariant coords, m_min * theta
    descriptor: AutomorphismDescriptor


def _require_compatible(da: DiagramAutomorphism, m: int) -> None:
    if m < 1:
        raise IncompatibleOrder(f"m must be positive, got {m}")
    if m % da.order:
        raise IncompatibleOrder(
            f"automorphism order {da.order} does not divide m={m}")


def fundamental_alcove(fd: FoldedDatum) -> tuple[AlcoveInequality, ...]:
    """The rank+1 affine inequalities cutting out the fundamental alcove."""
    walls = [AlcoveInequality(fd.folded_simple_roots[i], 0, f"root{i + 1}")
             for i in range(fd.rank)]
    walls.append(AlcoveInequality(tuple(-a for a in fd.theta0), 1, "level"))
    return tuple(walls)


def in_alcove(fd: FoldedDatum, x: Sequence) -> bool:
    return all(w.value(x) >= 0 for w in fundamental_alcove(fd))


def enumerate_alcove_points(da: DiagramAutomorphism, m: int) -> tuple[RationalCoweight, ...]:
    """All points of the fundamental alcove lying in (r/m) times the
    invariant lattice, in lexicographic order of their root values."""
    _require_compatible(da, m)
    fd = folded_datum(da)
    k = fd.rank
    labels = fd.kac_labels
    budget = m // da.order
    broots = fd.folded_simple_roots
    points = []
    for vals in _simplex_tuples(tuple(labels[1:]), budget):
        v = solve_int(broots, vals)
        if v is None:
            continue
        points.append(RationalCoweight(tuple(Fraction(da.order * c, m) for c in v)))
    return tuple(points)


def _simplex_tuples(weights: Vec, budget: int):
    """Non-negative integer tuples n with sum(weights * n) <= budget, lex order."""
    k = len(weights)
    out = []

    def rec(i, remaining, prefix):
        if i == k:
            out.append(tuple(prefix))
            return
        for v in range(remaining // weights[i] + 1):
            prefix.append(v)
            rec(i + 1, remaining - v * weights[i], prefix)
            prefix.pop()

    rec(0, budget, [])
    return out


def _reflection(coroot: Vec, root: Vec) -> Mat:
    k = len(coroot)
    return freeze(
        tuple((1 if a == b else 0) - coroot[a] * root[b] for b in range(k))
        for a in range(k))


@dataclass(frozen=True)
class AlcoveReduction:
    """Result y = weyl @ x + translation of walking x into the alcove."""

    point: RationalCoweight
    weyl: Mat
    translation: Vec


def reduce_to_alcove(da: DiagramAutomorphism, x: RationalCoweight) -> RationalCoweight:
    return reduce_to_alcove_with_witness(da, x).point


def reduce_to_alcove_with_witness(da: DiagramAutomorphism, x: RationalCoweight) -> AlcoveReduction:
    """Walk x into the fundamental alcove by reflecting across violated walls."""
    fd = folded_datum(da)
    return _walk(fd, x.coords)


def _walk(fd: FoldedDatum, coords: Sequence) -> AlcoveReduction:
    from .lattice import mat_mul
    k = fd.rank
    refls = [_reflection(fd.folded_simple_coroots[i], fd.folded_simple_roots[i])
             for i in range(k)]
    s0 = _reflection(fd.theta0_check, fd.theta0)
    x = tuple(Fraction(c) for c in coords)
    w = identity_matrix(k)
    t = (0,) * k
    for _ in range(_WALK_CAP):
        for i in range(k):
            if fd.root_value(i, x) < 0:
                x = mat_vec(refls[i], x)
                w = freeze(mat_mul(refls[i], w))
                t = mat_vec(refls[i], t)
                break
        else:
            if fd.theta0_value(x) > 1:
                x = tuple(a + b for a, b in zip(mat_vec(s0, x), fd.theta0_check))
                w = freeze(mat_mul(s0, w))
                t = tuple(a + b for a, b in zip(mat_vec(s0, t), fd.theta0_check))
            else:
                return AlcoveReduction(RationalCoweight(x), w, t)
    raise InternalError("alcove walk failed to terminate")


def enumerate_kac_coordinates(da: DiagramAutomorphism, m: int) -> tuple[KacCoordinates, ...]:
    """All tuples s >= 0 with sum(a_i s_i) = m/r, lexicographically."""
    _require_compatible(da, m)
    fd = folded_datum(da)
    labels = fd.kac_labels
    budget = m // da.order
    out = []
    for s in _simplex_tuples(labels, budget):
        if sum(a * v for a, v in zip(labels, s)) == budget:
            out.append(KacCoordinates(s))
    return tuple(out)


def _apply_node_permutation(perm: Vec, s: Vec) -> Vec:
    out = [0] * len(s)
    for i, v in enumerate(s):
        out[perm[i]] = v
    return tuple(out)


def kac_classes(da: DiagramAutomorphism, m: int) -> tuple[KacCoordinates, ...]:
    """Orbit representatives (lex-minimal) under the affine diagram symmetries."""
    if da.base.isogeny is not Isogeny.ADJOINT:
        raise NotAdjoint("Kac coordinate classes require the adjoint isogeny")
    _require_compatible(da, m)
    fd = folded_datum(da)
    perms = fd.affine_symmetries
    seen = set()
    reps = []
    for kc in enumerate_kac_coordinates(da, m):
        if kc.s in seen:
            continue
        orbit = {_apply_node_permutation(p, kc.s) for p in perms}
        seen.update(orbit)
        reps.append(KacCoordinates(min(orbit)))
    return tuple(reps)


def alcove_to_kac(da: DiagramAutomorphism, x: RationalCoweight, m: int) -> KacCoordinates:
    """Kac coordinates of an alcove point of denominator m."""
    _require_compatible(da, m)
    fd = folded_datum(da)
    budget = m // da.order
    s = []
    for i in range(fd.rank):
        val = fd.root_value(i, x.coords) * budget
        if val.denominator != 1 or val < 0:
            raise NotInLattice(f"point is not in the 1/{budget} coweight lattice")
        s.append(int(val))
    s0 = budget - sum(a * v for a, v in zip(fd.kac_labels[1:], s))
    if s0 < 0:
        raise NotInLattice("point lies outside the fundamental alcove")
    return KacCoordinates((s0, *s))


def kac_to_alcove(da: DiagramAutomorphism, kc: KacCoordinates, m: int) -> RationalCoweight:
    """Alcove point with the given Kac coordinates; inverse of alcove_to_kac."""
    _require_compatible(da, m)
    fd = folded_datum(da)
    v = solve_int(fd.folded_simple_roots, kc.s[1:])
    if v is None:
        raise NotInLattice("Kac coordinates do not define an invariant lattice point")
    return RationalCoweight(tuple(Fraction(da.order * c, m) for c in v))


def class_coweight_of_point(da: DiagramAutomorphism, point: RationalCoweight,
                            m: int) -> RationalCoweight:
    """The cohomology class lambda/m represented by an alcove point of
    denominator m: the point scaled by 1/r, so lambda is the integral vector
    whose root values are the Kac coordinates."""
    lam = []
    for c in point.coords:
        v = Fraction(c, da.order) * m
        if v.denominator != 1:
            raise NotInLattice("alcove point does not have denominator m/r")
        lam.append(int(v))
    return RationalCoweight(tuple(Fraction(c, m) for c in lam))


def _adjoint_twin(da: DiagramAutomorphism) -> DiagramAutomorphism:
    if da.base.isogeny is Isogeny.ADJOINT:
        return da
    return diagram_automorphism(build_root_datum(da.base.type, Isogeny.ADJOINT), da.order)


def affine_diagram_symmetries(fd: FoldedDatum) -> tuple[Vec, ...]:
    """Node permutations of the affine diagram induced by the residual
    translations (norm image modulo the reflection-orbit lattice), computed
    on the adjoint cocharacter lattice."""
    da = _adjoint_twin(fd.automorphism)
    fda = folded_datum(da)
    k = fda.rank
    basis_cols = transpose(fda.invariant_basis)
    nmat = norm_operator(da, da.order).matrix
    image = []
    for j in range(da.rank):
        col = tuple(nmat[i][j] for i in range(da.rank))
        coords = solve_int(basis_cols, col)
        if coords is None:
            raise InternalError("norm image escapes the invariant lattice")
        image.append(coords)
    norm_rows = hnf(image)
    residual = quotient(norm_rows, fda.translation_lattice)

    from .lattice import invert_rational
    fcw_cols = transpose(invert_rational(fda.folded_simple_roots))
    vertices = {(Fraction(0),) * k: 0}
    for i in range(k):
        a = fda.kac_labels[i + 1]
        vert = tuple(c / a for c in fcw_cols[i])
        vertices[vert] = i + 1
    total = sum(fda.kac_labels[1:])
    c0 = Fraction(1, total + 1)
    x0 = tuple(sum(c0 * fcw_cols[i][a] for i in range(k)) for a in range(k))

    perms = set()
    for elem in enumerate_elements(residual, cap=10_000):
        nu = elem.ambient
        red = _walk(fda, tuple(x + n for x, n in zip(x0, nu)))
        perm = [None] * (k + 1)
        for vert, idx in vertices.items():
            img = tuple(
                sum(red.weyl[a][b] * (vert[b] + nu[b]) for b in range(k)) + red.translation[a]
                for a in range(k))
            tgt = vertices.get(img)
            if tgt is None:
                raise InternalError("alcove symmetry does not permute the vertices")
            perm[idx] = tgt
        perms.add(tuple(perm))
    if len(perms) != residual.cardinality:
        raise InternalError("residual translations induced coincident symmetries")
    return tuple(sorted(perms))


def classify_automorphisms(da: DiagramAutomorphism, m: int) -> tuple[AutomorphismDescriptor, ...]:
    """One descriptor per conjugacy class of order-m automorphisms lying over
    the given diagram automorphism; the adjoint lattice is used throughout.

    Within a symmetry class the exponent lambda is taken from the tuple with
    the lexicographically smallest lattice vector, so the class of the plain
    diagram automorphism reports lambda = 0."""
    _require_compatible(da, m)
    twin = _adjoint_twin(da)
    fda = folded_datum(twin)
    perms = fda.affine_symmetries
    out = []
    for kc in kac_classes(twin, m):
        orbit = {_apply_node_permutation(p, kc.s) for p in perms}
        lam = min(solve_int(fda.folded_simple_roots, s[1:]) for s in orbit)
        ambient = tuple(
            sum(lam[i] * fda.invariant_basis[i][j] for i in range(fda.rank))
            for j in range(twin.rank))
        out.append(AutomorphismDescriptor(
            family=da.base.type.family,
            rank=da.base.type.rank,
            isogeny=da.base.isogeny,
            tau_order=da.order,
            m=m,
            lam_coords=lam,
            lam_ambient=ambient,
            kac=kc.s,
        ))
    return tuple(out)


def parahoric_descriptor(da: DiagramAutomorphism, theta: RationalCoweight) -> ParahoricDescriptor:
    """Minimal denominator data (m, lambda) of a rational coweight, with the
    descriptor canonicalized into the fundamental alcove."""
    fd = folded_datum(da)
    m_min = lcm(*(c.denominator for c in theta.coords)) if theta.coords else 1
    lam = tuple(int(c * m_min) for c in theta.coords)
    reduced = reduce_to_alcove(da, theta)
    lam_red = tuple(int(c * m_min) for c in reduced.coords)
    ambient = tuple(
        sum(lam_red[i] * fd.invariant_basis[i][j] for i in range(fd.rank))
        for j in range(da.rank))
    desc = AutomorphismDescriptor(
        family=da.base.type.family,
        rank=da.base.type.rank,
        isogeny=da.base.isogeny,
        tau_order=da.order,
        m=m_min,
        lam_coords=lam_red,
        lam_ambient=ambient,
        kac=None,
    )
    return ParahoricDescriptor(m_min=m_min, lam=lam, descriptor=desc)
