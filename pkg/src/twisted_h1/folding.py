"""Diagram automorphisms, invariant sublattices, norm/averaging operators,
and the folded datum (fixed subgroup type, marked affine node data,
translation lattice, affine diagram symmetries).

Folded simple roots are the restrictions of the ambient simple roots to the
invariant sublattice, indexed by node orbits; the orbit of the two adjacent
middle nodes of an even A-type chain carries a doubled coroot.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property, lru_cache

from .errors import IncompatibleOrder, InternalError, UnsupportedAutomorphism
from .lattice import (Mat, Vec, freeze, hnf, identity_matrix, mat_mul,
                      mat_vec, kernel_basis, solve_int, transpose)
from .roots import (Isogeny, LatticeMap, RootDatum, SimpleType,
                    build_root_datum, cartan_matrix, highest_root_abstract,
                    highest_short_root_abstract)

_UNTWISTED_LABELS = {
    "E6": (1, 1, 2, 2, 3, 2, 1),
    "E7": (1, 2, 2, 3, 4, 3, 2, 1),
    "E8": (1, 2, 3, 4, 6, 5, 4, 3, 2),
    "F4": (1, 2, 3, 4, 2),
    "G2": (1, 3, 2),
}


@dataclass(frozen=True)
class DiagramAutomorphism:
    base: RootDatum
    node_permutation: Vec     # 0-indexed, node_permutation[i] is the image of node i
    order: int
    lattice_action: LatticeMap

    @property
    def rank(self) -> int:
        return self.base.rank


def _permutation_order(perm: Vec) -> int:
    order = 1
    n = len(perm)
    cur = list(range(n))
    while True:
        cur = [perm[i] for i in cur]
        if cur == list(range(n)):
            return order
        order += 1
        if order > n + 1:
            raise InternalError("permutation order runaway")


def _canonical_permutation(st: SimpleType, r: int) -> Vec:
    n = st.rank
    if r == 1:
        return tuple(range(n))
    if r == 2:
        if st.family == "A" and n >= 2:
            return tuple(n - 1 - i for i in range(n))
        if st.family == "D":
            perm = list(range(n))
            perm[n - 2], perm[n - 1] = n - 1, n - 2
            return tuple(perm)
        if st.family == "E" and n == 6:
            return (5, 1, 4, 3, 2, 0)
        raise UnsupportedAutomorphism(f"type {st} admits no order-2 diagram automorphism")
    if r == 3:
        if st.family == "D" and n == 4:
            # triality 3-cycle on the outer nodes 1 -> 3 -> 4 -> 1
            return (2, 1, 3, 0)
        raise UnsupportedAutomorphism(f"type {st} admits no order-3 diagram automorphism")
    raise UnsupportedAutomorphism(f"diagram automorphisms have order 1, 2 or 3, got {r}")


def diagram_automorphism(d: RootDatum, r: int) -> DiagramAutomorphism:
    """The canonical diagram automorphism of order r in Bourbaki numbering."""
    perm = _canonical_permutation(d.type, r)
    c = d.cartan
    n = d.rank
    for i in range(n):
        for j in range(n):
            if c[perm[i]][perm[j]] != c[i][j]:
                raise InternalError(f"permutation does not preserve the Cartan matrix of {d.type}")
    if _permutation_order(perm) != r:
        raise InternalError(f"canonical permutation for {d.type} has wrong order")
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[perm[i]][i] = 1
    return DiagramAutomorphism(d, perm, r, LatticeMap(freeze(rows)))


def node_orbits(da: DiagramAutomorphism) -> tuple[Vec, ...]:
    """Orbits of the node permutation, in the folded numbering."""
    n = da.rank
    seen = set()
    orbs = []
    for i in range(n):
        if i in seen:
            continue
        orb = [i]
        j = da.node_permutation[i]
        while j != i:
            orb.append(j)
            j = da.node_permutation[j]
        seen.update(orb)
        orbs.append(tuple(sorted(orb)))
    orbs.sort(key=min)
    if da.base.type.family == "E" and da.order == 2:
        # fixed nodes first, then the inner and outer swapped pairs
        orbs = [(1,), (3,), (2, 4), (0, 5)]
    return tuple(orbs)


def fixed_subgroup_type(da: DiagramAutomorphism) -> SimpleType:
    st, r = da.base.type, da.order
    if r == 1:
        return st
    n = st.rank
    if st.family == "A":
        if n % 2 == 1:
            return SimpleType("C", (n + 1) // 2)
        half = n // 2
        return SimpleType("B", half) if half >= 2 else SimpleType("A", 1)
    if st.family == "D" and r == 2:
        return SimpleType("B", n - 1)
    if st.family == "D" and r == 3:
        return SimpleType("G", 2)
    if st.family == "E":
        return SimpleType("F", 4)
    raise InternalError(f"no folded type for {st} of order {r}")


def invariant_sublattice(da: DiagramAutomorphism) -> Mat:
    """Saturated basis of the fixed sublattice of the lattice action."""
    n = da.rank
    p = da.lattice_action.matrix
    delta = tuple(tuple(p[i][j] - (1 if i == j else 0) for j in range(n)) for i in range(n))
    return kernel_basis(delta)


def norm_operator(da: DiagramAutomorphism, m: int) -> LatticeMap:
    """1 + tau + ... + tau^(m-1) on the cocharacter lattice."""
    n = da.rank
    total = [[0] * n for _ in range(n)]
    power = LatticeMap(identity_matrix(n))
    for _ in range(m):
        for i in range(n):
            for j in range(n):
                total[i][j] += power.matrix[i][j]
        power = power.compose(da.lattice_action)
    return LatticeMap(freeze(total))


def averaging(da: DiagramAutomorphism) -> LatticeMap:
    """(1/r)(1 + tau + ... + tau^(r-1)) as an exact rational map."""
    n = norm_operator(da, da.order)
    r = Fraction(1, da.order)
    return LatticeMap(tuple(tuple(r * x for x in row) for row in n.matrix))


def kac_label_table(st: SimpleType, r: int) -> Vec:
    """Marks (a_0, ..., a_l') of the affine diagram attached to (type, r),
    with a_0 = 1 in the twisted even-A convention."""
    n = st.rank
    if r == 1:
        if st.family == "A":
            return (1,) * (n + 1)
        if st.family == "B":
            return (1, 1) + (2,) * (n - 1)
        if st.family == "C":
            return (1,) + (2,) * (n - 1) + (1,)
        if st.family == "D":
            return (1, 1) + (2,) * (n - 3) + (1, 1)
        return _UNTWISTED_LABELS[f"{st.family}{n}"]
    if st.family == "A" and r == 2:
        if n % 2 == 1:
            half = (n + 1) // 2
            return (1, 1) + (2,) * (half - 2) + (1,)
        return (1,) + (2,) * (n // 2)
    if st.family == "D" and r == 2:
        return (1,) * n
    if st.family == "E" and r == 2:
        return (1, 1, 2, 3, 2)
    if st.family == "D" and r == 3:
        return (1, 2, 1)
    raise UnsupportedAutomorphism(f"no affine label table for {st} of order {r}")


@dataclass(frozen=True)
class FoldedDatum:
    """Fixed-subgroup data of a diagram automorphism, in invariant coordinates.

    invariant_basis rows are the orbit sums of the ambient cocharacter basis;
    every other field is expressed against those coordinates.
    """

    automorphism: DiagramAutomorphism
    fixed_type: SimpleType
    orbits: tuple[Vec, ...]
    invariant_basis: Mat
    folded_simple_roots: Mat      # row i: functional of beta_i
    folded_simple_coroots: Mat    # row i: coords of the folded coroot
    folded_cartan: Mat
    theta0: Vec                   # functional
    theta0_check: Vec             # coords
    kac_labels: Vec
    translation_lattice: Mat      # HNF rows

    @property
    def rank(self) -> int:
        return len(self.orbits)

    def theta0_value(self, x):
        return sum(a * b for a, b in zip(self.theta0, x))

    def root_value(self, i: int, x):
        return sum(a * b for a, b in zip(self.folded_simple_roots[i], x))

    @cached_property
    def affine_symmetries(self) -> tuple[Vec, ...]:
        from .alcove import affine_diagram_symmetries
        return affine_diagram_symmetries(self)


def _orbit_has_adjacent_pair(cartan: Mat, orbit: Vec) -> bool:
    return any(cartan[a][b] != 0 for a in orbit for b in orbit if a != b)


def _reflection_matrix(coroot: Vec, root: Vec) -> Mat:
    k = len(coroot)
    return freeze(
        tuple((1 if a == b else 0) - coroot[a] * root[b] for b in range(k))
        for a in range(k))


@lru_cache(maxsize=None)
def folded_datum(da: DiagramAutomorphism) -> FoldedDatum:
    d = da.base
    orbs = node_orbits(da)
    k = len(orbs)
    n = d.rank
    basis = freeze(tuple(1 if j in orb else 0 for j in range(n)) for orb in orbs)
    basis_cols = transpose(basis)

    betas = []
    for orb in orbs:
        rep = min(orb)
        func = d.simple_roots[rep]
        betas.append(tuple(sum(func[j] * basis[i][j] for j in range(n)) for i in range(k)))
    betas = freeze(betas)

    corotmat = []
    for orb in orbs:
        mult = 2 if _orbit_has_adjacent_pair(d.cartan, orb) else 1
        amb = [0] * n
        for node in orb:
            for j in range(n):
                amb[j] += mult * d.simple_coroots[node][j]
        coords = solve_int(basis_cols, tuple(amb))
        if coords is None:
            raise InternalError("folded coroot not integral in the invariant basis")
        corotmat.append(coords)
    corotmat = freeze(corotmat)

    fixed = fixed_subgroup_type(da)
    fc = freeze(tuple(sum(corotmat[i][a] * betas[j][a] for a in range(k)) for j in range(k))
                for i in range(k))
    if fc != cartan_matrix(fixed):
        raise InternalError(f"folding of {d.type} (r={da.order}) does not match {fixed}")

    labels = kac_label_table(d.type, da.order)
    theta0 = tuple(sum(labels[i + 1] * betas[i][a] for i in range(k)) for a in range(k))

    even_a = d.type.family == "A" and d.type.rank % 2 == 0 and da.order == 2
    if da.order == 1:
        top = highest_root_abstract(fixed)
        check_coeffs = [(c, 1) for c in top.coroot_coeffs]
    else:
        top = highest_short_root_abstract(fixed)
        den = 2 if even_a else 1
        check_coeffs = [(c, den) for c in top.coroot_coeffs]
    theta0_check = []
    for a in range(k):
        num = sum(c * corotmat[i][a] for i, (c, _) in enumerate(check_coeffs))
        den = check_coeffs[0][1]
        if num % den:
            raise InternalError("dual of the marked root is not integral")
        theta0_check.append(num // den)
    theta0_check = tuple(theta0_check)
    if sum(a * b for a, b in zip(theta0, theta0_check)) != 2:
        raise InternalError("marked root and its dual do not pair to 2")

    refls = [_reflection_matrix(corotmat[i], betas[i]) for i in range(k)]
    orbit = {theta0_check}
    frontier = [theta0_check]
    while frontier:
        nxt = []
        for v in frontier:
            for s in refls:
                w = mat_vec(s, v)
                if w not in orbit:
                    orbit.add(w)
                    nxt.append(w)
        frontier = nxt
        if len(orbit) > 10_000:
            raise InternalError("reflection orbit of the marked coroot failed to close")
    translation = hnf(sorted(orbit))

    return FoldedDatum(
        automorphism=da,
        fixed_type=fixed,
        orbits=orbs,
        invariant_basis=basis,
        folded_simple_roots=betas,
        folded_simple_coroots=corotmat,
        folded_cartan=fc,
        theta0=theta0,
        theta0_check=theta0_check,
        kac_labels=labels,
        translation_lattice=translation,
    )


def ambient_orbit_reflections(da: DiagramAutomorphism) -> tuple[LatticeMap, ...]:
    """Longest element of each orbit parabolic, acting on the full lattice."""
    from .roots import weyl_generators
    gens = weyl_generators(da.base)
    out = []
    for orb in node_orbits(da):
        if _orbit_has_adjacent_pair(da.base.cartan, orb):
            a, b = orb
            w = gens[a].compose(gens[b]).compose(gens[a])
        else:
            w = LatticeMap(identity_matrix(da.rank))
            for node in orb:
                w = w.compose(gens[node])
        out.append(w)
    return tuple(out)


def folded_weyl_generators(da: DiagramAutomorphism) -> tuple[LatticeMap, ...]:
    """Generators of the fixed Weyl group, restricted to invariant coordinates."""
    fd = folded_datum(da)
    basis_cols = transpose(fd.invariant_basis)
    out = []
    for w in ambient_orbit_reflections(da):
        cols = []
        for brow in fd.invariant_basis:
            img = w.apply(brow)
            coords = solve_int(basis_cols, img)
            if coords is None:
                raise InternalError("orbit reflection does not preserve the invariant lattice")
            cols.append(coords)
        out.append(LatticeMap(freeze(transpose(cols))))
    return tuple(out)
