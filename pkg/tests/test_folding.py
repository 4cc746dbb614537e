from fractions import Fraction

import pytest

from twisted_h1.errors import UnsupportedAutomorphism
from twisted_h1.folding import (ambient_orbit_reflections,
                                diagram_automorphism, folded_datum,
                                folded_weyl_generators, invariant_sublattice,
                                kac_label_table, node_orbits, norm_operator,
                                averaging)
from twisted_h1.lattice import (hnf, identity_matrix, kernel_basis,
                                lattice_contains, lattices_equal, mat_mul,
                                mat_vec, quotient, solve_int, transpose)
from twisted_h1.roots import (Isogeny, SimpleType, build_root_datum,
                              cartan_matrix, highest_root_abstract,
                              highest_short_root_abstract)

SC = Isogeny.SIMPLY_CONNECTED
AD = Isogeny.ADJOINT


def da_of(fam, rank, iso, r):
    return diagram_automorphism(build_root_datum(SimpleType(fam, rank), iso), r)


ALL_TWISTED = [("A", 2, 2), ("A", 3, 2), ("A", 4, 2), ("A", 5, 2), ("A", 6, 2),
               ("A", 7, 2), ("D", 3, 2), ("D", 4, 2), ("D", 5, 2), ("D", 6, 2),
               ("E", 6, 2), ("D", 4, 3)]
SOME_UNTWISTED = [("A", 1, 1), ("A", 4, 1), ("B", 3, 1), ("C", 2, 1),
                  ("D", 4, 1), ("E", 6, 1), ("F", 4, 1), ("G", 2, 1)]


def test_canonical_permutations():
    assert da_of("A", 3, SC, 2).node_permutation == (2, 1, 0)
    assert da_of("A", 5, SC, 2).node_permutation == (4, 3, 2, 1, 0)
    assert da_of("D", 4, SC, 2).node_permutation == (0, 1, 3, 2)
    assert da_of("D", 4, SC, 3).node_permutation == (2, 1, 3, 0)
    assert da_of("E", 6, SC, 2).node_permutation == (5, 1, 4, 3, 2, 0)
    for fam, rank in [("A", 4), ("B", 2), ("G", 2)]:
        da = da_of(fam, rank, SC, 1)
        assert da.node_permutation == tuple(range(rank))
        assert da.lattice_action.is_identity


def test_unsupported_orders_rejected():
    for fam, rank, r in [("E", 8, 2), ("A", 5, 3), ("B", 3, 2), ("C", 4, 2),
                         ("F", 4, 2), ("G", 2, 3), ("A", 1, 2), ("D", 5, 3),
                         ("A", 3, 4)]:
        with pytest.raises(UnsupportedAutomorphism):
            da_of(fam, rank, SC, r)


def test_permutation_preserves_cartan_and_has_exact_order():
    for fam, rank, r in ALL_TWISTED:
        da = da_of(fam, rank, SC, r)
        c = da.base.cartan
        p = da.node_permutation
        assert all(c[p[i]][p[j]] == c[i][j]
                   for i in range(rank) for j in range(rank))
        power = da.lattice_action
        for _ in range(r - 1):
            assert not power.is_identity
            power = power.compose(da.lattice_action)
        assert power.is_identity


def test_invariant_sublattice_matches_tabulated_generators():
    # twisted A3: span of coroot_2 and coroot_1 + coroot_3
    assert lattices_equal(invariant_sublattice(da_of("A", 3, SC, 2)),
                          [(0, 1, 0), (1, 0, 1)])
    # twisted A4: sums over the two node orbits
    assert lattices_equal(invariant_sublattice(da_of("A", 4, SC, 2)),
                          [(1, 0, 0, 1), (0, 1, 1, 0)])
    # twisted D5: fixed chain nodes plus the fork orbit sum
    assert lattices_equal(invariant_sublattice(da_of("D", 5, SC, 2)),
                          [(1, 0, 0, 0, 0), (0, 1, 0, 0, 0), (0, 0, 1, 0, 0),
                           (0, 0, 0, 1, 1)])
    # triality D4
    assert lattices_equal(invariant_sublattice(da_of("D", 4, SC, 3)),
                          [(0, 1, 0, 0), (1, 0, 1, 1)])
    # E6 in Bourbaki numbering: fixed nodes 2 and 4, pairs 1+6 and 3+5
    assert lattices_equal(invariant_sublattice(da_of("E", 6, SC, 2)),
                          [(0, 1, 0, 0, 0, 0), (0, 0, 0, 1, 0, 0),
                           (1, 0, 0, 0, 0, 1), (0, 0, 1, 0, 1, 0)])
    # r=1: the full lattice
    da = da_of("B", 3, SC, 1)
    assert lattices_equal(invariant_sublattice(da), identity_matrix(3))


def test_invariant_sublattice_is_saturated_kernel():
    for fam, rank, r in ALL_TWISTED:
        for iso in (SC, AD):
            da = da_of(fam, rank, iso, r)
            p = da.lattice_action.matrix
            delta = tuple(tuple(p[i][j] - (i == j) for j in range(rank))
                          for i in range(rank))
            assert invariant_sublattice(da) == kernel_basis(delta)
            fd = folded_datum(da)
            assert lattices_equal(fd.invariant_basis, invariant_sublattice(da))


def test_norm_operator_examples_and_identity():
    da = da_of("A", 3, SC, 2)
    n = norm_operator(da, 2)
    assert n.apply((1, 0, 0)) == (1, 0, 1)  # coroot_1 + coroot_3
    for m in (2, 4, 6):
        nm = norm_operator(da, m)
        scaled = tuple(tuple((m // 2) * x for x in row)
                       for row in norm_operator(da, 2).matrix)
        assert nm.matrix == scaled
    da1 = da_of("G", 2, SC, 1)
    assert averaging(da1).is_identity
    av = averaging(da_of("D", 4, SC, 3))
    assert av.apply((1, 0, 0, 0)) == (Fraction(1, 3), 0, Fraction(1, 3), Fraction(1, 3))


def test_norm_image_lands_in_invariant_sublattice():
    for fam, rank, r in ALL_TWISTED + SOME_UNTWISTED:
        for iso in (SC, AD):
            da = da_of(fam, rank, iso, r)
            inv = invariant_sublattice(da)
            for m in (r, 2 * r):
                nm = norm_operator(da, m).matrix
                for j in range(rank):
                    col = tuple(nm[i][j] for i in range(rank))
                    assert lattice_contains(inv, col)


def test_fixed_types_and_kac_labels():
    expect = {("A", 3, 2): ("C", 2, (1, 1, 1)),
              ("A", 5, 2): ("C", 3, (1, 1, 2, 1)),
              ("A", 2, 2): ("A", 1, (1, 2)),
              ("A", 4, 2): ("B", 2, (1, 2, 2)),
              ("A", 6, 2): ("B", 3, (1, 2, 2, 2)),
              ("D", 4, 2): ("B", 3, (1, 1, 1, 1)),
              ("D", 5, 2): ("B", 4, (1, 1, 1, 1, 1)),
              ("E", 6, 2): ("F", 4, (1, 1, 2, 3, 2)),
              ("D", 4, 3): ("G", 2, (1, 2, 1)),
              ("A", 4, 1): ("A", 4, (1, 1, 1, 1, 1)),
              ("B", 3, 1): ("B", 3, (1, 1, 2, 2)),
              ("C", 3, 1): ("C", 3, (1, 2, 2, 1)),
              ("D", 4, 1): ("D", 4, (1, 1, 2, 1, 1)),
              ("E", 7, 1): ("E", 7, (1, 2, 2, 3, 4, 3, 2, 1)),
              ("G", 2, 1): ("G", 2, (1, 3, 2))}
    for (fam, rank, r), (ffam, frank, labels) in expect.items():
        fd = folded_datum(da_of(fam, rank, SC, r))
        assert fd.fixed_type == SimpleType(ffam, frank)
        assert fd.kac_labels == labels
        assert fd.kac_labels[0] == 1


def test_marked_root_recomputed_from_closure():
    # theta0 = sum of labels times folded simple roots must agree with the
    # highest (short) root of the fixed type computed by reflection closure
    for fam, rank, r in ALL_TWISTED + SOME_UNTWISTED:
        fd = folded_datum(da_of(fam, rank, SC, r))
        if r == 1:
            top = highest_root_abstract(fd.fixed_type).coeffs
            scale = 1
        else:
            top = highest_short_root_abstract(fd.fixed_type).coeffs
            scale = 2 if fam == "A" and rank % 2 == 0 else 1
        assert fd.kac_labels[1:] == tuple(scale * c for c in top)
        k = fd.rank
        recomputed = tuple(
            sum(fd.kac_labels[i + 1] * fd.folded_simple_roots[i][a] for i in range(k))
            for a in range(k))
        assert recomputed == fd.theta0


def test_folded_cartan_matches_fixed_type():
    for fam, rank, r in ALL_TWISTED + SOME_UNTWISTED:
        for iso in (SC, AD):
            fd = folded_datum(da_of(fam, rank, iso, r))
            assert fd.folded_cartan == cartan_matrix(fd.fixed_type)


def test_translation_lattice_inside_norm_image():
    # the reflection-orbit lattice embeds in the norm image for both isogenies,
    # with equality exactly in the no-outer-symmetry twisted cases
    equality_cases = {("A", 2, 2), ("A", 4, 2), ("A", 6, 2), ("E", 6, 2), ("D", 4, 3)}
    for fam, rank, r in ALL_TWISTED:
        for iso in (SC, AD):
            da = da_of(fam, rank, iso, r)
            fd = folded_datum(da)
            nm = norm_operator(da, r).matrix
            cols = transpose(fd.invariant_basis)
            image = hnf([solve_int(cols, tuple(nm[i][j] for i in range(rank)))
                         for j in range(rank)])
            for row in fd.translation_lattice:
                assert lattice_contains(image, row)
            if iso is SC:
                assert lattices_equal(image, fd.translation_lattice)
            elif (fam, rank, r) in equality_cases:
                assert lattices_equal(image, fd.translation_lattice)


def test_cyclic_lattice_cohomology_vanishes():
    # kernel of the norm equals the image of (action - 1): the degree-one
    # cohomology of the permutation lattice is zero
    for fam, rank, r in ALL_TWISTED:
        for iso in (SC, AD):
            da = da_of(fam, rank, iso, r)
            for m in (r, 2 * r, 3 * r):
                nm = norm_operator(da, m).matrix
                ker = kernel_basis(nm)
                p = da.lattice_action.matrix
                delta = [tuple(p[i][j] - (i == j) for i in range(rank))
                         for j in range(rank)]
                assert lattices_equal(ker, hnf(delta))


def test_folded_weyl_generator_count_and_order():
    da = da_of("A", 3, SC, 2)
    gens = folded_weyl_generators(da)
    assert len(gens) == 2
    group = {identity_matrix(2)}
    frontier = list(group)
    while frontier:
        nxt = []
        for w in frontier:
            for g in gens:
                x = mat_mul(g.matrix, w)
                if x not in group:
                    group.add(x)
                    nxt.append(x)
        frontier = nxt
    assert len(group) == 8  # Weyl group of C2


def test_folded_generators_equal_direct_reflections():
    for fam, rank, r in ALL_TWISTED:
        for iso in (SC, AD):
            da = da_of(fam, rank, iso, r)
            fd = folded_datum(da)
            k = fd.rank
            gens = folded_weyl_generators(da)
            for i, g in enumerate(gens):
                beta = fd.folded_simple_roots[i]
                cor = fd.folded_simple_coroots[i]
                refl = tuple(tuple((a == b) - cor[a] * beta[b] for b in range(k))
                             for a in range(k))
                assert g.matrix == refl


def test_r1_folded_generators_are_simple_reflections():
    from twisted_h1.roots import weyl_generators
    da = da_of("B", 3, SC, 1)
    assert tuple(g.matrix for g in folded_weyl_generators(da)) == \
        tuple(g.matrix for g in weyl_generators(da.base))


def test_ambient_reflections_preserve_invariant_and_norm_lattices():
    for fam, rank, r in ALL_TWISTED:
        da = da_of(fam, rank, SC, r)
        inv = invariant_sublattice(da)
        nm = norm_operator(da, r).matrix
        navigation = hnf([tuple(nm[i][j] for i in range(rank)) for j in range(rank)])
        for w in ambient_orbit_reflections(da):
            for row in inv:
                assert lattice_contains(inv, w.apply(row))
            for row in navigation:
                assert lattice_contains(navigation, w.apply(row))


def test_affine_symmetry_groups():
    orders = {("A", 1, 1): 2, ("A", 2, 1): 3, ("A", 5, 1): 6, ("B", 3, 1): 2,
              ("C", 4, 1): 2, ("D", 4, 1): 4, ("D", 5, 1): 4, ("E", 6, 1): 3,
              ("E", 7, 1): 2, ("E", 8, 1): 1, ("F", 4, 1): 1, ("G", 2, 1): 1,
              ("A", 3, 2): 2, ("A", 5, 2): 2, ("A", 2, 2): 1, ("A", 4, 2): 1,
              ("D", 3, 2): 2, ("D", 4, 2): 2, ("D", 5, 2): 2, ("E", 6, 2): 1,
              ("D", 4, 3): 1}
    for (fam, rank, r), size in orders.items():
        for iso in (SC, AD):
            fd = folded_datum(da_of(fam, rank, iso, r))
            perms = fd.affine_symmetries
            assert len(perms) == size, (fam, rank, r, iso)
            ids = tuple(range(fd.rank + 1))
            assert ids in perms
            labels = (1,) + fd.kac_labels[1:]
            full = fd.kac_labels
            for p in perms:
                assert all(full[p[i]] == full[i] for i in range(fd.rank + 1))
            # closed under composition
            as_set = set(perms)
            for p in perms:
                for q in perms:
                    comp = tuple(p[q[i]] for i in range(len(p)))
                    assert comp in as_set


def test_twisted_a_series_symmetry_swaps_first_two_nodes():
    for rank in (3, 5, 7):
        fd = folded_datum(da_of("A", rank, AD, 2))
        nontrivial = [p for p in fd.affine_symmetries if p != tuple(range(fd.rank + 1))]
        assert len(nontrivial) == 1
        p = nontrivial[0]
        assert p[0] == 1 and p[1] == 0
        assert all(p[i] == i for i in range(2, fd.rank + 1))


def test_node_orbit_order_matches_folded_numbering():
    fd = folded_datum(da_of("E", 6, SC, 2))
    assert fd.orbits == ((1,), (3,), (2, 4), (0, 5))
    fd = folded_datum(da_of("D", 4, SC, 3))
    assert fd.orbits == ((0, 2, 3), (1,))
    fd = folded_datum(da_of("A", 4, SC, 2))
    assert fd.orbits == ((0, 3), (1, 2))
