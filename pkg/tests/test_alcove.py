import random
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from twisted_h1.alcove import (RationalCoweight, alcove_to_kac,
                               classify_automorphisms, class_coweight_of_point,
                               enumerate_alcove_points,
                               enumerate_kac_coordinates, fundamental_alcove,
                               in_alcove, kac_classes, kac_to_alcove,
                               parahoric_descriptor, reduce_to_alcove,
                               reduce_to_alcove_with_witness)
from twisted_h1.cohomology import h1_group, h1_torus
from twisted_h1.errors import IncompatibleOrder, NotAdjoint
from twisted_h1.folding import diagram_automorphism, folded_datum
from twisted_h1.lattice import lattice_contains
from twisted_h1.roots import Isogeny, SimpleType, build_root_datum

SC = Isogeny.SIMPLY_CONNECTED
AD = Isogeny.ADJOINT


def da_of(fam, rank, iso, r):
    return diagram_automorphism(build_root_datum(SimpleType(fam, rank), iso), r)


def test_rank1_alcove_inequalities():
    fd = folded_datum(da_of("A", 1, SC, 1))
    walls = fundamental_alcove(fd)
    assert len(walls) == 2
    # 0 <= 2c and 2c <= 1 for points c * coroot
    assert walls[0].functional == (2,) and walls[0].offset == 0
    assert walls[1].functional == (-2,) and walls[1].offset == 1
    assert in_alcove(fd, (Fraction(1, 2),))
    assert not in_alcove(fd, (Fraction(3, 4),))


def test_twisted_a3_alcove_inequalities():
    fd = folded_datum(da_of("A", 3, SC, 2))
    walls = fundamental_alcove(fd)
    assert [w.functional for w in walls] == [(2, -1), (-2, 2), (0, -1)]
    assert [w.offset for w in walls] == [0, 0, 1]
    origin = (Fraction(0), Fraction(0))
    assert all(w.value(origin) >= 0 for w in walls)


def test_alcove_point_counts():
    assert len(enumerate_alcove_points(da_of("A", 3, SC, 2), 4)) == 4
    assert len(enumerate_alcove_points(da_of("A", 3, SC, 2), 6)) == 6
    pts = enumerate_alcove_points(da_of("D", 4, SC, 3), 3)
    assert RationalCoweight((Fraction(0), Fraction(0))) in pts
    with pytest.raises(IncompatibleOrder):
        enumerate_alcove_points(da_of("A", 3, SC, 2), 3)


def test_alcove_points_lie_in_alcove_and_lattice():
    for fam, rank, iso, r, m in [("A", 3, SC, 2, 6), ("A", 4, AD, 2, 4),
                                 ("E", 6, AD, 2, 4), ("G", 2, SC, 1, 3)]:
        da = da_of(fam, rank, iso, r)
        fd = folded_datum(da)
        for p in enumerate_alcove_points(da, m):
            assert in_alcove(fd, p.coords)
            assert all((c * m / r).denominator == 1 for c in p.coords)


def test_reduce_examples():
    da = da_of("A", 1, SC, 1)
    assert reduce_to_alcove(da, RationalCoweight((Fraction(1),))).coords == (Fraction(0),)
    x = RationalCoweight((Fraction(1, 3),))
    assert reduce_to_alcove(da, x) == x


@given(st.lists(st.fractions(min_value=-20, max_value=20, max_denominator=12),
                min_size=2, max_size=2))
@settings(max_examples=60, deadline=None)
def test_reduce_idempotent_and_witnessed(coords):
    da = da_of("A", 3, SC, 2)
    fd = folded_datum(da)
    x = RationalCoweight(tuple(coords))
    red = reduce_to_alcove_with_witness(da, x)
    assert in_alcove(fd, red.point.coords)
    assert reduce_to_alcove(da, red.point) == red.point
    k = fd.rank
    y = tuple(sum(red.weyl[a][b] * x.coords[b] for b in range(k)) + red.translation[a]
              for a in range(k))
    assert y == red.point.coords
    assert lattice_contains(fd.translation_lattice, red.translation)


def test_reduce_invariant_under_affine_moves():
    rng = random.Random(5)
    for fam, rank, iso, r in [("A", 3, SC, 2), ("D", 4, SC, 3), ("C", 2, AD, 1)]:
        da = da_of(fam, rank, iso, r)
        fd = folded_datum(da)
        k = fd.rank
        gens = fd.translation_lattice
        from twisted_h1.folding import folded_weyl_generators
        ws = folded_weyl_generators(da)
        for _ in range(15):
            x = tuple(Fraction(rng.randint(-30, 30), rng.choice([1, 2, 3, 6]))
                      for _ in range(k))
            base = reduce_to_alcove(da, RationalCoweight(x))
            mu = gens[rng.randrange(len(gens))]
            w = ws[rng.randrange(len(ws))]
            moved = tuple(sum(w.matrix[a][b] * x[b] for b in range(k)) + mu[a]
                          for a in range(k))
            assert reduce_to_alcove(da, RationalCoweight(moved)) == base


def test_kac_enumeration_examples():
    assert [k.s for k in enumerate_kac_coordinates(da_of("A", 1, SC, 1), 2)] == \
        [(0, 2), (1, 1), (2, 0)]
    assert sorted(k.s for k in enumerate_kac_coordinates(da_of("A", 3, SC, 2), 2)) == \
        [(0, 0, 1), (0, 1, 0), (1, 0, 0)]
    # at m = r only unit-label nodes can carry the budget
    for fam, rank, r in [("A", 4, 2), ("E", 6, 2), ("D", 4, 3), ("G", 2, 1)]:
        da = da_of(fam, rank, SC, r)
        fd = folded_datum(da)
        tuples = [k.s for k in enumerate_kac_coordinates(da, r)]
        assert (1,) + (0,) * fd.rank in tuples
        for s in tuples:
            assert sum(a * v for a, v in zip(fd.kac_labels, s)) == 1
    with pytest.raises(IncompatibleOrder):
        enumerate_kac_coordinates(da_of("D", 4, SC, 3), 2)


def test_kac_classes_examples_and_gate():
    assert len(kac_classes(da_of("A", 1, AD, 1), 2)) == 2
    assert len(kac_classes(da_of("A", 3, AD, 2), 2)) == 2
    assert len(kac_classes(da_of("A", 4, AD, 2), 2)) == 1
    with pytest.raises(NotAdjoint):
        kac_classes(da_of("A", 3, SC, 2), 2)


def test_kac_classes_reps_are_lex_minimal_canonical():
    da = da_of("A", 3, AD, 2)
    fd = folded_datum(da)
    perms = fd.affine_symmetries
    for m in (2, 4, 6):
        reps = kac_classes(da, m)
        seen = set()
        for kc in reps:
            orbit = set()
            for p in perms:
                out = [0] * len(kc.s)
                for i, v in enumerate(kc.s):
                    out[p[i]] = v
                orbit.add(tuple(out))
            assert kc.s == min(orbit)
            assert not orbit & seen
            seen |= orbit
        assert len(seen) == len(enumerate_kac_coordinates(da, m))


def test_alcove_kac_roundtrip():
    for fam, rank, r in [("A", 3, 2), ("A", 4, 2), ("D", 4, 2), ("E", 6, 2),
                         ("D", 4, 3), ("B", 3, 1), ("G", 2, 1)]:
        da = da_of(fam, rank, AD, r)
        for mult in (1, 2, 3):
            m = r * mult
            for kc in enumerate_kac_coordinates(da, m):
                x = kac_to_alcove(da, kc, m)
                assert alcove_to_kac(da, x, m).s == kc.s
                assert sum(a * v for a, v in
                           zip(folded_datum(da).kac_labels, kc.s)) == m // r
            zero = RationalCoweight((Fraction(0),) * folded_datum(da).rank)
            assert alcove_to_kac(da, zero, m).s == \
                (m // r,) + (0,) * folded_datum(da).rank


def test_alcove_and_kac_counts_agree_for_adjoint():
    for fam, rank, r in [("A", 5, 2), ("D", 5, 2), ("C", 4, 1), ("F", 4, 1)]:
        da = da_of(fam, rank, AD, r)
        for mult in (1, 2, 3, 4):
            m = r * mult
            assert len(enumerate_alcove_points(da, m)) == \
                len(enumerate_kac_coordinates(da, m))


def test_classify_automorphism_examples():
    descs = classify_automorphisms(da_of("A", 1, AD, 1), 2)
    assert len(descs) == 2
    lams = sorted(d.lam_ambient for d in descs)
    assert lams[0] == (0,)
    assert lams[1] == (1,)
    descs = classify_automorphisms(da_of("D", 4, SC, 3), 3)
    assert len(descs) == len(kac_classes(da_of("D", 4, AD, 3), 3))
    assert any(d.lam_coords == (0, 0) for d in descs)
    # m = r with lambda = 0 is the diagram automorphism itself
    descs = classify_automorphisms(da_of("E", 6, SC, 2), 2)
    trivial = [d for d in descs if not any(d.lam_coords)]
    assert len(trivial) == 1
    assert trivial[0].m == 2 and trivial[0].tau_order == 2


def test_classify_uses_adjoint_lattice_for_both_isogenies():
    a = classify_automorphisms(da_of("A", 3, SC, 2), 4)
    b = classify_automorphisms(da_of("A", 3, AD, 2), 4)
    assert [d.kac for d in a] == [d.kac for d in b]
    assert [d.lam_coords for d in a] == [d.lam_coords for d in b]


def test_parahoric_descriptor_examples():
    da = da_of("A", 3, SC, 2)
    fd = folded_datum(da)
    pd = parahoric_descriptor(da, RationalCoweight((Fraction(0), Fraction(1, 2))))
    assert pd.m_min == 2
    lam_ambient = tuple(sum(pd.lam[i] * fd.invariant_basis[i][j] for i in range(fd.rank))
                        for j in range(da.rank))
    assert lam_ambient == (0, 1, 0)
    assert in_alcove(fd, tuple(Fraction(c, pd.m_min) for c in pd.descriptor.lam_coords))
    pd0 = parahoric_descriptor(da, RationalCoweight((Fraction(0), Fraction(0))))
    assert pd0.m_min == 1 and pd0.lam == (0, 0)
    assert pd0.descriptor.lam_coords == (0, 0)


def test_parahoric_denominators_stable_under_translation():
    # translating by the reflection-orbit lattice preserves the minimal m
    da = da_of("A", 3, SC, 2)
    fd = folded_datum(da)
    theta = (Fraction(1, 3), Fraction(1, 6))
    base = parahoric_descriptor(da, RationalCoweight(theta)).m_min
    for mu in fd.translation_lattice:
        shifted = tuple(a + b for a, b in zip(theta, mu))
        assert parahoric_descriptor(da, RationalCoweight(shifted)).m_min == base


def test_class_coweight_scaling():
    da = da_of("A", 3, SC, 2)
    pts = enumerate_alcove_points(da, 2)
    classes = {class_coweight_of_point(da, p, 2).coords for p in pts}
    torus = h1_torus(da, 2)
    assert len(classes) == torus.cardinality == 2
