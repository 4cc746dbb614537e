"""Embedded reference tables and closed-form counts, recomputed on demand.

Every check carries the mathematical fact it pins (source), the embedded
expected value, and the freshly computed value.  run_reference_checks is
the engine behind the paper-tables CLI subcommand and the acceptance suite.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from typing import Iterable, Iterator, Optional

from .alcove import (alcove_to_kac, enumerate_alcove_points,
                     enumerate_kac_coordinates, kac_classes, kac_to_alcove)
from .bundles import CoveringData, RamifiedOrbit, component_count, covering_exists
from .cohomology import group_class_of, h1_group, h1_torus
from .folding import diagram_automorphism, folded_datum, norm_operator
from .lattice import hnf, quotient, solve_int, transpose
from .oracle import brute_force_h1_group, brute_force_h1_torus
from .roots import Isogeny, SimpleType, build_root_datum

SC = Isogeny.SIMPLY_CONNECTED
AD = Isogeny.ADJOINT


@dataclass(frozen=True)
class CheckResult:
    check_id: str
    criterion: int
    source: str
    expected: object
    computed: object
    ok: bool
    note: str = ""


def _da(fam: str, rank: int, iso: Isogeny, r: int):
    return diagram_automorphism(build_root_datum(SimpleType(fam, rank), iso), r)


def _result(check_id, criterion, source, expected, computed, note=""):
    return CheckResult(check_id, criterion, source, expected, computed,
                       expected == computed, note)


def _norm_factors(factors: Iterable[int]) -> tuple[int, ...]:
    return tuple(sorted(d for d in factors if d > 1))


# -- criterion 1: torus cohomology table ------------------------------------

def _criterion1() -> Iterator[CheckResult]:
    cases = []
    for rank in (3, 5, 7):
        half = (rank + 1) // 2
        cases.append((("A", rank, 2), f"twisted A{rank} torus",
                      lambda m, l=half: [m] + [m // 2] * (l - 1)))
    for rank in (2, 4, 6, 8):
        half = rank // 2
        cases.append((("A", rank, 2), f"twisted A{rank} torus",
                      lambda m, l=half: [m // 2] * l))
    for rank in range(3, 9):
        low = rank - 1
        cases.append((("D", rank, 2), f"twisted D{rank} torus",
                      lambda m, l=low: [m] * (l - 1) + [m // 2]))
    cases.append((("E", 6, 2), "twisted E6 torus", lambda m: [m, m, m // 2, m // 2]))
    cases.append((("D", 4, 3), "triality D4 torus", lambda m: [m, m // 3]))
    for (fam, rank, r), src, formula in cases:
        da = _da(fam, rank, SC, r)
        for m in (r, 2 * r, 3 * r):
            got = _norm_factors(h1_torus(da, m).invariant_factors)
            want = _norm_factors(formula(m))
            yield _result(f"1:{fam}{rank}:r{r}:m{m}", 1, src + f", m={m}", want, got)


# -- criterion 2: class counts and coroot representatives at m = r -----------

_D_SERIES_NOTE = ("tabulated two-element count holds only at low rank: brute-force "
                  "cocycle enumeration, the orbit method and the alcove count all "
                  "agree on the computed value, and a two-element set is ruled out "
                  "by orbit-size divisibility; the class of the sum of the first "
                  "and third simple coroots is an extra fixed class")


def _criterion2() -> Iterator[CheckResult]:
    singles = [("A", 1, 1), ("A", 4, 1), ("B", 3, 1), ("C", 2, 1), ("D", 4, 1),
               ("E", 6, 1), ("F", 4, 1), ("G", 2, 1),
               ("A", 2, 2), ("A", 4, 2), ("A", 6, 2), ("A", 8, 2)]
    doubles = [("A", 3, 2, (1,)), ("A", 5, 2, (2,)), ("A", 7, 2, (3,)),
               ("D", 3, 2, (0,)), ("D", 4, 2, (0, 1)), ("D", 5, 2, (0, 1, 2)),
               ("D", 6, 2, (0, 1, 2, 3)), ("D", 7, 2, (0, 1, 2, 3, 4)),
               ("D", 8, 2, (0, 1, 2, 3, 4, 5)),
               ("E", 6, 2, (1, 3)), ("D", 4, 3, (1,))]
    for fam, rank, r in singles:
        da = _da(fam, rank, SC, r)
        got = h1_group(da, r, "orbit").cardinality
        yield _result(f"2:{fam}{rank}:r{r}:count", 2,
                      f"{fam}{rank} r={r} class count at m=r", 1, got)
    for fam, rank, r, nodes in doubles:
        da = _da(fam, rank, SC, r)
        cs = h1_group(da, r, "orbit")
        note = _D_SERIES_NOTE if fam == "D" and r == 2 and rank >= 5 else ""
        yield _result(f"2:{fam}{rank}:r{r}:count", 2,
                      f"{fam}{rank} r={r} class count at m=r", 2, cs.cardinality,
                      note if cs.cardinality != 2 else "")
        nontrivial = [c for c in cs.classes if any(c.coords)]
        ok = len(nontrivial) == 1
        if ok:
            target = nontrivial[0]
            for node in nodes:
                coroot = tuple(1 if j == node else 0 for j in range(rank))
                cls = group_class_of(da, r, coroot)
                ok = ok and cls == target
        yield _result(f"2:{fam}{rank}:r{r}:coroot", 2,
                      f"{fam}{rank} r={r} invariant simple coroot represents "
                      "the nontrivial class", True, ok,
                      note if not ok else "")


# -- criterion 3: closed-form counts for the twisted A3/A5 series ------------

def _sl4_formula(k: int) -> int:
    half = k // 2
    return (half + 1) ** 2 if k % 2 == 0 else (half + 1) * (half + 2)


def _sl6_formula(k: int) -> int:
    half = k // 2
    if k % 2 == 0:
        return half * (half + 1) * (half + 2) // 3
    return (half + 1) * (half + 2) * (half + 3) // 3


_SL6_NOTE = ("tabulated even-case closed form is not reproducible: the orbit "
             "method, the alcove count, and brute-force cocycle enumeration "
             "all agree on the computed value, and the tabulated value is "
             "ruled out by the orbit-size divisibility constraint; the "
             "consistent closed form is (l+1)(l+2)(2l+3)/6 at k=2l")


def _criterion3() -> Iterator[CheckResult]:
    da4 = _da("A", 3, SC, 2)
    da6 = _da("A", 5, SC, 2)
    for k in range(1, 7):
        m = 2 * k
        got = (h1_group(da4, m, "orbit").cardinality,
               h1_group(da4, m, "alcove").cardinality)
        want = (_sl4_formula(k),) * 2
        yield _result(f"3:A3:k{k}", 3, f"twisted A3 count at m={m}, orbit and alcove",
                      want, got)
    for k in range(1, 7):
        m = 2 * k
        got = (h1_group(da6, m, "orbit").cardinality,
               h1_group(da6, m, "alcove").cardinality)
        want = (_sl6_formula(k),) * 2
        note = _SL6_NOTE if k % 2 == 0 and want != got else ""
        yield _result(f"3:A5:k{k}", 3, f"twisted A5 count at m={m}, orbit and alcove",
                      want, got, note)


# -- criterion 4: counts for the trivial diagram automorphism ----------------

def _criterion4() -> Iterator[CheckResult]:
    for n in range(2, 8):
        da = _da("A", n - 1, SC, 1)
        got = h1_group(da, 2, "orbit").cardinality
        yield _result(f"4:A{n - 1}:m2", 4, f"order-2 twist of the rank-{n - 1} "
                      "special linear group", (n + 2) // 2, got)
    da = _da("A", 1, SC, 1)
    for m in range(1, 9):
        got = h1_group(da, m, "orbit").cardinality
        yield _result(f"4:A1:m{m}", 4, f"rank-1 count at m={m}", (m + 2) // 2, got)


# -- criterion 5: adjoint parity --------------------------------------------

def _criterion5() -> Iterator[CheckResult]:
    for n in (3, 4, 5, 6, 7, 8):
        da = _da("A", n - 1, AD, 2)
        got = len(kac_classes(da, 2))
        yield _result(f"5:A{n - 1}", 5, f"adjoint A{n - 1} involution classes",
                      2 if n % 2 == 0 else 1, got)


# -- criterion 6: alcove/Kac bijection ---------------------------------------

def _legal_pairs(max_rank: int):
    pairs = []
    for rank in range(1, max_rank + 1):
        pairs.append(("A", rank, 1))
        if rank >= 2:
            pairs.append(("A", rank, 2))
    for rank in range(2, max_rank + 1):
        pairs.append(("B", rank, 1))
        pairs.append(("C", rank, 1))
    for rank in range(3, max_rank + 1):
        pairs.append(("D", rank, 1))
        pairs.append(("D", rank, 2))
    if max_rank >= 6:
        pairs.append(("E", 6, 1))
        pairs.append(("E", 6, 2))
    if max_rank >= 4:
        pairs.append(("F", 4, 1))
        pairs.append(("D", 4, 3))
    pairs.append(("G", 2, 1))
    return pairs


def _criterion6() -> Iterator[CheckResult]:
    for fam, rank, r in _legal_pairs(6):
        da = _da(fam, rank, AD, r)
        counts = []
        expect = []
        roundtrip = True
        for mult in (1, 2, 3, 4):
            m = r * mult
            pts = enumerate_alcove_points(da, m)
            kcs = enumerate_kac_coordinates(da, m)
            counts.append(len(pts))
            expect.append(len(kcs))
            for kc in kcs:
                if alcove_to_kac(da, kac_to_alcove(da, kc, m), m).s != kc.s:
                    roundtrip = False
        yield _result(f"6:{fam}{rank}:r{r}", 6,
                      f"adjoint {fam}{rank} r={r} alcove/Kac bijection, m/r=1..4",
                      (expect, True), (counts, roundtrip))


# -- criterion 7: brute-force oracle agreement -------------------------------

def _criterion7() -> Iterator[CheckResult]:
    grid = [("A", 1), ("A", 2), ("A", 3), ("A", 4), ("B", 2), ("B", 3), ("B", 4),
            ("C", 2), ("C", 3), ("C", 4), ("D", 3), ("D", 4), ("F", 4), ("G", 2)]
    cap = 10 ** 7
    for fam, rank in grid:
        orders = [1]
        if fam == "A" and rank >= 2:
            orders.append(2)
        if fam == "D":
            orders.append(2)
        if (fam, rank) == ("D", 4):
            orders.append(3)
        for r in orders:
            for iso in (SC, AD):
                da = _da(fam, rank, iso, r)
                pairs = []
                ok = True
                for m in range(r, 7, r):
                    if m ** rank > cap:
                        continue
                    bt = brute_force_h1_torus(da, m)
                    ht = h1_torus(da, m)
                    bg = brute_force_h1_group(da, m)
                    hg = h1_group(da, m, "orbit")
                    pairs.append(m)
                    ok = ok and bt.count == ht.cardinality and bg.count == hg.cardinality
                    ok = ok and bt.cocycle_count == bt.count * bt.coboundary_order
                yield _result(f"7:{fam}{rank}:r{r}:{iso.value}", 7,
                              f"oracle agreement for {fam}{rank} r={r} "
                              f"({iso.value}), m in {pairs}", True, ok)


# -- criterion 8: norm image modulo the reflection-orbit lattice -------------

def _criterion8() -> Iterator[CheckResult]:
    cases = ([("A", 2 * l - 1, 2, (2,)) for l in range(2, 7)]
             + [("D", l + 1, 2, (2,)) for l in range(2, 7)]
             + [("A", 2 * l, 2, ()) for l in range(1, 4)]
             + [("E", 6, 2, ()), ("D", 4, 3, ())])
    for fam, rank, r, want in cases:
        da = _da(fam, rank, AD, r)
        fd = folded_datum(da)
        nmat = norm_operator(da, r).matrix
        cols = transpose(fd.invariant_basis)
        image = [solve_int(cols, tuple(nmat[i][j] for i in range(rank)))
                 for j in range(rank)]
        q = quotient(hnf(image), fd.translation_lattice)
        yield _result(f"8:{fam}{rank}:r{r}", 8,
                      f"adjoint {fam}{rank} r={r} norm image modulo the "
                      "orbit lattice", want, q.invariant_factors)


# -- criterion 9: component counts -------------------------------------------

def _covering(entries) -> CoveringData:
    orbits = tuple(RamifiedOrbit(str(i), m, SimpleType(fam, rank), r)
                   for i, (fam, rank, r, m) in enumerate(entries))
    return CoveringData(1, orbits)


def _criterion9() -> Iterator[CheckResult]:
    for fam, rank, r in [("A", 3, 2), ("D", 4, 2), ("E", 6, 2), ("D", 4, 3)]:
        for s in range(5):
            cd = _covering([(fam, rank, r, r)] * s)
            yield _result(f"9:{fam}{rank}:r{r}:s{s}", 9,
                          f"{fam}{rank} r={r} components with {s} twisted points",
                          2 ** s, component_count(cd))
    for n in range(2, 7):
        for s in range(4):
            cd = _covering([("A", n - 1, 1, 2)] * s)
            yield _result(f"9:A{n - 1}:triv:s{s}", 9,
                          f"A{n - 1} trivial action, {s} points of order 2",
                          ((n + 2) // 2) ** s, component_count(cd))


# -- criterion 10: covering existence grid -----------------------------------

def _criterion10() -> Iterator[CheckResult]:
    failures_expected = []
    failures_computed = []
    for g in range(3):
        for s in range(4):
            for ms in itertools.combinations_with_replacement(range(2, 6), s):
                check = covering_exists(g, ms)
                should_fail = (g == 0 and s == 1) or (
                    g == 0 and s == 2 and ms[0] != ms[1])
                if should_fail:
                    failures_expected.append((g, ms))
                if not check.exists:
                    failures_computed.append((g, ms))
    yield _result("10:grid", 10,
                  "covering existence over the exhaustive grid g<=2, s<=3, m<=5",
                  sorted(failures_expected), sorted(failures_computed))


_CRITERIA = {1: _criterion1, 2: _criterion2, 3: _criterion3, 4: _criterion4,
             5: _criterion5, 6: _criterion6, 7: _criterion7, 8: _criterion8,
             9: _criterion9, 10: _criterion10}


def run_reference_checks(criteria: Optional[Iterable[int]] = None) -> list[CheckResult]:
    selected = sorted(_CRITERIA) if criteria is None else sorted(set(criteria))
    out: list[CheckResult] = []
    for c in selected:
        out.extend(_CRITERIA[c]())
    return out
