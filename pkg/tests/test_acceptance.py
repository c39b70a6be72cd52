"""Acceptance suite: one test per criterion, each printing a PASS/FAIL line in the summary.

Run alone with  python3 tests/test_acceptance.py  or  pytest tests/test_acceptance.py.
"""

import random
import sys
import time
from collections import Counter
from itertools import permutations

import pytest

from support import S, TREFOIL, corpus, fixture, random_diagrams, signature
from seifert_links.builders import braid_closure, classical_presentation, sketch, tie_braid
from seifert_links.diagram import components
from seifert_links.fox import fundamental_identity_holds
from seifert_links.grouppres import Word, build_presentation, empty_link, seifert_group
from seifert_links.homology import ambient_h1, class_is_trivial, h1, h1_diagram, minor_gcd, matmul, \
    smith_normal_form
from seifert_links.moves import MoveError, MoveSpec, apply_local_move, load_fixture_pairs
from seifert_links.ring import LaurentPoly, determinant, format_poly, normalize
from seifert_links.twisted import connected_sum_check, twisted_alexander

REQUIRED_MOVES = ("omega6", "omega7O", "omega7N", "omega8plus", "omega8minus",
                  "omega9O", "omega9S", "omega9N")


def poly(coeffs_high_to_low):
    return LaurentPoly.from_coeffs(list(reversed(coeffs_high_to_low)))


# -- 1 -------------------------------------------------------------------------------------------

def test_criterion_1_example61_end_to_end():
    t0 = time.perf_counter()
    d = fixture("example61.diag")
    p = build_presentation(d)
    H = h1(p)
    assert (H.rank, H.torsion) == (3, (2,))
    deltas = {t.sigma.label(): t for t in twisted_alexander(p, H=H)}
    assert set(deltas) == {"1", "-1"}
    assert normalize(deltas["1"].value, deltas["1"].convention) == poly([1, -2, 0, 2, -1])
    assert normalize(deltas["-1"].value, deltas["-1"].convention) == poly([1, 0, -1])
    assert str(deltas["1"]) == "z^4 - 2*z^3 + 2*z - 1"
    assert str(deltas["-1"]) == "z^2 - 1"
    amb = ambient_h1(d)
    assert (amb.rank, amb.torsion) == (2, (2,))
    assert class_is_trivial(d, 1)
    assert time.perf_counter() - t0 < 5


# -- 2 -------------------------------------------------------------------------------------------

def test_criterion_2_example48_non_split():
    t0 = time.perf_counter()
    H = h1_diagram(fixture("example48.diag"))
    assert (H.rank, H.torsion) == (2, (2, 2))
    assert time.perf_counter() - t0 < 5


# -- 3 -------------------------------------------------------------------------------------------

MANIFOLDS = [
    S(True, 0, fibers=((1, 5),)),
    S(True, 0, fibers=((2, 1), (3, 1))),
    S(True, 1, (1,), (-1,), ((1, 2),)),
    S(True, 1, (-1,), (1,)),
    S(False, 1, (1,)),
    S(False, 2, (1, -1), fibers=((3, 1),)),
    S(False, 1, (-1,), fibers=((2, 1), (3, 2))),
]


@pytest.mark.parametrize("s", MANIFOLDS, ids=lambda s: f"{'O' if s.base_orientable else 'N'}{s.genus}-{len(s.fibers)}")
def test_criterion_3_manifold_group_abelianization(s):
    from_link = h1(build_presentation(empty_link(s)))
    direct = h1(seifert_group(s))
    assert (from_link.rank, from_link.torsion) == (direct.rank, direct.torsion)


def test_criterion_3_coverage():
    assert len(MANIFOLDS) >= 5
    assert {s.base_orientable for s in MANIFOLDS} == {True, False}
    assert {len(s.fibers) for s in MANIFOLDS} >= {0, 1, 2}


# -- 4 -------------------------------------------------------------------------------------------

INFINITE = [S(True, 1, (1,), (1,)),                 # torus bundle (trivial bundle over the torus)
            S(True, 0, fibers=((1, 0),)),            # S^2 x S^1
            S(True, 1, (1,), (-1,), ((1, 2),)),      # the manifold of the worked example
            S(False, 1, (1,))]
FINITE = [S(True, 0, fibers=((1, 5),)),             # lens space, H1 = Z_5
          S(True, 0, fibers=((2, 1), (3, 1)))]      # H1 = Z_5 from two exceptional fibers


@pytest.mark.parametrize("s", INFINITE)
def test_criterion_4_infinite_h1_local_links_vanish(s):
    assert ambient_h1(empty_link(s)).rank > 0
    for d in (braid_closure(TREFOIL, 2, s), braid_closure([1, 1], 2, s)):
        for t in twisted_alexander(build_presentation(d)):
            assert t.value.is_zero(), (t.sigma.label(), str(t))


@pytest.mark.parametrize("s", FINITE)
def test_criterion_4_finite_h1_local_links(s):
    order = ambient_h1(empty_link(s)).order()
    assert order and order > 1
    for word, classical in ((TREFOIL, poly([1, -1, 1])), ([1, -2, 1, -2], poly([1, -3, 1]))):
        strands = 3 if len(word) == 4 else 2
        polys = twisted_alexander(build_presentation(braid_closure(word, strands, s)))
        assert polys[0].sigma.is_trivial()
        assert polys[0].value == normalize(classical * order, polys[0].convention)
        assert all(t.value.is_zero() for t in polys[1:])


# -- 5 -------------------------------------------------------------------------------------------

def _sum_with(base, word, strands, at=1):
    cs = tie_braid(base, at, word, strands)
    right = classical_presentation(braid_closure(word, strands))
    return connected_sum_check(build_presentation(cs.total), build_presentation(base), right,
                               cs.left_map, cs.right_map), cs


def test_criterion_5_example61_sum_trefoil():
    report, cs = _sum_with(fixture("example61.diag"), TREFOIL, 2)
    assert report.ok, report.failures()
    expected = poly([1, -2, 0, 2, -1]) * poly([1, -1, 1])
    sigma1 = twisted_alexander(build_presentation(cs.total))[0]
    assert sigma1.value == normalize(expected, sigma1.convention)


@pytest.mark.parametrize("case", ["lens-edge-figure8", "example48-trefoil", "n2-unknot"])
def test_criterion_5_more_sums(case):
    if case == "lens-edge-figure8":
        base = sketch(S(True, 1, (-1,), (1,), ((3, 1),)), [("a", 1, 1, 1, "X", "Xk")],
                      [("X", "X", "Xk", 1)], fiber_words=[[]])
        report, _ = _sum_with(base, [1, -2, 1, -2], 3)
    elif case == "example48-trefoil":
        report, _ = _sum_with(fixture("example48.diag"), TREFOIL, 2, at=3)
    else:
        base = sketch(S(False, 2, (1, -1)), [("a", 2, 1, 1, "X", "Xk")], [("X", "X", "Xk", -1)])
        report, _ = _sum_with(base, [1], 2)
    assert report.ok, report.failures()


# -- 6 -------------------------------------------------------------------------------------------

def _null_homologous_with_fibers(d):
    s = d.seifert
    return (s.base_orientable and s.fibers and d.t == 0
            and all(class_is_trivial(d, k) for k in range(1, components(d).nu + 1)))


def test_criterion_6_rank_bounds():
    diagrams = list(corpus().values())
    diagrams.append(braid_closure(TREFOIL, 2, S(True, 1, (-1,), (1,), ((2, 1),))))
    diagrams.append(braid_closure([1, 1], 2, S(True, 1, (1,), (1,), ((3, 1),))))
    randoms = random_diagrams(100)
    assert len(randoms) == 100 and max(d.r for d in randoms) <= 6
    checked_cor = 0
    for d in diagrams + randoms:
        nu = components(d).nu
        rank = h1_diagram(d).rank
        assert rank >= nu
        if _null_homologous_with_fibers(d):
            checked_cor += 1
            assert rank >= 2 * d.seifert.genus + nu
    assert checked_cor >= 3


# -- 7 -------------------------------------------------------------------------------------------

def _local_sites(d):
    c, n, r = len(d.crossings), d.n, d.r
    for g in range(1, r + 1):
        yield MoveSpec("R1+", (g,))
        yield MoveSpec("R1-", (g,))
        yield MoveSpec("R5", (g,), sign=1)
        yield MoveSpec("R5", (g,), sign=-1)
    for k in range(1, c + 1):
        yield MoveSpec("R1+", (k,), "backward")
        yield MoveSpec("R1-", (k,), "backward")
    for o, u in permutations(range(1, r + 1), 2):
        yield MoveSpec("R2", (o, u), sign=1)
    for k1, k2 in permutations(range(1, c + 1), 2):
        yield MoveSpec("R2", (k1, k2), "backward")
        yield MoveSpec("R3", (k1, k2))
        yield MoveSpec("R3", (k1, k2), "backward")
    for a in range(1, n + 1):
        yield MoveSpec("R4", (a,))
        yield MoveSpec("R4", (a,), "backward")
        yield MoveSpec("R5", (a,), "backward")


def test_criterion_7_local_moves():
    with_arrows = apply_local_move(braid_closure(TREFOIL, 2, S(True, 1, (1,), (1,), ((2, 1),))),
                                   MoveSpec("R5", (1,), sign=1))
    bases = [fixture("example61.diag"), fixture("example48.diag"),
             braid_closure([1, -2, 1], 3, S(True, 0, fibers=((2, 1), (3, 1)))),
             with_arrows, apply_local_move(with_arrows, MoveSpec("R4", (1,)))]
    applied = Counter()
    for d in bases:
        ref = signature(d)
        for m in _local_sites(d):
            try:
                out = apply_local_move(d, m)
            except MoveError:
                continue
            kind = m.kind[:2]
            if applied[(kind, m.direction)] >= 6:
                continue
            applied[(kind, m.direction)] += 1
            assert signature(out) == ref, m
    for kind in ("R1", "R2", "R3", "R4", "R5"):
        assert applied[(kind, "forward")] + applied[(kind, "backward")] > 0, kind


def test_criterion_7_fixture_pairs():
    pairs = load_fixture_pairs()
    names = Counter(p.move_name for p in pairs)
    for move in REQUIRED_MOVES:
        assert names[move] >= 1, move
    assert any(name.startswith("slide") for name in names)
    for p in pairs:
        assert signature(p.before) == signature(p.after), f"{p.move_name}_{p.ident}"


# -- 8 -------------------------------------------------------------------------------------------

def test_criterion_8_snf_minor_gcd():
    rng = random.Random(8)
    for _ in range(200):
        rows, cols = rng.randint(1, 5), rng.randint(1, 5)
        m = [[rng.randint(-9, 9) for _ in range(cols)] for _ in range(rows)]
        snf, u, v = smith_normal_form(m)
        assert matmul(matmul(u, m), v) == snf
        diag = [snf[i][i] for i in range(min(rows, cols))]
        running = 1
        for k, dk in enumerate(diag, start=1):
            running *= dk
            assert abs(running) == minor_gcd(m, k)
            if k < len(diag) and dk:
                assert diag[k] % dk == 0


def test_criterion_8_fox_identity():
    rng = random.Random(88)
    gens = ["x1", "x2", "x3", "h"]
    for _ in range(200):
        letters = tuple((rng.choice(gens), rng.choice((1, -1))) for _ in range(rng.randint(0, 12)))
        assert fundamental_identity_holds(Word(letters), gens)


def _cofactor_det(m):
    if len(m) == 1:
        return m[0][0]
    total = LaurentPoly.zero(m[0][0].nvars)
    for j, a in enumerate(m[0]):
        minor = [row[:j] + row[j + 1:] for row in m[1:]]
        term = a * _cofactor_det(minor)
        total = total + term if j % 2 == 0 else total - term
    return total


def test_criterion_8_determinant_oracle():
    rng = random.Random(888)

    def entry():
        terms = {}
        for _ in range(rng.randint(0, 3)):
            e = (rng.randint(-2, 2), rng.randint(-2, 2))
            terms[e] = terms.get(e, 0) + rng.randint(-4, 4)
        return LaurentPoly(2, terms)

    for _ in range(50):
        m = [[entry() for _ in range(3)] for _ in range(3)]
        assert determinant(m) == _cofactor_det(m)


if __name__ == "__main__":
    sys.exit(pytest.main([__file__, "-q"]))
