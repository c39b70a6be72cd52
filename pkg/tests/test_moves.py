import random

import pytest
from hypothesis import given, settings, strategies as st

from support import S, TREFOIL, fixture, random_diagram, signature
from seifert_links.builders import braid_closure, sketch
from seifert_links.diagram import components, validate
from seifert_links.homology import h1_diagram
from seifert_links.moves import (MoveError, MoveSpec, apply_local_move, canonical, load_fixture_pairs,
                                 normalize_degenerate)


def test_r1_adds_a_kink():
    d = braid_closure(TREFOIL, 2)
    out = apply_local_move(d, MoveSpec("R1+", (1,)))
    assert out.r == d.r + 1 and len(out.crossings) == len(d.crossings) + 1
    assert validate(out) == []


@pytest.mark.parametrize("kind", ["R1+", "R1-"])
def test_r1_roundtrip(kind):
    d = fixture("example61.diag")
    out = apply_local_move(d, MoveSpec(kind, (3,)))
    back = apply_local_move(out, MoveSpec(kind, (len(out.crossings),), "backward"))
    assert canonical(back) == canonical(d)


def test_r2_inverse_pair():
    d = braid_closure([1, -2, 1], 3)
    out = apply_local_move(d, MoveSpec("R2", (1, 3), sign=1))
    c = len(out.crossings)
    back = apply_local_move(out, MoveSpec("R2", (c - 1, c), "backward"))
    assert back.r == d.r and len(back.crossings) == len(d.crossings)
    assert signature(back) == signature(d)


def test_r4_keeps_h1():
    d = apply_local_move(braid_closure(TREFOIL, 2, S(True, 1, (1,), (1,), ((2, 1),))),
                         MoveSpec("R5", (1,), sign=1))
    out = apply_local_move(d, MoveSpec("R4", (1,)))
    assert str(h1_diagram(out)) == str(h1_diagram(d))
    assert out.arrows[0].z_word != d.arrows[0].z_word


def test_r5_roundtrip():
    d = braid_closure(TREFOIL, 2, S(True, 0, fibers=((2, 1), (3, 1))))
    out = apply_local_move(d, MoveSpec("R5", (2,), sign=-1))
    assert out.n == d.n + 2
    back = apply_local_move(out, MoveSpec("R5", (out.n - 1,), "backward"))
    assert signature(back) == signature(d)


def test_unknown_move_rejected():
    with pytest.raises(MoveError):
        apply_local_move(braid_closure(TREFOIL, 2), MoveSpec("R7", (1,)))


def test_bad_site_rejected():
    with pytest.raises(MoveError):
        apply_local_move(braid_closure(TREFOIL, 2), MoveSpec("R2", (1, 3), "backward"))


def test_boundary_to_boundary_arc_gets_a_kink():
    s = S(True, 1, (1,), (1,))
    d = sketch(s, [("a", 1, 1, 1, "X", "X")])
    assert (d.r, len(d.crossings)) == (2, 1)
    with pytest.raises(ValueError):
        sketch(s, [("a", 1, 1, 1, "X", "X")], normalize=False)


def test_normalize_is_identity_on_valid_diagrams():
    d = fixture("example61.diag")
    assert normalize_degenerate(d) is d


def _random_site(rng, d):
    kind = rng.choice(["R1+", "R1-", "R2", "R3", "R5"])
    c = len(d.crossings)
    if kind in ("R1+", "R1-"):
        if rng.random() < 0.5 or not c:
            return MoveSpec(kind, (rng.randint(1, d.r),))
        return MoveSpec(kind, (rng.randint(1, c),), "backward")
    if kind == "R2":
        return MoveSpec("R2", (rng.randint(1, d.r), rng.randint(1, d.r)), sign=rng.choice((1, -1)))
    if kind == "R3":
        if c < 2:
            return None
        return MoveSpec("R3", tuple(rng.sample(range(1, c + 1), 2)), rng.choice(("forward", "backward")))
    return MoveSpec("R5", (rng.randint(1, d.r),), sign=rng.choice((1, -1)))


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_local_moves_preserve_invariants(seed):
    rng = random.Random(seed)
    d = random_diagram(rng)
    m = _random_site(rng, d)
    if m is None:
        return
    try:
        out = apply_local_move(d, m)
    except MoveError:
        return
    assert validate(out) == []
    assert components(out).nu == components(d).nu
    assert signature(out) == signature(d)


def test_fixture_pairs_present_and_valid():
    pairs = load_fixture_pairs()
    assert len(pairs) >= 9
    for p in pairs:
        assert validate(p.before) == [] and validate(p.after) == []
        assert p.before.seifert == p.after.seifert
        assert components(p.before).nu == components(p.after).nu
