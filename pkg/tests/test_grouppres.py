import random

from hypothesis import given, settings, strategies as st

from support import S, TREFOIL, fixture, random_diagram
from seifert_links.builders import braid_closure
from seifert_links.grouppres import (Word, build_presentation, commutator, empty_link, same_relator,
                                     seifert_group, tietze_simplify, wirtinger_relations)
from seifert_links.homology import h1
from seifert_links.twisted import polynomial_multiset, twisted_alexander

letters = st.lists(st.tuples(st.sampled_from(["x1", "x2", "h"]), st.sampled_from([1, -1])), max_size=10)


@given(letters)
def test_word_inverse_cancels(ls):
    w = Word(tuple(ls))
    assert not (w * w.inverse())
    assert w.inverse().inverse() == w


@given(letters, letters)
def test_exponent_sums_add(a, b):
    u, v = Word(tuple(a)), Word(tuple(b))
    for g in ("x1", "x2", "h"):
        assert (u * v).exponent_sum(g) == u.exponent_sum(g) + v.exponent_sum(g)


@given(letters, st.integers(0, 9))
def test_same_relator_under_rotation_and_inversion(ls, k):
    w = Word(tuple(ls)).cyclic_reduce()
    exp = w.expanded()
    if exp:
        k %= len(exp)
        rot = Word(tuple(exp[k:] + exp[:k]))
        assert same_relator(w, rot)
        assert same_relator(w, rot.inverse())


def test_parse_and_format():
    w = Word.parse("x3 x4^-1 h^2")
    assert str(w) == "x3 x4^-1 h^2"
    assert Word.parse("1") == Word() and str(Word()) == "1"
    assert Word.parse("x1 x1^-1") == Word()


def test_commutator_of_commuting_letters_reduces():
    a = Word.gen("h")
    assert not commutator(a, a)


def test_wirtinger_one_relation_per_crossing():
    d = braid_closure(TREFOIL, 2)
    assert len(wirtinger_relations(d)) == len(d.crossings)


def test_presentation_families():
    p = build_presentation(fixture("example61.diag"))
    assert p.check() == []
    counts = p.family_counts()
    assert sum(counts.values()) == len(p.relators)


def test_empty_link_matches_direct_group():
    s = S(True, 1, (1,), (-1,), ((1, 2),))
    assert str(h1(build_presentation(empty_link(s)))) == str(h1(seifert_group(s)))


def _invariants(p):
    H = h1(p)
    return str(H), tuple(polynomial_multiset(twisted_alexander(p, H=H))) if H.rank else ()


@settings(max_examples=25, deadline=None)
@given(st.integers(0, 10 ** 6))
def test_tietze_preserves_invariants(seed):
    p = build_presentation(random_diagram(random.Random(seed)))
    q = tietze_simplify(p)
    assert len(q.generators) <= len(p.generators)
    assert _invariants(q) == _invariants(p)


def test_tietze_keeps_ambient_generators():
    p = build_presentation(fixture("example61.diag"))
    q = tietze_simplify(p)
    ambient = [g for g in p.generators if not g.startswith("x")]
    assert [g for g in q.generators if not g.startswith("x")] == ambient
