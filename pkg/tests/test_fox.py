from hypothesis import given, strategies as st

from support import S, TREFOIL
from seifert_links.builders import braid_closure
from seifert_links.fox import GroupRingElement, alexander_fox_matrix, fox_derivative, fundamental_identity_holds
from seifert_links.grouppres import Word, build_presentation
from seifert_links.homology import h1
from seifert_links.twisted import characters, make_splitting

GENS = ["x1", "x2", "h"]
words = st.lists(st.tuples(st.sampled_from(GENS), st.sampled_from([1, -1])), max_size=12) \
    .map(lambda ls: Word(tuple(ls)))


def E(text, c=1):
    return GroupRingElement.of(Word.parse(text), c)


def test_basic_derivatives():
    assert fox_derivative(Word.parse("x1"), "x1") == E("1")
    assert fox_derivative(Word.parse("x1^-1"), "x1") == E("x1^-1", -1)
    assert fox_derivative(Word.parse("x1 x2"), "x2") == E("x1")
    assert fox_derivative(Word.parse("x2"), "x1").is_zero()


def test_commutator_derivative():
    # d[x,y]/dx = 1 - x y x^-1
    r = Word.parse("x1 x2 x1^-1 x2^-1")
    assert fox_derivative(r, "x1") == E("1") - E("x1 x2 x1^-1")


@given(words, words)
def test_product_rule(u, v):
    for g in GENS:
        assert fox_derivative(u * v, g) == fox_derivative(u, g) + fox_derivative(v, g).left(u)


@given(words)
def test_fundamental_identity(w):
    assert fundamental_identity_holds(w, GENS)


def test_matrix_shape():
    p = build_presentation(braid_closure(TREFOIL, 2, S(True, 0, fibers=((2, 1), (3, 1)))))
    H = h1(p)
    s = make_splitting(H)
    A = alexander_fox_matrix(p, H, characters(s)[0], s)
    assert A.ncols == len(p.generators)
    assert A.nrows >= len(p.relators)
    assert A.to_tsv().count("\n") >= A.nrows - 1
