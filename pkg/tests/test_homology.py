from hypothesis import given, strategies as st

from support import S, edge_knot, fixture
from seifert_links.builders import braid_closure, sketch
from seifert_links.homology import (class_image, class_is_trivial, format_group, homology_class, int_det,
                                    matmul, minor_gcd, primary_decomposition, smith_normal_form)

matrices = st.integers(1, 4).flatmap(
    lambda r: st.integers(1, 4).flatmap(
        lambda c: st.lists(st.lists(st.integers(-12, 12), min_size=c, max_size=c), min_size=r, max_size=r)))


@given(matrices)
def test_snf_is_diagonal_and_divisible(m):
    snf, u, v = smith_normal_form(m)
    assert matmul(matmul(u, m), v) == snf
    assert abs(int_det(u)) == 1 and abs(int_det(v)) == 1
    diag = []
    for i, row in enumerate(snf):
        for j, x in enumerate(row):
            if i != j:
                assert x == 0
            elif x:
                diag.append(x)
    assert all(x > 0 for x in diag)
    assert all(b % a == 0 for a, b in zip(diag, diag[1:]))


@given(matrices)
def test_minor_gcd_of_full_size(m):
    k = min(len(m), len(m[0]))
    snf, _, _ = smith_normal_form(m)
    prod = 1
    for i in range(k):
        prod *= snf[i][i]
    assert minor_gcd(m, k) == abs(prod)


def test_format_and_primary_parts():
    assert format_group(3, (2,)) == "H1 = Z^3 (+) Z_2"
    assert format_group(0, ()) == "H1 = 0"
    assert primary_decomposition((12, 2)) == [2, 3, 4]


def test_example_class_is_trivial():
    d = fixture("example61.diag")
    assert class_is_trivial(d, 1)


def test_edge_knot_class_follows_the_edge():
    d = edge_knot(S(True, 1, (1,), (1,)), ("b", 1), knot=None)
    c = homology_class(d, 1)
    assert c.eta_a == (0,) and abs(c.eta_b[0]) == 1
    assert not class_is_trivial(d, 1)


def test_local_knot_is_trivial_in_any_manifold():
    d = braid_closure([1, 1, 1], 2, S(False, 2, (1, -1), fibers=((3, 1),)))
    assert homology_class(d, 1).is_zero_coefficients()


def test_core_of_exceptional_fiber_has_order_beta():
    # an unknot meeting the (5,2) fiber disc once is that fiber's core c;
    # in the solid torus q = -2c and h = 5c, and q dies in M, so c has order 2
    s = S(True, 0, fibers=((5, 2),))
    d = sketch(s, [], [("X", "X", "Xk", 1), ("Xk", "Xk", "X", 1)], fiber_words=[[("X", 1)]])
    assert homology_class(d, 1).eta_l == (1,)
    assert class_image(d, 1) == ((), (1,))
