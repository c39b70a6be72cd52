"""Shared helpers: corpus loading, invariant signatures, random diagrams."""

import os
import random

from seifert_links.builders import braid_closure, sketch, tie_braid
from seifert_links.diagram import SeifertData, load_diagram
from seifert_links.grouppres import build_presentation
from seifert_links.homology import h1
from seifert_links.moves import fixtures_dir, load_fixture_pairs
from seifert_links.twisted import polynomial_multiset, twisted_alexander

TREFOIL = [1, 1, 1]


def S(orientable, genus, gammas=(), deltas=(), fibers=()):
    return SeifertData(orientable, genus, tuple(gammas), tuple(deltas), tuple(fibers))


def fixture(name):
    return load_diagram(os.path.join(fixtures_dir(), name))


def signature(d):
    """H1, Delta for the trivial character, multiset of the others."""
    p = build_presentation(d)
    H = h1(p)
    polys = twisted_alexander(p, H=H) if H.rank else []
    return str(H), str(polys[0]) if polys else "-", tuple(polynomial_multiset(polys[1:]))


def edge_knot(s, edge=("a", 1), fiber_words=None, knot=TREFOIL):
    """A knot running once through ``edge`` with a local knot tied in."""
    d = sketch(s, [(edge[0], edge[1], 1, 1, "X", "Xk")], [("X", "X", "Xk", 1)],
               fiber_words=fiber_words)
    return tie_braid(d, 1, knot, 2).total if knot else d


def corpus():
    """Every shipped diagram plus a few constructed ones, keyed by a readable name."""
    out = {"example61": fixture("example61.diag"), "example48": fixture("example48.diag")}
    for pair in load_fixture_pairs():
        out[f"{pair.move_name}_{pair.ident}.before"] = pair.before
        out[f"{pair.move_name}_{pair.ident}.after"] = pair.after
    out["trefoil_s3"] = braid_closure(TREFOIL, 2)
    out["hopf_lens"] = braid_closure([1, 1], 2, S(True, 0, fibers=((5, 2),)))
    return out


def random_manifold(rng):
    kind = rng.randrange(5)
    fibers = tuple((rng.choice((2, 3, 5)), 1) for _ in range(rng.randrange(3)))
    if kind == 0:
        return S(True, 0, fibers=fibers or ((1, 1),))
    if kind in (1, 2):
        return S(True, 1, (rng.choice((1, -1)),), (rng.choice((1, -1)),), fibers)
    genus = 1 + (kind == 4)
    return S(False, genus, tuple(rng.choice((1, -1)) for _ in range(genus)), fibers=fibers)


def random_diagram(rng, max_generators=6):
    """A random valid diagram with at most ``max_generators`` overpasses."""
    while True:
        s = random_manifold(rng)
        if rng.random() < 0.5:
            strands = rng.choice((2, 3))
            word = [rng.choice((1, -1)) * rng.randrange(1, strands) for _ in range(rng.randrange(1, 6))]
            d = braid_closure(word, strands, s)
        else:
            edge = ("a", rng.randrange(1, s.genus + 1)) if s.genus else None
            if edge is None:
                continue
            if s.base_orientable and rng.random() < 0.5:
                edge = ("b", edge[1])
            words = [[("X", rng.choice((1, -1)))] if rng.random() < 0.3 else [] for _ in s.fibers]
            eps = rng.choice((1, -1))
            ends = ("X", "Xk") if eps == 1 else ("Xk", "X")
            d = sketch(s, [(edge[0], edge[1], 1, eps) + ends],
                       [("X", "X", "Xk", rng.choice((1, -1)))], fiber_words=words)
        if d.r <= max_generators:
            return d


def random_diagrams(n, seed=20240611):
    rng = random.Random(seed)
    return [random_diagram(rng) for _ in range(n)]
