"""Regenerate the global-move fixture pairs under src/seifert_links/fixtures/moves.

Every pair is rebuilt from a small named-arc sketch, checked for equal H1 and
equal projected twisted polynomials, and only then written.  Run from the
repository root:  python3 tools/make_fixtures.py
"""

import os
import sys

from seifert_links.builders import sketch, tie_braid
from seifert_links.diagram import SeifertData, serialize, validate
from seifert_links.grouppres import build_presentation
from seifert_links.homology import h1
from seifert_links.moves import _Work
from seifert_links.twisted import polynomial_multiset, twisted_alexander

OUT = os.path.join(os.path.dirname(__file__), "..", "src", "seifert_links", "fixtures", "moves")
TREFOIL = [1, 1, 1]


def S(orientable, genus, gammas, deltas=(), fibers=()):
    return SeifertData(orientable, genus, tuple(gammas), tuple(deltas), tuple(fibers))


def tie(d, strand=1):
    return tie_braid(d, strand, TREFOIL, 2).total


def tie_near(d, edge):
    """Tie a trefoil into the strand leaving the first boundary point on ``edge``."""
    j = next(b.index for b in d.boundary if (b.edge, b.edge_index) == edge)
    return tie_braid(d, d.t + j, TREFOIL, 2).total


def signature(d):
    p = build_presentation(d)
    H = h1(p)
    polys = twisted_alexander(p, H=H) if H.rank else []
    return str(H), str(polys[0]) if polys else "-", tuple(polynomial_multiset(polys[1:]))


# -- Omega 6: push an interior arc across an edge and back ---------------------------------------

def crossing_edge_knot(s, edge=("a", 1), fibers_free=True):
    words = [[] for _ in s.fibers] if fibers_free else None
    d = sketch(s, [(edge[0], edge[1], 1, 1, "X", "Xk")], [("X", "X", "Xk", 1)], fiber_words=words)
    return tie(d)


def push_arc(d, strand, edge, idx, pos, side):
    w = _Work(d)
    tail = w.split_end(strand)
    m1, m2 = w.fresh(), w.fresh()
    w.crossings.append([m1, m1, m2, 1])
    if side == "+":
        w.add_boundary(edge, idx, pos, -1, strand, m1)
        w.add_boundary(edge, idx, pos + 0.1, +1, tail, m2)
    else:
        w.add_boundary(edge, idx, pos, +1, m1, strand)
        w.add_boundary(edge, idx, pos + 0.1, -1, m2, tail)
    return w.finish()


def omega6():
    out = {}
    for ident, s, edge, side in (("torus", S(True, 1, (1,), (1,), ((3, 1),)), ("b", 1), "+"),
                                 ("klein", S(False, 2, (1, -1)), ("a", 2), "-")):
        d = crossing_edge_knot(s)
        x = d.r  # last generator is an interior arc of the tied trefoil
        out[ident] = (d, push_arc(d, x, edge[0], edge[1], 0.5, side))
    return out


# -- Omega 7: two arcs near an edge exchange their crossing through the edge ---------------------

def o7_before(s, e, f, s0):
    pts = [(e[0], e[1], 1, 1, "V+", "V2"), (e[0], e[1], 2, 1, "V", "U"), (f[0], f[1], 5, 1, "U0", "W")]
    cr = [("U", "V", "V2", s0), ("U0", "U0", "U", 1), ("V+", "V+", "W", 1)]
    return tie_near(sketch(s, pts, cr), f)


def o7_after(s, e, f, over, s1):
    if over == "U":
        pts = [(e[0], e[1], 1, 1, "V", "U"), (e[0], e[1], 2, 1, "Vp", "Vk")]
        cr = [("V", "Vp", "V+", s1), ("V", "V", "Vk", 1)]
    else:
        pts = [(e[0], e[1], 1, 1, "Up", "U"), (e[0], e[1], 2, 1, "V+", "V")]
        cr = [("V+", "Up", "V", s1)]
    pts.append((f[0], f[1], 5, 1, "U0", "W"))
    cr += [("U0", "U0", "U", 1), ("V+", "V+", "W", 1)]
    return tie_near(sketch(s, pts, cr), f)


def o7_rule(s, e, s0):
    """Which strand ends on top after the move, and the new crossing sign."""
    sign = s.gammas[e[1] - 1] if e[0] == "a" else s.deltas[e[1] - 1]
    if s.base_orientable:
        return ("U", s0) if sign == 1 else ("V", -s0)
    return ("U", -s0) if sign == 1 else ("V", s0)


def omega7(orientable):
    cases = ((("gamma+", S(True, 1, (1,), (1,)), ("a", 1), ("b", 1), 1),
              ("delta-", S(True, 1, (1,), (-1,)), ("b", 1), ("a", 1), -1),
              ("fiber", S(True, 1, (-1,), (1,), ((3, 1),)), ("a", 1), ("b", 1), 1))
             if orientable else
             (("n1gamma+", S(False, 1, (1,)), ("a", 1), ("a", 1), 1),
              ("n2gamma-", S(False, 2, (-1, -1)), ("a", 1), ("a", 2), 1),
              ("n2second", S(False, 2, (1, -1)), ("a", 2), ("a", 1), -1)))
    out = {}
    for ident, s, e, f, s0 in cases:
        over, s1 = o7_rule(s, e, s0)
        out[ident] = (o7_before(s, e, f, s0), o7_after(s, e, f, over, s1))
    return out


# -- Omega 8: an arrow passes through an edge ----------------------------------------------------

def o8_before(s, e, f):
    pts = [(e[0], e[1], 1, 1, "C", "Bk"), (f[0], f[1], 5, 1, "E", "Dk")]
    cr = [("C", "C", "D", 1), ("D", "D", "Dk", 1), ("E", "E", "A", 1), ("B", "B", "Bk", 1)]
    return tie_near(sketch(s, pts, cr, [("A", "B", -1, [])]), f)


def o8_after(s, e, f, aeps):
    pts = [(e[0], e[1], 1, 1, "C1", "Ak"), (f[0], f[1], 5, 1, "E", "Dk")]
    cr = [("C", "C", "D", 1), ("D", "D", "Dk", 1), ("E", "E", "A", 1), ("A", "A", "Ak", 1),
          ("C1", "C1", "C2", 1)]
    arrows = [("C2", "C", -1, [])] if aeps == -1 else [("C", "C2", 1, [])]
    return tie_near(sketch(s, pts, cr, arrows), f)


def omega8(edge_sign):
    """The arrow keeps its direction across an edge of sign +1 and reverses across sign -1."""
    if edge_sign == 1:
        cases = (("torus-a", S(True, 1, (1,), (1,)), ("a", 1), ("b", 1)),
                 ("torus-b", S(True, 1, (-1,), (1,), ((3, 1),)), ("b", 1), ("a", 1)))
    else:
        cases = (("torus-a", S(True, 1, (-1,), (1,)), ("a", 1), ("b", 1)),
                 ("torus-b", S(True, 1, (1,), (-1,)), ("b", 1), ("a", 1)))
    return {ident: (o8_before(s, e, f), o8_after(s, e, f, -edge_sign)) for ident, s, e, f in cases}


# -- Omega 9: an arc passes over the base vertex -------------------------------------------------

def omega9_orientable():
    """A closed curve parallel to b1 moves from beside one copy of b1 to beside the other.

    Before, it separates the base corner from the interior, so the fiber paths cross it.
    """
    out = {}
    for ident, s in (("fibers", S(True, 1, (1,), (1,), ((2, 1), (3, 1)))),
                     ("gamma-", S(True, 1, (-1,), (1,), ((2, 1),)))):
        pts = [("a", 1, 1, 1, "X", "Xk")]
        cr = [("X", "X", "Xk", 1)]
        before = tie(sketch(s, pts, cr, fiber_words=[[("X", 1)] for _ in s.fibers]), 2)
        after = tie(sketch(s, pts, cr, fiber_words=[[] for _ in s.fibers]), 2)
        out[ident] = (before, after)
    return out


def omega9_sphere():
    """A small circle around the base point on the sphere slides off it."""
    out = {}
    for ident, s in (("two", S(True, 0, (), (), ((2, 1), (3, 1)))),
                     ("three", S(True, 0, (), (), ((2, 1), (2, 1), (3, 2))))):
        cr = [("K", "K", "K", 1), ("U", "U", "U", 1)]
        before = tie(sketch(s, [], cr, fiber_words=[[("U", 1)] for _ in s.fibers]))
        after = tie(sketch(s, [], cr, fiber_words=[[] for _ in s.fibers]))
        out[ident] = (before, after)
    return out


def omega9_nonorientable():
    """On the projective plane a finger around the base corner retracts over the vertex."""
    out = {}
    for ident, s in (("gamma-", S(False, 1, (-1,))), ("gamma+", S(False, 1, (1,)))):
        pts = [("a", 1, 9, -1, "K", "W"), ("a", 1, 0, -1, "Wk", "Kt")]
        cr = [("K", "Kt", "K", 1), ("W", "W", "Wk", 1)]
        before = tie(sketch(s, pts, cr))
        after = tie(sketch(s, [], [("K", "K", "K", 1)]))
        out[ident] = (before, after)
    return out


# -- slide over an exceptional point (beta = 1) --------------------------------------------------

def slide_after(s, fiber, aeps=-1, e=1, theta0=10):
    """The arc circles the exceptional point once, carrying alpha evenly spaced arrows.

    The loop closes by passing under its incoming piece; the fiber path crosses
    the piece of the loop at the far side from the base point.
    """
    alpha = s.fibers[fiber][0]
    pieces = ["Xk"] + [f"P{k}" for k in range(1, alpha + 1)]
    angles = [theta0 + 360 * k / alpha for k in range(alpha)]
    bottom = sum(1 for a in angles if a < 180)
    arrows, kinks = [], []
    for k in range(alpha):
        src = pieces[k] if k == 0 else pieces[k] + "k"
        if k:
            kinks.append((pieces[k], pieces[k], src, 1))
        arrows.append((src, pieces[k + 1], aeps, []) if aeps == -1 else (pieces[k + 1], src, aeps, []))
    cr = [("X", "X", "Xk", 1), ("Xk", pieces[-1], "T", 1)] + kinks
    words = [[] for _ in s.fibers]
    words[fiber] = [(pieces[bottom], e)]
    return tie(sketch(s, [("a", 1, 1, 1, "X", "T")], cr, arrows, fiber_words=words))


def slide():
    out = {}
    for alpha in (2, 3):
        s = S(True, 1, (1,), (1,), ((alpha, 1),))
        before = tie(sketch(s, [("a", 1, 1, 1, "X", "Xk")], [("X", "X", "Xk", 1)],
                            fiber_words=[[]]))
        out[(f"slide{alpha}-1", "torus")] = (before, slide_after(s, 0))
    return out


def all_pairs():
    pairs = {}
    for move, group in (("omega6", omega6()), ("omega7O", omega7(True)), ("omega7N", omega7(False)),
                        ("omega8plus", omega8(1)), ("omega8minus", omega8(-1)),
                        ("omega9O", omega9_orientable()), ("omega9S", omega9_sphere()),
                        ("omega9N", omega9_nonorientable())):
        for ident, pair in group.items():
            pairs[(move, ident)] = pair
    pairs.update(slide())
    return pairs


def main(argv=None):
    os.makedirs(OUT, exist_ok=True)
    bad = 0
    for (move, ident), (before, after) in sorted(all_pairs().items()):
        for d in (before, after):
            assert not validate(d), validate(d)
        sb, sa = signature(before), signature(after)
        status = "ok" if sb == sa else "MISMATCH"
        bad += sb != sa
        print(f"{move}_{ident}: {status} {sb[0]} Delta1={sb[1]}")
        stem = os.path.join(OUT, f"{move}_{ident}")
        with open(stem + ".before", "w") as fh:
            fh.write(serialize(before))
        with open(stem + ".after", "w") as fh:
            fh.write(serialize(after))
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
