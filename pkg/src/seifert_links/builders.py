"""Small diagram constructions: braid closures, local knots tied into a strand.

Braid words are sequences of nonzero integers; ``i`` is the generator in which
the strand at position i passes over the strand at position i+1, ``-i`` its
inverse.  Generator sigma_i^e gets crossing sign e.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import ArrowDiagram, SeifertData
from .grouppres import GroupPresentation, Relator, wirtinger_relations, x
from .moves import MoveError, _Work


def _run_braid(w: _Work, word, labels: list) -> list:
    """Append the crossings of ``word``; ``labels`` holds the current label per position."""
    labels = list(labels)
    for g in word:
        i = abs(g) - 1
        if not 0 <= i < len(labels) - 1:
            raise ValueError(f"braid generator {g} needs more than {len(labels)} strands")
        e = 1 if g > 0 else -1
        over_pos, under_pos = (i, i + 1) if e > 0 else (i + 1, i)
        new = w.fresh()
        w.crossings.append([labels[over_pos], labels[under_pos], new, e])
        labels[under_pos] = new
        labels[i], labels[i + 1] = labels[i + 1], labels[i]
    return labels


def _identify(w: _Work, pairs) -> dict:
    """Glue labels pairwise (closing arcs); each class keeps its smallest label."""
    parent = {}

    def find(a):
        while parent.get(a, a) != a:
            a = parent[a]
        return a

    for a, b in pairs:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)
    rep = {a: find(a) for a in list(parent)}
    for a, r in rep.items():
        if a != r:
            w.merge(r, a)
    return rep


def _blank(seifert: SeifertData) -> ArrowDiagram:
    return ArrowDiagram(seifert, 0, 0, 0, (), (), tuple(() for _ in seifert.fibers), ())


def braid_closure(word, strands: int, seifert: SeifertData = None) -> ArrowDiagram:
    """Closure of a braid, sitting in a small ball of the given manifold.

    The default manifold is S^3, as the Seifert space over the sphere with one
    (1,1) fiber.
    """
    seifert = seifert or SeifertData(True, 0, (), (), ((1, 1),))
    w = _Work(_blank(seifert))
    initial = [w.fresh() for _ in range(strands)]
    final = _run_braid(w, word, initial)
    _identify(w, zip(initial, final))
    return w.finish()


def classical_presentation(d: ArrowDiagram) -> GroupPresentation:
    """Wirtinger generators and relations only: the link group in S^3 of a planar diagram."""
    gens = tuple(x(i) for i in range(1, d.r + 1))
    rels = tuple(Relator("W", i, r) for i, r in enumerate(wirtinger_relations(d), start=1))
    return GroupPresentation(gens, rels)


@dataclass(frozen=True)
class ConnectedSum:
    total: ArrowDiagram
    left_map: dict   # generator label of the original diagram -> label in total
    right_map: dict  # generator label of the braid closure -> label in total


def tie_braid(d: ArrowDiagram, strand: int, word, strands: int) -> ConnectedSum:
    """Tie the closure of a braid (a knot) into overpass ``strand`` just before its end.

    The tangle sits in a small ball next to the strand, so no basing path sees
    it.  The maps relate generators of ``d`` and of ``braid_closure(word,
    strands)`` to generators of the result, for restricting characters.
    """
    w = _Work(d)
    if strand not in w.labels:
        raise MoveError(f"no generator x{strand}")
    if w.end_of(strand) is None:
        raise MoveError(f"x{strand} is a closed loop; kink it first")
    tail = w.split_end(strand)
    initial = [strand] + [w.fresh() for _ in range(strands - 1)]
    created_from = w.next_label
    final = _run_braid(w, word, initial)
    created = list(range(created_from, w.next_label))
    # the strand leaving position 1 carries the old end
    rep = _identify(w, list(zip(initial[1:], final[1:])) + [(final[0], tail)])

    def resolve(lab):
        return rep.get(lab, lab)

    # renumber exactly as finish() does
    closed = braid_closure(word, strands)
    out = w.finish()
    num = w.numbering()
    left_map = {x(i): x(num[resolve(i)]) for i in range(1, d.r + 1)}
    for lab in _ambient_labels(d.seifert):
        left_map[lab] = lab
    # raw labels of the standalone closure follow the same creation order
    raw = _closure_raw_labels(word, strands)
    right_map = {}
    corr = dict(zip(raw["initial"], initial))
    corr.update(zip(raw["created"], created))
    for rlab, final_num in raw["numbering"].items():
        right_map[x(final_num)] = x(num[resolve(corr[rlab])])
    assert len(right_map) == closed.r
    return ConnectedSum(out, left_map, right_map)


def _closure_raw_labels(word, strands) -> dict:
    w = _Work(_blank(SeifertData(True, 0, (), (), ((1, 1),))))
    initial = [w.fresh() for _ in range(strands)]
    start = w.next_label
    final = _run_braid(w, word, initial)
    created = list(range(start, w.next_label))
    _identify(w, zip(initial, final))
    num = w.numbering()
    return {"initial": initial, "created": created,
            "numbering": {lab: num[lab] for lab in w.labels}}


def _ambient_labels(s: SeifertData) -> list:
    out = []
    for i in range(1, s.genus + 1):
        out.append(f"a{i}")
        if s.base_orientable:
            out.append(f"b{i}")
    out.append("h")
    out += [f"l{j}" for j in range(1, s.k + 1)]
    return out


def sketch(seifert: SeifertData, points=(), crossings=(), arrows=(), fiber_words=None,
           normalize: bool = True) -> ArrowDiagram:
    """Build a diagram from named arcs; with ``normalize`` an arc running straight from
    one boundary point or arrow to another gets a kink.

    Arcs are arbitrary hashable names; they are numbered in order of appearance.

    points:     (edge, index, pos, eps, plus_arc, minus_arc); ``pos`` orders points on an edge
    crossings:  (over, incoming, outgoing, sign)
    arrows:     (first_arc, second_arc, eps, z) with z a list of (arc, exponent); for eps -1
                the strand runs first -> second, for eps +1 second -> first
    fiber_words: one list of (arc, exponent) per exceptional fiber
    """
    from .diagram import validate
    from .moves import normalize_degenerate

    w = _Work(_blank(seifert))
    names = {}

    def arc(name):
        if name not in names:
            names[name] = w.fresh()
        return names[name]

    for e, i, pos, eps, p, m in points:
        w.add_boundary(e, i, pos, eps, arc(p), arc(m))
    for b, a, eps, _ in arrows:
        w.before.append(arc(b))
        w.after.append(arc(a))
        w.aeps.append(eps)
        w.amate.append(None)
    for o, i, u, s in crossings:
        w.crossings.append([arc(o), arc(i), arc(u), s])
    w.zwords.extend([(arc(g), e) for g, e in z] for *_, z in arrows)
    if fiber_words:
        w.ywords = [[(arc(g), e) for g, e in y] for y in fiber_words]
    if normalize:
        w.kink_degenerate()
    d = w.finish()
    if normalize:
        d = normalize_degenerate(d)
    problems = validate(d)
    if problems:
        raise ValueError("; ".join(problems))
    return d
