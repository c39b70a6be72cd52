"""Local generalized Reidemeister moves as rewrites of arrow diagrams.

Moves are carried out on a working copy where overpasses carry arbitrary
integer labels and the structural roles (end of +j, start of -j, before or
after an arrow) are stored separately.  ``_Work.finish`` renumbers the labels
canonically: role generators first (+1..+t, -1..-t, before arrows, after
arrows), then the rest in order of first occurrence in the crossing list,
then crossingless loops in their previous order.

The global moves (across polygon edges, over the base point, the slide over
an exceptional fiber) are not rewrites here; they live in the fixture corpus
as before/after pairs, see ``load_fixture_pairs``.
"""

from __future__ import annotations

import os
from dataclasses import dataclass, replace
from importlib import resources

from .diagram import (Arrow, ArrowDiagram, BoundaryPoint, Crossing, components, edge_order,
                      strand_ends, validate)

LOCAL_KINDS = ("R1+", "R1-", "R2", "R3", "R4", "R5")
GLOBAL_KINDS = ("O6", "O7O", "O7N", "O8+", "O8-", "O9O", "O9S", "O9N", "slide")


class MoveError(ValueError):
    pass


@dataclass(frozen=True)
class MoveSpec:
    """A local move.

    ``site`` meaning by kind and direction:
      R1+/R1- forward: (generator,)            backward: (crossing,)
      R2 forward: (over generator, under generator)    backward: (crossing, crossing)
      R3: (crossing, crossing), consecutive along the bottom strand
      R4 forward: (arrow,) moved back past the crossing just before it
      R4 backward: (arrow,) moved forward past the crossing just after it
      R5 forward: (generator,)                 backward: (arrow,)
    Crossings and arrows are 1-based.  ``sign`` is the sign of the first new
    crossing for R2 and R5.
    """

    kind: str
    site: tuple
    direction: str = "forward"
    sign: int = 1


# -- working representation ---------------------------------------------------------------

class _Work:
    def __init__(self, d: ArrowDiagram):
        self.seifert = d.seifert
        t, n = d.t, d.n
        eps = d.eps_table()
        self.bplus = [j for j in range(1, t + 1)]
        self.bminus = [t + j for j in range(1, t + 1)]
        self.bmeta = [d.boundary_point(j) for j in range(1, t + 1)]
        self.before = [2 * t + j for j in range(1, n + 1)]
        self.after = [2 * t + n + j for j in range(1, n + 1)]
        self.aeps = [eps[2 * t + j] for j in range(1, n + 1)]
        self.amate = [d.arrow(j).mate_eps for j in range(1, n + 1)]
        self.zwords = [list(d.arrow(j).z_word) for j in range(1, n + 1)]
        self.ywords = [list(w) for w in d.fiber_words]
        self.crossings = [[c.over, c.inc, c.out, c.sign] for c in d.crossings]
        self.labels = list(range(1, d.r + 1))
        self.next_label = d.r + 1

    # generic helpers
    def fresh(self) -> int:
        lab = self.next_label
        self.next_label += 1
        self.labels.append(lab)
        return lab

    def arrow_eps(self, label):
        """(+1 start / -1 end) when label is an arrow role generator, else None."""
        for j, (b, a) in enumerate(zip(self.before, self.after)):
            if label == b:
                return self.aeps[j]
            if label == a:
                return -self.aeps[j] if self.amate[j] is None else self.amate[j]
        return None

    def role_eps(self, label):
        for j, meta in enumerate(self.bmeta):
            if label == self.bplus[j]:
                return meta.eps
            if label == self.bminus[j]:
                return -meta.eps if meta.mate_eps is None else meta.mate_eps
        return self.arrow_eps(label)

    def end_of(self, label):
        """('crossing', k) when the strand ends as the incoming strand of crossing k,
        ('role', None) when it ends on a boundary point or arrow, or None."""
        for k, c in enumerate(self.crossings):
            if c[1] == label:
                return ("crossing", k)
        if self.role_eps(label) == -1:
            return ("role", None)
        return None

    def start_of(self, label):
        for k, c in enumerate(self.crossings):
            if c[2] == label:
                return ("crossing", k)
        if self.role_eps(label) == 1:
            return ("role", None)
        return None

    def transfer_role(self, old, new):
        for lst in (self.bplus, self.bminus, self.before, self.after):
            for i, v in enumerate(lst):
                if v == old:
                    lst[i] = new

    def uses_in_words(self, label) -> bool:
        return any(g == label for w in self.zwords + self.ywords for g, _ in w)

    def is_role(self, label) -> bool:
        return self.role_eps(label) is not None

    def over_count(self, label) -> int:
        return sum(1 for c in self.crossings if c[0] == label)

    def merge(self, keep, drop):
        """Identify two labels (drop disappears)."""
        for c in self.crossings:
            for i in range(3):
                if c[i] == drop:
                    c[i] = keep
        for w in self.zwords + self.ywords:
            for i, (g, e) in enumerate(w):
                if g == drop:
                    w[i] = (keep, e)
        self.transfer_role(drop, keep)
        self.labels.remove(drop)

    def split_end(self, label):
        """Cut a strand just before its end; return the new label carrying the old end."""
        new = self.fresh()
        end = self.end_of(label)
        if end is None:
            raise MoveError(f"x{label} is a closed loop without an end")
        if end[0] == "crossing":
            self.crossings[end[1]][1] = new
        else:
            self.transfer_role(label, new)
        return new

    def _role_slots(self, label) -> list:
        """(list, position, eps) for every boundary/arrow role held by ``label``."""
        out = []
        for j, meta in enumerate(self.bmeta):
            if self.bplus[j] == label:
                out.append((self.bplus, j, meta.eps))
            if self.bminus[j] == label:
                out.append((self.bminus, j, -meta.eps if meta.mate_eps is None else meta.mate_eps))
        for j, eps in enumerate(self.aeps):
            if self.before[j] == label:
                out.append((self.before, j, eps))
            if self.after[j] == label:
                out.append((self.after, j, -eps if self.amate[j] is None else self.amate[j]))
        return out

    def kink_degenerate(self) -> int:
        """Give every arc that starts and ends on a role a kink; returns how many were added."""
        added = 0
        for lab in list(self.labels):
            slots = self._role_slots(lab)
            ends = [s for s in slots if s[2] == -1]
            if ends and any(s[2] == 1 for s in slots):
                lst, pos, _ = ends[0]
                new = self.fresh()
                lst[pos] = new
                self.crossings.append([lab, lab, new, 1])
                added += 1
        return added

    def add_boundary(self, edge: str, edge_index: int, pos: float, eps: int, plus, minus):
        """New boundary point pair; ``pos`` may be fractional, finish() renumbers."""
        self.bmeta.append(BoundaryPoint(0, edge, edge_index, pos, eps))
        self.bplus.append(plus)
        self.bminus.append(minus)

    def remove_boundary(self, k: int):
        for lst in (self.bmeta, self.bplus, self.bminus):
            del lst[k]

    def _sort_boundary(self):
        rank = {e: k for k, e in enumerate(edge_order(self.seifert))}
        idx = sorted(range(len(self.bmeta)),
                     key=lambda k: (rank[(self.bmeta[k].edge, self.bmeta[k].edge_index)],
                                    self.bmeta[k].pos))
        self.bmeta = [self.bmeta[k] for k in idx]
        self.bplus = [self.bplus[k] for k in idx]
        self.bminus = [self.bminus[k] for k in idx]
        count = {}
        for k, m in enumerate(self.bmeta):
            key = (m.edge, m.edge_index)
            count[key] = count.get(key, 0) + 1
            self.bmeta[k] = replace(m, index=k + 1, pos=count[key])

    def numbering(self) -> dict:
        order = []
        seen = set()
        for lab in (self.bplus + self.bminus + self.before + self.after
                    + [lab for c in self.crossings for lab in c[:3]] + self.labels):
            if lab not in seen:
                seen.add(lab)
                order.append(lab)
        if len(order) != len(self.labels) or set(order) != set(self.labels):
            raise MoveError("internal error: role generators collide")
        return {lab: i for i, lab in enumerate(order, start=1)}

    def finish(self) -> ArrowDiagram:
        self._sort_boundary()
        t = len(self.bplus)
        n = len(self.before)
        num = self.numbering()
        order = sorted(num, key=num.get)

        def word(w):
            return tuple((num[g], e) for g, e in w)

        boundary = tuple(self.bmeta)
        arrows = tuple(Arrow(j, self.aeps[j - 1], word(self.zwords[j - 1]), self.amate[j - 1])
                       for j in range(1, n + 1))
        crossings = tuple(Crossing(num[c[0]], num[c[1]], num[c[2]], c[3]) for c in self.crossings)
        return ArrowDiagram(self.seifert, len(order), t, n, boundary, arrows,
                            tuple(word(w) for w in self.ywords), crossings)


def canonical(d: ArrowDiagram) -> ArrowDiagram:
    """Renumber generators canonically without changing anything else."""
    return _Work(d).finish()


# -- the moves ------------------------------------------------------------------------------

def _crossing(w: _Work, k: int) -> list:
    if not 1 <= k <= len(w.crossings):
        raise MoveError(f"no crossing {k}")
    return w.crossings[k - 1]


def _label(w: _Work, i: int) -> int:
    if i not in w.labels:
        raise MoveError(f"no generator x{i}")
    return i


def _r1_forward(w: _Work, i: int, sign: int):
    lab = _label(w, i)
    if w.end_of(lab) is None and w.start_of(lab) is None:
        # crossingless loop: the kink becomes its only crossing
        w.crossings.append([lab, lab, lab, sign])
        return
    new = w.split_end(lab)
    w.crossings.append([lab, lab, new, sign])


def _r1_backward(w: _Work, k: int, sign: int):
    c = _crossing(w, k)
    over, inc, out, s = c
    if s != sign:
        raise MoveError(f"crossing {k} has sign {s:+d}, not the sign of this R1 move")
    if over not in (inc, out):
        raise MoveError(f"crossing {k} is not a kink")
    del w.crossings[k - 1]
    if inc != out:
        # the piece that is not the over strand disappears into the other
        keep, drop = (inc, out) if over == inc else (out, inc)
        w.merge(keep, drop)


def _r2_forward(w: _Work, o: int, u: int, sign: int):
    o, u = _label(w, o), _label(w, u)
    if w.end_of(u) is None:
        raise MoveError(f"x{u} has no end to push under x{o}")
    u2 = w.split_end(u)
    m = w.fresh()
    w.crossings.append([o, u, m, sign])
    w.crossings.append([o, m, u2, -sign])


def _r2_backward(w: _Work, k1: int, k2: int):
    c1, c2 = _crossing(w, k1), _crossing(w, k2)
    if c1[0] != c2[0] or c1[3] != -c2[3]:
        raise MoveError("R2 needs two crossings with the same over strand and opposite signs")
    if c1[2] != c2[1]:
        c1, c2, k1, k2 = c2, c1, k2, k1
    if c1[2] != c2[1]:
        raise MoveError("R2 crossings are not consecutive along the under strand")
    m = c1[2]
    if m == c1[0] or w.over_count(m) or w.uses_in_words(m) or w.is_role(m):
        raise MoveError(f"bigon strand x{m} is not empty")
    u, u2 = c1[1], c2[2]
    for k in sorted((k1, k2), reverse=True):
        del w.crossings[k - 1]
    w.labels.remove(m)
    if u2 != u:
        w.merge(u, u2)


def _r3(w: _Work, k1: int, k2: int, direction: str):
    """Swap the order in which a bottom strand passes under a top and a middle strand."""
    c1, c2 = _crossing(w, k1), _crossing(w, k2)
    if c1[2] != c2[1]:
        raise MoveError("R3 crossings must be consecutive along the bottom strand")
    mid = c1[2]
    if w.over_count(mid) or w.uses_in_words(mid) or w.is_role(mid):
        raise MoveError(f"triangle strand x{mid} is not empty")
    # find which of the two over strands is the top one: the middle strand
    # passes under it at a third crossing
    for first_is_middle in (True, False):
        mc, tc = (c1, c2) if first_is_middle else (c2, c1)
        m_part, top = mc[0], tc[0]
        for tm in w.crossings:
            if tm is c1 or tm is c2 or tm[0] != top:
                continue
            # the bottom strand must meet the middle piece that lies on its own
            # side of the top strand; in sign terms: with the middle crossing
            # first, the incoming piece needs equal signs at the top crossings
            if tm[1] == m_part:
                other, need = tm[2], (tc[3] if first_is_middle else -tc[3])
            elif tm[2] == m_part:
                other, need = tm[1], (-tc[3] if first_is_middle else tc[3])
            else:
                continue
            if tm[3] != need:
                continue
            # the three sides of the triangle must be free of other crossings
            if len({top, m_part, other, mid}) != 4 or mid in (c1[1], c2[2]):
                continue
            if w.over_count(m_part) != 1 or w.over_count(other) != 0 or w.over_count(top) != 2:
                continue
            if (direction == "forward") != first_is_middle:
                raise MoveError("R3 direction does not match the crossing order")
            b0, b2 = c1[1], c2[2]
            new_mid = w.fresh()
            w.labels.remove(mid)
            # new order along the bottom strand: under the top first when the middle
            # came first, and vice versa
            if first_is_middle:
                c1[:] = [top, b0, new_mid, tc[3]]
                c2[:] = [other, new_mid, b2, mc[3]]
            else:
                c1[:] = [other, b0, new_mid, mc[3]]
                c2[:] = [top, new_mid, b2, tc[3]]
            return
    raise MoveError("no R3 configuration at these crossings")


def _r5_forward(w: _Work, i: int, sign: int):
    x = _label(w, i)
    if w.is_role(x) or w.start_of(x) is None or w.end_of(x) is None:
        raise MoveError(f"x{x} must start and end at crossings")
    tail = w.split_end(x)          # carries the old end, starts at the second arrow
    w1, w2 = w.fresh(), w.fresh()
    # first arrow along the strand, second against it; same basing word
    w.before.append(x)
    w.after.append(w1)
    w.aeps.append(-1)
    w.amate.append(None)
    w.before.append(tail)
    w.after.append(w2)
    w.aeps.append(1)
    w.amate.append(None)
    z = []
    w.zwords += [list(z), list(z)]
    w.crossings.append([w1, w1, w2, sign])


def _r5_backward(w: _Work, j: int):
    n = len(w.before)
    if not 1 <= j < n:
        raise MoveError(f"arrows {j} and {j + 1} do not both exist")
    a, b = j - 1, j
    x, w1, tail, w2 = w.before[a], w.after[a], w.before[b], w.after[b]
    if w.aeps[a] != -1 or w.aeps[b] != 1 or w.amate[a] is not None or w.amate[b] is not None:
        raise MoveError("arrows are not an opposite pair")
    if w.zwords[a] != w.zwords[b]:
        raise MoveError("arrow pair has different basing words")
    kink = [k for k, c in enumerate(w.crossings) if c[1] == w1 and c[2] == w2]
    if len(kink) != 1 or w.crossings[kink[0]][0] not in (w1, w2):
        raise MoveError("no separating kink between the arrows")
    if w.over_count(w1) + w.over_count(w2) != 1 or w.uses_in_words(w1) or w.uses_in_words(w2):
        raise MoveError("strand between the arrows is not free")
    del w.crossings[kink[0]]
    for lst in (w.before, w.after, w.aeps, w.amate, w.zwords):
        del lst[b]
        del lst[a]
    w.labels.remove(w1)
    w.labels.remove(w2)
    if tail != x:
        w.merge(x, tail)


def _r4(w: _Work, j: int, direction: str):
    """Slide arrow j along its strand through one crossing; the crossing switches.

    Forward: the strand u runs over crossing c (sign s) and then reaches the
    arrow.  Afterwards the arrow sits before c, the new piece from the arrow
    passes under the former under strand, which becomes a single overpass p,
    the crossing gets sign -s and the basing word picks up p^s.  Backward is
    the inverse, allowed only where the split point on p is unambiguous.
    """
    n = len(w.before)
    if not 1 <= j <= n:
        raise MoveError(f"no arrow {j}")
    a = j - 1
    if w.aeps[a] != -1 or w.amate[a] is not None:
        raise MoveError("R4 expects the arrow to point along its strand")
    u = w.before[a]
    if direction == "forward":
        overs = [k for k, c in enumerate(w.crossings) if c[0] == u]
        if len(overs) != 1:
            raise MoveError("R4 needs exactly one over crossing on the strand before the arrow")
        k = overs[0]
        _, pin, pout, s = w.crossings[k]
        if w.start_of(u) is None or w.start_of(u)[0] != "crossing":
            raise MoveError("R4 needs the strand before the arrow to start at a crossing")
        if u in (pin, pout):
            raise MoveError("R4 site is a kink")
        v = w.after[a]
        piece = w.fresh()
        w.after[a] = piece
        w.crossings[k] = [pin, piece, v, -s]
        w.zwords[a] = w.zwords[a] + [(pin, s)]
        if pout != pin:
            w.merge(pin, pout)
        return
    piece = w.after[a]
    ks = [k for k, c in enumerate(w.crossings) if c[1] == piece]
    if len(ks) != 1:
        raise MoveError("R4 backward needs the strand after the arrow to end at a crossing")
    k = ks[0]
    p, _, v, s2 = w.crossings[k]
    z = w.zwords[a]
    if not z or z[-1] != (p, -s2):
        raise MoveError("R4 backward: basing word does not end with the crossed strand")
    if w.over_count(piece) or p in (piece, v, u) or w.over_count(p) != 1:
        raise MoveError("R4 backward: strands at the crossing are not free")
    others = [x for x in w.zwords[:a] + w.zwords[a + 1:] + w.ywords] + [z[:-1]]
    if any(g == p for x in others for g, _ in x) or any(g == piece for x in others for g, _ in x):
        raise MoveError("R4 backward: a basing path crosses the strand being split")
    if w.end_of(p) is None:
        q = p
    else:
        q = w.split_end(p)
    w.crossings[k] = [u, p, q, -s2]
    w.after[a] = v
    w.zwords[a] = z[:-1]
    w.labels.remove(piece)


def apply_local_move(d: ArrowDiagram, m: MoveSpec) -> ArrowDiagram:
    if m.kind not in LOCAL_KINDS:
        raise MoveError(f"unknown local move {m.kind!r}")
    if m.direction not in ("forward", "backward"):
        raise MoveError(f"direction must be forward or backward, got {m.direction!r}")
    problems = validate(d)
    if problems:
        raise MoveError("input diagram invalid: " + "; ".join(problems))
    w = _Work(d)
    fwd = m.direction == "forward"
    site = tuple(m.site)
    try:
        if m.kind in ("R1+", "R1-"):
            sign = 1 if m.kind == "R1+" else -1
            (_r1_forward if fwd else _r1_backward)(w, site[0], sign)
        elif m.kind == "R2":
            if fwd:
                _r2_forward(w, site[0], site[1], m.sign)
            else:
                _r2_backward(w, site[0], site[1])
        elif m.kind == "R3":
            _r3(w, site[0], site[1], m.direction)
        elif m.kind == "R4":
            _r4(w, site[0], m.direction)
        else:
            if fwd:
                _r5_forward(w, site[0], m.sign)
            else:
                _r5_backward(w, site[0])
    except IndexError as exc:
        raise MoveError(f"site {site} does not match {m.kind}: {exc}") from None
    out = w.finish()
    problems = validate(out)
    if problems:
        raise MoveError("resulting diagram invalid: " + "; ".join(problems))
    if components(out).nu != components(d).nu:
        raise MoveError("move changed the number of components")
    return out


def normalize_degenerate(d: ArrowDiagram) -> ArrowDiagram:
    """Split every overpass that runs between two boundary points/arrows by a kink."""
    problems = validate(d)
    other = [p for p in problems if not p.startswith("apply Ω1 first")]
    if other:
        raise MoveError("diagram has other violations: " + "; ".join(other))
    if not problems:
        return d
    w = _Work(d)
    starts, ends = strand_ends(d)
    for i in range(1, d.r + 1):
        if starts[i] and ends[i] and starts[i][0][0] != "crossing" and ends[i][0][0] != "crossing":
            new = w.split_end(i)
            w.crossings.append([i, i, new, 1])
    out = w.finish()
    left = validate(out)
    if left:
        raise MoveError("normalization failed: " + "; ".join(left))
    return out


# -- fixture corpus ------------------------------------------------------------------------------

@dataclass(frozen=True)
class FixturePair:
    before: ArrowDiagram
    after: ArrowDiagram
    move_name: str
    ident: str


def fixtures_dir() -> str:
    return str(resources.files("seifert_links") / "fixtures")


def load_fixture_pairs(directory: str = None) -> list:
    from .diagram import load_diagram
    directory = directory or os.path.join(fixtures_dir(), "moves")
    pairs = []
    for name in sorted(os.listdir(directory)):
        if not name.endswith(".before"):
            continue
        stem = name[: -len(".before")]
        after = os.path.join(directory, stem + ".after")
        if not os.path.exists(after):
            raise FileNotFoundError(f"missing {after}")
        move, _, ident = stem.rpartition("_")
        pairs.append(FixturePair(load_diagram(os.path.join(directory, name)),
                                 load_diagram(after), move, ident))
    return pairs
