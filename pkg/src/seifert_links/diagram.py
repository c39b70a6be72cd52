"""Combinatorial arrow diagrams on the fundamental polygon of a Seifert fibered space.

A diagram is pure data: the surgery/edge-sign data of the ambient manifold,
the overpass count r, the boundary points and arrows (with their signs and
basing words) and one record per crossing.  Overpass generators are indexed
by integers 1..r.  Words in the overpass generators are tuples of
``(index, exponent)`` pairs with exponent +1 or -1.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from math import gcd
from typing import Optional

DiagramWord = tuple  # tuple[tuple[int, int], ...]


class DiagramSyntaxError(ValueError):
    def __init__(self, message: str, line: int = 0, column: int = 0):
        self.message = message
        self.line = line
        self.column = column
        where = f"line {line}, column {column}: " if line else ""
        super().__init__(where + message)


@dataclass(frozen=True)
class SeifertData:
    base_orientable: bool
    genus: int
    gammas: tuple = ()
    deltas: tuple = ()
    fibers: tuple = ()  # ((alpha, beta), ...)

    @property
    def k(self) -> int:
        return len(self.fibers)

    def manifold_orientable(self) -> bool:
        if self.base_orientable:
            return all(s == 1 for s in self.gammas + self.deltas)
        return all(s == -1 for s in self.gammas)

    def label(self) -> str:
        base = "O" if self.base_orientable else "N"
        fib = " ".join(f"({a},{b})" for a, b in self.fibers)
        return f"S({base}, g={self.genus} | {fib})"


@dataclass(frozen=True)
class BoundaryPoint:
    index: int          # j in 1..t: the point +j
    edge: str           # "a" or "b"
    edge_index: int     # i in 1..g
    pos: int            # ordinal along the edge
    eps: int            # epsilon_j
    mate_eps: Optional[int] = None  # epsilon_{t+j}; derived as -eps when absent

    @property
    def edge_name(self) -> str:
        return f"{self.edge}{self.edge_index}"


@dataclass(frozen=True)
class Arrow:
    index: int          # j in 1..n
    eps: int            # epsilon_{2t+j}
    z_word: DiagramWord = ()
    mate_eps: Optional[int] = None  # epsilon_{2t+n+j}


@dataclass(frozen=True)
class Crossing:
    over: int
    inc: int
    out: int
    sign: int  # +1 selects x_i x_k x_j^-1 x_k^-1, -1 selects x_i x_k^-1 x_j^-1 x_k


@dataclass(frozen=True)
class ArrowDiagram:
    seifert: SeifertData
    r: int
    t: int = 0
    n: int = 0
    boundary: tuple = ()
    arrows: tuple = ()
    fiber_words: tuple = ()
    crossings: tuple = ()

    def boundary_point(self, j: int) -> BoundaryPoint:
        for b in self.boundary:
            if b.index == j:
                return b
        raise KeyError(j)

    def arrow(self, j: int) -> Arrow:
        for a in self.arrows:
            if a.index == j:
                return a
        raise KeyError(j)

    def eps_table(self) -> dict:
        """epsilon_i for every generator i in 1..2t+2n."""
        t, n = self.t, self.n
        out = {}
        for b in self.boundary:
            out[b.index] = b.eps
            out[t + b.index] = b.mate_eps if b.mate_eps is not None else -b.eps
        for a in self.arrows:
            out[2 * t + a.index] = a.eps
            out[2 * t + n + a.index] = a.mate_eps if a.mate_eps is not None else -a.eps
        return out

    def eps(self, i: int) -> int:
        return self.eps_table()[i]

    def boundary_on_edge(self, edge: str, edge_index: int) -> list:
        """Boundary points on one edge, ordered by position."""
        pts = [b for b in self.boundary if b.edge == edge and b.edge_index == edge_index]
        return sorted(pts, key=lambda b: b.pos)


@dataclass(frozen=True)
class ComponentPartition:
    nu: int
    assignment: dict  # generator index -> component index (1-based)

    def generators(self, component: int) -> list:
        return sorted(i for i, c in self.assignment.items() if c == component)


# -- parsing -----------------------------------------------------------------

_TOKEN = re.compile(r"\S+")
_GEN = re.compile(r"^x(\d+)(?:\^(-?1))?$")


def _tokens(line: str):
    return [(m.group(), m.start() + 1) for m in _TOKEN.finditer(line)]


def _parse_int(tok, lineno, allowed=None, what="integer"):
    text, col = tok
    try:
        v = int(text)
    except ValueError:
        raise DiagramSyntaxError(f"expected {what}, got {text!r}", lineno, col) from None
    if allowed is not None and v not in allowed:
        raise DiagramSyntaxError(f"{what} must be one of {sorted(allowed)}, got {v}", lineno, col)
    return v


def _parse_gen(tok, lineno, allow_exp=False):
    text, col = tok
    m = _GEN.match(text)
    if not m or (m.group(2) and not allow_exp):
        raise DiagramSyntaxError(f"expected generator x<i>, got {text!r}", lineno, col)
    idx = int(m.group(1))
    if idx < 1:
        raise DiagramSyntaxError(f"generator index must be positive, got {text!r}", lineno, col)
    return idx, (int(m.group(2)) if m.group(2) else 1)


def _parse_word(toks, lineno):
    if len(toks) == 1 and toks[0][0] == "1":
        return ()
    if not toks:
        raise DiagramSyntaxError("empty word (use 1 for the identity)", lineno, 0)
    return tuple(_parse_gen(t, lineno, allow_exp=True) for t in toks)


def _expect(toks, i, keyword, lineno):
    if i >= len(toks):
        col = toks[-1][1] + len(toks[-1][0]) if toks else 1
        raise DiagramSyntaxError(f"expected {keyword!r}", lineno, col)
    if toks[i][0] != keyword:
        raise DiagramSyntaxError(f"expected {keyword!r}, got {toks[i][0]!r}", lineno, toks[i][1])


def _sign_token(tok, lineno):
    text, col = tok
    table = {"+": 1, "-": -1, "+1": 1, "-1": -1}
    if text not in table:
        raise DiagramSyntaxError(f"expected sign + or -, got {text!r}", lineno, col)
    return table[text]


def _eps_token(tok, lineno):
    text, col = tok
    table = {"+1": 1, "-1": -1, "1": 1}
    if text not in table:
        raise DiagramSyntaxError(f"expected +1 or -1, got {text!r}", lineno, col)
    return table[text]


def parse_diagram(text: str) -> ArrowDiagram:
    surface = None
    gammas: list = []
    deltas: list = []
    signs_seen = False
    fibers: list = []
    fiber_words: list = []
    counts = None
    boundary: list = []
    arrows: list = []
    crossings: list = []
    refs: list = []  # (generator index, line, column) for range checks

    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0]
        toks = _tokens(line)
        if not toks:
            continue
        kw, kcol = toks[0]
        if kw == "SURFACE":
            if len(toks) != 3:
                raise DiagramSyntaxError("SURFACE takes 2 arguments", lineno, kcol)
            if toks[1][0] not in ("O", "N"):
                raise DiagramSyntaxError("surface type must be O or N", lineno, toks[1][1])
            genus = _parse_int(toks[2], lineno, what="genus")
            if genus < 0:
                raise DiagramSyntaxError("genus must be non-negative", lineno, toks[2][1])
            surface = (toks[1][0] == "O", genus)
        elif kw == "SIGNS":
            signs_seen = True
            target = None
            for tok in toks[1:]:
                if tok[0] == "gamma":
                    target = gammas
                elif tok[0] == "delta":
                    target = deltas
                elif target is None:
                    raise DiagramSyntaxError("SIGNS must start with 'gamma'", lineno, tok[1])
                else:
                    target.append(_eps_token(tok, lineno))
        elif kw == "FIBER":
            if len(toks) < 5:
                raise DiagramSyntaxError("FIBER takes alpha beta Y <word>", lineno, kcol)
            alpha = _parse_int(toks[1], lineno, what="alpha")
            beta = _parse_int(toks[2], lineno, what="beta")
            _expect(toks, 3, "Y", lineno)
            fibers.append((alpha, beta))
            word = _parse_word(toks[4:], lineno)
            for (i, _), tok in zip(word, toks[4:]):
                refs.append((i, lineno, tok[1]))
            fiber_words.append(word)
        elif kw == "COUNTS":
            if len(toks) != 7:
                raise DiagramSyntaxError("COUNTS takes r <r> t <t> n <n>", lineno, kcol)
            vals = {}
            for key_i, name in ((1, "r"), (3, "t"), (5, "n")):
                _expect(toks, key_i, name, lineno)
                v = _parse_int(toks[key_i + 1], lineno, what=name)
                if v < 0:
                    raise DiagramSyntaxError(f"{name} must be non-negative", lineno, toks[key_i + 1][1])
                vals[name] = v
            counts = (vals["r"], vals["t"], vals["n"])
        elif kw == "BOUNDARY":
            if len(toks) not in (8, 10):
                raise DiagramSyntaxError("BOUNDARY takes <j> EDGE <edge> POS <p> EPS <e> [MATE <e>]",
                                         lineno, kcol)
            j = _parse_int(toks[1], lineno, what="boundary index")
            _expect(toks, 2, "EDGE", lineno)
            m = re.match(r"^([ab])(\d+)$", toks[3][0])
            if not m:
                raise DiagramSyntaxError(f"bad edge name {toks[3][0]!r}", lineno, toks[3][1])
            _expect(toks, 4, "POS", lineno)
            pos = _parse_int(toks[5], lineno, what="position")
            _expect(toks, 6, "EPS", lineno)
            eps = _eps_token(toks[7], lineno)
            mate = None
            if len(toks) == 10:
                _expect(toks, 8, "MATE", lineno)
                mate = _eps_token(toks[9], lineno)
            boundary.append(BoundaryPoint(j, m.group(1), int(m.group(2)), pos, eps, mate))
        elif kw == "ARROW":
            if len(toks) < 6:
                raise DiagramSyntaxError("ARROW takes <j> EPS <e> [MATE <e>] Z <word>", lineno, kcol)
            j = _parse_int(toks[1], lineno, what="arrow index")
            _expect(toks, 2, "EPS", lineno)
            eps = _eps_token(toks[3], lineno)
            i = 4
            mate = None
            if toks[i][0] == "MATE":
                mate = _eps_token(toks[i + 1], lineno) if i + 1 < len(toks) else None
                i += 2
            _expect(toks, i, "Z", lineno)
            wt = toks[i + 1:]
            word = _parse_word(wt, lineno)
            for (g, _), tok in zip(word, wt):
                refs.append((g, lineno, tok[1]))
            arrows.append(Arrow(j, eps, word, mate))
        elif kw == "CROSSING":
            if len(toks) != 9:
                raise DiagramSyntaxError("CROSSING takes OVER x<k> IN x<i> OUT x<j> SIGN <+|->",
                                         lineno, kcol)
            vals = []
            for key_i, name in ((1, "OVER"), (3, "IN"), (5, "OUT")):
                _expect(toks, key_i, name, lineno)
                g, _ = _parse_gen(toks[key_i + 1], lineno)
                refs.append((g, lineno, toks[key_i + 1][1]))
                vals.append(g)
            _expect(toks, 7, "SIGN", lineno)
            crossings.append(Crossing(vals[0], vals[1], vals[2], _sign_token(toks[8], lineno)))
        else:
            raise DiagramSyntaxError(f"unknown keyword {kw!r}", lineno, kcol)

    if surface is None:
        raise DiagramSyntaxError("missing SURFACE line")
    if counts is None:
        raise DiagramSyntaxError("missing COUNTS line")
    r, t, n = counts
    for g, lineno, col in refs:
        if g > r:
            raise DiagramSyntaxError(f"index out of range: x{g} with r={r}", lineno, col)
    if not signs_seen and surface[1] > 0:
        raise DiagramSyntaxError("missing SIGNS line")
    seifert = SeifertData(surface[0], surface[1], tuple(gammas), tuple(deltas), tuple(fibers))
    return ArrowDiagram(seifert, r, t, n, tuple(sorted(boundary, key=lambda b: b.index)),
                        tuple(sorted(arrows, key=lambda a: a.index)), tuple(fiber_words),
                        tuple(crossings))


def load_diagram(path) -> ArrowDiagram:
    with open(path, encoding="utf-8") as fh:
        return parse_diagram(fh.read())


# -- serialization -------------------------------------------------------------

def format_word(word: DiagramWord) -> str:
    if not word:
        return "1"
    return " ".join(f"x{i}" if e == 1 else f"x{i}^{e}" for i, e in word)


def _pm(v: int) -> str:
    return "+1" if v == 1 else "-1"


def serialize(d: ArrowDiagram) -> str:
    s = d.seifert
    lines = [f"SURFACE {'O' if s.base_orientable else 'N'} {s.genus}"]
    if s.genus > 0 or s.gammas or s.deltas:
        sig = "SIGNS gamma " + " ".join(_pm(v) for v in s.gammas)
        if s.base_orientable:
            sig += " delta " + " ".join(_pm(v) for v in s.deltas)
        lines.append(sig.rstrip())
    for (alpha, beta), w in zip(s.fibers, d.fiber_words):
        lines.append(f"FIBER {alpha} {beta} Y {format_word(w)}")
    lines.append(f"COUNTS r {d.r} t {d.t} n {d.n}")
    for b in d.boundary:
        line = f"BOUNDARY {b.index} EDGE {b.edge_name} POS {b.pos} EPS {_pm(b.eps)}"
        if b.mate_eps is not None:
            line += f" MATE {_pm(b.mate_eps)}"
        lines.append(line)
    for a in d.arrows:
        mate = f" MATE {_pm(a.mate_eps)}" if a.mate_eps is not None else ""
        lines.append(f"ARROW {a.index} EPS {_pm(a.eps)}{mate} Z {format_word(a.z_word)}")
    for c in d.crossings:
        lines.append(f"CROSSING OVER x{c.over} IN x{c.inc} OUT x{c.out} "
                     f"SIGN {'+' if c.sign == 1 else '-'}")
    return "\n".join(lines) + "\n"


# -- validation ----------------------------------------------------------------

def edge_order(s: SeifertData) -> list:
    """Positively oriented edges in counterclockwise order from the base point."""
    if s.base_orientable:
        out = []
        for i in range(1, s.genus + 1):
            out += [("a", i), ("b", i)]
        return out
    return [("a", i) for i in range(1, s.genus + 1)]


def strand_ends(d: ArrowDiagram) -> tuple[dict, dict]:
    """For each generator, where it starts and where it ends.

    Entries are lists of tags: ("crossing", c) or ("boundary", j) / ("arrow", j).
    """
    starts = {i: [] for i in range(1, d.r + 1)}
    ends = {i: [] for i in range(1, d.r + 1)}
    t, n = d.t, d.n
    eps = d.eps_table()
    for i, e in eps.items():
        if i not in starts:
            continue
        if i <= 2 * t:
            tag = ("boundary", i if i <= t else -(i - t))
        else:
            j = i - 2 * t
            tag = ("arrow", j if j <= n else j - n)
        (starts if e == 1 else ends)[i].append(tag)
    for ci, c in enumerate(d.crossings):
        if c.out in starts:
            starts[c.out].append(("crossing", ci))
        if c.inc in ends:
            ends[c.inc].append(("crossing", ci))
    return starts, ends


def validate(d: ArrowDiagram) -> list[str]:
    v = []
    s = d.seifert
    g = s.genus
    if g < 0:
        v.append("surface: genus must be non-negative")
    if not s.base_orientable and g == 0:
        v.append("surface: a non-orientable base needs genus >= 1")
    if len(s.gammas) != g:
        v.append(f"edge signs: expected {g} gamma values, got {len(s.gammas)}")
    if s.base_orientable and len(s.deltas) != g:
        v.append(f"edge signs: expected {g} delta values, got {len(s.deltas)}")
    if not s.base_orientable and s.deltas:
        v.append("edge signs: a non-orientable base has no delta sequence")
    for x in s.gammas + s.deltas:
        if x not in (1, -1):
            v.append(f"edge signs: {x} is not +1/-1")
    for j, (alpha, beta) in enumerate(s.fibers, start=1):
        if alpha < 1 or beta < 0:
            v.append(f"fiber {j}: need alpha >= 1 and beta >= 0, got ({alpha},{beta})")
        if gcd(alpha, beta) != 1:
            v.append(f"fiber {j}: gcd(alpha, beta) = 1 fails for ({alpha},{beta})")
    if len(d.fiber_words) != s.k:
        v.append(f"fiber records: {s.k} fibers but {len(d.fiber_words)} y-words")

    r, t, n = d.r, d.t, d.n
    if r < 0 or t < 0 or n < 0:
        v.append("counts: r, t, n must be non-negative")
    if r < 2 * t + 2 * n:
        v.append(f"counts: r={r} is smaller than 2t+2n={2 * t + 2 * n}")
    if g == 0 and t:
        v.append("boundary: the sphere base admits no boundary points")

    def in_range(i, where):
        if not 1 <= i <= r:
            v.append(f"index out of range: x{i} in {where} (r={r})")
            return False
        return True

    def check_word(w, where):
        for i, e in w:
            in_range(i, where)
            if e not in (1, -1):
                v.append(f"word exponent: x{i}^{e} in {where} is not +-1")

    # boundary points
    if sorted(b.index for b in d.boundary) != list(range(1, t + 1)):
        v.append(f"boundary: indices must be exactly 1..{t}")
    edges = edge_order(s)
    rank = {e: k for k, e in enumerate(edges)}
    seen_pos = set()
    for b in d.boundary:
        key = (b.edge, b.edge_index)
        if key not in rank:
            v.append(f"boundary {b.index}: edge {b.edge_name} does not exist on this surface")
        if (key, b.pos) in seen_pos:
            v.append(f"boundary {b.index}: duplicate position {b.pos} on {b.edge_name}")
        seen_pos.add((key, b.pos))
        if b.eps not in (1, -1):
            v.append(f"boundary {b.index}: eps must be +-1")
    ordered = sorted((b for b in d.boundary if (b.edge, b.edge_index) in rank),
                     key=lambda b: (rank[(b.edge, b.edge_index)], b.pos))
    if [b.index for b in ordered] != sorted(b.index for b in ordered):
        v.append("boundary order: points +1..+t must follow the edge order from the base point")
    for b in d.boundary:
        mate = b.mate_eps if b.mate_eps is not None else -b.eps
        if mate != -b.eps:
            v.append(f"eps pairing: eps_{b.index} = eps_{t + b.index} = {b.eps:+d} "
                     f"(boundary {b.index})")

    # arrows
    if sorted(a.index for a in d.arrows) != list(range(1, n + 1)):
        v.append(f"arrows: indices must be exactly 1..{n}")
    for a in d.arrows:
        if a.eps not in (1, -1):
            v.append(f"arrow {a.index}: eps must be +-1")
        mate = a.mate_eps if a.mate_eps is not None else -a.eps
        if mate != -a.eps:
            v.append(f"eps pairing: eps_{2 * t + a.index} = eps_{2 * t + n + a.index} "
                     f"= {a.eps:+d} (arrow {a.index})")
        check_word(a.z_word, f"z-word of arrow {a.index}")
    for j, w in enumerate(d.fiber_words, start=1):
        check_word(w, f"y-word of fiber {j}")

    ok_idx = True
    for ci, c in enumerate(d.crossings, start=1):
        for i in (c.over, c.inc, c.out):
            ok_idx &= in_range(i, f"crossing {ci}")
        if c.sign not in (1, -1):
            v.append(f"crossing {ci}: sign must be +-1")
    if v or not ok_idx:
        return v

    # strand structure: each generator is an arc with one start and one end,
    # or a closed loop with neither
    starts, ends = strand_ends(d)
    for i in range(1, r + 1):
        ns, ne = len(starts[i]), len(ends[i])
        if (ns, ne) not in ((0, 0), (1, 1)):
            v.append(f"strand x{i}: has {ns} start(s) and {ne} end(s); expected one of each")
            continue
        if ns and starts[i][0][0] != "crossing" and ends[i][0][0] != "crossing":
            v.append(f"apply Ω1 first: overpass x{i} both starts and ends on a "
                     f"boundary point or arrow")
    return v


def is_valid(d: ArrowDiagram) -> bool:
    return not validate(d)


# -- components ------------------------------------------------------------------

def components(d: ArrowDiagram) -> ComponentPartition:
    problems = validate(d)
    if problems:
        raise ValueError("invalid diagram: " + "; ".join(problems))
    parent = list(range(d.r + 1))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[max(ra, rb)] = min(ra, rb)

    for c in d.crossings:
        union(c.inc, c.out)
    for j in range(1, d.t + 1):
        union(j, d.t + j)
    for j in range(1, d.n + 1):
        union(2 * d.t + j, 2 * d.t + d.n + j)
    roots = {}
    assignment = {}
    for i in range(1, d.r + 1):
        root = find(i)
        if root not in roots:
            roots[root] = len(roots) + 1
        assignment[i] = roots[root]
    return ComponentPartition(len(roots), assignment)


def component_order(d: ArrowDiagram, start: int) -> list:
    """Generators of one component in traversal order starting at ``start``."""
    starts, ends = strand_ends(d)
    nxt = {}
    t, n = d.t, d.n
    for i in range(1, d.r + 1):
        if not ends[i]:
            continue
        kind, where = ends[i][0]
        if kind == "crossing":
            nxt[i] = d.crossings[where].out
        elif kind == "boundary":
            j = abs(where)
            nxt[i] = t + j if where > 0 else j
        else:
            nxt[i] = 2 * t + n + where if i == 2 * t + where else 2 * t + where
    order = [start]
    cur = nxt.get(start)
    while cur is not None and cur != start:
        order.append(cur)
        cur = nxt.get(cur)
    return order
