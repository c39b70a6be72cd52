"""Finite presentations of link groups in Seifert fibered spaces.

Relators for an equation ``A = B`` are stored as ``A * B^-1``.
"""

from __future__ import annotations

from dataclasses import dataclass

from .diagram import ArrowDiagram, SeifertData, validate

FAMILIES = ("W", "F", "A", "B", "CF", "CV", "CX", "L")


@dataclass(frozen=True)
class Word:
    """A freely reduced word: a tuple of (label, nonzero exponent) syllables."""

    letters: tuple = ()

    def __post_init__(self):
        object.__setattr__(self, "letters", _reduce(self.letters))

    @classmethod
    def gen(cls, label: str, exp: int = 1) -> "Word":
        return cls(((label, exp),)) if exp else cls()

    @classmethod
    def parse(cls, text: str) -> "Word":
        """Parse ``"x3 x4^-1 h^2"``; ``"1"`` or an empty string is the identity."""
        out = []
        for tok in text.split():
            if tok == "1":
                continue
            label, _, exp = tok.partition("^")
            out.append((label, int(exp) if exp else 1))
        return cls(tuple(out))

    def __mul__(self, other: "Word") -> "Word":
        return Word(self.letters + other.letters)

    def inverse(self) -> "Word":
        return Word(tuple((g, -e) for g, e in reversed(self.letters)))

    def __pow__(self, k: int) -> "Word":
        base = self if k >= 0 else self.inverse()
        out = Word()
        for _ in range(abs(k)):
            out = out * base
        return out

    def __len__(self) -> int:
        return sum(abs(e) for _, e in self.letters)

    def __bool__(self) -> bool:
        return bool(self.letters)

    def labels(self) -> set:
        return {g for g, _ in self.letters}

    def exponent_sum(self, label: str) -> int:
        return sum(e for g, e in self.letters if g == label)

    def expanded(self) -> list:
        """Letters one at a time: [(label, +-1), ...]."""
        out = []
        for g, e in self.letters:
            s = 1 if e > 0 else -1
            out += [(g, s)] * abs(e)
        return out

    def substitute(self, mapping: dict) -> "Word":
        out = Word()
        for g, e in self.letters:
            out = out * (mapping[g] ** e if g in mapping else Word.gen(g, e))
        return out

    def cyclic_reduce(self) -> "Word":
        w = self
        while len(w.letters) >= 2 and w.letters[0][0] == w.letters[-1][0]:
            (g, e1), (_, e2) = w.letters[0], w.letters[-1]
            inner = w.letters[1:-1]
            w = Word(((g, e1 + e2),) + inner) if e1 + e2 else Word(inner)
        return w

    def cyclic_conjugates(self) -> list:
        exp = self.expanded()
        return [Word(tuple(exp[i:] + exp[:i])) for i in range(max(len(exp), 1))]

    def __str__(self) -> str:
        return format_word(self)


def _reduce(letters) -> tuple:
    stack = []
    for g, e in letters:
        if e == 0:
            continue
        if stack and stack[-1][0] == g:
            e += stack[-1][1]
            stack.pop()
            if e:
                stack.append((g, e))
        else:
            stack.append((g, e))
    return tuple(stack)


def format_word(w: Word) -> str:
    if not w.letters:
        return "1"
    return " ".join(g if e == 1 else f"{g}^{e}" for g, e in w.letters)


def same_relator(u: Word, v: Word) -> bool:
    """True when u and v agree up to cyclic permutation and inversion."""
    u = u.cyclic_reduce()
    v = v.cyclic_reduce()
    if len(u) != len(v):
        return False
    return any(c == v or c.inverse() == v for c in u.cyclic_conjugates())


def conjugate(g: Word, x: Word) -> Word:
    """C(g)(x) = g x g^-1."""
    return g * x * g.inverse()


def commutator(a: Word, b: Word) -> Word:
    return a * b * a.inverse() * b.inverse()


@dataclass(frozen=True)
class Relator:
    family: str
    index: int
    word: Word

    @property
    def tag(self) -> str:
        return f"{self.family}{self.index}"


@dataclass(frozen=True)
class GroupPresentation:
    generators: tuple
    relators: tuple

    def words(self) -> list:
        return [r.word for r in self.relators]

    def family(self, name: str) -> list:
        return [r for r in self.relators if r.family == name]

    def family_counts(self) -> dict:
        out = {f: 0 for f in FAMILIES}
        for r in self.relators:
            out[r.family] = out.get(r.family, 0) + 1
        return out

    def check(self) -> list:
        known = set(self.generators)
        bad = []
        for r in self.relators:
            extra = r.word.labels() - known
            if extra:
                bad.append(f"{r.tag} uses undeclared generators {sorted(extra)}")
        return bad


# -- building blocks -------------------------------------------------------------

def x(i: int) -> str:
    return f"x{i}"


def _dword(word) -> Word:
    """Diagram word ((index, exp), ...) -> Word in overpass labels."""
    return Word(tuple((x(i), e) for i, e in word))


def _xe(i: int, e: int) -> Word:
    return Word.gen(x(i), e)


def _comm_prefix(j: int) -> Word:
    """prod_{i=1..j} [a_i, b_i]."""
    out = Word()
    for i in range(1, j + 1):
        out = out * commutator(Word.gen(f"a{i}"), Word.gen(f"b{i}"))
    return out


def _sq_prefix(j: int) -> Word:
    """prod_{i=1..j} a_i^2."""
    out = Word()
    for i in range(1, j + 1):
        out = out * Word.gen(f"a{i}", 2)
    return out


def generator_labels(d: ArrowDiagram) -> tuple:
    s = d.seifert
    xs = [x(i) for i in range(1, d.r + 1)]
    ls = [f"l{j}" for j in range(1, s.k + 1)]
    if s.base_orientable:
        surf = []
        for i in range(1, s.genus + 1):
            surf += [f"a{i}", f"b{i}"]
        return tuple(xs + surf + ["h"] + ls)
    return tuple(xs + ls + [f"a{i}" for i in range(1, s.genus + 1)] + ["h"])


def wirtinger_relations(d: ArrowDiagram) -> list:
    problems = validate(d)
    if problems:
        raise ValueError("invalid diagram: " + "; ".join(problems))
    return _wirtinger(d)


def _wirtinger(d: ArrowDiagram) -> list:
    out = []
    for c in d.crossings:
        xi, xk, xj = Word.gen(x(c.inc)), Word.gen(x(c.over)), Word.gen(x(c.out))
        if c.sign == 1:
            out.append(xi * xk * xj.inverse() * xk.inverse())
        else:
            out.append(xi * xk.inverse() * xj.inverse() * xk)
    return out


def build_presentation(d: ArrowDiagram) -> GroupPresentation:
    problems = validate(d)
    if problems:
        raise ValueError("invalid diagram: " + "; ".join(problems))
    s = d.seifert
    t, n, g = d.t, d.n, s.genus
    eps = d.eps_table()
    h = Word.gen("h")
    rels = []

    for i, w in enumerate(_wirtinger(d), start=1):
        rels.append(Relator("W", i, w))

    # surface relation
    surf = _comm_prefix(g) if s.base_orientable else _sq_prefix(g)
    for j, (_, beta) in enumerate(s.fibers, start=1):
        surf = surf * Word.gen(f"l{j}", -beta)
    for i in range(2 * t + 1, 2 * t + n + 1):
        surf = surf * _xe(i, -eps[i])
    rels.append(Relator("F", 1, surf))

    def edge_product(edge, idx, upto=None):
        out = Word()
        for b in d.boundary_on_edge(edge, idx):
            if upto is None or b.index < upto:
                out = out * _xe(b.index, eps[b.index])
        return out

    for j in range(1, g + 1):
        aj = Word.gen(f"a{j}")
        if s.base_orientable:
            bj = Word.gen(f"b{j}")
            pre = _comm_prefix(j - 1).inverse()
            rel_a = conjugate(pre, edge_product("a", j)) * aj * h * aj.inverse() * h ** (-s.gammas[j - 1])
            rel_b = conjugate(aj.inverse() * pre, edge_product("b", j)) \
                * bj * h * bj.inverse() * h ** (-s.deltas[j - 1])
            rels.append(Relator("A", j, rel_a))
            rels.append(Relator("B", j, rel_b))
        else:
            pre = _sq_prefix(j - 1).inverse()
            rel_a = conjugate(pre, edge_product("a", j)) * aj * h * aj.inverse() * h ** (-s.gammas[j - 1])
            rels.append(Relator("A", j, rel_a))

    for j, ((_, beta), y) in enumerate(zip(s.fibers, d.fiber_words), start=1):
        lb = Word.gen(f"l{j}", -beta)
        rhs = conjugate(h.inverse() * _dword(y), lb)
        rels.append(Relator("CF", j, lb * rhs.inverse()))

    for a in d.arrows:
        before, after = 2 * t + a.index, 2 * t + n + a.index
        lhs = _xe(after, eps[after])
        rhs = conjugate(h.inverse() * _dword(a.z_word), _xe(before, -eps[before]))
        rels.append(Relator("CV", a.index, lhs * rhs.inverse()))

    for b in d.boundary:
        j, i = b.index, b.edge_index
        lhs = _xe(t + j, eps[t + j])
        if s.base_orientable:
            ai, bi = Word.gen(f"a{i}"), Word.gen(f"b{i}")
            p_i, q_i = _comm_prefix(i), _comm_prefix(i - 1).inverse()
            sign = s.gammas[i - 1] if b.edge == "a" else s.deltas[i - 1]
            if b.edge == "a" and sign == 1:
                conj, target = p_i * bi * q_i, _xe(j, -eps[j])
            elif b.edge == "b" and sign == 1:
                conj, target = p_i * ai.inverse() * q_i, _xe(j, -eps[j])
            elif b.edge == "a":
                conj = p_i * bi * h * q_i * edge_product("a", i, upto=j)
                target = _xe(j, eps[j])
            else:
                conj = p_i * h * ai.inverse() * q_i * edge_product("b", i, upto=j)
                target = _xe(j, eps[j])
        else:
            ai = Word.gen(f"a{i}")
            sq = _sq_prefix(i - 1)
            if s.gammas[i - 1] == 1:
                # the trailing product carries no inverse here, unlike every other case
                conj, target = sq * ai * sq, _xe(j, eps[j])
            else:
                conj = sq * ai * h * sq.inverse() * edge_product("a", i, upto=j)
                target = _xe(j, -eps[j])
        rels.append(Relator("CX", j, lhs * conjugate(conj, target).inverse()))

    for j, ((alpha, _), y) in enumerate(zip(s.fibers, d.fiber_words), start=1):
        rhs = _dword(y).inverse() * h
        rels.append(Relator("L", j, Word.gen(f"l{j}", alpha) * rhs.inverse()))

    return GroupPresentation(generator_labels(d), tuple(rels))


def seifert_group(s: SeifertData) -> GroupPresentation:
    """pi_1(M) with generators a_i, (b_i), q_j, h."""
    g, k = s.genus, s.k
    h = Word.gen("h")
    qs = [Word.gen(f"q{j}") for j in range(1, k + 1)]
    if s.base_orientable:
        gens = []
        for i in range(1, g + 1):
            gens += [f"a{i}", f"b{i}"]
        head = _comm_prefix(g)
    else:
        gens = [f"a{i}" for i in range(1, g + 1)]
        head = _sq_prefix(g)
    gens += [f"q{j}" for j in range(1, k + 1)] + ["h"]
    for q in qs:
        head = head * q
    rels = [Relator("F", 1, head)]
    for i in range(1, g + 1):
        ai = Word.gen(f"a{i}")
        rels.append(Relator("A", i, ai * h * ai.inverse() * h ** (-s.gammas[i - 1])))
        if s.base_orientable:
            bi = Word.gen(f"b{i}")
            rels.append(Relator("B", i, bi * h * bi.inverse() * h ** (-s.deltas[i - 1])))
    for j, (q, (alpha, beta)) in enumerate(zip(qs, s.fibers), start=1):
        rels.append(Relator("CF", j, commutator(q, h)))
        rels.append(Relator("L", j, q ** alpha * h ** beta))
    return GroupPresentation(tuple(gens), tuple(rels))


def empty_link(s: SeifertData) -> ArrowDiagram:
    return ArrowDiagram(s, 0, 0, 0, (), (), tuple(() for _ in s.fibers), ())


# -- Tietze simplification ----------------------------------------------------------

def _protected(label: str) -> bool:
    return not label.startswith("x")


def tietze_simplify(p: GroupPresentation, budget: int = 1000, protect=_protected) -> GroupPresentation:
    """Eliminate generators that occur exactly once, with exponent +-1, in some relator.

    Each elimination costs one step of ``budget``.  By default only overpass
    generators are eliminated, so the surface, fiber and surgery generators
    keep their meaning in reports and in the choice of splitting.
    """
    gens = list(p.generators)
    rels = list(p.relators)
    steps = 0
    while steps < budget:
        best = None
        for ri, r in enumerate(rels):
            counts = {}
            for g, e in r.word.letters:
                counts.setdefault(g, []).append(e)
            cands = [g for g, es in counts.items()
                     if len(es) == 1 and abs(es[0]) == 1 and not protect(g)]
            if not cands:
                continue
            g = max(cands, key=gens.index)
            key = (len(r.word), ri)
            if best is None or key < best[0]:
                best = (key, ri, g)
        if best is None:
            break
        _, ri, g = best
        word = rels[ri].word
        # rotate so that g comes first: g^e w = 1  =>  g = w^-e
        letters = list(word.letters)
        pos = next(i for i, (lab, _) in enumerate(letters) if lab == g)
        rot = Word(tuple(letters[pos:] + letters[:pos]))
        e = rot.letters[0][1]
        rest = Word(rot.letters[1:])
        value = rest ** (-e)
        del rels[ri]
        gens.remove(g)
        new = []
        for r in rels:
            if g in r.word.labels():
                w = r.word.substitute({g: value}).cyclic_reduce()
                if not w:
                    continue
                r = Relator(r.family, r.index, w)
            new.append(r)
        rels = new
        steps += 1
    return GroupPresentation(tuple(gens), tuple(rels))


def format_presentation(p: GroupPresentation) -> str:
    lines = ["generators: " + " ".join(p.generators)]
    for r in p.relators:
        lines.append(f"{r.tag}: {format_word(r.word)}")
    return "\n".join(lines)
