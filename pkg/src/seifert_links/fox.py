"""Fox free differential calculus and the Alexander-Fox matrix."""

from __future__ import annotations

from dataclasses import dataclass

from .grouppres import GroupPresentation, Word
from .ring import LaurentPoly, format_poly


class GroupRingElement:
    """Finite Z-linear combination of free group words."""

    __slots__ = ("terms",)

    def __init__(self, terms=None):
        self.terms = {w: c for w, c in (terms or {}).items() if c}

    @classmethod
    def of(cls, w: Word, c: int = 1) -> "GroupRingElement":
        return cls({w: c})

    def __add__(self, other):
        out = dict(self.terms)
        for w, c in other.terms.items():
            out[w] = out.get(w, 0) + c
        return GroupRingElement(out)

    def __neg__(self):
        return GroupRingElement({w: -c for w, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if isinstance(other, Word):
            other = GroupRingElement.of(other)
        out = {}
        for w1, c1 in self.terms.items():
            for w2, c2 in other.terms.items():
                w = w1 * w2
                out[w] = out.get(w, 0) + c1 * c2
        return GroupRingElement(out)

    def left(self, w: Word) -> "GroupRingElement":
        return GroupRingElement.of(w) * self

    def __eq__(self, other):
        if not isinstance(other, GroupRingElement):
            return NotImplemented
        return self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def is_zero(self) -> bool:
        return not self.terms

    def __repr__(self):
        if not self.terms:
            return "0"
        parts = []
        for w, c in sorted(self.terms.items(), key=lambda kv: (len(kv[0]), str(kv[0]))):
            parts.append(f"{c:+d}*[{w}]")
        return " ".join(parts)


def fox_derivative(r: Word, x: str) -> GroupRingElement:
    """d r / d x, with d(x^-1)/dx = -x^-1."""
    out = {}
    prefix = Word()
    for g, e in r.expanded():
        if e > 0:
            if g == x:
                out[prefix] = out.get(prefix, 0) + 1
            prefix = prefix * Word.gen(g)
        else:
            prefix = prefix * Word.gen(g, -1)
            if g == x:
                out[prefix] = out.get(prefix, 0) - 1
    return GroupRingElement(out)


def fundamental_identity_holds(r: Word, generators) -> bool:
    """sum_j (dr/dx_j)(x_j - 1) == r - 1 in Z[F]."""
    total = GroupRingElement()
    for g in generators:
        total = total + fox_derivative(r, g) * (GroupRingElement.of(Word.gen(g))
                                                - GroupRingElement.of(Word()))
    return total == GroupRingElement.of(r) - GroupRingElement.of(Word())


# -- projection to Z[H] -------------------------------------------------------------

def _image_of(section: dict, label: str):
    try:
        return section[label]
    except KeyError:
        raise KeyError(f"no image for generator {label!r}") from None


def project_to_ZH(e: GroupRingElement, section: dict, torsion) -> dict:
    """Map each word to (torsion residues, free exponents) and collect coefficients.

    ``section`` sends a generator label to its split coordinates
    ``(torsion tuple, free tuple)``.
    """
    out = {}
    for w, c in e.terms.items():
        key = word_image(w, section, torsion)
        out[key] = out.get(key, 0) + c
    return {k: v for k, v in out.items() if v}


def word_image(w: Word, section: dict, torsion) -> tuple:
    tors = [0] * len(torsion)
    free = None
    for g, e in w.letters:
        t, f = _image_of(section, g)
        if free is None:
            free = [0] * len(f)
        tors = [a + e * b for a, b in zip(tors, t)]
        free = [a + e * b for a, b in zip(free, f)]
    if free is None:
        rank = len(next(iter(section.values()))[1]) if section else 0
        free = [0] * rank
    return tuple(x % d for x, d in zip(tors, torsion)), tuple(free)


def fox_row_ZH(r: Word, generators, section: dict, torsion) -> list:
    """One row of the Alexander-Fox matrix projected to Z[H], computed in one pass."""
    col = {g: i for i, g in enumerate(generators)}
    row = [dict() for _ in generators]
    rank = len(next(iter(section.values()))[1]) if section else 0
    tors = [0] * len(torsion)
    free = [0] * rank
    for g, e in r.expanded():
        t, f = _image_of(section, g)
        if e > 0:
            key = (tuple(x % d for x, d in zip(tors, torsion)), tuple(free))
            cell = row[col[g]]
            cell[key] = cell.get(key, 0) + 1
            tors = [a + b for a, b in zip(tors, t)]
            free = [a + b for a, b in zip(free, f)]
        else:
            tors = [a - b for a, b in zip(tors, t)]
            free = [a - b for a, b in zip(free, f)]
            key = (tuple(x % d for x, d in zip(tors, torsion)), tuple(free))
            cell = row[col[g]]
            cell[key] = cell.get(key, 0) - 1
    return [{k: v for k, v in cell.items() if v} for cell in row]


def apply_character(zh: dict, sigma, rank: int) -> LaurentPoly:
    """sigma-tilde: f*g -> sigma(f) g, as a Laurent polynomial in ``rank`` variables."""
    terms = {}
    for (tors, free), c in zh.items():
        val = sigma.value(tors) * c
        if free in terms:
            terms[free] = terms[free] + val
        else:
            terms[free] = val
    return LaurentPoly(max(rank, 1) if rank else 1,
                       {(k if rank else (0,)): v for k, v in terms.items()})


@dataclass(frozen=True)
class AlexanderMatrix:
    generators: tuple
    rows: tuple  # tuple of tuples of LaurentPoly
    row_tags: tuple = ()

    @property
    def ncols(self) -> int:
        return len(self.generators)

    @property
    def nrows(self) -> int:
        return len(self.rows)

    def to_tsv(self) -> str:
        head = "\t".join(("relator",) + tuple(self.generators))
        lines = [head]
        for tag, row in zip(self.row_tags or [""] * self.nrows, self.rows):
            lines.append("\t".join([tag] + [format_poly(p) for p in row]))
        return "\n".join(lines) + "\n"


def alexander_fox_matrix(p: GroupPresentation, H, sigma, splitting) -> AlexanderMatrix:
    """Entries sigma-tilde(dr_i/dx_j) in C[G]; padded with zero rows to at least m rows."""
    section = splitting.section
    torsion = splitting.torsion
    rank = splitting.rank
    nv = max(rank, 1)
    rows = []
    tags = []
    for rel in p.relators:
        zh_row = fox_row_ZH(rel.word, p.generators, section, torsion)
        rows.append(tuple(apply_character(cell, sigma, rank) if cell else LaurentPoly.zero(nv)
                          for cell in zh_row))
        tags.append(rel.tag)
    while len(rows) < len(p.generators):
        rows.append(tuple(LaurentPoly.zero(nv) for _ in p.generators))
        tags.append("pad")
    return AlexanderMatrix(tuple(p.generators), tuple(rows), tuple(tags))
