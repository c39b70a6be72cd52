"""First homology of link complements via integer Smith normal form."""

from __future__ import annotations

from dataclasses import dataclass
from math import gcd, prod

from .diagram import ArrowDiagram, ComponentPartition, components, validate
from .grouppres import GroupPresentation, build_presentation, empty_link


# -- integer matrices --------------------------------------------------------------

def identity(n: int) -> list:
    return [[int(i == j) for j in range(n)] for i in range(n)]


def matmul(a: list, b: list) -> list:
    if not a:
        return []
    inner = len(b)
    cols = len(b[0]) if b else 0
    return [[sum(a[i][k] * b[k][j] for k in range(inner)) for j in range(cols)]
            for i in range(len(a))]


def smith_normal_form(m: list, ncols: int = None):
    """Return (S, U, V) with U*m*V = S diagonal, each diagonal entry dividing the next.

    U and V are unimodular.  Pivots are chosen by smallest absolute value.
    """
    rows = len(m)
    cols = len(m[0]) if rows else (ncols or 0)
    a = [list(r) for r in m]
    u = identity(rows)
    v = identity(cols)

    def swap_rows(i, j):
        a[i], a[j] = a[j], a[i]
        u[i], u[j] = u[j], u[i]

    def swap_cols(i, j):
        for r in a:
            r[i], r[j] = r[j], r[i]
        for r in v:
            r[i], r[j] = r[j], r[i]

    def add_row(src, dst, k):  # row dst += k * row src
        if k:
            a[dst] = [x + k * y for x, y in zip(a[dst], a[src])]
            u[dst] = [x + k * y for x, y in zip(u[dst], u[src])]

    def add_col(src, dst, k):  # col dst += k * col src
        if k:
            for r in a:
                r[dst] += k * r[src]
            for r in v:
                r[dst] += k * r[src]

    def negate_row(i):
        a[i] = [-x for x in a[i]]
        u[i] = [-x for x in u[i]]

    t = 0
    while t < min(rows, cols):
        nonzero = [(abs(a[i][j]), i, j) for i in range(t, rows) for j in range(t, cols) if a[i][j]]
        if not nonzero:
            break
        _, pi, pj = min(nonzero)
        swap_rows(t, pi)
        swap_cols(t, pj)
        while True:
            p = a[t][t]
            done = True
            for i in range(t + 1, rows):
                if a[i][t]:
                    add_row(t, i, -(a[i][t] // p))
                    if a[i][t]:
                        done = False
            for j in range(t + 1, cols):
                if a[t][j]:
                    add_col(t, j, -(a[t][j] // p))
                    if a[t][j]:
                        done = False
            if not done:
                # move the smallest remainder into the pivot slot
                cand = [(abs(a[i][t]), i, t) for i in range(t, rows) if a[i][t]]
                cand += [(abs(a[t][j]), t, j) for j in range(t, cols) if a[t][j]]
                _, ci, cj = min(cand)
                swap_rows(t, ci)
                swap_cols(t, cj)
                continue
            # pivot must divide the rest of the block
            bad = next(((i, j) for i in range(t + 1, rows) for j in range(t + 1, cols)
                        if a[i][j] % p), None)
            if bad is None:
                break
            add_row(bad[0], t, 1)
        if a[t][t] < 0:
            negate_row(t)
        t += 1
    return a, u, v


def minor_gcd(m: list, k: int) -> int:
    """gcd of all k x k minors (oracle for tests; exponential)."""
    from itertools import combinations
    rows = len(m)
    cols = len(m[0]) if rows else 0
    out = 0
    for rs in combinations(range(rows), k):
        for cs in combinations(range(cols), k):
            out = gcd(out, _int_det([[m[i][j] for j in cs] for i in rs]))
    return out


def _int_det(a: list) -> int:
    n = len(a)
    if n == 0:
        return 1
    if n == 1:
        return a[0][0]
    return sum((-1) ** j * a[0][j] * _int_det([r[:j] + r[j + 1:] for r in a[1:]])
               for j in range(n) if a[0][j])


def int_det(a: list) -> int:
    """Determinant via fraction-free Bareiss elimination."""
    n = len(a)
    if n == 0:
        return 1
    m = [list(r) for r in a]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if m[k][k] == 0:
            swap = next((i for i in range(k + 1, n) if m[i][k]), None)
            if swap is None:
                return 0
            m[k], m[swap] = m[swap], m[k]
            sign = -sign
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                m[i][j] = (m[i][j] * m[k][k] - m[i][k] * m[k][j]) // prev
        prev = m[k][k]
    return sign * m[n - 1][n - 1]


def in_row_space(m: list, vec: list) -> bool:
    """Is ``vec`` an integer combination of the rows of ``m``?"""
    if not any(vec):
        return True
    if not m:
        return False
    s, _, v = smith_normal_form(m)
    w = [sum(vec[i] * v[i][j] for i in range(len(vec))) for j in range(len(vec))]
    for j, x in enumerate(w):
        d = s[j][j] if j < min(len(s), len(s[0])) else 0
        if d == 0:
            if x:
                return False
        elif x % d:
            return False
    return True


# -- abelian groups -------------------------------------------------------------------

@dataclass(frozen=True)
class AbelianGroup:
    """Z^rank (+) Z_d1 (+) ... with the images of the presentation generators.

    A coordinate vector is ``(free, torsion)``: ``rank`` integers followed by
    one residue per torsion factor.
    """

    rank: int
    torsion: tuple
    labels: tuple
    images: dict  # label -> (free tuple, torsion tuple)
    relation_matrix: tuple = ()

    def order(self):
        return None if self.rank else prod(self.torsion)

    def torsion_order(self) -> int:
        return prod(self.torsion)

    def coordinates(self, vec) -> tuple:
        """Coordinates of an integer combination of generators (dict label->int or list)."""
        if not isinstance(vec, dict):
            vec = dict(zip(self.labels, vec))
        free = [0] * self.rank
        tors = [0] * len(self.torsion)
        for lab, c in vec.items():
            if not c:
                continue
            f, t = self.images[lab]
            free = [a + c * b for a, b in zip(free, f)]
            tors = [a + c * b for a, b in zip(tors, t)]
        return tuple(free), tuple(x % d for x, d in zip(tors, self.torsion))

    def is_zero(self, vec) -> bool:
        f, t = self.coordinates(vec)
        return not any(f) and not any(t)

    def __str__(self) -> str:
        return format_group(self.rank, self.torsion)


def format_group(rank: int, torsion) -> str:
    parts = []
    if rank:
        parts.append(f"Z^{rank}")
    parts += [f"Z_{d}" for d in torsion]
    return "H1 = " + (" (+) ".join(parts) if parts else "0")


def primary_decomposition(torsion) -> list:
    """Prime-power factors, for display."""
    out = []
    for d in torsion:
        p = 2
        while d > 1:
            if d % p == 0:
                q = 1
                while d % p == 0:
                    d //= p
                    q *= p
                out.append(q)
            p += 1
    return sorted(out)


def abelianize(p: GroupPresentation) -> tuple:
    """Exponent-sum matrix: one row per relator, one column per generator."""
    labels = tuple(p.generators)
    col = {g: i for i, g in enumerate(labels)}
    rows = []
    for r in p.relators:
        row = [0] * len(labels)
        for g, e in r.word.letters:
            row[col[g]] += e
        rows.append(row)
    return rows, labels


def collapsed_matrix(p: GroupPresentation, c: ComponentPartition) -> tuple:
    """Exponent sums with the overpass generators of each component merged into g_i.

    Only a display aid: in the presence of orientation-reversing edges the
    merge loses the sign flips, so every computation uses ``abelianize``.
    """
    rows, labels = abelianize(p)
    keep = [g for g in labels if not g.startswith("x")]
    new_labels = [f"g{i}" for i in range(1, c.nu + 1)] + keep
    out = []
    for row in rows:
        new = [0] * len(new_labels)
        for g, v in zip(labels, row):
            if g.startswith("x"):
                new[c.assignment[int(g[1:])] - 1] += v
            else:
                new[new_labels.index(g)] += v
        out.append(new)
    return out, tuple(new_labels)


def group_from_relations(rows: list, labels) -> AbelianGroup:
    labels = tuple(labels)
    m = len(labels)
    if m == 0:
        return AbelianGroup(0, (), labels, {}, ())
    s, _, v = smith_normal_form(rows, ncols=m)
    diag = [s[i][i] for i in range(min(len(s), m))] if rows else []
    diag += [0] * (m - len(diag))
    torsion_idx = [i for i, d in enumerate(diag) if d >= 2]
    free_idx = [i for i, d in enumerate(diag) if d == 0]
    images = {}
    for j, g in enumerate(labels):
        rowv = v[j]
        free = tuple(rowv[i] for i in free_idx)
        tors = tuple(rowv[i] % diag[i] for i in torsion_idx)
        images[g] = (free, tors)
    return AbelianGroup(len(free_idx), tuple(diag[i] for i in torsion_idx), labels, images,
                        tuple(tuple(r) for r in rows))


def h1(p: GroupPresentation, c: ComponentPartition = None) -> AbelianGroup:
    """H_1 of the presented group.  The partition is accepted for reporting only."""
    rows, labels = abelianize(p)
    return group_from_relations(rows, labels)


def h1_diagram(d: ArrowDiagram) -> AbelianGroup:
    return h1(build_presentation(d))


def ambient_h1(d: ArrowDiagram) -> AbelianGroup:
    """H_1(M), from the presentation of the empty link in the same manifold."""
    return h1(build_presentation(empty_link(d.seifert)))


# -- homology classes -----------------------------------------------------------------

@dataclass(frozen=True)
class HomologyClass:
    eta_a: tuple
    eta_b: tuple
    eta_h: int
    eta_l: tuple

    def is_zero_coefficients(self) -> bool:
        return not (any(self.eta_a) or any(self.eta_b) or self.eta_h or any(self.eta_l))

    def as_vector(self) -> dict:
        """Integer combination of the ambient generators a_i, b_i, h, l_j."""
        out = {}
        for i, v in enumerate(self.eta_a, start=1):
            out[f"a{i}"] = v
        for i, v in enumerate(self.eta_b, start=1):
            out[f"b{i}"] = v
        out["h"] = self.eta_h
        for j, v in enumerate(self.eta_l, start=1):
            out[f"l{j}"] = v
        return out


def homology_class(d: ArrowDiagram, component: int) -> HomologyClass:
    problems = validate(d)
    if problems:
        raise ValueError("invalid diagram: " + "; ".join(problems))
    part = components(d)
    if not 1 <= component <= part.nu:
        raise ValueError(f"unknown component {component} (diagram has {part.nu})")
    mine = set(part.generators(component))
    eps = d.eps_table()
    s = d.seifert
    eta_a = []
    eta_b = []
    for i in range(1, s.genus + 1):
        eta_a.append(sum(eps[b.index] for b in d.boundary_on_edge("a", i) if b.index in mine))
        if s.base_orientable:
            eta_b.append(sum(eps[b.index] for b in d.boundary_on_edge("b", i) if b.index in mine))
    eta_h = sum(eps[2 * d.t + a.index] for a in d.arrows if 2 * d.t + a.index in mine)
    eta_l = tuple(sum(e for i, e in y if i in mine) for y in d.fiber_words)
    return HomologyClass(tuple(eta_a), tuple(eta_b), eta_h, eta_l)


def class_image(d: ArrowDiagram, component: int) -> tuple:
    """Coordinates of the class of a component in H_1(M)."""
    amb = ambient_h1(d)
    return amb.coordinates(homology_class(d, component).as_vector())


def class_is_trivial(d: ArrowDiagram, component: int) -> bool:
    f, t = class_image(d, component)
    return not any(f) and not any(t)
