"""Splittings, characters, elementary ideals and twisted Alexander polynomials."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, product
from math import gcd

from .fox import AlexanderMatrix, alexander_fox_matrix, apply_character, fox_row_ZH
from .grouppres import GroupPresentation
from .homology import AbelianGroup, h1, identity, matmul, smith_normal_form
from .ring import (INTEGER_CONTENT, MONIC, Cyclo, LaurentPoly, determinant, format_poly,
                   gcd_list, normalize, project_one_variable)


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


# -- splitting ----------------------------------------------------------------------

@dataclass(frozen=True)
class Splitting:
    """H = TorsH x G with a chosen free basis.

    ``section`` sends every generator label to ``(torsion residues, free exponents)``
    in the split coordinates.  ``basis`` lists the elements whose classes form
    the free basis (labels of presentation generators, or ``e<i>`` for a raw
    Smith-form coordinate used as a fallback).
    """

    torsion: tuple
    rank: int
    section: dict
    basis: tuple

    def coordinates(self, vec: dict) -> tuple:
        tors = [0] * len(self.torsion)
        free = [0] * self.rank
        for lab, c in vec.items():
            t, f = self.section[lab]
            tors = [a + c * b for a, b in zip(tors, t)]
            free = [a + c * b for a, b in zip(free, f)]
        return tuple(x % d for x, d in zip(tors, self.torsion)), tuple(free)


def default_candidates(labels) -> list:
    """Surface generators a_i, b_i first, then h, the fiber generators l_j, then overpasses.

    Moves never relabel the ambient generators, so preferring them keeps the
    one-variable projection comparable across diagrams of the same link.
    """
    def key(lab):
        if lab[0] in "ab" and lab[1:].isdigit():
            return (0, int(lab[1:]), 0 if lab[0] == "a" else 1)
        if lab == "h":
            return (1, 0, 0)
        if lab.startswith("l"):
            return (2, int(lab[1:]), 0)
        if lab.startswith("x"):
            return (3, int(lab[1:]), 0)
        return (4, 0, 0)
    return sorted(labels, key=key)


def _unimodular_inverse(b: list) -> list:
    s, u, v = smith_normal_form(b)
    if any(s[i][i] != 1 for i in range(len(b))):
        raise ValueError("matrix is not unimodular")
    return matmul(v, u)


def _extends_basis(selected: list, vec: tuple) -> bool:
    """Do the rows selected + [vec] span a saturated sublattice of full row rank?"""
    rows = [list(r) for r in selected] + [list(vec)]
    s, _, _ = smith_normal_form(rows)
    return all(s[i][i] == 1 for i in range(len(rows)))


def make_splitting(H: AbelianGroup, candidates=None) -> Splitting:
    """Deterministic splitting: free basis picked greedily among the candidates.

    A candidate is kept when its free image extends the previously kept ones to
    part of a Z-basis of the free quotient; kept candidates get zero torsion
    component.  Missing directions are completed through the Smith form of the kept rows.
    """
    rank = H.rank
    torsion = H.torsion
    labels = list(candidates) if candidates is not None else default_candidates(H.labels)
    chosen = []
    chosen_vecs = []
    chosen_tors = []
    for lab in labels:
        if len(chosen) == rank:
            break
        f, t = H.images[lab]
        if not any(f):
            continue
        if _extends_basis(chosen_vecs, f):
            chosen.append(lab)
            chosen_vecs.append(f)
            chosen_tors.append(t)
    if len(chosen) < rank:
        # complete the saturated rows to a basis: if U*B*V = [I 0], the last
        # rows of V^-1 finish the job
        if chosen_vecs:
            _, _, v = smith_normal_form([list(x) for x in chosen_vecs])
            vinv = _unimodular_inverse(v)
        else:
            vinv = identity(rank)
        for i in range(len(chosen), rank):
            chosen.append(f"e{i + 1}")
            chosen_vecs.append(tuple(vinv[i]))
            chosen_tors.append(tuple(0 for _ in torsion))
    binv = _unimodular_inverse([list(v) for v in chosen_vecs]) if rank else []
    section = {}
    for lab in H.labels:
        f, t = H.images[lab]
        newf = [sum(f[k] * binv[k][j] for k in range(rank)) for j in range(rank)]
        newt = list(t)
        for coeff, ct in zip(newf, chosen_tors):
            newt = [a - coeff * b for a, b in zip(newt, ct)]
        section[lab] = (tuple(x % d for x, d in zip(newt, torsion)), tuple(newf))
    return Splitting(tuple(torsion), rank, section, tuple(chosen))


# -- characters ------------------------------------------------------------------------

@dataclass(frozen=True)
class Character:
    """sigma(tau_i) = zeta_{d_i}^{e_i} on the torsion generators tau_i."""

    orders: tuple
    exponents: tuple

    def is_trivial(self) -> bool:
        return not any(self.exponents)

    @property
    def conductor(self) -> int:
        m = 1
        for d, e in zip(self.orders, self.exponents):
            m = _lcm(m, d // gcd(d, e) if e else 1)
        return m

    def generator_values(self) -> list:
        return [Cyclo.root(d, e) for d, e in zip(self.orders, self.exponents)]

    def value(self, tors) -> Cyclo:
        big = 1
        for d in self.orders:
            big = _lcm(big, d)
        k = sum(e * t * (big // d) for d, e, t in zip(self.orders, self.exponents, tors))
        return Cyclo.root(big, k % big)

    def label(self) -> str:
        vals = [str(v) for v in self.generator_values()]
        if not vals:
            return "1"
        if len(vals) == 1:
            return vals[0]
        return "(" + ",".join(vals) + ")"

    def describe(self) -> str:
        if not self.orders:
            return "trivial torsion"
        return ", ".join(f"tau{i + 1} (order {d}) -> {v}"
                         for i, (d, v) in enumerate(zip(self.orders, self.generator_values())))


def characters(s: Splitting) -> list:
    return [Character(tuple(s.torsion), e) for e in product(*(range(d) for d in s.torsion))]


# -- elementary ideals --------------------------------------------------------------------

def _is_unit(p: LaurentPoly, convention: str) -> bool:
    return p.is_unit(convention)


def reduce_matrix(rows, convention: str):
    """Eliminate unit pivots; return (residual rows, number of pivots removed).

    Eliminating a unit pivot u at (i, j) leaves the ideal of k-minors of the
    original equal to the ideal of (k-1)-minors of the Schur complement.
    """
    a = [list(r) for r in rows]
    removed = 0
    while True:
        a = [r for r in a if any(not x.is_zero() for x in r)]
        if not a:
            break
        ncols = len(a[0])
        keep = [j for j in range(ncols) if any(not r[j].is_zero() for r in a)]
        if len(keep) < ncols:
            a = [[r[j] for j in keep] for r in a]
        pivot = None
        for i, r in enumerate(a):
            for j, x in enumerate(r):
                if not x.is_zero() and _is_unit(x, convention):
                    pivot = (i, j)
                    break
            if pivot:
                break
        if pivot is None:
            break
        i, j = pivot
        inv = a[i][j].unit_inverse()
        prow = a[i]
        new = []
        for k, r in enumerate(a):
            if k == i:
                continue
            f = r[j] * inv
            if f.is_zero():
                new.append([x for c, x in enumerate(r) if c != j])
            else:
                new.append([x - f * prow[c] for c, x in enumerate(r) if c != j])
        a = new
        removed += 1
    return a, removed


def elementary_ideal(A, d: int, reduce: bool = True, convention: str = MONIC) -> list:
    """Generators of E_d: the (m-d)-minors of A (m columns); {1} when d >= m.

    With ``reduce`` the matrix is first shrunk by unit-pivot elimination, which
    returns a smaller generating set of the same ideal.  ``convention`` decides
    what counts as a unit (only +-z^k under the integer-content convention).
    """
    rows = [list(r) for r in (A.rows if isinstance(A, AlexanderMatrix) else A)]
    m = A.ncols if isinstance(A, AlexanderMatrix) else (len(rows[0]) if rows else 0)
    nv = rows[0][0].nvars if rows and rows[0] else 1
    if d >= m:
        return [LaurentPoly.one(nv)]
    order = m - d
    if reduce:
        rows, removed = reduce_matrix(rows, convention)
        order -= removed
        if order <= 0:
            return [LaurentPoly.one(nv)]
    if not rows or order > min(len(rows), len(rows[0])):
        return []
    out = []
    ncols = len(rows[0])
    for rs in combinations(range(len(rows)), order):
        for cs in combinations(range(ncols), order):
            det = determinant([[rows[i][j] for j in cs] for i in rs])
            if not det.is_zero():
                out.append(det)
    return out


def e0_structure(H: AbelianGroup, sigma: Character) -> LaurentPoly:
    """The structural value of E_0 after sigma: 0 for infinite H, else sum sigma(h)."""
    if H.rank:
        return LaurentPoly.zero(1)
    if sigma.is_trivial():
        return LaurentPoly.from_coeffs([H.torsion_order()])
    return LaurentPoly.zero(1)


# -- twisted Alexander polynomials -------------------------------------------------------

@dataclass(frozen=True)
class TwistedPolynomial:
    sigma: Character
    value: LaurentPoly
    convention: str
    splitting: Splitting = field(repr=False, default=None)

    def __str__(self) -> str:
        return format_poly(self.value)


def convention_for(sigma: Character) -> str:
    return INTEGER_CONTENT if sigma.is_trivial() else MONIC


def delta_from_matrix(A: AlexanderMatrix, convention: str) -> LaurentPoly:
    """gcd of the first elementary ideal after projecting to one variable."""
    rows = [[project_one_variable(x) for x in r] for r in A.rows]
    if A.ncols <= 1:
        gens = [LaurentPoly.one(1)]
    else:
        gens = elementary_ideal(rows, 1, reduce=True, convention=convention)
    return normalize(gcd_list(gens, convention), convention)


class UnsupportedLink(ValueError):
    pass


def twisted_alexander(p: GroupPresentation, c=None, sigma_index="all", splitting=None,
                      H=None) -> list:
    """Delta^sigma for the requested characters (index into ``characters`` or "all")."""
    H = H or h1(p)
    if H.rank == 0:
        raise UnsupportedLink("no free homology: nothing to project onto (empty link?)")
    s = splitting or make_splitting(H)
    chars = characters(s)
    if sigma_index == "all":
        chosen = chars
    else:
        if not 0 <= int(sigma_index) < len(chars):
            raise IndexError(f"sigma index {sigma_index} out of range 0..{len(chars) - 1}")
        chosen = [chars[int(sigma_index)]]
    out = []
    for sigma in chosen:
        conv = convention_for(sigma)
        A = alexander_fox_matrix(p, H, sigma, s)
        out.append(TwistedPolynomial(sigma, delta_from_matrix(A, conv), conv, s))
    return out


def multivariate_e1(p: GroupPresentation, sigma_index: int = 0, splitting=None) -> list:
    """Raw generators of sigma-tilde(E_1) in C[G], before any projection."""
    H = h1(p)
    s = splitting or make_splitting(H)
    sigma = characters(s)[sigma_index]
    A = alexander_fox_matrix(p, H, sigma, s)
    return elementary_ideal(A, 1, reduce=True, convention=convention_for(sigma))


def delta_with_images(p: GroupPresentation, section: dict, torsion, rank: int,
                      sigma: Character) -> LaurentPoly:
    """Delta for a presentation whose generators are sent into a (possibly larger)
    split group by ``section`` (label -> (torsion, free)); used for restrictions."""
    nv = max(rank, 1)
    rows = []
    for rel in p.relators:
        zh_row = fox_row_ZH(rel.word, p.generators, section, torsion)
        rows.append(tuple(apply_character(cell, sigma, rank) if cell else LaurentPoly.zero(nv)
                          for cell in zh_row))
    while len(rows) < len(p.generators):
        rows.append(tuple(LaurentPoly.zero(nv) for _ in p.generators))
    A = AlexanderMatrix(tuple(p.generators), tuple(rows))
    return delta_from_matrix(A, convention_for(sigma))


def polynomial_multiset(polys) -> list:
    """Sorted display strings, for comparing families of Delta^sigma across splittings."""
    return sorted(format_poly(normalize(t.value if isinstance(t, TwistedPolynomial) else t,
                                        t.convention if isinstance(t, TwistedPolynomial)
                                        else MONIC)) for t in polys)


# -- connected sums --------------------------------------------------------------------

@dataclass
class ConnectedSumReport:
    ok: bool
    rows: list  # (sigma label, lhs, rhs, equal)

    def failures(self) -> list:
        return [r for r in self.rows if not r[3]]


def restricted_section(sub: GroupPresentation, label_map: dict, big: Splitting,
                       big_labels) -> dict:
    """Images of ``sub``'s generators in the split coordinates of the big group.

    ``label_map`` sends each generator of ``sub`` to a generator label of the
    big presentation, or to "1" for the identity.
    """
    zero = (tuple(0 for _ in big.torsion), tuple(0 for _ in range(big.rank)))
    out = {}
    for lab in sub.generators:
        target = label_map.get(lab, lab)
        if target == "1":
            out[lab] = zero
        elif target.startswith("-"):
            t, f = big.section[target[1:]]
            out[lab] = (tuple((-x) % d for x, d in zip(t, big.torsion)), tuple(-x for x in f))
        else:
            if target not in big.section:
                raise KeyError(f"{lab} maps to unknown generator {target}")
            out[lab] = big.section[target]
    return out


def connected_sum_check(total: GroupPresentation, left: GroupPresentation,
                        right: GroupPresentation, left_map: dict, right_map: dict):
    """Check Delta_L^sigma == Delta_{L1}^{sigma_1} * Delta_{L2}^{sigma_2} for every sigma.

    sigma_1 and sigma_2 are obtained by composing each factor's generator images
    with the inclusion into H_1 of the sum.
    """
    H = h1(total)
    s = make_splitting(H)
    left_sec = restricted_section(left, left_map, s, total.generators)
    right_sec = restricted_section(right, right_map, s, total.generators)
    rows = []
    ok = True
    for sigma in characters(s):
        conv = convention_for(sigma)
        A = alexander_fox_matrix(total, H, sigma, s)
        lhs = delta_from_matrix(A, conv)
        d1 = delta_with_images(left, left_sec, s.torsion, s.rank, sigma)
        d2 = delta_with_images(right, right_sec, s.torsion, s.rank, sigma)
        rhs = normalize(d1 * d2, conv)
        eq = lhs == rhs
        ok &= eq
        rows.append((sigma.label(), format_poly(lhs), format_poly(rhs), eq))
    return ConnectedSumReport(ok, rows)
