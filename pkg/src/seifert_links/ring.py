"""Exact coefficient arithmetic.

``Cyclo`` is an element of the cyclotomic field Q(zeta_m), stored as its
reduced residue modulo the m-th cyclotomic polynomial.  ``LaurentPoly`` is a
multivariate Laurent polynomial whose coefficients all live in one such field.

Conductors are kept canonical: Q(zeta_2k) == Q(zeta_k) for odd k, so a
conductor congruent to 2 mod 4 is never stored.
"""

from __future__ import annotations

from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import gcd

INTEGER_CONTENT = "integer-content"
MONIC = "monic"


def _lcm(a: int, b: int) -> int:
    return a * b // gcd(a, b)


def canonical_conductor(m: int) -> int:
    if m % 4 == 2:
        return m // 2
    return m


# -- dense rational polynomials (lists, constant term first) -----------------

def _trim(p: list) -> list:
    while p and p[-1] == 0:
        p.pop()
    return p


def _poly_mul(p: list, q: list) -> list:
    if not p or not q:
        return []
    out = [0] * (len(p) + len(q) - 1)
    for i, a in enumerate(p):
        if a == 0:
            continue
        for j, b in enumerate(q):
            if b:
                out[i + j] += a * b
    return _trim(out)


def _poly_divmod(p: list, q: list) -> tuple[list, list]:
    p = [Fraction(c) for c in p]
    _trim(p)
    if not q:
        raise ZeroDivisionError("polynomial division by zero")
    lead = Fraction(q[-1])
    dq = len(q) - 1
    quot = [Fraction(0)] * max(len(p) - dq, 0)
    while len(p) - 1 >= dq and p:
        shift = len(p) - 1 - dq
        c = p[-1] / lead
        quot[shift] = c
        for i, b in enumerate(q):
            p[i + shift] -= c * b
        _trim(p)
    return _trim(quot), p


@lru_cache(maxsize=None)
def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of Phi_m, constant term first."""
    if m < 1:
        raise ValueError("conductor must be positive")
    num = [-1] + [0] * (m - 1) + [1]
    for d in range(1, m):
        if m % d == 0:
            num, rem = _poly_divmod(num, list(cyclotomic_polynomial(d)))
            assert not rem
    return tuple(int(c) for c in num)


def euler_phi(m: int) -> int:
    return len(cyclotomic_polynomial(m)) - 1


def _reduce_mod_phi(p: list, m: int) -> tuple[Fraction, ...]:
    phi = cyclotomic_polynomial(m)
    n = len(phi) - 1
    p = [Fraction(c) for c in p]
    # Phi_m is monic, so reduction is exact over Z.
    for k in range(len(p) - 1, n - 1, -1):
        c = p[k]
        if c:
            for i in range(n + 1):
                p[k - n + i] -= c * phi[i]
    p = p[:n] + [Fraction(0)] * max(0, n - len(p))
    return tuple(p)


class Cyclo:
    """An element of Q(zeta_m)."""

    __slots__ = ("m", "c")

    def __init__(self, m: int, coeffs):
        coeffs = list(coeffs)
        if m % 4 == 2 and m > 2:
            # rewrite powers of zeta_2k (k odd) as powers of zeta_k
            k = m // 2
            conv = [Fraction(0)] * k
            for i, a in enumerate(coeffs):
                if a:
                    conv[(i * (k + 1) // 2) % k] += -a if i % 2 else a
            coeffs, m = conv, k
        elif m == 2:
            coeffs = [sum(-a if i % 2 else a for i, a in enumerate(coeffs))]
            m = 1
        self.m = m
        self.c = _reduce_mod_phi(coeffs, m) if len(coeffs) != euler_phi(m) \
            else tuple(Fraction(x) for x in coeffs)

    @classmethod
    def rational(cls, q) -> "Cyclo":
        return cls(1, (Fraction(q),))

    @classmethod
    def root(cls, m: int, e: int) -> "Cyclo":
        """zeta_m ** e."""
        e %= m
        g = gcd(m, e) if e else m
        m, e = m // g, e // g
        coeffs = [0] * (e + 1)
        coeffs[e] = 1
        return cls(m, coeffs)

    # -- helpers
    def lift(self, m: int) -> "Cyclo":
        m = canonical_conductor(m)
        if m == self.m:
            return self
        if m % self.m:
            raise ValueError(f"cannot embed Q(zeta_{self.m}) in Q(zeta_{m})")
        step = m // self.m
        coeffs = [Fraction(0)] * ((len(self.c) - 1) * step + 1)
        for i, a in enumerate(self.c):
            coeffs[i * step] = a
        return Cyclo(m, coeffs)

    def _pair(self, other):
        if not isinstance(other, Cyclo):
            other = Cyclo.rational(other)
        if self.m == other.m:
            return self, other
        m = canonical_conductor(_lcm(self.m, other.m))
        return self.lift(m), other.lift(m)

    def is_zero(self) -> bool:
        return not any(self.c)

    def is_rational(self) -> bool:
        return not any(self.c[1:])

    def rational_value(self) -> Fraction:
        if not self.is_rational():
            raise ValueError(f"{self} is not rational")
        return self.c[0] if self.c else Fraction(0)

    def is_root_of_unity(self) -> bool:
        nz = [(i, a) for i, a in enumerate(self.c) if a]
        if len(nz) == 1 and abs(nz[0][1]) == 1:
            return True
        # general check: x**k == 1 for k = 2m (orders divide 2m)
        return (self ** (2 * self.m)) == Cyclo.rational(1)

    # -- arithmetic
    def __add__(self, other):
        a, b = self._pair(other)
        return Cyclo(a.m, tuple(x + y for x, y in zip(a.c, b.c)))

    __radd__ = __add__

    def __neg__(self):
        return Cyclo(self.m, tuple(-x for x in self.c))

    def __sub__(self, other):
        a, b = self._pair(other)
        return Cyclo(a.m, tuple(x - y for x, y in zip(a.c, b.c)))

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        a, b = self._pair(other)
        if a.m == 1:
            return Cyclo(1, (a.c[0] * b.c[0],))
        return Cyclo(a.m, _poly_mul(list(a.c), list(b.c)) or [0])

    __rmul__ = __mul__

    def inverse(self) -> "Cyclo":
        if self.is_zero():
            raise ZeroDivisionError("inverse of zero in cyclotomic field")
        if self.m == 1:
            return Cyclo(1, (1 / self.c[0],))
        # extended Euclid of the residue against Phi_m
        r0, r1 = [Fraction(c) for c in cyclotomic_polynomial(self.m)], _trim(list(self.c))
        s0, s1 = [], [Fraction(1)]
        while len(r1) > 1:
            q, r = _poly_divmod(r0, r1)
            r0, r1 = r1, r
            qs = _poly_mul(q, s1)
            s0, s1 = s1, _trim([(s0[i] if i < len(s0) else 0) - (qs[i] if i < len(qs) else 0)
                                for i in range(max(len(s0), len(qs)))])
        inv = [c / r1[0] for c in s1]
        return Cyclo(self.m, inv)

    def __truediv__(self, other):
        a, b = self._pair(other)
        return a * b.inverse()

    def __pow__(self, k: int):
        if k < 0:
            return self.inverse() ** (-k)
        out = Cyclo.rational(1).lift(self.m)
        base = self
        while k:
            if k & 1:
                out = out * base
            base = base * base
            k >>= 1
        return out

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = Cyclo.rational(other)
        if not isinstance(other, Cyclo):
            return NotImplemented
        a, b = self._pair(other)
        return a.c == b.c

    def __hash__(self):
        if self.is_rational():
            return hash(self.rational_value())
        return hash((self.m, self.c))

    def __repr__(self):
        return f"Cyclo({self.m}, {[str(x) for x in self.c]})"

    def __str__(self):
        if self.is_rational():
            return str(self.rational_value())
        terms = []
        for i, a in enumerate(self.c):
            if not a:
                continue
            if i == 0:
                mono = ""
            elif i == 1:
                mono = f"zeta{self.m}"
            else:
                mono = f"zeta{self.m}^{i}"
            if not mono:
                terms.append((a < 0, str(abs(a))))
            elif abs(a) == 1:
                terms.append((a < 0, mono))
            else:
                terms.append((a < 0, f"{abs(a)}*{mono}"))
        return _join_terms(terms)


def _join_terms(terms) -> str:
    if not terms:
        return "0"
    neg, body = terms[0]
    out = ("-" if neg else "") + body
    for neg, body in terms[1:]:
        out += (" - " if neg else " + ") + body
    return out


def _as_cyclo(c) -> Cyclo:
    return c if isinstance(c, Cyclo) else Cyclo.rational(c)


class LaurentPoly:
    """Sparse Laurent polynomial in ``nvars`` variables over Q(zeta_m)."""

    __slots__ = ("nvars", "m", "terms")

    def __init__(self, nvars: int, terms=None, m: int = 1):
        self.nvars = nvars
        conductor = canonical_conductor(m)
        clean = {}
        for exp, c in (terms or {}).items():
            c = _as_cyclo(c)
            if len(exp) != nvars:
                raise ValueError("exponent vector has wrong length")
            conductor = canonical_conductor(_lcm(conductor, c.m))
            clean[tuple(exp)] = c
        out = {}
        for exp, c in clean.items():
            c = c.lift(conductor)
            if exp in out:
                c = out[exp] + c
            if c.is_zero():
                out.pop(exp, None)
            else:
                out[exp] = c
        self.m = conductor
        self.terms = out

    # -- constructors
    @classmethod
    def zero(cls, nvars: int = 1) -> "LaurentPoly":
        return cls(nvars)

    @classmethod
    def one(cls, nvars: int = 1) -> "LaurentPoly":
        return cls(nvars, {(0,) * nvars: 1})

    @classmethod
    def monomial(cls, exp, coeff=1) -> "LaurentPoly":
        exp = tuple(exp)
        return cls(len(exp), {exp: coeff})

    @classmethod
    def from_coeffs(cls, coeffs, low: int = 0) -> "LaurentPoly":
        """One-variable polynomial from ascending coefficients starting at z**low."""
        return cls(1, {(low + i,): c for i, c in enumerate(coeffs) if c != 0})

    @classmethod
    def variable(cls, i: int = 0, nvars: int = 1) -> "LaurentPoly":
        exp = [0] * nvars
        exp[i] = 1
        return cls.monomial(exp)

    # -- predicates
    def is_zero(self) -> bool:
        return not self.terms

    def is_monomial(self) -> bool:
        return len(self.terms) == 1

    def is_unit(self, convention: str = MONIC) -> bool:
        """Units of the Laurent ring: c * z**e with c a unit of the scalars.

        Under the integer-content convention the scalar ring is Z (or Z[zeta]),
        so only roots of unity count; otherwise every nonzero scalar does.
        """
        if len(self.terms) != 1:
            return False
        (c,) = self.terms.values()
        if convention == INTEGER_CONTENT:
            return c.is_root_of_unity()
        return True

    def is_rational(self) -> bool:
        return all(c.is_rational() for c in self.terms.values())

    def _check(self, other: "LaurentPoly"):
        if self.nvars != other.nvars:
            raise ValueError(f"variable count mismatch: {self.nvars} vs {other.nvars}")

    # -- arithmetic
    def __add__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly(self.nvars, {(0,) * self.nvars: other})
        self._check(other)
        terms = dict(self.terms)
        m = canonical_conductor(_lcm(self.m, other.m))
        terms = {e: c.lift(m) for e, c in terms.items()}
        for e, c in other.terms.items():
            c = c.lift(m)
            s = terms[e] + c if e in terms else c
            if s.is_zero():
                terms.pop(e, None)
            else:
                terms[e] = s
        return _raw(self.nvars, terms, m)

    __radd__ = __add__

    def __neg__(self):
        return _raw(self.nvars, {e: -c for e, c in self.terms.items()}, self.m)

    def __sub__(self, other):
        if not isinstance(other, LaurentPoly):
            other = LaurentPoly(self.nvars, {(0,) * self.nvars: other})
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if not isinstance(other, LaurentPoly):
            c = _as_cyclo(other)
            return LaurentPoly(self.nvars, {e: a * c for e, a in self.terms.items()})
        self._check(other)
        m = canonical_conductor(_lcm(self.m, other.m))
        out = {}
        for e1, c1 in self.terms.items():
            c1 = c1.lift(m)
            for e2, c2 in other.terms.items():
                e = tuple(a + b for a, b in zip(e1, e2))
                c = c1 * c2.lift(m)
                if e in out:
                    c = out[e] + c
                out[e] = c
        return _raw(self.nvars, {e: c for e, c in out.items() if not c.is_zero()}, m)

    __rmul__ = __mul__

    def __pow__(self, k: int):
        if k < 0:
            if not self.is_monomial():
                raise ValueError("only monomials have Laurent inverses")
            return self.unit_inverse() ** (-k)
        out = LaurentPoly.one(self.nvars)
        for _ in range(k):
            out = out * self
        return out

    def unit_inverse(self) -> "LaurentPoly":
        if not self.is_monomial():
            raise ValueError(f"{self} is not a unit")
        ((e, c),) = self.terms.items()
        return LaurentPoly(self.nvars, {tuple(-a for a in e): c.inverse()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly(self.nvars, {(0,) * self.nvars: other})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        if self.nvars != other.nvars or set(self.terms) != set(other.terms):
            return False
        return all(self.terms[e] == other.terms[e] for e in self.terms)

    def __hash__(self):
        return hash((self.nvars, frozenset(self.terms)))

    # -- structure
    def min_exponents(self) -> tuple[int, ...]:
        if not self.terms:
            return (0,) * self.nvars
        return tuple(min(e[i] for e in self.terms) for i in range(self.nvars))

    def shift(self, exp) -> "LaurentPoly":
        return _raw(self.nvars, {tuple(a + b for a, b in zip(e, exp)): c
                                 for e, c in self.terms.items()}, self.m)

    def leading(self) -> tuple[tuple[int, ...], Cyclo]:
        e = max(self.terms)
        return e, self.terms[e]

    def degree(self) -> int:
        if self.nvars != 1:
            raise ValueError("degree is defined for one-variable polynomials")
        if not self.terms:
            return -1
        return max(e[0] for e in self.terms) - min(e[0] for e in self.terms)

    def coefficients(self) -> list[Cyclo]:
        """Ascending dense coefficients of a one-variable polynomial after shifting."""
        if self.nvars != 1:
            raise ValueError("coefficients() needs one variable")
        if not self.terms:
            return []
        lo = min(e[0] for e in self.terms)
        hi = max(e[0] for e in self.terms)
        zero = Cyclo.rational(0).lift(self.m)
        return [self.terms.get((k,), zero) for k in range(lo, hi + 1)]

    def content(self) -> Fraction:
        """Positive gcd of the coefficients of a polynomial with rational coefficients."""
        vals = [c.rational_value() for c in self.terms.values()]
        if not vals:
            return Fraction(0)
        num = 0
        den = 1
        for v in vals:
            den = _lcm(den, v.denominator)
        for v in vals:
            num = gcd(num, int(v * den))
        return Fraction(num, den)

    def substitute(self, images) -> "LaurentPoly":
        """Evaluate at monomials: variable i -> images[i] (a LaurentPoly)."""
        if len(images) != self.nvars:
            raise ValueError("one image per variable required")
        nv = images[0].nvars if images else 1
        out = LaurentPoly.zero(nv)
        for e, c in self.terms.items():
            term = LaurentPoly(nv, {(0,) * nv: c})
            for img, k in zip(images, e):
                term = term * (img ** k)
            out = out + term
        return out

    def __repr__(self):
        return f"LaurentPoly({self.nvars}, {self})"

    def __str__(self):
        return format_poly(self)


def _raw(nvars: int, terms: dict, m: int) -> LaurentPoly:
    p = LaurentPoly.__new__(LaurentPoly)
    p.nvars = nvars
    p.m = m
    p.terms = terms
    return p


def format_poly(p: LaurentPoly, names=None) -> str:
    """Render with the highest monomial first, e.g. ``z^4 - 2*z^3 + 2*z - 1``."""
    if not p.terms:
        return "0"
    if names is None:
        names = ["z"] if p.nvars == 1 else [f"z{i + 1}" for i in range(p.nvars)]
    terms = []
    for e in sorted(p.terms, reverse=True):
        c = p.terms[e]
        factors = []
        for name, k in zip(names, e):
            if k == 1:
                factors.append(name)
            elif k:
                factors.append(f"{name}^{k}")
        mono = "*".join(factors)
        if c.is_rational():
            v = c.rational_value()
            neg = v < 0
            v = abs(v)
            if not mono:
                body = str(v)
            elif v == 1:
                body = mono
            else:
                body = f"{v}*{mono}"
        else:
            neg = False
            body = f"({c})" + (f"*{mono}" if mono else "")
        terms.append((neg, body))
    return _join_terms(terms)


# -- matrices -----------------------------------------------------------------

def determinant(rows) -> LaurentPoly:
    """Division-free determinant (Berkowitz) of a square matrix of LaurentPoly."""
    n = len(rows)
    if n == 0:
        return LaurentPoly.one(1)
    nv = rows[0][0].nvars
    if any(len(r) != n for r in rows):
        raise ValueError("determinant needs a square matrix")
    zero = LaurentPoly.zero(nv)
    one = LaurentPoly.one(nv)

    def mat_vec(A, v):
        return [sum((a * b for a, b in zip(row, v)), zero) for row in A]

    # characteristic polynomial coefficients, built up over leading submatrices
    vect = [one, -rows[0][0]]
    for r in range(1, n):
        R = [rows[r][j] for j in range(r)]           # row r, columns < r
        C = [rows[i][r] for i in range(r)]           # column r, rows < r
        A = [[rows[i][j] for j in range(r)] for i in range(r)]
        a = rows[r][r]
        # Toeplitz column: 1, -a, -R C, -R A C, -R A^2 C, ...
        col = [one, -a]
        v = C
        for _ in range(r):
            col.append(-sum((x * y for x, y in zip(R, v)), zero))
            v = mat_vec(A, v)
        new = []
        for i in range(r + 2):
            acc = zero
            for j in range(min(i, r) + 1):
                if i - j < len(col):
                    acc = acc + col[i - j] * vect[j]
            new.append(acc)
        vect = new
    det = vect[n]
    return det if n % 2 == 0 else -det


def project_one_variable(p: LaurentPoly) -> LaurentPoly:
    """Send every variable to z."""
    out = {}
    for e, c in p.terms.items():
        k = (sum(e),)
        out[k] = out[k] + c if k in out else c
    return LaurentPoly(1, out)


def normalize(p: LaurentPoly, convention: str = MONIC) -> LaurentPoly:
    """Canonical representative up to monomial and scalar units."""
    if p.is_zero():
        return p
    q = p.shift(tuple(-a for a in p.min_exponents()))
    _, lead = q.leading()
    if convention == INTEGER_CONTENT:
        if lead.is_rational():
            return -q if lead.rational_value() < 0 else q
        return q * lead.inverse()
    return q * lead.inverse()


def _to_dense(p: LaurentPoly) -> list:
    return p.coefficients()


def _dense_divmod(a: list, b: list, m: int) -> tuple[list, list]:
    zero = Cyclo.rational(0).lift(m)
    a = list(a)
    inv = b[-1].inverse()
    db = len(b) - 1
    q = [zero] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        k = len(a) - 1 - db
        c = a[-1] * inv
        q[k] = c
        for i, x in enumerate(b):
            a[i + k] = a[i + k] - c * x
        while a and a[-1].is_zero():
            a.pop()
    return q, a


def gcd_univariate(p: LaurentPoly, q: LaurentPoly, convention: str = MONIC) -> LaurentPoly:
    """gcd over Q(zeta_m)[z^{+-1}], returned in canonical (normalized) form."""
    if p.nvars != 1 or q.nvars != 1:
        raise ValueError("gcd_univariate needs one-variable polynomials")
    if p.is_zero():
        return normalize(q, convention)
    if q.is_zero():
        return normalize(p, convention)
    if p.degree() == 0 and q.degree() == 0 and convention == INTEGER_CONTENT \
            and p.is_rational() and q.is_rational():
        return LaurentPoly.from_coeffs([_fraction_gcd(p.content(), q.content())])
    m = canonical_conductor(_lcm(p.m, q.m))
    a = [c.lift(m) for c in _to_dense(p)]
    b = [c.lift(m) for c in _to_dense(q)]
    while b:
        _, r = _dense_divmod(a, b, m)
        a, b = b, r
    g = normalize(LaurentPoly.from_coeffs(a), MONIC)
    if convention == INTEGER_CONTENT and p.is_rational() and q.is_rational():
        # Gauss: gcd in Z[z] = gcd of contents times the primitive gcd
        c = _fraction_gcd(p.content(), q.content())
        return normalize(primitive_integer(g) * c, INTEGER_CONTENT)
    return g


def _fraction_gcd(a: Fraction, b: Fraction) -> Fraction:
    den = _lcm(a.denominator, b.denominator)
    return Fraction(gcd(int(a * den), int(b * den)), den)


def gcd_list(polys, convention: str = MONIC) -> LaurentPoly:
    out = LaurentPoly.zero(1)
    for p in polys:
        out = gcd_univariate(out, p, convention)
        if out.degree() == 0 and convention == MONIC:
            break
    return out


def exact_divide(p: LaurentPoly, q: LaurentPoly) -> LaurentPoly:
    """p / q for one-variable Laurent polynomials; raises if q does not divide p."""
    if q.is_zero():
        raise ZeroDivisionError("division by the zero polynomial")
    if p.is_zero():
        return p
    m = canonical_conductor(_lcm(p.m, q.m))
    a = [c.lift(m) for c in _to_dense(p)]
    b = [c.lift(m) for c in _to_dense(q)]
    quot, rem = _dense_divmod(a, b, m)
    if rem:
        raise ArithmeticError(f"{q} does not divide {p}")
    shift = p.min_exponents()[0] - q.min_exponents()[0]
    return LaurentPoly.from_coeffs(quot, low=shift)


def primitive_integer(p: LaurentPoly) -> LaurentPoly:
    """Scale a rational polynomial to a primitive integer one (sign kept)."""
    if p.is_zero():
        return p
    return p * (1 / p.content())


def minors(rows, order: int):
    """All minors of the given order, row subsets outermost."""
    from itertools import combinations
    nr = len(rows)
    nc = len(rows[0]) if rows else 0
    for rs in combinations(range(nr), order):
        for cs in combinations(range(nc), order):
            yield determinant([[rows[i][j] for j in cs] for i in rs])


def all_exponent_tuples(dims):
    return product(*(range(d) for d in dims))
