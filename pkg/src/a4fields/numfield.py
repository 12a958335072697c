"""Absolute number fields over Q with proven maximal orders.

A field is built from a monic irreducible defining polynomial; the maximal
order comes from the Pohst-Zassenhaus (Round 2) construction applied at every
prime whose square divides the starting order's discriminant, so field_disc
and the integral basis are certified, not heuristic.

Elements live in coordinates over the integral basis; multiplication runs
through a precomputed integer structure-constant table.  Real embeddings are
ordered by the ascending real roots of the defining polynomial, and signs at
those embeddings are certified through Sturm sequences.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

from .errors import CertificationFailure, Reducible, ZeroElement
from .intmatrix import IntMatrix, det_bareiss, hnf_column, lll_reduce
from .intpoly import (IntPoly, RatPoly, factorint, gf_factor, gf_norm, is_prime,
                      is_square, zfactor, zis_irreducible, zstrip)
from .sturm import RealRoots


def _frac_vec(v):
    return tuple(Fraction(x) for x in v)


def triangular_basis(vectors: list[list[int]]) -> list[list[int]]:
    """Canonical degree-triangular basis of the lattice spanned by integer
    vectors: column j of the result has its last nonzero entry (the pivot)
    at a strictly increasing coordinate, pivots positive.  For a full-rank
    order lattice in theta-power coordinates this makes basis element j a
    degree-j polynomial, and element 0 a rational number."""
    rev = [list(reversed(v)) for v in vectors]
    mat = IntMatrix.from_rows(rev).transpose()
    h, _ = hnf_column(mat)
    cols = [h.col(j) for j in range(h.cols) if any(h.col(j))]
    cols = [list(reversed(c)) for c in cols]
    cols.sort(key=lambda c: max(i for i in range(len(c)) if c[i]))
    return cols


class FieldElem:
    """Element of a NumberField in integral-basis coordinates."""

    __slots__ = ("parent", "coords")

    def __init__(self, parent, coords):
        self.parent = parent
        self.coords = _frac_vec(coords)

    def __eq__(self, other):
        return (isinstance(other, FieldElem) and self.parent is other.parent
                and self.coords == other.coords)

    def __hash__(self):
        return hash((id(self.parent), self.coords))

    @property
    def is_zero(self):
        return all(c == 0 for c in self.coords)

    def __add__(self, other):
        other = self.parent.coerce(other)
        return FieldElem(self.parent, [a + b for a, b in zip(self.coords, other.coords)])

    def __sub__(self, other):
        other = self.parent.coerce(other)
        return FieldElem(self.parent, [a - b for a, b in zip(self.coords, other.coords)])

    def __neg__(self):
        return FieldElem(self.parent, [-a for a in self.coords])

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElem(self.parent, [a * other for a in self.coords])
        other = self.parent.coerce(other)
        return self.parent.mul_elems(self, other)

    __radd__ = __add__
    __rmul__ = __mul__

    def __rsub__(self, other):
        return (-self) + other

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = self.parent.one
        b = self
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return out

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            return FieldElem(self.parent, [a / other for a in self.coords])
        other = self.parent.coerce(other)
        return self * other.inverse()

    def inverse(self) -> "FieldElem":
        if self.is_zero:
            raise ZeroDivisionError("inverse of zero field element")
        m = self.parent.mul_matrix(self)
        n = self.parent.degree
        target = [Fraction(1 if i == 0 else 0) for i in range(n)]
        sol = _solve_fraction_linear(m, target)
        if sol is None:
            raise ZeroDivisionError("element is a zero divisor?")
        return FieldElem(self.parent, sol)

    @property
    def is_integral(self) -> bool:
        return all(c.denominator == 1 for c in self.coords)

    def denominator(self) -> int:
        d = 1
        for c in self.coords:
            d = d * c.denominator // math.gcd(d, c.denominator)
        return d

    def int_coords(self):
        if not self.is_integral:
            raise ValueError("element is not integral")
        return [int(c) for c in self.coords]

    def norm(self) -> Fraction:
        return self.parent.norm(self)

    def trace(self) -> Fraction:
        return self.parent.trace(self)

    def charpoly(self) -> list[Fraction]:
        return self.parent.charpoly(self)

    def minpoly(self) -> IntPoly:
        return self.parent.minpoly(self)

    def theta_poly(self) -> list[Fraction]:
        """Coefficients over powers of the defining root."""
        return self.parent.to_theta(self.coords)

    def signs(self) -> tuple[int, ...]:
        return self.parent.element_signs(self)

    def is_totally_positive(self) -> bool:
        return all(s > 0 for s in self.signs())

    def __repr__(self):
        return f"FieldElem({[str(c) for c in self.coords]})"


def _solve_fraction_linear(m, target):
    """Solve m x = target over Q; m square list-of-lists of Fractions."""
    n = len(m)
    a = [list(row) + [t] for row, t in zip([list(r) for r in m], target)]
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            return None
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [a[i][n] for i in range(n)]


class NumberField:
    """Number field Q[x]/(f) with certified maximal order."""

    def __init__(self, f: IntPoly, basis_theta: list[list[Fraction]], *,
                 field_disc: int, index: int, _skip_checks=False):
        self.f = f
        self.degree = f.degree
        self.basis_theta = [list(b) for b in basis_theta]  # rows: basis elems as theta-polys
        self.field_disc = field_disc
        self.index = index
        n = self.degree
        # conversion matrices
        self._theta_of_basis = [[self.basis_theta[j][i] if i < len(self.basis_theta[j]) else Fraction(0)
                                 for j in range(n)] for i in range(n)]  # column j = basis j
        self._basis_of_theta = _invert_fraction_matrix(self._theta_of_basis)
        # integer structure constants
        self.mult_table = self._build_mult_table()
        self.one = self.elem([1] + [0] * (n - 1))
        self.zero = self.elem([0] * n)
        self.theta = self.elem_from_theta([Fraction(0), Fraction(1)] + [Fraction(0)] * (n - 2))
        self._trace_vec = None
        self._roots = None
        self._sig = None
        self._reduced_basis = None
        self._norm_form = None
        self._prime_cache = {}
        self._pow_theta_cache = {}

    # -- construction -----------------------------------------------------

    @staticmethod
    def make(f: IntPoly, *, disc_support=None, check_irreducible=True) -> "NumberField":
        """Build the field of a monic irreducible polynomial with a proven
        maximal order (Round 2 at every prime whose square divides disc(f)).

        disc_support, when given, must cover every prime factor of disc(f);
        it spares factoring structurally large discriminants whose prime
        support is already known."""
        if not f.is_monic():
            raise ValueError("defining polynomial must be monic")
        if check_irreducible and not zis_irreducible(list(f.coeffs)):
            raise Reducible(f"{f!r} is reducible over Q")
        n = f.degree
        basis = [[Fraction(1 if i == j else 0) for i in range(n)] for j in range(n)]
        return _maximalize(f, basis, disc_support)

    @staticmethod
    def from_order(f: IntPoly, basis_theta, disc_support) -> "NumberField":
        """Maximalize starting from a custom order (basis over theta powers,
        rows of Fractions) whose discriminant's prime support is known."""
        return _maximalize(f, [list(map(Fraction, b)) for b in basis_theta], disc_support)

    # -- conversions ------------------------------------------------------

    def elem(self, coords) -> FieldElem:
        return FieldElem(self, coords)

    def coerce(self, x) -> FieldElem:
        if isinstance(x, FieldElem):
            if x.parent is not self:
                raise ValueError("element of a different field")
            return x
        if isinstance(x, (int, Fraction)):
            return FieldElem(self, [Fraction(x)] + [Fraction(0)] * (self.degree - 1))
        raise TypeError(f"cannot coerce {x!r}")

    def elem_from_theta(self, tcoeffs) -> FieldElem:
        t = [Fraction(c) for c in tcoeffs] + [Fraction(0)] * (self.degree - len(tcoeffs))
        coords = _mat_vec_fraction(self._basis_of_theta, t[: self.degree])
        return FieldElem(self, coords)

    def elem_from_theta_poly(self, p: IntPoly, den: int = 1) -> FieldElem:
        t = [Fraction(c, den) for c in p.coeffs]
        # reduce mod f if needed
        while len(t) > self.degree:
            lead = t.pop()
            for i, fc in enumerate(self.f.coeffs[:-1]):
                t[len(t) - self.degree + i] -= lead * fc
        return self.elem_from_theta(t)

    def to_theta(self, coords) -> list[Fraction]:
        return _mat_vec_fraction(self._theta_of_basis, list(coords))

    # -- arithmetic backbone ----------------------------------------------

    def _build_mult_table(self):
        n = self.degree
        fc = [Fraction(c) for c in self.f.coeffs]
        table = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                prod = _polymul_mod_f(self._col_theta(i), self._col_theta(j), fc)
                coords = _mat_vec_fraction(self._basis_of_theta, prod)
                row = []
                for c in coords:
                    if c.denominator != 1:
                        raise CertificationFailure("basis is not multiplicatively closed")
                    row.append(int(c))
                table[i][j] = row
                table[j][i] = row
        return table

    def _col_theta(self, j):
        return [self._theta_of_basis[i][j] for i in range(self.degree)]

    def mul_elems(self, a: FieldElem, b: FieldElem) -> FieldElem:
        n = self.degree
        out = [Fraction(0)] * n
        ac, bc = a.coords, b.coords
        tab = self.mult_table
        for i in range(n):
            if ac[i] == 0:
                continue
            ti = tab[i]
            for j in range(n):
                if bc[j] == 0:
                    continue
                cij = ac[i] * bc[j]
                row = ti[j]
                for k in range(n):
                    if row[k]:
                        out[k] += cij * row[k]
        return FieldElem(self, out)

    def mul_int_coords(self, u: list[int], v: list[int]) -> list[int]:
        """Fast integral multiply on raw coordinate vectors."""
        n = self.degree
        out = [0] * n
        tab = self.mult_table
        for i in range(n):
            ui = u[i]
            if not ui:
                continue
            ti = tab[i]
            for j in range(n):
                vj = v[j]
                if not vj:
                    continue
                c = ui * vj
                row = ti[j]
                for k in range(n):
                    if row[k]:
                        out[k] += c * row[k]
        return out

    def mul_matrix(self, x: FieldElem):
        """Matrix of multiplication by x over the integral basis (columns =
        images of basis vectors)."""
        n = self.degree
        cols = []
        for j in range(n):
            col = [Fraction(0)] * n
            for i in range(n):
                if x.coords[i] == 0:
                    continue
                row = self.mult_table[i][j]
                for k in range(n):
                    if row[k]:
                        col[k] += x.coords[i] * row[k]
            cols.append(col)
        return [[cols[j][i] for j in range(n)] for i in range(n)]

    def norm(self, x: FieldElem) -> Fraction:
        den = x.denominator()
        v = [int(c * den) for c in x.coords]
        return Fraction(self.norm_int(v), den ** self.degree)

    def norm_int(self, v: list[int]) -> int:
        """Norm of an integral coordinate vector (exact integer)."""
        n = self.degree
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            if not v[i]:
                continue
            ti = self.mult_table[i]
            for j in range(n):
                row = ti[j]
                vi = v[i]
                for k in range(n):
                    if row[k]:
                        m[k][j] += vi * row[k]
        return det_bareiss(IntMatrix.from_rows(m))

    def trace(self, x: FieldElem) -> Fraction:
        if self._trace_vec is None:
            n = self.degree
            tv = []
            for i in range(n):
                tv.append(sum(self.mult_table[i][j][j] for j in range(n)))
            self._trace_vec = tv
        return sum(c * t for c, t in zip(x.coords, self._trace_vec))

    def charpoly(self, x: FieldElem) -> list[Fraction]:
        """Characteristic polynomial of x, lowest degree first, monic."""
        n = self.degree
        den = x.denominator()
        v = [int(c * den) for c in x.coords]
        # integer matrix of multiplication by den*x
        m = [[0] * n for _ in range(n)]
        for i in range(n):
            if not v[i]:
                continue
            for j in range(n):
                row = self.mult_table[i][j]
                for k in range(n):
                    if row[k]:
                        m[k][j] += v[i] * row[k]
        # interpolate det(tI - M) at t = 0..n
        pts = []
        for t in range(n + 1):
            mm = [[(t if a == b else 0) - m[a][b] for b in range(n)] for a in range(n)]
            pts.append(det_bareiss(IntMatrix.from_rows(mm)))
        cp = _lagrange_int(list(range(n + 1)), pts)
        # char poly of den*x is cp; rescale to x
        return [Fraction(cp[i], den ** (n - i)) for i in range(n + 1)]

    def minpoly(self, x: FieldElem) -> IntPoly:
        """Minimal polynomial over Q, content-cleared (primitive, monic up to
        the integrality of x; for integral x it is monic in Z[t])."""
        cp = self.charpoly(x)
        den = 1
        for c in cp:
            den = den * c.denominator // math.gcd(den, c.denominator)
        zc = zstrip([int(c * den) for c in cp])
        _, facs = zfactor(zc)
        for g, _m in facs:
            if self._poly_vanishes(g, x):
                lead = g[-1]
                if lead < 0:
                    g = [-c for c in g]
                return IntPoly(g)
        raise AssertionError("no char poly factor vanishes; arithmetic bug")

    def _poly_vanishes(self, g: list[int], x: FieldElem) -> bool:
        acc = self.zero
        for c in reversed(g):
            acc = acc * x + self.coerce(c)
        return acc.is_zero

    # -- embeddings and signs ---------------------------------------------

    @property
    def real_roots(self) -> RealRoots:
        if self._roots is None:
            self._roots = RealRoots(self.f)
        return self._roots

    @property
    def signature(self):
        if self._sig is None:
            r1 = self.real_roots.count
            self._sig = (r1, (self.degree - r1) // 2)
        return self._sig

    def element_signs(self, x: FieldElem) -> tuple[int, ...]:
        if x.is_zero:
            raise ZeroElement("sign vector of zero")
        t = self.to_theta(x.coords)
        rr = self.real_roots
        return tuple(rr.sign_of_at(t, i) for i in range(rr.count))

    def embedding_approx(self, x: FieldElem, digits: int = 30) -> list[Fraction]:
        """Rational approximations of the real embeddings of x."""
        t = self.to_theta(x.coords)
        rr = self.real_roots
        out = []
        for i in range(rr.count):
            root = rr.approx(i, digits + 10)
            acc = Fraction(0)
            for c in reversed(t):
                acc = acc * root + c
            out.append(acc)
        return out

    def basis_embedding_matrix(self, digits: int = 30):
        """Rational approximations of basis elements at real embeddings:
        rows = embeddings, columns = basis elements."""
        rr = self.real_roots
        rows = []
        for i in range(rr.count):
            root = rr.approx(i, digits + 10)
            powers = [Fraction(1)]
            for _ in range(self.degree - 1):
                powers.append(powers[-1] * root)
            row = []
            for j in range(self.degree):
                col = self._col_theta(j)
                row.append(sum(c * p for c, p in zip(col, powers)))
            rows.append(row)
        return rows

    # -- norm form for search ----------------------------------------------

    def norm_form(self):
        """Integer coefficients of N(x_1 w_1 + ... + x_n w_n) as a dict
        mapping exponent tuples to coefficients."""
        if self._norm_form is not None:
            return self._norm_form
        n = self.degree
        # mult matrix with symbolic linear entries: entry[k][j] = sum_i x_i c_ijk
        entry = [[{} for _ in range(n)] for _ in range(n)]
        for i in range(n):
            for j in range(n):
                row = self.mult_table[i][j]
                for k in range(n):
                    if row[k]:
                        entry[k][j][i] = row[k]
        # determinant by permutation expansion (n <= 8; n <= 4 in hot paths)
        form = {}
        for perm in itertools.permutations(range(n)):
            sign = _perm_sign(perm)
            term = {(0,) * n: sign}
            ok = True
            for r in range(n):
                lin = entry[r][perm[r]]
                if not lin:
                    ok = False
                    break
                new = {}
                for mono, co in term.items():
                    for var, cv in lin.items():
                        m2 = list(mono)
                        m2[var] += 1
                        m2 = tuple(m2)
                        new[m2] = new.get(m2, 0) + co * cv
                term = new
            if not ok:
                continue
            for mono, co in term.items():
                form[mono] = form.get(mono, 0) + co
        self._norm_form = {m: c for m, c in form.items() if c}
        return self._norm_form

    # -- reduced basis for element search -----------------------------------

    def reduced_basis(self) -> list[list[int]]:
        """Coordinate vectors (over the integral basis) of an LLL-reduced
        basis of the maximal order under the real Minkowski embedding.
        Totally real fields only; used to search for small-norm elements."""
        if self._reduced_basis is not None:
            return self._reduced_basis
        r1, r2 = self.signature
        if r2 != 0:
            self._reduced_basis = [[1 if i == j else 0 for i in range(self.degree)]
                                   for j in range(self.degree)]
            return self._reduced_basis
        emb = self.basis_embedding_matrix(digits=25)
        scale = 10 ** 12
        mat = [[int(emb[i][j] * scale) for i in range(self.degree)] for j in range(self.degree)]
        _red, transform = lll_reduce(mat)
        self._reduced_basis = [list(row) for row in transform]
        return self._reduced_basis

    def __repr__(self):
        return f"NumberField({self.f!r}, disc={self.field_disc})"


def _perm_sign(perm):
    inv = 0
    for i in range(len(perm)):
        for j in range(i + 1, len(perm)):
            if perm[i] > perm[j]:
                inv += 1
    return -1 if inv % 2 else 1


def _polymul_mod_f(a, b, fc):
    """Multiply theta-polynomials (Fraction lists, len n) modulo monic f."""
    n = len(fc) - 1
    prod = [Fraction(0)] * (2 * n - 1)
    for i, x in enumerate(a):
        if x == 0:
            continue
        for j, y in enumerate(b):
            if y:
                prod[i + j] += x * y
    for d in range(2 * n - 2, n - 1, -1):
        c = prod[d]
        if c == 0:
            continue
        prod[d] = Fraction(0)
        for i in range(n):
            prod[d - n + i] -= c * fc[i]
    return prod[:n]


def _mat_vec_fraction(m, v):
    n = len(m)
    return [sum(m[i][j] * v[j] for j in range(len(v))) for i in range(n)]


def _invert_fraction_matrix(m):
    n = len(m)
    a = [[Fraction(m[i][j]) for j in range(n)] + [Fraction(1 if k == i else 0) for k in range(n)]
         for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if a[r][col] != 0)
        a[col], a[piv] = a[piv], a[col]
        pv = a[col][col]
        a[col] = [x / pv for x in a[col]]
        for r in range(n):
            if r != col and a[r][col] != 0:
                f = a[r][col]
                a[r] = [x - f * y for x, y in zip(a[r], a[col])]
    return [[a[i][n + j] for j in range(n)] for i in range(n)]


def _lagrange_int(xs, ys) -> list[int]:
    """Interpolating polynomial through integer points, integer coefficients
    demanded (the char poly case)."""
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        # basis polynomial
        num = [Fraction(1)]
        den = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            num = _polymul_simple(num, [Fraction(-xs[j]), Fraction(1)])
            den *= xs[i] - xs[j]
        for k in range(len(num)):
            coeffs[k] += num[k] * ys[i] / den
    out = []
    for c in coeffs:
        if c.denominator != 1:
            raise AssertionError("non-integer interpolation result")
        out.append(int(c))
    return out


def _polymul_simple(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


# ---------------------------------------------------------------------------
# Round 2 maximal order
# ---------------------------------------------------------------------------


def _order_disc(f: IntPoly, basis_theta) -> tuple[int, int]:
    """(disc of the order, index in it of Z[theta] -- rather the index of the
    order over Z[theta] as a quotient of determinants)."""
    n = f.degree
    # index = 1/|det(basis matrix)| where basis rows are theta-coords
    m = [[basis_theta[i][j] for j in range(n)] for i in range(n)]
    det = _fraction_det(m)
    if det == 0:
        raise ValueError("degenerate order basis")
    idx = Fraction(1) / abs(det)
    if idx.denominator != 1:
        raise ValueError("order does not contain Z[theta] scaling as expected")
    idx = int(idx)
    df = f.disc()
    disc = df // (idx * idx)
    if disc * idx * idx != df:
        raise AssertionError("index^2 does not divide disc(f)")
    return disc, idx


def _fraction_det(m):
    n = len(m)
    a = [[Fraction(x) for x in row] for row in m]
    det = Fraction(1)
    for col in range(n):
        piv = None
        for r in range(col, n):
            if a[r][col] != 0:
                piv = r
                break
        if piv is None:
            return Fraction(0)
        if piv != col:
            a[col], a[piv] = a[piv], a[col]
            det = -det
        det *= a[col][col]
        inv = a[col][col]
        for r in range(col + 1, n):
            if a[r][col] != 0:
                fct = a[r][col] / inv
                a[r] = [x - fct * y for x, y in zip(a[r], a[col])]
    return det


class _Order:
    """Mutable order used during Round 2: basis rows are theta-polynomials
    with Fraction entries, kept in triangular HNF form."""

    def __init__(self, f: IntPoly, basis_theta):
        self.f = f
        self.n = f.degree
        self.basis = [list(map(Fraction, b)) for b in basis_theta]
        self._canonicalize()
        self.mult = None
        self._build_mult()

    def _canonicalize(self):
        den = 1
        for row in self.basis:
            for c in row:
                den = den * c.denominator // math.gcd(den, c.denominator)
        cols = triangular_basis([[int(c * den) for c in row] for row in self.basis])
        if len(cols) != self.n:
            raise ValueError("order basis is degenerate")
        self.basis = [[Fraction(c, den) for c in col] for col in cols]
        self.den = den

    def _build_mult(self):
        n = self.n
        fc = [Fraction(c) for c in self.f.coeffs]
        theta_cols = [[self.basis[j][i] for i in range(n)] for j in range(n)]
        binv = _invert_fraction_matrix([[self.basis[j][i] for j in range(n)] for i in range(n)])
        tab = [[None] * n for _ in range(n)]
        for i in range(n):
            for j in range(i, n):
                prod = _polymul_mod_f(theta_cols[i], theta_cols[j], fc)
                coords = _mat_vec_fraction(binv, prod)
                for c in coords:
                    if c.denominator != 1:
                        raise ValueError("not closed under multiplication")
                row = [int(c) for c in coords]
                tab[i][j] = row
                tab[j][i] = row
        self.mult = tab

    def mul_vec(self, u, v):
        n = self.n
        out = [0] * n
        for i in range(n):
            if not u[i]:
                continue
            ti = self.mult[i]
            for j in range(n):
                if not v[j]:
                    continue
                c = u[i] * v[j]
                row = ti[j]
                for k in range(n):
                    if row[k]:
                        out[k] += c * row[k]
        return out

    def radical_mod(self, q: int) -> list[list[int]]:
        """Basis (coords over the order basis) of the radical of qO in O,
        as a lattice containing qZ^n, via iterated Frobenius kernel."""
        n = self.n
        m = 1
        qm = q
        while qm < n:
            qm *= q
            m += 1
        # frobenius matrix: x -> x^(q^m) on O/qO
        cols = []
        for j in range(n):
            v = [1 if i == j else 0 for i in range(n)]
            # power v^(q^m) by square-multiply on exponent q^m
            e = q ** m
            acc = None
            base = v
            while e:
                if e & 1:
                    acc = base if acc is None else [x % q for x in self.mul_vec(acc, base)]
                base = [x % q for x in self.mul_vec(base, base)]
                e >>= 1
            cols.append([x % q for x in acc])
        # kernel of the matrix over F_q
        mat = [[cols[j][i] % q for j in range(n)] for i in range(n)]
        ker = _fq_kernel(mat, q)
        lattice = [[q if i == j else 0 for i in range(n)] for j in range(n)]
        lattice.extend(ker)
        mat2 = IntMatrix.from_rows(lattice).transpose()
        h, _ = hnf_column(mat2)
        out = [h.col(j) for j in range(h.cols) if any(h.col(j))]
        assert len(out) == n
        return out

    def multiplier_ring(self, lattice_basis: list[list[int]], q: int):
        """Basis (theta-polys) of (1/q)U where U = {u in O : u L <= q L}."""
        n = self.n
        gmat = IntMatrix(n, n, [lattice_basis[j][i] for i in range(n) for j in range(n)])
        # solve G z = w for each product vector; want z = 0 mod q
        rows = []  # linear conditions over F_q on u-coords
        for j in range(n):
            gj = lattice_basis[j]
            prod_cols = []
            for i in range(n):
                ei = [1 if t == i else 0 for t in range(n)]
                prod_cols.append(self.mul_vec(ei, gj))
            # z_i = G^{-1} prod_cols[i]; conditions z == 0 mod q
            for icol in range(n):
                z = _solve_integer_triangularish(gmat, prod_cols[icol])
                prod_cols[icol] = z
            for k in range(n):
                rows.append([prod_cols[i][k] % q for i in range(n)])
        ker = _fq_kernel(rows, q)
        lattice = [[q if i == j else 0 for i in range(n)] for j in range(n)]
        lattice.extend(ker)
        h, _ = hnf_column(IntMatrix.from_rows(lattice).transpose())
        ucols = [h.col(j) for j in range(h.cols) if any(h.col(j))]
        # new order basis: (1/q) * (U in O-coords) -> theta coords
        out = []
        for col in ucols:
            theta = [Fraction(0)] * n
            for i in range(n):
                if col[i]:
                    for t in range(n):
                        theta[t] += Fraction(col[i], q) * self.basis[i][t]
            out.append(theta)
        return out


def _fq_kernel(mat_rows, q):
    """Kernel basis of a matrix over F_q (rows = equations), vectors lifted
    to integers in [0, q)."""
    rows = [list(r) for r in mat_rows]
    ncols = len(rows[0]) if rows else 0
    pivots = {}
    r = 0
    for c in range(ncols):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] % q:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c] % q, -1, q)
        rows[r] = [(x * inv) % q for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % q:
                f = rows[i][c] % q
                rows[i] = [(x - f * y) % q for x, y in zip(rows[i], rows[r])]
        pivots[c] = r
        r += 1
    free = [c for c in range(ncols) if c not in pivots]
    out = []
    for fc in free:
        v = [0] * ncols
        v[fc] = 1
        for c, r_ in pivots.items():
            v[c] = (-rows[r_][fc]) % q
        out.append(v)
    return out


def _solve_integer_triangularish(g: IntMatrix, target):
    """Solve G z = target for integer z, where G's columns form a column-HNF
    basis (pivot of column j = first nonzero scanning down, at strictly
    increasing rows): forward substitution column by column."""
    n = g.rows
    t = list(target)
    z = [0] * g.cols
    for j in range(g.cols):
        col = g.col(j)
        piv = next(i for i in range(n) if col[i])
        if t[piv] % col[piv]:
            raise AssertionError("non-integral solve in multiplier ring")
        c = t[piv] // col[piv]
        z[j] = c
        if c:
            for i in range(piv, n):
                if col[i]:
                    t[i] -= c * col[i]
    if any(t):
        raise AssertionError("inconsistent solve in multiplier ring")
    return z


def _maximalize(f: IntPoly, basis_theta, disc_support) -> NumberField:
    disc0, idx0 = _order_disc(f, basis_theta)
    if disc_support is not None:
        primes = []
        rem = abs(disc0)
        for p in sorted(set(disc_support)):
            while rem % p == 0:
                rem //= p
            primes.append(p)
        if rem != 1:
            # support hint incomplete; fall back to full factorization
            primes = sorted(factorint(disc0))
    else:
        primes = sorted(factorint(disc0))
    order = _Order(f, basis_theta)
    for q in primes:
        while True:
            d, _ = _order_disc(f, order.basis)
            vq = 0
            dd = abs(d)
            while dd % q == 0:
                dd //= q
                vq += 1
            if vq < 2:
                break
            rad = order.radical_mod(q)
            newb = order.multiplier_ring(rad, q)
            new_order = _Order(f, newb)
            if _same_basis(order, new_order):
                break
            order = new_order
    disc, idx = _order_disc(f, order.basis)
    basis = order.basis
    nf = NumberField(f, basis, field_disc=disc, index=idx)
    return nf


def _same_basis(o1: _Order, o2: _Order) -> bool:
    return o1.basis == o2.basis
