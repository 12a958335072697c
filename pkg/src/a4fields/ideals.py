"""Fractional ideals of a number field in Hermite normal form, prime ideal
decomposition (including primes dividing the index of the equation order,
through splitting of the mod-q algebra), and exact valuations.

An integral ideal is stored as the degree-triangular basis of its coordinate
lattice over the integral basis; a fractional ideal adds a positive integer
denominator.  Equality of ideals is equality of canonical forms.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .errors import CertificationFailure
from .intmatrix import IntMatrix, det_bareiss, kernel_right
from .intpoly import IntPoly, factor_poly_mod_p, gf_factor, gf_roots, is_prime
from .numfield import FieldElem, NumberField, triangular_basis, _fq_kernel


class FracIdeal:
    """Fractional ideal num/den with num an integral ideal lattice."""

    __slots__ = ("parent", "cols", "den", "_norm", "_pivots")

    def __init__(self, parent: NumberField, cols, den: int = 1):
        self.parent = parent
        if den < 0:
            den = -den
        # canonical triangular basis; reduce the den/content common factor
        cols = triangular_basis([list(c) for c in cols])
        if len(cols) != parent.degree:
            raise ValueError("ideal lattice is not full rank")
        g = den
        for c in cols:
            for x in c:
                g = math.gcd(g, x)
        if g > 1:
            cols = [[x // g for x in c] for c in cols]
            den //= g
        self.cols = cols
        self.den = den
        self._norm = None
        self._pivots = None

    # -- constructors -------------------------------------------------------

    @staticmethod
    def from_elem(x: FieldElem) -> "FracIdeal":
        K = x.parent
        den = x.denominator()
        v = [int(c * den) for c in x.coords]
        cols = []
        for j in range(K.degree):
            ej = [1 if t == j else 0 for t in range(K.degree)]
            cols.append(K.mul_int_coords(v, ej))
        return FracIdeal(K, cols, den)

    @staticmethod
    def from_gens(K: NumberField, gens) -> "FracIdeal":
        """Ideal generated (as an O-module) by field elements / integers."""
        den = 1
        vecs = []
        for g in gens:
            g = K.coerce(g)
            den = den * g.denominator() // math.gcd(den, g.denominator())
        for g in gens:
            g = K.coerce(g)
            v = [int(c * den) for c in g.coords]
            for j in range(K.degree):
                ej = [1 if t == j else 0 for t in range(K.degree)]
                vecs.append(K.mul_int_coords(v, ej))
        return FracIdeal(K, vecs, den)

    @staticmethod
    def one(K: NumberField) -> "FracIdeal":
        return FracIdeal(K, [[1 if i == j else 0 for i in range(K.degree)]
                             for j in range(K.degree)], 1)

    # -- basics ---------------------------------------------------------------

    @property
    def is_integral(self) -> bool:
        return self.den == 1

    def norm(self) -> Fraction:
        if self._norm is None:
            d = det_bareiss(IntMatrix(self.parent.degree, self.parent.degree,
                                      [self.cols[j][i] for i in range(self.parent.degree)
                                       for j in range(self.parent.degree)]))
            self._norm = Fraction(abs(d), self.den ** self.parent.degree)
        return self._norm

    def pivots(self):
        if self._pivots is None:
            n = self.parent.degree
            self._pivots = [max(i for i in range(n) if self.cols[j][i]) for j in range(n)]
        return self._pivots

    def contains(self, x: FieldElem) -> bool:
        K = self.parent
        dx = x.denominator()
        m = self.den
        # need den*x in num lattice scaled by dx: (m x) in cols/1 <-> m*dx*x in dx*cols
        v = [int(c * m * dx) for c in x.coords]
        return self._lattice_contains(v, dx)

    def _lattice_contains(self, v, scale=1) -> bool:
        """Is v inside scale * (column lattice)?"""
        n = self.parent.degree
        t = list(v)
        for j in range(n - 1, -1, -1):
            col = self.cols[j]
            piv = self.pivots()[j]
            num = t[piv]
            d = col[piv] * scale
            if num % d:
                return False
            c = num // d
            if c:
                for i in range(n):
                    t[i] -= c * col[i] * scale
        return not any(t)

    def elem(self, j: int) -> FieldElem:
        return FieldElem(self.parent, [Fraction(x, self.den) for x in self.cols[j]])

    def basis_elems(self):
        return [self.elem(j) for j in range(self.parent.degree)]

    # -- arithmetic -----------------------------------------------------------

    def __mul__(self, other):
        if isinstance(other, FieldElem):
            other = FracIdeal.from_elem(other)
        K = self.parent
        vecs = []
        for a in self.cols:
            for b in other.cols:
                vecs.append(K.mul_int_coords(a, b))
        return FracIdeal(K, vecs, self.den * other.den)

    def __pow__(self, e: int):
        if e < 0:
            return self.inverse() ** (-e)
        out = FracIdeal.one(self.parent)
        b = self
        while e:
            if e & 1:
                out = out * b
            b = b * b
            e >>= 1
        return out

    def __add__(self, other):
        """Ideal sum (gcd)."""
        K = self.parent
        m = self.den * other.den // math.gcd(self.den, other.den)
        vecs = [[x * (m // self.den) for x in c] for c in self.cols]
        vecs += [[x * (m // other.den) for x in c] for c in other.cols]
        return FracIdeal(K, vecs, m)

    def __eq__(self, other):
        return (isinstance(other, FracIdeal) and self.parent is other.parent
                and self.den == other.den and self.cols == other.cols)

    def __hash__(self):
        return hash((id(self.parent), self.den, tuple(tuple(c) for c in self.cols)))

    def inverse(self) -> "FracIdeal":
        K = self.parent
        n = K.degree
        # invert the integral numerator, then multiply back the denominator
        nrm = int(self.norm() * self.den ** n)  # |det| of cols
        rows = []
        for j in range(n):
            gj = self.cols[j]
            mg = [[0] * n for _ in range(n)]
            for i in range(n):
                ei = [1 if t == i else 0 for t in range(n)]
                prod = K.mul_int_coords(ei, gj)
                for k in range(n):
                    mg[k][i] = prod[k]
            rows.extend(mg)
        big = []
        nn = len(rows)
        for r in range(nn):
            big.append(rows[r] + [nrm if c == r else 0 for c in range(nn)])
        ker = kernel_right(IntMatrix.from_rows(big))
        cand = [v[:n] for v in ker]
        cand.append([nrm if i == 0 else 0 for i in range(n)])
        for j in range(1, n):
            cand.append([nrm if i == j else 0 for i in range(n)])
        inv = FracIdeal(K, triangular_basis([c for c in cand if any(c)]), nrm)
        return FracIdeal(K, inv.cols, inv.den * 1) * FracIdeal(K, [[self.den if i == j else 0
                                                                    for i in range(n)] for j in range(n)], 1)

    def equals_product_of(self, factors) -> bool:
        out = FracIdeal.one(self.parent)
        for f, e in factors:
            out = out * (f ** e)
        return out == self

    def __repr__(self):
        return f"FracIdeal(den={self.den}, norm={self.norm()})"


class PrimeIdealData(FracIdeal):
    """Prime ideal above p with ramification index e and residue degree f,
    plus a second generator (P = pO + gO) and a cached anti-uniformizer."""

    __slots__ = ("p", "e", "f", "second_generator", "_tau")

    def __init__(self, parent, cols, p, e, f, second_generator):
        super().__init__(parent, cols, 1)
        self.p = p
        self.e = e
        self.f = f
        self.second_generator = second_generator
        self._tau = None

    def tau(self) -> FieldElem:
        """Element of P^{-1} \\ O: valuation -1 at P, >= 0 elsewhere."""
        if self._tau is None:
            inv = self.inverse()
            for j in range(self.parent.degree):
                x = inv.elem(j)
                if not x.is_integral:
                    self._tau = x
                    break
            else:
                raise AssertionError("inverse of a prime has no non-integral basis")
        return self._tau

    def valuation_elem(self, x: FieldElem) -> int:
        """v_P(x) for x != 0."""
        if x.is_zero:
            raise ZeroDivisionError("valuation of zero")
        K = self.parent
        den = x.denominator()
        vden = 0
        if den > 1:
            vp_den = 0
            d = den
            while d % self.p == 0:
                d //= self.p
                vp_den += 1
            vden = vp_den * self.e
            x = x * (self.p ** vp_den)
        t = self.tau()
        v = 0
        cur = x
        # x integral now; multiply by tau until it leaves the maximal order
        while True:
            nxt = cur * t
            if not nxt.is_integral:
                break
            v += 1
            cur = nxt
        return v - vden

    def valuation_ideal(self, ideal: FracIdeal) -> int:
        vals = [self.valuation_elem(ideal.elem(j)) for j in range(self.parent.degree)]
        return min(vals)


def factor_rational_prime(K: NumberField, p: int) -> list[PrimeIdealData]:
    """Complete factorization of pO with (e, f) data, sorted by (f, HNF)."""
    if not is_prime(p):
        raise ValueError(f"{p} is not prime")
    if p in K._prime_cache:
        return K._prime_cache[p]
    if K.index % p:
        out = _decomp_unramified_index(K, p)
    else:
        out = _decomp_via_algebra(K, p)
    total = sum(P.e * P.f for P in out)
    if total != K.degree:
        raise CertificationFailure(f"sum e_i f_i = {total} != degree at p={p}")
    out.sort(key=lambda P: (P.f, P.e, tuple(tuple(c) for c in P.cols)))
    K._prime_cache[p] = out
    return out


def _decomp_unramified_index(K: NumberField, p: int):
    facs = factor_poly_mod_p(K.f, p)
    out = []
    for g, mult in facs:
        gel = K.elem_from_theta_poly(g)
        ideal = FracIdeal.from_gens(K, [K.coerce(p), gel])
        out.append(PrimeIdealData(K, ideal.cols, p, mult, g.degree, gel))
    return out


def _decomp_via_algebra(K: NumberField, p: int):
    """Prime decomposition when p divides the index: split O/pO."""
    n = K.degree
    # radical via iterated Frobenius kernel
    m = 1
    q = p
    while q < n:
        q *= p
        m += 1
    frob_cols = []
    for j in range(n):
        v = [1 if i == j else 0 for i in range(n)]
        e = p ** m
        acc = None
        base = v
        while e:
            if e & 1:
                acc = base if acc is None else [x % p for x in K.mul_int_coords(acc, base)]
            base = [x % p for x in K.mul_int_coords(base, base)]
            e >>= 1
        frob_cols.append([x % p for x in acc])
    frob_rows = [[frob_cols[j][i] % p for j in range(n)] for i in range(n)]
    rad = _fq_kernel(frob_rows, p)  # basis of radical subspace
    # components of A/rad: maintain (basis_of_component_in_A, identity_vector)
    quot_basis, proj = _quotient_space(rad, n, p)
    comp_mul = _induced_mul(K, quot_basis, proj, p)
    one_vec = proj([1 if i == 0 else 0 for i in range(n)])
    components = _split_etale(comp_mul, one_vec, p)
    out = []
    for comp_basis, _ident in components:
        f_deg = len(comp_basis)
        # maximal ideal: radical + all other components' lifts + nothing of
        # this component; build as kernel of projection onto this component
        others = []
        for cb, _i in components:
            if cb is comp_basis:
                continue
            others.extend(cb)
        sub = [list(v) for v in rad]
        for v in others:
            sub.append(_lift_vector(v, quot_basis, n, p))
        # P = pO + lifted subspace
        cols = [[p if i == j else 0 for i in range(n)] for j in range(n)]
        cols += sub
        ideal_cols = triangular_basis([c for c in cols if any(c)])
        gel = _second_generator(K, ideal_cols, p, f_deg)
        P = PrimeIdealData(K, ideal_cols, p, 1, f_deg, gel)
        # ramification index: valuation of p along P
        P.e = P.valuation_elem(K.coerce(p))
        out.append(P)
    return out


def _quotient_space(sub_basis, n, p):
    """Echelonize the subspace; return (basis of a complement as unit
    vectors' indices, projection function A -> quotient coords)."""
    rows = [list(v) for v in sub_basis]
    pivots = {}
    r = 0
    for c in range(n):
        piv = None
        for i in range(r, len(rows)):
            if rows[i][c] % p:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        inv = pow(rows[r][c] % p, -1, p)
        rows[r] = [(x * inv) % p for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] % p:
                fc = rows[i][c] % p
                rows[i] = [(x - fc * y) % p for x, y in zip(rows[i], rows[r])]
        pivots[c] = r
        r += 1
    free = [c for c in range(n) if c not in pivots]

    def proj(v):
        t = [x % p for x in v]
        for c, rr_ in pivots.items():
            if t[c]:
                fc = t[c]
                t = [(x - fc * y) % p for x, y in zip(t, rows[rr_])]
        return tuple(t[c] for c in free)

    return free, proj


def _induced_mul(K, free_idx, proj, p):
    """Multiplication table on the quotient basis (unit vectors at free
    coordinates)."""
    k = len(free_idx)
    tab = {}
    n = K.degree
    for a in range(k):
        for b in range(k):
            va = [1 if i == free_idx[a] else 0 for i in range(n)]
            vb = [1 if i == free_idx[b] else 0 for i in range(n)]
            tab[(a, b)] = proj([x % p for x in K.mul_int_coords(va, vb)])
    return tab


def _lift_vector(v, free_idx, n, p):
    out = [0] * n
    for coord, idx in zip(v, free_idx):
        out[idx] = coord % p
    return out


def _split_etale(tab, one_vec, p):
    """Split a commutative separable F_p-algebra (given by its full-space
    multiplication table over the quotient basis) into simple components.
    Returns a list of (component basis vectors over the quotient basis,
    identity of the component)."""
    k = len(one_vec)

    def mul(u, v):
        out = [0] * k
        for i in range(k):
            if not u[i]:
                continue
            for j in range(k):
                if not v[j]:
                    continue
                c = u[i] * v[j] % p
                w = tab[(i, j)]
                for t in range(k):
                    if w[t]:
                        out[t] = (out[t] + c * w[t]) % p
        return out

    def algebra_pow(v, e):
        acc = None
        base = list(v)
        while e:
            if e & 1:
                acc = base if acc is None else mul(acc, base)
            base = mul(base, base)
            e >>= 1
        return acc if acc is not None else list(one_vec)

    full_basis = [[1 if i == j else 0 for i in range(k)] for j in range(k)]
    work = [(full_basis, list(one_vec))]
    done = []
    while work:
        basis, ident = work.pop()
        d = len(basis)
        if d == 1:
            done.append((basis, ident))
            continue
        # Frobenius-fixed subspace within the component: x^p = x
        rows = []
        for b in basis:
            fb = algebra_pow(b, p)
            rows.append([(x - y) % p for x, y in zip(fb, b)])
        # kernel over the component coordinates: solve sum c_i (b_i^p - b_i) = 0
        mat = [[rows[j][i] % p for j in range(d)] for i in range(k)]
        ker = _fq_kernel(mat, p)
        if len(ker) <= 1:
            done.append((basis, ident))
            continue
        # pick a fixed element independent of the identity
        alpha = None
        for kv in ker:
            v = [0] * k
            for c, b in zip(kv, basis):
                if c:
                    for t in range(k):
                        v[t] = (v[t] + c * b[t]) % p
            # check v not in span(ident)
            if not _is_multiple(v, ident, p):
                alpha = v
                break
        if alpha is None:
            done.append((basis, ident))
            continue
        # minimal polynomial of alpha over F_p (within the algebra)
        powers = [list(ident)]
        cur = list(ident)
        for _ in range(d):
            cur = mul(cur, alpha)
            powers.append(list(cur))
        coeffs = _linear_dependence(powers, p)
        roots = gf_roots(coeffs, p)
        if len(roots) <= 1:
            done.append((basis, ident))
            continue
        for lam in roots:
            # projector: prod_{mu != lam} (alpha - mu)/(lam - mu)
            e_vec = list(ident)
            for mu in roots:
                if mu == lam:
                    continue
                shifted = [(a - mu * i) % p for a, i in zip(alpha, ident)]
                scale = pow((lam - mu) % p, -1, p)
                shifted = [x * scale % p for x in shifted]
                e_vec = mul(e_vec, shifted)
            # component = e * algebra
            sub = []
            for b in basis:
                sub.append(mul(e_vec, b))
            sub_echelon = _echelon(sub, p)
            work.append((sub_echelon, e_vec))
    return done


def _is_multiple(v, w, p):
    # is v in F_p * w ?
    piv = next((i for i, x in enumerate(w) if x % p), None)
    if piv is None:
        return all(x % p == 0 for x in v)
    c = (v[piv] * pow(w[piv], -1, p)) % p
    return all((x - c * y) % p == 0 for x, y in zip(v, w))


def _echelon(vectors, p):
    rows = [[x % p for x in v] for v in vectors]
    out = []
    pivots = []
    for v in rows:
        v = list(v)
        for pv, ov in zip(pivots, out):
            if v[pv]:
                c = v[pv] * pow(ov[pv], -1, p) % p
                v = [(x - c * y) % p for x, y in zip(v, ov)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is not None:
            out.append(v)
            pivots.append(piv)
    return out


def _linear_dependence(vectors, p):
    """First linear dependency among successive vectors: coefficients of the
    monic minimal polynomial (lowest degree first)."""
    basis = []
    pivots = []
    coords = []  # expression of each basis vector in terms of originals
    for idx, v in enumerate(vectors):
        v = [x % p for x in v]
        expr = [0] * len(vectors)
        expr[idx] = 1
        for pv, ov, oe in zip(pivots, basis, coords):
            if v[pv]:
                c = v[pv] * pow(ov[pv], -1, p) % p
                v = [(x - c * y) % p for x, y in zip(v, ov)]
                expr = [(x - c * y) % p for x, y in zip(expr, oe)]
        piv = next((i for i, x in enumerate(v) if x), None)
        if piv is None:
            # dependency found: monic at position idx
            inv = pow(expr[idx], -1, p) if expr[idx] != 1 else 1
            return [(x * inv) % p for x in expr[: idx + 1]]
        basis.append(v)
        pivots.append(piv)
        coords.append(expr)
    raise AssertionError("no linear dependency found")


def _second_generator(K: NumberField, cols, p, f_deg):
    """Small element g with pO + gO = P (norm p^f)."""
    import itertools as it

    n = K.degree
    target = Fraction(p ** f_deg)
    basis = [FieldElem(K, [Fraction(x) for x in c]) for c in cols]
    pe = K.coerce(p)
    # try single basis elements, then small combinations
    cands = list(basis)
    for a, b in it.combinations(range(n), 2):
        cands.append(basis[a] + basis[b])
    for a, b in it.combinations(range(n), 2):
        cands.append(basis[a] - basis[b])
    for g in cands:
        if g.is_zero:
            continue
        ideal = FracIdeal.from_gens(K, [pe, g])
        if ideal.norm() == target:
            return g
    # fall back: p + basis sums
    for g in (sum(basis[1:], basis[0]),):
        ideal = FracIdeal.from_gens(K, [pe, g])
        if ideal.norm() == target:
            return g
    raise CertificationFailure("no two-element representation found")
