"""Root finding inside a number field: norm resultants (Trager's method)
reduce the problem to factoring over Q, and a gcd over the field extracts
each root.  Used for square-root testing, automorphisms of Galois fields and
field isomorphism checks.

Square testing gets a fast certified-negative path first: a nonresidue at a
degree-one prime proves non-squareness, so the expensive exact computation
runs only on (near-certain) squares.
"""

from __future__ import annotations

import math
from fractions import Fraction

from .intpoly import (IntPoly, gf_roots, is_prime, next_prime, zfactor,
                      zresultant, zstrip)
from .numfield import FieldElem, NumberField


def _theta_num_den(x: FieldElem):
    t = x.theta_poly()
    den = 1
    for c in t:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return [int(c * den) for c in t], den


def roots_in_field(K: NumberField, coeffs) -> list[FieldElem]:
    """All roots in K of the polynomial with the given coefficients (ints,
    Fractions or FieldElems, lowest degree first)."""
    cs = [K.coerce(c) for c in coeffs]
    while cs and cs[-1].is_zero:
        cs.pop()
    if len(cs) <= 1:
        return []
    out = []
    if cs[0].is_zero:
        out.append(K.zero)
        while cs[0].is_zero:
            cs = cs[1:]
        if len(cs) <= 1:
            return out
    n = K.degree
    deg = len(cs) - 1
    fz = list(K.f.coeffs)
    # clear denominators: big common denominator for all theta-polys
    numdens = [_theta_num_den(c) for c in cs]
    D = 1
    for _, d in numdens:
        D = D * d // math.gcd(D, d)
    cnum = [[a * (D // d) for a in num] for num, d in numdens]

    for s in (0, 1, -1, 2, -2, 3, -3, 5, -5, 7):
        # N_s(t) = Res_y(f(y), sum_i c_i(y) (t - s y)^i), by interpolation
        degt = n * deg
        degy = max(len(c) - 1 for c in cnum) + (deg if s else 0)
        pts = []
        xs = []
        t0 = -(degt // 2)
        for k in range(degt + 1):
            tv = t0 + k
            gy = _eval_shifted(cnum, tv, s, deg)
            r = zresultant(fz, gy) if gy else 0
            xs.append(tv)
            pts.append(r)
        Ns = _lagrange_fraction(xs, pts)
        if not Ns or len(Ns) - 1 != degt:
            continue
        dNs = [i * Ns[i] for i in range(1, len(Ns))]
        from .intpoly import zgcd
        zn = _fractions_to_int(Ns)
        if zn is None:
            continue
        g = zgcd(zn, _fractions_to_int_unsafe(dNs))
        if len(g) > 1:
            continue  # not squarefree; try another shift
        _, facs = zfactor(zn)
        for h, _m in facs:
            if len(h) - 1 > n:
                continue
            root = _extract_root(K, cs, h, s)
            if root is not None and root not in out:
                out.append(root)
        return out
    raise AssertionError("no squarefree shift found (should be impossible)")


def _eval_shifted(cnum, tv, s, deg):
    """sum_i c_i(y) * (tv - s*y)^i as an integer polynomial in y."""
    from .intpoly import zadd, zmul, zscale, zstrip as zs
    base = [tv, -s] if s else [tv]
    out = []
    powcache = [[1]]
    for i in range(1, deg + 1):
        powcache.append(zmul(powcache[-1], base))
    for i, c in enumerate(cnum):
        term = zmul(list(c), powcache[i])
        out = zadd(out, term)
    return zs(out)


def _lagrange_fraction(xs, ys):
    n = len(xs)
    coeffs = [Fraction(0)] * n
    for i in range(n):
        num = [Fraction(1)]
        den = Fraction(1)
        for j in range(n):
            if j == i:
                continue
            new = [Fraction(0)] * (len(num) + 1)
            for k, c in enumerate(num):
                new[k] += c * (-xs[j])
                new[k + 1] += c
            num = new
            den *= xs[i] - xs[j]
        for k in range(len(num)):
            coeffs[k] += num[k] * ys[i] / den
    while coeffs and coeffs[-1] == 0:
        coeffs.pop()
    return coeffs


def _fractions_to_int(cs):
    out = []
    for c in cs:
        if c.denominator != 1:
            return None
        out.append(int(c))
    return zstrip(out)


def _fractions_to_int_unsafe(cs):
    den = 1
    for c in cs:
        den = den * c.denominator // math.gcd(den, c.denominator)
    return zstrip([int(c * den) for c in cs])


def _extract_root(K: NumberField, cs, h, s):
    """gcd over K of (the input polynomial shifted by s*theta) and h; a
    linear gcd yields the root."""
    theta = K.theta
    # shifted polynomial in t: G(t) = g(t - s*theta) with FieldElem coeffs
    if s:
        shift = [-s * theta, K.one]
        gpoly = [K.zero]
        powc = [[K.one]]
        for i in range(1, len(cs)):
            powc.append(_fe_polymul(powc[-1], shift))
        gpoly = []
        for i, c in enumerate(cs):
            term = [c * t for t in powc[i]]
            gpoly = _fe_polyadd(gpoly, term)
    else:
        gpoly = list(cs)
    hpoly = [K.coerce(c) for c in h]
    g = _fe_polygcd(gpoly, hpoly)
    if len(g) == 2:
        t0 = -(g[0] / g[1])
        root = t0 - (s * theta if s else K.zero)
        # verify
        acc = K.zero
        for c in reversed(cs):
            acc = acc * root + c
        if acc.is_zero:
            return root
    return None


def _fe_polyadd(a, b):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else None
        y = b[i] if i < len(b) else None
        if x is None:
            out.append(y)
        elif y is None:
            out.append(x)
        else:
            out.append(x + y)
    while out and out[-1].is_zero:
        out.pop()
    return out


def _fe_polymul(a, b):
    if not a or not b:
        return []
    K = a[0].parent
    out = [K.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x.is_zero:
            continue
        for j, y in enumerate(b):
            if not y.is_zero:
                out[i + j] = out[i + j] + x * y
    while out and out[-1].is_zero:
        out.pop()
    return out


def _fe_polygcd(a, b):
    a = [c for c in a]
    b = [c for c in b]
    while b:
        # a mod b
        binv = b[-1].inverse()
        r = list(a)
        while len(r) >= len(b) and r:
            c = r[-1] * binv
            d = len(r) - len(b)
            for i in range(len(b)):
                r[d + i] = r[d + i] - c * b[i]
            while r and r[-1].is_zero:
                r.pop()
        a, b = b, r
    if a:
        lead = a[-1].inverse()
        a = [c * lead for c in a]
    return a


# ---------------------------------------------------------------------------
# square roots
# ---------------------------------------------------------------------------


def _screen_primes(K: NumberField, count=24, skip=()):
    """Rational primes with a degree-one prime of K away from the index and
    given support; yields (q, root of f mod q)."""
    out = []
    q = 101
    tries = 0
    while len(out) < count and tries < 4000:
        q = next_prime(q)
        tries += 1
        if K.index % q == 0 or q in skip:
            continue
        roots = gf_roots(list(K.f.coeffs), q)
        if roots:
            out.append((q, roots[0]))
    return out


def is_square_screen(x: FieldElem, screens=None, rounds=24) -> bool:
    """Cheap certified-negative square test: False means certainly not a
    square; True means every residue test passed (almost surely a square)."""
    K = x.parent
    num, den = _theta_num_den(x)
    if screens is None:
        screens = _screen_primes(K, rounds)
    for q, r in screens:
        if den % q == 0:
            continue
        v = 0
        for c in reversed(num):
            v = (v * r + c) % q
        v = v * pow(den, -1, q) % q
        if v == 0:
            continue
        if pow(v, (q - 1) // 2, q) != 1:
            return False
    return True


def sqrt_in_field(x: FieldElem, screens=None) -> FieldElem | None:
    """Exact square root in the field, or None (certified either way)."""
    if x.is_zero:
        return x.parent.zero
    K = x.parent
    if (K.signature[1] == 0 and not x.is_totally_positive()):
        return None
    if not is_square_screen(x, screens):
        return None
    roots = roots_in_field(K, [-x, K.zero, K.one] if False else [K.zero - x, K.zero, K.one])
    for r in roots:
        if (r * r - x).is_zero:
            return r
    return None


# ---------------------------------------------------------------------------
# automorphisms and isomorphism
# ---------------------------------------------------------------------------


class Automorphism:
    """Field automorphism determined by the image of the defining root."""

    def __init__(self, K: NumberField, image: FieldElem):
        self.parent = K
        self.image = image
        self._pows = [K.one]
        for _ in range(K.degree - 1):
            self._pows.append(self._pows[-1] * image)

    def __call__(self, x: FieldElem) -> FieldElem:
        t = x.theta_poly()
        out = self.parent.zero
        for c, p in zip(t, self._pows):
            if c:
                out = out + p * c
        return out

    @property
    def is_identity(self):
        return self.image == self.parent.theta

    def __eq__(self, other):
        return isinstance(other, Automorphism) and self.image == other.image

    def __hash__(self):
        return hash(self.image)


def automorphisms(K: NumberField) -> list[Automorphism]:
    """All automorphisms of K/Q (complete list; of size degree iff Galois)."""
    roots = roots_in_field(K, [Fraction(c) for c in K.f.coeffs])
    auts = [Automorphism(K, r) for r in roots]
    auts.sort(key=lambda a: a.image.coords)
    ident = [a for a in auts if a.is_identity]
    rest = [a for a in auts if not a.is_identity]
    return ident + rest


def has_root_in_field(K: NumberField, g: IntPoly) -> bool:
    return bool(roots_in_field(K, [Fraction(c) for c in g.coeffs]))


def is_isomorphic(K1: NumberField, K2: NumberField) -> bool:
    """Field isomorphism over Q, decided by root finding (never by comparing
    defining polynomials)."""
    if K1.degree != K2.degree or K1.field_disc != K2.field_disc:
        return False
    if K1.f == K2.f:
        return True
    return has_root_in_field(K1, K2.f)
