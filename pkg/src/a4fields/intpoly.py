"""Exact univariate polynomial arithmetic over Z, Q and Z/pZ.

Polynomials are dense lists of Python ints, lowest degree first.  Everything
here is exact: no floating point.  The mod-p factorization uses squarefree
decomposition, distinct-degree splitting and Cantor-Zassenhaus equal-degree
splitting with a deterministically seeded generator, so results are
reproducible across runs.
"""

from __future__ import annotations

import math
import random
from fractions import Fraction

from .errors import NotPrime, ZeroPolynomial

# ---------------------------------------------------------------------------
# integer helpers
# ---------------------------------------------------------------------------

_SMALL_PRIMES = [2, 3, 5, 7, 11, 13, 17, 19, 23, 29, 31, 37]


def is_prime(n: int) -> bool:
    """Deterministic Miller-Rabin, valid for all n < 3.3e24."""
    if n < 2:
        return False
    for p in _SMALL_PRIMES:
        if n % p == 0:
            return n == p
    d = n - 1
    r = 0
    while d % 2 == 0:
        d //= 2
        r += 1
    for a in _SMALL_PRIMES:
        x = pow(a, d, n)
        if x == 1 or x == n - 1:
            continue
        for _ in range(r - 1):
            x = x * x % n
            if x == n - 1:
                break
        else:
            return False
    return True


def next_prime(n: int) -> int:
    n += 1
    while not is_prime(n):
        n += 1
    return n


def is_square(n: int) -> bool:
    if n < 0:
        return False
    r = math.isqrt(n)
    return r * r == n


def _pollard_brent(n: int, rng: random.Random) -> int:
    if n % 2 == 0:
        return 2
    while True:
        y = rng.randrange(1, n)
        c = rng.randrange(1, n)
        m = 128
        g = r = q = 1
        while g == 1:
            x = y
            for _ in range(r):
                y = (y * y + c) % n
            k = 0
            while k < r and g == 1:
                ys = y
                for _ in range(min(m, r - k)):
                    y = (y * y + c) % n
                    q = q * abs(x - y) % n
                g = math.gcd(q, n)
                k += m
            r *= 2
        if g == n:
            g = 1
            while g == 1:
                ys = (ys * ys + c) % n
                g = math.gcd(abs(x - ys), n)
        if g != n:
            return g


def factorint(n: int, rho_rounds: int = 64) -> dict[int, int]:
    """Factor |n| into primes.  Trial division then Brent's rho; raises
    CertificationFailure only implicitly via callers when a cofactor is left,
    which with rho_rounds=64 does not happen for inputs below ~1e24."""
    n = abs(n)
    fac: dict[int, int] = {}
    if n <= 1:
        return fac
    for p in (2, 3, 5):
        while n % p == 0:
            fac[p] = fac.get(p, 0) + 1
            n //= p
    d = 7
    wheel = (4, 2, 4, 2, 4, 6, 2, 6)
    i = 0
    while d * d <= n and d < 100000:
        while n % d == 0:
            fac[d] = fac.get(d, 0) + 1
            n //= d
        d += wheel[i]
        i = (i + 1) % 8
    if n == 1:
        return fac
    stack = [n]
    rng = random.Random(0xA4F1E1D5)
    while stack:
        m = stack.pop()
        if m == 1:
            continue
        if is_prime(m):
            fac[m] = fac.get(m, 0) + 1
            continue
        r = math.isqrt(m)
        if r * r == m:
            stack.extend([r, r])
            continue
        g = _pollard_brent(m, rng)
        stack.extend([g, m // g])
    return fac


def squarefree_part(n: int) -> int:
    """Squarefree part of n (sign preserved)."""
    sign = -1 if n < 0 else 1
    out = 1
    for p, e in factorint(n).items():
        if e % 2:
            out *= p
    return sign * out


# ---------------------------------------------------------------------------
# raw dense polynomials over Z (lists, lowest degree first)
# ---------------------------------------------------------------------------


def zstrip(f: list[int]) -> list[int]:
    while f and f[-1] == 0:
        f.pop()
    return f


def zadd(f, g):
    n = max(len(f), len(g))
    return zstrip([(f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0) for i in range(n)])


def zsub(f, g):
    n = max(len(f), len(g))
    return zstrip([(f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0) for i in range(n)])


def zmul(f, g):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return zstrip(out)


def zscale(f, c):
    if c == 0:
        return []
    return [a * c for a in f]


def zeval(f, x):
    out = 0
    for a in reversed(f):
        out = out * x + a
    return out


def zeval_frac(f, x: Fraction) -> Fraction:
    out = Fraction(0)
    for a in reversed(f):
        out = out * x + a
    return out


def zderiv(f):
    return zstrip([i * f[i] for i in range(1, len(f))])


def zdivmod_exact(f, g):
    """Polynomial division f = q*g + r over Q, demanding both q and r stay
    integral (true whenever g is monic)."""
    f = list(f)
    q = [0] * max(0, len(f) - len(g) + 1)
    lc = g[-1]
    while len(f) >= len(g) and f:
        c, rem = divmod(f[-1], lc)
        if rem:
            raise ValueError("non-exact polynomial division")
        d = len(f) - len(g)
        q[d] = c
        for i in range(len(g)):
            f[d + i] -= c * g[i]
        zstrip(f)
    return zstrip(q), f


def zcontent(f) -> int:
    c = 0
    for a in f:
        c = math.gcd(c, a)
    return c


def zprimitive(f):
    c = zcontent(f)
    if c == 0:
        return [], 0
    if f[-1] < 0:
        c = -c
    return [a // c for a in f], c


def zcompose_x2(f):
    """f(x^2)."""
    out = [0] * (2 * len(f) - 1) if f else []
    for i, a in enumerate(f):
        out[2 * i] = a
    return zstrip(out)


def zshift(f, c):
    """f(x + c) by Horner."""
    out = []
    for a in reversed(f):
        out = zadd(zmul(out, [c, 1]), [a])
    return out


def zresultant(f, g) -> int:
    """Resultant over Z via the subresultant pseudo-remainder sequence."""
    a = zstrip(list(f))
    b = zstrip(list(g))
    if not a or not b:
        return 0
    if len(a) == 1 and len(b) == 1:
        return 1
    ca = abs(zcontent(a)) or 1
    cb = abs(zcontent(b)) or 1
    a = [x // ca for x in a]
    b = [x // cb for x in b]
    t = ca ** (len(b) - 1) * cb ** (len(a) - 1)
    s = 1
    if len(a) < len(b):
        if (len(a) - 1) % 2 == 1 and (len(b) - 1) % 2 == 1:
            s = -s
        a, b = b, a
    if len(b) == 1:
        return s * t * b[0] ** (len(a) - 1)
    gg = 1
    h = 1
    while True:
        da, db = len(a) - 1, len(b) - 1
        d = da - db
        if da % 2 == 1 and db % 2 == 1:
            s = -s
        r = _zprem(a, b)
        if not r:
            return 0
        a = b
        denom = gg * h ** d
        b = [x // denom for x in r]
        gg = a[-1]
        if d > 0:
            h = gg ** d // h ** (d - 1)
        if len(b) == 1:
            break
    da = len(a) - 1
    h = b[0] ** da // h ** (da - 1) if da >= 1 else h
    return s * t * h


def _zprem(a, b):
    """Pseudo-remainder: lc(b)^(da-db+1) * a mod b."""
    a = list(a)
    db = len(b) - 1
    lb = b[-1]
    k = len(a) - len(b) + 1
    while len(a) - 1 >= db and a:
        k -= 1
        c = a[-1]
        a = zscale(a, lb)
        d = len(a) - len(b)
        for i in range(len(b)):
            a[d + i] -= c * b[i]
        zstrip(a)
    if k > 0 and a:
        a = zscale(a, lb ** k)
    return zstrip(a)


def zdisc(f) -> int:
    """Discriminant of f over Z."""
    n = len(f) - 1
    if n < 1:
        return 0
    r = zresultant(f, zderiv(f))
    lc = f[-1]
    num = (-1) ** (n * (n - 1) // 2) * r
    assert num % lc == 0
    return num // lc


# ---------------------------------------------------------------------------
# polynomials over F_p
# ---------------------------------------------------------------------------


def gf_norm(f, p):
    return zstrip([a % p for a in f])


def gf_add(f, g, p):
    n = max(len(f), len(g))
    return zstrip([((f[i] if i < len(f) else 0) + (g[i] if i < len(g) else 0)) % p for i in range(n)])


def gf_sub(f, g, p):
    n = max(len(f), len(g))
    return zstrip([((f[i] if i < len(f) else 0) - (g[i] if i < len(g) else 0)) % p for i in range(n)])


def gf_mul(f, g, p):
    if not f or not g:
        return []
    out = [0] * (len(f) + len(g) - 1)
    for i, a in enumerate(f):
        if a:
            for j, b in enumerate(g):
                out[i + j] += a * b
    return zstrip([c % p for c in out])


def gf_divmod(f, g, p):
    f = [a % p for a in f]
    zstrip(f)
    if not g:
        raise ZeroDivisionError
    inv = pow(g[-1], p - 2, p)
    q = [0] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g) and f:
        c = f[-1] * inv % p
        d = len(f) - len(g)
        q[d] = c
        for i in range(len(g)):
            f[d + i] = (f[d + i] - c * g[i]) % p
        zstrip(f)
    return zstrip(q), f


def gf_monic(f, p):
    if not f:
        return []
    inv = pow(f[-1], p - 2, p)
    return [a * inv % p for a in f]


def gf_gcd(f, g, p):
    f, g = gf_norm(f, p), gf_norm(g, p)
    while g:
        f, g = g, gf_divmod(f, g, p)[1]
    return gf_monic(f, p)


def gf_powmod(f, e, mod, p):
    out = [1]
    f = gf_divmod(f, mod, p)[1]
    while e:
        if e & 1:
            out = gf_divmod(gf_mul(out, f, p), mod, p)[1]
        f = gf_divmod(gf_mul(f, f, p), mod, p)[1]
        e >>= 1
    return out


def gf_deriv(f, p):
    return zstrip([(i * f[i]) % p for i in range(1, len(f))])


def _gf_sqf(f, p):
    """Squarefree decomposition of monic f over F_p: list of (g_i, i)."""
    out = []
    c = gf_gcd(f, gf_deriv(f, p), p)
    w = gf_divmod(f, c, p)[0]
    i = 1
    while len(w) > 1:
        y = gf_gcd(w, c, p)
        fac = gf_divmod(w, y, p)[0]
        if len(fac) > 1:
            out.append((fac, i))
        w = y
        c = gf_divmod(c, y, p)[0]
        i += 1
    if len(c) > 1:
        # c is a p-th power: c(x) = v(x^p) = v(x)^p
        v = [c[j] for j in range(0, len(c), p)]
        for g, m in _gf_sqf(zstrip(v), p):
            out.append((g, m * p))
    return out


def _gf_ddf(f, p):
    """Distinct-degree factorization of squarefree monic f: (product, d)."""
    out = []
    xq = [0, 1]
    d = 0
    rem = f
    while len(rem) - 1 >= 2 * (d + 1):
        d += 1
        xq = gf_powmod(xq, p, rem, p)
        g = gf_gcd(gf_sub(xq, [0, 1], p), rem, p)
        if len(g) > 1:
            out.append((g, d))
            rem = gf_divmod(rem, g, p)[0]
            xq = gf_divmod(xq, rem, p)[1]
    if len(rem) > 1:
        out.append((rem, len(rem) - 1))
    return out


def _gf_edf(f, d, p, rng):
    """Equal-degree splitting (Cantor-Zassenhaus) of monic squarefree f whose
    irreducible factors all have degree d."""
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = [rng.randrange(p) for _ in range(n)]
        a = zstrip(a)
        if len(a) < 2:
            continue
        if p == 2:
            # trace map over F_2
            t = list(a)
            u = list(a)
            for _ in range(d * _f2_ext_steps(n, d) - 1):
                u = gf_divmod(gf_mul(u, u, p), f, p)[1]
                t = gf_add(t, u, p)
            g = gf_gcd(t, f, p)
        else:
            e = (p ** d - 1) // 2
            b = gf_powmod(a, e, f, p)
            g = gf_gcd(gf_sub(b, [1], p), f, p)
        if 0 < len(g) - 1 < n:
            return _gf_edf(g, d, p, rng) + _gf_edf(gf_divmod(f, g, p)[0], d, p, rng)


def _f2_ext_steps(n, d):
    # trace map length for F_{2^d}: need sum_{i=0}^{d-1} a^{2^i}; iterate d times
    return 1


def _gf_edf2(f, d, rng):
    """Equal-degree splitting over F_2 via the trace map."""
    p = 2
    n = len(f) - 1
    if n == d:
        return [f]
    while True:
        a = zstrip([rng.randrange(2) for _ in range(n)])
        if len(a) < 1:
            continue
        t = list(a)
        u = list(a)
        for _ in range(d - 1):
            u = gf_divmod(gf_mul(u, u, p), f, p)[1]
            t = gf_add(t, u, p)
        g = gf_gcd(t, f, p)
        if 0 < len(g) - 1 < n:
            return _gf_edf2(g, d, rng) + _gf_edf2(gf_divmod(f, g, p)[0], d, rng)


def gf_factor(f, p) -> list[tuple[list[int], int]]:
    """Full factorization of f mod p into monic irreducibles.

    Returns [(factor, multiplicity)], sorted by (degree, coefficient tuple)
    for determinism.  The equal-degree stage uses a generator seeded from
    (f mod p, p), so repeated calls agree.
    """
    if not is_prime(p):
        raise NotPrime(f"{p} is not prime")
    f = gf_norm(f, p)
    if not f:
        raise ZeroPolynomial("polynomial is zero mod p")
    seed = hash((p, tuple(f))) & 0xFFFFFFFF
    rng = random.Random(seed)
    out: list[tuple[list[int], int]] = []
    fm = gf_monic(f, p)
    if len(fm) == 1:
        return []
    for g, mult in _gf_sqf(fm, p):
        for h, d in _gf_ddf(g, p):
            if p == 2:
                irr = _gf_edf2(h, d, rng)
            else:
                irr = _gf_edf(h, d, p, rng)
            for q in irr:
                out.append((q, mult))
    out.sort(key=lambda t: (len(t[0]), tuple(reversed(t[0]))))
    return out


def gf_is_irreducible(f, p) -> bool:
    f = gf_monic(gf_norm(f, p), p)
    n = len(f) - 1
    if n <= 0:
        return False
    if n == 1:
        return True
    xq = gf_powmod([0, 1], p ** n, f, p)
    if gf_sub(xq, [0, 1], p):
        return False
    for q in set(factorint(n)):
        xq = gf_powmod([0, 1], p ** (n // q), f, p)
        if len(gf_gcd(gf_sub(xq, [0, 1], p), f, p)) > 1:
            return False
    return True


def gf_roots(f, p) -> list[int]:
    """Roots of f in F_p (without multiplicity), sorted."""
    out = [r for r, _m in gf_roots_mult(f, p)]
    return out


def gf_roots_mult(f, p) -> list[tuple[int, int]]:
    fac = gf_factor(f, p)
    out = []
    for g, m in fac:
        if len(g) == 2:
            out.append(((-g[0]) % p, m))
    out.sort()
    return out


# ---------------------------------------------------------------------------
# factorization over Q (Zassenhaus)
# ---------------------------------------------------------------------------


def _hensel_lift_pair(f, g, h, s, t, p, q):
    """One quadratic Hensel step: f = g*h mod q, s*g + t*h = 1 mod q, with
    everything lifted to mod q^2 (coefficients symmetric)."""
    q2 = q * q
    e = zsub(f, zmul(g, h))
    e = [c % q2 for c in e]
    qq, r = _poly_divmod_mod(zmul(s, e), h, q2)
    gnew = [(a + b) % q2 for a, b in _padzip(g, zadd(zmul(t, e), zmul(qq, g)))]
    hnew = [(a + b) % q2 for a, b in _padzip(h, r)]
    gnew, hnew = zstrip(gnew), zstrip(hnew)
    b = zsub(zadd(zmul(s, gnew), zmul(t, hnew)), [1])
    b = [c % q2 for c in b]
    cc, d = _poly_divmod_mod(zmul(s, b), hnew, q2)
    snew = zstrip([(a - b_) % q2 for a, b_ in _padzip(s, d)])
    tnew = zstrip([(a - b_) % q2 for a, b_ in _padzip(t, zadd(zmul(t, b), zmul(cc, gnew)))])
    return gnew, hnew, snew, tnew


def _padzip(f, g):
    n = max(len(f), len(g))
    return [((f[i] if i < len(f) else 0), (g[i] if i < len(g) else 0)) for i in range(n)]


def _poly_divmod_mod(f, g, m):
    """Division mod m, g monic-invertible mod m (lc coprime to m)."""
    f = [a % m for a in f]
    zstrip(f)
    inv = pow(g[-1], -1, m)
    q = [0] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g) and f:
        c = f[-1] * inv % m
        d = len(f) - len(g)
        q[d] = c
        for i in range(len(g)):
            f[d + i] = (f[d + i] - c * g[i]) % m
        zstrip(f)
    return zstrip(q), f


def _hensel_tree(f, facs, p, target):
    """Lift a pairwise-coprime monic factorization of f mod p to mod p^k >=
    target via a binary split tree."""
    if len(facs) == 1:
        return [gf_norm(f, _next_pow(p, target))]
    mid = len(facs) // 2
    g = [1]
    for u in facs[:mid]:
        g = gf_mul(g, u, p)
    h = [1]
    for u in facs[mid:]:
        h = gf_mul(h, u, p)
    # xgcd of g,h mod p
    s, t = _gf_xgcd(g, h, p)
    q = p
    G, H, S, T = g, h, s, t
    while q < target:
        G, H, S, T = _hensel_lift_pair(f, G, H, S, T, p, q)
        q = q * q
    out = []
    out += _hensel_tree(G, facs[:mid], p, target)
    out += _hensel_tree(H, facs[mid:], p, target)
    return out


def _next_pow(p, target):
    q = p
    while q < target:
        q *= q
    return q


def _gf_xgcd(f, g, p):
    """s, t with s*f + t*g = 1 mod p for coprime f, g."""
    r0, r1 = gf_norm(f, p), gf_norm(g, p)
    s0, s1 = [1], []
    t0, t1 = [], [1]
    while r1:
        q, r = gf_divmod(r0, r1, p)
        r0, r1 = r1, r
        s0, s1 = s1, gf_sub(s0, gf_mul(q, s1, p), p)
        t0, t1 = t1, gf_sub(t0, gf_mul(q, t1, p), p)
    inv = pow(r0[0], p - 2, p)
    return [a * inv % p for a in s0], [a * inv % p for a in t0]


def _symmetric(a, m):
    a %= m
    return a - m if a > m // 2 else a


def zfactor_squarefree_primitive(f) -> list[list[int]]:
    """Irreducible factors over Z of a primitive squarefree polynomial with
    positive leading coefficient (Zassenhaus)."""
    import itertools

    n = len(f) - 1
    if n <= 1:
        return [list(f)]
    lc = f[-1]
    p = 3
    while True:
        p = next_prime(p)
        if lc % p == 0:
            continue
        fp = gf_norm(f, p)
        if len(fp) - 1 != n:
            continue
        if len(gf_gcd(fp, gf_deriv(fp, p), p)) == 1:
            facs = gf_factor(f, p)
            if len(facs) == 1 and facs[0][1] == 1:
                return [list(f)]
            break
    modfacs = [g for g, _ in facs]
    norm2 = math.isqrt(sum(c * c for c in f)) + 1
    bound = 2 * abs(lc) * (2 ** n) * norm2
    target = 2 * bound + 1
    q = _next_pow(p, target)
    fmon = [a * pow(lc, -1, q) % q for a in f]
    lifted = _hensel_tree(fmon, modfacs, p, target)
    out = []
    rem = list(f)
    idx = list(range(len(lifted)))
    r = 1
    while 2 * r <= len(idx):
        found = True
        while found and 2 * r <= len(idx):
            found = False
            for combo in itertools.combinations(range(len(idx)), r):
                g = [rem[-1] % q]
                for c in combo:
                    g = [a % q for a in zmul(g, lifted[idx[c]])]
                g = zstrip([_symmetric(a, q) for a in g])
                if not g:
                    continue
                g, _ = zprimitive(g)
                quo, rr = _try_divide(rem, g)
                if quo is not None and not rr:
                    out.append(g)
                    rem = quo
                    for c in sorted(combo, reverse=True):
                        idx.pop(c)
                    found = True
                    break
        r += 1
    if len(rem) > 1:
        out.append(zprimitive(rem)[0])
    out.sort(key=lambda t: (len(t), tuple(reversed(t))))
    return out


def _try_divide(f, g):
    """Divide f by primitive g over Q and return (quotient, remainder) with
    quotient integral if remainder is empty; else (None, [1])."""
    f = [Fraction(a) for a in f]
    gl = g[-1]
    q = [Fraction(0)] * max(0, len(f) - len(g) + 1)
    while len(f) >= len(g) and any(f):
        while f and f[-1] == 0:
            f.pop()
        if len(f) < len(g):
            break
        c = f[-1] / gl
        d = len(f) - len(g)
        q[d] = c
        for i in range(len(g)):
            f[d + i] -= c * g[i]
    while f and f[-1] == 0:
        f.pop()
    if f:
        return None, [1]
    if any(c.denominator != 1 for c in q):
        return None, [1]
    return zstrip([int(c) for c in q]), []


def zsquarefree_decomposition(f) -> list[tuple[list[int], int]]:
    """Yun's algorithm on a primitive polynomial with positive leading
    coefficient: returns [(squarefree primitive part, multiplicity)]."""
    fp = zderiv(f)
    u = zgcd(f, fp)
    if len(u) == 1:
        return [(list(f), 1)]
    v, _ = _try_divide(f, u)
    w, _ = _try_divide(fp, u)
    out = []
    i = 1
    while len(v) > 1:
        z = zsub(w, zderiv(v))
        if not z:
            out.append((v, i))
            break
        h = zgcd(v, z)
        if len(h) > 1:
            out.append((h, i))
        v, _ = _try_divide(v, h)
        w, _ = _try_divide(z, h)
        i += 1
    return out


def zfactor(f) -> tuple[int, list[tuple[list[int], int]]]:
    """Factor f over Z: returns (content with sign, [(primitive irreducible,
    multiplicity)]), ordered by (degree, coefficients)."""
    f = zstrip(list(f))
    if not f:
        raise ZeroPolynomial("cannot factor the zero polynomial")
    prim, cont = zprimitive(f)
    out = []
    for sqf, mult in zsquarefree_decomposition(prim):
        for irr in zfactor_squarefree_primitive(sqf):
            out.append((irr, mult))
    out.sort(key=lambda t: (len(t[0]), tuple(reversed(t[0]))))
    return cont, out


def zgcd(f, g):
    """Primitive gcd over Z (positive leading coefficient)."""
    f, g = zstrip(list(f)), zstrip(list(g))
    if not f:
        return zprimitive(g)[0] if g else []
    if not g:
        return zprimitive(f)[0]
    a, _ = zprimitive(f)
    b, _ = zprimitive(g)
    while b:
        r = _zprem(a, b)
        a, b = b, zprimitive(r)[0] if r else []
    if a and a[-1] < 0:
        a = [-c for c in a]
    return a


def zis_irreducible(f) -> bool:
    f = zstrip(list(f))
    if len(f) < 2:
        return False
    prim, _ = zprimitive(f)
    _, facs = zfactor(prim)
    return len(facs) == 1 and facs[0][1] == 1 and len(facs[0][0]) == len(f)


# ---------------------------------------------------------------------------
# IntPoly / RatPoly value types
# ---------------------------------------------------------------------------


class IntPoly:
    """Immutable dense polynomial over Z, lowest degree first."""

    __slots__ = ("coeffs",)

    def __init__(self, coeffs):
        c = list(coeffs)
        while c and c[-1] == 0:
            c.pop()
        object.__setattr__(self, "coeffs", tuple(c))

    def __setattr__(self, *a):
        raise AttributeError("IntPoly is immutable")

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1 if self.coeffs else -1

    @property
    def is_zero(self) -> bool:
        return not self.coeffs

    def __eq__(self, other):
        return isinstance(other, IntPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def __add__(self, other):
        return IntPoly(zadd(list(self.coeffs), list(other.coeffs)))

    def __sub__(self, other):
        return IntPoly(zsub(list(self.coeffs), list(other.coeffs)))

    def __mul__(self, other):
        if isinstance(other, int):
            return IntPoly(zscale(list(self.coeffs), other))
        return IntPoly(zmul(list(self.coeffs), list(other.coeffs)))

    __rmul__ = __mul__

    def __neg__(self):
        return IntPoly([-c for c in self.coeffs])

    def __call__(self, x):
        if isinstance(x, Fraction):
            return zeval_frac(list(self.coeffs), x)
        return zeval(list(self.coeffs), x)

    def deriv(self) -> "IntPoly":
        return IntPoly(zderiv(list(self.coeffs)))

    def disc(self) -> int:
        return zdisc(list(self.coeffs))

    def resultant(self, other) -> int:
        return zresultant(list(self.coeffs), list(other.coeffs))

    def is_monic(self) -> bool:
        return bool(self.coeffs) and self.coeffs[-1] == 1

    def __repr__(self):
        if self.is_zero:
            return "IntPoly(0)"
        terms = []
        for i in range(self.degree, -1, -1):
            c = self.coeffs[i]
            if not c:
                continue
            if i == 0:
                terms.append(f"{c:+d}")
            elif i == 1:
                terms.append(f"{c:+d}*x")
            else:
                terms.append(f"{c:+d}*x^{i}")
        s = " ".join(terms).lstrip("+")
        return f"IntPoly({s})"

    @staticmethod
    def from_string_coeffs(*coeffs):
        """Build from highest-degree-first integers (reads like the usual
        notation: IntPoly.from_string_coeffs(1, -1, -54, 169) is
        x^3 - x^2 - 54x + 169)."""
        return IntPoly(list(reversed(coeffs)))


def poly(*coeffs_high_first) -> IntPoly:
    """Shorthand: poly(1, 0, 1) == x^2 + 1."""
    return IntPoly(list(reversed(coeffs_high_first)))


class RatPoly:
    """Polynomial with integer numerator and a positive integer denominator,
    kept with numerator content coprime to the denominator."""

    __slots__ = ("num", "den")

    def __init__(self, num: IntPoly, den: int = 1):
        if den == 0:
            raise ZeroDivisionError("RatPoly denominator is zero")
        if den < 0:
            num, den = -num, -den
        g = math.gcd(zcontent(list(num.coeffs)), den)
        if g > 1:
            num = IntPoly([c // g for c in num.coeffs])
            den //= g
        object.__setattr__(self, "num", num)
        object.__setattr__(self, "den", den)

    def __setattr__(self, *a):
        raise AttributeError("RatPoly is immutable")

    def __eq__(self, other):
        return isinstance(other, RatPoly) and self.num == other.num and self.den == other.den

    def __hash__(self):
        return hash((self.num, self.den))

    def coeff(self, i: int) -> Fraction:
        c = self.num.coeffs[i] if i <= self.num.degree else 0
        return Fraction(c, self.den)

    def coeff_list(self, n: int) -> list[Fraction]:
        return [self.coeff(i) for i in range(n)]

    @staticmethod
    def from_fractions(coeffs) -> "RatPoly":
        den = 1
        for c in coeffs:
            den = den * c.denominator // math.gcd(den, c.denominator)
        return RatPoly(IntPoly([int(c * den) for c in coeffs]), den)

    def __call__(self, x: Fraction) -> Fraction:
        return self.num(Fraction(x)) / self.den

    def __repr__(self):
        return f"RatPoly({self.num!r}/{self.den})"


def factor_poly_mod_p(f: IntPoly, p: int) -> list[tuple[IntPoly, int]]:
    """Factor f modulo the prime p into monic irreducibles with multiplicity,
    sorted by (degree, coefficient tuple)."""
    facs = gf_factor(list(f.coeffs), p)
    return [(IntPoly(g), m) for g, m in facs]
