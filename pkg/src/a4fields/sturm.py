"""Certified real root isolation via Sturm sequences and exact sign
determination of polynomial expressions at those roots.

All endpoints are rational, all evaluations exact; the only approximation is
the width of an isolating interval, which callers can shrink on demand.
"""

from __future__ import annotations

from fractions import Fraction

from .errors import CertificationFailure, ZeroElement
from .intpoly import IntPoly, zgcd, zstrip, _try_divide

MAX_REFINE = 1 << 16


def sturm_sequence(f: list[int]) -> list[list[int]]:
    """Sturm sequence of a squarefree integer polynomial, with primitive
    parts taken at every step to control coefficient growth.

    Pseudo-remainders scale by lc^(da-db+1); when that multiplier is
    negative it must be undone, since Sturm counting only tolerates
    rescaling by positive constants."""
    from .intpoly import zderiv, _zprem

    seq = [list(f), zderiv(f)]
    while len(seq[-1]) > 0:
        a, b = seq[-2], seq[-1]
        da, db = len(a) - 1, len(b) - 1
        r = _zprem(a, b)
        if not r:
            break
        if b[-1] < 0 and (da - db + 1) % 2 == 1:
            r = [-c for c in r]
        r = [-c for c in r]
        g = 0
        for c in r:
            g = _gcd(g, abs(c))
        if g > 1:
            r = [c // g for c in r]
        seq.append(r)
    return [s for s in seq if s]


def _gcd(a, b):
    while b:
        a, b = b, a % b
    return a


def _sign(x) -> int:
    return (x > 0) - (x < 0)


def _eval(f: list[int], x: Fraction) -> Fraction:
    out = Fraction(0)
    for c in reversed(f):
        out = out * x + c
    return out


def _variations(seq, x: Fraction) -> int:
    signs = []
    for f in seq:
        s = _sign(_eval(f, x))
        if s:
            signs.append(s)
    return sum(1 for a, b in zip(signs, signs[1:]) if a != b)


def cauchy_bound(f: list[int]) -> Fraction:
    lc = abs(f[-1])
    m = max(abs(c) for c in f[:-1]) if len(f) > 1 else 0
    return Fraction(m, lc) + 1


class RealRoots:
    """Isolating intervals for the real roots of a squarefree part of f.

    Intervals are open (lo, hi) with f(lo) != 0 != f(hi), each containing
    exactly one real root, pairwise disjoint, sorted ascending.
    """

    def __init__(self, f: IntPoly):
        coeffs = list(f.coeffs)
        if not coeffs:
            raise ZeroElement("zero polynomial has no isolated roots")
        g = zgcd(coeffs, list(f.deriv().coeffs))
        if len(g) > 1:
            coeffs, _ = _try_divide(coeffs, g)
        self.poly = coeffs
        self.seq = sturm_sequence(coeffs)
        self.intervals: list[tuple[Fraction, Fraction]] = []
        if len(coeffs) > 1:
            b = cauchy_bound(coeffs) + 1
            self._isolate(-b, b, _variations(self.seq, -b), _variations(self.seq, b))
        self.intervals.sort()

    def _nudged_mid(self, lo: Fraction, hi: Fraction) -> Fraction:
        """Midpoint of (lo, hi), displaced to a non-root while staying
        strictly inside the interval (offsets sum below (hi-lo)/8)."""
        mid = (lo + hi) / 2
        off = (hi - lo) / 16
        while _eval(self.poly, mid) == 0:
            mid += off
            off /= 16
        return mid

    def _isolate(self, lo, hi, vlo, vhi):
        n = vlo - vhi
        if n == 0:
            return
        if n == 1:
            self.intervals.append((lo, hi))
            return
        mid = self._nudged_mid(lo, hi)
        vmid = _variations(self.seq, mid)
        self._isolate(lo, mid, vlo, vmid)
        self._isolate(mid, hi, vmid, vhi)

    @property
    def count(self) -> int:
        return len(self.intervals)

    def refine(self, i: int, width: Fraction) -> tuple[Fraction, Fraction]:
        """Shrink interval i below the given width by bisection."""
        lo, hi = self.intervals[i]
        slo = _sign(_eval(self.poly, lo))
        steps = 0
        while hi - lo > width:
            if steps > MAX_REFINE:
                raise CertificationFailure("root refinement did not converge")
            steps += 1
            mid = (lo + hi) / 2
            v = _eval(self.poly, mid)
            if v == 0:
                # mid is the (rational) root itself: shrink symmetrically,
                # keeping endpoints off the finitely many roots
                eps = (hi - lo) / 1024
                lo, hi = mid - eps, mid + eps
                while _eval(self.poly, lo) == 0:
                    lo += eps / 16
                    eps /= 16
                eps2 = (hi - lo) / 1024
                while _eval(self.poly, hi) == 0:
                    hi -= eps2 / 16
                    eps2 /= 16
                slo = _sign(_eval(self.poly, lo))
                continue
            if _sign(v) == slo:
                lo = mid
            else:
                hi = mid
        self.intervals[i] = (lo, hi)
        return lo, hi

    def approx(self, i: int, digits: int = 25) -> Fraction:
        width = Fraction(1, 10 ** digits)
        lo, hi = self.refine(i, width)
        return (lo + hi) / 2

    def sign_of_at(self, g_coeffs, i: int) -> int:
        """Certified sign of g(theta_i), g given by Fraction coefficients.

        Raises ZeroElement when g(theta_i) = 0 (detected exactly via gcd)."""
        den = 1
        for c in g_coeffs:
            den = den * c.denominator // _gcd(den, c.denominator)
        gz = zstrip([int(c * den) for c in g_coeffs])
        if not gz:
            raise ZeroElement("zero expression has no sign")
        common = zgcd(self.poly, gz)
        if len(common) > 1:
            lo, hi = self.intervals[i]
            vlo = _variations(sturm_sequence(common), lo)
            vhi = _variations(sturm_sequence(common), hi)
            if vlo - vhi:
                raise ZeroElement("expression vanishes at this embedding")
        steps = 0
        while True:
            lo, hi = self.intervals[i]
            glo, ghi = _interval_eval(gz, lo, hi)
            if glo > 0:
                return 1
            if ghi < 0:
                return -1
            if steps > MAX_REFINE:
                raise CertificationFailure("sign refinement did not converge")
            steps += 1
            self.refine(i, (hi - lo) / 4)


def _interval_eval(f: list[int], lo: Fraction, hi: Fraction):
    """Sound enclosure of f([lo, hi]) by interval Horner."""
    alo = Fraction(f[-1])
    ahi = Fraction(f[-1])
    for c in reversed(f[:-1]):
        cands = (alo * lo, alo * hi, ahi * lo, ahi * hi)
        alo, ahi = min(cands) + c, max(cands) + c
    return alo, ahi
