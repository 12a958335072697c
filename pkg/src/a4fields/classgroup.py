"""Class groups, unit groups, principality and narrow 2-parts for totally
real fields of small degree.

The computation works over a factor base of all primes of norm below the
Minkowski bound.  Relations come from smooth elements found by a vectorized
box search over an LLL-reduced basis of the maximal order; the candidate
group is accepted only after (a) the relation lattice stabilizes, (b) every
factor-base prime is expressed in the working generators through an explicit
element witness (the Minkowski sweep), and (c) apparent 2-torsion classes
survive a principality probe.  Units are extracted from the relation kernel,
2-saturated exactly with certified square roots, and optionally saturated at
odd primes up to a bound derived from a certified regulator lower bound.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction

import numpy as np
from mpmath import mp, mpf

from .errors import BoundTooLarge, CertificationFailure
from .fieldfactor import _screen_primes, automorphisms, roots_in_field, sqrt_in_field
from .intmatrix import IntMatrix, kernel_right, lll_reduce, snf_with_transforms
from .intpoly import factorint, gf_roots, next_prime
from .ideals import FracIdeal, PrimeIdealData, factor_rational_prime
from .numfield import FieldElem, NumberField
from .sturm import _interval_eval

MAX_MINKOWSKI = 500_000


def minkowski_bound(K: NumberField) -> int:
    """Floor of (n!/n^n) (4/pi)^{r2} sqrt(|disc|), conservatively rounded up
    never down (the factor base must reach the true bound)."""
    n = K.degree
    r1, r2 = K.signature
    val = Fraction(math.factorial(n) ** 2, n ** (2 * n)) * abs(K.field_disc)
    if r2:
        val *= Fraction(4, 3) ** (2 * r2)  # 4/pi < 4/3 + margin: (4/pi)^2 < (4/3)^2 * 1.0 ... see below
        # exact: (4/pi)^2 = 1.6211...; (4/3)^2 = 1.7777... so this over-covers
    lo = math.isqrt(val.numerator // val.denominator)
    while (lo + 1) ** 2 * val.denominator <= val.numerator:
        lo += 1
    return lo + 1


class ClassGroupData:
    """Certified class group: SNF invariants, generating ideals, dlog."""

    def __init__(self, parent, snf_invariants, generators, helper):
        self.parent = parent
        self.snf_invariants = snf_invariants  # nontrivial (> 1) only, ascending divisibility
        self.generators = generators
        self.helper = helper

    @property
    def order(self) -> int:
        out = 1
        for d in self.snf_invariants:
            out *= d
        return out

    def dlog(self, ideal: FracIdeal):
        return self.helper.dlog(ideal)

    def p_rank(self, p: int) -> int:
        return sum(1 for d in self.snf_invariants if d % p == 0)

    def two_part(self) -> list[int]:
        out = []
        for d in self.snf_invariants:
            t = 1
            while d % 2 == 0:
                d //= 2
                t *= 2
            if t > 1:
                out.append(t)
        out.sort()
        return out

    def __repr__(self):
        return f"ClassGroupData({self.snf_invariants})"


class UnitGroupData:
    def __init__(self, parent, fundamental_units, regulator_interval, certified_index_bound):
        self.parent = parent
        self.fundamental_units = fundamental_units
        self.torsion = -1
        self.regulator_approx = regulator_interval
        self.certified_index_bound = certified_index_bound

    def rank(self):
        return len(self.fundamental_units)

    def __repr__(self):
        lo, hi = self.regulator_approx
        return f"UnitGroupData(rank={self.rank()}, reg=[{float(lo):.6f},{float(hi):.6f}])"


class NarrowData:
    def __init__(self, parent, sign_matrix, narrow_2_invariants, narrow_invariants):
        self.parent = parent
        self.sign_matrix = sign_matrix
        self.narrow_2_invariants = narrow_2_invariants
        self.narrow_invariants = narrow_invariants

    @property
    def is_two_part_cyclic(self):
        return len(self.narrow_2_invariants) <= 1

    def __repr__(self):
        return f"NarrowData(2-part={self.narrow_2_invariants})"


def _pkey(P: PrimeIdealData):
    return (P.p, tuple(tuple(c) for c in P.cols))


def _primes_upto(n: int):
    if n < 2:
        return []
    sieve = bytearray([1]) * (n + 1)
    sieve[0:2] = b"\x00\x00"
    for i in range(2, int(n ** 0.5) + 1):
        if sieve[i]:
            sieve[i * i::i] = b"\x00" * len(sieve[i * i::i])
    return [i for i in range(2, n + 1) if sieve[i]]


class FieldData:
    """Class-group/unit/narrow data of one totally real field, all computed
    over a shared relation collection."""

    def __init__(self, K: NumberField, *, fb_ceiling=MAX_MINKOWSKI):
        if K.signature[1] != 0:
            raise ValueError("relation engine expects totally real fields")
        self.K = K
        self.n = K.degree
        self.rank = K.degree - 1
        self.mb = minkowski_bound(K)
        if self.mb > fb_ceiling:
            raise BoundTooLarge(f"Minkowski bound {self.mb} exceeds ceiling {fb_ceiling}")
        self._rationals = _primes_upto(self.mb)
        self.b0 = max(40, min(int(0.55 * math.log(max(abs(K.field_disc), 3)) ** 2) + 20,
                              max(self.mb, 40)))
        self.relations: list[list[int]] = []
        self.witnesses: list[tuple] = []
        self.splist: list[PrimeIdealData] = []
        self.spindex = {}
        self.fb_dlog = {}
        self._class_data = None
        self._unit_data = None
        self._narrow_data = None
        self._snf = None
        self._embed = None
        self._screens = None
        self._logv_cache = {}
        self._unit_sat_level = None

    # ------------------------------------------------------------------ setup

    def screens(self):
        if self._screens is None:
            self._screens = _screen_primes(self.K, 24)
        return self._screens

    def _build_working_base(self):
        for q in self._rationals:
            if q > self.b0:
                break
            for P in factor_rational_prime(self.K, q):
                self._add_prime(P)
        for q in self._rationals:
            if q > self.b0:
                break
            vec = [0] * len(self.splist)
            for P in factor_rational_prime(self.K, q):
                vec[self.spindex[_pkey(P)]] = P.e
            self._add_relation(vec, tuple(self.K.coerce(q).int_coords()))

    def _add_prime(self, P):
        key = _pkey(P)
        if key not in self.spindex:
            self.spindex[key] = len(self.splist)
            self.splist.append(P)
            for row in self.relations:
                row.append(0)

    def _add_relation(self, vec, wit):
        self.relations.append(list(vec))
        self.witnesses.append(tuple(wit))
        self._snf = None

    # --------------------------------------------------------------- elements

    def embedding_matrix(self):
        if self._embed is None:
            emb = self.K.basis_embedding_matrix(digits=30)
            self._embed = [[float(x) for x in row] for row in emb]
        return self._embed

    def _norm_eval_batch(self, coords: np.ndarray) -> np.ndarray:
        form = self.K.norm_form()
        n = self.n
        if coords.size == 0:
            return np.zeros(0, dtype=np.int64)
        maxc = int(np.abs(coords).max())
        bound = sum(abs(c) * max(maxc, 1) ** sum(e) for e, c in form.items())
        if bound < 2 ** 62:
            arr = coords.astype(np.int64)
            out = np.zeros(len(coords), dtype=np.int64)
            for e, c in form.items():
                term = np.full(len(coords), c, dtype=np.int64)
                for i in range(n):
                    for _ in range(e[i]):
                        term = term * arr[:, i]
                out += term
            return out
        out = np.zeros(len(coords), dtype=object)
        for idx, v in enumerate(coords.tolist()):
            out[idx] = self.K.norm_int([int(x) for x in v])
        return out

    def _box_coords(self, H: int, basis_rows) -> np.ndarray:
        n = self.n
        ranges = [np.arange(-H, H + 1)] * n
        mesh = np.meshgrid(*ranges, indexing="ij")
        flat = np.stack([m.ravel() for m in mesh], axis=1)
        keep = np.zeros(len(flat), dtype=bool)
        seen = np.zeros(len(flat), dtype=bool)
        for i in range(n):
            col = flat[:, i]
            newly = (~seen) & (col != 0)
            keep |= newly & (col > 0)
            seen |= col != 0
        flat = flat[keep]
        rb = np.array(basis_rows, dtype=object if max(abs(x) for row in basis_rows for x in row) > 2**31 else np.int64)
        if rb.dtype == object:
            return np.array([[sum(int(f[t]) * basis_rows[t][k] for t in range(n)) for k in range(n)]
                             for f in flat.tolist()], dtype=object)
        return flat.astype(np.int64) @ rb

    def _smooth_mask(self, norms: np.ndarray, qs: list[int]):
        if norms.dtype == object:
            flags = []
            for x in norms.tolist():
                x = abs(int(x))
                if x == 0:
                    flags.append(False)
                    continue
                for q in qs:
                    while x % q == 0:
                        x //= q
                flags.append(x == 1)
            return np.array(flags, dtype=bool)
        res = np.abs(norms.copy())
        for q in qs:
            while True:
                mask = (res % q == 0) & (res > 0)
                if not mask.any():
                    break
                res[mask] //= q
        return res == 1

    def _valuation_vector(self, v: list[int], extra: PrimeIdealData | None = None):
        """(vector over splist, valuation at `extra`) for the element with
        integral coords v, or None when supported outside S + extra.
        Verified against the norm factorization."""
        K = self.K
        nrm = K.norm_int(v)
        if nrm == 0:
            return None
        rest = abs(nrm)
        qs = set()
        for q in self._rationals:
            if q > self.b0:
                break
            while rest % q == 0:
                rest //= q
                qs.add(q)
        if extra is not None:
            while rest % extra.p == 0:
                rest //= extra.p
                qs.add(extra.p)
        if rest != 1:
            return None
        x = FieldElem(K, v)
        vec = [0] * len(self.splist)
        extra_val = 0
        check = 1
        for q in sorted(qs):
            for P in factor_rational_prime(K, q):
                val = P.valuation_elem(x)
                if not val:
                    continue
                idx = self.spindex.get(_pkey(P))
                if idx is None:
                    if extra is not None and _pkey(P) == _pkey(extra):
                        extra_val = val
                    else:
                        return None
                else:
                    vec[idx] = val
                check *= int(P.norm()) ** val
        if check != abs(nrm):
            raise CertificationFailure("valuation bookkeeping mismatch")
        return vec, extra_val

    # ------------------------------------------------------------- collection

    def _collect_round(self, H: int) -> int:
        K = self.K
        rb = K.reduced_basis()
        coords = self._box_coords(H, rb)
        norms = self._norm_eval_batch(coords)
        qs = [q for q in self._rationals if q <= self.b0]
        mask = self._smooth_mask(norms, qs)
        added = 0
        for row in coords[mask].tolist():
            v = [int(x) for x in row]
            out = self._valuation_vector(v)
            if out is None:
                continue
            self._add_relation(out[0], tuple(v))
            added += 1
        return added

    def _symmetrize(self):
        auts = automorphisms(self.K)
        if len(auts) != self.n:
            return
        perms = []
        for a in auts[1:]:
            perm = {}
            ok = True
            for key, idx in self.spindex.items():
                P = self.splist[idx]
                img = FracIdeal.from_gens(self.K, [self.K.coerce(P.p), a(P.second_generator)])
                tgt = None
                for Q in factor_rational_prime(self.K, P.p):
                    if Q.cols == img.cols:
                        tgt = self.spindex[_pkey(Q)]
                        break
                if tgt is None:
                    ok = False
                    break
                perm[idx] = tgt
            if ok:
                perms.append((a, perm))
        base = list(zip([list(r) for r in self.relations], list(self.witnesses)))
        for a, perm in perms:
            for vec, wit in base:
                nv = [0] * len(self.splist)
                for i, e in enumerate(vec):
                    if e:
                        nv[perm[i]] = e
                img = a(FieldElem(self.K, list(wit)))
                self._add_relation(nv, tuple(img.int_coords()))

    def _matrix_snf(self):
        if self._snf is None:
            cols = len(self.splist)
            rows = [r + [0] * (cols - len(r)) for r in self.relations]
            m = IntMatrix.from_rows(rows) if rows else IntMatrix.zero(0, cols)
            inv, u, v = snf_with_transforms(m)
            self._snf = (inv, u, v, m)
        return self._snf

    def _candidate_invariants(self):
        inv, _u, _v, _m = self._matrix_snf()
        if len(inv) < len(self.splist):
            return None
        return sorted(d for d in inv if d > 1)

    # ------------------------------------------------------------ public: Cl

    def class_group(self) -> ClassGroupData:
        if self._class_data is not None:
            return self._class_data
        self._build_working_base()
        H = 2
        stable = 0
        last = None
        rounds = 0
        while True:
            rounds += 1
            self._collect_round(H)
            cand = self._candidate_invariants()
            if cand is not None and cand == last:
                stable += 1
            else:
                stable = 0
            last = cand
            if cand is not None and stable >= 1 and rounds >= 2:
                break
            H += 1
            if rounds > 12:
                raise CertificationFailure("relation collection failed to stabilize")
        self._symmetrize()
        self._minkowski_sweep()
        self._two_torsion_probe()
        self._finalize()
        return self._class_data

    def _prime_witness(self, P: PrimeIdealData, effort=3) -> bool:
        qs = [q for q in self._rationals if q <= self.b0]
        basis0 = self._reduced_ideal_basis(P)
        for H in range(1, effort + 1):
            coords = self._box_coords(H, basis0)
            norms = self._norm_eval_batch(coords)
            pn = int(P.norm())
            if norms.dtype == object:
                quot = np.array([abs(int(x)) // pn if int(x) % pn == 0 and x != 0 else 0
                                 for x in norms.tolist()], dtype=object)
                nz = np.array([bool(x) for x in quot.tolist()], dtype=bool)
            else:
                nz = (norms % pn == 0) & (norms != 0)
                quot = np.where(nz, np.abs(norms) // pn, 0)
            mask = self._smooth_mask(quot, qs) & nz
            for row in coords[mask].tolist():
                v = [int(x) for x in row]
                out = self._valuation_vector(v, extra=P)
                if out is None:
                    continue
                vec, pval = out
                if pval != 1:
                    continue
                self.fb_dlog[_pkey(P)] = [-e for e in vec]
                return True
        return False

    def _reduced_ideal_basis(self, ideal: FracIdeal) -> list[list[int]]:
        emb = self.embedding_matrix()
        n = self.n
        cols = [[sum(emb[i][k] * ideal.cols[j][k] for k in range(n)) for i in range(n)]
                for j in range(n)]
        scale = 10 ** 9
        mat = [[int(c * scale) for c in col] for col in cols]
        _red, tr = lll_reduce(mat)
        return [[sum(tr[a][b] * ideal.cols[b][k] for b in range(n)) for k in range(n)]
                for a in range(n)]

    def _minkowski_sweep(self):
        for i, P in enumerate(self.splist):
            vec = [0] * len(self.splist)
            vec[i] = 1
            self.fb_dlog[_pkey(P)] = vec
        for q in self._rationals:
            if q <= self.b0:
                continue
            prs = [P for P in factor_rational_prime(self.K, q) if P.norm() <= self.mb]
            for P in prs:
                if _pkey(P) in self.fb_dlog:
                    continue
                if not self._prime_witness(P) and not self._prime_witness(P, effort=6):
                    raise CertificationFailure(
                        f"no witness expressing the prime of norm {int(P.norm())} over {q}")

    def _two_torsion_probe(self):
        for _guard in range(6):
            inv, u, v, m = self._matrix_snf()
            cols = len(self.splist)
            if len(inv) < cols:
                return
            nontriv = [(i, d) for i, d in enumerate(inv) if d > 1 and d % 2 == 0]
            if not nontriv:
                return
            vinv = _int_matrix_inverse(v)
            targets = []
            for combo in itertools.product((0, 1), repeat=len(nontriv)):
                if not any(combo):
                    continue
                vec = [0] * cols
                for (i, d), c in zip(nontriv, combo):
                    if c:
                        for j in range(cols):
                            vec[j] += (d // 2) * vinv[i][j]
                targets.append(self._reduce_exponents(vec))
            changed = False
            for vec in targets:
                if self._targeted_probe(vec):
                    changed = True
            if not changed:
                return

    def _reduce_exponents(self, vec):
        """Shrink an exponent vector modulo the relation lattice (size
        control only; the class is unchanged)."""
        inv, u, v, m = self._matrix_snf()
        rows = [m.row(i) for i in range(m.rows)]
        out = list(vec)
        for _pass in range(3):
            for r in rows:
                nr = sum(x * x for x in r)
                if nr == 0:
                    continue
                dot = sum(a * b for a, b in zip(out, r))
                q = round(dot / nr)
                if q:
                    out = [a - q * b for a, b in zip(out, r)]
        return out

    def _targeted_probe(self, vec) -> bool:
        """Hunt for smooth elements in the ideal prod P^vec; every find is a
        new relation.  Returns whether the candidate group shrank."""
        K = self.K
        ideal = FracIdeal.one(K)
        for i, e in enumerate(vec):
            if e > 0:
                ideal = ideal * (self.splist[i] ** e)
            elif e < 0:
                ideal = ideal * (self.splist[i] ** (-e))  # class of inverse differs by principal...
        ideal = FracIdeal(K, ideal.cols, 1)
        before = self._candidate_invariants()
        basis = self._reduced_ideal_basis(ideal)
        qs = [q for q in self._rationals if q <= self.b0]
        added = 0
        for H in (1, 2):
            coords = self._box_coords(H, basis)
            norms = self._norm_eval_batch(coords)
            mask = self._smooth_mask(norms, qs)
            for row in coords[mask].tolist():
                v = [int(x) for x in row]
                out = self._valuation_vector(v)
                if out is None:
                    continue
                if any(out[0]):
                    self._add_relation(out[0], tuple(v))
                    added += 1
            if added >= 6:
                break
        after = self._candidate_invariants()
        return added > 0 and after != before

    def _finalize(self):
        inv, u, v, m = self._matrix_snf()
        cols = len(self.splist)
        if len(inv) < cols:
            raise CertificationFailure("relation lattice is not of finite index")
        nontrivial = sorted([(i, d) for i, d in enumerate(inv) if d > 1], key=lambda t: t[1])
        vinv = _int_matrix_inverse(v)
        gens = []
        for i, d in nontrivial:
            gv = self._reduce_exponents(vinv[i])
            ideal = FracIdeal.one(self.K)
            for j, e in enumerate(gv):
                if e:
                    ideal = ideal * (self.splist[j] ** int(e))
            gens.append(FracIdeal(self.K, ideal.cols, 1))
        invariants = [d for _i, d in nontrivial]
        self._cg_nontrivial = nontrivial
        self._cg_v = v
        self._class_data = ClassGroupData(self.K, invariants, gens, self)

    # ----------------------------------------------------------------- dlog

    def dlog(self, ideal: FracIdeal):
        self.class_group()
        vec = self._ideal_vector(ideal)
        inv, u, v, m = self._matrix_snf()
        out = []
        for i, d in self._cg_nontrivial:
            acc = sum(v[j, i] * vec[j] for j in range(len(vec)))
            out.append(acc % d)
        return out

    def _ideal_vector(self, ideal: FracIdeal):
        """Vector over splist with the same class as the (fractional) ideal."""
        K = self.K
        vec = [0] * len(self.splist)
        num = FracIdeal(K, ideal.cols, 1)
        if ideal.den != 1:
            for q in sorted(factorint(ideal.den)):
                for P in factor_rational_prime(K, q):
                    val = P.e * _val_of_int(ideal.den, q)
                    dv = self._prime_dlog(P)
                    for j in range(len(vec)):
                        vec[j] -= dv[j] * val
        nrm = int(num.norm())
        for q in sorted(factorint(nrm)):
            for P in factor_rational_prime(K, q):
                val = P.valuation_ideal(num)
                if val:
                    dv = self._prime_dlog(P)
                    for j in range(len(vec)):
                        vec[j] += dv[j] * val
        return vec

    def _prime_dlog(self, P: PrimeIdealData):
        dv = self.fb_dlog.get(_pkey(P))
        if dv is None:
            if not self._prime_witness(P, effort=4) and not self._prime_witness(P, effort=8):
                raise CertificationFailure(f"cannot express prime of norm {int(P.norm())}")
            dv = self.fb_dlog[_pkey(P)]
        return dv

    # ----------------------------------------------------------------- units

    def _logvec(self, wit: tuple, prec_digits=40):
        key = (wit, prec_digits)
        if key not in self._logv_cache:
            x = FieldElem(self.K, list(wit))
            vals = _embedding_interval_logs(x, prec_digits)
            self._logv_cache[key] = vals
        return self._logv_cache[key]

    def unit_group(self, certify="2sat") -> UnitGroupData:
        want_level = certify
        if self._unit_data is not None and (self._unit_sat_level == "full" or
                                            self._unit_sat_level == want_level):
            return self._unit_data
        self.class_group()
        inv, u, v, m = self._matrix_snf()
        ker = kernel_right(m.transpose())
        cands = []
        with mp.workprec(200):
            logw = [self._logvec(w) for w in self.witnesses]
            for c in ker:
                lv = [mpf(0)] * self.rank if self.rank else []
                lv = [sum((mpf(ci) * logw[i][j] for i, ci in enumerate(c) if ci), mpf(0))
                      for j in range(self.n)]
                cands.append((lv, {i: ci for i, ci in enumerate(c) if ci}))
            basis = _log_lattice_basis(cands, self.rank)
            units = []
            for lv, fact in basis:
                el = self._expand_factored(fact, logw)
                units.append(el)
        units = self._two_saturate(units)
        bound = None
        if certify == "full":
            units, bound = self._full_saturate(units)
        reg = _regulator_interval(units)
        if reg[0] <= 0:
            raise CertificationFailure("regulator interval includes zero")
        self._unit_data = UnitGroupData(self.K, units, reg, bound)
        self._unit_sat_level = certify
        return self._unit_data

    def _expand_factored(self, fact: dict, logw) -> FieldElem:
        """Expand prod witnesses^e with greedy log balancing to keep the
        intermediate coordinates bounded."""
        K = self.K
        parts = []
        for i, e in fact.items():
            x = FieldElem(K, list(self.witnesses[i]))
            lx = logw[i]
            if e < 0:
                x = x.inverse()
                lx = [-t for t in lx]
                e = -e
            for _ in range(e):
                parts.append((x, lx))
        out = K.one
        cur = [mpf(0)] * self.n
        remaining = list(parts)
        while remaining:
            best = None
            bestnorm = None
            for idx, (x, lx) in enumerate(remaining):
                nn = float(sum((a + b) ** 2 for a, b in zip(cur, lx)))
                if bestnorm is None or nn < bestnorm:
                    bestnorm = nn
                    best = idx
            x, lx = remaining.pop(best)
            out = out * x
            cur = [a + b for a, b in zip(cur, lx)]
        return out

    def _two_saturate(self, units):
        K = self.K
        screens = self.screens()
        guard = 0
        while guard < 40:
            guard += 1
            r = len(units)
            replaced = False
            for mask in range(1, 2 ** (r + 1)):
                cand = K.one if not (mask & 1) else K.coerce(-1)
                for i in range(r):
                    if mask & (2 << i):
                        cand = cand * units[i]
                if (cand - K.one).is_zero or (cand + K.one).is_zero:
                    continue
                w = sqrt_in_field(cand, screens)
                if w is not None:
                    hit = next(i for i in range(r) if mask & (2 << i))
                    units[hit] = w
                    replaced = True
                    break
            if not replaced:
                return units
        raise CertificationFailure("2-saturation did not stabilize")

    def _full_saturate(self, units):
        """Odd-prime saturation up to the bound implied by a certified
        regulator lower bound; returns (units, bound)."""
        K = self.K
        lam = self._lambda1_certified()
        r = self.rank
        gamma = {1: 1.0, 2: 2 / math.sqrt(3), 3: 2 ** (1 / 3), 4: math.sqrt(2)}[max(r, 1)]
        rmin = (lam * lam / gamma) ** (r / 2)
        reg = _regulator_interval(units)
        bound = int(float(reg[1]) / rmin) + 1
        if bound > 500:
            raise CertificationFailure(f"saturation bound {bound} too large to certify")
        ell = 3
        while ell <= bound:
            units = self._ell_saturate(units, ell)
            ell = next_prime(ell)
        return units, bound

    def _ell_saturate(self, units, ell):
        K = self.K
        r = len(units)
        # witness primes q = 1 mod ell with a degree-one prime of K
        wits = []
        q = 2 * ell
        while len(wits) < 48:
            q = next_prime(q)
            if q % ell != 1 or K.index % q == 0:
                continue
            roots = gf_roots(list(K.f.coeffs), q)
            if roots:
                wits.append((q, roots[0]))
        vecs = [v for v in itertools.product(range(ell), repeat=r) if any(v)]
        seen = set()
        for v in vecs:
            lead = next(x for x in v if x)
            norm_v = tuple((x * pow(lead, -1, ell)) % ell for x in v)
            if norm_v in seen:
                continue
            seen.add(norm_v)
            cand = K.one
            for i, e in enumerate(norm_v):
                if e:
                    cand = cand * units[i] ** int(e)
            is_power = True
            for q, root in wits:
                val = _eval_mod(cand, root, q)
                if val is None or val == 0:
                    continue
                if pow(val, (q - 1) // ell, q) != 1:
                    is_power = False
                    break
            if is_power:
                roots_l = roots_in_field(K, [K.zero - cand] + [K.zero] * (ell - 1) + [K.one])
                real = [w for w in roots_l if (w ** ell - cand).is_zero]
                if not real:
                    raise CertificationFailure(f"{ell}-th power witness tests inconclusive")
                hit = next(i for i, e in enumerate(norm_v) if e)
                units[hit] = real[0]
                return self._ell_saturate(units, ell)
        return units

    def _lambda1_certified(self) -> float:
        """Certified lower bound for the shortest log vector of any unit,
        through exhaustive enumeration of a Minkowski box."""
        K = self.K
        emb = self.embedding_matrix()
        rb = K.reduced_basis()
        n = self.n
        embr = [[sum(emb[i][k] * rb[j][k] for k in range(n)) for j in range(n)] for i in range(n)]
        inv = np.linalg.inv(np.array(embr, dtype=float))
        v = 0.8
        best = 0.0
        while v <= 3.2:
            boxbound = [sum(abs(x) for x in inv[j]) * math.exp(v) * 1.0001 for j in range(n)]
            count = 1
            for b in boxbound:
                count *= 2 * int(b) + 1
            if count > 3_000_000:
                break
            ranges = [np.arange(-int(b), int(b) + 1) for b in boxbound]
            mesh = np.meshgrid(*ranges, indexing="ij")
            flat = np.stack([m.ravel() for m in mesh], axis=1)
            coords = flat @ np.array(rb, dtype=np.int64)
            embs = coords.astype(float) @ np.array(emb, dtype=float).T
            inside = np.all(np.abs(embs) <= math.exp(v) * (1 + 1e-9), axis=1)
            cand = coords[inside]
            norms = self._norm_eval_batch(cand)
            units_mask = np.abs(norms) == 1
            bad = False
            for row in cand[units_mask].tolist():
                vv = [int(x) for x in row]
                if vv[0] in (1, -1) and not any(vv[1:]):
                    continue
                bad = True
            if bad:
                break
            best = v
            v += 0.4
        if best == 0.0:
            raise CertificationFailure("lambda1 box certification failed at the smallest box")
        return best

    # ----------------------------------------------------------- principality

    def is_principal(self, ideal: FracIdeal):
        """Generator when the class vanishes, else None; exact either way."""
        cg = self.class_group()
        vec = self._ideal_vector(ideal)
        inv, u, v, m = self._matrix_snf()
        for i, d in enumerate(inv):
            acc = sum(v[j, i] * vec[j] for j in range(len(vec)))
            if acc % d:
                return None
        # solve z M = vec
        y = [sum(v[j, i] * vec[j] for j in range(len(vec))) for i in range(m.cols)]
        w = [y[i] // inv[i] for i in range(len(inv))]
        z = [sum(w[i] * u[i, t] for i in range(len(w))) for t in range(m.rows)]
        # generator of prod splist^vec = prod witnesses^z
        fact = {i: e for i, e in enumerate(z) if e}
        with mp.workprec(200):
            logw = [self._logvec(wit) for wit in self.witnesses]
            gen_smooth = self._expand_factored(fact, logw)
        # ideal = num/den: vec corresponds to class expression; rebuild exact
        # generator: the product above generates prod P^vec; adjust by the
        # rational parts so that (g) = ideal exactly.
        g = self._adjust_generator(ideal, vec, gen_smooth)
        if g is None:
            return None
        g = self.reduce_mod_units(g)
        if not ideal.contains(g):
            raise CertificationFailure("principal generator fails membership")
        if abs(g.norm()) != abs(ideal.norm()):
            raise CertificationFailure("principal generator has wrong norm")
        return g

    def _adjust_generator(self, ideal: FracIdeal, vec, gen_smooth: FieldElem):
        """(gen_smooth) = prod P^vec; multiply by the rational factor making
        the ideal match exactly."""
        target = ideal
        have = FracIdeal.from_elem(gen_smooth)
        quot = target * have.inverse()
        # quot must be (r) for a rational r: it is a power-product of primes
        # with trivial class contributions; detect rational principality
        nq = quot.norm()
        r = Fraction(1)
        num = nq.numerator
        den = nq.denominator
        nn = self.n
        rn = _nth_root_rational(num, nn)
        rd = _nth_root_rational(den, nn)
        if rn is None or rd is None:
            # fall back: quot generated by a rational times unit; try contains
            return None
        r = Fraction(rn, rd)
        cand = gen_smooth * r
        have2 = FracIdeal.from_elem(cand)
        if have2 == target:
            return cand
        cand2 = gen_smooth * Fraction(rn, rd) * -1
        if FracIdeal.from_elem(cand2) == target:
            return cand2
        return None

    def reduce_mod_units(self, x: FieldElem) -> FieldElem:
        """Reduce modulo the unit lattice to minimize the maximum absolute
        logarithmic embedding (Babai rounding, deterministic)."""
        units = self.unit_group().fundamental_units
        if not units:
            if x.signs()[0] < 0:
                return -x
            return x
        with mp.workprec(200):
            lx = _embedding_interval_logs(x, 40)
            lu = [_embedding_interval_logs(uu, 40) for uu in units]
            r = len(units)
            a = np.array([[float(l[j]) for j in range(self.n)] for l in lu], dtype=float)
            b = np.array([float(t) for t in lx], dtype=float)
            sol, *_ = np.linalg.lstsq(a.T, b, rcond=None)
        out = x
        for uu, c in zip(units, sol):
            k = int(round(float(c)))
            if k:
                out = out * (uu ** (-k))
        if out.signs()[0] < 0:
            out = -out
        return out

    # ----------------------------------------------------------------- narrow

    def narrow(self) -> NarrowData:
        if self._narrow_data is not None:
            return self._narrow_data
        self.class_group()
        units = self.unit_group().fundamental_units
        K = self.K
        r1 = K.signature[0]
        cols = len(self.splist)
        rows = []
        for vec, wit in zip(self.relations, self.witnesses):
            x = FieldElem(K, list(wit))
            signs = x.signs()
            srow = [(1 - s) // 2 for s in signs]
            rows.append(list(vec) + srow)
        minus = [0] * cols + [1] * r1
        rows.append(minus)
        sign_matrix = []
        for uu in units:
            signs = uu.signs()
            srow = [(1 - s) // 2 for s in signs]
            sign_matrix.append(srow)
            rows.append([0] * cols + srow)
        for j in range(r1):
            rows.append([0] * cols + [2 if i == j else 0 for i in range(r1)])
        m = IntMatrix.from_rows(rows)
        inv, _u, _v = snf_with_transforms(m)
        if len(inv) < cols + r1:
            raise CertificationFailure("narrow presentation not finite")
        narrow_invariants = sorted(d for d in inv if d > 1)
        two = []
        for d in narrow_invariants:
            t = 1
            while d % 2 == 0:
                d //= 2
                t *= 2
            if t > 1:
                two.append(t)
        two.sort()
        self._narrow_data = NarrowData(K, sign_matrix, two, narrow_invariants)
        return self._narrow_data


# ---------------------------------------------------------------------------
# helpers
# ---------------------------------------------------------------------------


def _val_of_int(n: int, q: int) -> int:
    v = 0
    while n % q == 0:
        n //= q
        v += 1
    return v


def _int_matrix_inverse(v: IntMatrix):
    """Rows of the inverse of a unimodular integer matrix."""
    n = v.rows
    aug = [[Fraction(v[i, j]) for j in range(n)]
           + [Fraction(1 if k == i else 0) for k in range(n)] for i in range(n)]
    for col in range(n):
        piv = next(r for r in range(col, n) if aug[r][col] != 0)
        aug[col], aug[piv] = aug[piv], aug[col]
        pv = aug[col][col]
        aug[col] = [x / pv for x in aug[col]]
        for r in range(n):
            if r != col and aug[r][col] != 0:
                f = aug[r][col]
                aug[r] = [x - f * y for x, y in zip(aug[r], aug[col])]
    out = []
    for i in range(n):
        row = []
        for j in range(n):
            x = aug[i][n + j]
            assert x.denominator == 1
            row.append(int(x))
        out.append(row)
    return out


def _nth_root_rational(m: int, n: int):
    if m == 0:
        return 0
    if m < 0:
        return None
    r = round(m ** (1.0 / n))
    for c in (r - 1, r, r + 1):
        if c >= 0 and c ** n == m:
            return c
    return None


def _eval_mod(x: FieldElem, root: int, q: int):
    t = x.theta_poly()
    den = 1
    for c in t:
        den = den * c.denominator // math.gcd(den, c.denominator)
    if den % q == 0:
        return None
    acc = 0
    for c in reversed(t):
        acc = (acc * root + int(c * den)) % q
    return acc * pow(den, -1, q) % q


def _embedding_interval_logs(x: FieldElem, digits: int):
    """log|sigma_j(x)| as mpf values with certified adequate precision (the
    underlying interval is refined until its relative width is tiny)."""
    K = x.parent
    rr = K.real_roots
    t = x.theta_poly()
    den = 1
    for c in t:
        den = den * c.denominator // math.gcd(den, c.denominator)
    tz = [int(c * den) for c in t]
    out = []
    for i in range(rr.count):
        width = Fraction(1, 10 ** digits)
        for _attempt in range(60):
            lo, hi = rr.refine(i, width)
            vlo, vhi = _interval_eval(tz, lo, hi)
            if vlo > 0 or vhi < 0:
                mlo = min(abs(vlo), abs(vhi))
                mhi = max(abs(vlo), abs(vhi))
                if mhi < (1 + Fraction(1, 10 ** (digits // 2))) * mlo:
                    out.append((mp.log(mpf(mlo.numerator) / mpf(mlo.denominator))
                                + mp.log(mpf(mhi.numerator) / mpf(mhi.denominator))) / 2
                               - mp.log(mpf(den)))
                    break
            width /= 10 ** digits
        else:
            raise CertificationFailure("embedding log did not converge")
    return out


def _log_lattice_basis(cands, rank):
    """Short basis of the log lattice generated by candidate vectors, each a
    (log vector, factored form) pair; generalized Gauss reduction."""
    if rank == 0:
        return []
    work = []
    for lv, fact in cands:
        nn = float(sum(t * t for t in lv))
        if nn > 1e-18:
            work.append([lv, fact, nn])
    work.sort(key=lambda t: t[2])
    basis: list = []
    eps = 1e-12

    def reduce_against(vec, fact):
        changed = True
        while changed:
            changed = False
            for b in basis:
                dot = float(sum(a * c for a, c in zip(vec, b[0])))
                q = round(dot / b[2]) if b[2] > 0 else 0
                if q:
                    vec = [a - q * c for a, c in zip(vec, b[0])]
                    fact = _fact_sub(fact, b[1], q)
                    changed = True
        return vec, fact

    queue = list(work)
    guard = 0
    while queue and guard < 10000:
        guard += 1
        lv, fact, _nn = queue.pop(0)
        lv, fact = reduce_against(lv, fact)
        nn = float(sum(t * t for t in lv))
        if nn < eps:
            continue
        if len(basis) < rank:
            basis.append([lv, fact, nn])
            basis.sort(key=lambda t: t[2])
            # re-reduce existing basis
            if len(basis) > 1:
                items = [(b[0], b[1]) for b in basis]
                basis = []
                for v2, f2 in items:
                    v2, f2 = reduce_against(v2, f2)
                    n2 = float(sum(t * t for t in v2))
                    if n2 > eps:
                        basis.append([v2, f2, n2])
                        basis.sort(key=lambda t: t[2])
        else:
            # replace the longest basis vector if strictly shorter
            if nn < basis[-1][2] * (1 - 1e-9):
                queue.append(basis.pop())
                basis.append([lv, fact, nn])
                basis.sort(key=lambda t: t[2])
            # else drop (it reduced to something not shorter)
    if len(basis) < rank:
        raise CertificationFailure("unit rank deficient: relation kernel too small")
    return [(b[0], b[1]) for b in basis]


def _fact_sub(f1: dict, f2: dict, q: int) -> dict:
    out = dict(f1)
    for k, v in f2.items():
        out[k] = out.get(k, 0) - q * v
        if not out[k]:
            del out[k]
    return out


def _mpf_to_fraction(x) -> Fraction:
    sign, man, exp, _bc = x._mpf_
    if man == 0:
        return Fraction(0)
    val = Fraction(man)
    if exp >= 0:
        val *= 2 ** exp
    else:
        val /= 2 ** (-exp)
    return -val if sign else val


def _regulator_interval(units):
    """Certified enclosure of |det(log matrix)| using interval endpoints."""
    if not units:
        return (Fraction(1), Fraction(1))
    r = len(units)
    from mpmath import iv
    iv.prec = 220
    rows = []
    for uu in units:
        ivs = _embedding_intervals(uu, 50)
        row = [iv.log(abs(x)) for x in ivs[:r]]
        rows.append(row)
    det = abs(_iv_det(rows))
    return (_mpf_to_fraction(mpf(det.a)), _mpf_to_fraction(mpf(det.b)))


def _embedding_intervals(x: FieldElem, digits: int):
    from mpmath import iv
    K = x.parent
    rr = K.real_roots
    t = x.theta_poly()
    den = 1
    for c in t:
        den = den * c.denominator // math.gcd(den, c.denominator)
    tz = [int(c * den) for c in t]
    out = []
    for i in range(rr.count):
        lo, hi = rr.refine(i, Fraction(1, 10 ** digits))
        vlo, vhi = _interval_eval(tz, lo, hi)
        a = iv.mpf(vlo.numerator) / iv.mpf(vlo.denominator)
        b = iv.mpf(vhi.numerator) / iv.mpf(vhi.denominator)
        val = iv.mpf([a.a, b.b]) / iv.mpf(den)
        out.append(val)
    return out


def _iv_det(rows):
    n = len(rows)
    if n == 1:
        return rows[0][0]
    out = None
    for j in range(n):
        minor = [r[:j] + r[j + 1:] for r in rows[1:]]
        term = rows[0][j] * _iv_det(minor)
        if j % 2:
            term = -term
        out = term if out is None else out + term
    return out


# ---------------------------------------------------------------------------
# spec-level operations
# ---------------------------------------------------------------------------

_FIELD_DATA_CACHE: dict = {}


def field_data(K: NumberField) -> FieldData:
    key = id(K)
    if key not in _FIELD_DATA_CACHE:
        _FIELD_DATA_CACHE[key] = FieldData(K)
    return _FIELD_DATA_CACHE[key]


def class_group(K: NumberField) -> ClassGroupData:
    return field_data(K).class_group()


def unit_group(K: NumberField, certify: str = "2sat") -> UnitGroupData:
    return field_data(K).unit_group(certify)


def is_principal(ideal: FracIdeal):
    return field_data(ideal.parent).is_principal(ideal)


def narrow_two_part(K: NumberField) -> NarrowData:
    return field_data(K).narrow()
