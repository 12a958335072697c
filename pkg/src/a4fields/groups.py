"""Small finite groups with explicit multiplication tables, the central
covers SL2(F3) -> A4 and SL2(F5) -> A5, conjugacy-class unions, the
commutator pairing on commuting pairs, and the reduced multiplier quotient.

Groups here have order at most 120, so everything is verified exhaustively
at construction time: identity, inverses, and surjectivity/centrality of the
shipped covers.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

from .errors import NonCommuting


def _perm_mul(a: tuple, b: tuple) -> tuple:
    """(a*b)(x) = a(b(x)): right-to-left composition."""
    return tuple(a[b[i]] for i in range(len(a)))


def _mat_mul(a, b, p):
    return ((a[0] * b[0] + a[1] * b[2]) % p, (a[0] * b[1] + a[1] * b[3]) % p,
            (a[2] * b[0] + a[3] * b[2]) % p, (a[2] * b[1] + a[3] * b[3]) % p)


def cycle_type(perm: tuple) -> tuple:
    seen = [False] * len(perm)
    out = []
    for i in range(len(perm)):
        if seen[i]:
            continue
        ln = 0
        j = i
        while not seen[j]:
            seen[j] = True
            j = perm[j]
            ln += 1
        out.append(ln)
    return tuple(sorted(out, reverse=True))


class FiniteGroup:
    """Finite group on canonical element labels with a full multiplication
    table.  Element handles are integer indices into ``labels``."""

    def __init__(self, labels, mul, name=""):
        labels = sorted(labels)
        self.labels = tuple(labels)
        self.name = name
        n = len(labels)
        index = {e: i for i, e in enumerate(labels)}
        self.table = [[index[mul(labels[i], labels[j])] for j in range(n)] for i in range(n)]
        self.identity = None
        for i in range(n):
            if all(self.table[i][j] == j and self.table[j][i] == j for j in range(n)):
                self.identity = i
                break
        if self.identity is None:
            raise ValueError("no identity element")
        self.inverse = [None] * n
        for i in range(n):
            for j in range(n):
                if self.table[i][j] == self.identity:
                    if self.table[j][i] != self.identity:
                        raise ValueError("one-sided inverse")
                    self.inverse[i] = j
                    break
            if self.inverse[i] is None:
                raise ValueError("missing inverse")

    @property
    def order(self) -> int:
        return len(self.labels)

    def op(self, i: int, j: int) -> int:
        return self.table[i][j]

    def inv(self, i: int) -> int:
        return self.inverse[i]

    def element_order(self, i: int) -> int:
        k, x = 1, i
        while x != self.identity:
            x = self.op(x, i)
            k += 1
        return k

    def conj(self, g: int, x: int) -> int:
        return self.op(self.op(g, x), self.inv(g))

    def commutator(self, x: int, y: int) -> int:
        return self.op(self.op(x, y), self.op(self.inv(x), self.inv(y)))

    def conjugacy_class(self, x: int) -> frozenset:
        return frozenset(self.conj(g, x) for g in range(self.order))

    def center(self) -> frozenset:
        return frozenset(x for x in range(self.order)
                         if all(self.op(x, g) == self.op(g, x) for g in range(self.order)))

    def commutator_subgroup(self) -> frozenset:
        gens = {self.commutator(x, y) for x in range(self.order) for y in range(self.order)}
        return self.subgroup_generated(gens)

    def subgroup_generated(self, gens) -> frozenset:
        cur = {self.identity}
        frontier = set(gens) | {self.identity}
        while frontier:
            nxt = set()
            for a in frontier:
                for b in list(cur) + list(gens):
                    for c in (self.op(a, b), self.op(b, a)):
                        if c not in cur:
                            nxt.add(c)
                cur.add(a)
            cur |= nxt
            frontier = nxt
        return frozenset(cur)

    def elements_of_order(self, k: int) -> frozenset:
        return frozenset(i for i in range(self.order) if self.element_order(i) == k)

    def centralizer(self, x: int) -> frozenset:
        return frozenset(g for g in range(self.order) if self.op(g, x) == self.op(x, g))

    def cosets(self, subgroup: frozenset) -> list[frozenset]:
        left = []
        seen = set()
        for g in range(self.order):
            if g in seen:
                continue
            cs = frozenset(self.op(g, h) for h in subgroup)
            left.append(cs)
            seen |= cs
        return left

    def coset_action(self, subgroup: frozenset) -> list[tuple]:
        """Left-translation permutations of the left cosets of ``subgroup``,
        one per group element, cosets in first-appearance order."""
        cs = self.cosets(subgroup)
        where = {}
        for idx, c in enumerate(cs):
            for e in c:
                where[e] = idx
        perms = []
        for g in range(self.order):
            perm = [where[self.op(g, next(iter(c)))] for c in cs]
            perms.append(tuple(perm))
        return perms

    def is_abelian(self) -> bool:
        return len(self.center()) == self.order

    def quotient(self, normal: frozenset):
        """Quotient by a verified normal subgroup: returns (group, proj) with
        proj mapping element index -> quotient element index."""
        for g in range(self.order):
            for h in normal:
                if self.conj(g, h) not in normal:
                    raise ValueError("subgroup is not normal")
        cs = self.cosets(normal)
        labels = [tuple(sorted(c)) for c in cs]
        lookup = {}
        for lab, c in zip(labels, cs):
            for e in c:
                lookup[e] = lab

        def mul(a, b):
            return lookup[self.op(a[0], b[0])]

        q = FiniteGroup(labels, mul, name=f"{self.name}/N")
        proj = [q.labels.index(lookup[g]) for g in range(self.order)]
        return q, proj


# ---------------------------------------------------------------------------
# constructors
# ---------------------------------------------------------------------------


def cyclic_group(n: int) -> FiniteGroup:
    return FiniteGroup(list(range(n)), lambda a, b: (a + b) % n, name=f"C{n}")


def klein_four() -> FiniteGroup:
    els = [(0, 0), (0, 1), (1, 0), (1, 1)]
    return FiniteGroup(els, lambda a, b: ((a[0] + b[0]) % 2, (a[1] + b[1]) % 2), name="C2xC2")


def _perm_group_from(gens, n, name) -> FiniteGroup:
    idn = tuple(range(n))
    cur = {idn}
    frontier = [idn]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = _perm_mul(a, g)
                if c not in cur:
                    cur.add(c)
                    nxt.append(c)
        frontier = nxt
    return FiniteGroup(sorted(cur), _perm_mul, name=name)


@lru_cache(maxsize=None)
def alternating(n: int) -> FiniteGroup:
    els = []
    for p in itertools.permutations(range(n)):
        inv = sum(1 for i in range(n) for j in range(i + 1, n) if p[i] > p[j])
        if inv % 2 == 0:
            els.append(p)
    return FiniteGroup(els, _perm_mul, name=f"A{n}")


@lru_cache(maxsize=None)
def dihedral_8() -> FiniteGroup:
    r = (1, 2, 3, 0)
    s = (0, 3, 2, 1)
    return _perm_group_from([r, s], 4, "D8")


@lru_cache(maxsize=None)
def quaternion_8() -> FiniteGroup:
    i = (0, 2, 1, 0)  # placeholder replaced below
    p = 3
    mi = (0, 2, 1, 0)
    i_mat = (0, p - 1, 1, 0)
    j_mat = (1, 1, 1, p - 1)
    els = {(1, 0, 0, 1)}
    frontier = [(1, 0, 0, 1)]
    gens = [i_mat, j_mat]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = _mat_mul(a, g, p)
                if c not in els:
                    els.add(c)
                    nxt.append(c)
        frontier = nxt
    return FiniteGroup(sorted(els), lambda a, b: _mat_mul(a, b, 3), name="Q8")


@lru_cache(maxsize=None)
def sl2(p: int) -> FiniteGroup:
    gens = [(1, 1, 0, 1), (0, p - 1, 1, 0)]
    els = {(1, 0, 0, 1)}
    frontier = [(1, 0, 0, 1)]
    while frontier:
        nxt = []
        for a in frontier:
            for g in gens:
                c = _mat_mul(a, g, p)
                if c not in els:
                    els.add(c)
                    nxt.append(c)
        frontier = nxt
    g = FiniteGroup(sorted(els), lambda a, b: _mat_mul(a, b, p), name=f"SL2(F{p})")
    expect = (p * p - 1) * p
    assert g.order == expect, (g.order, expect)
    return g


def _p1_action(p: int):
    """Permutation action of SL2(Fp) matrix (a,b,c,d) on the projective line
    {0, .., p-1, inf=p} by Moebius maps x -> (a x + b)/(c x + d)."""

    def act(mat):
        a, b, c, d = mat
        perm = []
        for x in range(p + 1):
            if x < p:
                num, den = (a * x + b) % p, (c * x + d) % p
            else:
                num, den = a % p, c % p
            if den == 0:
                perm.append(p)
            else:
                perm.append(num * pow(den, p - 2, p) % p)
        return tuple(perm)

    return act


class ClassUnion:
    """A conjugation-closed subset of a group, typically specified by the
    common order of its elements."""

    def __init__(self, group: FiniteGroup, members):
        self.group = group
        self.members = frozenset(members)
        for x in self.members:
            for g in range(group.order):
                if group.conj(g, x) not in self.members:
                    raise ValueError("not closed under conjugation")

    @staticmethod
    def of_order(group: FiniteGroup, k: int) -> "ClassUnion":
        return ClassUnion(group, group.elements_of_order(k))

    def is_power_closed(self) -> bool:
        for x in self.members:
            o = self.group.element_order(x)
            for n in range(1, o + 1):
                import math
                if math.gcd(n, o) == 1:
                    y = self.group.identity
                    for _ in range(n):
                        y = self.group.op(y, x)
                    if y not in self.members:
                        return False
        return True


class CentralCover:
    """A central extension cover -> base with kernel inside the center; the
    shipped covers additionally satisfy the stem property (kernel inside the
    commutator subgroup) and have kernel of the maximal (multiplier) size."""

    def __init__(self, cover: FiniteGroup, base: FiniteGroup, projection: list[int], name=""):
        self.cover = cover
        self.base = base
        self.projection = projection
        self.name = name
        n = cover.order
        # verify homomorphism + surjectivity
        for i in range(n):
            for j in range(n):
                if projection[cover.op(i, j)] != base.op(projection[i], projection[j]):
                    raise ValueError("projection is not a homomorphism")
        if len(set(projection)) != base.order:
            raise ValueError("projection is not surjective")
        self.kernel = frozenset(i for i in range(n) if projection[i] == base.identity)
        center = cover.center()
        if not self.kernel <= center:
            raise ValueError("kernel is not central")

    def is_stem(self) -> bool:
        return self.kernel <= self.cover.commutator_subgroup()

    def lifts(self, x: int) -> list[int]:
        return [i for i in range(self.cover.order) if self.projection[i] == x]

    def some_lift(self, x: int) -> int:
        return min(self.lifts(x))


@lru_cache(maxsize=None)
def a4_cover() -> CentralCover:
    """SL2(F3) -> A4 through the Moebius action on the 4 points of the
    projective line over F3."""
    cov = sl2(3)
    base = alternating(4)
    act = _p1_action(3)
    proj = []
    for lab in cov.labels:
        perm = act(lab)
        proj.append(base.labels.index(perm))
    return CentralCover(cov, base, proj, name="SL2(F3)->A4")


@lru_cache(maxsize=None)
def a5_cover() -> CentralCover:
    """SL2(F5) -> A5 through left translation on the five cosets of a fixed
    index-5 subgroup (the first order-24 subgroup generated by a pair of
    elements in canonical label order)."""
    cov = sl2(5)
    sub = None
    for i in range(cov.order):
        if cov.element_order(i) != 4:
            continue
        for j in range(cov.order):
            if cov.element_order(j) != 3:
                continue
            h = cov.subgroup_generated([i, j])
            if len(h) == 24:
                sub = h
                break
        if sub:
            break
    assert sub is not None
    perms = cov.coset_action(sub)
    base = alternating(5)
    proj = [base.labels.index(p) for p in perms]
    return CentralCover(cov, base, proj, name="SL2(F5)->A5")


def trivial_cover(g: FiniteGroup) -> CentralCover:
    return CentralCover(g, g, list(range(g.order)), name=f"{g.name} (trivial cover)")


# ---------------------------------------------------------------------------
# operations
# ---------------------------------------------------------------------------


def check_conditions(g: FiniteGroup, c: ClassUnion) -> dict:
    """Exhaustively test: trivial center, c generates G, power closure."""
    return {
        "trivial_center": g.center() == frozenset({g.identity}),
        "generates": g.subgroup_generated(c.members) == frozenset(range(g.order)),
        "power_closed": c.is_power_closed(),
    }


def commutator_pairing(cov: CentralCover, x: int, y: int) -> int:
    """[x~, y~] in the cover for commuting x, y in the base; independent of
    the choice of lifts because the kernel is central."""
    base = cov.base
    if base.op(x, y) != base.op(y, x):
        raise NonCommuting("arguments do not commute in the base group")
    xt = cov.some_lift(x)
    yt = cov.some_lift(y)
    out = cov.cover.commutator(xt, yt)
    if out not in cov.kernel:
        raise AssertionError("pairing left the kernel; cover data corrupt")
    return out


def reduced_schur_multiplier(cov: CentralCover, c: ClassUnion):
    """Q_c, the reduced quotient order, and the reduced cover.

    Q_c is generated by the commutator pairings over all commuting pairs
    (x in c, y in G); the reduced cover is cover/Q_c, in which c lifts
    bijectively to the class union of elements with unchanged order."""
    g = cov.base
    pair_vals = set()
    for x in c.members:
        for y in g.centralizer(x):
            pair_vals.add(commutator_pairing(cov, x, y))
    qc = cov.cover.subgroup_generated(pair_vals)
    if not qc <= cov.kernel:
        raise AssertionError("Q_c escaped the kernel")
    quotient_order = len(cov.kernel) // len(qc)
    red, proj_red = cov.cover.quotient(qc)
    # projection of reduced cover onto the base
    proj_base = [None] * red.order
    for i in range(cov.cover.order):
        proj_base[proj_red[i]] = cov.projection[i]
    reduced = CentralCover(red, g, proj_base, name=f"{cov.name}/Q_c")
    return quotient_order, qc, reduced


def lifted_class_union(cov: CentralCover, c: ClassUnion) -> frozenset:
    """Elements of the cover over c whose order matches their image's order
    (the canonical bijective lift when it exists)."""
    out = set()
    for i in range(cov.cover.order):
        x = cov.projection[i]
        if x in c.members and cov.cover.element_order(i) == cov.base.element_order(x):
            out.add(i)
    return frozenset(out)


def mat_label(a, b, c, d, p) -> tuple:
    return (a % p, b % p, c % p, d % p)
