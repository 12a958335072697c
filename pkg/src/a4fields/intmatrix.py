"""Exact integer matrices: Hermite and Smith normal forms with unimodular
transforms, kernels, determinants and integral LLL reduction.

Everything is arbitrary-precision integer arithmetic; no floating point.
Sizes here are small (relation matrices of a few hundred rows, ideal bases of
rank <= 8), so clarity wins over asymptotics.
"""

from __future__ import annotations

import math
from fractions import Fraction


class IntMatrix:
    """Dense integer matrix, row-major entries."""

    __slots__ = ("rows", "cols", "entries")

    def __init__(self, rows: int, cols: int, entries):
        entries = list(entries)
        if len(entries) != rows * cols:
            raise ValueError("entry count does not match dimensions")
        self.rows = rows
        self.cols = cols
        self.entries = entries

    @staticmethod
    def from_rows(rows_list) -> "IntMatrix":
        rows_list = [list(r) for r in rows_list]
        r = len(rows_list)
        c = len(rows_list[0]) if rows_list else 0
        flat = []
        for row in rows_list:
            if len(row) != c:
                raise ValueError("ragged rows")
            flat.extend(row)
        return IntMatrix(r, c, flat)

    @staticmethod
    def identity(n: int) -> "IntMatrix":
        return IntMatrix(n, n, [1 if i == j else 0 for i in range(n) for j in range(n)])

    @staticmethod
    def zero(r: int, c: int) -> "IntMatrix":
        return IntMatrix(r, c, [0] * (r * c))

    def __getitem__(self, rc):
        i, j = rc
        return self.entries[i * self.cols + j]

    def __setitem__(self, rc, v):
        i, j = rc
        self.entries[i * self.cols + j] = v

    def row(self, i):
        return self.entries[i * self.cols:(i + 1) * self.cols]

    def col(self, j):
        return self.entries[j::self.cols]

    def to_rows(self):
        return [self.row(i) for i in range(self.rows)]

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows,
                         [self[i, j] for j in range(self.cols) for i in range(self.rows)])

    def __mul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("dimension mismatch")
        a, b = self, other
        out = [0] * (a.rows * b.cols)
        brow = [b.row(k) for k in range(b.rows)]
        for i in range(a.rows):
            arow = a.row(i)
            acc = [0] * b.cols
            for k, aik in enumerate(arow):
                if aik:
                    bk = brow[k]
                    for j in range(b.cols):
                        acc[j] += aik * bk[j]
            out[i * b.cols:(i + 1) * b.cols] = acc
        return IntMatrix(a.rows, b.cols, out)

    def mul_vec(self, v):
        if len(v) != self.cols:
            raise ValueError("dimension mismatch")
        return [sum(self[i, j] * v[j] for j in range(self.cols)) for i in range(self.rows)]

    def __eq__(self, other):
        return (isinstance(other, IntMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.entries == other.entries)

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(self.entries)))

    def copy(self) -> "IntMatrix":
        return IntMatrix(self.rows, self.cols, list(self.entries))

    def det(self) -> int:
        return det_bareiss(self)

    def __repr__(self):
        return f"IntMatrix({self.to_rows()!r})"


def det_bareiss(m: IntMatrix) -> int:
    """Fraction-free Gaussian elimination determinant."""
    if m.rows != m.cols:
        raise ValueError("determinant of non-square matrix")
    n = m.rows
    if n == 0:
        return 1
    a = [m.row(i) for i in range(n)]
    sign = 1
    prev = 1
    for k in range(n - 1):
        if a[k][k] == 0:
            for i in range(k + 1, n):
                if a[i][k]:
                    a[k], a[i] = a[i], a[k]
                    sign = -sign
                    break
            else:
                return 0
        for i in range(k + 1, n):
            for j in range(k + 1, n):
                a[i][j] = (a[i][j] * a[k][k] - a[i][k] * a[k][j]) // prev
            a[i][k] = 0
        prev = a[k][k]
    return sign * a[n - 1][n - 1]


# ---------------------------------------------------------------------------
# Hermite normal form (column style): H = M * V, V unimodular.
#
# Convention: transpose of the classical row-echelon HNF.  Scanning columns
# left to right, the first nonzero entry of each nonzero column (its pivot)
# sits at a strictly increasing row index, pivots are positive, entries to
# the left of a pivot within its row are reduced into [0, pivot), and zero
# columns are pushed to the right end.
# ---------------------------------------------------------------------------


def hnf_row(m: IntMatrix, transform: bool = False):
    """Row-style HNF: H = U * M with U unimodular, H in row echelon form,
    pivots positive, entries above pivots reduced into [0, pivot)."""
    a = [m.row(i) for i in range(m.rows)]
    n, c = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(n)] for i in range(n)] if transform else None
    pr = 0
    pivots = []
    for pc in range(c):
        # find a pivot row at or below pr with nonzero entry in column pc
        nz = [i for i in range(pr, n) if a[i][pc]]
        if not nz:
            continue
        # Euclidean reduction of all rows in nz into one
        while len(nz) > 1:
            nz.sort(key=lambda i: abs(a[i][pc]))
            i0 = nz[0]
            for i in nz[1:]:
                q = a[i][pc] // a[i0][pc]
                if q:
                    a[i] = [x - q * y for x, y in zip(a[i], a[i0])]
                    if transform:
                        u[i] = [x - q * y for x, y in zip(u[i], u[i0])]
            nz = [i for i in nz if a[i][pc]]
        i0 = nz[0]
        if i0 != pr:
            a[pr], a[i0] = a[i0], a[pr]
            if transform:
                u[pr], u[i0] = u[i0], u[pr]
        if a[pr][pc] < 0:
            a[pr] = [-x for x in a[pr]]
            if transform:
                u[pr] = [-x for x in u[pr]]
        piv = a[pr][pc]
        for i in range(pr):
            q = a[i][pc] // piv
            if q:
                a[i] = [x - q * y for x, y in zip(a[i], a[pr])]
                if transform:
                    u[i] = [x - q * y for x, y in zip(u[i], u[pr])]
        pivots.append(pc)
        pr += 1
        if pr == n:
            break
    h = IntMatrix.from_rows(a)
    if transform:
        return h, IntMatrix.from_rows(u), pivots
    return h, None, pivots


def hnf_column(m: IntMatrix, transform: bool = False):
    """Column-style HNF (see module convention): returns (H, V) with
    H = M * V; V is None unless transform is requested."""
    ht, ut, _ = hnf_row(m.transpose(), transform)
    h = ht.transpose()
    return (h, ut.transpose() if transform else None)


def column_hnf_lattice(m: IntMatrix) -> IntMatrix:
    """Nonzero columns of the column HNF: a canonical basis of the column
    lattice of m (square upper-triangular iff full row rank)."""
    h, _ = hnf_column(m)
    cols = [h.col(j) for j in range(h.cols) if any(h.col(j))]
    if not cols:
        return IntMatrix.zero(m.rows, 0)
    return IntMatrix(m.rows, len(cols), [cols[j][i] for i in range(m.rows) for j in range(len(cols))])


def kernel_right(m: IntMatrix) -> list[list[int]]:
    """Basis of the saturated right kernel lattice {v : M v = 0}."""
    ht, v, _ = hnf_row(m.transpose(), True)
    # rows of ht that are zero correspond to rows of v spanning the kernel
    out = []
    for i in range(ht.rows):
        if not any(ht.row(i)):
            out.append(v.row(i))
    return out


def snf_with_transforms(m: IntMatrix):
    """Smith normal form: returns (invariants, U, V) with U*M*V diagonal,
    diagonal entries d1 | d2 | ..., nonzero invariants only in the list,
    U and V unimodular."""
    a = [m.row(i) for i in range(m.rows)]
    r, c = m.rows, m.cols
    u = [[1 if i == j else 0 for j in range(r)] for i in range(r)]
    v = [[1 if i == j else 0 for j in range(c)] for i in range(c)]

    def row_op(i, k, q):
        a[i] = [x - q * y for x, y in zip(a[i], a[k])]
        u[i] = [x - q * y for x, y in zip(u[i], u[k])]

    def col_op(j, k, q):
        for row in a:
            row[j] -= q * row[k]
        for row in v:
            row[j] -= q * row[k]

    def row_swap(i, k):
        a[i], a[k] = a[k], a[i]
        u[i], u[k] = u[k], u[i]

    def col_swap(j, k):
        for row in a:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    t = 0
    nmin = min(r, c)
    while t < nmin:
        # find smallest nonzero entry in the remaining block
        best = None
        for i in range(t, r):
            for j in range(t, c):
                if a[i][j] and (best is None or abs(a[i][j]) < abs(a[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            break
        bi, bj = best
        if bi != t:
            row_swap(t, bi)
        if bj != t:
            col_swap(t, bj)
        # clear row and column t
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, r):
                if a[i][t]:
                    q = a[i][t] // a[t][t]
                    row_op(i, t, q)
                    if a[i][t]:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, c):
                if a[t][j]:
                    q = a[t][j] // a[t][t]
                    col_op(j, t, q)
                    if a[t][j]:
                        col_swap(t, j)
                        dirty = True
        # divisibility: a[t][t] must divide all remaining entries
        piv = a[t][t]
        fixed = True
        for i in range(t + 1, r):
            for j in range(t + 1, c):
                if a[i][j] % piv:
                    # fold row i into row t and restart this pivot
                    row_op(t, i, -1)
                    fixed = False
                    break
            if not fixed:
                break
        if fixed:
            if a[t][t] < 0:
                a[t] = [-x for x in a[t]]
                u[t] = [-x for x in u[t]]
            t += 1
    invariants = []
    for i in range(nmin):
        d = a[i][i]
        if d:
            invariants.append(abs(d))
    return invariants, IntMatrix.from_rows(u), IntMatrix.from_rows(v)


def matrix_normal_forms(m: IntMatrix):
    """Column HNF, Smith invariants and the unimodular SNF transform pair."""
    h, _ = hnf_column(m)
    inv, u, v = snf_with_transforms(m)
    return h, inv, (u, v)


def solve_integer(m: IntMatrix, target: list[int]):
    """One integer solution x of M x = target, or None.

    Works from the row HNF of the transposed augmented system."""
    # Solve via column HNF: M*V = H; solve H y = target by forward
    # substitution on pivot structure, then x = V y.
    h, v = hnf_column(m, True)
    cols = h.cols
    pivots = []  # (row, col)
    for j in range(cols):
        coln = h.col(j)
        nz = [i for i, x in enumerate(coln) if x]
        if nz:
            pivots.append((nz[0], j))
    y = [0] * cols
    t = list(target)
    for prow, pcol in pivots:
        if t[prow] % h[prow, pcol]:
            return None
        q = t[prow] // h[prow, pcol]
        y[pcol] = q
        if q:
            for i in range(m.rows):
                t[i] -= q * h[i, pcol]
    if any(t):
        return None
    return v.mul_vec(y)


def lattice_index(h: IntMatrix) -> int:
    """Index of a full-rank column lattice in Z^n (abs det)."""
    return abs(det_bareiss(h))


# ---------------------------------------------------------------------------
# integral LLL (Cohen's integer version, operating on explicit vectors)
# ---------------------------------------------------------------------------


def lll_reduce(basis: list[list[int]], delta_num: int = 99, delta_den: int = 100):
    """LLL-reduce linearly independent integer vectors.

    Returns (reduced_basis, transform) where transform rows express the
    reduced vectors in terms of the input ones.  Exact arithmetic on the
    Gram matrix; delta defaults to 0.99 for strong reduction at tiny ranks.
    """
    b = [list(v) for v in basis]
    n = len(b)
    if n == 0:
        return [], []
    m = len(b[0])
    h = [[1 if i == j else 0 for j in range(n)] for i in range(n)]

    def dot(u, v):
        return sum(x * y for x, y in zip(u, v))

    gram = [[dot(b[i], b[j]) for j in range(n)] for i in range(n)]
    # rational Gram-Schmidt bookkeeping
    mu = [[Fraction(0)] * n for _ in range(n)]
    bstar = [Fraction(0)] * n

    def update_gs(upto):
        for i in range(upto + 1):
            bstar[i] = Fraction(gram[i][i])
            for j in range(i):
                mu[i][j] = (Fraction(gram[i][j]) - sum(mu[i][kk] * mu[j][kk] * bstar[kk] for kk in range(j))) / bstar[j]
                bstar[i] -= mu[i][j] ** 2 * bstar[j]

    def size_reduce(k, j):
        if abs(mu[k][j]) > Fraction(1, 2):
            q = int(mu[k][j] + Fraction(1, 2)) if mu[k][j] > 0 else -int(-mu[k][j] + Fraction(1, 2))
            b[k] = [x - q * y for x, y in zip(b[k], b[j])]
            h[k] = [x - q * y for x, y in zip(h[k], h[j])]
            for col in range(n):
                gram[k][col] -= q * gram[j][col]
            for row in range(n):
                gram[row][k] -= q * gram[row][j]

    update_gs(n - 1)
    k = 1
    delta = Fraction(delta_num, delta_den)
    while k < n:
        update_gs(k)
        for j in range(k - 1, -1, -1):
            size_reduce(k, j)
        update_gs(k)
        if bstar[k] >= (delta - mu[k][k - 1] ** 2) * bstar[k - 1]:
            k += 1
        else:
            b[k], b[k - 1] = b[k - 1], b[k]
            h[k], h[k - 1] = h[k - 1], h[k]
            gram[k], gram[k - 1] = gram[k - 1], gram[k]
            for row in range(n):
                gram[row][k], gram[row][k - 1] = gram[row][k - 1], gram[row][k]
            k = max(k - 1, 1)
    return b, h


def gram_det(vectors: list[list[int]]) -> int:
    n = len(vectors)
    g = IntMatrix(n, n, [sum(x * y for x, y in zip(vectors[i], vectors[j]))
                         for i in range(n) for j in range(n)])
    return det_bareiss(g)
