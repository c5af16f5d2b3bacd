"""Exact linear algebra over the rationals.

Dense matrices with ``fractions.Fraction`` entries.  Everything here is
exact: no floating point, no finite fields.  Matrices are immutable after
construction and all operations are pure functions, so values can be shared
freely.
"""

from __future__ import annotations

from fractions import Fraction
from math import gcd
from typing import Iterable, Optional, Sequence

Q = Fraction


def frac(x) -> Fraction:
    """Coerce ints, strings like '3/2', and Fractions to Fraction."""
    if isinstance(x, Fraction):
        return x
    return Fraction(x)


class Mat:
    """Immutable dense matrix over Q (row-major)."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, entries: Iterable[Iterable]):
        data = tuple(tuple(frac(x) for x in row) for row in entries)
        if data:
            width = len(data[0])
            if any(len(row) != width for row in data):
                raise ValueError("ragged rows")
        else:
            width = 0
        object.__setattr__(self, "data", data)
        object.__setattr__(self, "rows", len(data))
        object.__setattr__(self, "cols", width)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    @staticmethod
    def zero(rows: int, cols: int) -> "Mat":
        return Mat([[0] * cols for _ in range(rows)])

    @staticmethod
    def identity(n: int) -> "Mat":
        return Mat([[1 if i == j else 0 for j in range(n)] for i in range(n)])

    @staticmethod
    def from_columns(columns: Sequence[Sequence]) -> "Mat":
        if not columns:
            return Mat([])
        height = len(columns[0])
        return Mat([[columns[j][i] for j in range(len(columns))] for i in range(height)])

    def __getitem__(self, ij):
        i, j = ij
        return self.data[i][j]

    def __eq__(self, other):
        return isinstance(other, Mat) and self.data == other.data

    def __hash__(self):
        return hash(self.data)

    def __repr__(self):
        return "Mat(%s)" % (list(list(map(str, row)) for row in self.data),)

    def row(self, i: int) -> tuple:
        return self.data[i]

    def column(self, j: int) -> tuple:
        return tuple(self.data[i][j] for i in range(self.rows))

    def transpose(self) -> "Mat":
        return Mat([[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    @property
    def T(self) -> "Mat":
        return self.transpose()

    def __add__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return Mat([[a + b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __sub__(self, other: "Mat") -> "Mat":
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("dimension mismatch")
        return Mat([[a - b for a, b in zip(r1, r2)] for r1, r2 in zip(self.data, other.data)])

    def __mul__(self, other):
        if isinstance(other, Mat):
            if self.cols != other.rows:
                raise ValueError("dimension mismatch")
            cols = other.transpose().data
            return Mat([[sum(a * b for a, b in zip(row, col)) for col in cols] for row in self.data])
        c = frac(other)
        return Mat([[c * x for x in row] for row in self.data])

    def __rmul__(self, other):
        return self.__mul__(other)

    def apply(self, vector: Sequence) -> tuple:
        """Matrix times column vector."""
        if len(vector) != self.cols:
            raise ValueError("dimension mismatch")
        vec = [frac(x) for x in vector]
        return tuple(sum(a * b for a, b in zip(row, vec)) for row in self.data)

    def hadamard_square(self) -> "Mat":
        """Entrywise square (used by the quasi-permutation action)."""
        return Mat([[x * x for x in row] for row in self.data])

    def is_zero(self) -> bool:
        return all(x == 0 for row in self.data for x in row)

    def det(self) -> Fraction:
        if self.rows != self.cols:
            raise ValueError("determinant of non-square matrix")
        # Fraction Gaussian elimination; sizes here are tiny.
        n = self.rows
        a = [list(row) for row in self.data]
        det = Q(1)
        for k in range(n):
            piv = next((i for i in range(k, n) if a[i][k] != 0), None)
            if piv is None:
                return Q(0)
            if piv != k:
                a[k], a[piv] = a[piv], a[k]
                det = -det
            det *= a[k][k]
            inv = 1 / a[k][k]
            for i in range(k + 1, n):
                if a[i][k] != 0:
                    f = a[i][k] * inv
                    a[i] = [x - f * y for x, y in zip(a[i], a[k])]
        return det

    def inverse(self) -> "Mat":
        if self.rows != self.cols:
            raise ValueError("inverse of non-square matrix")
        n = self.rows
        aug = Mat([list(self.data[i]) + [1 if i == j else 0 for j in range(n)] for i in range(n)])
        red, rank, pivots = rref(aug)
        if rank < n or any(p >= n for p in pivots[:n]) or pivots[:n] != list(range(n)):
            raise ValueError("matrix is singular")
        return Mat([row[n:] for row in red.data])

    def rank(self) -> int:
        return int_rank(_int_rows(self.data))

    def stack_columns(self, other: "Mat") -> "Mat":
        if self.rows != other.rows:
            raise ValueError("dimension mismatch")
        return Mat([list(r1) + list(r2) for r1, r2 in zip(self.data, other.data)])


def rref(a: Mat) -> tuple[Mat, int, list[int]]:
    """Reduced row echelon form.

    Returns (reduced, rank, pivot_columns).  Pivot selection takes the row
    whose candidate entry has the largest |numerator| (ties to the smallest
    row index); the result is the unique RREF regardless.
    """
    m = [list(row) for row in a.data]
    nrows, ncols = a.rows, a.cols
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        if r >= nrows:
            break
        best, best_key = None, None
        for i in range(r, nrows):
            if m[i][c] != 0:
                key = abs(m[i][c].numerator)
                if best is None or key > best_key:
                    best, best_key = i, key
        if best is None:
            continue
        m[r], m[best] = m[best], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(nrows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [x - f * y for x, y in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    return Mat(m), len(pivots), pivots


def kernel_basis(a: Mat) -> list[tuple]:
    """Basis of the nullspace {v : a.v = 0}.

    Deterministic: derived from the RREF, each vector scaled so its first
    nonzero coordinate equals 1.
    """
    red, rank, pivots = rref(a)
    free = [j for j in range(a.cols) if j not in pivots]
    basis = []
    for j in free:
        v = [Q(0)] * a.cols
        v[j] = Q(1)
        for i, p in enumerate(pivots):
            v[p] = -red.data[i][j]
        lead = next(x for x in v if x != 0)
        basis.append(tuple(x / lead for x in v))
    return basis


def solve_linear(a: Mat, b: Sequence) -> tuple[Optional[tuple], list[tuple]]:
    """Solve a.x = b exactly.

    Returns (particular, kernel_basis); particular is None iff the system is
    inconsistent.  The particular solution is canonical: free variables are
    set to zero (RREF back-substitution).
    """
    if len(b) != a.rows:
        raise ValueError("dimension mismatch")
    aug = Mat([list(row) + [bi] for row, bi in zip(a.data, b)])
    red, rank, pivots = rref(aug)
    if a.cols in pivots:
        return None, kernel_basis(a)
    x = [Q(0)] * a.cols
    for i, p in enumerate(pivots):
        x[p] = red.data[i][a.cols]
    return tuple(x), kernel_basis(a)


def in_span(vectors: Sequence[Sequence], v: Sequence) -> bool:
    """True iff v lies in the linear span of the given columns."""
    vecs = list(vectors)
    if not vecs:
        return all(frac(x) == 0 for x in v)
    if any(len(u) != len(v) for u in vecs):
        raise ValueError("dimension mismatch")
    particular, _ = solve_linear(Mat.from_columns(vecs), v)
    return particular is not None


# ---------------------------------------------------------------------------
# Integer fast paths.  Still exact; used where only ranks or integer kernels
# are needed and the matrices get larger (complex verification, lattices).
# ---------------------------------------------------------------------------


def _int_rows(data) -> list[list[int]]:
    rows = []
    for row in data:
        denom = 1
        for x in row:
            denom = denom * x.denominator // gcd(denom, x.denominator)
        rows.append([int(x * denom) for x in row])
    return rows


def int_rank(rows: list[list[int]]) -> int:
    """Rank of an integer matrix by fraction-free elimination.

    Rows are reduced by their gcd after each update to keep entries small.
    Zero entries are skipped, which matters for the sparse boundary
    matrices produced by the complex machinery.
    """
    work = [row[:] for row in rows if any(row)]
    if not work:
        return 0
    ncols = len(work[0])
    rank = 0
    col = 0
    while col < ncols and rank < len(work):
        piv = None
        best = None
        for i in range(rank, len(work)):
            x = work[i][col]
            if x != 0 and (best is None or abs(x) < best):
                piv, best = i, abs(x)
                if best == 1:
                    break
        if piv is None:
            col += 1
            continue
        work[rank], work[piv] = work[piv], work[rank]
        prow = work[rank]
        pval = prow[col]
        for i in range(rank + 1, len(work)):
            x = work[i][col]
            if x == 0:
                continue
            row = work[i]
            new = [pval * a - x * b for a, b in zip(row, prow)]
            g = 0
            for t in new:
                if t:
                    g = gcd(g, t)
                    if g == 1:
                        break
            if g > 1:
                new = [t // g for t in new]
            work[i] = new
        work = [row for row in work if any(row)]
        rank += 1
        col += 1
    return rank


def rank_of_columns(columns: Sequence[Sequence]) -> int:
    if not columns:
        return 0
    return int_rank(_int_rows([[frac(c[i]) for c in columns] for i in range(len(columns[0]))]))


# ---------------------------------------------------------------------------
# Integer lattice kernel (Hermite-style column elimination).  Needed by the
# multiplicative-consistency check of the isomorphism solver: the kernel of
# an integer matrix is a saturated lattice and this computes a basis of it.
# ---------------------------------------------------------------------------


def smith_normal_form(a: list[list[int]]):
    """Smith normal form with transforms: returns (U, D, V) with U a V
    unimodular and U * a * V = D diagonal.

    Used to solve multiplicative systems d^E = r exactly: the unimodular
    change of variables reduces the system to independent root extractions,
    which decides rational solvability completely.
    """
    nrows = len(a)
    ncols = len(a[0]) if a else 0
    d = [row[:] for row in a]
    u = [[1 if i == j else 0 for j in range(nrows)] for i in range(nrows)]
    v = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def row_swap(i, k):
        d[i], d[k] = d[k], d[i]
        u[i], u[k] = u[k], u[i]

    def row_addmul(i, k, q):
        d[i] = [x + q * y for x, y in zip(d[i], d[k])]
        u[i] = [x + q * y for x, y in zip(u[i], u[k])]

    def col_swap(j, k):
        for row in d:
            row[j], row[k] = row[k], row[j]
        for row in v:
            row[j], row[k] = row[k], row[j]

    def col_addmul(j, k, q):
        for row in d:
            row[j] += q * row[k]
        for row in v:
            row[j] += q * row[k]

    t = 0
    while t < min(nrows, ncols):
        # Find a pivot of least magnitude in the remaining block.
        piv = None
        best = None
        for i in range(t, nrows):
            for j in range(t, ncols):
                x = d[i][j]
                if x != 0 and (best is None or abs(x) < best):
                    piv, best = (i, j), abs(x)
        if piv is None:
            break
        row_swap(t, piv[0])
        col_swap(t, piv[1])
        dirty = True
        while dirty:
            dirty = False
            for i in range(t + 1, nrows):
                if d[i][t] != 0:
                    q = d[i][t] // d[t][t]
                    row_addmul(i, t, -q)
                    if d[i][t] != 0:
                        row_swap(t, i)
                        dirty = True
            for j in range(t + 1, ncols):
                if d[t][j] != 0:
                    q = d[t][j] // d[t][t]
                    col_addmul(j, t, -q)
                    if d[t][j] != 0:
                        col_swap(t, j)
                        dirty = True
        t += 1
    return u, d, v


def int_kernel(a: list[list[int]], ncols: int) -> list[list[int]]:
    """Basis of {z in Z^ncols : a.z = 0} via unimodular column operations."""
    nrows = len(a)
    work = [row[:] for row in a]
    u = [[1 if i == j else 0 for j in range(ncols)] for i in range(ncols)]

    def col_swap(j, k):
        for row in work:
            row[j], row[k] = row[k], row[j]
        for row in u:
            row[j], row[k] = row[k], row[j]

    def col_addmul(j, k, m):
        # column j += m * column k
        for row in work:
            row[j] += m * row[k]
        for row in u:
            row[j] += m * row[k]

    pivot_col = 0
    for i in range(nrows):
        if pivot_col >= ncols:
            break
        # Euclidean reduction across columns pivot_col..ncols-1 on row i.
        while True:
            nz = [j for j in range(pivot_col, ncols) if work[i][j] != 0]
            if not nz:
                break
            jmin = min(nz, key=lambda j: abs(work[i][j]))
            col_swap(pivot_col, jmin)
            done = True
            for j in range(pivot_col + 1, ncols):
                if work[i][j] != 0:
                    q = work[i][j] // work[i][pivot_col]
                    col_addmul(j, pivot_col, -q)
                    if work[i][j] != 0:
                        done = False
            if done:
                break
        if work[i][pivot_col] != 0:
            pivot_col += 1
    kernel = []
    for j in range(pivot_col, ncols):
        if all(work[i][j] == 0 for i in range(nrows)):
            kernel.append([u[i][j] for i in range(ncols)])
    return kernel
