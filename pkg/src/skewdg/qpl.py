"""The quasi-permutation group QPL_n and its right action on defining
matrices: chi(M, C) = C^{-1} M (c_ij^2).

Orbits of the action are exactly the isomorphism classes of DG structures,
so deciding isomorphism means deciding whether the orbit equation has a
solution.  For each candidate permutation the scale constraints form a
multiplicative lattice system d_i / d_j^2 = r_ij; solvability over the
algebraic closure is a character condition on the integer kernel of the
exponent matrix, and a rational witness is a matter of extracting rational
roots during back-substitution.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import permutations
from typing import Optional, Sequence

from .linalg import Mat, Q, frac, int_kernel, smith_normal_form


class UnsupportedSize(ValueError):
    """The exhaustive permutation search is bounded to n <= 3."""


@dataclass(frozen=True)
class QplMatrix:
    """Invertible quasi-permutation matrix: entry d_i at (i, sigma(i))."""

    permutation: tuple  # sigma as a tuple, 0-based: row i has its entry in column permutation[i]
    scales: tuple  # d_1..d_n, all nonzero

    def __post_init__(self):
        n = len(self.permutation)
        if sorted(self.permutation) != list(range(n)):
            raise ValueError("not a permutation")
        scales = tuple(frac(d) for d in self.scales)
        if len(scales) != n or any(d == 0 for d in scales):
            raise ValueError("scales must be n nonzero rationals")
        object.__setattr__(self, "scales", scales)

    @property
    def n(self) -> int:
        return len(self.permutation)

    def to_mat(self) -> Mat:
        n = self.n
        rows = [[Q(0)] * n for _ in range(n)]
        for i, j in enumerate(self.permutation):
            rows[i][j] = self.scales[i]
        return Mat(rows)

    @staticmethod
    def from_mat(c: Mat) -> "QplMatrix":
        if not is_quasi_permutation(c):
            raise ValueError("not an invertible quasi-permutation matrix")
        perm = []
        scales = []
        for i in range(c.rows):
            j = next(j for j in range(c.cols) if c[i, j] != 0)
            perm.append(j)
            scales.append(c[i, j])
        return QplMatrix(tuple(perm), tuple(scales))

    @staticmethod
    def identity(n: int) -> "QplMatrix":
        return QplMatrix(tuple(range(n)), tuple([Q(1)] * n))

    @staticmethod
    def transposition(i: int, j: int, n: int) -> "QplMatrix":
        """Permutation matrix swapping slots i and j (1-based)."""
        perm = list(range(n))
        perm[i - 1], perm[j - 1] = perm[j - 1], perm[i - 1]
        return QplMatrix(tuple(perm), tuple([Q(1)] * n))

    def __mul__(self, other: "QplMatrix") -> "QplMatrix":
        return QplMatrix.from_mat(self.to_mat() * other.to_mat())

    def inverse(self) -> "QplMatrix":
        return QplMatrix.from_mat(self.to_mat().inverse())


def is_quasi_permutation(c: Mat) -> bool:
    """Each row and each column has exactly one nonzero entry."""
    if c.rows != c.cols:
        return False
    for i in range(c.rows):
        if sum(1 for x in c.row(i) if x != 0) != 1:
            return False
    for j in range(c.cols):
        if sum(1 for x in c.column(j) if x != 0) != 1:
            return False
    return True


def chi(m: Mat, c) -> Mat:
    """The right action: chi(M, C) = C^{-1} M (entrywise square of C)."""
    cm = c.to_mat() if isinstance(c, QplMatrix) else c
    if cm.rows != m.rows or cm.cols != m.cols:
        raise ValueError("dimension mismatch")
    return cm.inverse() * m * cm.hadamard_square()


# -- isomorphism decision -------------------------------------------------------


@dataclass
class RootRequirement:
    variable: int  # 0-based scale index
    degree: int
    radicand: Fraction

    def as_dict(self):
        return {"variable": self.variable + 1, "degree": self.degree, "radicand": str(self.radicand)}


@dataclass
class IsoResult:
    status: str  # "NotIsomorphic" | "Witness" | "ClosureOnly"
    witness: Optional[QplMatrix] = None
    permutation: Optional[tuple] = None
    root_requirements: list = field(default_factory=list)
    certificate: list = field(default_factory=list)

    def as_dict(self):
        out = {"status": self.status}
        if self.witness is not None:
            out["permutation"] = [p + 1 for p in self.witness.permutation]
            out["scales"] = [str(d) for d in self.witness.scales]
        elif self.permutation is not None:
            out["permutation"] = [p + 1 for p in self.permutation]
        if self.root_requirements:
            out["root_requirements"] = [r.as_dict() for r in self.root_requirements]
        if self.certificate:
            out["residual_equations"] = self.certificate
        return out


def _constraints_for(m: Mat, m2: Mat, sigma: Sequence[int]):
    """Surviving constraints d_i / d_j^2 = m[i][j] / m2[s(i)][s(j)].

    Returns None if the zero patterns are incompatible, else a list of
    (exponent_vector, value) with exponent e_i - 2 e_j.
    """
    n = m.rows
    constraints = []
    for i in range(n):
        for j in range(n):
            a = m[i, j]
            b = m2[sigma[i], sigma[j]]
            if (a == 0) != (b == 0):
                return None
            if a == 0:
                continue
            exp = [0] * n
            exp[i] += 1
            exp[j] -= 2
            constraints.append((exp, a / b))
    return constraints


def _closure_solvable(constraints) -> bool:
    """Character test: for every integer vector z with z^T E = 0 the product
    prod r_c^{z_c} must equal 1; the kernel lattice of E^T is saturated, so
    checking a lattice basis is enough."""
    if not constraints:
        return True
    n = len(constraints[0][0])
    et = [[c[0][k] for c in constraints] for k in range(n)]
    for z in int_kernel(et, len(constraints)):
        val = Q(1)
        for zc, (_, r) in zip(z, constraints):
            if zc:
                val *= r ** zc
        if val != 1:
            return False
    return True


def _nth_root(x: Fraction, g: int) -> Optional[Fraction]:
    """Exact rational g-th root, preferring the positive one; None if absent."""
    if g == 1:
        return x
    if x == 0:
        return Q(0)
    neg = x < 0
    if neg and g % 2 == 0:
        return None
    mag = -x if neg else x

    def int_root(k: int) -> Optional[int]:
        if k == 1:
            return 1
        r = round(k ** (1.0 / g))
        for cand in (r - 1, r, r + 1):
            if cand > 0 and cand ** g == k:
                return cand
        return None

    rn = int_root(mag.numerator)
    rd = int_root(mag.denominator)
    if rn is None or rd is None:
        return None
    root = Q(rn, rd)
    return -root if neg else root


def _hermite_rows(constraints):
    """Row-echelon the multiplicative system with unimodular row operations."""
    rows = [(list(e), r) for e, r in constraints]
    n = len(rows[0][0]) if rows else 0
    echelon = []
    col = 0
    while col < n and rows:
        while True:
            nz = [i for i, (e, _) in enumerate(rows) if e[col] != 0]
            if not nz:
                break
            imin = min(nz, key=lambda i: abs(rows[i][0][col]))
            rows[0], rows[imin] = rows[imin], rows[0]
            done = True
            pe, pr = rows[0]
            for i in range(1, len(rows)):
                e, r = rows[i]
                if e[col] != 0:
                    q = e[col] // pe[col]
                    if q:
                        rows[i] = ([a - q * b for a, b in zip(e, pe)], r * pr ** (-q))
                    if rows[i][0][col] != 0:
                        done = False
            if done:
                break
        if rows and rows[0][0][col] != 0:
            e, r = rows.pop(0)
            if e[col] < 0:
                e, r = [-x for x in e], 1 / r
            echelon.append((e, r))
        col += 1
    # Leftover rows have zero exponents; their values must be 1 (the closure
    # test already guarantees this) -- keep them for the certificate.
    residual = [(e, r) for e, r in rows if r != 1]
    return echelon, residual


def _solve_scales(constraints, n):
    """Rational solutions of the multiplicative system, via the Smith form.

    A unimodular change of variables turns the system into independent
    equations y_i^g = value, so a rational witness exists exactly when each
    value admits a rational g-th root; free transformed variables are set
    to 1 and even roots branch over both signs.  Returns (candidates,
    root requirements); candidates are re-verified by the caller.
    """
    if not constraints:
        return [tuple([Q(1)] * n)], []
    exps = [list(c[0]) for c in constraints]
    values = [c[1] for c in constraints]
    u, d, v = smith_normal_form(exps)
    nc = len(exps)
    transformed = []
    for i in range(nc):
        val = Q(1)
        for c in range(nc):
            e = u[i][c]
            if e:
                val *= values[c] ** e
        transformed.append(val)
    needed: list[RootRequirement] = []
    y_choices = []
    rank = 0
    for i in range(min(nc, n)):
        g = d[i][i]
        if g == 0:
            break
        rank = i + 1
        target = transformed[i] if g > 0 else 1 / transformed[i]
        g = abs(g)
        root = _nth_root(target, g)
        if root is None:
            needed.append(RootRequirement(i, g, target))
            continue
        options = [root] if (g % 2 or root == 0) else [root, -root]
        y_choices.append((i, options))
    # Rows beyond the rank are pure consistency conditions; the closure test
    # has already enforced them, but guard against drift.
    for i in range(rank, nc):
        if transformed[i] != 1:
            return [], needed
    if needed:
        return [], needed
    indices = [i for i, _ in y_choices]
    candidates = []
    from itertools import product as cartesian

    for combo in cartesian(*[options for _, options in y_choices]):
        y = [Q(1)] * n
        for i, val in zip(indices, combo):
            y[i] = val
        scales = []
        for k in range(n):
            val = Q(1)
            for j in range(n):
                e = v[k][j]
                if e:
                    val *= y[j] ** e
            scales.append(val)
        candidates.append(tuple(scales))
    return candidates, needed


def iso_solve(m: Mat, m2: Mat) -> IsoResult:
    """Decide whether two defining matrices lie in the same orbit.

    Every permutation is screened structurally, then its multiplicative
    scale system is tested for solvability over the algebraic closure; a
    rational witness is extracted whenever the required radicals are
    rational.  Witnesses are re-verified exactly before being returned.
    """
    if m.rows != m.cols or m2.rows != m2.cols or m.rows != m2.rows:
        raise ValueError("matrices must be square of equal size")
    n = m.rows
    if n > 3:
        raise UnsupportedSize("isomorphism search is implemented for n <= 3")
    closure_hits = []
    for sigma in permutations(range(n)):
        constraints = _constraints_for(m, m2, sigma)
        if constraints is None:
            continue
        if not _closure_solvable(constraints):
            continue
        candidates, needed = _solve_scales(constraints, n)
        for scales in candidates:
            witness = QplMatrix(tuple(sigma), scales)
            if chi(m, witness) == m2:
                return IsoResult("Witness", witness=witness)
        certificate = [
            "d%d^%d = %s" % (req.variable + 1, req.degree, req.radicand) for req in needed
        ]
        closure_hits.append(IsoResult("ClosureOnly", permutation=tuple(sigma),
                                      root_requirements=needed, certificate=certificate))
    if closure_hits:
        return closure_hits[0]
    return IsoResult("NotIsomorphic")


# -- automorphism groups ---------------------------------------------------------


@dataclass
class AutFamily:
    permutation: tuple  # 0-based
    fixed: dict  # scale index -> value (when the system pins it to a rational)
    relations: list  # residual echelon rows as strings
    free: list  # scale indices with no constraint

    def as_dict(self):
        return {
            "permutation": [p + 1 for p in self.permutation],
            "fixed": {("d%d" % (k + 1)): str(v) for k, v in sorted(self.fixed.items())},
            "relations": self.relations,
            "free": ["d%d" % (k + 1) for k in self.free],
        }


def aut_group(m: Mat) -> list[AutFamily]:
    """Describe Aut of the DG structure: for each permutation admitting
    automorphisms, the solved scale constraints."""
    if m.rows != m.cols:
        raise ValueError("square matrix required")
    n = m.rows
    if n > 3:
        raise UnsupportedSize("automorphism search is implemented for n <= 3")
    families = []
    for sigma in permutations(range(n)):
        constraints = _constraints_for(m, m, sigma)
        if constraints is None:
            continue
        if not _closure_solvable(constraints):
            continue
        echelon, _ = _hermite_rows(constraints)
        fixed = {}
        relations = []
        pivot_cols = set()
        for e, r in echelon:
            col = next(k for k in range(n) if e[k] != 0)
            pivot_cols.add(col)
            if e[col] == 1 and all(e[k] == 0 for k in range(col + 1, n)):
                fixed[col] = r
            else:
                lhs = "d%d" % (col + 1) if e[col] == 1 else "d%d^%d" % (col + 1, e[col])
                rhs = [] if r == 1 else [str(r)]
                for k in range(n):
                    if k == col or e[k] == 0:
                        continue
                    if e[k] == -1:
                        rhs.append("d%d" % (k + 1))
                    else:
                        rhs.append("d%d^%d" % (k + 1, -e[k]))
                relations.append("%s = %s" % (lhs, "*".join(rhs) if rhs else "1"))
        free = [k for k in range(n) if k not in pivot_cols]
        families.append(AutFamily(tuple(sigma), fixed, relations, free))
    return families
