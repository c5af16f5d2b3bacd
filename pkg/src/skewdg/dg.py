"""DG structures on O_{-1}(k^n): the differential attached to a square
matrix M, boundary matrices in the monomial bases, cohomology, and the
cohomological Calabi-Yau probe for n = 3.

The differential is determined by d(x_i) = sum_j M[i][j] x_j^2 and the
graded Leibniz rule; d^2 = 0 holds for every M.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .linalg import Mat, Q, kernel_basis, rank_of_columns, rref, solve_linear
from .skew import SkewElement, coefficient_vector, element_from_vector, graded_basis


class InternalConsistencyError(RuntimeError):
    """A mathematically impossible configuration was produced: an
    implementation bug, reported loudly rather than patched over."""


class DgSpec:
    """The DG algebra on O_{-1}(k^n) determined by an n x n matrix."""

    __slots__ = ("n", "m", "_bnd_cache")

    def __init__(self, m: Mat):
        if m.rows != m.cols:
            raise ValueError("defining matrix must be square")
        object.__setattr__(self, "n", m.rows)
        object.__setattr__(self, "m", m)
        object.__setattr__(self, "_bnd_cache", {})

    def __setattr__(self, name, value):
        raise AttributeError("DgSpec is immutable")

    def __eq__(self, other):
        return isinstance(other, DgSpec) and self.m == other.m

    def __repr__(self):
        return "DgSpec(%r)" % (self.m,)

    # -- the differential ----------------------------------------------------

    def differential(self, u: SkewElement) -> SkewElement:
        """Apply the degree +1 differential to an element.

        On a normal monomial the letters are differentiated in place with
        alternating signs; a letter with even exponent contributes nothing
        because the signs cancel in pairs, and x_j^2 is central so the
        replacement lands back in normal form directly.
        """
        if u.n != self.n:
            raise ValueError("element has wrong variable count")
        n = self.n
        rows = self.m.data
        terms = {}
        for mono, coeff in u.terms.items():
            prefix = 0
            for i in range(n):
                a_i = mono[i]
                if a_i % 2:
                    sign = -1 if prefix % 2 else 1
                    for j in range(n):
                        mij = rows[i][j]
                        if mij == 0:
                            continue
                        new = list(mono)
                        new[i] -= 1
                        new[j] += 2
                        key = tuple(new)
                        c = terms.get(key, Q(0)) + sign * coeff * mij
                        if c == 0:
                            terms.pop(key, None)
                        else:
                            terms[key] = c
                prefix += a_i
        return SkewElement(n, terms)

    # -- boundary matrices and cohomology -------------------------------------

    def boundary_matrix(self, d: int) -> Mat:
        """Matrix of the differential A^d -> A^{d+1}.

        Applying it to a coefficient column in graded_basis(n, d) order
        yields coefficients in graded_basis(n, d+1) order.  For d = 1 the
        nonzero block is M^T acting on the x_j^2 coordinates.
        """
        if d < 0:
            raise ValueError("negative degree")
        cached = self._bnd_cache.get(d)
        if cached is not None:
            return cached
        src = graded_basis(self.n, d)
        dst = graded_basis(self.n, d + 1)
        index = {m: i for i, m in enumerate(dst)}
        cols = []
        for mono in src:
            img = self.differential(SkewElement(self.n, {mono: Q(1)}))
            col = [Q(0)] * len(dst)
            for m, c in img.terms.items():
                col[index[m]] = c
            cols.append(col)
        mat = Mat.from_columns(cols) if cols else Mat.zero(len(dst), 0)
        self._bnd_cache[d] = mat
        return mat

    def coboundary_space(self, d: int) -> list[tuple]:
        """Spanning columns of B^d = im(A^{d-1} -> A^d) in basis coordinates."""
        if d == 0:
            return []
        b = self.boundary_matrix(d - 1)
        return [b.column(j) for j in range(b.cols)]

    def in_coboundaries(self, vec) -> bool:
        """Membership of a square-form coefficient vector in B^2.

        B^2 is spanned by the columns of M^T inside the x_j^2 coordinates,
        which drives every branch condition of the resolution flowchart.
        """
        particular, _ = solve_linear(self.m.T, vec)
        return particular is not None

    def cohomology(self, dmax: int) -> "CohomologyReport":
        """Dimensions and low-degree representatives of H(A) up to dmax."""
        if dmax < 2:
            raise ValueError("dmax must be at least 2")
        dims = []
        ranks = []
        for d in range(dmax + 1):
            ranks.append(self.boundary_matrix(d).rank())
        for d in range(dmax + 1):
            total = len(graded_basis(self.n, d))
            prev = ranks[d - 1] if d > 0 else 0
            dims.append(total - ranks[d] - prev)
        h1 = [SkewElement.linear(v, self.n) for v in kernel_basis(self.m.T)]
        h2_cocycles, h2_cobounds = self._h2_data()
        return CohomologyReport(dims=dims, h1_basis=h1, h2_data=(h2_cocycles, h2_cobounds))

    def _h2_data(self):
        z2 = kernel_basis(self.boundary_matrix(2))
        bound_cols = self.coboundary_space(2)
        reps = _complement_in(bound_cols, z2)
        h2_cocycles = [element_from_vector(v, self.n, 2) for v in reps]
        h2_cobounds = [element_from_vector(v, self.n, 2) for v in _column_basis(bound_cols)]
        return h2_cocycles, h2_cobounds


def _column_basis(columns):
    """Subset of the given columns forming a basis of their span."""
    if not columns:
        return []
    mat = Mat.from_columns(columns)
    _, _, pivots = rref(mat)
    return [columns[j] for j in pivots]


def _complement_in(span_cols, candidates):
    """Pick candidates whose classes complete span_cols to span everything."""
    if not candidates:
        return []
    base = list(span_cols)
    all_cols = base + list(candidates)
    mat = Mat.from_columns(all_cols)
    _, _, pivots = rref(mat)
    return [all_cols[j] for j in pivots if j >= len(base)]


@dataclass
class CohomologyReport:
    dims: list
    h1_basis: list
    h2_data: tuple

    def as_dict(self):
        return {
            "dims": self.dims,
            "h1_basis": [str(z) for z in self.h1_basis],
            "h2_cocycles": [str(z) for z in self.h2_data[0]],
            "h2_coboundaries": [str(z) for z in self.h2_data[1]],
        }


# -- cup products on H^1 and the Calabi-Yau probe ------------------------------


def cup_kernel(spec: DgSpec) -> tuple[list[tuple], int]:
    """Kernel of the multiplication H^1 (x) H^1 -> H^2 for n = 3.

    Returns (relations, new_h2_generators).  Relation coordinates live on
    the ordered pairs (i, j) of the deterministic h1 basis, row-major; each
    relation vector is scaled so its first nonzero coordinate is 1.
    """
    if spec.n != 3:
        raise ValueError("cup products are analyzed for n = 3 only")
    h1 = [SkewElement.linear(v, 3) for v in kernel_basis(spec.m.T)]
    h = len(h1)
    basis2 = graded_basis(3, 2)
    products = []
    for u in h1:
        for v in h1:
            products.append(coefficient_vector(u * v, 2, basis2))
    bound = spec.coboundary_space(2)
    nb = len(bound)
    if products:
        joint = Mat.from_columns(products + bound)
        kern = kernel_basis(joint)
        relations = []
        for vec in kern:
            head = vec[: h * h]
            if any(x != 0 for x in head):
                relations.append(head)
        relations = [tuple(v) for v in _column_basis(relations)]
        relations = [_normalize_head(v) for v in relations]
        rank_joint = h * h + nb - len(kernel_basis(joint))
    else:
        relations = []
        rank_joint = rank_of_columns(bound)
    rank_bound = rank_of_columns(bound)
    image_dim = rank_joint - rank_bound
    h2_dim = len(basis2) - spec.boundary_matrix(2).rank() - rank_bound
    return relations, h2_dim - image_dim


def _normalize_head(vec):
    lead = next(x for x in vec if x != 0)
    return tuple(x / lead for x in vec)


@dataclass
class CyProbeVerdict:
    calabi_yau: bool
    branch: str
    relation: Optional[tuple] = None

    def as_dict(self):
        out = {"verdict": "CalabiYau" if self.calabi_yau else "NotSmooth", "branch": self.branch}
        if self.relation is not None:
            out["relation"] = [str(t) for t in self.relation]
        return out


def cy_probe(spec: DgSpec) -> CyProbeVerdict:
    """Cohomological Calabi-Yau decision for n = 3.

    Not homologically smooth exactly when H^1 is 2-dimensional and the cup
    product on it has a single relation t1 y1^2 + t2 y2^2 + t3(y1 y2 + y2 y1)
    with t1 t2 - t3^2 = 0; every other configuration is Calabi-Yau.
    """
    if spec.n != 3:
        raise ValueError("the probe is defined for n = 3")
    rank = spec.m.rank()
    h1_dim = 3 - rank
    if rank == 0:
        return CyProbeVerdict(True, "rank-0")
    if h1_dim == 0:
        return CyProbeVerdict(True, "trivial-cohomology")
    if h1_dim == 1:
        return CyProbeVerdict(True, "rank-2")
    relations, _extra = cup_kernel(spec)
    if len(relations) == 0:
        raise InternalConsistencyError("rank-1 matrix with injective cup product")
    if len(relations) >= 2:
        return CyProbeVerdict(True, "three-generator-cohomology")
    rel = relations[0]
    t1, t12, t21, t2 = rel
    if t12 != t21:
        raise InternalConsistencyError("asymmetric single cup relation: %s" % (rel,))
    t3 = t12
    if t1 * t2 - t3 * t3 == 0:
        return CyProbeVerdict(False, "degenerate-quadric", relation=(t1, t2, t3))
    return CyProbeVerdict(True, "nondegenerate-quadric", relation=(t1, t2, t3))
