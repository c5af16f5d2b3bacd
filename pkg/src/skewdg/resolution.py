"""Minimal semi-free resolutions of the trivial module and Ext-algebras.

A resolution is a free basis e_0..e_{m-1} in degree 0 together with a
strictly lower triangular matrix of degree-1 entries: d(e_j) = sum d[j][l] e_l.
The verifier checks minimality, the square-zero identity, and truncated
exactness of the associated complex; the Ext-algebra is the scalar
commutant of the differential matrix.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Optional

from .classify import (
    RANK0,
    RANK1,
    RANK2_DEGENERATE,
    RANK2_NONDEG,
    RANK3,
    CaseLabel,
    classify,
    quadric_coefficients,
    theorem_c,
)
from .dg import DgSpec, InternalConsistencyError
from .finalg import FinAlg
from .linalg import Mat, Q, _int_rows, frac, int_rank, kernel_basis, rref, solve_linear
from .qpl import QplMatrix, chi, iso_solve
from .skew import SkewElement, coefficient_vector, graded_basis, parse_element


class UnsupportedCase(ValueError):
    """No resolution is constructed for this classification branch."""


@dataclass
class SemifreeResolution:
    spec: DgSpec  # the DG structure the rows are valid over
    d: list  # m x m grid of SkewElement, strictly lower triangular
    subcase: CaseLabel
    named: dict = field(default_factory=dict)  # sigma, tau, lambda, ... as elements
    normalization: Optional[dict] = None  # iso data when built over a representative
    relation: Optional[tuple] = None  # quadric coefficients (t1, t2, t3) if applicable

    @property
    def size(self) -> int:
        return len(self.d)

    def entry(self, j: int, l: int) -> SkewElement:
        return self.d[j][l]

    def as_dict(self):
        out = {
            "size": self.size,
            "matrix": [[str(x) for x in row] for row in self.spec.m.data],
            "subcase": self.subcase.as_dict(),
            "rows": [[str(self.d[j][l]) for l in range(j)] for j in range(self.size)],
            "named_elements": {k: str(v) for k, v in sorted(self.named.items())},
        }
        if self.relation is not None:
            out["relation"] = [str(t) for t in self.relation]
        if self.normalization:
            out["normalization"] = self.normalization
        return out


def resolution_from_dict(data: dict) -> SemifreeResolution:
    """Re-parse the stable textual serialization produced by as_dict()."""
    mat = Mat([[frac(x) for x in row] for row in data["matrix"]])
    spec = DgSpec(mat)
    size = data["size"]
    zero = SkewElement.zero(spec.n)
    grid = [[zero for _ in range(size)] for _ in range(size)]
    for j, row in enumerate(data["rows"]):
        for l, text in enumerate(row):
            grid[j][l] = parse_element(text, spec.n)
    named = {k: parse_element(v, spec.n)
             for k, v in data.get("named_elements", {}).items()}
    label = classify(mat)
    relation = tuple(frac(t) for t in data["relation"]) if "relation" in data else None
    return SemifreeResolution(spec, grid, label, named,
                              normalization=data.get("normalization"),
                              relation=relation)


@dataclass
class InfinitePattern:
    relation_coeffs: tuple  # (t1, t2, t3) with t1 t2 = t3^2
    truncation: Optional[SemifreeResolution]

    def as_dict(self):
        out = {
            "homologically_smooth": False,
            "relation": [str(t) for t in self.relation_coeffs],
        }
        if self.truncation is not None:
            out["truncation"] = self.truncation.as_dict()
        return out


# -- the complex F = A (x) k^m and its cohomology -------------------------------


def _complex_map_rows(spec: DgSpec, rows, degree: int):
    """Integer matrix of d_F : F^degree -> F^{degree+1} (columns = source)."""
    n = spec.n
    m = len(rows)
    src = graded_basis(n, degree)
    dst = graded_basis(n, degree + 1)
    dst_index = {mono: i for i, mono in enumerate(dst)}
    sign = -1 if degree % 2 else 1
    ncols = m * len(src)
    out = [[Q(0)] * ncols for _ in range(m * len(dst))]
    diff_cache = {}
    for si, mono in enumerate(src):
        elt = SkewElement(n, {mono: Q(1)})
        dmono = spec.differential(elt)
        diff_cache[mono] = dmono
        for j in range(m):
            col = j * len(src) + si
            for mo, c in dmono.terms.items():
                out[j * len(dst) + dst_index[mo]][col] += c
            for l in range(j):
                entry = rows[j][l]
                if entry.is_zero():
                    continue
                prod = elt * entry
                for mo, c in prod.terms.items():
                    out[l * len(dst) + dst_index[mo]][col] += sign * c
    return out


def _complex_rank(spec: DgSpec, rows, degree: int) -> int:
    mat = _complex_map_rows(spec, rows, degree)
    return int_rank(_int_rows(mat))


def complex_cohomology_dims(spec: DgSpec, rows, dmax: int) -> list[int]:
    """dim H^i of the semifree complex for 0 <= i <= dmax - 1."""
    n = spec.n
    m = len(rows)
    ranks = [_complex_rank(spec, rows, d) for d in range(dmax)]
    dims = []
    for i in range(dmax):
        total = m * len(graded_basis(n, i))
        prev = ranks[i - 1] if i > 0 else 0
        dims.append(total - ranks[i] - prev)
    return dims


@dataclass
class VerificationReport:
    minimal: bool
    square_zero: bool
    cohomology_dims: list
    exact: bool
    failures: list

    @property
    def passed(self) -> bool:
        return self.minimal and self.square_zero and self.exact

    def as_dict(self):
        return {
            "passed": self.passed,
            "minimal": self.minimal,
            "square_zero": self.square_zero,
            "complex_cohomology": self.cohomology_dims,
            "exact": self.exact,
            "failures": self.failures,
        }


def verify_resolution(spec: DgSpec, res: SemifreeResolution, dmax: int = 5) -> VerificationReport:
    """Check minimality, the square-zero identity and truncated exactness.

    Exactness means dim H^0(F) = 1 and H^i(F) = 0 for 1 <= i <= dmax - 1.
    Failures carry the offending indices so a falsified claim is precise.
    """
    rows = res.d
    m = len(rows)
    failures = []
    minimal = True
    graded = True
    for j in range(m):
        for l in range(m):
            entry = rows[j][l]
            if l >= j and not entry.is_zero():
                minimal = False
                failures.append(("not-lower-triangular", j, l))
            if not entry.is_zero() and entry.degrees() != {1}:
                minimal = False
                graded = False
                failures.append(("entry-degree", j, l, sorted(entry.degrees())))
    square_zero = True
    for j in range(m):
        for l in range(m):
            lhs = spec.differential(rows[j][l])
            rhs = SkewElement.zero(spec.n)
            for k in range(m):
                rhs = rhs + rows[j][k] * rows[k][l]
            if lhs != rhs:
                square_zero = False
                failures.append(("square-zero", j, l, str(lhs - rhs)))
    if graded:
        dims = complex_cohomology_dims(spec, rows, dmax)
        exact = dims[0] == 1 and all(x == 0 for x in dims[1:])
        if not exact:
            failures.append(("cohomology", dims))
    else:
        # Entries of the wrong degree break the grading; there is no graded
        # complex whose exactness could be measured.
        dims = []
        exact = False
        failures.append(("complex-not-graded",))
    return VerificationReport(minimal, square_zero, dims, exact, failures)


# -- generic construction by killing degree-1 cocycle classes -------------------


def _h1_representatives(spec: DgSpec, rows):
    """Cocycle representatives of H^1(F), as lists of degree-1 coefficients."""
    n = spec.n
    m = len(rows)
    basis1 = graded_basis(n, 1)
    mat = _complex_map_rows(spec, rows, 1)
    cocycles = kernel_basis(Mat(mat))
    # Coboundary columns: images of the basis elements e_j.
    bound = []
    for j in range(m):
        col = [Q(0)] * (m * n)
        for l in range(j):
            for i, mono in enumerate(basis1):
                col[l * n + i] = rows[j][l].terms.get(mono, Q(0))
        bound.append(tuple(col))
    all_cols = [c for c in bound if any(x != 0 for x in c)] + list(cocycles)
    if not all_cols:
        return []
    _, _, pivots = rref(Mat.from_columns(all_cols))
    nb = len([c for c in bound if any(x != 0 for x in c)])
    reps = []
    for p in pivots:
        if p >= nb:
            vec = all_cols[p]
            coeffs = []
            for j in range(m):
                coeffs.append(SkewElement(n, {mono: vec[j * n + i] for i, mono in enumerate(basis1)}))
            reps.append(coeffs)
    return reps


def _square_grid(spec: DgSpec, rows) -> list:
    m = len(rows)
    zero = SkewElement.zero(spec.n)
    return [[rows[j][l] if l < len(rows[j]) else zero for l in range(m)] for j in range(m)]


def eilenberg_moore(spec: DgSpec, max_size: int = 64):
    """Build a minimal semifree resolution by repeatedly killing H^1.

    Returns (grid, complete); complete is False when the size cap stops the
    construction first (the homologically non-smooth families).
    """
    zero = SkewElement.zero(spec.n)
    rows = [[]]  # row j carries entries for columns 0..j-1
    while True:
        m = len(rows)
        reps = _h1_representatives(spec, rows)
        if not reps:
            break
        if m + len(reps) > max_size:
            return _square_grid(spec, rows), False
        for rep in reps:
            # Each representative is a coefficient list over the basis that
            # existed when it was computed; newer rows contribute zeros.
            rows.append(list(rep) + [zero] * (len(rows) - len(rep)))
    return _square_grid(spec, rows), True


# -- the explicit constructions ---------------------------------------------------


def _row_grid(spec: DgSpec, spec_rows) -> list:
    m = len(spec_rows) + 1
    grid = [[SkewElement.zero(spec.n) for _ in range(m)] for _ in range(m)]
    for j, row in enumerate(spec_rows, start=1):
        for l, entry in enumerate(row):
            grid[j][l] = entry
    return grid


def _degenerate_rows(spec: DgSpec, label: CaseLabel):
    """The staircase rows for the seven rank-2 degenerate subcases."""
    n = 3
    data = label.data
    t = SkewElement.linear(data["t"], n)
    sigma = SkewElement.linear(data["q"], n)
    named = {"t": t, "sigma": sigma}
    zero = SkewElement.zero(n)
    sub = label.subcase
    if sub == "1.1":
        body = [[t], [sigma, t]]
    elif sub in ("1.2.1", "1.2.2", "1.2.3"):
        tau = zero
        named["tau"] = tau
        body = [[t], [sigma, t], [2 * tau, sigma, t]]
        if sub in ("1.2.2", "1.2.3"):
            lam = SkewElement.linear(data["u"], n)
            named["lambda"] = lam
            body.append([lam, 2 * tau, sigma, t])
        if sub == "1.2.3":
            omega = SkewElement.linear(data["v"], n)
            named["omega"] = omega
            body.append([2 * omega, lam, 2 * tau, sigma, t])
    elif sub == "1.2.4":
        lam = SkewElement.linear(data["u"], n)
        eta = SkewElement.linear(data["w"], n)
        named["lambda"] = lam
        named["eta"] = eta
        body = [
            [t],
            [sigma, t],
            [zero, sigma, t],
            [lam, zero, sigma, t],
            [zero, lam, zero, sigma, t],
            [eta, zero, lam, zero, sigma, t],
            [zero, eta, zero, lam, zero, sigma, t],
        ]
    elif sub in ("1.3.1", "1.3.2"):
        tau = SkewElement.linear(data["r"], n)
        named["tau"] = tau
        body = [[t], [sigma, t], [2 * tau, sigma, t]]
        if sub == "1.3.2":
            lam = SkewElement.linear(data["u"], n)
            omega = SkewElement.linear(data["v"], n)
            named["lambda"] = lam
            named["omega"] = omega
            body.append([lam, 2 * tau, sigma, t])
            body.append([2 * omega, lam, 2 * tau, sigma, t])
    else:
        raise InternalConsistencyError("unknown subcase %r" % sub)
    return _row_grid(spec, body), named


def _quadric_rows(spec: DgSpec, label: CaseLabel):
    """Size-4 resolution for the two-generator cohomology with one quadric.

    The last row needs a degree-1 correction term w solving
    d(w) = t1 y1^2 + t2 y2^2 + t3 (y1 y2 + y2 y1); the square-zero identity
    fails without it.
    """
    n = 3
    m11, m12, m13, l1, l2 = label.params
    t1, t2, t3 = quadric_coefficients(label.params)
    y1 = SkewElement.linear((l1, Q(-1), Q(0)), n)
    y2 = SkewElement.linear((l2, Q(0), Q(-1)), n)
    target = (y1 * y1).scale(t1) + (y2 * y2).scale(t2) + (y1 * y2 + y2 * y1).scale(t3)
    rhs = coefficient_vector(target, 2, [(2, 0, 0), (0, 2, 0), (0, 0, 2)])
    if any(target.coefficient(mono) != 0
           for mono in target.terms if sorted(mono) != [0, 0, 2]):
        raise InternalConsistencyError("quadric value left the square-form span")
    w_vec, _ = solve_linear(spec.m.T, rhs)
    if w_vec is None:
        raise InternalConsistencyError("quadric relation is not a coboundary")
    w = SkewElement.linear(w_vec, n)
    named = {"y1": y1, "y2": y2, "w": w}
    body = [
        [y1],
        [y2, SkewElement.zero(n)],
        [w, y1.scale(t1) + y2.scale(t3), y2.scale(t2) + y1.scale(t3)],
    ]
    return _row_grid(spec, body), named


# The six equality-case representatives every rank-1 equality matrix
# normalizes to.
SIX_REPRESENTATIVES = {
    "M1": Mat([[0, 1, 1], [0, 0, 0], [0, 0, 0]]),
    "M2": Mat([[0, 1, 0], [0, 0, 0], [0, 0, 0]]),
    "M3": Mat([[1, 1, 1], [1, 1, 1], [0, 0, 0]]),
    "M4": Mat([[0, 1, 0], [0, 0, 0], [0, 1, 0]]),
    "M5": Mat([[1, 1, 0], [1, 1, 0], [0, 0, 0]]),
    "M6": Mat([[1, 1, 0], [0, 0, 0], [1, 1, 0]]),
}

# Published differential grids for the six representatives.  Only M1 and M6
# pass the exactness check; the other four stop short of killing the cocycle
# classes that mix the second degree-one cohomology generator into the
# staircase, so they are kept as regression fixtures and NOT emitted as
# resolutions (see tests for the falsification data).
PUBLISHED_GRIDS = {
    "M1": [
        ["x2"],
        ["x3", "0"],
        ["0", "x3", "x2"],
        ["x1", "x2", "x3", "0"],
        ["0", "0", "x1", "x2", "x3"],
        ["0", "x1", "0", "x3", "x2", "0"],
        ["0", "0", "0", "x1", "0", "x2", "x3"],
    ],
    "M2": [
        ["x2"],
        ["x3", "0"],
        ["x1", "x2", "0"],
        ["0", "x1", "0", "x2"],
    ],
    "M3": [
        ["x1 - x2"],
        ["x3", "0"],
        ["x1", "x1 - x2", "x3"],
    ],
    "M4": [
        ["x2"],
        ["x1 - x3", "0"],
        ["x1", "x2", "0"],
        ["0", "x1", "0", "x2"],
    ],
    "M5": [
        ["x3"],
        ["x1 - x2", "0"],
        ["0", "x1 - x2", "x3"],
    ],
    "M6": [
        ["x2"],
        ["x1 - x3", "0"],
        ["0", "x1 - x3", "x2"],
    ],
}

# Verified minimal grids (constructed by the cocycle-killing builder and
# checked by verify_resolution; deterministic, frozen here so that emitted
# resolutions are stable fixtures).  M1 keeps its published form.
VERIFIED_GRIDS = {
    "M1": PUBLISHED_GRIDS["M1"],
    "M2": [
        ["x2"],
        ["x3", "0"],
        ["x1", "x2", "0"],
        ["0", "x3", "x2", "0"],
        ["0", "x1", "0", "x2", "0"],
        ["0", "0", "x1", "x3", "x2", "0"],
        ["0", "0", "0", "0", "x1", "x3", "x2"],
    ],
    "M3": [
        ["x1 - x2"],
        ["x3", "0"],
        ["0", "x3", "x1 - x2"],
        ["x1", "x1 - x2", "x3", "0"],
        ["0", "0", "x1", "x1 - x2", "x3"],
    ],
    "M4": [
        ["x2"],
        ["x1 - x3", "0"],
        ["x1", "x2", "0"],
        ["0", "x1 - x3", "x2", "0"],
        ["0", "x1", "0", "x2", "0"],
        ["0", "0", "x1", "-x1 - x3", "x2", "-2*x2"],
        ["0", "0", "0", "0", "x1", "-x1 - x3", "x2"],
    ],
    "M5": [
        ["x1 - x2"],
        ["x3", "0"],
        ["x1", "x1 - x2", "0"],
        ["0", "x3", "x1 - x2", "0"],
        ["0", "0", "x1", "x3", "x1 - x2"],
    ],
    "M6": PUBLISHED_GRIDS["M6"],
}


def _grid_from_table(table) -> list:
    rows = [[parse_element(s, 3) for s in line] for line in table]
    size = len(rows) + 1
    zero = SkewElement.zero(3)
    return [[rows[j - 1][l] if j >= 1 and l < len(rows[j - 1]) else zero
             for l in range(size)] for j in range(size)]


def published_resolution(name: str) -> SemifreeResolution:
    """The grid exactly as published, for comparison and falsification."""
    rep = SIX_REPRESENTATIVES[name]
    return SemifreeResolution(DgSpec(rep), _grid_from_table(PUBLISHED_GRIDS[name]),
                              classify(rep))


def representative_for(label: CaseLabel) -> str:
    """Which of the six equality representatives a rank-1 equality case
    normalizes to (cohomology cases 7, 8, 9)."""
    m11, m12, m13, l1, l2 = label.params
    case = label.coh_case
    if case == 9:
        return "M1" if (m12 != 0 and m13 != 0) else "M2"
    if case == 7:
        if m12 != 0 and m13 != 0:
            return "M3"
        return "M4" if m12 == 0 else "M5"
    if case == 8:
        if m12 != 0 and m13 != 0:
            return "M3"
        return "M5" if m12 == 0 else "M4"
    raise ValueError("not an equality case")


def build_resolution(m: Mat, truncate: int = 8):
    """Dispatch on the classification and build the minimal resolution.

    Returns a SemifreeResolution, an InfinitePattern for the non-smooth
    families, or raises UnsupportedCase for the branches with no published
    construction (rank 2 nondegenerate and rank 0).
    """
    label = classify(m)
    spec = DgSpec(m)
    if label.branch == RANK3:
        return SemifreeResolution(spec, [[SkewElement.zero(3)]], label)
    if label.branch in (RANK2_NONDEG, RANK0):
        raise UnsupportedCase("no resolution is constructed for branch %s" % label.branch)
    if label.branch == RANK2_DEGENERATE:
        grid, named = _degenerate_rows(spec, label)
        return SemifreeResolution(spec, grid, label, named)
    # Rank 1.
    verdict = theorem_c(m)
    if not verdict.homologically_smooth:
        t1, t2, t3 = quadric_coefficients(label.params)
        grid, _complete = eilenberg_moore(spec, max_size=truncate)
        trunc_label = CaseLabel(label.rank, label.branch, coh_case=label.coh_case,
                                params=label.params, permutation=label.permutation)
        trunc = SemifreeResolution(spec, grid, trunc_label, {})
        return InfinitePattern((t1, t2, t3), trunc)
    if label.coh_case in (4, 5, 6):
        work = m
        normalization = None
        if label.permutation and label.permutation != (0, 1, 2):
            swap = QplMatrix(label.permutation, (Q(1), Q(1), Q(1)))
            work = chi(m, swap)
            normalization = {"status": "Witness",
                             "permutation": [p + 1 for p in label.permutation]}
        wspec = DgSpec(work)
        grid, named = _quadric_rows(wspec, label)
        res = SemifreeResolution(wspec, grid, label, named,
                                 relation=quadric_coefficients(label.params))
        res.normalization = normalization
        return res
    # Equality cases 7, 8, 9: normalize to one of the six representatives.
    name = representative_for(label)
    rep = SIX_REPRESENTATIVES[name]
    iso = iso_solve(m, rep)
    if iso.status == "NotIsomorphic":
        raise InternalConsistencyError(
            "equality case did not land on its representative %s" % name)
    full = _grid_from_table(VERIFIED_GRIDS[name])
    rep_label = CaseLabel(1, RANK1, coh_case=label.coh_case, params=label.params,
                          permutation=label.permutation)
    res = SemifreeResolution(DgSpec(rep), full, rep_label)
    res.normalization = {"status": iso.status, "representative": name}
    if iso.status == "Witness":
        res.normalization["permutation"] = [p + 1 for p in iso.witness.permutation]
        res.normalization["scales"] = [str(d) for d in iso.witness.scales]
    else:
        res.normalization["root_requirements"] = [r.as_dict() for r in iso.root_requirements]
    return res


# -- Ext-algebras -------------------------------------------------------------------


def ext_algebra(res: SemifreeResolution) -> FinAlg:
    """The scalar commutant {A : A d = d A} of the resolution differential,
    packaged as an algebra by structure constants."""
    m = res.size
    n = res.spec.n
    rows = res.d
    basis1 = graded_basis(n, 1)
    # Unknowns a[j][l], row-major.  Equation blocks: for each (j, l) and each
    # degree-1 monomial, sum_k a[j][k] d[k][l] - d[j][k] a[k][l] = 0.
    eqs = []
    for j in range(m):
        for l in range(m):
            for mono in basis1:
                row = [Q(0)] * (m * m)
                for k in range(m):
                    c = rows[k][l].terms.get(mono, Q(0))
                    if c != 0:
                        row[j * m + k] += c
                    c = rows[j][k].terms.get(mono, Q(0))
                    if c != 0:
                        row[k * m + l] -= c
                if any(row):
                    eqs.append(row)
    basis_vecs = kernel_basis(Mat(eqs)) if eqs else [
        tuple(Q(1) if idx == p else Q(0) for idx in range(m * m)) for p in range(m * m)
    ]
    mats = [Mat([[v[j * m + l] for l in range(m)] for j in range(m)]) for v in basis_vecs]
    return FinAlg.from_matrix_algebra(mats)
