"""Exact linear algebra over the rationals and graded polynomial subspaces.

Everything reduces to row echelon computations with Fraction entries.
Pivots are always the leftmost nonzero column, rows are normalized to a
leading 1 and fully reduced, so echelon forms (and hence every basis this
module produces) are canonical: independent of the input order of the
constraints and idempotent under re-reduction.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Sequence

from .errors import DimensionError, ValidationError
from .poly import Exponent, Poly, monomial_key

Row = list[Fraction]


def rref(rows: Iterable[Sequence]) -> tuple[list[Row], list[int]]:
    """Reduced row echelon form. Returns (nonzero rows, pivot columns)."""
    work: list[Row] = [[Fraction(v) for v in row] for row in rows]
    if not work:
        return [], []
    ncols = len(work[0])
    for row in work:
        if len(row) != ncols:
            raise DimensionError("ragged matrix")
    echelon: list[Row] = []
    pivots: list[int] = []
    for row in work:
        row = row[:]
        for prow, pcol in zip(echelon, pivots):
            if row[pcol]:
                factor = row[pcol]
                row = [a - factor * b for a, b in zip(row, prow)]
        pivot = next((c for c, v in enumerate(row) if v), None)
        if pivot is None:
            continue
        inv = 1 / row[pivot]
        row = [v * inv for v in row]
        # keep earlier rows reduced against the new pivot
        for idx, (prow, _) in enumerate(zip(echelon, pivots)):
            if prow[pivot]:
                factor = prow[pivot]
                echelon[idx] = [a - factor * b for a, b in zip(prow, row)]
        insert_at = next(
            (idx for idx, pc in enumerate(pivots) if pc > pivot), len(pivots)
        )
        echelon.insert(insert_at, row)
        pivots.insert(insert_at, pivot)
    return echelon, pivots


def nullspace(rows: Iterable[Sequence], ncols: int) -> list[Row]:
    """Canonical basis of the kernel of the matrix acting on column vectors.

    Basis vectors correspond to free columns in ascending order, each with
    a 1 in its free column.
    """
    echelon, pivots = rref(rows)
    pivot_set = set(pivots)
    free_cols = [c for c in range(ncols) if c not in pivot_set]
    basis: list[Row] = []
    for fc in free_cols:
        vec = [Fraction(0)] * ncols
        vec[fc] = Fraction(1)
        for prow, pcol in zip(echelon, pivots):
            vec[pcol] = -prow[fc]
        basis.append(vec)
    return basis


@dataclass
class LinearSolution:
    """Outcome of an (in)homogeneous exact linear solve.

    ``feasible`` is False exactly when the system is contradictory; then
    the basis is empty and ``particular`` is None.
    """

    feasible: bool
    particular: Row | None
    basis: list[Row]


def solve_linear(
    rows: Iterable[Sequence], ncols: int, rhs: Sequence | None = None
) -> LinearSolution:
    """Solve ``A x = b`` exactly; with ``rhs=None`` solve the kernel problem.

    The kernel basis is in canonical reduced form (deterministic pivots,
    independent of constraint order).
    """
    rows = [list(r) for r in rows]
    if rhs is None:
        return LinearSolution(True, None, nullspace(rows, ncols))
    rhs = [Fraction(v) for v in rhs]
    if len(rhs) != len(rows):
        raise DimensionError("rhs length does not match row count")
    augmented = [list(r) + [b] for r, b in zip(rows, rhs)]
    echelon, pivots = rref(augmented)
    for prow, pcol in zip(echelon, pivots):
        if pcol == ncols:
            return LinearSolution(False, None, [])
    particular = [Fraction(0)] * ncols
    for prow, pcol in zip(echelon, pivots):
        particular[pcol] = prow[ncols]
    return LinearSolution(True, particular, nullspace(rows, ncols))


class EchelonAccumulator:
    """Incremental echelon form for streaming constraint rows.

    Feeding rows one by one keeps memory proportional to the rank; the
    resulting kernel is identical to batch reduction.
    """

    def __init__(self, ncols: int):
        self.ncols = ncols
        self.rows: list[Row] = []
        self.pivots: list[int] = []

    def add_row(self, row: Sequence) -> bool:
        """Reduce and keep the row; returns True if it added rank."""
        work = [Fraction(v) for v in row]
        if len(work) != self.ncols:
            raise DimensionError("row length mismatch")
        for prow, pcol in zip(self.rows, self.pivots):
            if work[pcol]:
                factor = work[pcol]
                work = [a - factor * b for a, b in zip(work, prow)]
        pivot = next((c for c, v in enumerate(work) if v), None)
        if pivot is None:
            return False
        inv = 1 / work[pivot]
        work = [v * inv for v in work]
        for idx, prow in enumerate(self.rows):
            if prow[pivot]:
                factor = prow[pivot]
                self.rows[idx] = [a - factor * b for a, b in zip(prow, work)]
        insert_at = next(
            (i for i, pc in enumerate(self.pivots) if pc > pivot), len(self.pivots)
        )
        self.rows.insert(insert_at, work)
        self.pivots.insert(insert_at, pivot)
        return True

    def add_sparse(self, entries: dict[int, Fraction]) -> bool:
        row = [Fraction(0)] * self.ncols
        for col, val in entries.items():
            row[col] = val
        return self.add_row(row)

    @property
    def rank(self) -> int:
        return len(self.rows)

    def kernel(self) -> list[Row]:
        pivot_set = set(self.pivots)
        free_cols = [c for c in range(self.ncols) if c not in pivot_set]
        basis: list[Row] = []
        for fc in free_cols:
            vec = [Fraction(0)] * self.ncols
            vec[fc] = Fraction(1)
            for prow, pcol in zip(self.rows, self.pivots):
                vec[pcol] = -prow[fc]
            basis.append(vec)
        return basis


# -- polynomial-level helpers ----------------------------------------------


def poly_matrix(polys: Sequence[Poly]) -> tuple[list[Row], list[Exponent]]:
    """Coefficient matrix of polynomials over their joint monomial support.

    Columns are the support monomials in canonical order.
    """
    support: set[Exponent] = set()
    for f in polys:
        support.update(f.terms)
    columns = sorted(support, key=monomial_key)
    index = {m: i for i, m in enumerate(columns)}
    rows = []
    for f in polys:
        row = [Fraction(0)] * len(columns)
        for exp, coeff in f.terms.items():
            row[index[exp]] = coeff
        rows.append(row)
    return rows, columns


def reduce_poly_span(polys: Sequence[Poly], nvars: int) -> list[Poly]:
    """Canonical (echelon) basis of the span of the given polynomials."""
    nonzero = [f for f in polys if not f.is_zero()]
    if not nonzero:
        return []
    rows, columns = poly_matrix(nonzero)
    echelon, _ = rref(rows)
    return [
        Poly(nvars, {m: c for m, c in zip(columns, row) if c}) for row in echelon
    ]


def spans_equal(a: Sequence[Poly], b: Sequence[Poly], nvars: int) -> bool:
    """Exact equality of spans via canonical echelon bases."""
    return reduce_poly_span(a, nvars) == reduce_poly_span(b, nvars)


def in_span(f: Poly, basis: Sequence[Poly]) -> bool:
    """Exact membership of ``f`` in the span of ``basis``."""
    if f.is_zero():
        return True
    rows, columns = poly_matrix(list(basis) + [f])
    echelon_basis, _ = rref(rows[:-1])
    work = rows[-1]
    for prow in echelon_basis:
        pcol = next(c for c, v in enumerate(prow) if v)
        if work[pcol]:
            factor = work[pcol]
            work = [a - factor * b for a, b in zip(work, prow)]
    return all(v == 0 for v in work)


class GradedSubspace:
    """Per-degree canonical bases of a graded space of polynomials.

    Each slice is reduced to echelon form at construction, which certifies
    linear independence; every stored polynomial must be homogeneous of its
    slice degree under the supplied grading (total degree by default).
    """

    def __init__(
        self,
        nvars: int,
        slices: dict[int, Sequence[Poly]],
        grading: Sequence[int] | None = None,
    ):
        self.nvars = nvars
        self.grading = tuple(grading) if grading is not None else (1,) * nvars
        reduced: dict[int, list[Poly]] = {}
        for degree in sorted(slices):
            basis = reduce_poly_span(list(slices[degree]), nvars)
            for f in basis:
                w = f.weight(self.grading)
                if w is not None and w != degree:
                    raise ValidationError(
                        f"basis element of weight {w} stored in slice {degree}"
                    )
                if w is None:
                    raise ValidationError(
                        f"non-homogeneous element in graded slice {degree}"
                    )
            if basis:
                reduced[degree] = basis
        self.slices = reduced

    def degrees(self) -> list[int]:
        return sorted(self.slices)

    def basis(self, degree: int) -> list[Poly]:
        return list(self.slices.get(degree, []))

    def dimension(self, degree: int) -> int:
        return len(self.slices.get(degree, []))

    def all_elements(self) -> list[Poly]:
        out = []
        for degree in self.degrees():
            out.extend(self.slices[degree])
        return out

    def contains(self, f: Poly) -> bool:
        if f.is_zero():
            return True
        w = f.weight(self.grading)
        if w is None:
            parts = f.weight_decompose(self.grading)
            return all(self.contains(part) for part in parts.values())
        return in_span(f, self.slices.get(w, []))

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, GradedSubspace)
            and self.nvars == other.nvars
            and self.grading == other.grading
            and self.slices == other.slices
        )

    def __repr__(self) -> str:
        dims = {d: len(b) for d, b in sorted(self.slices.items())}
        return f"GradedSubspace(dims={dims})"
