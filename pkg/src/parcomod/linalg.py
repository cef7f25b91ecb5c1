"""Dense exact matrices, reduced row echelon form and subspace lattice ops.

Everything is over a CyclotomicField; pivoting is deterministic
(first nonzero column, rows in order) so echelon bases are canonical and
Subspace equality is entrywise equality of the echelon matrices.
"""
from __future__ import annotations

from .field import CyclotomicField, FieldElem


class DimensionMismatchError(ValueError):
    """Raised when shapes or ambient dimensions are incompatible."""


class ExactMatrix:
    """Dense matrix with FieldElem entries (rows: list of lists)."""

    __slots__ = ("field", "rows", "nrows", "ncols")

    def __init__(self, field: CyclotomicField, rows, ncols: int | None = None):
        self.field = field
        self.rows = [list(r) for r in rows]
        self.nrows = len(self.rows)
        if self.nrows:
            self.ncols = len(self.rows[0])
            for r in self.rows:
                if len(r) != self.ncols:
                    raise DimensionMismatchError("ragged rows")
        else:
            if ncols is None:
                raise DimensionMismatchError("empty matrix needs an explicit width")
            self.ncols = ncols

    @staticmethod
    def zero(field, nrows, ncols) -> "ExactMatrix":
        z = field.zero()
        return ExactMatrix(field, [[z] * ncols for _ in range(nrows)], ncols)

    @staticmethod
    def identity(field, n) -> "ExactMatrix":
        z, o = field.zero(), field.one()
        return ExactMatrix(field, [[o if i == j else z for j in range(n)] for i in range(n)], n)

    def copy(self) -> "ExactMatrix":
        return ExactMatrix(self.field, [list(r) for r in self.rows], self.ncols)

    def __eq__(self, other):
        return (
            isinstance(other, ExactMatrix)
            and self.nrows == other.nrows
            and self.ncols == other.ncols
            and self.rows == other.rows
        )

    def __repr__(self):
        return f"<ExactMatrix {self.nrows}x{self.ncols} over {self.field!r}>"

    def transpose(self) -> "ExactMatrix":
        return ExactMatrix(
            self.field,
            [[self.rows[i][j] for i in range(self.nrows)] for j in range(self.ncols)],
            self.nrows,
        )

    def __mul__(self, other: "ExactMatrix") -> "ExactMatrix":
        if not isinstance(other, ExactMatrix):
            return NotImplemented
        if self.ncols != other.nrows:
            raise DimensionMismatchError(f"{self.ncols} != {other.nrows}")
        z = self.field.zero()
        out = []
        ot = other.transpose().rows
        for r in self.rows:
            row = []
            for c in ot:
                acc = z
                for a, b in zip(r, c):
                    if a and b:
                        acc = acc + a * b
                row.append(acc)
            out.append(row)
        return ExactMatrix(self.field, out, other.ncols)

    def apply(self, vec: list[FieldElem]) -> list[FieldElem]:
        if len(vec) != self.ncols:
            raise DimensionMismatchError("vector length mismatch")
        z = self.field.zero()
        out = []
        for r in self.rows:
            acc = z
            for a, b in zip(r, vec):
                if a and b:
                    acc = acc + a * b
            out.append(acc)
        return out


def rref(m: ExactMatrix) -> tuple[ExactMatrix, int, list[int]]:
    """Canonical reduced row echelon form; returns (R, rank, pivot columns)."""
    rows = [list(r) for r in m.rows]
    nrows, ncols = m.nrows, m.ncols
    pivots = []
    pr = 0
    for pc in range(ncols):
        sel = None
        for i in range(pr, nrows):
            if rows[i][pc]:
                sel = i
                break
        if sel is None:
            continue
        rows[pr], rows[sel] = rows[sel], rows[pr]
        inv = rows[pr][pc].inverse()
        rows[pr] = [inv * x for x in rows[pr]]
        for i in range(nrows):
            if i != pr and rows[i][pc]:
                f = rows[i][pc]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[pr])]
        pivots.append(pc)
        pr += 1
        if pr == nrows:
            break
    return ExactMatrix(m.field, rows, ncols), pr, pivots


def kernel_basis(m: ExactMatrix) -> list[list[FieldElem]]:
    """Basis of the right kernel {x : m x = 0}, canonical order by free column."""
    r, rank, pivots = rref(m)
    field = m.field
    z, o = field.zero(), field.one()
    pivot_set = set(pivots)
    free = [j for j in range(m.ncols) if j not in pivot_set]
    basis = []
    for fj in free:
        v = [z] * m.ncols
        v[fj] = o
        for i, pj in enumerate(pivots):
            v[pj] = -r.rows[i][fj]
        basis.append(v)
    return basis


def solve(m: ExactMatrix, rhs: list[FieldElem]) -> list[FieldElem] | None:
    """One solution of m x = rhs, or None if inconsistent."""
    aug = ExactMatrix(m.field, [row + [b] for row, b in zip(m.rows, rhs)], m.ncols + 1)
    r, rank, pivots = rref(aug)
    if m.ncols in pivots:
        return None
    z = m.field.zero()
    x = [z] * m.ncols
    for i, pj in enumerate(pivots):
        x[pj] = r.rows[i][m.ncols]
    return x


class Subspace:
    """Subspace of k^n held as a canonical reduced-row-echelon basis."""

    __slots__ = ("field", "ambient_dim", "basis", "pivots", "_pivot_row")

    def __init__(self, field, ambient_dim: int, echelon_rows, pivots):
        self.field = field
        self.ambient_dim = ambient_dim
        self.basis = echelon_rows  # list of lists, already canonical
        self.pivots = pivots
        self._pivot_row = {p: i for i, p in enumerate(pivots)}

    @staticmethod
    def from_vectors(field, ambient_dim: int, vectors) -> "Subspace":
        vectors = list(vectors)
        if not vectors:
            return Subspace(field, ambient_dim, [], [])
        m = ExactMatrix(field, vectors, ambient_dim)
        if m.ncols != ambient_dim:
            raise DimensionMismatchError("vector length != ambient dimension")
        r, rank, pivots = rref(m)
        return Subspace(field, ambient_dim, r.rows[:rank], pivots)

    @staticmethod
    def full(field, ambient_dim: int) -> "Subspace":
        eye = ExactMatrix.identity(field, ambient_dim)
        return Subspace(field, ambient_dim, eye.rows, list(range(ambient_dim)))

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __eq__(self, other):
        return (
            isinstance(other, Subspace)
            and self.ambient_dim == other.ambient_dim
            and self.basis == other.basis
        )

    def __repr__(self):
        return f"<Subspace dim {self.dim} of k^{self.ambient_dim}>"

    def _same_ambient(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim:
            raise DimensionMismatchError("ambient dimension mismatch")

    def reduce(self, vec: list[FieldElem]) -> list[FieldElem]:
        """Residue of vec after eliminating all pivot coordinates."""
        if len(vec) != self.ambient_dim:
            raise DimensionMismatchError("vector length mismatch")
        v = list(vec)
        for p, i in self._pivot_row.items():
            c = v[p]
            if c:
                row = self.basis[i]
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def contains_space(self, other: "Subspace") -> bool:
        self._same_ambient(other)
        return all(self.contains(v) for v in other.basis)

    def coordinates(self, vec) -> list[FieldElem] | None:
        """Coefficients of vec over the echelon basis, or None if outside."""
        if len(vec) != self.ambient_dim:
            raise DimensionMismatchError("vector length mismatch")
        v = list(vec)
        coords = []
        for i, row in enumerate(self.basis):
            c = v[self.pivots[i]]
            coords.append(c)
            if c:
                v = [a - c * b for a, b in zip(v, row)]
        if any(v):
            return None
        return coords

    def sum(self, other: "Subspace") -> "Subspace":
        self._same_ambient(other)
        return Subspace.from_vectors(self.field, self.ambient_dim, self.basis + other.basis)

    def intersection(self, other: "Subspace") -> "Subspace":
        """Kernel of the stacked coefficient system (Zassenhaus-style)."""
        self._same_ambient(other)
        if not self.basis or not other.basis:
            return Subspace(self.field, self.ambient_dim, [], [])
        # x in U cap V written as sum a_i u_i = sum b_j v_j
        cols = len(self.basis) + len(other.basis)
        rows = []
        for k in range(self.ambient_dim):
            row = [u[k] for u in self.basis] + [-v[k] for v in other.basis]
            rows.append(row)
        ker = kernel_basis(ExactMatrix(self.field, rows, cols))
        vecs = []
        z = self.field.zero()
        for sol in ker:
            vec = [z] * self.ambient_dim
            for a, u in zip(sol[: len(self.basis)], self.basis):
                if a:
                    vec = [x + a * y for x, y in zip(vec, u)]
            vecs.append(vec)
        return Subspace.from_vectors(self.field, self.ambient_dim, vecs)

    def preimage(self, matrix: ExactMatrix) -> "Subspace":
        """{x : matrix @ x in self}; matrix maps k^m -> k^ambient."""
        if matrix.nrows != self.ambient_dim:
            raise DimensionMismatchError("map target mismatch")
        proj = self.complement_projection()
        comp = proj * matrix
        return Subspace.from_vectors(
            matrix.field, matrix.ncols, kernel_basis(comp)
        )

    def complement_projection(self) -> ExactMatrix:
        """Projection onto the complement spanned by non-pivot coordinates.

        Rows are indexed by the non-pivot coordinates in increasing order; the
        composite with the inclusion of the complement is the identity, and the
        kernel is exactly this subspace.
        """
        z, o = self.field.zero(), self.field.one()
        free = [j for j in range(self.ambient_dim) if j not in self._pivot_row]
        rows = []
        for fj in free:
            row = [z] * self.ambient_dim
            row[fj] = o
            for p, i in self._pivot_row.items():
                row[p] = -self.basis[i][fj]
            rows.append(row)
        return ExactMatrix(self.field, rows, self.ambient_dim)

    def complement_coords(self) -> list[int]:
        return [j for j in range(self.ambient_dim) if j not in self._pivot_row]


class Echelon:
    """Incremental reduced echelon of vectors, for closure computations.

    Vectors are dense lists of FieldElem. Rows are kept fully reduced
    (RREF invariant) so membership tests are single sweeps; insertion
    order determines nothing but the work done, the final row set is
    canonical for the spanned subspace.
    """

    __slots__ = ("field", "ambient_dim", "rows", "pivots", "_pivot_row")

    def __init__(self, field, ambient_dim: int):
        self.field = field
        self.ambient_dim = ambient_dim
        self.rows: list[list[FieldElem]] = []
        self.pivots: list[int] = []
        self._pivot_row: dict[int, int] = {}

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec) -> list[FieldElem]:
        v = list(vec)
        for p, i in self._pivot_row.items():
            c = v[p]
            if c:
                row = self.rows[i]
                v = [a - c * b for a, b in zip(v, row)]
        return v

    def insert(self, vec) -> int | None:
        """Reduce vec and adjoin it; returns the new pivot or None if dependent."""
        v = self.reduce(vec)
        pivot = None
        for j, c in enumerate(v):
            if c:
                pivot = j
                break
        if pivot is None:
            return None
        inv = v[pivot].inverse()
        v = [inv * x for x in v]
        # back-substitute into existing rows to keep full reduction
        for i, row in enumerate(self.rows):
            c = row[pivot]
            if c:
                self.rows[i] = [a - c * b for a, b in zip(row, v)]
        self.rows.append(v)
        self.pivots.append(pivot)
        self._pivot_row[pivot] = len(self.rows) - 1
        return pivot

    def contains(self, vec) -> bool:
        return not any(self.reduce(vec))

    def subspace(self) -> Subspace:
        order = sorted(range(len(self.pivots)), key=lambda i: self.pivots[i])
        rows = [self.rows[i] for i in order]
        pivots = [self.pivots[i] for i in order]
        return Subspace(self.field, self.ambient_dim, rows, pivots)
