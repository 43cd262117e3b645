"""Dense exact matrices over a field, linear solving, and integer Smith form."""

from fractions import Fraction

from .errors import InconsistentSystemError, FieldMismatchError
from .fields import Rationals, scalar_from_json, scalar_to_json, field_to_json, field_from_json


class Matrix:
    """Dense row-major matrix with entries in one of the exact fields."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field, data):
        self.field = field
        self.data = [list(row) for row in data]
        self.rows = len(self.data)
        self.cols = len(self.data[0]) if self.rows else 0
        for row in self.data:
            if len(row) != self.cols:
                raise ValueError("ragged rows")

    @classmethod
    def zeros(cls, field, rows, cols):
        z = field.zero
        m = cls.__new__(cls)
        m.field = field
        m.rows = rows
        m.cols = cols
        m.data = [[z] * cols for _ in range(rows)]
        return m

    @classmethod
    def identity(cls, field, n):
        m = cls.zeros(field, n, n)
        for i in range(n):
            m.data[i][i] = field.one
        return m

    @classmethod
    def from_int_rows(cls, field, rows):
        conv = field.from_int
        return cls(field, [[conv(v) for v in row] for row in rows])

    def copy(self):
        return Matrix(self.field, self.data)

    def __eq__(self, other):
        return (
            isinstance(other, Matrix)
            and self.field == other.field
            and self.data == other.data
        )

    def __repr__(self):
        return f"Matrix({self.field}, {self.rows}x{self.cols})"

    def mul(self, other):
        if self.field != other.field:
            raise FieldMismatchError("matrix product across fields")
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        f = self.field
        out = Matrix.zeros(f, self.rows, other.cols)
        bt = list(zip(*other.data)) if other.data else []
        for i, arow in enumerate(self.data):
            orow = out.data[i]
            for j in range(other.cols):
                acc = f.zero
                bcol = bt[j]
                for k in range(self.cols):
                    a = arow[k]
                    if a != f.zero:
                        acc = f.add(acc, f.mul(a, bcol[k]))
                orow[j] = acc
        return out

    def add(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        f = self.field
        return Matrix(
            f,
            [
                [f.add(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ],
        )

    def sub(self, other):
        if (self.rows, self.cols) != (other.rows, other.cols):
            raise ValueError("shape mismatch")
        f = self.field
        return Matrix(
            f,
            [
                [f.sub(a, b) for a, b in zip(r1, r2)]
                for r1, r2 in zip(self.data, other.data)
            ],
        )

    def scalar_mul(self, c):
        f = self.field
        return Matrix(f, [[f.mul(c, a) for a in row] for row in self.data])

    def neg(self):
        f = self.field
        return Matrix(f, [[f.neg(a) for a in row] for row in self.data])

    def transpose(self):
        return Matrix(self.field, list(zip(*self.data)) if self.data else [])

    def kron(self, other):
        f = self.field
        out = Matrix.zeros(f, self.rows * other.rows, self.cols * other.cols)
        for i in range(self.rows):
            for j in range(self.cols):
                a = self.data[i][j]
                if a == f.zero:
                    continue
                for x in range(other.rows):
                    orow = out.data[i * other.rows + x]
                    brow = other.data[x]
                    for y in range(other.cols):
                        orow[j * other.cols + y] = f.mul(a, brow[y])
        return out

    def is_zero(self):
        z = self.field.zero
        return all(v == z for row in self.data for v in row)

    def pow(self, e):
        if e < 0:
            raise ValueError("negative powers not supported")
        if e == 0:
            if self.rows != self.cols:
                raise ValueError("power 0 needs a square matrix")
            return Matrix.identity(self.field, self.rows)
        acc = self
        for _ in range(e - 1):
            acc = acc.mul(self)
        return acc

    def flat(self):
        return [v for row in self.data for v in row]

    def to_json(self):
        f = self.field
        return {
            "field": field_to_json(f),
            "rows": self.rows,
            "cols": self.cols,
            "entries": [[scalar_to_json(f, v) for v in row] for row in self.data],
        }

    @classmethod
    def from_json(cls, obj, field=None):
        f = field if field is not None else field_from_json(obj["field"])
        m = cls(f, [[scalar_from_json(f, v) for v in row] for row in obj["entries"]])
        if m.rows != obj["rows"] or m.cols != obj["cols"]:
            raise ValueError("matrix JSON dimensions disagree with entries")
        return m


def block_diag(field, mats):
    rows = sum(m.rows for m in mats)
    cols = sum(m.cols for m in mats)
    out = Matrix.zeros(field, rows, cols)
    r = c = 0
    for m in mats:
        for i in range(m.rows):
            out.data[r + i][c : c + m.cols] = m.data[i]
        r += m.rows
        c += m.cols
    return out


def _rref(field, data, width):
    """In-place reduced row echelon form on the first `width` columns.

    Returns the pivot column list.  Columns at `width` and beyond ride along
    as an augmented part.
    """
    rows = len(data)
    pivots = []
    r = 0
    for c in range(width):
        if r >= rows:
            break
        piv = next((i for i in range(r, rows) if data[i][c] != field.zero), None)
        if piv is None:
            continue
        data[r], data[piv] = data[piv], data[r]
        s = field.inv(data[r][c])
        if s != field.one:
            data[r] = [field.mul(s, v) for v in data[r]]
        for i in range(rows):
            if i != r and data[i][c] != field.zero:
                f = data[i][c]
                prow = data[r]
                data[i] = [field.sub(v, field.mul(f, pv)) for v, pv in zip(data[i], prow)]
        pivots.append(c)
        r += 1
    return pivots


def rank_solve(M, rhs=None):
    """Exact Gaussian elimination.

    Returns (rank, kernel_basis, solution): kernel_basis has one column per
    free variable with M . kernel_basis = 0; solution solves M x = rhs when
    rhs is given (InconsistentSystem otherwise).
    """
    f = M.field
    width = M.cols
    if rhs is not None:
        if rhs.rows != M.rows:
            raise ValueError("rhs row count mismatch")
        data = [list(mr) + list(rr) for mr, rr in zip(M.data, rhs.data)]
    else:
        data = [list(r) for r in M.data]
        if not data:
            data = []
    pivots = _rref(f, data, width)
    rank = len(pivots)
    pivot_set = set(pivots)
    free = [c for c in range(width) if c not in pivot_set]
    kernel = Matrix.zeros(f, width, len(free))
    for j, fc in enumerate(free):
        kernel.data[fc][j] = f.one
        for r, pc in enumerate(pivots):
            kernel.data[pc][j] = f.neg(data[r][fc])
    solution = None
    if rhs is not None:
        for i in range(rank, M.rows):
            if any(v != f.zero for v in data[i][width:]):
                raise InconsistentSystemError("rhs not in column space")
        solution = Matrix.zeros(f, width, rhs.cols)
        for r, pc in enumerate(pivots):
            solution.data[pc] = list(data[r][width:])
    return rank, kernel, solution


def rank_of(M):
    return rank_solve(M)[0]


def pivot_columns(M):
    """Column indices of a maximal independent set, in echelon order."""
    data = [list(r) for r in M.data]
    return _rref(M.field, data, M.cols)


def _smith_step(D, U, V, t):
    rows, cols = len(D), len(D[0])
    while True:
        # pick the entry of least absolute value in the working submatrix
        best = None
        for i in range(t, rows):
            for j in range(t, cols):
                v = D[i][j]
                if v and (best is None or abs(v) < abs(D[best[0]][best[1]])):
                    best = (i, j)
        if best is None:
            return False
        bi, bj = best
        if bi != t:
            D[t], D[bi] = D[bi], D[t]
            U[t], U[bi] = U[bi], U[t]
        if bj != t:
            for row in D:
                row[t], row[bj] = row[bj], row[t]
            for row in V:
                row[t], row[bj] = row[bj], row[t]
        piv = D[t][t]
        dirty = False
        for i in range(t + 1, rows):
            if D[i][t]:
                q = D[i][t] // piv
                if q:
                    for j in range(cols):
                        D[i][j] -= q * D[t][j]
                    for j in range(len(U[0])):
                        U[i][j] -= q * U[t][j]
                if D[i][t]:
                    dirty = True
        for j in range(t + 1, cols):
            if D[t][j]:
                q = D[t][j] // piv
                if q:
                    for i in range(rows):
                        D[i][j] -= q * D[i][t]
                    for i in range(len(V)):
                        V[i][j] -= q * V[i][t]
                if D[t][j]:
                    dirty = True
        if dirty:
            continue
        # pivot must divide every remaining entry
        for i in range(t + 1, rows):
            for j in range(t + 1, cols):
                if D[i][j] % piv:
                    for jj in range(cols):
                        D[t][jj] += D[i][jj]
                    for jj in range(len(U[0])):
                        U[t][jj] += U[i][jj]
                    dirty = True
                    break
            if dirty:
                break
        if not dirty:
            if D[t][t] < 0:
                for j in range(cols):
                    D[t][j] = -D[t][j]
                for j in range(len(U[0])):
                    U[t][j] = -U[t][j]
            return True


def smith_form_with_transforms(A):
    """Integer Smith normal form with unimodular transforms.

    A is a list of int rows.  Returns (diag, U, V) with U*A*V diagonal,
    diag[i] | diag[i+1], all lists of Python ints.
    """
    rows = len(A)
    cols = len(A[0]) if rows else 0
    D = [[int(v) for v in row] for row in A]
    U = [[int(i == j) for j in range(rows)] for i in range(rows)]
    V = [[int(i == j) for j in range(cols)] for i in range(cols)]
    t = 0
    while t < min(rows, cols):
        if not _smith_step(D, U, V, t):
            break
        t += 1
    diag = [D[i][i] for i in range(min(rows, cols))]
    return diag, U, V


def smith_form(A):
    """Invariant factors of the abelian group presented by integer matrix A.

    Unit factors are dropped; zero factors (free summands) are kept at the
    end of the divisibility chain.
    """
    if hasattr(A, "data"):
        A = A.data
    rows = len(A)
    cols = len(A[0]) if rows else 0
    if rows == 0 or cols == 0:
        return [0] * cols
    diag, _, _ = smith_form_with_transforms(A)
    nontrivial = [d for d in diag if d != 1]
    # columns beyond the diagonal run are unconstrained generators
    nontrivial += [0] * (cols - len(diag))
    zeros = [d for d in nontrivial if d == 0]
    pos = [d for d in nontrivial if d != 0]
    return pos + zeros
