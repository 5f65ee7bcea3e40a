"""Dense exact matrices over a FieldSpec.

Row-major, immutable after construction, entries kept canonical (see
fields.FieldSpec.canon).  Everything is plain Python arithmetic; matrix
multiplication skips zero entries, which matters a lot here because most
action matrices in the batteries are permutation-like.
"""

from __future__ import annotations

from typing import Iterable, Sequence

from .errors import SingularMatrix
from .fields import FieldSpec


class Mat:
    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: FieldSpec, data: Sequence[Sequence]):
        canon = field.canon
        rows = tuple(tuple(canon(x) for x in row) for row in data)
        if rows:
            w = len(rows[0])
            if any(len(r) != w for r in rows):
                raise ValueError("ragged rows")
        else:
            w = 0
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", w)
        object.__setattr__(self, "data", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Mat is immutable")

    # -- constructors ------------------------------------------------------

    @staticmethod
    def _raw(field: FieldSpec, rows: int, cols: int, data: tuple) -> "Mat":
        """Internal wrap of already-canonical row tuples; no per-entry work."""
        m = object.__new__(Mat)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "rows", rows)
        object.__setattr__(m, "cols", cols)
        object.__setattr__(m, "data", data)
        return m

    @staticmethod
    def zeros(field: FieldSpec, rows: int, cols: int) -> "Mat":
        return Mat._raw(field, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @staticmethod
    def identity(field: FieldSpec, n: int) -> "Mat":
        return Mat._raw(
            field, n, n, tuple(tuple(1 if i == j else 0 for j in range(n)) for i in range(n))
        )

    @staticmethod
    def permutation(field: FieldSpec, image: Sequence[int]) -> "Mat":
        """Matrix sending basis vector e_j to e_image[j]."""
        n = len(image)
        rows = [[0] * n for _ in range(n)]
        for j, i in enumerate(image):
            rows[i][j] = 1
        return Mat(field, rows)

    @staticmethod
    def column(field: FieldSpec, entries: Sequence) -> "Mat":
        return Mat(field, [[x] for x in entries])

    @staticmethod
    def from_blocks(grid: Sequence[Sequence["Mat"]]) -> "Mat":
        """Assemble a block matrix from a rectangular grid of Mats."""
        field = grid[0][0].field
        out_rows: list[tuple] = []
        width = sum(b.cols for b in grid[0])
        for block_row in grid:
            h = block_row[0].rows
            if any(b.rows != h for b in block_row):
                raise ValueError("inconsistent block heights")
            if sum(b.cols for b in block_row) != width:
                raise ValueError("inconsistent block widths")
            for i in range(h):
                row: list = []
                for b in block_row:
                    row.extend(b.data[i])
                out_rows.append(tuple(row))
        m = object.__new__(Mat)
        object.__setattr__(m, "field", field)
        object.__setattr__(m, "rows", len(out_rows))
        object.__setattr__(m, "cols", width)
        object.__setattr__(m, "data", tuple(out_rows))
        return m

    # -- basic structure ---------------------------------------------------

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Mat)
            and self.field == other.field
            and self.rows == other.rows
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.field, self.data))

    def __repr__(self) -> str:
        return f"Mat({self.field}, {self.rows}x{self.cols})"

    def entry(self, i: int, j: int):
        return self.data[i][j]

    def row(self, i: int) -> tuple:
        return self.data[i]

    def is_zero(self) -> bool:
        return all(not x for row in self.data for x in row)

    def is_identity(self) -> bool:
        if self.rows != self.cols:
            return False
        return all(
            x == (1 if i == j else 0) for i, row in enumerate(self.data) for j, x in enumerate(row)
        )

    def transpose(self) -> "Mat":
        if not self.rows:
            return Mat.zeros(self.field, self.cols, 0)
        return Mat._raw(self.field, self.cols, self.rows, tuple(zip(*self.data)))

    # -- arithmetic --------------------------------------------------------

    def __add__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        red = self.field.reduce
        data = tuple(
            tuple(red(a + b) for a, b in zip(ra, rb)) for ra, rb in zip(self.data, other.data)
        )
        return Mat._raw(self.field, self.rows, self.cols, data)

    def __sub__(self, other: "Mat") -> "Mat":
        self._check_same_shape(other)
        red = self.field.reduce
        data = tuple(
            tuple(red(a - b) for a, b in zip(ra, rb)) for ra, rb in zip(self.data, other.data)
        )
        return Mat._raw(self.field, self.rows, self.cols, data)

    def __neg__(self) -> "Mat":
        red = self.field.reduce
        data = tuple(tuple(red(-a) for a in row) for row in self.data)
        return Mat._raw(self.field, self.rows, self.cols, data)

    def scale(self, c) -> "Mat":
        c = self.field.canon(c)
        red = self.field.reduce
        data = tuple(tuple(red(c * a) for a in row) for row in self.data)
        return Mat._raw(self.field, self.rows, self.cols, data)

    def __matmul__(self, other: "Mat") -> "Mat":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        red = self.field.reduce
        bdata = other.data
        ncols = other.cols
        out = []
        for arow in self.data:
            acc = [0] * ncols
            for k, a in enumerate(arow):
                if not a:
                    continue
                brow = bdata[k]
                if a == 1:
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] += b
                else:
                    for j, b in enumerate(brow):
                        if b:
                            acc[j] += a * b
            out.append(tuple(red(x) for x in acc))
        m = object.__new__(Mat)
        object.__setattr__(m, "field", self.field)
        object.__setattr__(m, "rows", self.rows)
        object.__setattr__(m, "cols", ncols)
        object.__setattr__(m, "data", tuple(out))
        return m

    def _check_same_shape(self, other: "Mat") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} vs {other.rows}x{other.cols}")

    # -- elimination -------------------------------------------------------

    def rref(self) -> tuple["Mat", tuple[int, ...]]:
        """Reduced row echelon form and the pivot column indices."""
        f = self.field
        work = [list(row) for row in self.data]
        nr, nc = self.rows, self.cols
        pivots: list[int] = []
        r = 0
        for c in range(nc):
            if r == nr:
                break
            choice = -1
            for i in range(r, nr):
                x = work[i][c]
                if x:
                    if choice < 0:
                        choice = i
                    if x == 1 or x == -1:
                        choice = i
                        break
            if choice < 0:
                continue
            work[r], work[choice] = work[choice], work[r]
            pv = work[r][c]
            if pv != 1:
                inv = f.inv(pv)
                work[r] = [f.reduce(x * inv) for x in work[r]]
            for i in range(nr):
                if i != r and work[i][c]:
                    m = work[i][c]
                    work[i] = [f.reduce(x - m * y) for x, y in zip(work[i], work[r])]
            pivots.append(c)
            r += 1
        return Mat(f, work), tuple(pivots)

    def rank(self) -> int:
        return len(self.rref()[1])

    def nullspace(self) -> list["Mat"]:
        """Canonical kernel basis as column vectors, one per free column of
        the reduced echelon form, ordered by ascending free column index."""
        red, pivots = self.rref()
        f = self.field
        pivset = set(pivots)
        basis = []
        for free in range(self.cols):
            if free in pivset:
                continue
            v = [0] * self.cols
            v[free] = 1
            for i, pc in enumerate(pivots):
                x = red.data[i][free]
                if x:
                    v[pc] = f.neg(x)
            basis.append(Mat.column(f, v))
        return basis

    def inverse(self) -> "Mat":
        return solve_and_invert(self)

    def solve(self, rhs: "Mat") -> "Mat":
        return solve_and_invert(self, rhs)


def mat_mul(a: Mat, b: Mat) -> Mat:
    return a @ b


def mat_rank(a: Mat) -> int:
    return a.rank()


def kron(a: Mat, b: Mat) -> Mat:
    """Kronecker product, left factor major: entry at
    (i*b.rows + k, j*b.cols + l) is a[i,j]*b[k,l]."""
    f = a.field
    red = f.reduce
    br, bc = b.rows, b.cols
    out = [[0] * (a.cols * bc) for _ in range(a.rows * br)]
    for i, arow in enumerate(a.data):
        for j, x in enumerate(arow):
            if not x:
                continue
            ri, cj = i * br, j * bc
            if x == 1:
                for k, brow in enumerate(b.data):
                    orow = out[ri + k]
                    for l, y in enumerate(brow):
                        if y:
                            orow[cj + l] = y
            else:
                for k, brow in enumerate(b.data):
                    orow = out[ri + k]
                    for l, y in enumerate(brow):
                        if y:
                            orow[cj + l] = red(x * y)
    m = object.__new__(Mat)
    object.__setattr__(m, "field", f)
    object.__setattr__(m, "rows", a.rows * br)
    object.__setattr__(m, "cols", a.cols * bc)
    object.__setattr__(m, "data", tuple(tuple(r) for r in out))
    return m


def hstack(mats: Iterable[Mat]) -> Mat:
    return Mat.from_blocks([list(mats)])


def vstack(mats: Iterable[Mat]) -> Mat:
    return Mat.from_blocks([[m] for m in mats])


def solve_and_invert(a: Mat, rhs: Mat | None = None) -> Mat:
    """Inverse of a (rhs None) or the unique solution of a @ x = rhs.

    Raises:
        SingularMatrix: if a is not square or not invertible.
    """
    f = a.field
    n = a.rows
    if a.cols != n:
        raise SingularMatrix(f"need a square matrix, got {a.rows}x{a.cols}")
    if rhs is None:
        rhs = Mat.identity(f, n)
    if rhs.rows != n:
        raise ValueError(f"rhs has {rhs.rows} rows, expected {n}")
    aug = Mat.from_blocks([[a, rhs]])
    red, pivots = aug.rref()
    if len(pivots) < n or any(pc >= n for pc in pivots):
        raise SingularMatrix(f"matrix of size {n} has rank {sum(1 for pc in pivots if pc < n)}")
    return Mat(f, [row[n:] for row in red.data])


def intertwiner_basis(
    field: FieldSpec,
    dims: tuple[int, int],
    constraints: Sequence[tuple[Mat, Mat]],
) -> list[Mat]:
    """Basis of the space of m x n matrices M with a @ M == M @ b for every
    constraint pair (a, b), where dims == (n, m), a is m x m and b is n x n.

    With module actions as constraints this computes the space of
    intertwiners V -> W, via the row-major identity
    vec(a@M - M@b) == (kron(a, I) - kron(I, b^T)) @ vec(M).
    """
    n, m = dims
    if n < 0 or m < 0:
        raise ValueError(f"bad dims {dims}")
    size = m * n
    blocks = []
    im, in_ = Mat.identity(field, m), Mat.identity(field, n)
    for a, b in constraints:
        if a.rows != m or a.cols != m:
            raise ValueError(f"left constraint must be {m}x{m}, got {a.rows}x{a.cols}")
        if b.rows != n or b.cols != n:
            raise ValueError(f"right constraint must be {n}x{n}, got {b.rows}x{b.cols}")
        blocks.append([kron(a, in_) - kron(im, b.transpose())])
    if not blocks:
        stacked = Mat.zeros(field, 1, size)
    else:
        stacked = Mat.from_blocks(blocks)
    out = []
    for v in stacked.nullspace():
        flat = [v.data[k][0] for k in range(size)]
        out.append(Mat(field, [flat[i * n : (i + 1) * n] for i in range(m)]))
    return out
