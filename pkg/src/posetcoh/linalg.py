"""Exact linear algebra over Q and F_p.

Matrices are small dense row-major tables of exact scalars (``Fraction`` for
Q, reduced ``int`` for F_p).  Elimination always picks the first nonzero
entry of a column as pivot, so every basis returned here is reproducible.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import FieldMismatch, FormatError, NoSolution, NotAComplex, ShapeError


class Field:
    """A field of exact scalars.  Elements are plain Python numbers."""

    name: str

    def __call__(self, value):
        raise NotImplementedError

    def reduce(self, x):
        return x

    def inv(self, x):
        raise NotImplementedError

    def format(self, x) -> str:
        return str(x)

    def __eq__(self, other):
        return isinstance(other, Field) and other.name == self.name

    def __hash__(self):
        return hash(self.name)

    def __repr__(self):
        return f"Field({self.name!r})"


class RationalField(Field):
    name = "Q"

    def __call__(self, value):
        if isinstance(value, str):
            try:
                return Fraction(value.strip().replace("−", "-"))
            except ValueError as exc:
                raise FormatError(f"bad rational literal {value!r}") from exc
        return Fraction(value)

    def inv(self, x):
        return 1 / Fraction(x)


class PrimeField(Field):
    def __init__(self, p: int):
        if p < 2 or any(p % k == 0 for k in range(2, int(p**0.5) + 1)):
            raise FormatError(f"{p} is not prime")
        self.p = p
        self.name = f"Fp:{p}"

    def __call__(self, value):
        if isinstance(value, str):
            value = RationalField()(value)
        if isinstance(value, Fraction):
            if value.denominator % self.p == 0:
                raise FormatError(f"{value} has no image in F_{self.p}")
            return value.numerator * pow(value.denominator, -1, self.p) % self.p
        return int(value) % self.p

    def reduce(self, x):
        return x % self.p

    def inv(self, x):
        if x % self.p == 0:
            raise ZeroDivisionError("inverse of zero")
        return pow(x, -1, self.p)

    def format(self, x) -> str:
        return str(x % self.p)


QQ = RationalField()


def field_from_tag(tag: str) -> Field:
    """Parse ``"Q"`` or ``"Fp:p"``."""
    tag = tag.strip()
    if tag in ("Q", "QQ"):
        return QQ
    if tag.startswith("Fp:"):
        try:
            return PrimeField(int(tag[3:]))
        except ValueError as exc:
            raise FormatError(f"bad field tag {tag!r}") from exc
    raise FormatError(f"bad field tag {tag!r}")


# ---------------------------------------------------------------------------
# Matrices


class Matrix:
    """An exact ``rows x cols`` matrix.  Treat as immutable."""

    __slots__ = ("field", "rows", "cols", "data")

    def __init__(self, field: Field, rows: int, cols: int, data: list[list]):
        self.field = field
        self.rows = rows
        self.cols = cols
        self.data = data

    # construction -------------------------------------------------------
    @classmethod
    def from_rows(cls, field: Field, rows: Sequence[Sequence], cols: int | None = None) -> "Matrix":
        data = [[field(x) for x in r] for r in rows]
        ncols = len(data[0]) if data else (cols or 0)
        if cols is not None and data and ncols != cols:
            raise ShapeError(f"expected {cols} columns, got {ncols}")
        if any(len(r) != ncols for r in data):
            raise ShapeError("ragged matrix rows")
        return cls(field, len(data), ncols, data)

    @classmethod
    def zeros(cls, field: Field, rows: int, cols: int) -> "Matrix":
        return cls(field, rows, cols, [[0] * cols for _ in range(rows)])

    @classmethod
    def identity(cls, field: Field, n: int) -> "Matrix":
        data = [[0] * n for _ in range(n)]
        for i in range(n):
            data[i][i] = 1
        return cls(field, n, n, data)

    @classmethod
    def from_columns(cls, field: Field, columns: Sequence[Sequence], rows: int) -> "Matrix":
        data = [[col[i] for col in columns] for i in range(rows)]
        return cls(field, rows, len(columns), data)

    # basic protocol ----------------------------------------------------
    @property
    def shape(self) -> tuple[int, int]:
        return self.rows, self.cols

    def __repr__(self):
        body = "; ".join(" ".join(self.field.format(x) for x in r) for r in self.data)
        return f"Matrix<{self.field.name} {self.rows}x{self.cols}>[{body}]"

    def __eq__(self, other):
        if not isinstance(other, Matrix):
            return NotImplemented
        return self.shape == other.shape and self.field == other.field and self.data == other.data

    def __hash__(self):
        return hash((self.shape, tuple(map(tuple, self.data))))

    def tolist(self) -> list[list]:
        return [list(r) for r in self.data]

    def to_json(self) -> list[list[str]]:
        return [[self.field.format(x) for x in r] for r in self.data]

    def column(self, j: int) -> list:
        return [r[j] for r in self.data]

    def is_zero(self) -> bool:
        return all(x == 0 for r in self.data for x in r)

    def _check(self, other: "Matrix"):
        if other.field != self.field:
            raise FieldMismatch(f"{self.field.name} vs {other.field.name}")

    # arithmetic ----------------------------------------------------------
    def __matmul__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.cols != other.rows:
            raise ShapeError(f"cannot multiply {self.shape} by {other.shape}")
        red = self.field.reduce
        ocols = other.cols
        odata = other.data
        out = []
        for row in self.data:
            acc = [0] * ocols
            for k, a in enumerate(row):
                if a == 0:
                    continue
                orow = odata[k]
                for j in range(ocols):
                    b = orow[j]
                    if b != 0:
                        acc[j] += a * b
            out.append([red(x) for x in acc])
        return Matrix(self.field, self.rows, ocols, out)

    def __add__(self, other: "Matrix") -> "Matrix":
        self._check(other)
        if self.shape != other.shape:
            raise ShapeError(f"cannot add {self.shape} and {other.shape}")
        red = self.field.reduce
        return Matrix(self.field, self.rows, self.cols,
                      [[red(a + b) for a, b in zip(r, s)] for r, s in zip(self.data, other.data)])

    def __neg__(self) -> "Matrix":
        red = self.field.reduce
        return Matrix(self.field, self.rows, self.cols, [[red(-a) for a in r] for r in self.data])

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = self.field(c)
        red = self.field.reduce
        return Matrix(self.field, self.rows, self.cols, [[red(c * a) for a in r] for r in self.data])

    @property
    def T(self) -> "Matrix":
        return Matrix(self.field, self.cols, self.rows,
                      [[self.data[i][j] for i in range(self.rows)] for j in range(self.cols)])

    def submatrix(self, rows: Sequence[int], cols: Sequence[int]) -> "Matrix":
        return Matrix(self.field, len(rows), len(cols), [[self.data[i][j] for j in cols] for i in rows])

    def row_slice(self, start: int, stop: int) -> "Matrix":
        return Matrix(self.field, stop - start, self.cols, [list(r) for r in self.data[start:stop]])

    def col_slice(self, start: int, stop: int) -> "Matrix":
        return Matrix(self.field, self.rows, stop - start, [r[start:stop] for r in self.data])

    # elimination ----------------------------------------------------------
    def rref(self) -> tuple[list[list], list[int]]:
        """Reduced row echelon form as ``(rows, pivot_columns)``."""
        return _rref(self.field, self.data, self.cols)

    def rank(self) -> int:
        return len(_rref(self.field, self.data, self.cols)[1])


def _rref(field: Field, data: list[list], ncols: int) -> tuple[list[list], list[int]]:
    rows = [list(r) for r in data]
    red = field.reduce
    pivots: list[int] = []
    r = 0
    nrows = len(rows)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if rows[i][c] != 0:
                piv = i
                break
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        prow = rows[r]
        lead = prow[c]
        if lead != 1:
            inv = field.inv(lead)
            prow = [red(x * inv) if x != 0 else 0 for x in prow]
            rows[r] = prow
        support = [j for j in range(c, ncols) if prow[j] != 0]
        for i in range(nrows):
            if i == r:
                continue
            row = rows[i]
            f = row[c]
            if f != 0:
                for j in support:
                    row[j] = red(row[j] - f * prow[j])
        pivots.append(c)
        r += 1
    return rows, pivots


# ---------------------------------------------------------------------------
# Derived operations


def stack_h(field: Field, blocks: Sequence[Matrix], rows: int | None = None) -> Matrix:
    """Concatenate matrices side by side."""
    if not blocks:
        return Matrix.zeros(field, rows or 0, 0)
    nrows = blocks[0].rows
    if any(b.rows != nrows for b in blocks):
        raise ShapeError("row counts differ in horizontal stack")
    data = [sum((b.data[i] for b in blocks), []) for i in range(nrows)]
    return Matrix(field, nrows, sum(b.cols for b in blocks), data)


def stack_v(field: Field, blocks: Sequence[Matrix], cols: int | None = None) -> Matrix:
    """Stack matrices on top of each other."""
    if not blocks:
        return Matrix.zeros(field, 0, cols or 0)
    ncols = blocks[0].cols
    if any(b.cols != ncols for b in blocks):
        raise ShapeError("column counts differ in vertical stack")
    data = [list(r) for b in blocks for r in b.data]
    return Matrix(field, len(data), ncols, data)


def block_matrix(field: Field, row_dims: Sequence[int], col_dims: Sequence[int],
                 blocks: dict[tuple[int, int], Matrix]) -> Matrix:
    """Assemble a matrix from sparse blocks ``{(i, j): M}``; missing blocks are zero."""
    roff = [0]
    for d in row_dims:
        roff.append(roff[-1] + d)
    coff = [0]
    for d in col_dims:
        coff.append(coff[-1] + d)
    out = Matrix.zeros(field, roff[-1], coff[-1])
    for (i, j), m in blocks.items():
        if m.shape != (row_dims[i], col_dims[j]):
            raise ShapeError(f"block {(i, j)} has shape {m.shape}, expected {(row_dims[i], col_dims[j])}")
        r0, c0 = roff[i], coff[j]
        for a, row in enumerate(m.data):
            target = out.data[r0 + a]
            for b, x in enumerate(row):
                if x != 0:
                    target[c0 + b] = x
    return out


def block_diag(field: Field, blocks: Sequence[Matrix]) -> Matrix:
    return block_matrix(field, [b.rows for b in blocks], [b.cols for b in blocks],
                        {(k, k): b for k, b in enumerate(blocks)})


def rank(m: Matrix) -> int:
    return m.rank()


def kernel_basis(m: Matrix) -> Matrix:
    """Columns form a basis of ``{x : m x = 0}``, one per free column, in column order."""
    return kernel_with_free(m)[0]


def kernel_with_free(m: Matrix) -> tuple[Matrix, list[int]]:
    """Kernel basis plus the free column indices.

    The rows of the basis at the free indices form an identity matrix, so the
    coordinates of a kernel vector ``v`` are simply ``v[free]``.
    """
    rows, pivots = m.rref()
    pivset = set(pivots)
    free = [j for j in range(m.cols) if j not in pivset]
    red = m.field.reduce
    columns = []
    for f in free:
        v = [0] * m.cols
        v[f] = 1
        for i, c in enumerate(pivots):
            x = rows[i][f]
            if x != 0:
                v[c] = red(-x)
        columns.append(v)
    return Matrix.from_columns(m.field, columns, m.cols), free


def image_basis(m: Matrix) -> Matrix:
    """The pivot columns of ``m``: a basis of its column space."""
    _, pivots = m.rref()
    return m.submatrix(range(m.rows), pivots)


def left_kernel_basis(m: Matrix) -> Matrix:
    """Rows form a basis of ``{y : y m = 0}``."""
    return kernel_basis(m.T).T


def is_injective(m: Matrix) -> bool:
    return m.rank() == m.cols


def is_surjective(m: Matrix) -> bool:
    return m.rank() == m.rows


def solve(a: Matrix, b: Matrix) -> Matrix:
    """One solution ``x`` of ``a x = b`` (free variables set to zero).

    Raises:
        NoSolution: if some column of ``b`` is not in the column space of ``a``.
    """
    a._check(b)
    if a.rows != b.rows:
        raise ShapeError(f"cannot solve {a.shape} against {b.shape}")
    aug = [ra + rb for ra, rb in zip(a.data, b.data)]
    rows, pivots = _rref(a.field, aug, a.cols + b.cols)
    if pivots and pivots[-1] >= a.cols:
        raise NoSolution("right-hand side is not in the column space")
    x = [[0] * b.cols for _ in range(a.cols)]
    for i, c in enumerate(pivots):
        x[c] = rows[i][a.cols:]
    return Matrix(a.field, a.cols, b.cols, x)


def right_inverse(m: Matrix) -> Matrix:
    """``s`` with ``m s = 1``; ``m`` must have full row rank."""
    return solve(m, Matrix.identity(m.field, m.rows))


def left_inverse(m: Matrix) -> Matrix:
    """``s`` with ``s m = 1``; ``m`` must have full column rank."""
    return right_inverse(m.T).T


def det(m: Matrix):
    if m.rows != m.cols:
        raise ShapeError("determinant of a non-square matrix")
    f = m.field
    rows = [list(r) for r in m.data]
    n = m.rows
    result = f(1)
    for c in range(n):
        piv = next((i for i in range(c, n) if rows[i][c] != 0), None)
        if piv is None:
            return f(0)
        if piv != c:
            rows[c], rows[piv] = rows[piv], rows[c]
            result = f.reduce(-result)
        lead = rows[c][c]
        result = f.reduce(result * lead)
        inv = f.inv(lead)
        for i in range(c + 1, n):
            factor = rows[i][c]
            if factor != 0:
                factor = f.reduce(factor * inv)
                for j in range(c, n):
                    rows[i][j] = f.reduce(rows[i][j] - factor * rows[c][j])
    return result


def compound(m: Matrix, j: int) -> Matrix:
    """The ``j``-th compound matrix: all ``j x j`` minors, subsets in lexicographic order."""
    row_sets = list(combinations(range(m.rows), j))
    col_sets = list(combinations(range(m.cols), j))
    if j == 0:
        return Matrix.identity(m.field, 1)
    data = [[det(m.submatrix(rs, cs)) for cs in col_sets] for rs in row_sets]
    return Matrix(m.field, len(row_sets), len(col_sets), data)


def span_contains(basis: Matrix, vectors: Matrix) -> bool:
    """True iff every column of ``vectors`` lies in the column span of ``basis``."""
    return stack_h(basis.field, [basis, vectors], basis.rows).rank() == basis.rank()


# ---------------------------------------------------------------------------
# Complexes


@dataclass
class CochainComplex:
    """A bounded cochain complex; ``diffs[n]`` maps degree ``n`` to ``n + 1``."""

    field: Field
    dims: dict[int, int]
    diffs: dict[int, Matrix] = dc_field(default_factory=dict)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> Matrix:
        m = self.diffs.get(n)
        if m is None:
            return Matrix.zeros(self.field, self.dim(n + 1), self.dim(n))
        return m

    @property
    def degrees(self) -> range:
        live = [n for n, k in self.dims.items() if k]
        if not live:
            return range(0)
        return range(min(live), max(live) + 1)

    def check(self) -> None:
        for n, m in self.diffs.items():
            if m.shape != (self.dim(n + 1), self.dim(n)):
                raise ShapeError(f"differential at degree {n} has shape {m.shape}")
        for n in self.degrees:
            if not (self.d(n + 1) @ self.d(n)).is_zero():
                raise NotAComplex(n)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * k for n, k in self.dims.items())


@dataclass
class ChainComplex:
    """A bounded chain complex; ``diffs[n]`` maps degree ``n`` to ``n - 1``."""

    field: Field
    dims: dict[int, int]
    diffs: dict[int, Matrix] = dc_field(default_factory=dict)

    def dim(self, n: int) -> int:
        return self.dims.get(n, 0)

    def d(self, n: int) -> Matrix:
        m = self.diffs.get(n)
        if m is None:
            return Matrix.zeros(self.field, self.dim(n - 1), self.dim(n))
        return m

    @property
    def degrees(self) -> range:
        live = [n for n, k in self.dims.items() if k]
        if not live:
            return range(0)
        return range(min(live), max(live) + 1)

    def check(self) -> None:
        for n, m in self.diffs.items():
            if m.shape != (self.dim(n - 1), self.dim(n)):
                raise ShapeError(f"differential at degree {n} has shape {m.shape}")
        for n in self.degrees:
            if not (self.d(n - 1) @ self.d(n)).is_zero():
                raise NotAComplex(n)

    def euler_characteristic(self) -> int:
        return sum((-1) ** n * k for n, k in self.dims.items())


def cohomology_dims(c: CochainComplex, check: bool = True) -> dict[int, int]:
    """Dimensions of ``H^n``; zero entries are dropped."""
    if check:
        c.check()
    out = {}
    ranks = {n: c.d(n).rank() for n in range(c.degrees.start - 1, c.degrees.stop)}
    for n in c.degrees:
        h = c.dim(n) - ranks[n] - ranks[n - 1]
        if h:
            out[n] = h
    return out


def homology_dims(c: ChainComplex, check: bool = True) -> dict[int, int]:
    """Dimensions of ``H_n``; zero entries are dropped."""
    if check:
        c.check()
    out = {}
    ranks = {n: c.d(n).rank() for n in range(c.degrees.start, c.degrees.stop + 1)}
    for n in c.degrees:
        h = c.dim(n) - ranks[n] - ranks[n + 1]
        if h:
            out[n] = h
    return out


def vector(field: Field, values: Iterable) -> Matrix:
    """A column vector."""
    return Matrix.from_rows(field, [[v] for v in values], cols=1)
