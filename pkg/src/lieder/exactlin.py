"""Dense exact linear algebra over the rationals.

Matrices store Fraction entries row-major.  A matrix represents a linear
map through its columns (column j is the image of basis vector j), so
composition of maps is matrix multiplication.  Reduction is plain
Gauss-Jordan: over an exact field no pivoting strategy is needed, the
first nonzero candidate wins, and every result is deterministic.  Linear
solves fix free variables to a constant (zero unless asked otherwise),
so solution picking is deterministic too.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Iterable, Optional, Sequence

Vec = tuple[Fraction, ...]

ZERO = Fraction(0)
ONE = Fraction(1)


def frac(x) -> Fraction:
    """Coerce an int, string like "-3/7", or Fraction to Fraction."""
    return x if isinstance(x, Fraction) else Fraction(x)


def vec(entries: Iterable) -> Vec:
    return tuple(frac(e) for e in entries)


def zero_vec(n: int) -> Vec:
    return (ZERO,) * n


def vec_add(u: Vec, v: Vec) -> Vec:
    return tuple(a + b for a, b in zip(u, v, strict=True))


def vec_sub(u: Vec, v: Vec) -> Vec:
    return tuple(a - b for a, b in zip(u, v, strict=True))


def vec_scale(k: Fraction, v: Vec) -> Vec:
    return tuple(k * a for a in v)


def vec_is_zero(v: Vec) -> bool:
    return all(a == 0 for a in v)


class Matrix:
    """Immutable dense matrix of Fractions."""

    __slots__ = ("rows", "cols", "data")

    def __init__(self, data: Iterable[Iterable], cols: Optional[int] = None):
        rows = tuple(vec(r) for r in data)
        if rows:
            width = len(rows[0])
            if any(len(r) != width for r in rows):
                raise ValueError("ragged rows")
            if cols is not None and cols != width:
                raise ValueError("cols mismatch")
            cols = width
        elif cols is None:
            cols = 0
        object.__setattr__(self, "rows", len(rows))
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "data", rows)

    def __setattr__(self, name, value):
        raise AttributeError("Matrix is immutable")

    @staticmethod
    def zero(rows: int, cols: int) -> "Matrix":
        return Matrix((zero_vec(cols),) * rows, cols=cols)

    @staticmethod
    def identity(n: int) -> "Matrix":
        return Matrix(
            tuple(tuple(ONE if i == j else ZERO for j in range(n)) for i in range(n)),
            cols=n,
        )

    @staticmethod
    def from_cols(cols: Sequence[Vec], rows: Optional[int] = None) -> "Matrix":
        if cols:
            rows = len(cols[0])
        elif rows is None:
            rows = 0
        return Matrix(
            tuple(tuple(c[i] for c in cols) for i in range(rows)), cols=len(cols)
        )

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, Matrix)
            and self.cols == other.cols
            and self.data == other.data
        )

    def __hash__(self) -> int:
        return hash((self.cols, self.data))

    def __repr__(self) -> str:
        body = "; ".join(" ".join(str(e) for e in r) for r in self.data)
        return f"Matrix({self.rows}x{self.cols}: {body})"

    def row(self, i: int) -> Vec:
        return self.data[i]

    def col(self, j: int) -> Vec:
        return tuple(r[j] for r in self.data)

    def entry(self, i: int, j: int) -> Fraction:
        return self.data[i][j]

    def __add__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            tuple(vec_add(a, b) for a, b in zip(self.data, other.data)),
            cols=self.cols,
        )

    def __sub__(self, other: "Matrix") -> "Matrix":
        self._same_shape(other)
        return Matrix(
            tuple(vec_sub(a, b) for a, b in zip(self.data, other.data)),
            cols=self.cols,
        )

    def __neg__(self) -> "Matrix":
        return self.scale(Fraction(-1))

    def scale(self, k) -> "Matrix":
        k = frac(k)
        return Matrix(tuple(vec_scale(k, r) for r in self.data), cols=self.cols)

    def __matmul__(self, other: "Matrix") -> "Matrix":
        if self.cols != other.rows:
            raise ValueError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        ot = other.transpose()
        return Matrix(
            tuple(
                tuple(sum(a * b for a, b in zip(r, c)) for c in ot.data)
                for r in self.data
            ),
            cols=other.cols,
        )

    def apply(self, v: Vec) -> Vec:
        """Image of the coordinate vector v under the map this matrix encodes."""
        if len(v) != self.cols:
            raise ValueError("vector length mismatch")
        return tuple(sum(a * b for a, b in zip(r, v)) for r in self.data)

    def transpose(self) -> "Matrix":
        return Matrix(
            tuple(self.col(j) for j in range(self.cols)), cols=self.rows
        )

    def hstack(self, other: "Matrix") -> "Matrix":
        if self.rows != other.rows:
            raise ValueError("row count mismatch")
        return Matrix(
            tuple(a + b for a, b in zip(self.data, other.data)),
            cols=self.cols + other.cols,
        )

    def vstack(self, other: "Matrix") -> "Matrix":
        if self.cols != other.cols:
            raise ValueError("column count mismatch")
        return Matrix(self.data + other.data, cols=self.cols)

    def is_zero(self) -> bool:
        return all(vec_is_zero(r) for r in self.data)

    def commutator(self, other: "Matrix") -> "Matrix":
        return self @ other - other @ self

    def flatten(self) -> Vec:
        """Row-major flattening, the fixed coordinate chart on matrix space."""
        return tuple(e for r in self.data for e in r)

    @staticmethod
    def unflatten(v: Vec, rows: int, cols: int) -> "Matrix":
        if len(v) != rows * cols:
            raise ValueError("length mismatch")
        return Matrix(
            tuple(v[i * cols : (i + 1) * cols] for i in range(rows)), cols=cols
        )

    def _same_shape(self, other: "Matrix") -> None:
        if self.rows != other.rows or self.cols != other.cols:
            raise ValueError("shape mismatch")


def rref(m: Matrix) -> tuple[Matrix, tuple[int, ...]]:
    """Reduced row echelon form and its pivot columns."""
    rows = [list(r) for r in m.data]
    pivots: list[int] = []
    r = 0
    for c in range(m.cols):
        pivot_row = None
        for i in range(r, len(rows)):
            if rows[i][c] != 0:
                pivot_row = i
                break
        if pivot_row is None:
            continue
        rows[r], rows[pivot_row] = rows[pivot_row], rows[r]
        inv = 1 / rows[r][c]
        rows[r] = [inv * e for e in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return Matrix(rows, cols=m.cols), tuple(pivots)


def rank(m: Matrix) -> int:
    return len(rref(m)[1])


def solve(a: Matrix, b: Matrix, free_value=0) -> Optional[Matrix]:
    """Solve a @ x = b column by column; None when inconsistent.

    Free variables are fixed to free_value, so the answer is canonical.
    """
    if a.rows != b.rows:
        raise ValueError("row count mismatch")
    free = frac(free_value)
    red, pivots = rref(a.hstack(b))
    if any(p >= a.cols for p in pivots):
        return None
    pivot_of = {p: i for i, p in enumerate(pivots)}
    free_cols = [j for j in range(a.cols) if j not in pivot_of]
    cols: list[Vec] = []
    for k in range(b.cols):
        x = [free] * a.cols
        for p, i in pivot_of.items():
            rhs = red.entry(i, a.cols + k)
            x[p] = rhs - free * sum(red.entry(i, j) for j in free_cols)
        cols.append(tuple(x))
    return Matrix.from_cols(cols, rows=a.cols)


def solve_vec(a: Matrix, v: Vec, free_value=0) -> Optional[Vec]:
    x = solve(a, Matrix.from_cols([v], rows=a.rows), free_value)
    return None if x is None else x.col(0)


@dataclass(frozen=True)
class Subspace:
    """Row span held in RREF form: strictly increasing pivots, no zero rows."""

    ambient_dim: int
    basis: Matrix
    pivots: tuple[int, ...]

    @staticmethod
    def from_rows(ambient_dim: int, rows: Iterable[Vec]) -> "Subspace":
        m = Matrix(tuple(rows), cols=ambient_dim)
        red, pivots = rref(m)
        kept = Matrix(red.data[: len(pivots)], cols=ambient_dim)
        return Subspace(ambient_dim, kept, pivots)

    @staticmethod
    def zero(ambient_dim: int) -> "Subspace":
        return Subspace.from_rows(ambient_dim, ())

    @property
    def dim(self) -> int:
        return len(self.pivots)

    def reduce(self, v: Vec) -> Vec:
        """v minus its projection onto the span; zero at every pivot after."""
        if len(v) != self.ambient_dim:
            raise ValueError("vector length mismatch")
        # RREF basis rows vanish at each other's pivots, one pass suffices
        # and the map v -> reduce(v) is linear.
        out = list(v)
        for row, p in zip(self.basis.data, self.pivots):
            c = out[p]
            if c != 0:
                out = [a - c * b for a, b in zip(out, row)]
        return tuple(out)

    def contains(self, v: Vec) -> bool:
        return vec_is_zero(self.reduce(v))

    def coordinates(self, v: Vec) -> Optional[Vec]:
        """Coefficients of v in the RREF basis, or None when v is outside."""
        coords = tuple(v[p] for p in self.pivots)
        return coords if self.contains(v) else None

    def combine(self, coords: Vec) -> Vec:
        out = zero_vec(self.ambient_dim)
        for c, row in zip(coords, self.basis.data, strict=True):
            out = vec_add(out, vec_scale(c, row))
        return out

    def sum(self, other: "Subspace") -> "Subspace":
        if self.ambient_dim != other.ambient_dim:
            raise ValueError("ambient mismatch")
        return Subspace.from_rows(
            self.ambient_dim, self.basis.data + other.basis.data
        )

    def leq(self, other: "Subspace") -> bool:
        return all(other.contains(r) for r in self.basis.data)


def kernel_basis(a: Matrix) -> Subspace:
    """Null space of a, as a subspace of the column-index coordinate space."""
    red, pivots = rref(a)
    pivot_of = {p: i for i, p in enumerate(pivots)}
    rows = []
    for f in range(a.cols):
        if f in pivot_of:
            continue
        v = [ZERO] * a.cols
        v[f] = ONE
        for p, i in pivot_of.items():
            v[p] = -red.entry(i, f)
        rows.append(tuple(v))
    return Subspace.from_rows(a.cols, rows)


def column_space(a: Matrix) -> Subspace:
    """Span of the columns of a, inside the row-index coordinate space."""
    return Subspace.from_rows(a.rows, tuple(a.col(j) for j in range(a.cols)))


@dataclass(frozen=True)
class QuotientSpace:
    """Ambient space modulo a subspace, with canonical coset representatives.

    A coset representative is the reduction of any member against the
    subspace basis; its nonzero support sits on the non-pivot coordinates,
    which therefore serve as exact class coordinates.
    """

    ambient_dim: int
    sub: Subspace
    complement: tuple[int, ...]

    @staticmethod
    def of(sub: Subspace) -> "QuotientSpace":
        comp = tuple(
            j for j in range(sub.ambient_dim) if j not in set(sub.pivots)
        )
        return QuotientSpace(sub.ambient_dim, sub, comp)

    @property
    def dim(self) -> int:
        return len(self.complement)

    def reduce(self, v: Vec) -> Vec:
        return self.sub.reduce(v)

    def class_coords(self, v: Vec) -> Vec:
        r = self.reduce(v)
        return tuple(r[j] for j in self.complement)

    def lift(self, coords: Vec) -> Vec:
        if len(coords) != self.dim:
            raise ValueError("coordinate length mismatch")
        out = [ZERO] * self.ambient_dim
        for c, j in zip(coords, self.complement):
            out[j] = frac(c)
        return tuple(out)
