"""Finite-dimensional Lie algebras over the rationals, with derivations.

A Lie algebra is a table of structure constants over a fixed basis.
Derivations of an algebra of dimension n live in the n*n matrix space,
flattened row-major; the derivation space, the inner derivations and
their quotient (outer derivations) are all computed as exact kernels
and spans, so every basis that comes out is the deterministic RREF one.

A LieDer pair is an algebra together with a chosen derivation; these are
the objects all the extension machinery acts on.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Mapping, Optional, Sequence

from .exactlin import (
    Matrix,
    QuotientSpace,
    Subspace,
    Vec,
    frac,
    kernel_basis,
    vec,
    vec_add,
    vec_is_zero,
    vec_scale,
    zero_vec,
)


@dataclass(frozen=True)
class Check:
    """Outcome of a verification, with the first failure spelled out."""

    ok: bool
    reason: Optional[str] = None

    def __bool__(self) -> bool:
        return self.ok

    @staticmethod
    def fail(reason: str) -> "Check":
        return Check(False, reason)


OK = Check(True)


@dataclass(frozen=True)
class LieAlgebra:
    """Structure constants c[i][j] = coordinates of [e_i, e_j]."""

    dim: int
    table: tuple[tuple[Vec, ...], ...]
    name: str = ""

    def __post_init__(self):
        if len(self.table) != self.dim or any(
            len(r) != self.dim or any(len(v) != self.dim for v in r)
            for r in self.table
        ):
            raise ValueError("structure constant table has wrong shape")

    def __eq__(self, other) -> bool:
        # the name is a label, not part of the structure
        return (
            isinstance(other, LieAlgebra)
            and self.dim == other.dim
            and self.table == other.table
        )

    def __hash__(self) -> int:
        return hash((self.dim, self.table))

    @staticmethod
    def from_brackets(
        dim: int,
        brackets: Mapping[tuple[int, int], Mapping[int, object]],
        name: str = "",
    ) -> "LieAlgebra":
        """Build from 0-based bracket data on pairs i < j; the rest is forced
        by antisymmetry."""
        table = [[list(zero_vec(dim)) for _ in range(dim)] for _ in range(dim)]
        for (i, j), image in brackets.items():
            if not (0 <= i < j < dim):
                raise ValueError(f"bracket key ({i},{j}) not an increasing pair")
            for k, q in image.items():
                if not 0 <= k < dim:
                    raise ValueError(f"bracket target index {k} out of range")
                table[i][j][k] = frac(q)
                table[j][i][k] = -frac(q)
        return LieAlgebra(
            dim,
            tuple(tuple(tuple(v) for v in row) for row in table),
            name,
        )

    @staticmethod
    def abelian(dim: int, name: str = "") -> "LieAlgebra":
        return LieAlgebra.from_brackets(dim, {}, name or f"abelian{dim}")

    def bracket_basis(self, i: int, j: int) -> Vec:
        return self.table[i][j]

    def bracket(self, u: Vec, v: Vec) -> Vec:
        out = zero_vec(self.dim)
        for i, a in enumerate(u):
            if a == 0:
                continue
            for j, b in enumerate(v):
                if b == 0:
                    continue
                out = vec_add(out, vec_scale(a * b, self.table[i][j]))
        return out

    def ad(self, i: int) -> Matrix:
        """Matrix of ad(e_i) = [e_i, -]."""
        return Matrix.from_cols(
            [self.table[i][j] for j in range(self.dim)], rows=self.dim
        )

    def ad_of(self, v: Vec) -> Matrix:
        m = Matrix.zero(self.dim, self.dim)
        for i, a in enumerate(v):
            if a != 0:
                m = m + self.ad(i).scale(a)
        return m


def jacobi_check(L: LieAlgebra) -> Check:
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            for k in range(j + 1, L.dim):
                s = vec_add(
                    vec_add(
                        L.bracket(L.bracket_basis(i, j), basis_vec(L.dim, k)),
                        L.bracket(L.bracket_basis(j, k), basis_vec(L.dim, i)),
                    ),
                    L.bracket(L.bracket_basis(k, i), basis_vec(L.dim, j)),
                )
                if not vec_is_zero(s):
                    return Check.fail(f"jacobi fails on basis triple ({i},{j},{k})")
    return OK


def basis_vec(dim: int, i: int) -> Vec:
    return tuple(
        Fraction(1) if j == i else Fraction(0) for j in range(dim)
    )


@lru_cache(maxsize=None)
def center(L: LieAlgebra) -> Subspace:
    """Kernel of the stacked ad matrices."""
    stacked = Matrix.zero(0, L.dim)
    for j in range(L.dim):
        stacked = stacked.vstack(L.ad(j))
    return kernel_basis(stacked)


def leibniz_rows(L: LieAlgebra) -> Matrix:
    """Linear system whose kernel is the derivation space.

    Unknowns are the n*n entries of D, row-major.  One equation per
    increasing basis pair (i, j) and output coordinate k:
    D([e_i,e_j])_k - [D e_i, e_j]_k - [e_i, D e_j]_k = 0.
    """
    n = L.dim
    rows = []
    for i in range(n):
        for j in range(i + 1, n):
            cij = L.table[i][j]
            for k in range(n):
                row = [Fraction(0)] * (n * n)
                for l in range(n):
                    row[k * n + l] += cij[l]          # D([e_i,e_j])_k
                    row[l * n + i] -= L.table[l][j][k]  # [D e_i, e_j]_k
                    row[l * n + j] -= L.table[i][l][k]  # [e_i, D e_j]_k
                rows.append(tuple(row))
    return Matrix(rows, cols=n * n)


@lru_cache(maxsize=None)
def derivation_space(L: LieAlgebra) -> Subspace:
    return kernel_basis(leibniz_rows(L))


@lru_cache(maxsize=None)
def inner_derivations(L: LieAlgebra) -> Subspace:
    return Subspace.from_rows(
        L.dim * L.dim, tuple(L.ad(i).flatten() for i in range(L.dim))
    )


def der_basis_matrices(L: LieAlgebra) -> tuple[Matrix, ...]:
    return tuple(
        Matrix.unflatten(r, L.dim, L.dim)
        for r in derivation_space(L).basis.data
    )


def der_coordinates(L: LieAlgebra, m: Matrix) -> Optional[Vec]:
    """Coordinates of a matrix in the RREF derivation basis, if it is one."""
    return derivation_space(L).coordinates(m.flatten())


@lru_cache(maxsize=None)
def out_space(L: LieAlgebra) -> QuotientSpace:
    """Derivations modulo inner ones, in derivation-basis coordinates."""
    der = derivation_space(L)
    rows = []
    for r in inner_derivations(L).basis.data:
        coords = der.coordinates(r)
        if coords is None:  # cannot happen for an honest algebra
            raise ValueError("inner derivation outside the derivation space")
        rows.append(coords)
    return QuotientSpace.of(Subspace.from_rows(der.dim, rows))


def is_derivation(L: LieAlgebra, d: Matrix) -> Check:
    if d.rows != L.dim or d.cols != L.dim:
        return Check.fail("derivation matrix has wrong shape")
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = d.apply(L.bracket_basis(i, j))
            rhs = vec_add(
                L.bracket(d.col(i), basis_vec(L.dim, j)),
                L.bracket(basis_vec(L.dim, i), d.col(j)),
            )
            if lhs != rhs:
                return Check.fail(f"leibniz fails on basis pair ({i},{j})")
    return OK


@dataclass(frozen=True)
class Derivation:
    algebra: LieAlgebra
    matrix: Matrix

    def __post_init__(self):
        res = is_derivation(self.algebra, self.matrix)
        if not res:
            raise ValueError(res.reason)


@dataclass(frozen=True)
class LieDerPair:
    """A Lie algebra with a chosen derivation acting on it."""

    algebra: LieAlgebra
    d: Matrix

    def __post_init__(self):
        res = is_lieder_pair(self.algebra, self.d)
        if not res:
            raise ValueError(res.reason)

    @property
    def dim(self) -> int:
        return self.algebra.dim


def is_lieder_pair(L: LieAlgebra, d: Matrix) -> Check:
    res = jacobi_check(L)
    if not res:
        return res
    return is_derivation(L, d)


def matrix_from_cols(cols: Sequence[Vec], rows: int) -> Matrix:
    return Matrix.from_cols(list(cols), rows=rows)


def restrict_to_subspace(m: Matrix, sub: Subspace) -> Optional[Matrix]:
    """Matrix of m restricted to an invariant subspace, in basis coordinates.

    None when the subspace is not invariant under m.
    """
    cols = []
    for r in sub.basis.data:
        c = sub.coordinates(m.apply(r))
        if c is None:
            return None
        cols.append(c)
    return Matrix.from_cols(cols, rows=sub.dim)
