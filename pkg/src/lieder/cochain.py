"""Alternating cochains and exact Lie algebra cohomology.

A degree-k cochain stores one target vector per increasing k-tuple of
source basis indices (combinations order) and is extended to arbitrary
index tuples by sign, to arbitrary vectors by multilinearity.  On top of
that sit the Chevalley-Eilenberg coboundary, the derivation twist delta,
the coboundary of the complex for an algebra-with-derivation (pairs of
cochains), the formal coboundary driven by a not-necessarily-flat family
of derivations, and the bracket-valued cup product.  Cohomology is
computed as exact kernels modulo exact images; representatives are the
cocycle RREF basis reduced against the coboundary pivots, so equal
classes reduce to equal vectors.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations
from typing import Callable, Mapping, Optional, Sequence

from .exactlin import (
    Matrix,
    Subspace,
    Vec,
    column_space,
    kernel_basis,
    vec,
    vec_add,
    vec_is_zero,
    vec_scale,
    vec_sub,
    zero_vec,
)
from .lie import Check, LieAlgebra, LieDerPair, OK, basis_vec


@lru_cache(maxsize=None)
def comb(m: int, k: int) -> tuple[tuple[int, ...], ...]:
    return tuple(combinations(range(m), k))


@lru_cache(maxsize=None)
def comb_pos(m: int, k: int) -> dict[tuple[int, ...], int]:
    return {t: i for i, t in enumerate(comb(m, k))}


def sort_with_sign(idxs: Sequence[int]) -> Optional[tuple[int, tuple[int, ...]]]:
    """(sign, sorted tuple), or None when an index repeats."""
    if len(set(idxs)) != len(idxs):
        return None
    order = sorted(range(len(idxs)), key=lambda i: idxs[i])
    sign = 1
    seen = list(idxs)
    # count inversions by selection; k is tiny so quadratic is fine
    for i in range(len(seen)):
        for j in range(i + 1, len(seen)):
            if seen[i] > seen[j]:
                sign = -sign
    return sign, tuple(idxs[i] for i in order)


def shuffle_sign(positions: Sequence[int]) -> int:
    """Sign of the shuffle that pulls the given increasing positions to the
    front, keeping both blocks in order."""
    return -1 if sum(p - i for i, p in enumerate(positions)) % 2 else 1


def det(rows: Sequence[Vec]) -> Fraction:
    n = len(rows)
    if n == 0:
        return Fraction(1)
    m = [list(r) for r in rows]
    sign = Fraction(1)
    for c in range(n):
        p = next((i for i in range(c, n) if m[i][c] != 0), None)
        if p is None:
            return Fraction(0)
        if p != c:
            m[c], m[p] = m[p], m[c]
            sign = -sign
        for i in range(c + 1, n):
            if m[i][c] != 0:
                f = m[i][c] / m[c][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[c])]
    for c in range(n):
        sign *= m[c][c]
    return sign


class AltCochain:
    """Alternating multilinear map (source basis)^k -> target coordinates."""

    __slots__ = ("source_dim", "degree", "target_dim", "values")

    def __init__(self, source_dim: int, degree: int, target_dim: int, values):
        tuples = comb(source_dim, degree)
        values = tuple(vec(v) for v in values)
        if len(values) != len(tuples) or any(
            len(v) != target_dim for v in values
        ):
            raise ValueError("cochain value table has wrong shape")
        object.__setattr__(self, "source_dim", source_dim)
        object.__setattr__(self, "degree", degree)
        object.__setattr__(self, "target_dim", target_dim)
        object.__setattr__(self, "values", values)

    def __setattr__(self, name, value):
        raise AttributeError("AltCochain is immutable")

    @staticmethod
    def zero(source_dim: int, degree: int, target_dim: int) -> "AltCochain":
        n = len(comb(source_dim, degree))
        return AltCochain(
            source_dim, degree, target_dim, (zero_vec(target_dim),) * n
        )

    @staticmethod
    def from_map(
        source_dim: int,
        degree: int,
        target_dim: int,
        entries: Mapping[tuple[int, ...], Sequence],
    ) -> "AltCochain":
        values = [list(zero_vec(target_dim)) for _ in comb(source_dim, degree)]
        pos = comb_pos(source_dim, degree)
        for t, v in entries.items():
            key = tuple(t)
            if key not in pos:
                raise ValueError(f"{key} is not an increasing index tuple")
            values[pos[key]] = vec(v)
        return AltCochain(source_dim, degree, target_dim, values)

    def __eq__(self, other) -> bool:
        return (
            isinstance(other, AltCochain)
            and self.source_dim == other.source_dim
            and self.degree == other.degree
            and self.target_dim == other.target_dim
            and self.values == other.values
        )

    def __hash__(self) -> int:
        return hash((self.source_dim, self.degree, self.target_dim, self.values))

    def __repr__(self) -> str:
        nz = {
            t: tuple(str(x) for x in v)
            for t, v in zip(comb(self.source_dim, self.degree), self.values)
            if not vec_is_zero(v)
        }
        return f"AltCochain(deg {self.degree}, {nz})"

    def is_zero(self) -> bool:
        return all(vec_is_zero(v) for v in self.values)

    def value(self, increasing: tuple[int, ...]) -> Vec:
        return self.values[comb_pos(self.source_dim, self.degree)[increasing]]

    def eval_indices(self, idxs: Sequence[int]) -> Vec:
        ss = sort_with_sign(idxs)
        if ss is None:
            return zero_vec(self.target_dim)
        sign, key = ss
        v = self.value(key)
        return v if sign == 1 else vec_scale(Fraction(-1), v)

    def eval_first_vec(self, v: Vec, rest: Sequence[int]) -> Vec:
        out = zero_vec(self.target_dim)
        for l, a in enumerate(v):
            if a != 0:
                out = vec_add(out, vec_scale(a, self.eval_indices((l, *rest))))
        return out

    def eval_at_slot(self, base: Sequence[int], pos: int, v: Vec) -> Vec:
        out = zero_vec(self.target_dim)
        for l, a in enumerate(v):
            if a != 0:
                idxs = tuple(base[:pos]) + (l,) + tuple(base[pos + 1 :])
                out = vec_add(out, vec_scale(a, self.eval_indices(idxs)))
        return out

    def eval_vectors(self, vectors: Sequence[Vec]) -> Vec:
        if len(vectors) != self.degree:
            raise ValueError("arity mismatch")
        out = zero_vec(self.target_dim)
        for t, val in zip(comb(self.source_dim, self.degree), self.values):
            if vec_is_zero(val):
                continue
            minor = det([tuple(vectors[j][i] for j in range(self.degree)) for i in t])
            if minor != 0:
                out = vec_add(out, vec_scale(minor, val))
        return out

    def __add__(self, other: "AltCochain") -> "AltCochain":
        self._compatible(other)
        return AltCochain(
            self.source_dim,
            self.degree,
            self.target_dim,
            tuple(vec_add(a, b) for a, b in zip(self.values, other.values)),
        )

    def __sub__(self, other: "AltCochain") -> "AltCochain":
        self._compatible(other)
        return AltCochain(
            self.source_dim,
            self.degree,
            self.target_dim,
            tuple(vec_sub(a, b) for a, b in zip(self.values, other.values)),
        )

    def __neg__(self) -> "AltCochain":
        return self.scale(Fraction(-1))

    def scale(self, k) -> "AltCochain":
        k = Fraction(k)
        return AltCochain(
            self.source_dim,
            self.degree,
            self.target_dim,
            tuple(vec_scale(k, v) for v in self.values),
        )

    def map_target(self, m: Matrix) -> "AltCochain":
        """Compose with a linear map on the target."""
        if m.cols != self.target_dim:
            raise ValueError("target dimension mismatch")
        return AltCochain(
            self.source_dim,
            self.degree,
            m.rows,
            tuple(m.apply(v) for v in self.values),
        )

    def map_values(
        self, fn: Callable[[Vec], Vec], target_dim: int
    ) -> "AltCochain":
        return AltCochain(
            self.source_dim,
            self.degree,
            target_dim,
            tuple(fn(v) for v in self.values),
        )

    def flatten(self) -> Vec:
        return tuple(x for v in self.values for x in v)

    @staticmethod
    def from_flat(
        source_dim: int, degree: int, target_dim: int, flat: Vec
    ) -> "AltCochain":
        n = len(comb(source_dim, degree))
        if len(flat) != n * target_dim:
            raise ValueError("flat length mismatch")
        return AltCochain(
            source_dim,
            degree,
            target_dim,
            tuple(
                flat[i * target_dim : (i + 1) * target_dim] for i in range(n)
            ),
        )

    def _compatible(self, other: "AltCochain") -> None:
        if (
            self.source_dim != other.source_dim
            or self.degree != other.degree
            or self.target_dim != other.target_dim
        ):
            raise ValueError("cochain shape mismatch")


def flat_dim(source_dim: int, degree: int, target_dim: int) -> int:
    return len(comb(source_dim, degree)) * target_dim


@dataclass(frozen=True)
class Representation:
    """Lie algebra representation by matrices, one per basis vector."""

    algebra: LieAlgebra
    space_dim: int
    rho: tuple[Matrix, ...]

    def __post_init__(self):
        res = _check_rep(self.algebra, self.space_dim, self.rho)
        if not res:
            raise ValueError(res.reason)

    def rho_of(self, x: Vec) -> Matrix:
        m = Matrix.zero(self.space_dim, self.space_dim)
        for i, a in enumerate(x):
            if a != 0:
                m = m + self.rho[i].scale(a)
        return m


def _check_rep(L: LieAlgebra, space_dim: int, rho: Sequence[Matrix]) -> Check:
    if len(rho) != L.dim or any(
        m.rows != space_dim or m.cols != space_dim for m in rho
    ):
        return Check.fail("rho has wrong shape")
    for i in range(L.dim):
        for j in range(i + 1, L.dim):
            lhs = Matrix.zero(space_dim, space_dim)
            for k, a in enumerate(L.bracket_basis(i, j)):
                if a != 0:
                    lhs = lhs + rho[k].scale(a)
            if lhs != rho[i].commutator(rho[j]):
                return Check.fail(f"rep law fails on basis pair ({i},{j})")
    return OK


@dataclass(frozen=True)
class LieDerRep(Representation):
    """Representation intertwined with the derivations on both sides:
    t(rho(x)u) = rho(d x)u + rho(x)(t u)."""

    pair: LieDerPair = None  # type: ignore[assignment]
    t: Matrix = None  # type: ignore[assignment]

    def __post_init__(self):
        if self.pair is None or self.t is None:
            raise ValueError("pair and t are required")
        if self.pair.algebra != self.algebra:
            raise ValueError("pair acts on a different algebra")
        super().__post_init__()
        if self.t.rows != self.space_dim or self.t.cols != self.space_dim:
            raise ValueError("t has wrong shape")
        d = self.pair.d
        for i in range(self.algebra.dim):
            lhs = self.t @ self.rho[i]
            rhs = self.rho_of(d.col(i)) + self.rho[i] @ self.t
            if lhs != rhs:
                raise ValueError(
                    f"derivation compatibility fails on basis vector {i}"
                )


def coboundary(L: LieAlgebra, rho: Sequence[Matrix], c: AltCochain) -> AltCochain:
    """Chevalley-Eilenberg style differential with the action given by rho.

    No representation law is assumed here; with an honest representation
    this is the CE coboundary, with a mere family of derivation matrices
    it is the formal coboundary.
    """
    if c.source_dim != L.dim:
        raise ValueError("cochain source does not match the algebra")
    k = c.degree
    t = c.target_dim
    out = []
    for T in comb(L.dim, k + 1):
        val = zero_vec(t)
        for i in range(k + 1):
            rest = T[:i] + T[i + 1 :]
            term = rho[T[i]].apply(c.eval_indices(rest))
            val = vec_add(val, term if i % 2 == 0 else vec_scale(Fraction(-1), term))
        for i in range(k + 1):
            for j in range(i + 1, k + 1):
                rest = tuple(T[a] for a in range(k + 1) if a != i and a != j)
                term = c.eval_first_vec(L.bracket_basis(T[i], T[j]), rest)
                if (i + j) % 2:
                    term = vec_scale(Fraction(-1), term)
                val = vec_add(val, term)
        out.append(val)
    return AltCochain(L.dim, k + 1, t, out)


def ce_coboundary(rep: Representation, c: AltCochain) -> AltCochain:
    if c.target_dim != rep.space_dim:
        raise ValueError("cochain target does not match the representation")
    return coboundary(rep.algebra, rep.rho, c)


def formal_coboundary(
    L: LieAlgebra, varrho: Sequence[Matrix], c: AltCochain
) -> AltCochain:
    return coboundary(L, varrho, c)


def delta_op(c: AltCochain, d: Matrix, t: Matrix) -> AltCochain:
    """Derivation twist: sum of c with d in one slot, minus t after c."""
    if d.cols != c.source_dim or t.cols != c.target_dim:
        raise ValueError("shape mismatch")
    out = []
    for T in comb(c.source_dim, c.degree):
        val = zero_vec(t.rows)
        for i in range(c.degree):
            val = vec_add(val, c.eval_at_slot(T, i, d.col(T[i])))
        val = vec_sub(val, t.apply(c.value(T)))
        out.append(val)
    return AltCochain(c.source_dim, c.degree, t.rows, out)


@dataclass(frozen=True)
class LieDerCochain:
    """Cochain of the algebra-with-derivation complex: a degree-n piece and,
    from degree 2 up, a degree-(n-1) companion."""

    top: AltCochain
    lower: Optional[AltCochain] = None

    def __post_init__(self):
        if self.lower is not None:
            if (
                self.lower.source_dim != self.top.source_dim
                or self.lower.target_dim != self.top.target_dim
                or self.lower.degree != self.top.degree - 1
            ):
                raise ValueError("companion cochain has wrong shape")
        elif self.top.degree > 1:
            raise ValueError("degree >= 2 needs the lower component")

    @property
    def degree(self) -> int:
        return self.top.degree

    def flatten(self) -> Vec:
        flat = self.top.flatten()
        if self.lower is not None:
            flat = flat + self.lower.flatten()
        return flat

    @staticmethod
    def from_flat(
        source_dim: int, degree: int, target_dim: int, flat: Vec
    ) -> "LieDerCochain":
        cut = flat_dim(source_dim, degree, target_dim)
        top = AltCochain.from_flat(source_dim, degree, target_dim, flat[:cut])
        if degree == 1:
            if len(flat) != cut:
                raise ValueError("flat length mismatch")
            return LieDerCochain(top)
        lower = AltCochain.from_flat(
            source_dim, degree - 1, target_dim, flat[cut:]
        )
        return LieDerCochain(top, lower)

    def is_zero(self) -> bool:
        return self.top.is_zero() and (self.lower is None or self.lower.is_zero())


def lieder_flat_dim(source_dim: int, degree: int, target_dim: int) -> int:
    n = flat_dim(source_dim, degree, target_dim)
    if degree >= 2:
        n += flat_dim(source_dim, degree - 1, target_dim)
    return n


def lieder_coboundary(rep: LieDerRep, lc: LieDerCochain) -> LieDerCochain:
    n = lc.degree
    top = ce_coboundary(rep, lc.top)
    twist = delta_op(lc.top, rep.pair.d, rep.t)
    if n % 2:
        twist = -twist
    lower = twist if lc.lower is None else ce_coboundary(rep, lc.lower) + twist
    return LieDerCochain(top, lower)


def cup_product(h: LieAlgebra, a: AltCochain, b: AltCochain) -> AltCochain:
    """Shuffle sum of target brackets [a(front block), b(back block)]."""
    if a.target_dim != h.dim or b.target_dim != h.dim:
        raise ValueError("cup product needs h-valued cochains")
    if a.source_dim != b.source_dim:
        raise ValueError("source mismatch")
    p, q = a.degree, b.degree
    out = []
    for T in comb(a.source_dim, p + q):
        val = zero_vec(h.dim)
        for S in combinations(range(p + q), p):
            rest = tuple(i for i in range(p + q) if i not in S)
            term = h.bracket(
                a.value(tuple(T[i] for i in S)),
                b.value(tuple(T[i] for i in rest)),
            )
            if shuffle_sign(S) < 0:
                term = vec_scale(Fraction(-1), term)
            val = vec_add(val, term)
        out.append(val)
    return AltCochain(a.source_dim, p + q, h.dim, out)


@dataclass(frozen=True)
class CohomologyResult:
    """Exact cocycle/coboundary data in one degree of one complex."""

    degree: int
    complex: str
    dim_cocycles: int
    dim_coboundaries: int
    dim_h: int
    representatives: Matrix
    cocycles: Subspace
    coboundaries: Subspace
    reduced: Subspace

    def is_cocycle(self, flat: Vec) -> bool:
        return self.cocycles.contains(flat)

    def is_coboundary(self, flat: Vec) -> bool:
        return self.coboundaries.contains(flat)

    def class_coords(self, flat: Vec) -> Vec:
        """Coordinates in the representative basis; input must be a cocycle."""
        if not self.is_cocycle(flat):
            raise ValueError("not a cocycle")
        coords = self.reduced.coordinates(self.coboundaries.reduce(flat))
        assert coords is not None
        return coords

    def same_class(self, u: Vec, v: Vec) -> bool:
        return self.is_coboundary(vec_sub(u, v))


def _ce_matrix(rep: Representation, degree: int) -> Matrix:
    m, t = rep.algebra.dim, rep.space_dim
    src = flat_dim(m, degree, t)
    cols = []
    for i in range(src):
        flat = tuple(
            Fraction(1) if j == i else Fraction(0) for j in range(src)
        )
        c = AltCochain.from_flat(m, degree, t, flat)
        cols.append(ce_coboundary(rep, c).flatten())
    return Matrix.from_cols(cols, rows=flat_dim(m, degree + 1, t))


def _lieder_matrix(rep: LieDerRep, degree: int) -> Matrix:
    m, t = rep.algebra.dim, rep.space_dim
    src = lieder_flat_dim(m, degree, t)
    cols = []
    for i in range(src):
        flat = tuple(
            Fraction(1) if j == i else Fraction(0) for j in range(src)
        )
        lc = LieDerCochain.from_flat(m, degree, t, flat)
        cols.append(lieder_coboundary(rep, lc).flatten())
    return Matrix.from_cols(cols, rows=lieder_flat_dim(m, degree + 1, t))


def cohomology(
    rep: Representation, degree: int, complex: str = "ce"
) -> CohomologyResult:
    m, t = rep.algebra.dim, rep.space_dim
    if complex == "ce":
        if degree < 0:
            raise ValueError("degree must be >= 0")
        z = kernel_basis(_ce_matrix(rep, degree))
        if degree == 0:
            b = Subspace.zero(flat_dim(m, degree, t))
        else:
            b = column_space(_ce_matrix(rep, degree - 1))
    elif complex == "lieder":
        if not isinstance(rep, LieDerRep):
            raise ValueError("the twisted complex needs a LieDerRep")
        if degree < 1:
            raise ValueError("degree must be >= 1")
        z = kernel_basis(_lieder_matrix(rep, degree))
        if degree == 1:
            b = Subspace.zero(lieder_flat_dim(m, degree, t))
        else:
            b = column_space(_lieder_matrix(rep, degree - 1))
    else:
        raise ValueError(f"unknown complex {complex!r}")
    reduced = Subspace.from_rows(
        z.ambient_dim, tuple(b.reduce(r) for r in z.basis.data)
    )
    return CohomologyResult(
        degree=degree,
        complex=complex,
        dim_cocycles=z.dim,
        dim_coboundaries=b.dim,
        dim_h=z.dim - b.dim,
        representatives=reduced.basis,
        cocycles=z,
        coboundaries=b,
        reduced=reduced,
    )
