"""Strict Lie 2-algebras and the derivation-object dictionary.

A strict Lie 2-algebra is a two-term complex d: g1 -> g0 with a bracket
on g0 and a mixed bracket g0 x g1 -> g1 (encoded as one matrix per g0
basis vector); the mixed bracket is extended to g1 x g0 by skewness.
Every algebra-with-derivation pair (h, K) yields the canonical object
(Der(h), h, ad, evaluation) with strict derivation (ad K, K); cocycle
data for (g, D) with values in (h, K) translates to homomorphisms of
pairs into that object via (varrho, 0, -omega, -chi), gauge witnesses
translate to 2-homomorphisms, and both translations are exact inverses.
All degree-0 coordinates are taken in the deterministic row-reduced
basis of Der(h).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache

from .cochain import AltCochain, comb
from .exactlin import Matrix, Vec, vec_add, vec_scale, vec_sub, zero_vec
from .lie import (
    Check,
    LieAlgebra,
    LieDerPair,
    OK,
    der_basis_matrices,
    der_coordinates,
    derivation_space,
    is_derivation,
    jacobi_check,
)
from .nonabelian import NonAbelianCocycle, verify_cocycle


@dataclass(frozen=True)
class StrictLie2:
    """Two-term complex with compatible brackets."""

    g0: LieAlgebra
    g1_dim: int
    d: Matrix
    act: tuple[Matrix, ...]

    def __post_init__(self):
        n0, n1 = self.g0.dim, self.g1_dim
        if self.d.rows != n0 or self.d.cols != n1:
            raise ValueError("d has wrong shape")
        if len(self.act) != n0 or any(
            m.rows != n1 or m.cols != n1 for m in self.act
        ):
            raise ValueError("mixed bracket table has wrong shape")

    def act_of(self, x: Vec) -> Matrix:
        """Mixed bracket [x, -]: g1 -> g1 for a degree-0 vector x."""
        m = Matrix.zero(self.g1_dim, self.g1_dim)
        for i, a in enumerate(x):
            if a != 0:
                m = m + self.act[i].scale(a)
        return m


def verify_lie2(t: StrictLie2) -> Check:
    res = jacobi_check(t.g0)
    if not res:
        return Check.fail(f"degree-0 part: {res.reason}")
    n0, n1 = t.g0.dim, t.g1_dim
    # d is equivariant: d([x, a]) = [x, d(a)].
    for i in range(n0):
        if t.d @ t.act[i] != t.g0.ad(i) @ t.d:
            return Check.fail(f"d fails equivariance on basis vector {i}")
    # Peiffer-style symmetry: [d(a), b] = [a, d(b)] = -[d(b), a].
    for a in range(n1):
        for b in range(a, n1):
            lhs = t.act_of(t.d.col(a)).col(b)
            rhs = vec_scale(-1, t.act_of(t.d.col(b)).col(a))
            if lhs != rhs:
                return Check.fail(
                    f"mixed symmetry fails on degree-1 pair ({a},{b})"
                )
    # Mixed Jacobi reduces to the action being a homomorphism.
    for i in range(n0):
        for j in range(i + 1, n0):
            if t.act_of(t.g0.bracket_basis(i, j)) != t.act[i].commutator(
                t.act[j]
            ):
                return Check.fail(
                    f"mixed jacobi fails on degree-0 pair ({i},{j})"
                )
    return OK


@dataclass(frozen=True)
class StrictDer2:
    """Degree-wise maps commuting with d and Leibniz on both brackets."""

    d0: Matrix
    d1: Matrix


def verify_strict_der(t: StrictLie2, der: StrictDer2) -> Check:
    n0, n1 = t.g0.dim, t.g1_dim
    if der.d0.rows != n0 or der.d0.cols != n0:
        return Check.fail("degree-0 map has wrong shape")
    if der.d1.rows != n1 or der.d1.cols != n1:
        return Check.fail("degree-1 map has wrong shape")
    if der.d0 @ t.d != t.d @ der.d1:
        return Check.fail("maps do not intertwine d")
    res = is_derivation(t.g0, der.d0)
    if not res:
        return Check.fail(f"degree-0 part: {res.reason}")
    for i in range(n0):
        lhs = der.d1 @ t.act[i]
        rhs = t.act_of(der.d0.col(i)) + t.act[i] @ der.d1
        if lhs != rhs:
            return Check.fail(f"mixed leibniz fails on basis vector {i}")
    return OK


@lru_cache(maxsize=None)
def pair_lie2(pair: LieDerPair) -> tuple[StrictLie2, StrictDer2]:
    """A plain pair (g, D) viewed with zero degree-1 part."""
    n = pair.dim
    lie2 = StrictLie2(
        pair.algebra,
        0,
        Matrix.zero(n, 0),
        (Matrix.zero(0, 0),) * n,
    )
    return lie2, StrictDer2(pair.d, Matrix.zero(0, 0))


@lru_cache(maxsize=None)
def build_hder(hpair: LieDerPair) -> tuple[StrictLie2, StrictDer2]:
    """The derivation object of (h, K): complex ad: h -> Der(h), bracket
    the commutator, mixed bracket the evaluation, derivation (ad K, K)."""
    h = hpair.algebra
    der = derivation_space(h)
    mats = der_basis_matrices(h)
    n0 = der.dim
    brackets = {}
    for i in range(n0):
        for j in range(i + 1, n0):
            coords = der.coordinates(mats[i].commutator(mats[j]).flatten())
            if coords is None:
                raise RuntimeError("derivations not closed under commutator")
            nz = {k: q for k, q in enumerate(coords) if q != 0}
            if nz:
                brackets[(i, j)] = nz
    g0 = LieAlgebra.from_brackets(n0, brackets, name="der")
    d = Matrix.from_cols(
        [der.coordinates(h.ad(a).flatten()) for a in range(h.dim)], rows=n0
    )
    d0 = Matrix.from_cols(
        [
            der.coordinates(hpair.d.commutator(mats[j]).flatten())
            for j in range(n0)
        ],
        rows=n0,
    )
    lie2 = StrictLie2(g0, h.dim, d, mats)
    return lie2, StrictDer2(d0, hpair.d)


@dataclass(frozen=True)
class Lie2DerHom:
    """Homomorphism from (g, D) with zero degree-1 part into the
    derivation object of (h, K); phi0 is in Der(h) coordinates."""

    gpair: LieDerPair
    hpair: LieDerPair
    phi0: Matrix
    phi1: Matrix
    phi2: AltCochain
    theta: Matrix

    def __post_init__(self):
        gd, hd = self.gpair.dim, self.hpair.dim
        n0 = derivation_space(self.hpair.algebra).dim
        if self.phi0.rows != n0 or self.phi0.cols != gd:
            raise ValueError("phi0 has wrong shape")
        if self.phi1.rows != hd or self.phi1.cols != 0:
            raise ValueError("phi1 must map the zero space into h")
        if (
            self.phi2.source_dim != gd
            or self.phi2.degree != 2
            or self.phi2.target_dim != hd
        ):
            raise ValueError("phi2 has wrong shape")
        if self.theta.rows != hd or self.theta.cols != gd:
            raise ValueError("theta has wrong shape")


@dataclass(frozen=True)
class TwoHom:
    """Homotopy between two homomorphisms with the same source and target."""

    vartheta: Matrix


def verify_hom(f: Lie2DerHom) -> Check:
    src2, srcd = pair_lie2(f.gpair)
    dst2, dstd = build_hder(f.hpair)
    g = src2.g0
    # phi0 respects d up to d(phi2): phi0[x,y] - [phi0 x, phi0 y] = d phi2(x,y).
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = vec_sub(
                f.phi0.apply(g.bracket_basis(i, j)),
                dst2.g0.bracket(f.phi0.col(i), f.phi0.col(j)),
            )
            if lhs != dst2.d.apply(f.phi2.value((i, j))):
                return Check.fail(f"bracket defect mismatch on ({i},{j})")
    # phi0 d_src = d_dst phi1 and the degree-1 equations are empty here
    # (the source degree-1 space is zero), but keep the shape honest.
    if f.phi0 @ src2.d != dst2.d @ f.phi1:
        return Check.fail("phi0 does not intertwine d")
    # Coherence of phi2 with the brackets.
    for T in comb(g.dim, 3):
        i, j, k = T
        lhs = zero_vec(f.hpair.dim)
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            lhs = vec_add(
                lhs,
                dst2.act_of(f.phi0.col(x)).apply(f.phi2.eval_indices((y, z))),
            )
        rhs = zero_vec(f.hpair.dim)
        for x, y, z in ((i, j, k), (j, k, i), (k, i, j)):
            rhs = vec_add(
                rhs,
                f.phi2.eval_first_vec(g.bracket_basis(x, y), (z,)),
            )
        if lhs != rhs:
            return Check.fail(f"phi2 coherence fails on triple {T}")
    # Derivations intertwine up to d(theta).
    if f.phi0 @ srcd.d0 - dstd.d0 @ f.phi0 != dst2.d @ f.theta:
        return Check.fail("derivation defect is not d(theta)")
    if f.phi1 @ srcd.d1 - dstd.d1 @ f.phi1 != f.theta @ src2.d:
        return Check.fail("degree-1 derivation defect mismatch")
    # theta controls the derivation defect of phi2.
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = vec_sub(
                dstd.d1.apply(f.phi2.value((i, j))),
                vec_add(
                    f.phi2.eval_at_slot((i, j), 0, srcd.d0.col(i)),
                    f.phi2.eval_at_slot((i, j), 1, srcd.d0.col(j)),
                ),
            )
            rhs = vec_sub(
                vec_sub(
                    dst2.act_of(f.phi0.col(i)).apply(f.theta.col(j)),
                    dst2.act_of(f.phi0.col(j)).apply(f.theta.col(i)),
                ),
                f.theta.apply(g.bracket_basis(i, j)),
            )
            if lhs != rhs:
                return Check.fail(f"theta coherence fails on ({i},{j})")
    return OK


def verify_two_hom(src: Lie2DerHom, dst: Lie2DerHom, t) -> Check:
    """Check a homotopy from src to dst given by a map g -> h."""
    vartheta = t.vartheta if isinstance(t, TwoHom) else t
    if src.gpair != dst.gpair or src.hpair != dst.hpair:
        return Check.fail("homomorphisms have different endpoints")
    src2, srcd = pair_lie2(src.gpair)
    dst2, dstd = build_hder(src.hpair)
    g = src2.g0
    if vartheta.rows != src.hpair.dim or vartheta.cols != g.dim:
        return Check.fail("homotopy map has wrong shape")
    if dst.phi0 - src.phi0 != dst2.d @ vartheta:
        return Check.fail("degree-0 difference is not d of the homotopy")
    if dst.phi1 - src.phi1 != vartheta @ src2.d:
        return Check.fail("degree-1 difference mismatch")
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = vec_sub(dst.phi2.value((i, j)), src.phi2.value((i, j)))
            rhs = vec_add(
                vec_sub(
                    vartheta.apply(g.bracket_basis(i, j)),
                    dst2.act_of(src.phi0.col(i)).apply(vartheta.col(j)),
                ),
                dst2.act_of(dst.phi0.col(j)).apply(vartheta.col(i)),
            )
            if lhs != rhs:
                return Check.fail(f"bracket homotopy fails on ({i},{j})")
    if vartheta @ srcd.d0 - dstd.d1 @ vartheta != dst.theta - src.theta:
        return Check.fail("derivation homotopy equation fails")
    return OK


def cocycle_to_hom(c: NonAbelianCocycle) -> Lie2DerHom:
    """Translate verified cocycle data to a homomorphism of pairs."""
    res = verify_cocycle(c)
    if not res:
        raise ValueError(f"not a cocycle: {res.reason}")
    h = c.hpair.algebra
    cols = []
    for i, m in enumerate(c.varrho):
        coords = der_coordinates(h, m)
        if coords is None:
            raise ValueError(f"component {i} is not a derivation of h")
        cols.append(coords)
    der_dim = derivation_space(h).dim
    return Lie2DerHom(
        gpair=c.gpair,
        hpair=c.hpair,
        phi0=Matrix.from_cols(cols, rows=der_dim),
        phi1=Matrix.zero(h.dim, 0),
        phi2=-c.omega,
        theta=-c.chi,
    )


def hom_to_cocycle(f: Lie2DerHom) -> NonAbelianCocycle:
    """Inverse translation; the hom axioms make the output a cocycle."""
    res = verify_hom(f)
    if not res:
        raise ValueError(f"not a homomorphism: {res.reason}")
    h = f.hpair.algebra
    mats = der_basis_matrices(h)
    varrho = []
    for i in range(f.gpair.dim):
        m = Matrix.zero(h.dim, h.dim)
        for a, bm in zip(f.phi0.col(i), mats):
            if a != 0:
                m = m + bm.scale(a)
        varrho.append(m)
    return NonAbelianCocycle(
        f.gpair, f.hpair, tuple(varrho), -f.phi2, -f.theta
    )
