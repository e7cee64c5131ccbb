"""Non-abelian cocycles and the extensions they classify.

A cocycle datum for a pair of algebras-with-derivations (g, D) and
(h, K) is a triple (varrho, omega, chi): a family of derivations of h
indexed by the basis of g, an alternating 2-cochain on g with values in
h, and a linear correction g -> h for the derivations.  The four
verification equations are exactly the conditions under which the
deformed bracket and deformed derivation on g + h close into an
algebra-with-derivation extending (h, K) by (g, D).

Gauge transformations by a linear map tau: g -> h act on cocycle data;
two data sets related by a gauge give isomorphic extensions, with the
isomorphism (x, u) -> (x, u + tau(x)) written down explicitly.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cochain import AltCochain
from .exactlin import (
    Matrix,
    Vec,
    column_space,
    rank,
    solve,
    solve_vec,
    vec_add,
    vec_sub,
    zero_vec,
)
from .lie import (
    Check,
    LieAlgebra,
    LieDerPair,
    OK,
    basis_vec,
    is_derivation,
    jacobi_check,
)


@dataclass(frozen=True)
class NonAbelianCocycle:
    """Cocycle datum (varrho, omega, chi); construction does not verify."""

    gpair: LieDerPair
    hpair: LieDerPair
    varrho: tuple[Matrix, ...]
    omega: AltCochain
    chi: Matrix

    def __post_init__(self):
        gd, hd = self.gpair.dim, self.hpair.dim
        if len(self.varrho) != gd or any(
            m.rows != hd or m.cols != hd for m in self.varrho
        ):
            raise ValueError("varrho has wrong shape")
        if (
            self.omega.source_dim != gd
            or self.omega.degree != 2
            or self.omega.target_dim != hd
        ):
            raise ValueError("omega has wrong shape")
        if self.chi.rows != hd or self.chi.cols != gd:
            raise ValueError("chi has wrong shape")

    def varrho_of(self, x: Vec) -> Matrix:
        hd = self.hpair.dim
        m = Matrix.zero(hd, hd)
        for i, a in enumerate(x):
            if a != 0:
                m = m + self.varrho[i].scale(a)
        return m

    @staticmethod
    def zero(gpair: LieDerPair, hpair: LieDerPair) -> "NonAbelianCocycle":
        """The direct-product datum; it verifies for any two pairs."""
        gd, hd = gpair.dim, hpair.dim
        return NonAbelianCocycle(
            gpair,
            hpair,
            tuple(Matrix.zero(hd, hd) for _ in range(gd)),
            AltCochain.zero(gd, 2, hd),
            Matrix.zero(hd, gd),
        )


def verify_cocycle(c: NonAbelianCocycle) -> Check:
    g, h = c.gpair.algebra, c.hpair.algebra
    d, k = c.gpair.d, c.hpair.d
    for i in range(g.dim):
        if not is_derivation(h, c.varrho[i]):
            return Check.fail(f"varrho[{i}] is not a derivation of h")
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = c.varrho_of(g.bracket_basis(i, j))
            rhs = (
                c.varrho[i].commutator(c.varrho[j])
                - h.ad_of(c.omega.value((i, j)))
            )
            if lhs != rhs:
                return Check.fail(f"nc1 fails on basis pair ({i},{j})")
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            for l in range(j + 1, g.dim):
                val = c.varrho[i].apply(c.omega.eval_indices((j, l)))
                val = vec_add(
                    val, c.varrho[j].apply(c.omega.eval_indices((l, i)))
                )
                val = vec_add(
                    val, c.varrho[l].apply(c.omega.eval_indices((i, j)))
                )
                val = vec_sub(
                    val,
                    c.omega.eval_first_vec(g.bracket_basis(i, j), (l,)),
                )
                val = vec_sub(
                    val,
                    c.omega.eval_first_vec(g.bracket_basis(j, l), (i,)),
                )
                val = vec_sub(
                    val,
                    c.omega.eval_first_vec(g.bracket_basis(l, i), (j,)),
                )
                if any(x != 0 for x in val):
                    return Check.fail(f"nc2 fails on basis triple ({i},{j},{l})")
    for i in range(g.dim):
        lhs = k @ c.varrho[i]
        rhs = (
            c.varrho_of(d.col(i))
            + c.varrho[i] @ k
            + h.ad_of(c.chi.col(i))
        )
        if lhs != rhs:
            return Check.fail(f"nc3 fails on basis vector {i}")
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = vec_add(
                k.apply(c.omega.value((i, j))),
                c.chi.apply(g.bracket_basis(i, j)),
            )
            rhs = vec_sub(
                c.varrho[i].apply(c.chi.col(j)),
                c.varrho[j].apply(c.chi.col(i)),
            )
            rhs = vec_add(rhs, c.omega.eval_first_vec(d.col(i), (j,)))
            rhs = vec_add(rhs, c.omega.eval_at_slot((i, j), 1, d.col(j)))
            if lhs != rhs:
                return Check.fail(f"nc4 fails on basis pair ({i},{j})")
    return OK


def apply_gauge(c: NonAbelianCocycle, tau: Matrix) -> NonAbelianCocycle:
    """Transform the datum by tau: g -> h.

    The output is the unique datum equivalent to the input with witness
    tau, so verify_equivalence_witness(c, apply_gauge(c, tau), tau)
    holds; verified data stays verified.
    """
    g, h = c.gpair.algebra, c.hpair.algebra
    if tau.rows != h.dim or tau.cols != g.dim:
        raise ValueError("tau has wrong shape")
    d, k = c.gpair.d, c.hpair.d
    varrho2 = tuple(
        c.varrho[i] - h.ad_of(tau.col(i)) for i in range(g.dim)
    )
    chi2 = c.chi - k @ tau + tau @ d
    values = {}
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            val = c.omega.value((i, j))
            val = vec_sub(val, varrho2[i].apply(tau.col(j)))
            val = vec_add(val, varrho2[j].apply(tau.col(i)))
            val = vec_sub(val, h.bracket(tau.col(i), tau.col(j)))
            val = vec_add(val, tau.apply(g.bracket_basis(i, j)))
            values[(i, j)] = val
    omega2 = AltCochain.from_map(g.dim, 2, h.dim, values)
    return NonAbelianCocycle(c.gpair, c.hpair, varrho2, omega2, chi2)


def verify_equivalence_witness(
    c: NonAbelianCocycle, c2: NonAbelianCocycle, tau: Matrix
) -> Check:
    if c.gpair != c2.gpair or c.hpair != c2.hpair:
        return Check.fail("data live over different pairs")
    g, h = c.gpair.algebra, c.hpair.algebra
    if tau.rows != h.dim or tau.cols != g.dim:
        return Check.fail("tau has wrong shape")
    d, k = c.gpair.d, c.hpair.d
    for i in range(g.dim):
        if c.varrho[i] - c2.varrho[i] != h.ad_of(tau.col(i)):
            return Check.fail(f"witness fails the varrho relation at {i}")
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            lhs = vec_sub(c.omega.value((i, j)), c2.omega.value((i, j)))
            rhs = vec_sub(
                c2.varrho[i].apply(tau.col(j)),
                c2.varrho[j].apply(tau.col(i)),
            )
            rhs = vec_add(rhs, h.bracket(tau.col(i), tau.col(j)))
            rhs = vec_sub(rhs, tau.apply(g.bracket_basis(i, j)))
            if lhs != rhs:
                return Check.fail(
                    f"witness fails the omega relation at ({i},{j})"
                )
    if c.chi - c2.chi != k @ tau - tau @ d:
        return Check.fail("witness fails the chi relation")
    return OK


@dataclass(frozen=True)
class Extension:
    """Short exact sequence of algebras-with-derivations.

    inj embeds h as an ideal of the total algebra, proj maps onto g, and
    the total derivation restricts to K and projects to D.
    """

    total: LieDerPair
    inj: Matrix
    proj: Matrix
    kpair: LieDerPair
    gpair: LieDerPair


@dataclass(frozen=True)
class Section:
    """Right inverse of proj; not an algebra map in general."""

    ext: Extension
    matrix: Matrix

    def __post_init__(self):
        e = self.ext
        if self.matrix.rows != e.total.dim or self.matrix.cols != e.gpair.dim:
            raise ValueError("section has wrong shape")
        if e.proj @ self.matrix != Matrix.identity(e.gpair.dim):
            raise ValueError("not a section of proj")


def verify_extension(e: Extension) -> Check:
    total, g, h = e.total, e.gpair, e.kpair
    n = total.dim
    if e.inj.rows != n or e.inj.cols != h.dim:
        return Check.fail("inj has wrong shape")
    if e.proj.rows != g.dim or e.proj.cols != n:
        return Check.fail("proj has wrong shape")
    if rank(e.inj) != h.dim:
        return Check.fail("inj is not injective")
    if rank(e.proj) != g.dim:
        return Check.fail("proj is not surjective")
    if not (e.proj @ e.inj).is_zero():
        return Check.fail("proj composed with inj is nonzero")
    if h.dim + g.dim != n:
        return Check.fail("dimensions do not add up to an exact sequence")
    image = column_space(e.inj)
    ta = total.algebra
    for u in range(h.dim):
        for v in range(u + 1, h.dim):
            if e.inj.apply(h.algebra.bracket_basis(u, v)) != ta.bracket(
                e.inj.col(u), e.inj.col(v)
            ):
                return Check.fail(f"inj fails to be a morphism on ({u},{v})")
    for a in range(n):
        for b in range(a + 1, n):
            if e.proj.apply(ta.bracket_basis(a, b)) != g.algebra.bracket(
                e.proj.col(a), e.proj.col(b)
            ):
                return Check.fail(f"proj fails to be a morphism on ({a},{b})")
    for a in range(n):
        for u in range(h.dim):
            if not image.contains(ta.bracket(basis_vec(n, a), e.inj.col(u))):
                return Check.fail("image of inj is not an ideal")
    if total.d @ e.inj != e.inj @ h.d:
        return Check.fail("total derivation does not restrict to K")
    if e.proj @ total.d != g.d @ e.proj:
        return Check.fail("total derivation does not project to D")
    return OK


def build_extension(c: NonAbelianCocycle) -> tuple[Extension, Section]:
    """Total algebra on g + h with the bracket and derivation deformed by c.

    Raises when the datum does not verify; returns the extension and the
    canonical section x -> (x, 0), which extracts back to c on the nose.
    """
    res = verify_cocycle(c)
    if not res:
        raise ValueError(f"cocycle does not verify: {res.reason}")
    g, h = c.gpair.algebra, c.hpair.algebra
    gd, hd = g.dim, h.dim
    n = gd + hd

    def emb_g(x: Vec) -> Vec:
        return tuple(x) + zero_vec(hd)

    def emb_h(u: Vec) -> Vec:
        return zero_vec(gd) + tuple(u)

    brackets = {}
    for i in range(gd):
        for j in range(i + 1, gd):
            val = vec_add(
                emb_g(g.bracket_basis(i, j)), emb_h(c.omega.value((i, j)))
            )
            brackets[(i, j)] = {k: q for k, q in enumerate(val) if q != 0}
    for i in range(gd):
        for u in range(hd):
            val = emb_h(c.varrho[i].col(u))
            brackets[(i, gd + u)] = {k: q for k, q in enumerate(val) if q != 0}
    for u in range(hd):
        for v in range(u + 1, hd):
            val = emb_h(h.bracket_basis(u, v))
            brackets[(gd + u, gd + v)] = {
                k: q for k, q in enumerate(val) if q != 0
            }
    name = f"{g.name}+{h.name}" if g.name or h.name else ""
    ta = LieAlgebra.from_brackets(n, brackets, name)

    dhat = Matrix(
        tuple(
            tuple(c.gpair.d.data[i]) + zero_vec(hd) for i in range(gd)
        )
        + tuple(
            tuple(c.chi.data[u]) + tuple(c.hpair.d.data[u]) for u in range(hd)
        ),
        cols=n,
    )
    total = LieDerPair(ta, dhat)
    inj = Matrix(
        tuple(zero_vec(hd) for _ in range(gd))
        + tuple(Matrix.identity(hd).data),
        cols=hd,
    )
    proj = Matrix.identity(gd).hstack(Matrix.zero(gd, hd))
    ext = Extension(total, inj, proj, c.hpair, c.gpair)
    section = Section(
        ext,
        Matrix(
            tuple(Matrix.identity(gd).data) + tuple(Matrix.zero(hd, gd).data),
            cols=gd,
        ),
    )
    return ext, section


def assemble_extension(
    total: LieDerPair, inj: Matrix, proj: Matrix
) -> Extension:
    """Recover the fiber and quotient pairs from (total, inj, proj).

    The fiber bracket and derivation are pulled back through inj, the
    quotient ones pushed forward along proj through any section.  Raises
    when the data do not form an exact sequence of algebras with
    derivations; the result passes verify_extension.
    """
    ta, n = total.algebra, total.dim
    res = jacobi_check(ta)
    if not res:
        raise ValueError(f"total bracket is not a Lie bracket: {res.reason}")
    hd, gd = inj.cols, proj.rows
    if inj.rows != n or proj.cols != n:
        raise ValueError("inj/proj do not match the total algebra")
    if hd + gd != n:
        raise ValueError("dimensions do not add up to an exact sequence")
    if rank(inj) != hd:
        raise ValueError("inj is not injective")
    s = solve(proj, Matrix.identity(gd))
    if s is None:
        raise ValueError("proj is not surjective")

    def pull(v: Vec, what: str) -> Vec:
        u = solve_vec(inj, v)
        if u is None:
            raise ValueError(f"{what} lands outside the image of inj")
        return u

    hbr = {}
    for u in range(hd):
        for v in range(u + 1, hd):
            val = pull(ta.bracket(inj.col(u), inj.col(v)), "a fiber bracket")
            hbr[(u, v)] = {w: q for w, q in enumerate(val) if q != 0}
    halg = LieAlgebra.from_brackets(hd, hbr, name="fiber")
    kcols = [
        pull(total.d.apply(inj.col(u)), "the restricted derivation")
        for u in range(hd)
    ]
    kpair = LieDerPair(halg, Matrix.from_cols(kcols, rows=hd))

    gbr = {}
    for i in range(gd):
        for j in range(i + 1, gd):
            val = proj.apply(ta.bracket(s.col(i), s.col(j)))
            gbr[(i, j)] = {w: q for w, q in enumerate(val) if q != 0}
    galg = LieAlgebra.from_brackets(gd, gbr, name="quotient")
    gpair = LieDerPair(galg, proj @ total.d @ s)

    e = Extension(total, inj, proj, kpair, gpair)
    res = verify_extension(e)
    if not res:
        raise ValueError(f"not an extension: {res.reason}")
    return e


def canonical_section(e: Extension) -> Section:
    s = solve(e.proj, Matrix.identity(e.gpair.dim))
    assert s is not None  # proj is surjective for a valid extension
    return Section(e, s)


def _pull_back(e: Extension, v: Vec, what: str) -> Vec:
    u = solve_vec(e.inj, v)
    if u is None:
        raise ValueError(f"{what} lands outside the image of inj")
    return u


def extract_cocycle(e: Extension, s: Section) -> NonAbelianCocycle:
    """Read (varrho, omega, chi) off an extension through a section."""
    g, h, ta = e.gpair, e.kpair, e.total.algebra
    sm = s.matrix
    varrho = []
    for i in range(g.dim):
        cols = [
            _pull_back(
                e, ta.bracket(sm.col(i), e.inj.col(u)), "a bracket with the ideal"
            )
            for u in range(h.dim)
        ]
        varrho.append(Matrix.from_cols(cols, rows=h.dim))
    values = {}
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            raw = vec_sub(
                ta.bracket(sm.col(i), sm.col(j)),
                sm.apply(g.algebra.bracket_basis(i, j)),
            )
            values[(i, j)] = _pull_back(e, raw, "the bracket defect")
    omega = AltCochain.from_map(g.dim, 2, h.dim, values)
    cols = [
        _pull_back(
            e,
            vec_sub(e.total.d.apply(sm.col(i)), sm.apply(g.d.col(i))),
            "the derivation defect",
        )
        for i in range(g.dim)
    ]
    chi = Matrix.from_cols(cols, rows=h.dim)
    return NonAbelianCocycle(g, h, tuple(varrho), omega, chi)


def section_difference(e: Extension, s1: Section, s2: Section) -> Matrix:
    """The map tau = s1 - s2 pulled back to h; it witnesses the equivalence
    of the two extracted cocycle data."""
    cols = [
        _pull_back(
            e,
            vec_sub(s1.matrix.col(i), s2.matrix.col(i)),
            "a section difference",
        )
        for i in range(e.gpair.dim)
    ]
    return Matrix.from_cols(cols, rows=e.kpair.dim)


def iso_from_gauge(
    c: NonAbelianCocycle, c2: NonAbelianCocycle, tau: Matrix
) -> Matrix:
    """The isomorphism (x, u) -> (x, u + tau(x)) between the two built
    extensions, checked exactly on every basis pair.

    Requires the witness relations to hold for (c, c2, tau).
    """
    res = verify_equivalence_witness(c, c2, tau)
    if not res:
        raise ValueError(f"tau is not a witness: {res.reason}")
    gd, hd = c.gpair.dim, c.hpair.dim
    n = gd + hd
    kappa = Matrix(
        tuple(
            tuple(Matrix.identity(gd).data[i]) + zero_vec(hd)
            for i in range(gd)
        )
        + tuple(
            tuple(tau.data[u]) + tuple(Matrix.identity(hd).data[u])
            for u in range(hd)
        ),
        cols=n,
    )
    e1, _ = build_extension(c)
    e2, _ = build_extension(c2)
    t1, t2 = e1.total.algebra, e2.total.algebra
    for a in range(n):
        for b in range(a + 1, n):
            lhs = kappa.apply(t1.bracket_basis(a, b))
            rhs = t2.bracket(kappa.col(a), kappa.col(b))
            if lhs != rhs:
                raise ValueError("kappa fails to intertwine the brackets")
    if kappa @ e1.total.d != e2.total.d @ kappa:
        raise ValueError("kappa fails to intertwine the derivations")
    if kappa @ e1.inj != e2.inj or e2.proj @ kappa != e1.proj:
        raise ValueError("kappa fails to commute with inj/proj")
    return kappa
