"""Extending derivation pairs over a fixed Lie algebra extension.

Here the extension carries no derivations: given a total algebra with an
embedded ideal and a projection onto the quotient, a pair (K, D) of
derivations of the ideal and the quotient asks for a derivation of the
total algebra restricting to K and projecting to D.  The answer factors
through two computable stages: a compatibility witness chi solving an
ad-preimage problem, and a degree-2 cohomology class with coefficients
in the center of the ideal.  The pair extends exactly when a witness
exists and the class vanishes, in which case the lifted derivation is
assembled in closed form.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cochain import (
    AltCochain,
    CohomologyResult,
    Representation,
    _ce_matrix,
    cohomology,
    delta_op,
    formal_coboundary,
)
from .exactlin import (
    Matrix,
    Subspace,
    Vec,
    column_space,
    kernel_basis,
    rank,
    solve,
    solve_vec,
)
from .kernel import chi_cochain
from .lie import (
    Check,
    Derivation,
    LieAlgebra,
    OK,
    basis_vec,
    center,
    is_derivation,
    jacobi_check,
    leibniz_rows,
    restrict_to_subspace,
)


@dataclass(frozen=True)
class ExtensionContext:
    """A plain-algebra extension with a chosen section and the induced
    action and defect data; construct through build()."""

    total: LieAlgebra
    inj: Matrix
    proj: Matrix
    s: Matrix
    g: LieAlgebra
    h: LieAlgebra
    varrho: tuple[Matrix, ...]
    omega: AltCochain

    @staticmethod
    def build(
        total: LieAlgebra,
        inj: Matrix,
        proj: Matrix,
        s: Optional[Matrix] = None,
    ) -> "ExtensionContext":
        res = jacobi_check(total)
        if not res:
            raise ValueError(f"total algebra: {res.reason}")
        n = total.dim
        hd, gd = inj.cols, proj.rows
        if inj.rows != n or proj.cols != n:
            raise ValueError("inj or proj has wrong shape")
        if n != gd + hd:
            raise ValueError("dimensions do not add up")
        if rank(inj) != hd or rank(proj) != gd:
            raise ValueError("inj must embed and proj must surject")
        if not (proj @ inj).is_zero():
            raise ValueError("proj does not kill the fiber")
        if s is None:
            s = solve(proj, Matrix.identity(gd))
            assert s is not None
        if proj @ s != Matrix.identity(gd):
            raise ValueError("section does not split proj")

        def pull(v: Vec) -> Vec:
            u = solve_vec(inj, v)
            if u is None:
                raise ValueError("the fiber is not an ideal")
            return u

        # ideal check and induced bracket on the fiber
        for t in range(n):
            for u in range(hd):
                pull(total.bracket(basis_vec(n, t), inj.col(u)))
        hbr = {}
        for u in range(hd):
            for v in range(u + 1, hd):
                w = pull(total.bracket(inj.col(u), inj.col(v)))
                nz = {k: q for k, q in enumerate(w) if q != 0}
                if nz:
                    hbr[(u, v)] = nz
        h = LieAlgebra.from_brackets(hd, hbr, name="fiber")
        gbr = {}
        for i in range(gd):
            for j in range(i + 1, gd):
                w = proj.apply(total.bracket(s.col(i), s.col(j)))
                nz = {k: q for k, q in enumerate(w) if q != 0}
                if nz:
                    gbr[(i, j)] = nz
        g = LieAlgebra.from_brackets(gd, gbr, name="quotient")
        varrho = []
        for i in range(gd):
            cols = [
                pull(total.bracket(s.col(i), inj.col(u))) for u in range(hd)
            ]
            varrho.append(Matrix.from_cols(cols, rows=hd))
        values = {}
        for i in range(gd):
            for j in range(i + 1, gd):
                defect = total.bracket(s.col(i), s.col(j))
                defect = tuple(
                    a - b
                    for a, b in zip(defect, s.apply(g.bracket_basis(i, j)))
                )
                values[(i, j)] = pull(defect)
        omega = AltCochain.from_map(gd, 2, hd, values)
        return ExtensionContext(total, inj, proj, s, g, h, varrho, omega)

    def varrho_of(self, x: Vec) -> Matrix:
        m = Matrix.zero(self.h.dim, self.h.dim)
        for i, a in enumerate(x):
            if a != 0:
                m = m + self.varrho[i].scale(a)
        return m


@dataclass(frozen=True)
class DerivationPair:
    """Candidate derivations of the fiber and the quotient."""

    k_on_h: Derivation
    d_on_g: Derivation


def fiber_preserving_derivations(ctx: ExtensionContext) -> Subspace:
    """Derivations of the total algebra mapping the fiber into itself,
    as a subspace of flattened matrix space."""
    n = ctx.total.dim
    leib = leibniz_rows(ctx.total)
    im = column_space(ctx.inj)
    comp = [j for j in range(n) if j not in set(im.pivots)]
    reduced = [im.reduce(basis_vec(n, r)) for r in range(n)]
    rows = list(leib.data)
    # entry (r, c) of dhat sits at flat index r*n + c
    for u in range(ctx.inj.cols):
        col = ctx.inj.col(u)
        for out_idx in comp:
            row = [0] * (n * n)
            for c, a in enumerate(col):
                if a == 0:
                    continue
                for r in range(n):
                    row[r * n + c] += a * reduced[r][out_idx]
            rows.append(tuple(row))
    return kernel_basis(Matrix(rows, cols=n * n))


def gamma(ctx: ExtensionContext, dhat: Matrix) -> DerivationPair:
    """Restrict to the fiber and project to the quotient."""
    res = is_derivation(ctx.total, dhat)
    if not res:
        raise ValueError(f"not a derivation of the total algebra: {res.reason}")
    k = solve(ctx.inj, dhat @ ctx.inj)
    if k is None:
        raise ValueError("derivation does not preserve the fiber")
    d = ctx.proj @ dhat @ ctx.s
    return DerivationPair(Derivation(ctx.h, k), Derivation(ctx.g, d))


def is_compatible(
    ctx: ExtensionContext, pair: DerivationPair
) -> Optional[Matrix]:
    """Solve ad(chi(x)) = K rho(x) - rho(Dx) - rho(x) K per basis vector;
    None when some defect is not an inner derivation of the fiber."""
    km, dm = pair.k_on_h.matrix, pair.d_on_g.matrix
    h = ctx.h
    ad_map = Matrix.from_cols(
        [h.ad(u).flatten() for u in range(h.dim)], rows=h.dim * h.dim
    )
    cols = []
    for i in range(ctx.g.dim):
        defect = km @ ctx.varrho[i] - ctx.varrho_of(dm.col(i)) - ctx.varrho[i] @ km
        u = solve_vec(ad_map, defect.flatten())
        if u is None:
            return None
        cols.append(u)
    return Matrix.from_cols(cols, rows=h.dim)


@dataclass(frozen=True)
class ObstructionW:
    """Degree-2 class obstructing the lift of a compatible pair."""

    cochain: AltCochain
    h2: CohomologyResult
    coords: Vec
    is_zero: bool


def _center_rep(ctx: ExtensionContext) -> tuple[Subspace, Representation]:
    z = center(ctx.h)
    rho = []
    for i, m in enumerate(ctx.varrho):
        r = restrict_to_subspace(m, z)
        assert r is not None  # derivations preserve the center
        rho.append(r)
    return z, Representation(ctx.g, z.dim, tuple(rho))


def obstruction_w(
    ctx: ExtensionContext, pair: DerivationPair, chi: Matrix
) -> ObstructionW:
    """Class of d^F chi + delta omega in degree-2 cohomology of the
    quotient with coefficients in the center of the fiber."""
    km, dm = pair.k_on_h.matrix, pair.d_on_g.matrix
    raw = formal_coboundary(ctx.g, ctx.varrho, chi_cochain(chi)) + delta_op(
        ctx.omega, dm, km
    )
    z, rep = _center_rep(ctx)

    def to_z(v: Vec) -> Vec:
        c = z.coordinates(v)
        if c is None:
            raise ValueError(
                "obstruction escapes the center; invalid witness"
            )
        return c

    cochain = raw.map_values(to_z, z.dim)
    h2 = cohomology(rep, 2, "ce")
    flat = cochain.flatten()
    return ObstructionW(
        cochain=cochain,
        h2=h2,
        coords=h2.class_coords(flat),
        is_zero=h2.is_coboundary(flat),
    )


def is_extensible(
    ctx: ExtensionContext, pair: DerivationPair
) -> Optional[Derivation]:
    """Lift (K, D) to the total algebra, or None when obstructed."""
    chi = is_compatible(ctx, pair)
    if chi is None:
        return None
    km, dm = pair.k_on_h.matrix, pair.d_on_g.matrix
    raw = formal_coboundary(ctx.g, ctx.varrho, chi_cochain(chi)) + delta_op(
        ctx.omega, dm, km
    )
    z, rep = _center_rep(ctx)
    flat_z = []
    for v in raw.values:
        c = z.coordinates(v)
        if c is None:
            raise RuntimeError("obstruction escapes the center")
        flat_z.extend(c)
    sol = solve_vec(_ce_matrix(rep, 1), tuple(flat_z))
    if sol is None:
        return None
    theta = AltCochain.from_flat(ctx.g.dim, 1, z.dim, sol)
    theta_h = Matrix.from_cols(
        [z.combine(theta.value((i,))) for i in range(ctx.g.dim)],
        rows=ctx.h.dim,
    )
    chi2 = chi - theta_h
    basis = ctx.s.hstack(ctx.inj)
    basis_inv = solve(basis, Matrix.identity(ctx.total.dim))
    assert basis_inv is not None
    images = (ctx.s @ dm + ctx.inj @ chi2).hstack(ctx.inj @ km)
    dhat = images @ basis_inv
    chk = _lift_check(ctx, pair, dhat)
    if not chk:
        raise RuntimeError(f"constructed lift fails: {chk.reason}")
    return Derivation(ctx.total, dhat)


def _lift_check(
    ctx: ExtensionContext, pair: DerivationPair, dhat: Matrix
) -> Check:
    res = is_derivation(ctx.total, dhat)
    if not res:
        return res
    if dhat @ ctx.inj != ctx.inj @ pair.k_on_h.matrix:
        return Check.fail("lift does not restrict to K on the fiber")
    if ctx.proj @ dhat != pair.d_on_g.matrix @ ctx.proj:
        return Check.fail("lift does not project to D")
    return OK


@dataclass(frozen=True)
class ExtensibilityReport:
    """Everything the decision produced, for diagnostics."""

    compatible: bool
    chi: Optional[Matrix]
    obstruction: Optional[ObstructionW]
    dhat: Optional[Derivation]

    @property
    def extensible(self) -> bool:
        return self.dhat is not None


def extensibility_report(
    ctx: ExtensionContext, pair: DerivationPair
) -> ExtensibilityReport:
    chi = is_compatible(ctx, pair)
    if chi is None:
        return ExtensibilityReport(False, None, None, None)
    w = obstruction_w(ctx, pair, chi)
    if not w.is_zero:
        return ExtensibilityReport(True, chi, w, None)
    dhat = is_extensible(ctx, pair)
    assert dhat is not None
    return ExtensibilityReport(True, chi, w, dhat)
