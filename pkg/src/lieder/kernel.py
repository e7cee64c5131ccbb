"""Kernels valued in outer derivations, and when they integrate.

A kernel assigns to each basis vector of g a derivation of h, required
to satisfy the bracket and derivation compatibilities only modulo inner
derivations.  Lifting the defects through ad produces a candidate
(omega, chi); the failure of that candidate to satisfy the remaining
equations is measured by a degree-3 class in the twisted cohomology of
the center of h, and the kernel integrates to an extension exactly when
the class vanishes.  Realization solves for the correction directly, so
it does not presume the class computation.  Cocycle data sharing one
kernel form a torsor under the degree-2 cohomology.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Optional

from .cochain import (
    AltCochain,
    CohomologyResult,
    LieDerCochain,
    LieDerRep,
    _lieder_matrix,
    cohomology,
    delta_op,
    formal_coboundary,
    lieder_coboundary,
)
from .exactlin import Matrix, Subspace, Vec, kernel_basis, solve_vec, vec_sub
from .lie import (
    Check,
    LieAlgebra,
    LieDerPair,
    OK,
    center,
    derivation_space,
    inner_derivations,
    is_derivation,
    restrict_to_subspace,
)
from .nonabelian import (
    Extension,
    NonAbelianCocycle,
    Section,
    apply_gauge,
    extract_cocycle,
    verify_cocycle,
)


@dataclass(frozen=True)
class KernelDatum:
    """Chosen derivation representatives of an outer action of g on h."""

    gpair: LieDerPair
    hpair: LieDerPair
    reps: tuple[Matrix, ...]

    def __post_init__(self):
        gd, hd = self.gpair.dim, self.hpair.dim
        if len(self.reps) != gd or any(
            m.rows != hd or m.cols != hd for m in self.reps
        ):
            raise ValueError("kernel representatives have wrong shape")

    def rep_of(self, x: Vec) -> Matrix:
        hd = self.hpair.dim
        m = Matrix.zero(hd, hd)
        for i, a in enumerate(x):
            if a != 0:
                m = m + self.reps[i].scale(a)
        return m


def verify_kernel(k: KernelDatum) -> Check:
    g, h = k.gpair.algebra, k.hpair.algebra
    inner = inner_derivations(h)
    for i in range(g.dim):
        if not is_derivation(h, k.reps[i]):
            return Check.fail(f"representative {i} is not a derivation of h")
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            defect = k.reps[i].commutator(k.reps[j]) - k.rep_of(
                g.bracket_basis(i, j)
            )
            if not inner.contains(defect.flatten()):
                return Check.fail(
                    f"bracket compatibility fails modulo inner on ({i},{j})"
                )
    kd = k.hpair.d
    for i in range(g.dim):
        defect = kd.commutator(k.reps[i]) - k.rep_of(k.gpair.d.col(i))
        if not inner.contains(defect.flatten()):
            return Check.fail(
                f"derivation compatibility fails modulo inner at {i}"
            )
    return OK


def induced_rep(k: KernelDatum) -> LieDerRep:
    """Restriction of the representatives to the center of h.

    Well-defined because inner derivations kill the center; the result
    is checked to be an honest twisted representation.
    """
    h = k.hpair.algebra
    z = center(h)
    rho = []
    for i, m in enumerate(k.reps):
        r = restrict_to_subspace(m, z)
        if r is None:
            raise ValueError(
                f"representative {i} does not preserve the center"
            )
        rho.append(r)
    t = restrict_to_subspace(k.hpair.d, z)
    if t is None:
        raise ValueError("the derivation of h does not preserve the center")
    return LieDerRep(
        algebra=k.gpair.algebra,
        space_dim=z.dim,
        rho=tuple(rho),
        pair=k.gpair,
        t=t,
    )


def kernel_of_extension(e: Extension, s: Section) -> KernelDatum:
    c = extract_cocycle(e, s)
    return KernelDatum(e.gpair, e.kpair, c.varrho)


@dataclass(frozen=True)
class KernelLift:
    """A kernel with the ad-defects lifted to concrete (omega, chi)."""

    kernel: KernelDatum
    varrho: tuple[Matrix, ...]
    omega: AltCochain
    chi: Matrix


def choose_lift(k: KernelDatum, free_value=0) -> KernelLift:
    """Solve ad(omega(i,j)) and ad(chi(i)) for the compatibility defects.

    Free variables (the central directions) are pinned to free_value;
    zero is the canonical lift, one is the alternate used to probe lift
    independence.
    """
    g, h = k.gpair.algebra, k.hpair.algebra
    ad_map = Matrix.from_cols(
        [h.ad(u).flatten() for u in range(h.dim)], rows=h.dim * h.dim
    )
    values = {}
    for i in range(g.dim):
        for j in range(i + 1, g.dim):
            defect = k.reps[i].commutator(k.reps[j]) - k.rep_of(
                g.bracket_basis(i, j)
            )
            u = solve_vec(ad_map, defect.flatten(), free_value)
            if u is None:
                raise ValueError("bracket defect is not inner; not a kernel")
            values[(i, j)] = u
    omega = AltCochain.from_map(g.dim, 2, h.dim, values)
    kd = k.hpair.d
    cols = []
    for i in range(g.dim):
        defect = kd.commutator(k.reps[i]) - k.rep_of(k.gpair.d.col(i))
        u = solve_vec(ad_map, defect.flatten(), free_value)
        if u is None:
            raise ValueError("derivation defect is not inner; not a kernel")
        cols.append(u)
    chi = Matrix.from_cols(cols, rows=h.dim)
    return KernelLift(k, k.reps, omega, chi)


def chi_cochain(chi: Matrix) -> AltCochain:
    return AltCochain.from_map(
        chi.cols, 1, chi.rows, {(i,): chi.col(i) for i in range(chi.cols)}
    )


def _obstruction_pair(
    k: KernelDatum, lift_: KernelLift
) -> tuple[LieDerCochain, LieDerRep]:
    """(d^F omega, d^F chi + delta omega), coordinatized on the center."""
    g = k.gpair.algebra
    h = k.hpair.algebra
    z = center(h)
    top = formal_coboundary(g, lift_.varrho, lift_.omega)
    low = formal_coboundary(g, lift_.varrho, chi_cochain(lift_.chi)) + delta_op(
        lift_.omega, k.gpair.d, k.hpair.d
    )

    def to_z(v: Vec) -> Vec:
        c = z.coordinates(v)
        if c is None:
            raise ValueError("obstruction values land outside the center")
        return c

    pair = LieDerCochain(
        top.map_values(to_z, z.dim), low.map_values(to_z, z.dim)
    )
    rep = induced_rep(k)
    closed = lieder_coboundary(rep, pair)
    if not closed.is_zero():
        raise ValueError("obstruction pair is not closed; not a kernel")
    return pair, rep


@dataclass(frozen=True)
class ObstructionClass3:
    """Degree-3 class of a kernel, with its ambient cohomology."""

    kernel: KernelDatum
    lift: KernelLift
    pair: LieDerCochain
    h3: CohomologyResult
    coords: Vec
    is_zero: bool


def obstruction_ch(k: KernelDatum, free_value=0) -> ObstructionClass3:
    res = verify_kernel(k)
    if not res:
        raise ValueError(f"not a kernel: {res.reason}")
    lift_ = choose_lift(k, free_value)
    pair, rep = _obstruction_pair(k, lift_)
    h3 = cohomology(rep, 3, "lieder")
    flat = pair.flatten()
    return ObstructionClass3(
        kernel=k,
        lift=lift_,
        pair=pair,
        h3=h3,
        coords=h3.class_coords(flat),
        is_zero=h3.is_coboundary(flat),
    )


def realize_kernel(
    k: KernelDatum, free_value=0
) -> Optional[NonAbelianCocycle]:
    """Correct a lift into a verified cocycle, or None when obstructed.

    Solves the coboundary equation directly, so success here is an
    independent confirmation that the obstruction class vanishes.
    """
    res = verify_kernel(k)
    if not res:
        raise ValueError(f"not a kernel: {res.reason}")
    lift_ = choose_lift(k, free_value)
    pair, rep = _obstruction_pair(k, lift_)
    sol = solve_vec(_lieder_matrix(rep, 2), pair.flatten())
    if sol is None:
        return None
    g, h = k.gpair.algebra, k.hpair.algebra
    z = center(h)
    corr = LieDerCochain.from_flat(g.dim, 2, z.dim, sol)
    eta = corr.top.map_values(z.combine, h.dim)
    theta = Matrix.from_cols(
        [z.combine(corr.lower.value((i,))) for i in range(g.dim)],
        rows=h.dim,
    )
    c = NonAbelianCocycle(
        k.gpair, k.hpair, lift_.varrho, lift_.omega - eta, lift_.chi - theta
    )
    chk = verify_cocycle(c)
    if not chk:
        raise RuntimeError(f"corrected lift fails to verify: {chk.reason}")
    return c


def torsor_act(
    base: NonAbelianCocycle, cls: LieDerCochain
) -> NonAbelianCocycle:
    """Shift a verified cocycle by a degree-2 central cocycle (z-coordinates);
    the kernel is unchanged and the result verifies."""
    k = KernelDatum(base.gpair, base.hpair, base.varrho)
    rep = induced_rep(k)
    h = base.hpair.algebra
    z = center(h)
    if cls.degree != 2 or cls.top.target_dim != z.dim:
        raise ValueError("expected a degree-2 cochain on center coordinates")
    if not lieder_coboundary(rep, cls).is_zero():
        raise ValueError("the acting cochain is not a cocycle")
    eta = cls.top.map_values(z.combine, h.dim)
    theta = Matrix.from_cols(
        [z.combine(cls.lower.value((i,))) for i in range(base.gpair.dim)],
        rows=h.dim,
    )
    return NonAbelianCocycle(
        base.gpair,
        base.hpair,
        base.varrho,
        base.omega - eta,
        base.chi - theta,
    )


def ext_class_difference(
    base: NonAbelianCocycle, other: NonAbelianCocycle
) -> tuple[Vec, LieDerCochain, CohomologyResult]:
    """Class in degree-2 cohomology separating two cocycles with one kernel.

    Gauges other so the derivation families agree, reads off the central
    difference, and returns its class coordinates; zero coordinates mean
    the two data sets are gauge-equivalent.
    """
    if base.gpair != other.gpair or base.hpair != other.hpair:
        raise ValueError("data live over different pairs")
    g, h = base.gpair.algebra, base.hpair.algebra
    ad_map = Matrix.from_cols(
        [h.ad(u).flatten() for u in range(h.dim)], rows=h.dim * h.dim
    )
    cols = []
    for i in range(g.dim):
        d = other.varrho[i] - base.varrho[i]
        u = solve_vec(ad_map, d.flatten())
        if u is None:
            raise ValueError("the two data sets induce different kernels")
        cols.append(u)
    tau = Matrix.from_cols(cols, rows=h.dim)
    aligned = apply_gauge(other, tau)
    z = center(h)

    def to_z(v: Vec) -> Vec:
        c = z.coordinates(v)
        if c is None:
            raise ValueError("difference is not central; kernels disagree")
        return c

    eta = (base.omega - aligned.omega).map_values(to_z, z.dim)
    theta_cols = [
        to_z(vec_sub(base.chi.col(i), aligned.chi.col(i)))
        for i in range(g.dim)
    ]
    theta = AltCochain.from_map(
        g.dim, 1, z.dim, {(i,): theta_cols[i] for i in range(g.dim)}
    )
    pair = LieDerCochain(eta, theta)
    k = KernelDatum(base.gpair, base.hpair, base.varrho)
    rep = induced_rep(k)
    if not lieder_coboundary(rep, pair).is_zero():
        raise RuntimeError("central difference fails to be closed")
    h2 = cohomology(rep, 2, "lieder")
    return h2.class_coords(pair.flatten()), pair, h2


def pullback_pair(k: KernelDatum) -> LieDerPair:
    """The fiber product of g with the derivations of h over the outer
    derivations, with the induced bracket and derivation."""
    g, h = k.gpair.algebra, k.hpair.algebra
    der = derivation_space(h)
    dmats = tuple(
        Matrix.unflatten(r, h.dim, h.dim) for r in der.basis.data
    )
    inner_rows = []
    for r in inner_derivations(h).basis.data:
        c = der.coordinates(r)
        assert c is not None
        inner_rows.append(c)
    inner_in_der = Subspace.from_rows(der.dim, inner_rows)
    kappa = []
    for i, m in enumerate(k.reps):
        c = der.coordinates(m.flatten())
        if c is None:
            raise ValueError(f"representative {i} is not a derivation of h")
        kappa.append(c)
    # (x, w) belongs to the pullback iff w - sum x_i kappa_i is inner.
    amb = g.dim + der.dim
    comp = [
        j for j in range(der.dim) if j not in set(inner_in_der.pivots)
    ]
    unit = Matrix.identity(der.dim)
    reduced_kappa = [
        inner_in_der.reduce(tuple(-x for x in kappa[i]))
        for i in range(g.dim)
    ]
    reduced_unit = [inner_in_der.reduce(unit.data[j]) for j in range(der.dim)]
    rows = []
    for out_idx in comp:
        row = [reduced_kappa[i][out_idx] for i in range(g.dim)]
        row.extend(reduced_unit[j][out_idx] for j in range(der.dim))
        rows.append(tuple(row))
    space = kernel_basis(Matrix(rows, cols=amb))
    dim = space.dim

    def as_pair(v: Vec) -> tuple[Vec, Matrix]:
        x = v[: g.dim]
        w = v[g.dim :]
        m = Matrix.zero(h.dim, h.dim)
        for a, bm in zip(w, dmats):
            if a != 0:
                m = m + bm.scale(a)
        return x, m

    basis_pairs = [as_pair(r) for r in space.basis.data]
    brackets = {}
    for r in range(dim):
        for s in range(r + 1, dim):
            xr, mr = basis_pairs[r]
            xs, ms = basis_pairs[s]
            bx = g.bracket(xr, xs)
            bw = der.coordinates(mr.commutator(ms).flatten())
            assert bw is not None
            coords = space.coordinates(tuple(bx) + tuple(bw))
            if coords is None:
                raise RuntimeError("pullback is not closed under the bracket")
            nz = {t: q for t, q in enumerate(coords) if q != 0}
            if nz:
                brackets[(r, s)] = nz
    algebra = LieAlgebra.from_brackets(dim, brackets, name="pullback")
    kd = k.hpair.d
    cols = []
    for xr, mr in basis_pairs:
        dw = der.coordinates(kd.commutator(mr).flatten())
        assert dw is not None
        coords = space.coordinates(
            tuple(k.gpair.d.apply(xr)) + tuple(dw)
        )
        if coords is None:
            raise RuntimeError("pullback is not stable under the derivation")
        cols.append(coords)
    dtilde = Matrix.from_cols(cols, rows=dim)
    return LieDerPair(algebra, dtilde)
