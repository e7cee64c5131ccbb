"""The graded Lie algebra controlling extensions of algebras with derivations.

Multilinear alternating maps on the direct sum space g + h with values
in g + h carry the Nijenhuis-Richardson bracket; a map defined on
wedge-k of g tensor wedge-l of h lifts to the sum space by a shuffle
sum, and since g indices precede h indices every increasing tuple picks
up exactly one shuffle, with positive sign.  All brackets here are
computed generically on lifted maps and decomposed back into bidegrees.

Elements of the controlling algebra in degree n are pairs (f, alpha) of
h-valued bidegree families with at least one g slot; the differential is
bracketing with the structure maps (brackets of g and h, derivations D
and K).  Degree-1 elements satisfying the Maurer-Cartan equation are
exactly the verified cocycle data of the non-abelian theory, and the
degree-0 gauge action matches the cocycle-level gauge transform.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Mapping, Optional

from .cochain import AltCochain, comb, comb_pos, shuffle_sign
from .exactlin import Matrix, Vec, vec, vec_add, vec_is_zero, vec_scale, zero_vec
from .lie import Check, LieDerPair, OK
from .nonabelian import NonAbelianCocycle


@dataclass(frozen=True)
class BigradedCochain:
    """Alternating map on wedge-k of g tensor wedge-l of h, valued in g or h."""

    gdim: int
    hdim: int
    k: int
    l: int
    target: str  # "g" | "h"
    values: tuple[Vec, ...]  # over comb(gdim,k) x comb(hdim,l), h fastest

    def __post_init__(self):
        if self.target not in ("g", "h"):
            raise ValueError("target must be 'g' or 'h'")
        n = len(comb(self.gdim, self.k)) * len(comb(self.hdim, self.l))
        t = self.gdim if self.target == "g" else self.hdim
        if len(self.values) != n or any(len(v) != t for v in self.values):
            raise ValueError("value table has wrong shape")

    @staticmethod
    def zero(gdim: int, hdim: int, k: int, l: int, target: str) -> "BigradedCochain":
        n = len(comb(gdim, k)) * len(comb(hdim, l))
        t = gdim if target == "g" else hdim
        return BigradedCochain(gdim, hdim, k, l, target, (zero_vec(t),) * n)

    @staticmethod
    def from_map(
        gdim: int,
        hdim: int,
        k: int,
        l: int,
        target: str,
        entries: Mapping[tuple[tuple[int, ...], tuple[int, ...]], object],
    ) -> "BigradedCochain":
        t = gdim if target == "g" else hdim
        hcount = len(comb(hdim, l))
        values = [list(zero_vec(t)) for _ in comb(gdim, k) for _ in comb(hdim, l)]
        gpos, hpos = comb_pos(gdim, k), comb_pos(hdim, l)
        for (gt, ht), v in entries.items():
            values[gpos[tuple(gt)] * hcount + hpos[tuple(ht)]] = vec(v)
        return BigradedCochain(
            gdim, hdim, k, l, target, tuple(tuple(v) for v in values)
        )

    def value(self, gt: tuple[int, ...], ht: tuple[int, ...]) -> Vec:
        hcount = len(comb(self.hdim, self.l))
        return self.values[
            comb_pos(self.gdim, self.k)[gt] * hcount
            + comb_pos(self.hdim, self.l)[ht]
        ]

    def is_zero(self) -> bool:
        return all(vec_is_zero(v) for v in self.values)

    def __add__(self, other: "BigradedCochain") -> "BigradedCochain":
        if (self.gdim, self.hdim, self.k, self.l, self.target) != (
            other.gdim,
            other.hdim,
            other.k,
            other.l,
            other.target,
        ):
            raise ValueError("bidegree mismatch")
        return BigradedCochain(
            self.gdim,
            self.hdim,
            self.k,
            self.l,
            self.target,
            tuple(vec_add(a, b) for a, b in zip(self.values, other.values)),
        )

    def scale(self, q) -> "BigradedCochain":
        q = Fraction(q)
        return BigradedCochain(
            self.gdim,
            self.hdim,
            self.k,
            self.l,
            self.target,
            tuple(vec_scale(q, v) for v in self.values),
        )


def lift(bc: BigradedCochain) -> AltCochain:
    """Shuffle extension to the sum space.

    g basis indices come first in the sum space, so on an increasing
    tuple exactly one shuffle survives and its sign is positive: the
    lifted value at (gt, ht) is just the block value, embedded.
    """
    n = bc.gdim + bc.hdim
    deg = bc.k + bc.l
    values = []
    for T in comb(n, deg):
        gt = tuple(i for i in T if i < bc.gdim)
        ht = tuple(i - bc.gdim for i in T if i >= bc.gdim)
        if len(gt) != bc.k or len(ht) != bc.l:
            values.append(zero_vec(n))
            continue
        v = bc.value(gt, ht)
        if bc.target == "g":
            values.append(tuple(v) + zero_vec(bc.hdim))
        else:
            values.append(zero_vec(bc.gdim) + tuple(v))
    return AltCochain(n, deg, n, values)


def decompose(alt: AltCochain, gdim: int, hdim: int) -> dict:
    """Split a map on the sum space into nonzero bidegree blocks, keyed by
    (k, l, target)."""
    if alt.source_dim != gdim + hdim or alt.target_dim != gdim + hdim:
        raise ValueError("not a map on the sum space")
    out: dict[tuple[int, int, str], BigradedCochain] = {}
    deg = alt.degree
    for k in range(deg + 1):
        l = deg - k
        if k > gdim or l > hdim:
            continue
        gvals, hvals = {}, {}
        for gt in comb(gdim, k):
            for ht in comb(hdim, l):
                T = gt + tuple(u + gdim for u in ht)
                v = alt.value(tuple(sorted(T)))
                gpart, hpart = v[:gdim], v[gdim:]
                if not vec_is_zero(gpart):
                    gvals[(gt, ht)] = gpart
                if not vec_is_zero(hpart):
                    hvals[(gt, ht)] = hpart
        if gvals:
            out[(k, l, "g")] = BigradedCochain.from_map(
                gdim, hdim, k, l, "g", gvals
            )
        if hvals:
            out[(k, l, "h")] = BigradedCochain.from_map(
                gdim, hdim, k, l, "h", hvals
            )
    return out


def nr_compose(a: AltCochain, b: AltCochain) -> AltCochain:
    """Insertion of b into the first slot of a, summed over shuffles."""
    if a.source_dim != b.source_dim or a.target_dim != a.source_dim:
        raise ValueError("composition needs maps on one space")
    n_v = a.source_dim
    m, n = a.degree, b.degree
    deg = m + n - 1
    values = []
    for T in comb(n_v, deg):
        val = zero_vec(n_v)
        for S in combinations(range(deg), n):
            rest = tuple(T[i] for i in range(deg) if i not in S)
            inner = b.eval_indices(tuple(T[i] for i in S))
            if vec_is_zero(inner):
                continue
            term = a.eval_first_vec(inner, rest)
            if shuffle_sign(S) < 0:
                term = vec_scale(Fraction(-1), term)
            val = vec_add(val, term)
        values.append(val)
    return AltCochain(n_v, deg, n_v, values)


def nr_bracket(a: AltCochain, b: AltCochain) -> AltCochain:
    """Graded commutator of insertions; degree of an arity-m map is m - 1."""
    sign = -1 if ((a.degree - 1) * (b.degree - 1)) % 2 else 1
    second = nr_compose(b, a)
    if sign > 0:
        second = -second
    return nr_compose(a, b) + second


@dataclass(frozen=True)
class GradedElement:
    """Degree-n element (f, alpha) of the controlling algebra: h-valued
    blocks with at least one g slot, arities n+1 and n."""

    degree: int
    f: tuple[tuple[tuple[int, int], BigradedCochain], ...]
    alpha: tuple[tuple[tuple[int, int], BigradedCochain], ...]

    @staticmethod
    def make(
        degree: int,
        f: Mapping[tuple[int, int], BigradedCochain],
        alpha: Mapping[tuple[int, int], BigradedCochain] = {},
    ) -> "GradedElement":
        if degree < 0:
            raise ValueError("degree must be >= 0")
        if degree == 0 and alpha:
            raise ValueError("degree 0 has no alpha part")
        fb, ab = {}, {}
        for part, blocks, arity in (("f", f, degree + 1), ("alpha", alpha, degree)):
            for (k, l), bc in blocks.items():
                if bc.is_zero():
                    continue
                if (bc.k, bc.l) != (k, l):
                    raise ValueError("block key disagrees with its bidegree")
                if k + l != arity or k < 1 or bc.target != "h":
                    raise ValueError(
                        f"{part} block ({k},{l},{bc.target}) outside the graded space"
                    )
                (fb if part == "f" else ab)[(k, l)] = bc
        return GradedElement(
            degree,
            tuple(sorted(fb.items())),
            tuple(sorted(ab.items())),
        )

    def f_dict(self) -> dict:
        return dict(self.f)

    def alpha_dict(self) -> dict:
        return dict(self.alpha)

    def dims(self) -> Optional[tuple[int, int]]:
        for _, bc in self.f + self.alpha:
            return bc.gdim, bc.hdim
        return None

    def is_zero(self) -> bool:
        return not self.f and not self.alpha

    def scale(self, q) -> "GradedElement":
        return GradedElement.make(
            self.degree,
            {kl: bc.scale(q) for kl, bc in self.f},
            {kl: bc.scale(q) for kl, bc in self.alpha},
        )

    def __add__(self, other: "GradedElement") -> "GradedElement":
        if self.degree != other.degree:
            raise ValueError("degree mismatch")
        f = dict(self.f)
        for kl, bc in other.f:
            f[kl] = f[kl] + bc if kl in f else bc
        a = dict(self.alpha)
        for kl, bc in other.alpha:
            a[kl] = a[kl] + bc if kl in a else bc
        return GradedElement.make(self.degree, f, a)

    def __sub__(self, other: "GradedElement") -> "GradedElement":
        return self + other.scale(-1)


def _lift_sum(
    blocks: tuple, degree: int, gdim: int, hdim: int
) -> AltCochain:
    n = gdim + hdim
    out = AltCochain.zero(n, degree, n)
    for _, bc in blocks:
        out = out + lift(bc)
    return out


def _in_l_blocks(parts: dict, what: str) -> dict:
    """Keep h-valued blocks with a g slot; anything else signals a bug."""
    out = {}
    for (k, l, target), bc in parts.items():
        if target != "h" or k < 1:
            raise RuntimeError(
                f"{what} produced a block ({k},{l},{target}) outside the graded space"
            )
        out[(k, l)] = bc
    return out


class LghContext:
    """The pair of algebras-with-derivations, with the structure maps
    lifted once to the sum space."""

    def __init__(self, gpair: LieDerPair, hpair: LieDerPair):
        self.gpair = gpair
        self.hpair = hpair
        gd, hd = gpair.dim, hpair.dim
        self.gdim, self.hdim = gd, hd
        pi_g = BigradedCochain.from_map(
            gd,
            hd,
            2,
            0,
            "g",
            {
                ((i, j), ()): gpair.algebra.bracket_basis(i, j)
                for i in range(gd)
                for j in range(i + 1, gd)
            },
        )
        pi_h = BigradedCochain.from_map(
            gd,
            hd,
            0,
            2,
            "h",
            {
                ((), (u, v)): hpair.algebra.bracket_basis(u, v)
                for u in range(hd)
                for v in range(u + 1, hd)
            },
        )
        d_g = BigradedCochain.from_map(
            gd, hd, 1, 0, "g", {((i,), ()): gpair.d.col(i) for i in range(gd)}
        )
        k_h = BigradedCochain.from_map(
            gd, hd, 0, 1, "h", {((), (u,)): hpair.d.col(u) for u in range(hd)}
        )
        self.pi = lift(pi_g) + lift(pi_h)
        self.delta = lift(d_g) + lift(k_h)

    def lift_f(self, e: GradedElement) -> AltCochain:
        return _lift_sum(e.f, e.degree + 1, self.gdim, self.hdim)

    def lift_alpha(self, e: GradedElement) -> Optional[AltCochain]:
        if e.degree == 0:
            return None
        return _lift_sum(e.alpha, e.degree, self.gdim, self.hdim)


def lgh_differential(ctx: LghContext, e: GradedElement) -> GradedElement:
    """Bracketing with the structure maps: d(f, a) = ([pi, f],
    [pi, a] - (-1)^deg [f, D + K])."""
    f = ctx.lift_f(e)
    df = nr_bracket(ctx.pi, f)
    da = nr_bracket(f, ctx.delta)
    if e.degree % 2 == 0:
        da = -da
    a = ctx.lift_alpha(e)
    if a is not None:
        da = da + nr_bracket(ctx.pi, a)
    return GradedElement.make(
        e.degree + 1,
        _in_l_blocks(decompose(df, ctx.gdim, ctx.hdim), "the differential"),
        _in_l_blocks(decompose(da, ctx.gdim, ctx.hdim), "the differential"),
    )


def lgh_bracket(
    ctx: LghContext, e1: GradedElement, e2: GradedElement
) -> GradedElement:
    """[(f, a), (g, b)] = ([f, g], [f, b] - (-1)^(deg deg) [g, a])."""
    f1, f2 = ctx.lift_f(e1), ctx.lift_f(e2)
    out_f = nr_bracket(f1, f2)
    n = ctx.gdim + ctx.hdim
    out_a = AltCochain.zero(n, e1.degree + e2.degree, n)
    a2 = ctx.lift_alpha(e2)
    if a2 is not None:
        out_a = out_a + nr_bracket(f1, a2)
    a1 = ctx.lift_alpha(e1)
    if a1 is not None:
        term = nr_bracket(f2, a1)
        if (e1.degree * e2.degree) % 2 == 0:
            term = -term
        out_a = out_a + term
    return GradedElement.make(
        e1.degree + e2.degree,
        _in_l_blocks(decompose(out_f, ctx.gdim, ctx.hdim), "the bracket"),
        _in_l_blocks(decompose(out_a, ctx.gdim, ctx.hdim), "the bracket"),
    )


_MC_NAMES = {
    (3, 0, "f"): "wedge3 g -> h",
    (2, 1, "f"): "wedge2 g tensor h -> h",
    (1, 2, "f"): "g tensor wedge2 h -> h",
    (2, 0, "alpha"): "wedge2 g -> h",
    (1, 1, "alpha"): "g tensor h -> h",
}


def mc_check(ctx: LghContext, e: GradedElement) -> Check:
    """Does d(e) + [e, e]/2 vanish?  Componentwise report on failure."""
    if e.degree != 1:
        raise ValueError("Maurer-Cartan elements have degree 1")
    curvature = lgh_differential(ctx, e) + lgh_bracket(ctx, e, e).scale(
        Fraction(1, 2)
    )
    for part, blocks in (("f", curvature.f), ("alpha", curvature.alpha)):
        for (k, l), bc in blocks:
            if not bc.is_zero():
                name = _MC_NAMES.get((k, l, part), f"({k},{l},{part})")
                return Check.fail(f"curvature is nonzero in {name}")
    return OK


def cocycle_to_mc(c: NonAbelianCocycle) -> GradedElement:
    """Shape bijection: (varrho, omega, chi) -> (omega + varrho, chi)."""
    gd, hd = c.gpair.dim, c.hpair.dim
    omega_bc = BigradedCochain.from_map(
        gd,
        hd,
        2,
        0,
        "h",
        {
            ((i, j), ()): c.omega.value((i, j))
            for i in range(gd)
            for j in range(i + 1, gd)
        },
    )
    varrho_bc = BigradedCochain.from_map(
        gd,
        hd,
        1,
        1,
        "h",
        {
            ((i,), (u,)): tuple(c.varrho[i].col(u))
            for i in range(gd)
            for u in range(hd)
        },
    )
    chi_bc = BigradedCochain.from_map(
        gd, hd, 1, 0, "h", {((i,), ()): c.chi.col(i) for i in range(gd)}
    )
    return GradedElement.make(
        1, {(2, 0): omega_bc, (1, 1): varrho_bc}, {(1, 0): chi_bc}
    )


def mc_to_cocycle(ctx: LghContext, e: GradedElement) -> NonAbelianCocycle:
    if e.degree != 1:
        raise ValueError("expected a degree-1 element")
    gd, hd = ctx.gdim, ctx.hdim
    f, a = e.f_dict(), e.alpha_dict()
    omega_bc = f.get((2, 0), BigradedCochain.zero(gd, hd, 2, 0, "h"))
    varrho_bc = f.get((1, 1), BigradedCochain.zero(gd, hd, 1, 1, "h"))
    chi_bc = a.get((1, 0), BigradedCochain.zero(gd, hd, 1, 0, "h"))
    omega = AltCochain.from_map(
        gd,
        2,
        hd,
        {
            (i, j): omega_bc.value((i, j), ())
            for i in range(gd)
            for j in range(i + 1, gd)
        },
    )
    varrho = tuple(
        Matrix.from_cols(
            [varrho_bc.value((i,), (u,)) for u in range(hd)], rows=hd
        )
        for i in range(gd)
    )
    chi = Matrix.from_cols(
        [chi_bc.value((i,), ()) for i in range(gd)], rows=hd
    )
    return NonAbelianCocycle(ctx.gpair, ctx.hpair, varrho, omega, chi)


def tau_element(ctx: LghContext, tau: Matrix) -> GradedElement:
    bc = BigradedCochain.from_map(
        ctx.gdim,
        ctx.hdim,
        1,
        0,
        "h",
        {((i,), ()): tau.col(i) for i in range(ctx.gdim)},
    )
    return GradedElement.make(0, {(1, 0): bc})


def gauge_dgla(ctx: LghContext, e: GradedElement, tau: Matrix) -> GradedElement:
    """Gauge action of tau: g -> h on a degree-1 element.

    exp(ad tau) is quadratic-nilpotent in the degrees involved, so the
    usual series collapses to e + [t, e] - d(t) - [t, d(t)]/2 with
    t = (tau, 0).  Under the shape bijection this matches the
    cocycle-level gauge transform exactly.
    """
    if e.degree != 1:
        raise ValueError("gauge acts on degree-1 elements")
    t = tau_element(ctx, tau)
    dt = lgh_differential(ctx, t)
    return (
        e
        + lgh_bracket(ctx, t, e)
        - dt
        - lgh_bracket(ctx, t, dt).scale(Fraction(1, 2))
    )
