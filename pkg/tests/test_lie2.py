"""Two-term dictionaries: strict 2-objects, homomorphisms, homotopies."""

import random

import pytest

from lieder import (
    AltCochain,
    Lie2DerHom,
    Matrix,
    StrictDer2,
    TwoHom,
    apply_gauge,
    build_hder,
    cocycle_to_hom,
    hom_to_cocycle,
    pair_lie2,
    verify_hom,
    verify_lie2,
    verify_strict_der,
    verify_two_hom,
)
from lieder.exactlin import zero_vec
from lieder.lie import basis_vec

from corpus import (
    catalog_pairs,
    pair_combinations,
    rand_matrix,
    random_verified_cocycle,
)

RNG_SEED = 1331


def test_pair_view_verifies():
    for pair in catalog_pairs():
        t, der = pair_lie2(pair)
        assert verify_lie2(t)
        assert verify_strict_der(t, der)
        assert t.g1_dim == 0


def test_derivation_object_verifies():
    for pair in catalog_pairs():
        t, der = build_hder(pair)
        assert verify_lie2(t)
        assert verify_strict_der(t, der)
        assert t.g1_dim == pair.dim


def test_corrupted_derivation_fails():
    pair = catalog_pairs()[0]
    t, der = pair_lie2(pair)
    bad = StrictDer2(der.d0 + Matrix.identity(pair.dim), der.d1)
    assert not verify_strict_der(t, bad)
    t2, der2 = build_hder(pair)
    bad2 = StrictDer2(der2.d0, der2.d1 + Matrix.identity(pair.dim))
    assert not verify_strict_der(t2, bad2)


def test_cocycles_translate_to_homomorphisms():
    rng = random.Random(RNG_SEED)
    for gp, hp in pair_combinations():
        c = random_verified_cocycle(rng, gp, hp)
        f = cocycle_to_hom(c)
        assert verify_hom(f)


def test_dictionary_is_a_bijection():
    rng = random.Random(RNG_SEED)
    for gp, hp in pair_combinations()[:4]:
        c = random_verified_cocycle(rng, gp, hp)
        f = cocycle_to_hom(c)
        back = hom_to_cocycle(f)
        assert back.varrho == c.varrho
        assert back.omega == c.omega
        assert back.chi == c.chi
        again = cocycle_to_hom(back)
        assert again.phi0 == f.phi0
        assert again.phi2 == f.phi2
        assert again.theta == f.theta


def test_gauge_witness_becomes_a_homotopy():
    rng = random.Random(RNG_SEED)
    for gp, hp in pair_combinations()[:4]:
        c = random_verified_cocycle(rng, gp, hp)
        tau = rand_matrix(rng, hp.dim, gp.dim)
        c2 = apply_gauge(c, tau)
        src = cocycle_to_hom(c2)
        dst = cocycle_to_hom(c)
        assert verify_two_hom(src, dst, tau)
        assert verify_two_hom(src, dst, TwoHom(tau))


def test_homotopy_rejects_perturbation():
    rng = random.Random(RNG_SEED)
    gp, hp, u = next(
        (g, h, u)
        for g, h in pair_combinations()
        for u in range(h.dim)
        if not h.algebra.ad(u).is_zero()
    )
    c = random_verified_cocycle(rng, gp, hp)
    tau = rand_matrix(rng, hp.dim, gp.dim)
    src = cocycle_to_hom(apply_gauge(c, tau))
    dst = cocycle_to_hom(c)
    bump = Matrix.from_cols(
        [basis_vec(hp.dim, u)] + [zero_vec(hp.dim)] * (gp.dim - 1),
        rows=hp.dim,
    )
    assert not verify_two_hom(src, dst, tau + bump)


def test_hom_to_cocycle_rejects_corruption():
    rng = random.Random(RNG_SEED)
    gp, hp = pair_combinations()[0]  # h has nonzero adjoints
    c = random_verified_cocycle(rng, gp, hp)
    f = cocycle_to_hom(c)
    bad = Lie2DerHom(
        gpair=f.gpair,
        hpair=f.hpair,
        phi0=f.phi0,
        phi1=f.phi1,
        phi2=f.phi2
        + AltCochain.from_map(gp.dim, 2, hp.dim, {(0, 1): basis_vec(hp.dim, 0)}),
        theta=f.theta,
    )
    assert not verify_hom(bad)
    with pytest.raises(ValueError):
        hom_to_cocycle(bad)


def test_hom_shape_validation():
    rng = random.Random(RNG_SEED)
    gp, hp = pair_combinations()[0]
    f = cocycle_to_hom(random_verified_cocycle(rng, gp, hp))
    with pytest.raises(ValueError):
        Lie2DerHom(
            gpair=f.gpair,
            hpair=f.hpair,
            phi0=f.phi0,
            phi1=Matrix.zero(hp.dim, 1),
            phi2=f.phi2,
            theta=f.theta,
        )
