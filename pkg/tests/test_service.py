"""HTTP endpoint coverage: same documents as the command line, inline."""

import random

from fastapi.testclient import TestClient

from lieder import (
    KernelDatum,
    Matrix,
    NonAbelianCocycle,
    apply_gauge,
    cocycle_to_hom,
    cocycle_to_mc,
    cohomology,
    is_derivation,
    verify_cocycle,
)
from lieder.cochain import comb
from lieder.schemas import (
    AlgebraModel,
    CocycleModel,
    ExtensionModel,
    HomModel,
    KernelModel,
    MatrixModel,
    PairModel,
)
from lieder.service import app

from corpus import (
    adjoint_rep,
    catalog_pairs,
    mat,
    n4_extension,
    pair_combinations,
    random_raw_datum,
)

RNG_SEED = 77

client = TestClient(app)

H3_DOC = {"name": "h3", "dim": 3, "brackets": {"1,2": {"3": "1"}}}
N2_DOC = {"name": "n2", "dim": 2, "brackets": {"1,2": {"2": "1"}}}
NON_JACOBI = {
    "dim": 3,
    "brackets": {"1,2": {"2": "1"}, "1,3": {"3": "1"}, "2,3": {"1": "1"}},
}


def post(path, body):
    r = client.post(path, json=body)
    return r.status_code, r.json()


def element_doc(e):
    blocks = []
    for (k, l), bc in e.f + e.alpha:
        values = {}
        for gt in comb(bc.gdim, k):
            for ht in comb(bc.hdim, l):
                v = bc.value(gt, ht)
                if any(x != 0 for x in v):
                    key = (
                        ",".join(str(i + 1) for i in gt)
                        + "|"
                        + ",".join(str(u + 1) for u in ht)
                    )
                    values[key] = [str(x) for x in v]
        blocks.append({"k": k, "l": l, "values": values})
    return {"degree": e.degree, "blocks": blocks}


def fixed_cocycle():
    gp, hp = pair_combinations()[0]  # abelian plane acting on heisenberg
    tau = mat([[1, 0], [0, 2], [1, 1]])
    return apply_gauge(NonAbelianCocycle.zero(gp, hp), tau), gp, hp


def test_check():
    code, doc = post("/check", {"algebra": H3_DOC})
    assert (code, doc) == (200, {"jacobi": True})
    code, doc = post("/check", {"algebra": NON_JACOBI})
    assert code == 200 and doc["jacobi"] is False and doc["reason"]


def test_der_center_out():
    code, doc = post("/der", {"algebra": H3_DOC})
    assert code == 200 and doc["dim"] == 6
    h3 = AlgebraModel(**H3_DOC).to_core()
    for m in doc["basis"]:
        assert is_derivation(h3, MatrixModel(**m).to_core())
    code, doc = post("/center", {"algebra": H3_DOC})
    assert code == 200 and doc["basis"] == [["0", "0", "1"]]
    code, doc = post("/out", {"algebra": N2_DOC})
    assert (code, doc) == (200, {"dim_der": 2, "dim_inner": 2, "dim_out": 0})


def test_cohomology_parity():
    pair = catalog_pairs()[0]
    rep = adjoint_rep(pair)
    rep_doc = {
        "space_dim": 3,
        "rho": [
            MatrixModel.from_core(pair.algebra.ad(i)).model_dump()
            for i in range(3)
        ],
        "t": MatrixModel.from_core(pair.d).model_dump(),
    }
    body = {
        "pair": PairModel.from_core(pair).model_dump(),
        "rep": rep_doc,
        "degree": 2,
        "complex": "ce",
    }
    for complex_ in ("ce", "lieder"):
        code, doc = post("/cohomology", dict(body, complex=complex_))
        want = cohomology(rep, 2, complex_)
        assert code == 200
        assert doc["dim_h"] == want.dim_h
        assert doc["dim_cocycles"] == want.dim_cocycles
        assert doc["dim_coboundaries"] == want.dim_coboundaries
        assert len(doc["representatives"]) == want.dim_h
    bare = dict(rep_doc)
    bare.pop("t")
    code, doc = post(
        "/cohomology", dict(body, rep=bare, complex="lieder")
    )
    assert code == 422 and "error" in doc


def test_cocycle_verify_gauge_witness():
    c, gp, hp = fixed_cocycle()
    cdoc = CocycleModel.from_core(c).model_dump()
    code, doc = post("/cocycle/verify", cdoc)
    assert (code, doc) == (200, {"cocycle": True})
    raw = random_raw_datum(random.Random(RNG_SEED), gp, hp)
    assert not verify_cocycle(raw)
    code, doc = post(
        "/cocycle/verify", CocycleModel.from_core(raw).model_dump()
    )
    assert code == 200 and doc["cocycle"] is False and doc["reason"]

    tau = mat([[0, 1], [1, 0], [0, 0]])
    tdoc = MatrixModel.from_core(tau).model_dump()
    code, gdoc = post("/cocycle/gauge", {"cocycle": cdoc, "tau": tdoc})
    assert code == 200
    emitted = CocycleModel(**gdoc).to_core()
    want = apply_gauge(c, tau)
    assert emitted.varrho == want.varrho
    assert emitted.omega == want.omega
    assert emitted.chi == want.chi

    code, doc = post(
        "/cocycle/witness", {"cocycle": cdoc, "other": gdoc, "tau": tdoc}
    )
    assert (code, doc) == (200, {"equivalent": True})
    bad = MatrixModel.from_core(mat([[1, 1], [1, 0], [0, 0]])).model_dump()
    code, doc = post(
        "/cocycle/witness", {"cocycle": cdoc, "other": gdoc, "tau": bad}
    )
    assert code == 200 and doc["equivalent"] is False


def test_extend_extract_roundtrip():
    c, gp, hp = fixed_cocycle()
    code, ext_doc = post("/extend", CocycleModel.from_core(c).model_dump())
    assert code == 200 and "total" in ext_doc
    n, gd = gp.dim + hp.dim, gp.dim
    s = Matrix.from_cols(
        [tuple(1 if r == i else 0 for r in range(n)) for i in range(gd)],
        rows=n,
    )
    code, doc = post(
        "/extract",
        {
            "extension": ext_doc,
            "section": MatrixModel.from_core(s).model_dump(),
        },
    )
    assert code == 200
    back = CocycleModel(**doc).to_core()
    assert back.varrho == c.varrho
    assert back.omega == c.omega
    assert back.chi == c.chi

    raw = random_raw_datum(random.Random(RNG_SEED), gp, hp)
    code, doc = post("/extend", CocycleModel.from_core(raw).model_dump())
    assert code == 200 and doc["cocycle"] is False


def test_mc_verify():
    c, gp, hp = fixed_cocycle()
    ctx = {
        "gpair": PairModel.from_core(gp).model_dump(),
        "hpair": PairModel.from_core(hp).model_dump(),
    }
    code, doc = post(
        "/mc/verify",
        {"context": ctx, "element": element_doc(cocycle_to_mc(c))},
    )
    assert (code, doc) == (200, {"maurer_cartan": True})
    raw = random_raw_datum(random.Random(RNG_SEED), gp, hp)
    code, doc = post(
        "/mc/verify",
        {"context": ctx, "element": element_doc(cocycle_to_mc(raw))},
    )
    assert code == 200 and doc["maurer_cartan"] is False


def test_kernel_endpoints():
    c, gp, hp = fixed_cocycle()
    k = KernelDatum(gp, hp, c.varrho)
    kdoc = KernelModel.from_core(k).model_dump()
    code, doc = post("/kernel/verify", kdoc)
    assert (code, doc) == (200, {"kernel": True})
    code, doc = post("/kernel/obstruction", kdoc)
    assert code == 200 and doc["is_zero"] is True
    assert all(x == "0" for x in doc["obstruction_class"])
    code, doc = post("/kernel/realize", kdoc)
    assert code == 200
    realized = CocycleModel(**doc).to_core()
    assert realized.varrho == k.reps

    bad = KernelDatum(
        gp, hp, (k.reps[0] + Matrix.identity(hp.dim),) + k.reps[1:]
    )
    bdoc = KernelModel.from_core(bad).model_dump()
    for path in ("/kernel/verify", "/kernel/obstruction", "/kernel/realize"):
        code, doc = post(path, bdoc)
        assert code == 200 and doc["kernel"] is False


def test_extensible_goldens():
    ext_doc = {
        "total": H3_DOC,
        "inj": MatrixModel.from_core(mat([[0], [0], [1]])).model_dump(),
        "proj": MatrixModel.from_core(mat([[1, 0, 0], [0, 1, 0]])).model_dump(),
    }
    d = MatrixModel.from_core(Matrix.identity(2)).model_dump()
    k1 = MatrixModel.from_core(mat([[1]])).model_dump()
    code, doc = post("/extensible", {"extension": ext_doc, "k": k1, "d": d})
    assert (code, doc) == (
        200,
        {"compatible": True, "obstruction_class": ["1"]},
    )
    k2 = MatrixModel.from_core(mat([[2]])).model_dump()
    code, doc = post("/extensible", {"extension": ext_doc, "k": k2, "d": d})
    assert code == 200
    assert doc["compatible"] is True and doc["extensible"] is True
    assert doc["obstruction_class"] == ["0"]
    assert MatrixModel(**doc["dhat"]).to_core() == mat(
        [[1, 0, 0], [0, 1, 0], [0, 0, 2]]
    )


def test_extensible_incompatible():
    edoc = ExtensionModel.from_core(n4_extension()).model_dump()
    body = {
        "extension": edoc,
        "k": MatrixModel.from_core(Matrix.zero(2, 2)).model_dump(),
        "d": MatrixModel.from_core(Matrix.identity(2)).model_dump(),
    }
    code, doc = post("/extensible", body)
    assert code == 200
    assert doc == {
        "compatible": False,
        "reason": "no chi solves the compatibility equation",
    }


def test_lie2_translate_roundtrip():
    c, gp, hp = fixed_cocycle()
    cdoc = CocycleModel.from_core(c).model_dump()
    code, hom_doc = post("/lie2/translate", cdoc)
    assert code == 200 and "phi0" in hom_doc
    code, back = post("/lie2/translate", hom_doc)
    assert code == 200
    got = CocycleModel(**back).to_core()
    assert got.varrho == c.varrho
    assert got.omega == c.omega
    assert got.chi == c.chi


def test_lie2_verify_2hom():
    c, gp, hp = fixed_cocycle()
    tau = mat([[1, 1], [0, 1], [2, 0]])
    src = HomModel.from_core(cocycle_to_hom(apply_gauge(c, tau))).model_dump()
    dst = HomModel.from_core(cocycle_to_hom(c)).model_dump()
    tdoc = MatrixModel.from_core(tau).model_dump()
    code, doc = post(
        "/lie2/verify-2hom", {"src": src, "dst": dst, "vartheta": tdoc}
    )
    assert (code, doc) == (200, {"two_homomorphism": True})
    bad = MatrixModel.from_core(
        tau + Matrix.from_cols([(1, 0, 0), (0, 0, 0)], rows=3)
    ).model_dump()
    code, doc = post(
        "/lie2/verify-2hom", {"src": src, "dst": dst, "vartheta": bad}
    )
    assert code == 200 and doc["two_homomorphism"] is False


def test_request_validation_gives_422():
    code, doc = post(
        "/check", {"algebra": {"dim": 2, "brackets": {"1,2": {"2": "1/0"}}}}
    )
    assert code == 422 and "detail" in doc
    code, doc = post("/check", {"algebra": dict(H3_DOC, note="x")})
    assert code == 422 and "detail" in doc
    code, doc = post("/check", {})
    assert code == 422
    code, doc = post("/lie2/translate", {"neither": 1})
    assert code == 422


def test_value_error_gives_422_with_message():
    cdoc = CocycleModel.from_core(fixed_cocycle()[0]).model_dump()
    cdoc["hpair"] = {
        "algebra": H3_DOC,
        "derivation": MatrixModel.from_core(Matrix.identity(3)).model_dump(),
    }
    code, doc = post("/cocycle/verify", cdoc)
    assert code == 422 and "error" in doc
