"""Operation layer shared by the command line and the HTTP service.

Every operation takes core objects and returns (document, code): a
JSON-ready dict plus the exit status under the contract 0 = property
holds / computation succeeded, 1 = property fails / obstruction is
nonzero, with diagnostics in the document.  Malformed input is rejected
before these functions run.
"""

from __future__ import annotations

from .cochain import (
    AltCochain,
    LieDerCochain,
    Representation,
    cohomology,
)
from .dgla import GradedElement, LghContext, mc_check
from .exactlin import Matrix
from .extendder import DerivationPair, ExtensionContext, extensibility_report
from .kernel import KernelDatum, obstruction_ch, realize_kernel, verify_kernel
from .lie import (
    Check,
    LieAlgebra,
    center,
    derivation_space,
    inner_derivations,
    jacobi_check,
    out_space,
)
from .lie2 import Lie2DerHom, cocycle_to_hom, hom_to_cocycle, verify_hom, verify_two_hom
from .nonabelian import (
    Extension,
    NonAbelianCocycle,
    Section,
    apply_gauge,
    build_extension,
    extract_cocycle,
    verify_cocycle,
    verify_equivalence_witness,
)
from . import schemas

Doc = dict
Outcome = tuple[Doc, int]


def _verdict(key: str, res: Check) -> Outcome:
    doc: Doc = {key: bool(res)}
    if not res:
        doc["reason"] = res.reason
    return doc, 0 if res else 1


def check_algebra(L: LieAlgebra) -> Outcome:
    return _verdict("jacobi", jacobi_check(L))


def der_algebra(L: LieAlgebra) -> Outcome:
    der = derivation_space(L)
    basis = [
        schemas.MatrixModel.from_core(
            Matrix.unflatten(row, L.dim, L.dim)
        ).model_dump()
        for row in der.basis.data
    ]
    return {"dim": der.dim, "basis": basis}, 0


def center_algebra(L: LieAlgebra) -> Outcome:
    z = center(L)
    return {"dim": z.dim, "basis": [[str(x) for x in r] for r in z.basis.data]}, 0


def out_algebra(L: LieAlgebra) -> Outcome:
    doc = {
        "dim_der": derivation_space(L).dim,
        "dim_inner": inner_derivations(L).dim,
        "dim_out": out_space(L).dim,
    }
    return doc, 0


def cohomology_op(rep: Representation, degree: int, complex: str) -> Outcome:
    res = cohomology(rep, degree, complex)
    n, t = rep.algebra.dim, rep.space_dim
    reps = []
    for row in res.representatives.data:
        if complex == "lieder":
            lc = LieDerCochain.from_flat(n, degree, t, row)
            entry = {
                "top": schemas.CochainModel.from_core(lc.top).model_dump(),
                "lower": schemas.CochainModel.from_core(lc.lower).model_dump()
                if lc.lower is not None
                else None,
            }
        else:
            c = AltCochain.from_flat(n, degree, t, row)
            entry = schemas.CochainModel.from_core(c).model_dump()
        reps.append(entry)
    doc = {
        "degree": res.degree,
        "complex": res.complex,
        "dim_cocycles": res.dim_cocycles,
        "dim_coboundaries": res.dim_coboundaries,
        "dim_h": res.dim_h,
        "representatives": reps,
    }
    return doc, 0


def cocycle_verify_op(c: NonAbelianCocycle) -> Outcome:
    return _verdict("cocycle", verify_cocycle(c))


def cocycle_gauge_op(c: NonAbelianCocycle, tau: Matrix) -> Outcome:
    out = apply_gauge(c, tau)
    return schemas.CocycleModel.from_core(out).model_dump(), 0


def cocycle_witness_op(
    c: NonAbelianCocycle, other: NonAbelianCocycle, tau: Matrix
) -> Outcome:
    return _verdict("equivalent", verify_equivalence_witness(c, other, tau))


def extend_op(c: NonAbelianCocycle) -> Outcome:
    res = verify_cocycle(c)
    if not res:
        return {"cocycle": False, "reason": res.reason}, 1
    ext, _ = build_extension(c)
    return schemas.ExtensionModel.from_core(ext).model_dump(), 0


def extract_op(e: Extension, s: Section) -> Outcome:
    c = extract_cocycle(e, s)
    return schemas.CocycleModel.from_core(c).model_dump(), 0


def mc_verify_op(ctx: LghContext, e: GradedElement) -> Outcome:
    return _verdict("maurer_cartan", mc_check(ctx, e))


def kernel_verify_op(k: KernelDatum) -> Outcome:
    return _verdict("kernel", verify_kernel(k))


def kernel_obstruction_op(k: KernelDatum) -> Outcome:
    res = verify_kernel(k)
    if not res:
        return {"kernel": False, "reason": res.reason}, 1
    ch = obstruction_ch(k)
    doc = {
        "dim_h3": ch.h3.dim_h,
        "obstruction_class": [str(x) for x in ch.coords],
        "is_zero": ch.is_zero,
    }
    return doc, 0 if ch.is_zero else 1


def kernel_realize_op(k: KernelDatum) -> Outcome:
    res = verify_kernel(k)
    if not res:
        return {"kernel": False, "reason": res.reason}, 1
    c = realize_kernel(k)
    if c is None:
        return {"realizable": False, "reason": "the obstruction class is nonzero"}, 1
    return schemas.CocycleModel.from_core(c).model_dump(), 0


def extensible_op(ctx: ExtensionContext, pair: DerivationPair) -> Outcome:
    report = extensibility_report(ctx, pair)
    if not report.compatible:
        return {
            "compatible": False,
            "reason": "no chi solves the compatibility equation",
        }, 1
    coords = [str(x) for x in report.obstruction.coords]
    if not report.obstruction.is_zero:
        return {"compatible": True, "obstruction_class": coords}, 1
    doc = {
        "compatible": True,
        "obstruction_class": coords,
        "extensible": True,
        "dhat": schemas.MatrixModel.from_core(report.dhat.matrix).model_dump(),
    }
    return doc, 0


def lie2_from_cocycle(c: NonAbelianCocycle) -> Outcome:
    res = verify_cocycle(c)
    if not res:
        return {"cocycle": False, "reason": res.reason}, 1
    f = cocycle_to_hom(c)
    return schemas.HomModel.from_core(f).model_dump(), 0


def lie2_from_hom(f: Lie2DerHom) -> Outcome:
    res = verify_hom(f)
    if not res:
        return {"homomorphism": False, "reason": res.reason}, 1
    c = hom_to_cocycle(f)
    return schemas.CocycleModel.from_core(c).model_dump(), 0


def lie2_two_hom_op(src: Lie2DerHom, dst: Lie2DerHom, vartheta: Matrix) -> Outcome:
    return _verdict("two_homomorphism", verify_two_hom(src, dst, vartheta))
