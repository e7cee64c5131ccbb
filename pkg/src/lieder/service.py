"""HTTP face of the toolkit: one POST endpoint per operation.

Request bodies carry the same objects the command line reads from
files, fully inline (no file references), and responses are the same
documents the command line prints.  Structural problems surface as 422
with an error message; property verdicts always come back as 200 with
the verdict in the body.
"""

from __future__ import annotations

from typing import Literal, Optional, Union

from fastapi import FastAPI, Request
from fastapi.responses import JSONResponse

from . import ops
from .dgla import LghContext
from .extendder import DerivationPair, ExtensionContext
from .lie import Derivation
from .nonabelian import Section
from .schemas import (
    AlgebraModel,
    CochainModel,
    CocycleModel,
    ContextModel,
    ElementModel,
    ExtensionModel,
    HomModel,
    KernelModel,
    LieDerCochainModel,
    MatrixModel,
    PairModel,
    RepModel,
    StrictModel,
)

app = FastAPI(
    title="lieder",
    description=(
        "Exact computations with Lie algebras carrying a chosen derivation."
    ),
)


@app.exception_handler(ValueError)
async def _bad_value(request: Request, exc: ValueError) -> JSONResponse:
    return JSONResponse({"error": str(exc)}, status_code=422)


class AlgebraRequest(StrictModel):
    algebra: AlgebraModel


class JacobiDoc(StrictModel):
    jacobi: bool
    reason: Optional[str] = None


class DerDoc(StrictModel):
    dim: int
    basis: list[MatrixModel]


class CenterDoc(StrictModel):
    dim: int
    basis: list[list[str]]


class OutDoc(StrictModel):
    dim_der: int
    dim_inner: int
    dim_out: int


class CohomologyRequest(StrictModel):
    pair: PairModel
    rep: RepModel
    degree: int
    complex: Literal["ce", "lieder"] = "ce"


class CohomologyDoc(StrictModel):
    degree: int
    complex: str
    dim_cocycles: int
    dim_coboundaries: int
    dim_h: int
    representatives: Union[list[LieDerCochainModel], list[CochainModel]]


class CocycleVerdict(StrictModel):
    cocycle: bool
    reason: Optional[str] = None


class HomVerdict(StrictModel):
    homomorphism: bool
    reason: Optional[str] = None


class EquivalenceVerdict(StrictModel):
    equivalent: bool
    reason: Optional[str] = None


class MCVerdict(StrictModel):
    maurer_cartan: bool
    reason: Optional[str] = None


class KernelVerdict(StrictModel):
    kernel: bool
    reason: Optional[str] = None


class TwoHomVerdict(StrictModel):
    two_homomorphism: bool
    reason: Optional[str] = None


class ObstructionDoc(StrictModel):
    dim_h3: int
    obstruction_class: list[str]
    is_zero: bool


class RealizeFailure(StrictModel):
    realizable: Optional[bool] = None
    kernel: Optional[bool] = None
    reason: Optional[str] = None


class ExtensibleDoc(StrictModel):
    compatible: bool
    obstruction_class: Optional[list[str]] = None
    extensible: Optional[bool] = None
    dhat: Optional[MatrixModel] = None
    reason: Optional[str] = None


class GaugeRequest(StrictModel):
    cocycle: CocycleModel
    tau: MatrixModel


class WitnessRequest(StrictModel):
    cocycle: CocycleModel
    other: CocycleModel
    tau: MatrixModel


class ExtractRequest(StrictModel):
    extension: ExtensionModel
    section: MatrixModel


class MCRequest(StrictModel):
    context: ContextModel
    element: ElementModel


class ExtensibleRequest(StrictModel):
    extension: ExtensionModel
    k: MatrixModel
    d: MatrixModel


class TwoHomRequest(StrictModel):
    src: HomModel
    dst: HomModel
    vartheta: MatrixModel


@app.post("/check", response_model=JacobiDoc, response_model_exclude_none=True)
def check(req: AlgebraRequest):
    doc, _ = ops.check_algebra(req.algebra.to_core())
    return doc


@app.post("/der", response_model=DerDoc)
def der(req: AlgebraRequest):
    doc, _ = ops.der_algebra(req.algebra.to_core())
    return doc


@app.post("/center", response_model=CenterDoc)
def center(req: AlgebraRequest):
    doc, _ = ops.center_algebra(req.algebra.to_core())
    return doc


@app.post("/out", response_model=OutDoc)
def out(req: AlgebraRequest):
    doc, _ = ops.out_algebra(req.algebra.to_core())
    return doc


@app.post("/cohomology", response_model=CohomologyDoc)
def cohomology_ep(req: CohomologyRequest):
    pair = req.pair.to_core()
    if req.complex == "lieder" and req.rep.t is None:
        raise ValueError("the paired complex needs the intertwiner t")
    doc, _ = ops.cohomology_op(req.rep.to_core(pair), req.degree, req.complex)
    return doc


@app.post(
    "/cocycle/verify",
    response_model=CocycleVerdict,
    response_model_exclude_none=True,
)
def cocycle_verify(req: CocycleModel):
    doc, _ = ops.cocycle_verify_op(req.to_core())
    return doc


@app.post("/cocycle/gauge", response_model=CocycleModel)
def cocycle_gauge(req: GaugeRequest):
    doc, _ = ops.cocycle_gauge_op(req.cocycle.to_core(), req.tau.to_core())
    return doc


@app.post(
    "/cocycle/witness",
    response_model=EquivalenceVerdict,
    response_model_exclude_none=True,
)
def cocycle_witness(req: WitnessRequest):
    doc, _ = ops.cocycle_witness_op(
        req.cocycle.to_core(), req.other.to_core(), req.tau.to_core()
    )
    return doc


@app.post(
    "/extend",
    response_model=Union[ExtensionModel, CocycleVerdict],
    response_model_exclude_none=True,
)
def extend(req: CocycleModel):
    doc, _ = ops.extend_op(req.to_core())
    return doc


@app.post("/extract", response_model=CocycleModel)
def extract(req: ExtractRequest):
    ext = req.extension.to_core()
    doc, _ = ops.extract_op(ext, Section(ext, req.section.to_core()))
    return doc


@app.post(
    "/mc/verify", response_model=MCVerdict, response_model_exclude_none=True
)
def mc_verify(req: MCRequest):
    ctx = LghContext(req.context.gpair.to_core(), req.context.hpair.to_core())
    doc, _ = ops.mc_verify_op(ctx, req.element.to_core(ctx.gdim, ctx.hdim))
    return doc


@app.post(
    "/kernel/verify", response_model=KernelVerdict, response_model_exclude_none=True
)
def kernel_verify(req: KernelModel):
    doc, _ = ops.kernel_verify_op(req.to_core())
    return doc


@app.post(
    "/kernel/obstruction",
    response_model=Union[ObstructionDoc, KernelVerdict],
    response_model_exclude_none=True,
)
def kernel_obstruction(req: KernelModel):
    doc, _ = ops.kernel_obstruction_op(req.to_core())
    return doc


@app.post(
    "/kernel/realize",
    response_model=Union[CocycleModel, RealizeFailure],
    response_model_exclude_none=True,
)
def kernel_realize(req: KernelModel):
    doc, _ = ops.kernel_realize_op(req.to_core())
    return doc


@app.post(
    "/extensible", response_model=ExtensibleDoc, response_model_exclude_none=True
)
def extensible(req: ExtensibleRequest):
    ctx = ExtensionContext.build(
        req.extension.total.to_core(),
        req.extension.inj.to_core(),
        req.extension.proj.to_core(),
    )
    pair = DerivationPair(
        Derivation(ctx.h, req.k.to_core()), Derivation(ctx.g, req.d.to_core())
    )
    doc, _ = ops.extensible_op(ctx, pair)
    return doc


@app.post(
    "/lie2/translate",
    response_model=Union[HomModel, CocycleModel, CocycleVerdict, HomVerdict],
    response_model_exclude_none=True,
)
def lie2_translate(req: Union[CocycleModel, HomModel]):
    if isinstance(req, CocycleModel):
        doc, _ = ops.lie2_from_cocycle(req.to_core())
    else:
        doc, _ = ops.lie2_from_hom(req.to_core())
    return doc


@app.post(
    "/lie2/verify-2hom",
    response_model=TwoHomVerdict,
    response_model_exclude_none=True,
)
def lie2_verify_2hom(req: TwoHomRequest):
    doc, _ = ops.lie2_two_hom_op(
        req.src.to_core(), req.dst.to_core(), req.vartheta.to_core()
    )
    return doc
