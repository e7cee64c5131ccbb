"""Command line front door: exact JSON files in, one JSON document out.

Exit codes: 0 the checked property holds or the computation succeeded,
1 the property fails or an obstruction is nonzero (diagnostics in the
document), 2 malformed input or a usage error.
"""

from __future__ import annotations

import argparse
import json
import sys
from pathlib import Path
from typing import Optional, Sequence

from pydantic import ValidationError

from . import ops, schemas
from .dgla import LghContext
from .extendder import DerivationPair, ExtensionContext
from .lie import Derivation
from .nonabelian import Section


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(
        prog="lieder",
        description=(
            "Exact computations with Lie algebras carrying a chosen "
            "derivation: extensions, cocycles, cohomology, kernels, and "
            "strict 2-algebra translations."
        ),
    )
    sub = p.add_subparsers(dest="cmd", required=True)

    sp = sub.add_parser("check", help="verify the Jacobi identity")
    sp.add_argument("algebra", help="algebra file")

    sp = sub.add_parser("der", help="basis of the derivation algebra")
    sp.add_argument("algebra")

    sp = sub.add_parser("center", help="basis of the center")
    sp.add_argument("algebra")

    sp = sub.add_parser("out", help="derivation, inner, and outer dimensions")
    sp.add_argument("algebra")

    sp = sub.add_parser("cohomology", help="cohomology of a representation")
    sp.add_argument("pair", help="pair file for the acting algebra")
    sp.add_argument("rep", help="representation file")
    sp.add_argument("--degree", type=int, required=True)
    sp.add_argument("--complex", choices=["ce", "lieder"], default="ce")

    cocycle = sub.add_parser("cocycle", help="cocycle data operations")
    csub = cocycle.add_subparsers(dest="sub", required=True)
    sp = csub.add_parser("verify", help="check the four cocycle equations")
    sp.add_argument("cocycle")
    sp = csub.add_parser("gauge", help="transform a datum by tau: g -> h")
    sp.add_argument("cocycle")
    sp.add_argument("tau", help="matrix file")
    sp = csub.add_parser("witness", help="check tau relates two data sets")
    sp.add_argument("cocycle")
    sp.add_argument("other")
    sp.add_argument("tau")

    sp = sub.add_parser("extend", help="build the extension of a cocycle")
    sp.add_argument("cocycle")

    sp = sub.add_parser("extract", help="read a cocycle off an extension")
    sp.add_argument("extension")
    sp.add_argument("section")

    mc = sub.add_parser("mc", help="Maurer-Cartan operations")
    msub = mc.add_subparsers(dest="sub", required=True)
    sp = msub.add_parser("verify", help="check the Maurer-Cartan equation")
    sp.add_argument("context", help="file with the two pairs")
    sp.add_argument("element", help="graded element file")

    kernel = sub.add_parser("kernel", help="outer-derivation kernel operations")
    ksub = kernel.add_subparsers(dest="sub", required=True)
    for name, txt in (
        ("verify", "check the kernel conditions mod inner derivations"),
        ("obstruction", "degree-3 class blocking realization"),
        ("realize", "produce a cocycle inducing the kernel"),
    ):
        sp = ksub.add_parser(name, help=txt)
        sp.add_argument("kernel")

    sp = sub.add_parser(
        "extensible", help="decide if a derivation pair lifts to the total algebra"
    )
    sp.add_argument("extension")
    sp.add_argument("k", help="matrix file, derivation of the fiber")
    sp.add_argument("d", help="matrix file, derivation of the quotient")

    lie2 = sub.add_parser("lie2", help="strict 2-algebra dictionary")
    lsub = lie2.add_subparsers(dest="sub", required=True)
    sp = lsub.add_parser(
        "translate", help="cocycle data to homomorphism data or back"
    )
    sp.add_argument("data", help="cocycle or homomorphism file")
    sp = lsub.add_parser("verify-2hom", help="check a homotopy between homs")
    sp.add_argument("src")
    sp.add_argument("dst")
    sp.add_argument("vartheta", help="matrix file")

    return p


def _load(path: str, kind: str, model):
    return model.model_validate(schemas.load_document(path, kind))


def _matrix(path: str):
    return _load(path, "matrix", schemas.MatrixModel).to_core()


def _cocycle(path: str):
    return _load(path, "cocycle", schemas.CocycleModel).to_core()


def _dispatch(args: argparse.Namespace) -> ops.Outcome:
    if args.cmd in ("check", "der", "center", "out"):
        L = _load(args.algebra, "algebra", schemas.AlgebraModel).to_core()
        fn = {
            "check": ops.check_algebra,
            "der": ops.der_algebra,
            "center": ops.center_algebra,
            "out": ops.out_algebra,
        }[args.cmd]
        return fn(L)
    if args.cmd == "cohomology":
        pair = _load(args.pair, "pair", schemas.PairModel).to_core()
        repm = _load(args.rep, "rep", schemas.RepModel)
        if args.complex == "lieder" and repm.t is None:
            raise ValueError("the paired complex needs the intertwiner t")
        return ops.cohomology_op(repm.to_core(pair), args.degree, args.complex)
    if args.cmd == "cocycle":
        c = _cocycle(args.cocycle)
        if args.sub == "verify":
            return ops.cocycle_verify_op(c)
        if args.sub == "gauge":
            return ops.cocycle_gauge_op(c, _matrix(args.tau))
        return ops.cocycle_witness_op(c, _cocycle(args.other), _matrix(args.tau))
    if args.cmd == "extend":
        return ops.extend_op(_cocycle(args.cocycle))
    if args.cmd == "extract":
        ext = _load(args.extension, "extension", schemas.ExtensionModel).to_core()
        sm = _load(args.section, "section", schemas.SectionModel)
        return ops.extract_op(ext, Section(ext, sm.s.to_core()))
    if args.cmd == "mc":
        ctxm = _load(args.context, "context", schemas.ContextModel)
        ctx = LghContext(ctxm.gpair.to_core(), ctxm.hpair.to_core())
        elem = _load(args.element, "element", schemas.ElementModel)
        return ops.mc_verify_op(ctx, elem.to_core(ctx.gdim, ctx.hdim))
    if args.cmd == "kernel":
        k = _load(args.kernel, "kernel", schemas.KernelModel).to_core()
        fn = {
            "verify": ops.kernel_verify_op,
            "obstruction": ops.kernel_obstruction_op,
            "realize": ops.kernel_realize_op,
        }[args.sub]
        return fn(k)
    if args.cmd == "extensible":
        extm = _load(args.extension, "extension", schemas.ExtensionModel)
        ctx = ExtensionContext.build(
            extm.total.to_core(), extm.inj.to_core(), extm.proj.to_core()
        )
        pair = DerivationPair(
            Derivation(ctx.h, _matrix(args.k)), Derivation(ctx.g, _matrix(args.d))
        )
        return ops.extensible_op(ctx, pair)
    if args.cmd == "lie2":
        if args.sub == "translate":
            raw = json.loads(Path(args.data).read_text())
            if not isinstance(raw, dict):
                raise ValueError(f"{args.data} does not hold a JSON object")
            if "varrho" in raw:
                return ops.lie2_from_cocycle(_cocycle(args.data))
            if "phi0" in raw:
                f = _load(args.data, "hom", schemas.HomModel).to_core()
                return ops.lie2_from_hom(f)
            raise ValueError("translate input is neither cocycle nor hom data")
        src = _load(args.src, "hom", schemas.HomModel).to_core()
        dst = _load(args.dst, "hom", schemas.HomModel).to_core()
        return ops.lie2_two_hom_op(src, dst, _matrix(args.vartheta))
    raise ValueError(f"unknown subcommand {args.cmd!r}")


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    try:
        doc, code = _dispatch(args)
    except (ValidationError, ValueError, OSError) as exc:
        print(json.dumps({"error": str(exc)}))
        return 2
    print(json.dumps(doc, indent=2))
    return code


if __name__ == "__main__":
    sys.exit(main())
