"""Exact toolkit for Lie algebras with a chosen derivation.

Everything runs over exact rationals: extensions of algebra/derivation
pairs and the cocycle data classifying them, the graded Lie algebra
whose Maurer-Cartan elements are those cocycles, Chevalley-Eilenberg
and paired-complex cohomology, kernels valued in outer derivations with
their degree-3 obstruction, extensibility of derivation pairs along an
extension, and the dictionary into strict 2-algebra homomorphisms.
"""

from .cochain import (
    AltCochain,
    CohomologyResult,
    LieDerCochain,
    LieDerRep,
    Representation,
    ce_coboundary,
    cohomology,
    cup_product,
    delta_op,
    formal_coboundary,
    lieder_coboundary,
)
from .dgla import (
    BigradedCochain,
    GradedElement,
    LghContext,
    cocycle_to_mc,
    decompose,
    gauge_dgla,
    lgh_bracket,
    lgh_differential,
    lift,
    mc_check,
    mc_to_cocycle,
    nr_bracket,
    tau_element,
)
from .exactlin import (
    Matrix,
    QuotientSpace,
    Subspace,
    Vec,
    kernel_basis,
    column_space,
    rank,
    rref,
    solve,
    solve_vec,
)
from .extendder import (
    DerivationPair,
    ExtensibilityReport,
    ExtensionContext,
    ObstructionW,
    extensibility_report,
    fiber_preserving_derivations,
    gamma,
    is_compatible,
    is_extensible,
    obstruction_w,
)
from .kernel import (
    KernelDatum,
    KernelLift,
    ObstructionClass3,
    choose_lift,
    ext_class_difference,
    induced_rep,
    kernel_of_extension,
    obstruction_ch,
    pullback_pair,
    realize_kernel,
    torsor_act,
    verify_kernel,
)
from .lie import (
    Check,
    Derivation,
    LieAlgebra,
    LieDerPair,
    center,
    der_coordinates,
    derivation_space,
    inner_derivations,
    is_derivation,
    is_lieder_pair,
    jacobi_check,
    out_space,
)
from .lie2 import (
    Lie2DerHom,
    StrictDer2,
    StrictLie2,
    TwoHom,
    build_hder,
    cocycle_to_hom,
    hom_to_cocycle,
    pair_lie2,
    verify_hom,
    verify_lie2,
    verify_strict_der,
    verify_two_hom,
)
from .nonabelian import (
    Extension,
    NonAbelianCocycle,
    Section,
    apply_gauge,
    assemble_extension,
    build_extension,
    canonical_section,
    extract_cocycle,
    iso_from_gauge,
    section_difference,
    verify_cocycle,
    verify_equivalence_witness,
    verify_extension,
)

__version__ = "0.1.0"

__all__ = [
    "AltCochain",
    "BigradedCochain",
    "Check",
    "CohomologyResult",
    "Derivation",
    "DerivationPair",
    "ExtensibilityReport",
    "Extension",
    "ExtensionContext",
    "GradedElement",
    "KernelDatum",
    "KernelLift",
    "LghContext",
    "Lie2DerHom",
    "LieAlgebra",
    "LieDerCochain",
    "LieDerPair",
    "LieDerRep",
    "Matrix",
    "NonAbelianCocycle",
    "ObstructionClass3",
    "ObstructionW",
    "QuotientSpace",
    "Representation",
    "Section",
    "StrictDer2",
    "StrictLie2",
    "Subspace",
    "TwoHom",
    "Vec",
    "apply_gauge",
    "assemble_extension",
    "build_extension",
    "build_hder",
    "canonical_section",
    "ce_coboundary",
    "center",
    "choose_lift",
    "cocycle_to_hom",
    "cocycle_to_mc",
    "cohomology",
    "column_space",
    "cup_product",
    "decompose",
    "delta_op",
    "der_coordinates",
    "derivation_space",
    "ext_class_difference",
    "extensibility_report",
    "extract_cocycle",
    "fiber_preserving_derivations",
    "formal_coboundary",
    "gamma",
    "gauge_dgla",
    "hom_to_cocycle",
    "induced_rep",
    "inner_derivations",
    "is_compatible",
    "is_derivation",
    "is_extensible",
    "is_lieder_pair",
    "iso_from_gauge",
    "jacobi_check",
    "kernel_basis",
    "kernel_of_extension",
    "lgh_bracket",
    "lgh_differential",
    "lieder_coboundary",
    "lift",
    "mc_check",
    "mc_to_cocycle",
    "nr_bracket",
    "obstruction_ch",
    "obstruction_w",
    "out_space",
    "pair_lie2",
    "pullback_pair",
    "rank",
    "realize_kernel",
    "rref",
    "section_difference",
    "solve",
    "solve_vec",
    "tau_element",
    "torsor_act",
    "verify_cocycle",
    "verify_equivalence_witness",
    "verify_extension",
    "verify_hom",
    "verify_kernel",
    "verify_lie2",
    "verify_strict_der",
    "verify_two_hom",
]
