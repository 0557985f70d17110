from .conf import SearchBounds
from .delta import (
    CarrierData,
    DeltaApprox,
    HolonomyVerdict,
    carrier_spaces,
    delta_module,
    delta_principal,
    delta_tensor,
    exclude_certificate,
    strongly_holonomic_check,
)
from .elements import (
    QuantumTorus,
    TorusElement,
    cocycle_check,
    embed_element,
    initial_form,
    is_unit,
    monomial_commutator,
    monomial_inverse,
    multiply,
    support,
    tensor_algebra,
)
from .exceptions import (
    AlgebraMismatch,
    DegenerateForm,
    DimensionMismatch,
    InvalidWitness,
    NonUnitLeadingCoefficient,
    NotExact,
    ParseError,
    PreconditionFailed,
    PresentationError,
    QTorusError,
    UnsupportedScalarGroup,
)
from .fans import RationalCone, RationalFan, fan_dimension
from .fields import CoeffField, ScalarEmbedding
from .lattice import RationalSubspace, Sublattice, complete_basis
from .modules import (
    CyclicModulePresentation,
    FGModulePresentation,
    GKResult,
    dim_exactness_check,
    direct_sum,
    filtration_verify,
    gk_dimension,
    in_right_ideal,
    tensor_module,
    torsion_witness,
)
from .pairing import (
    BlockDecomposition,
    CommutingMonomials,
    FourSubgroupWitness,
    QTorusPresentation,
    ScalarGroup,
    ScalarValue,
    TheoremBStep,
    alternating_block_decomposition,
    ann_subgroup,
    ann_subspace,
    commuting_monomials,
    derived_unit_subgroup,
    four_subgroup_validate,
    is_isotropic,
    is_simple,
    isotropic_search,
    isotropic_sublattices,
    pairing_eval,
    pfaffian,
    radical,
    restrict_presentation,
    theoremB_step,
)
from .skew import (
    CompanionModule,
    LaurentRing,
    MonomialAutomorphism,
    SkewLaurentPoly,
    construct_simple_module,
    degree_one_right_factor,
    example_generator,
    presentation_automorphism,
    right_divide,
    simplicity_probe,
    skew_multiply,
    skew_right_gcd,
    skew_right_xgcd,
    torsion_free_check,
    unit_poly_check,
)

__all__ = [
    "AlgebraMismatch",
    "BlockDecomposition",
    "CarrierData",
    "CoeffField",
    "CommutingMonomials",
    "CompanionModule",
    "CyclicModulePresentation",
    "DegenerateForm",
    "DeltaApprox",
    "DimensionMismatch",
    "FGModulePresentation",
    "FourSubgroupWitness",
    "GKResult",
    "HolonomyVerdict",
    "InvalidWitness",
    "LaurentRing",
    "MonomialAutomorphism",
    "NonUnitLeadingCoefficient",
    "NotExact",
    "ParseError",
    "PreconditionFailed",
    "PresentationError",
    "QTorusError",
    "QTorusPresentation",
    "QuantumTorus",
    "RationalCone",
    "RationalFan",
    "RationalSubspace",
    "ScalarEmbedding",
    "ScalarGroup",
    "ScalarValue",
    "SearchBounds",
    "SkewLaurentPoly",
    "Sublattice",
    "TheoremBStep",
    "TorusElement",
    "UnsupportedScalarGroup",
    "alternating_block_decomposition",
    "ann_subgroup",
    "ann_subspace",
    "carrier_spaces",
    "cocycle_check",
    "commuting_monomials",
    "complete_basis",
    "construct_simple_module",
    "degree_one_right_factor",
    "delta_module",
    "delta_principal",
    "delta_tensor",
    "derived_unit_subgroup",
    "dim_exactness_check",
    "direct_sum",
    "embed_element",
    "example_generator",
    "exclude_certificate",
    "fan_dimension",
    "filtration_verify",
    "four_subgroup_validate",
    "gk_dimension",
    "in_right_ideal",
    "initial_form",
    "is_isotropic",
    "is_simple",
    "is_unit",
    "isotropic_search",
    "isotropic_sublattices",
    "monomial_commutator",
    "monomial_inverse",
    "multiply",
    "pairing_eval",
    "pfaffian",
    "presentation_automorphism",
    "radical",
    "restrict_presentation",
    "right_divide",
    "simplicity_probe",
    "skew_multiply",
    "skew_right_gcd",
    "skew_right_xgcd",
    "strongly_holonomic_check",
    "support",
    "tensor_algebra",
    "tensor_module",
    "theoremB_step",
    "torsion_free_check",
    "torsion_witness",
    "unit_poly_check",
]
