"""Normed sets, bounded maps, and the free Banach spaces and algebras they generate.

All arithmetic is exact: norms are rationals (or exact sums of square roots of
rationals when complex scalars are involved) and every law is checked by
exact comparison.
"""
from .category import (
    CategoryFlags,
    ConstructionResult,
    MorphismReport,
    classify,
    coequalizer,
    coproduct,
    equalizer,
    is_injective_cset1,
    is_projective_cset1,
    product,
    singleton_decomposition,
)
from .counterexamples import (
    Witness,
    witness_banalg_bounded,
    witness_csetinf_incompleteness,
    witness_hilbert,
    witness_set_reflection,
)
from .errors import (
    DomainError,
    NotContractiveError,
    ParseError,
    RefusalError,
    UnboundedError,
)
from .free_algebra import (
    MatrixAlgebra,
    TensorAlgebra,
    TensorElement,
    alg_mul,
    alg_norm,
    extend_to_algebra,
    functor_on_map_alg,
    kappa,
    one_generator_convolution_check,
)
from .free_space import (
    CoordinateSpace,
    FreeSpace,
    FreeVector,
    LinearExtension,
    ScalarField,
    extend,
    functor_on_map,
    hom_roundtrip_check,
    linear_combine,
    scaled_free_extend,
    vector_norm,
    zeta,
)
from .normed_sets import NormedMap, NormedSet, compose, crh, identity, is_contractive
from .scalars import UNBOUNDED, NormValue, Scalar

__version__ = "0.1.0"
