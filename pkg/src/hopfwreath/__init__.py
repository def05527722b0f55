"""Exact wreath products of cocommutative Hopf algebras.

Group algebras and truncated enveloping algebras are built as explicit
structure tables over the rationals; smash and crossed products, cleft
extension data and the Kaloujnine-Krasner embeddings are constructed and
verified exhaustively on finite or degree-truncated bases.
"""
from .errors import (
    ActionInvalid,
    CocycleNotInvertible,
    DegreeOverflow,
    HomomorphismFailure,
    HopfWreathError,
    KernelMismatch,
    NoSolution,
    NotCleft,
    NotInKernel,
    NotInvertible,
    NotSurjective,
    ParseError,
    SectionInvalid,
    ValidationError,
    WindowExceeded,
)
from .groups import (
    FiniteGroup,
    GroupExtension,
    builtin_group,
    builtin_group_extension,
    find_extension_isomorphism,
    find_isomorphism,
    group_algebra,
    kk_embed_group,
    measuring_group_iso,
    recover_extension_from_subgroup,
    wreath_group,
)
from .hopf import (
    AxiomReport,
    HopfMorphism,
    HopfOps,
    check_axioms,
    convolution_inverse,
    convolve,
    group_likes,
    hopf_kernel,
    primitives,
    sweedler_expand,
)
from .lie import (
    LieAlgebra,
    LieExtension,
    TruncatedEnvelope,
    WreathLieElement,
    builtin_lie,
    builtin_lie_extension,
    cancel_lemma_check,
    coalgebra_section,
    enveloping_hopf,
    kk_embed_lie,
    lie_wreath_bracket,
    pbw_normalize,
)
from .linear import LinComb, LinMap, kernel_basis, lincomb_combine, solve, tensor
from .smash import (
    CleftExtensionData,
    Cocycle,
    HopfAction,
    alpha_embed,
    check_module_axioms,
    cleavage_check,
    crossed_product,
    recover_cleft_extension,
    smash_product,
    wreath_hopf,
)

__version__ = "0.1.0"
