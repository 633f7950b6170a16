"""Convex algebras on the unit interval with monotone, semicontinuous operations.

Construct them exactly from their eater data sets, evaluate mixtures,
check the defining laws on seeded random samples, classify arbitrary
handles back to their data sets, and decide isomorphy.
"""

from .blocks import BlockKind, DomainError, MixedEndpointError, block_combine, interval_isomorphism
from .classify import (
    NotAGapError,
    UndecidedError,
    check_v_max_formula,
    classify,
    extract_eaters,
    extract_gap_tag,
)
from .core import (
    Algebra,
    BlockAlgebra,
    KernelClass,
    LadderAlgebra,
    NumericAlgebra,
    PointDist,
    PreconditionError,
    StructuredAlgebra,
    barycenter,
    block,
    build,
    clamp_barycenter,
    combine,
    eats,
    path,
    path_infimum,
    path_kernel,
    rewrite_eaters,
)
from .eaterspec import (
    Component,
    EaterSpec,
    GapTag,
    LadderSpec,
    SpecError,
    dumps_ladder,
    dumps_spec,
    eater_floor,
    gaps,
    ladder_to_window,
    loads_ladder,
    loads_spec,
    make_spec,
    validate_spec,
)
from .iso import (
    AutFactor,
    AutSignature,
    CanonSig,
    NotIsomorphicError,
    ShiftEquivalence,
    aut_signature,
    canonical_signature,
    iso_decide,
    iso_map,
    ladder_shift_equiv,
)
from .laws import (
    Dist,
    LawReport,
    Sampler,
    check_axioms,
    check_cancellation,
    check_clamped_extension,
    check_extension_lsc,
    check_kernel_coherence,
    check_lc,
    check_mo,
    check_uc,
    homomorphic_extension,
    run_core_suites,
)
from .plonka import InexactCoordinate, SPoint, embed, locate, s_combine
from .rational import Rat, rat, rat_str

__all__ = [name for name in dir() if not name.startswith("_")]
