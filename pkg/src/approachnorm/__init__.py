"""Decision procedures for normality of finite approach spaces.

A finite approach space is a finite set with an extended quasi-pseudometric
``q``; the package computes separation degrees, Urysohn contractions,
contractive scales, interpolating and extending contractions, and decides
normality with checkable witnesses.  All arithmetic is exact.
"""
from .values import INF, ext, fmt, tsub
from .errors import ApproachError
from .space import (
    ClosureRelation,
    FiniteSpace,
    closure,
    coreflection,
    distance,
    enlargement,
    from_topology,
    path_closure,
    subspace,
    symmetrization,
    validate,
)
from .functions import (
    CodomainTag,
    Development,
    FnOverSpace,
    canonical_development,
    classify,
    core,
    delta_fn,
    development_valid,
    level_development,
    lower_hull,
    theta,
    upper_hull,
)
from .separation import (
    NoWitness,
    NormalityVerdict,
    Scale,
    contraction_to_scale,
    frame_condition2,
    frame_condition3,
    is_gamma_separated,
    is_normal,
    prop_inequal_check,
    scale_to_contraction,
    separation_degree,
    urysohn,
    verify_normal_scale,
)
from .interpolation import (
    InterpolationResult,
    kt_direct,
    kt_staged,
    kt_witness_from_nonnormal,
    tong_combine,
)
from .extension import (
    ExtensionResult,
    build_hats,
    tietze_condition,
    tietze_extend,
    urysohn_via_tietze,
)
from .maps import (
    SpaceMap,
    image_function,
    is_closed_expansive,
    is_contraction_map,
    is_open_expansive,
    run_preservation_suite,
)

__version__ = "0.1.0"
