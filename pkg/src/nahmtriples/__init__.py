"""Transforms, stability windows, vortex parameters, and a numerical Nahm
transform for constant-curvature line bundles on a flat torus."""

from .errors import *  # noqa: F401,F403
from .invariants import (  # noqa: F401
    BundleClass,
    ChernPair,
    ITIndex,
    ModuliDescriptor,
    Rational,
    Summand,
    fm_transform_class,
    it_class,
    moduli_descriptor,
    slope,
)
from .triples import (  # noqa: F401
    AlphaWindow,
    EquivariantType,
    PreservationVerdict,
    TripleType,
    alpha_slope,
    alpha_window,
    check_equal_ranks_case,
    check_large_alpha_preservation,
    check_small_alpha_preservation,
    critical_values,
    equivariant_descriptor,
    transform_triple_type,
)
from .vortex import (  # noqa: F401
    NOT_POLYSTABLE_AFTER_TRANSFORM,
    BlockTriple,
    CovConstTriple,
    VortexParams,
    alpha_from_tau,
    cov_const_slopes,
    nahm_cov_const,
    params_for_taus,
    polystability_counterexample,
    tau_from_alpha,
    vanishing_check,
)
from .dirac import (  # noqa: F401
    BundleSpec,
    DiracOperator,
    KernelFrame,
    LineBundleSpec,
    TorusSpec,
    build_dirac,
    commutator_residual,
    kernel_frame,
    numerical_it_check,
)
from .sweep import (  # noqa: F401
    CurvatureMap,
    DoubleTransformResult,
    TransformSweep,
    berry_curvature,
    double_transform,
    theta_multiplier,
    transform_morphism,
    transform_sweep,
)

__version__ = "0.1.0"
