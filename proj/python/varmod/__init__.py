"""Variable-exponent modulars, Luxemburg norms, kernel projections, and the
modular-inequality falsifier.

Everything is implemented in the compiled extension; this package re-exports
its public surface.
"""

from varmod._core import (  # noqa: F401
    ChainWitness,
    ConvergenceError,
    Domain,
    ExponentField,
    FalsificationReport,
    GapSets,
    KernelId,
    LemmaReport,
    LemmaTrial,
    NoExponentGap,
    NonpositiveInfimum,
    QuadratureGrid,
    Region,
    SampledFunction,
    ValidationError,
    Verdict,
    bergman_disk_kernel,
    bergman_halfplane_kernel,
    build_grid,
    constant_exponent,
    describe_exponent,
    disk_domain,
    essential_bounds,
    eval_exponent,
    eval_function,
    falsify,
    find_gap_sets,
    find_positive_box,
    geometric_schedule,
    halfplane_domain,
    halfplane_negativity_check,
    halfspace_domain,
    harmonic_halfspace_kernel,
    indicator,
    kernel_domain,
    kernel_infimum,
    kernel_value,
    log_holder_modulus,
    luxemburg_norm,
    modular,
    neighborhood_halfplane,
    polynomial,
    project,
    proof_chain_check,
    radial_exponent,
    region_annulus,
    region_box,
    region_disk,
    region_inside_domain,
    region_union,
    regions_intersect,
    scaled_indicator,
    two_level_exponent,
    verify_lower_bound,
)

__all__ = [name for name in dir() if not name.startswith("_")]
