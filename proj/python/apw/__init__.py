"""Exact linear algebra, collar dynamics and aperiodicity verdicts."""

try:
    from ._apw import (  # noqa: F401
        affine_periodic_points,
        catalog_entries,
        classify_orbit,
        elliptic_profile,
        geography_covered,
        is_sp_sl,
        kernel,
        kernel_direction,
        mapping_torus_invariant,
        rank,
        rationally_independent,
        simulate_direction,
        smith_normal_form,
        sum_from_json,
        validate_spec,
    )
except ImportError:  # in-tree builds put the module directly on the path
    from _apw import (  # noqa: F401
        affine_periodic_points,
        catalog_entries,
        classify_orbit,
        elliptic_profile,
        geography_covered,
        is_sp_sl,
        kernel,
        kernel_direction,
        mapping_torus_invariant,
        rank,
        rationally_independent,
        simulate_direction,
        smith_normal_form,
        sum_from_json,
        validate_spec,
    )
