"""Primitive ideal spaces of topological graph algebras over shifts of finite type.

The package works with a one-sided shift of finite type X (or a finite
permutation), a domain Y given by a symbol subset and the shift
sigma : Y -> X.  It builds the dilation space X_inf with its Z-action,
the quasi-orbits and their closures, the points of Prim(O(E)) in the
unital case, and finite-dimensional matrix models that cross-check the
classification.
"""

from .inverse_limit import (
    EvpPoint,
    Stratum,
    format_point,
    gamma,
    gamma_inv,
    gamma_pow,
    is_periodic,
    parse_point,
    point_from_cycle,
    point_heteroclinic,
)
from .prim_space import (
    Angle,
    ApPoint,
    Bounds,
    CircleClass,
    NonUnitalError,
    approx_equiv,
    prim_points,
    prim_report,
    roots_of_unity,
    specialization,
)
from .quasi_orbit import (
    QuasiOrbit,
    Tristate,
    closure_contains,
    isotropy,
    orbit_closure,
    quasi_orbit,
    quasi_orbit_space,
    same_quasi_orbit,
)
from .rep_oracle import (
    GraphGenerators,
    build_cycle_rep,
    kernels_equal,
    verify_crossed_relations,
    verify_graph_relations,
    williams_check,
)
from .sft import (
    Cycle,
    SftSystem,
    SystemConfigError,
    check_alpha_injective,
    check_alpha_unital,
    count_periodic_points,
    enumerate_cycles,
    full_shift,
    parse_system,
    permutation_system,
)

__version__ = "0.1.0"

__all__ = [
    "EvpPoint",
    "Stratum",
    "format_point",
    "gamma",
    "gamma_inv",
    "gamma_pow",
    "is_periodic",
    "parse_point",
    "point_from_cycle",
    "point_heteroclinic",
    "Angle",
    "ApPoint",
    "Bounds",
    "CircleClass",
    "NonUnitalError",
    "approx_equiv",
    "prim_points",
    "prim_report",
    "roots_of_unity",
    "specialization",
    "QuasiOrbit",
    "Tristate",
    "closure_contains",
    "isotropy",
    "orbit_closure",
    "quasi_orbit",
    "quasi_orbit_space",
    "same_quasi_orbit",
    "GraphGenerators",
    "build_cycle_rep",
    "kernels_equal",
    "verify_crossed_relations",
    "verify_graph_relations",
    "williams_check",
    "Cycle",
    "SftSystem",
    "SystemConfigError",
    "check_alpha_injective",
    "check_alpha_unital",
    "count_periodic_points",
    "enumerate_cycles",
    "full_shift",
    "parse_system",
    "permutation_system",
]
