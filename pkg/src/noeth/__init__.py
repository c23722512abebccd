"""Exact measure theory and dynamics on finite Noetherian spaces."""

from .errors import *  # noqa: F401,F403
from .topology import (
    Completion,
    FiniteSpace,
    IrreducibleClosed,
    build_space,
    closure,
    complete_space,
    irreducible_components,
    is_zariski,
    to_dot,
)
from .functions import (
    CharCombination,
    RealFunction,
    SCFunction,
    char_combination,
    constant,
    eta_transport,
    generic_value,
    indicator,
    is_usc,
    sc_decompose,
    sup_norm,
)
from .measures import (
    IntersectionType,
    Measure,
    classify_intersection,
    dirac,
    extract_convergent_subsequence,
    from_closed_set_values,
    integrate,
    j_embed,
    jordan_decompose,
    measure_of_closed,
    weak_distance,
)
from .dynamics import (
    ContinuousMap,
    LimitMeasureReport,
    OrbitSummary,
    ReverseOrbitSpec,
    alpha_limit,
    ergodic_measures,
    forward_orbit,
    induce_on_completion,
    is_invariant,
    omega_limit,
    periodic_cycles,
    pushforward,
    forward_limit_measure,
    reverse_limit_measure,
    validate_map,
)
from .dinh import (
    TauProfile,
    best_reverse_orbit,
    tau_minus,
    tau_minus_closure_formula,
    tau_minus_n,
    tau_n,
    tau_plus,
    tau_profile,
)

__version__ = "0.1.0"
