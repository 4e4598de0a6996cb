"""Finite topological quandles and the twisted-bialgebra maps on their species."""

from .enumeration import (
    canonical_form,
    dedupe,
    enumerate_quandles,
    enumerate_quasiorders,
    enumerate_topological_quandles,
)
from .errors import *  # noqa: F401,F403
from .formats import format_matrix, format_tq, loads, parse_matrix, parse_tq, render_sum
from .quandle import (
    Quandle,
    alpha,
    complement_quandle,
    conjugation_quandle,
    core_quandle,
    is_subquandle,
    left_translation,
    quandle_product,
    relabel,
    right_translation,
    subquandles,
    validate_quandle,
)
from .species import (
    FormalSum,
    TensorWord,
    check_coassoc_delta,
    check_coassoc_gamma,
    check_cointeraction,
    check_compat_delta_m,
    check_gamma_multiplicative,
    delta,
    gamma,
    m13,
    product_m,
    xi,
)
from .topological import (
    TopologicalQuandle,
    is_compatible,
    is_compatible_via_translations,
    kebab_backward,
    kebab_forward,
    make_tq,
)
from .topology import (
    Topology,
    circle_finer_set,
    connected_components,
    equivalence_classes,
    is_circle_finer,
    is_finer,
    quotient,
    restrict,
    topology_product,
    validate_topology,
)

__version__ = "0.1.0"
