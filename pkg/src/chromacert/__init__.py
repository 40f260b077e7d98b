"""chromacert: certified checks for degree-based colouring bounds.

Exact rational certificates for the arithmetic property driving the
counting-ratio induction on triangle-free graphs, exact list-colouring
counting and choosability at desk scale, interval-certified bipartite
choosability conditions with region scans, and halved-outdegree Eulerian
orientations with signed Eulerian-subdigraph counts.
"""

__version__ = "0.1.0"

from .certificates import (
    CERTIFIED_FALSE,
    CERTIFIED_TRUE,
    UNDECIDED,
    Certificate,
    replay_transcript,
)
from .coloring import (
    ColoringSampler,
    KSpec,
    ListAssignment,
    NoColoringExists,
    SizeCapError,
    chromatic_number,
    count_list_colorings,
    degree_list_assignment,
    enumerate_list_colorings,
    find_uncolorable_assignment,
    is_choosable,
    is_L_colorable,
    list_chromatic_number,
    residual_list,
    uniform_sample_coloring,
)
from .graphs import (
    Graph,
    Graph6Error,
    UnknownGraphError,
    bipartition,
    chvatal_graph,
    clebsch_graph,
    complete_bipartite_graph,
    complete_graph,
    cycle_graph,
    encode_graph6,
    girth,
    graph_from_json,
    graph_to_json,
    is_bipartite,
    is_c4_free,
    is_connected,
    is_triangle_free,
    line_graph,
    odd_closed_walk,
    parse_graph6,
    path_graph,
    petersen_graph,
    regularize,
    star_graph,
    zoo,
)
from .intervals import CertifiedInterval, PrecisionExhausted, euler_interval
from .orientation import (
    EulerTrace,
    Orientation,
    alon_tarsi_difference,
    halved_outdegree_orientation,
    has_odd_directed_cycle,
    orient_cycle,
    verify_halved_orientation_choosability,
)
from .property_p import (
    certify_default_quadruplet,
    convexity_probe,
    minimal_delta0,
    property_p_range,
    property_p_single,
    tail_certificate_half,
)
from .bipartite import (
    BipartiteParams,
    PreconditionError,
    ScanResult,
    choosable_certificate,
    coupon_condition,
    half_list_size,
    threshold_table,
    transversal_condition,
    transversal_threshold,
    uncovered_region_scan,
    verify_region_coverage,
)
from .ratio import (
    RatioExperiment,
    RatioReport,
    ZeroDenominatorError,
    color_count_ratio,
    conditional_expectation_check,
    expected_blocked,
    few_colors_event_check,
    monte_carlo_ratio,
    pessimistic_lower_bound,
    run_ratio_experiment,
    self_reducibility_check,
)
