"""Exact extremal and spectral computations for graphs without k disjoint copies of F."""

__version__ = "0.1.0"

from .errors import (
    CapabilityError,
    ConvergenceError,
    Graph6Error,
    InputError,
    NotApplicableError,
    SpectrexError,
)
from .graph import (
    Graph,
    complement,
    complete_graph,
    complete_multipartite,
    cycle_graph,
    disjoint_copies,
    disjoint_union,
    join,
    path_graph,
    petersen_graph,
    star_graph,
    turan_edges,
    turan_graph,
)
from .graph6 import graph6_decode, graph6_encode
from .canon import are_isomorphic, automorphism_orbits, canonical_form, canonical_graph6
from .invariants import (
    ProblemSpec,
    chromatic_number,
    classify_low_and_dense,
    contains_subgraph,
    edit_distance_to_turan,
    is_family_free,
    low_degree_peel,
    matching_number,
    max_crossing_partition,
    max_disjoint_copies,
)
from .spectral import QuotientSpec, perron_formula_check, quotient_rho, spectral_radius
from .search import (
    ExtremalCatalog,
    construct_candidates,
    edge_extremal,
    enumerate_family_free,
    enumerate_graphs,
    lower_bound_edges,
    measure_excess,
    spectral_extremal,
    verify_edge_theorem,
    verify_spectral_theorem,
)
from .bounds import (
    brute_force_f,
    chvatal_hanson,
    erdos_stone_estimate,
    intersection_lower_bound,
    turan_edge_bounds,
)


def schema_path():
    """Path to the JSON schema every report validates against."""
    from importlib.resources import files

    return files(__name__) / "schema" / "report.schema.json"
