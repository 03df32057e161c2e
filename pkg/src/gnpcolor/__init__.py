"""Approximately-uniform k-coloring of sparse random graphs.

Pipeline: peel off every edge not lying on a short cycle, exactly sample the
leftover cycle/vertex core, then re-add the peeled edges one by one, fixing
each clash with a Kempe-chain color switch.  The oracle submodule provides
exhaustive small-instance ground truth for all accuracy claims.
"""

from ._backend import active_backend
from .coloring import Coloring, is_proper
from .graph import (
    CycleThreshold,
    GnpParams,
    Graph,
    SimpleDecomposition,
    check_x_membership,
    classify_simple,
    generate_gnp,
    load_graph,
    removable_edges,
    save_graph,
    short_cycle_threshold,
    shortest_cycle_through_edge,
)
from .cyclesample import (
    cycle_coloring_count,
    cycle_vertex_marginal,
    path_count,
    sample_simple,
)
from .kempe import KempeChain, kempe_chain, switching, update
from .peel import PeelSequence, build_peel_sequence, endpoint_distance_check
from .pipeline import RunConfig, RunReport, run, sample_many

__all__ = [
    "Coloring",
    "CycleThreshold",
    "GnpParams",
    "Graph",
    "KempeChain",
    "PeelSequence",
    "RunConfig",
    "RunReport",
    "SimpleDecomposition",
    "active_backend",
    "build_peel_sequence",
    "check_x_membership",
    "classify_simple",
    "cycle_coloring_count",
    "cycle_vertex_marginal",
    "endpoint_distance_check",
    "generate_gnp",
    "is_proper",
    "kempe_chain",
    "load_graph",
    "path_count",
    "removable_edges",
    "run",
    "sample_many",
    "sample_simple",
    "save_graph",
    "short_cycle_threshold",
    "shortest_cycle_through_edge",
    "switching",
    "update",
]

__version__ = "0.1.0"
