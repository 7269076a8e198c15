"""Min-distance eccentricities, radius and diameter on DAGs.

For two vertices of a directed graph the min-distance is
``d_min(u, v) = min(d(u, v), d(v, u))``.  This package computes the derived
parameters (per-vertex min-eccentricity, min-radius, min-diameter) on DAGs:
exactly via an all-pairs oracle, and approximately via certified
partition-and-search algorithms with proven ratio contracts.  It also ships
the instance generators (random DAGs, distance gadgets, and the
triangle-detection reduction) and a benchmarking/verification CLI.
"""

from .dag import (
    INF,
    CycleError,
    Dag,
    Direction,
    SetDirection,
    VertexInterval,
    min_dist_to_set,
    set_eccentricity,
    sssp,
    sssp_set,
)
from .eccradius import (
    Certification,
    CertifiedSubset,
    PartitionStrategy,
    SearchCounters,
    Verdict,
    approx_min_eccentricities,
    approx_min_radius,
    certify_eccentricities,
    find_certified_subset,
)
from .exact import ApspMatrix, ExactSummary, apsp, exact_summary
from .generators import (
    ConnectivityGadget,
    DagFragment,
    ReductionInstance,
    TriangleInstance,
    chain_length_for_gap,
    gen_connectivity_gadget,
    gen_dag_gadget,
    gen_random_dag,
    gen_triangle_instance,
    reduce_triangle_to_minradius,
)
from .harness import default_corpus, verify_corpus
from .mindiam import (
    DiamVerdict,
    EpsilonMode,
    approx_min_diameter,
    build_near_sets,
    certify_min_diameter,
    choose_epsilon,
    greedy_hitting_set,
    sparse_pair_product,
)

__version__ = "0.1.0"

__all__ = [
    "INF",
    "CycleError",
    "Dag",
    "Direction",
    "SetDirection",
    "VertexInterval",
    "sssp",
    "sssp_set",
    "min_dist_to_set",
    "set_eccentricity",
    "apsp",
    "ApspMatrix",
    "exact_summary",
    "ExactSummary",
    "Verdict",
    "PartitionStrategy",
    "SearchCounters",
    "Certification",
    "CertifiedSubset",
    "certify_eccentricities",
    "find_certified_subset",
    "approx_min_eccentricities",
    "approx_min_radius",
    "DiamVerdict",
    "EpsilonMode",
    "approx_min_diameter",
    "certify_min_diameter",
    "build_near_sets",
    "sparse_pair_product",
    "greedy_hitting_set",
    "choose_epsilon",
    "DagFragment",
    "ConnectivityGadget",
    "TriangleInstance",
    "ReductionInstance",
    "gen_random_dag",
    "gen_dag_gadget",
    "gen_connectivity_gadget",
    "gen_triangle_instance",
    "reduce_triangle_to_minradius",
    "chain_length_for_gap",
    "default_corpus",
    "verify_corpus",
    "__version__",
]
