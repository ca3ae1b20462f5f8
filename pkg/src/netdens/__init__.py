"""Density decompositions of undirected networks.

Egalitarian orientations, density rings, k-cores, density/degree
similarity, and generators for networks with a prescribed density
distribution.
"""

from .decomposition import (
    CoreDecomposition,
    DensityDecomposition,
    VerificationReport,
    decompose,
    egalitarian_orient,
    find_reversible_path,
    kcore_decompose,
    kcore_region_density,
    reverse_path,
    rings_from_orientation,
    verify_decomposition,
)
from .errors import (
    ContractError,
    DegenerateError,
    EmptyRegionError,
    InfeasibleSpecError,
    NotGraphicalError,
    ParseError,
    UndefinedMetricError,
)
from .generators import (
    ModelSpec,
    abstract_generate,
    clique_orientation,
    generate,
    generate_ds,
    generate_gnp,
    generate_hsw,
    generate_pa,
    generate_rdd,
    generate_regular,
    generate_sw,
    hsw_selector,
    rdd_selector,
)
from .graph import (
    Graph,
    LabelMap,
    Orientation,
    from_edges,
    identify_and_delete,
    parse_edgelist,
    read_edgelist,
    write_edgelist,
)
from .metrics import (
    Distribution,
    EdgeBiasReport,
    average_path_length,
    beta_rho_delta,
    bhattacharyya,
    clustering_coefficient,
    degree_distribution,
    densest_subgraph_bruteforce,
    density_distribution,
    edge_bias_report,
    expected_edge_fraction,
)

__version__ = "0.1.0"
