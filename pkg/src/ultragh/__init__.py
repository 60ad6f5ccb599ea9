"""Finite metric spaces, subdominant ultrametrics and Gromov-Hausdorff distances."""

from .chain import (
    ChainPartition,
    ChainWitness,
    chain_witness,
    components_at_scale,
    is_chain_connected,
    min_connecting_scale,
)
from .errors import MetricInputError, ResourceLimitError
from .generators import (
    geometric_progression,
    grid_segment,
    one_point,
    polygon_vertices,
    random_euclidean,
    random_ultrametric,
)
from .gh import (
    Correspondence,
    GhResult,
    distortion,
    enumerate_correspondences,
    gh_bounds,
    gh_exact,
    gh_lower_bounds,
    gh_upper_bound_trivial,
    hausdorff,
    inverse,
    product_correspondence,
)
from .kuratowski import Embedding, SampledDt, dt_connectivity_check, dt_correspondence, embed, sample_dt
from .space import (
    FiniteMetricSpace,
    ProductMetricTable,
    ValidationReport,
    check_dominates_linf,
    check_fair,
    diameter,
    is_ultrametric,
    product_l1,
    product_linf,
    product_table,
    ultrametric_defect,
    validate_metric,
)
from .ultrametrize import (
    MstEdgeList,
    UltrametricSpace,
    bottleneck,
    minimax_closure_oracle,
    minimum_spanning_tree,
    subdominant,
)

__version__ = "0.1.0"
