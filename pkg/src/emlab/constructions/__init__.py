"""End-to-end builders with hypothesis checks and measured claims."""

from .approx import (
    ApproxInstance,
    FCorrespondence,
    a_eps,
    base_measurements,
    build_approx,
    f_correspondence,
    km_density,
    km_mass,
    random_regular_graph,
    sample_good_H,
    sample_seed,
    verify_f_correspondence,
)
from .bounded import (
    BoundedInstance,
    build_bounded,
    build_subdivided_cayley,
    default_m,
    formula_m,
    kappa_affine,
    t_edge_selection,
)
from .cayley import (
    CayleyGeneralInstance,
    SearchResult,
    augment_gap,
    build_cayley_general,
    build_sl2_cayley,
    check_hypotheses,
    count_symmetric_sets,
    default_t,
    search_generating_set,
)
from .common import BuildResult, measure
from .config import dump_config, parse_config
from .pathlen import PathlenCheck, pathlen_sides, verify_pathlen_identity
