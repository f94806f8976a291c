"""Link prediction via diffusion distance over personalized-PageRank signals.

The heavy lifting lives in the compiled extension; this package re-exports
its public surface.
"""

from ._core import (  # noqa: F401
    BaParams,
    CgConfig,
    ConvergenceError,
    DiffusionTrace,
    EdgelistParseError,
    GenerationError,
    Graph,
    KatzConfig,
    KatzMode,
    LfrParams,
    PairScore,
    PprConfig,
    PprVector,
    Protocol,
    SolveReport,
    SolverConfig,
    SplitDataset,
    adamic_adar,
    aupr,
    cg_solve,
    common_neighbors,
    dense_resolvent_solve,
    diffuse_trace,
    dppr_distance,
    dppr_score,
    dppr_score_pairs,
    generate_ba,
    generate_lfr,
    holdout_split,
    katz_score,
    laplacian_apply,
    mean_mixing_fraction,
    parse_edgelist,
    parse_edgelist_file,
    ppr_batch,
    ppr_solve,
    resolvent_apply,
    run_benchmark,
    spectral_radius_estimate,
    walk_apply,
)
from ._core import __version__  # noqa: F401
