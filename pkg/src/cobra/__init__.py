"""Active clustering with pairwise must-link / cannot-link queries.

The package over-clusters a dataset into super-instances with K-means, then
merges super-instances bottom-up, spending oracle queries only on the pairs
of cluster representatives that look closest.  Answers are stored with their
transitive and entailed consequences so no derivable pair is ever queried.
"""

__version__ = "0.1.0"

from .constraints import ConstraintStore, InconsistentConstraintError, Relation
from .core import (
    Clustering,
    CobraRun,
    QueryEntry,
    QueryLog,
    closest_rep_pair,
    cluster_distance,
    query_bounds,
    run_cobra,
)
from .dataset import DataError, Dataset, dedupe, distance, load_csv, normalize
from .evaluation import (
    FoldResult,
    ari,
    baseline_closure,
    baseline_full,
    cross_validate,
    make_folds,
)
from .oracles import (
    OracleAbort,
    ReplayDivergenceError,
    SessionOracle,
    StaleAnswerError,
    label_oracle,
    load_query_log,
    replay_oracle,
    save_query_log,
)
from .superinstances import SuperInstanceSet, build_super_instances, kmeans, medoid

__all__ = [
    "Clustering",
    "CobraRun",
    "ConstraintStore",
    "DataError",
    "Dataset",
    "FoldResult",
    "InconsistentConstraintError",
    "OracleAbort",
    "QueryEntry",
    "QueryLog",
    "Relation",
    "ReplayDivergenceError",
    "SessionOracle",
    "StaleAnswerError",
    "SuperInstanceSet",
    "ari",
    "baseline_closure",
    "baseline_full",
    "build_super_instances",
    "closest_rep_pair",
    "cluster_distance",
    "cross_validate",
    "dedupe",
    "distance",
    "kmeans",
    "label_oracle",
    "load_csv",
    "load_query_log",
    "make_folds",
    "medoid",
    "normalize",
    "query_bounds",
    "replay_oracle",
    "run_cobra",
    "save_query_log",
]
