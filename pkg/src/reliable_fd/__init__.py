"""Discover reliable functional dependencies X -> Y in categorical data.

The score is the fraction of information corrected for chance under the
permutation model. Exact search uses branch-and-bound with either of two
admissible bounds; a greedy search is available as a fast heuristic.
"""

from .bounds import BoundKind, delta_gap, f_mon, f_spc, staged_bound_prunes
from .data import (ContingencyTable, DataError, Dataset, Labeling, constant_labeling,
                   contingency, discretize_equal_frequency, is_specialization,
                   joint_labeling, load_csv)
from .measures import (ScoreBundle, entropy, expected_mi_from_marginals,
                       expected_mi_permutation, fraction_of_information, m0_upper_bound,
                       mutual_information, oracle_expected_mi, score_bundle)
from .search import DiscoveryResult, SearchConfig, exhaustive, greedy, opus

__version__ = "0.1.0"

__all__ = [
    "BoundKind", "delta_gap", "f_mon", "f_spc", "staged_bound_prunes",
    "ContingencyTable", "DataError", "Dataset", "Labeling", "constant_labeling", "contingency",
    "discretize_equal_frequency", "is_specialization", "joint_labeling", "load_csv",
    "ScoreBundle", "entropy", "expected_mi_from_marginals", "expected_mi_permutation",
    "fraction_of_information", "m0_upper_bound", "mutual_information", "oracle_expected_mi",
    "score_bundle",
    "DiscoveryResult", "SearchConfig", "exhaustive", "greedy", "opus",
]
