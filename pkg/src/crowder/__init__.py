"""Hybrid human-machine entity resolution.

Machine similarity prunes the candidate pairs, a task generator batches the
survivors into crowd verification tasks (pair lists or record clusters), a
simulated or real crowd answers them, and EM aggregation turns the replicated
answers into per-pair match verdicts.
"""

__version__ = "0.1.0"

from crowder.records import Record, GroundTruth, DatasetStats
from crowder.similarity import CandidatePair, PruneConfig, jaccard, generate_candidates
from crowder.two_tiered import ClusterHit, two_tiered
from crowder.generators import PairHit, pair_based

__all__ = [
    "Record",
    "GroundTruth",
    "DatasetStats",
    "CandidatePair",
    "PruneConfig",
    "jaccard",
    "generate_candidates",
    "ClusterHit",
    "two_tiered",
    "PairHit",
    "pair_based",
]
