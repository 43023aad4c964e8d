"""Seedless graph matching with tail degree signatures (TDS)."""

from .assign import Matching, greedy, hungarian, matching_cost
from .graph import Graph, GraphInputError, build_graph, degree, edge_disagreement, neighbors_at_distance
from .synth import CorrelatedErConfig, GraphPair, generate_pair, perturb_real
from .tds import FeatureConfig, extract_all, extract_feature, similarity_matrix

__version__ = "0.1.0"
