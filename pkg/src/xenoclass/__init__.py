"""Classification of horizontal-gene-transfer placements on gene trees.

Given a rooted gene tree and a partition of its leaves into
transfer-free classes, this package decides for every tree edge and for
every ordered class pair whether a transfer there is essential,
forbidden, or ambiguous -- over all valid transfer-edge sets, and
optionally over all compatible refinements of the tree.
"""

from .ancestry import AncestryIndex, build_index
from .classify import PairClass, PairClassifier, RPairClassifier
from .fitch import (FitchGraph, fitch_graph, partition_from_graph, quotient,
                    symmetrize)
from .partition import (Partition, PartitionError, edge_coloring,
                        vertex_coloring)
from .refine import basic_refinement_step, star_refinement, urs_tree, y_set
from .separating import (EdgeClass, classify_tree_edges, induced_partition,
                         is_separating, maximal_separating_set)
from .simulate import (RateConfig, Scenario, run_experiment,
                       scenario_from_json, simulate_scenario)
from .tree import (RootedTree, TreeError, contract_edges, is_refinement,
                   parse_newick, tree_from_hierarchy, write_newick)

__version__ = "0.1.0"

__all__ = [
    "AncestryIndex", "build_index",
    "PairClass", "PairClassifier", "RPairClassifier",
    "FitchGraph", "fitch_graph", "partition_from_graph", "quotient",
    "symmetrize",
    "Partition", "PartitionError", "edge_coloring", "vertex_coloring",
    "basic_refinement_step", "star_refinement", "urs_tree", "y_set",
    "EdgeClass", "classify_tree_edges", "induced_partition", "is_separating",
    "maximal_separating_set",
    "RateConfig", "Scenario", "run_experiment", "scenario_from_json",
    "simulate_scenario",
    "RootedTree", "TreeError", "contract_edges", "is_refinement",
    "parse_newick", "tree_from_hierarchy", "write_newick",
]
