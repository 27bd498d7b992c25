"""Stretch-width of ordered graphs and symmetric 0,1-matrices."""
from .graph import (
    OrderedGraph, PartitionSequence, VertexPartition, build_ordered_graph, red_graph, relabel, reverse,
)
from .stretch import exact_stw, exact_stw_fixed_order, order_from_component_sequence, partition_stretch, verify_sequence
from .matrix import SymBitMatrix, SymDivision, DivisionSequence, adjacency_matrix, approx_stw, is_part_wide
from .overlap import clean_biclique_at_least, ktt_upper_check, max_rainbow_over, overlap_graph
from .separator import balanced_separator, left_right_separator, tree_decomposition, verify_separation
from .generators import gen_abh, gen_flattened_grid, gen_grid, gen_hk, gen_hk_bad_order, iterated_subdivision
from .mis import mis_branch, mis_exact, mis_tw_dp
from .formats import parse_instance

__all__ = [name for name in dir() if not name.startswith("_")]
