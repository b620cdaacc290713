"""Rooted phylogenetic networks, their ancestral profiles, and reconstruction.

The package provides the network data type with validation and structure
queries, path-count profiles, cherry reductions with the orchard decision,
profile-level moves with a reconstruction search, seeded generators with an
exhaustive small-case enumerator, claim verifiers, and file formats.
All values are immutable and every operation is a pure function.
"""

from .cherries import (CherryMove, CherrySequence, MoveKind, available_moves,
                       cut_reticulated_cherry, find_cherries,
                       find_reticulated_cherries, grow_cherry,
                       grow_reticulated_cherry, grow_reticulation_arc,
                       is_detectable_reticulated_cherry, is_orchard,
                       maximal_reduction, random_maximal_reduction,
                       reduce_cherry, tree_grandparents)
from .formats import (parse_edge_list, parse_enewick, render_dot,
                      render_edge_list, render_enewick)
from .generators import (GenParams, enumerate_networks,
                         generate_profile_equal_stacked_pair,
                         random_non_orchard, random_orchard, random_tree_child)
from .isomorphism import is_isomorphic, isomorphism_witness, refinement_signature
from .network import (IdentifiedGraph, Network, SinkPartition, ValidationReport,
                      VertexClass, build_network, contract_stack_arc,
                      is_stack_free, is_time_consistent, is_tree_child,
                      is_tree_sibling, reticulations, single_vertex_network,
                      sinks, stack_arcs, stack_identification, time_assignment,
                      validate, vertex_class)
from .profiles import (PLACEHOLDER, ProfileTable, ancestral_profile,
                       check_clone_characterization, clones, count_paths,
                       default_ordering, maximal_clone_pairs, profiles_equal,
                       support)
from .profile_moves import (ProfileMove, apply_profile_move, cut_retained,
                            cut_suppressed, detect_moves, identify_row,
                            reduce_leaf, support_conditions)
from .reconstruct import (IdAgreement, ReconstructionResult, check_id_agreement,
                          reconstruct, reconstruct_all, replay_moves)
from .verify import CLAIMS, Failure, VerifierReport, verify

__all__ = [name for name in dir() if not name.startswith("_")]
