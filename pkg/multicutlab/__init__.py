from multicutlab.exceptions import (
    MulticutError, InvalidArgument, ParseError, FailedPrecondition, NotValid, NotAFacet, BudgetExceeded,
    Infeasible, Unbounded,
)

from multicutlab.graph import (
    Graph, MulticutInstance, SurgeryMap, build_graph, contract_edge, replace_edge_by_path, subdivide_edge,
    split_node, delete_edge, relabel_nodes, edge_subgraph, replace_edge_by_graph, contract_subgraph,
    shortest_path, is_tree, instances_isomorphic, star_graph, cycle_graph, path_graph,
)
from multicutlab.multicut import (
    is_multicut, is_minimal_multicut, enumerate_minimal_multicuts, min_multicut_bruteforce, min_st_cut,
    min_multicut_weighted, dominant_vertices,
)
from multicutlab.inequality import (
    LinearInequality, gen_edge_ineq, gen_path_ineq, edge_and_path_system, gen_circular_star,
    even_circular_star, gen_complete_star, gen_tree_ineq, gen_odd_cycle, gen_wagner, gen_generalized_wagner,
    classify_facet,
)
from multicutlab.facets import (
    is_valid, face_dimension, is_facet, is_shared_facet, structural_checks, analyze, FacetReport,
)
from multicutlab.hull import (
    HRepresentation, dd_convert, dominant_hrep, project_out, dominant_contains, check_complete_description,
    check_integer_points,
)
from multicutlab.lp import LPProblem, lp_solve
from multicutlab.separation import (
    SeparationResult, separate_paths, separate_stars_on_tree, separate_trees_on_tree, separate_pool,
)
from multicutlab.solver import SolverConfig, Solution, solve_min_multicut, lower_bound_report
from multicutlab.lifting import (
    LiftResult, lift_zero, restrict_to_support, lift_node_split, lift_subdivide, contract_subgraph_to_edge,
    splitted_claw_chain, derive_generalized_wagner, two_component_report,
)
from multicutlab.formats import parse_instance, load_instance, format_instance, parse_inequality, parse_inequalities
from multicutlab.reproduce import Check, run_reproduce
