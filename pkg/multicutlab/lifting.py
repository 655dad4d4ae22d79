import logging
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from multicutlab.exceptions import (
    BadAttachment, BadBreakpoints, BadParams, NodeNotInSupport, NotAFacet, NotASubgraph, NotValid, TerminalInside,
    TerminalMismatch,
)
from multicutlab.graph import (
    Graph, MulticutInstance, SurgeryMap, contract_subgraph, delete_edge, edge_subgraph,
    relabel_nodes, replace_edge_by_graph, replace_edge_by_path, split_node,
)
from multicutlab.inequality import LinearInequality, edge_inequalities, gen_complete_star, gen_generalized_wagner
from multicutlab.multicut import min_multicut_weighted, min_st_cut
from multicutlab._helpers import EdgePair

logger = logging.getLogger(__name__)


class LiftResult:
    """A transferred inequality together with the surgery that produced its instance.

    ``hypotheses`` maps the name of each side condition that was checked to
    whether it holds; ``omega`` is set by node splitting and subgraph
    contraction.
    """

    def __init__(self, instance: MulticutInstance, inequality: LinearInequality,
                 surgery: Optional[SurgeryMap] = None, omega: Optional[Fraction] = None,
                 hypotheses: Optional[Dict[str, bool]] = None, notes: Sequence[str] = ()) -> None:
        self.instance = instance
        self.inequality = inequality
        self.surgery = surgery
        self.omega = omega
        self.hypotheses = dict(hypotheses or {})
        self.notes = list(notes)

    def __iter__(self):
        return iter((self.instance, self.inequality))

    def __repr__(self) -> str:
        return 'LiftResult({!r}, {!r}, omega={})'.format(self.instance, self.inequality, self.omega)


def _map_pairs(pairs: Iterable[EdgePair], node_map: Mapping[int, Tuple[int, ...]]) -> List[EdgePair]:
    return [(node_map[s][0], node_map[t][0]) for s, t in pairs]


def lift_zero(inst: MulticutInstance, ineq: LinearInequality, target: MulticutInstance,
              node_map: Optional[Mapping[int, int]] = None) -> LiftResult:
    """Extend ``ineq`` by zeros from ``inst`` to a supergraph instance ``target``.

    ``node_map`` embeds the nodes of ``inst`` into ``target`` (identity by
    default). The pairs of ``inst`` must be exactly the target pairs among the
    embedded nodes. The side conditions under which a shared facet stays
    shared are reported in ``hypotheses``.

    Raises:
        NotASubgraph: an edge or node of ``inst`` has no image in ``target``.
        TerminalMismatch: the pairs disagree on the embedded nodes.
    """
    graph, big = inst.graph, target.graph
    node_map = dict(node_map) if node_map is not None else {w: w for w in range(graph.node_count)}
    if sorted(node_map) != list(range(graph.node_count)) or len(set(node_map.values())) != len(node_map):
        raise NotASubgraph('Node map must send the {} nodes injectively'.format(graph.node_count))
    if any(not 0 <= w < big.node_count for w in node_map.values()):
        raise NotASubgraph('Node map leaves the target graph')
    image = []
    for u, v in graph.edges:
        if not big.has_edge(node_map[u], node_map[v]):
            raise NotASubgraph('Edge ({}, {}) has no image in the target'.format(u, v))
        image.append(big.edge_index(node_map[u], node_map[v]))
    nodes = set(node_map.values())
    mapped = {tuple(sorted((node_map[s], node_map[t]))) for s, t in inst.pairs}
    if mapped != set(target.induced_pairs(nodes)):
        raise TerminalMismatch('Pairs {} differ from the target pairs {} on the embedded nodes'.format(
            sorted(mapped), list(target.induced_pairs(nodes))))

    coeffs = [0] * big.edge_count
    for e, f in enumerate(image):
        coeffs[f] = ineq.coeffs[e]
    lifted = LinearInequality(coeffs, ineq.rhs, ineq.family, ineq.params)

    inside = set(image)
    outside = [f for f in range(big.edge_count) if f not in inside]
    induced = not any(big.edges[f][0] in nodes and big.edges[f][1] in nodes for f in outside)
    no_pair_edges = not any(target.has_pair(*big.edges[f]) for f in outside)
    border = {w for f in outside for w in big.edges[f] if w not in nodes
              and (big.edges[f][0] in nodes or big.edges[f][1] in nodes)}
    no_adjacent_pair = not any((s in nodes and t in border) or (t in nodes and s in border)
                               for s, t in target.pairs)
    hypotheses = {
        'induced': induced,
        'no-pair-on-added-edges': no_pair_edges,
        'no-pair-next-to-subgraph': no_adjacent_pair,
    }
    notes = []
    if not all(hypotheses.values()):
        notes.append('shared-facet lifting hypotheses fail: {}'.format(
            ', '.join(name for name, ok in hypotheses.items() if not ok)))
    edge_map = {e: (f,) for e, f in enumerate(image)}
    surgery = SurgeryMap(edge_map, {w: (node_map[w],) for w in node_map})
    return LiftResult(target, lifted, surgery, hypotheses=hypotheses, notes=notes)


def restrict_to_support(inst: MulticutInstance, ineq: LinearInequality, budget: Optional[int] = None) -> LiftResult:
    """Restrict a facet to the subgraph formed by its support edges.

    Raises:
        NotAFacet: ``ineq`` is not facet-defining on ``inst``.
    """
    from multicutlab.facets import is_facet

    if not is_facet(inst, ineq, budget=budget):
        raise NotAFacet('Only facets can be restricted to their support')
    support = ineq.support()
    sub, surgery = edge_subgraph(inst.graph, support)
    nodes = inst.graph.nodes_of(support)
    pairs = _map_pairs(inst.induced_pairs(nodes), surgery.node_map)
    coeffs = surgery.carry(ineq.coeffs, sub.edge_count)
    restricted = LinearInequality(coeffs, ineq.rhs, ineq.family, ineq.params)
    return LiftResult(MulticutInstance(sub, pairs), restricted, surgery)


def lift_node_split(
    inst: MulticutInstance,
    ineq: LinearInequality,
    v: int,
    side_assignment: Mapping[int, int],
    pair_replacement: Optional[Mapping[Tuple[int, int], Sequence[int]]] = None,
    method: str = 'brute',
    budget: Optional[int] = None,
) -> LiftResult:
    """Split ``v`` and give the new edge ``v v'`` the coefficient ``b - omega``.

    ``omega`` is the minimum multicut value of the split graph without the new
    edge, weighted by the carried coefficients.

    Args:
        pair_replacement: pair ``{v, t}`` -> sides it is replaced by, ``1`` for
            ``{v, t}`` and ``2`` for ``{v', t}``. Unlisted pairs get both.
    """
    graph = inst.graph
    graph.check_node(v)
    if not any(ineq.coeffs[e] for e in graph.incident_edges(v)):
        raise NodeNotInSupport('Node {} is not in the support graph'.format(v))
    new_graph, surgery = split_node(graph, v, side_assignment)
    v2 = graph.node_count
    new_edge = surgery.new_edges[0]

    replacement = {}
    for pair, sides in (pair_replacement or {}).items():
        key = (min(pair), max(pair))
        if v not in key or not inst.has_pair(*key):
            raise BadParams('Pair {} is not a terminal pair at node {}'.format(key, v))
        if not set(sides) <= {1, 2}:
            raise BadParams('Sides of pair {} must be drawn from 1 and 2, got {}'.format(key, list(sides)))
        replacement[key] = tuple(sides)
    pairs = []
    for s, t in inst.pairs:
        if v not in (s, t):
            pairs.append((s, t))
            continue
        other = t if s == v else s
        for side in replacement.get((s, t), (1, 2)):
            pairs.append((v if side == 1 else v2, other))
    new_inst = MulticutInstance(new_graph, pairs)

    carried = surgery.carry(ineq.coeffs, new_graph.edge_count)
    reduced, removal = delete_edge(new_graph, new_edge)
    weights = removal.carry(carried, reduced.edge_count)
    _, omega = min_multicut_weighted(MulticutInstance(reduced, new_inst.pairs), weights, method, budget)
    if omega > ineq.rhs:
        raise NotValid('omega {} exceeds the right-hand side {}; the inequality is not tight'.format(omega, ineq.rhs))

    carried[new_edge] = ineq.rhs - omega
    notes = []
    if omega == ineq.rhs:
        notes.append('new edge {} has coefficient 0'.format(new_edge))
    lifted = LinearInequality(carried, ineq.rhs, 'node-split')
    logger.debug('Split node %d: omega %s, new edge %d', v, omega, new_edge)
    return LiftResult(new_inst, lifted, surgery, omega=omega, notes=notes)


def lift_subdivide(inst: MulticutInstance, ineq: LinearInequality, e: int, length: int = 2) -> LiftResult:
    """Replace ``e`` by a path of ``length`` edges carrying ``a_e`` each."""
    new_graph, surgery = replace_edge_by_path(inst.graph, e, length)
    coeffs = surgery.carry(ineq.coeffs, new_graph.edge_count)
    lifted = LinearInequality(coeffs, ineq.rhs, 'subdivided' if length > 1 else ineq.family)
    return LiftResult(MulticutInstance(new_graph, inst.pairs), lifted, surgery)


def contract_subgraph_to_edge(inst: MulticutInstance, ineq: LinearInequality, h_edges: Iterable[int],
                              s: int, t: int) -> LiftResult:
    """Replace a connected subgraph attached only at ``s`` and ``t`` by the edge ``st``.

    The new edge gets ``omega``, the minimum ``s``-``t`` cut of the subgraph
    weighted by ``a``.

    Raises:
        BadAttachment: the subgraph is disconnected, misses ``s`` or ``t``, or
            touches the rest of the graph elsewhere.
        TerminalInside: a terminal sits strictly inside the subgraph.
    """
    graph = inst.graph
    h_edges = sorted(set(h_edges))
    for e in h_edges:
        graph.check_edge(e)
    nodes = set(graph.nodes_of(h_edges))
    if s == t or s not in nodes or t not in nodes:
        raise BadAttachment('Nodes {} and {} must be distinct nodes of the subgraph'.format(s, t))
    sub, sub_map = edge_subgraph(graph, h_edges)
    if not nx.is_connected(sub.to_networkx()):
        raise BadAttachment('Subgraph is not connected')
    inner = nodes - {s, t}
    members = set(h_edges)
    for f, (a, b) in enumerate(graph.edges):
        if f in members:
            continue
        if a in inner or b in inner:
            raise BadAttachment('Edge {} attaches to the subgraph at an inner node'.format(f))
        if {a, b} == {s, t}:
            raise BadAttachment('Edge {} already joins {} and {}'.format(f, s, t))
    inside = sorted(inner & set(inst.terminals))
    if inside:
        raise TerminalInside('Terminals {} lie inside the subgraph'.format(inside))

    weights = sub_map.carry(ineq.coeffs, sub.edge_count)
    _, omega = min_st_cut(sub, weights, sub_map.node_map[s][0], sub_map.node_map[t][0])

    new_graph, surgery = contract_subgraph(graph, h_edges, s, t)
    coeffs = surgery.carry(ineq.coeffs, new_graph.edge_count)
    coeffs[surgery.new_edges[0]] = omega
    pairs = _map_pairs(inst.pairs, surgery.node_map)
    lifted = LinearInequality(coeffs, ineq.rhs, 'contracted')
    return LiftResult(MulticutInstance(new_graph, pairs), lifted, surgery, omega=omega)


# (node to split, pair replacement) for the T_3 chain
_CLAW_CHAIN = (
    (1, {(1, 2): (2,), (1, 3): (1,)}),
    (2, {(2, 4): (2,), (2, 3): (1,)}),
    (1, {(1, 3): (2,)}),
    (3, {(3, 6): (2,), (2, 3): (1,)}),
    (2, {(2, 3): (2,)}),
    (3, {(3, 8): (2,)}),
)


def splitted_claw_chain(method: str = 'brute') -> List[LiftResult]:
    """Six node splits turning the complete 3-star inequality into the (3, 2)-tree inequality on T_3.

    Each split keeps all old edges at the original node, so the new node is a
    pendant leaf that takes over one terminal pair.
    """
    inst, ineq = gen_complete_star(3)
    steps = []
    for v, replacement in _CLAW_CHAIN:
        sides = {e: 1 for e in inst.graph.incident_edges(v)}
        step = lift_node_split(inst, ineq, v, sides, replacement, method)
        steps.append(step)
        inst, ineq = step.instance, step.inequality
    return steps


def derive_generalized_wagner(n: int, half: int, breakpoints: Sequence[int],
                              method: str = 'brute') -> Tuple[List[LiftResult], MulticutInstance, LinearInequality]:
    """Grow a generalized Wagner inequality on C_{2N} from one on C_{2(N-1)} by two node splits.

    The first split doubles ``v_{N-1}`` and keeps its pair on both copies, the
    second doubles ``v_0`` and hands the new copy of ``v_{N-1}`` to it; a final
    relabelling restores the cycle order. Returns the steps together with the
    relabelled instance and inequality.

    Raises:
        BadBreakpoints: ``l_{n-1} > N - 2``, so no smaller cycle carries the blocks.
    """
    bounds = list(breakpoints)
    if len(bounds) != n or bounds[-1] != half:
        raise BadBreakpoints('Expected {} breakpoints ending in N = {}, got {}'.format(n, half, bounds))
    if n > 1 and bounds[-2] > half - 2:
        raise BadBreakpoints('l_(n-1) = {} must be at most N - 2 = {}'.format(bounds[-2], half - 2))
    small = half - 1
    inst, ineq = gen_generalized_wagner(n, small, bounds[:-1] + [small], 1)
    graph = inst.graph
    last, first, top = small, 0, 2 * small - 1
    # split v_{N-1}: the edge towards v_{N-2} moves to the new node 2N-2
    sides = {e: (2 if e == graph.edge_index(last - 1, last) else 1) for e in graph.incident_edges(last)}
    step_one = lift_node_split(inst, ineq, last, sides, {(0, last): (1, 2)}, method)
    inst, ineq = step_one.instance, step_one.inequality
    graph = inst.graph
    twin = 2 * small
    # split v_0: the edge towards v_{2N-3} moves to the new node 2N-1
    sides = {e: (2 if e == graph.edge_index(first, top) else 1) for e in graph.incident_edges(first)}
    step_two = lift_node_split(inst, ineq, first, sides, {(0, twin): (2,), (0, last): (1,)}, method)
    inst, ineq = step_two.instance, step_two.inequality

    size = 2 * half
    mapping = {}
    for w in range(size):
        if w <= half - 2:
            mapping[w] = w
        elif w == twin:
            mapping[w] = half - 1
        elif half - 1 <= w <= size - 3:
            mapping[w] = w + 1
        else:
            mapping[w] = w
    relabelled, surgery = relabel_nodes(inst.graph, mapping)
    coeffs = surgery.carry(ineq.coeffs, relabelled.edge_count)
    pairs = _map_pairs(inst.pairs, surgery.node_map)
    params = {'n': n, 'N': half, 'breakpoints': tuple(bounds), 'beta': 1}
    final = LinearInequality(coeffs, ineq.rhs, 'generalized-wagner', params)
    return [step_one, step_two], MulticutInstance(relabelled, pairs), final


class TwoComponentReport:
    """Facets of an edge-replaced instance split into explained and unexplained ones.

    A facet is explained when it is an edge inequality or arises from a facet of
    the original instance by putting ``a_e`` on one attachment path of the
    gadget and zero on the other gadget edges.
    """

    def __init__(self, instance: MulticutInstance, explained: List[LinearInequality],
                 unexplained: List[LinearInequality]) -> None:
        self.instance = instance
        self.explained = explained
        self.unexplained = unexplained

    @property
    def consistent(self) -> bool:
        return not self.unexplained


def two_component_report(inst: MulticutInstance, e: int, gadget: Graph, gs: int, gt: int,
                         budget: Optional[int] = None) -> TwoComponentReport:
    from multicutlab.hull import dominant_hrep

    if not nx.is_connected(gadget.to_networkx()):
        raise BadAttachment('Gadget must be connected')
    new_graph, surgery = replace_edge_by_graph(inst.graph, e, gadget, gs, gt)
    big = MulticutInstance(new_graph, inst.pairs)
    copy = surgery.new_edges
    g = gadget.to_networkx()
    paths = []
    for nodes in nx.all_simple_paths(g, gs, gt):
        paths.append([copy[gadget.edge_index(a, b)] for a, b in zip(nodes, nodes[1:])])

    candidates = {ineq.normalize() for ineq in edge_inequalities(big)}
    for facet in dominant_hrep(inst, budget):
        base = [0] * new_graph.edge_count
        for f, images in surgery.edge_map.items():
            if f != e:
                for image in images:
                    base[image] = facet.coeffs[f]
        for path in paths:
            coeffs = list(base)
            for image in path:
                coeffs[image] = facet.coeffs[e]
            candidates.add(LinearInequality(coeffs, facet.rhs).normalize())

    explained, unexplained = [], []
    for facet in dominant_hrep(big, budget):
        (explained if facet in candidates else unexplained).append(facet)
    if unexplained:
        logger.info('%d facets after replacing edge %d are not explained by path replacement', len(unexplained), e)
    return TwoComponentReport(big, explained, unexplained)
