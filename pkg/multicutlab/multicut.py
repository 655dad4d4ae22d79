import logging
from collections import deque
from fractions import Fraction
from typing import Iterable, Iterator, List, Optional, Sequence, Tuple

from sympy import bell

from multicutlab.exceptions import BudgetExceeded, DimensionMismatch, InvalidArgument, SameTerminals
from multicutlab.graph import Graph, MulticutInstance
from multicutlab._helpers import ENUMERATION_BUDGET, EdgeSet, Rational, Vector, mask_of, to_fractions

logger = logging.getLogger(__name__)


def _labels(graph: Graph, removed: int) -> List[int]:
    """Component label per node of G - removed (``removed`` is an edge bitmask)."""
    parent = list(range(graph.node_count))

    def find(a: int) -> int:
        while parent[a] != a:
            parent[a] = parent[parent[a]]
            a = parent[a]
        return a

    for e, (u, v) in enumerate(graph.edges):
        if not removed >> e & 1:
            ru, rv = find(u), find(v)
            if ru != rv:
                parent[ru] = rv
    return [find(a) for a in range(graph.node_count)]


def _separates(inst: MulticutInstance, removed: int) -> bool:
    labels = _labels(inst.graph, removed)
    return all(labels[s] != labels[t] for s, t in inst.pairs)


def _check_edges(inst: MulticutInstance, edges: Iterable[int]) -> int:
    mask = 0
    for e in edges:
        inst.graph.check_edge(e)
        mask |= 1 << e
    return mask


def is_multicut(inst: MulticutInstance, edges: Iterable[int]) -> bool:
    return _separates(inst, _check_edges(inst, edges))


def is_minimal_multicut(inst: MulticutInstance, edges: Iterable[int]) -> bool:
    mask = _check_edges(inst, edges)
    if not _separates(inst, mask):
        return False
    rest = mask
    while rest:
        low = rest & -rest
        rest ^= low
        if _separates(inst, mask ^ low):
            return False
    return True


def predicted_partitions(inst: MulticutInstance) -> int:
    """Upper bound on the number of connected-block partitions the enumerator visits."""
    return min(2 ** inst.edge_count, int(bell(inst.graph.node_count)))


def check_budget(inst: MulticutInstance, budget: Optional[int] = None) -> None:
    budget = ENUMERATION_BUDGET if budget is None else budget
    predicted = predicted_partitions(inst)
    if predicted > budget:
        logger.info('Refusing enumeration: %d predicted partitions, budget %d', predicted, budget)
        raise BudgetExceeded(
            'Enumeration needs up to {} partitions, budget is {}'.format(predicted, budget))


class _PartitionSearch:
    """Partitions of V into connected blocks such that every cross edge
    between two blocks has a terminal pair split between those blocks."""

    def __init__(self, inst: MulticutInstance) -> None:
        graph = inst.graph
        self.n = graph.node_count
        self.full = (1 << self.n) - 1
        self.adj = [0] * self.n
        for u, v in graph.edges:
            self.adj[u] |= 1 << v
            self.adj[v] |= 1 << u
        self.partner = [0] * self.n
        for s, t in inst.pairs:
            self.partner[s] |= 1 << t
            self.partner[t] |= 1 << s
        self.visited = 0

    def _union(self, table: List[int], block: int) -> int:
        acc = 0
        rest = block
        while rest:
            low = rest & -rest
            rest ^= low
            acc |= table[low.bit_length() - 1]
        return acc

    def _connected_sets(self, block: int, frontier: int, banned: int, allowed: int) -> Iterator[int]:
        yield block
        local_banned = banned
        while frontier:
            low = frontier & -frontier
            frontier ^= low
            v = low.bit_length() - 1
            if self.partner[v] & block:
                local_banned |= low
                continue
            grown = block | low
            next_frontier = (frontier | (self.adj[v] & allowed & ~grown)) & ~local_banned
            yield from self._connected_sets(grown, next_frontier, local_banned, allowed)
            local_banned |= low

    def blocks(self) -> Iterator[List[int]]:
        yield from self._extend(0, [])

    def _extend(self, assigned: int, blocks: List[int]) -> Iterator[List[int]]:
        if assigned == self.full:
            self.visited += 1
            yield blocks
            return
        unassigned = self.full & ~assigned
        root = (unassigned & -unassigned).bit_length() - 1
        allowed = unassigned
        start = 1 << root
        for block in self._connected_sets(start, self.adj[root] & allowed, 0, allowed):
            boundary = self._union(self.adj, block) & ~block
            partners = self._union(self.partner, block)
            if not self._witnessed(boundary, partners, blocks):
                continue
            remaining = allowed & ~block
            if boundary & remaining and not partners & remaining:
                continue
            yield from self._extend(assigned | block, blocks + [block])

    @staticmethod
    def _witnessed(boundary: int, partners: int, blocks: List[int]) -> bool:
        for other in blocks:
            if boundary & other and not partners & other:
                return False
        return True


def enumerate_minimal_multicuts(inst: MulticutInstance, budget: Optional[int] = None) -> List[EdgeSet]:
    """All inclusion-minimal multicuts, sorted lexicographically.

    Each minimal multicut is the set of cross edges of a partition of the nodes
    into connected blocks (the components of G - δ) in which every cross edge
    joins two blocks that split some terminal pair.

    Raises:
        BudgetExceeded: the predicted partition count exceeds ``budget``.
    """
    check_budget(inst, budget)
    search = _PartitionSearch(inst)
    graph = inst.graph
    result = []
    for blocks in search.blocks():
        label = [0] * graph.node_count
        for i, block in enumerate(blocks):
            rest = block
            while rest:
                low = rest & -rest
                rest ^= low
                label[low.bit_length() - 1] = i
        result.append(tuple(e for e, (u, v) in enumerate(graph.edges) if label[u] != label[v]))
    result.sort()
    logger.debug('Enumerated %d minimal multicuts from %d partitions', len(result), search.visited)
    return result


def _weights(inst: MulticutInstance, weights: Optional[Sequence[Rational]]) -> Vector:
    if weights is None:
        return inst.weights
    if len(weights) != inst.edge_count:
        raise DimensionMismatch('Expected {} weights, got {}'.format(inst.edge_count, len(weights)))
    w = to_fractions(weights)
    if any(x < 0 for x in w):
        raise InvalidArgument('Edge weights must be nonnegative')
    return w


def cut_value(weights: Sequence[Rational], edges: Iterable[int]) -> Fraction:
    return sum((Fraction(weights[e]) for e in edges), Fraction(0))


def min_multicut_bruteforce(
    inst: MulticutInstance, weights: Optional[Sequence[Rational]] = None, budget: Optional[int] = None,
) -> Tuple[EdgeSet, Fraction]:
    """Minimum weight multicut over all minimal multicuts; ties go to the smallest edge tuple."""
    w = _weights(inst, weights)
    best = min(
        ((cut_value(w, delta), delta) for delta in enumerate_minimal_multicuts(inst, budget)),
        key=lambda item: (item[0], item[1]),
    )
    return best[1], best[0]


def min_st_cut(graph: Graph, weights: Sequence[Rational], s: int, t: int) -> Tuple[EdgeSet, Fraction]:
    """Edmonds-Karp max flow over the rationals; returns the source-side minimum cut."""
    graph.check_node(s)
    graph.check_node(t)
    if s == t:
        raise SameTerminals('Source and sink coincide at node {}'.format(s))
    if len(weights) != graph.edge_count:
        raise DimensionMismatch('Expected {} weights, got {}'.format(graph.edge_count, len(weights)))
    w = to_fractions(weights)
    if any(x < 0 for x in w):
        raise InvalidArgument('Edge weights must be nonnegative')

    # residual capacity of edge e traversed from its smaller endpoint and back
    forward = list(w)
    backward = list(w)

    def residual(e: int, a: int) -> Fraction:
        return forward[e] if graph.edges[e][0] == a else backward[e]

    def push(e: int, a: int, amount: Fraction) -> None:
        if graph.edges[e][0] == a:
            forward[e] -= amount
            backward[e] += amount
        else:
            backward[e] -= amount
            forward[e] += amount

    def bfs() -> dict:
        parent = {s: None}
        queue = deque([s])
        while queue:
            a = queue.popleft()
            for e in graph.incident_edges(a):
                b = graph.other_end(e, a)
                if b not in parent and residual(e, a) > 0:
                    parent[b] = (e, a)
                    queue.append(b)
        return parent

    flow = Fraction(0)
    while True:
        parent = bfs()
        if t not in parent:
            break
        path = []
        b = t
        while parent[b] is not None:
            e, a = parent[b]
            path.append((e, a))
            b = a
        amount = min(residual(e, a) for e, a in path)
        for e, a in path:
            push(e, a, amount)
        flow += amount

    source_side = set(parent)
    cut = tuple(e for e, (u, v) in enumerate(graph.edges) if (u in source_side) != (v in source_side))
    logger.debug('Max flow %s between %d and %d', flow, s, t)
    return cut, flow


def min_multicut_weighted(
    inst: MulticutInstance,
    weights: Optional[Sequence[Rational]] = None,
    method: str = 'brute',
    budget: Optional[int] = None,
) -> Tuple[EdgeSet, Fraction]:
    """Dispatch to max flow for one pair, otherwise to ``method`` ('brute' or 'solver')."""
    w = _weights(inst, weights)
    if not inst.pairs:
        return (), Fraction(0)
    if len(inst.pairs) == 1:
        s, t = inst.pairs[0]
        return min_st_cut(inst.graph, w, s, t)
    if method == 'brute':
        return min_multicut_bruteforce(inst, w, budget)
    if method == 'solver':
        from multicutlab.solver import solve_min_multicut
        solution = solve_min_multicut(inst, w)
        return solution.edges, solution.value
    raise InvalidArgument('Unknown method {!r}'.format(method))


def dominant_vertices(inst: MulticutInstance, budget: Optional[int] = None) -> List[Tuple[int, ...]]:
    """Incidence vectors of the minimal multicuts."""
    m = inst.edge_count
    result = []
    for delta in enumerate_minimal_multicuts(inst, budget):
        mask = mask_of(delta)
        result.append(tuple(mask >> e & 1 for e in range(m)))
    return result
