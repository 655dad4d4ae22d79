import logging
from fractions import Fraction
from itertools import combinations, product
from math import comb
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from multicutlab.exceptions import BadParams, DimensionMismatch, InvalidArgument, KTooLarge, LTooLarge, NotATree
from multicutlab.graph import MulticutInstance, is_tree, shortest_path
from multicutlab.inequality import LinearInequality, gen_path_ineq
from multicutlab._helpers import SEPARATION_MAX_SIZE, Rational, Vector, to_fractions

logger = logging.getLogger(__name__)


class SeparationResult:
    """Violated inequalities with their exact violation ``b - a.x``.

    Ordered by decreasing violation, then by support.
    """

    def __init__(self, violated: Iterable[Tuple[LinearInequality, Fraction]] = ()) -> None:
        unique: Dict[LinearInequality, Tuple[LinearInequality, Fraction]] = {}
        for ineq, amount in violated:
            unique.setdefault(ineq, (ineq, amount))
        self.violated: List[Tuple[LinearInequality, Fraction]] = sorted(
            unique.values(), key=lambda item: (-item[1], item[0].support(), item[0].coeffs))

    def __iter__(self) -> Iterator[Tuple[LinearInequality, Fraction]]:
        return iter(self.violated)

    def __len__(self) -> int:
        return len(self.violated)

    def __bool__(self) -> bool:
        return bool(self.violated)

    def __add__(self, other: 'SeparationResult') -> 'SeparationResult':
        return SeparationResult(self.violated + other.violated)

    @property
    def inequalities(self) -> List[LinearInequality]:
        return [ineq for ineq, _ in self.violated]


def _point(inst: MulticutInstance, x: Sequence[Rational]) -> Vector:
    if len(x) != inst.edge_count:
        raise DimensionMismatch('Point has {} entries, instance has {} edges'.format(len(x), inst.edge_count))
    point = to_fractions(x)
    if any(v < 0 for v in point):
        raise InvalidArgument('Separation points must be nonnegative')
    return point


def separate_paths(inst: MulticutInstance, x: Sequence[Rational]) -> SeparationResult:
    """Path inequalities of x-shortest terminal paths shorter than one."""
    point = _point(inst, x)
    found = []
    for s, t in inst.pairs:
        result = shortest_path(inst.graph, point, s, t)
        if result is None:
            continue
        distance, path = result
        if distance < 1:
            found.append((gen_path_ineq(inst, path, (s, t)), 1 - distance))
    return SeparationResult(found)


def separate_pool(x: Sequence[Rational], pool: Iterable[LinearInequality]) -> SeparationResult:
    point = to_fractions(x)
    found = []
    for ineq in pool:
        amount = ineq.violation(point)
        if amount > 0:
            found.append((ineq, amount))
    return SeparationResult(found)


class _RootedTree:
    """Parent pointers and paths of a tree instance rooted at one node."""

    def __init__(self, inst: MulticutInstance, root: int) -> None:
        graph = inst.graph
        self.root = root
        self.parent: Dict[int, Optional[Tuple[int, int]]] = {root: None}
        self.branch: Dict[int, int] = {}
        order = [root]
        for a in order:
            for e in graph.incident_edges(a):
                b = graph.other_end(e, a)
                if b not in self.parent:
                    self.parent[b] = (e, a)
                    self.branch[b] = e if a == root else self.branch[a]
                    order.append(b)

    def path_up(self, v: int, top: int) -> Optional[Tuple[int, ...]]:
        """Edges from ``v`` up to its ancestor ``top``; None if ``top`` is not an ancestor."""
        edges = []
        while v != top:
            step = self.parent[v]
            if step is None:
                return None
            e, v = step
            edges.append(e)
        return tuple(edges)


def _check_tree(inst: MulticutInstance) -> None:
    if not is_tree(inst.graph):
        raise NotATree('Tree separation requires the instance graph to be a tree')


def _star_embeddings(inst: MulticutInstance, k: int) -> Iterator[Tuple[Tuple[int, ...], str, int]]:
    """Subdivided complete or circular k-stars: (edges, family, rhs)."""
    graph = inst.graph
    for root in range(graph.node_count):
        if graph.degree(root) < k:
            continue
        tree = _RootedTree(inst, root)
        others = [v for v in range(graph.node_count) if v != root]
        for leaves in combinations(others, k):
            if len({tree.branch[v] for v in leaves}) != k:
                continue
            edges = set()
            for v in leaves:
                edges.update(tree.path_up(v, root))
            nodes = set(graph.nodes_of(edges))
            induced = inst.induced_pairs(nodes)
            leaf_set = set(leaves)
            if any(s not in leaf_set or t not in leaf_set for s, t in induced):
                continue
            if len(induced) == comb(k, 2):
                yield tuple(sorted(edges)), 'complete-star', k - 1
            elif k >= 5 and k % 2 == 1 and _is_hamiltonian_cycle(leaves, induced):
                yield tuple(sorted(edges)), 'circular-star', (k + 1) // 2


def _is_hamiltonian_cycle(nodes: Sequence[int], pairs: Sequence[Tuple[int, int]]) -> bool:
    if len(pairs) != len(nodes):
        return False
    adjacent: Dict[int, List[int]] = {v: [] for v in nodes}
    for s, t in pairs:
        adjacent[s].append(t)
        adjacent[t].append(s)
    if any(len(lst) != 2 for lst in adjacent.values()):
        return False
    start = nodes[0]
    previous, current, steps = None, start, 0
    while True:
        a, b = adjacent[current]
        previous, current = current, (b if a == previous else a)
        steps += 1
        if current == start:
            return steps == len(nodes)


def separate_stars_on_tree(inst: MulticutInstance, x: Sequence[Rational], k: int = 3,
                           max_size: Optional[int] = None) -> SeparationResult:
    """Subdivided complete and circular k-star inequalities violated by ``x``.

    A root and k nodes whose root paths are internally disjoint span a
    subdivided star; it is kept when the terminal pairs among its nodes are
    exactly all leaf pairs (complete) or a Hamiltonian cycle on the leaves
    (circular, odd k).
    """
    max_size = SEPARATION_MAX_SIZE if max_size is None else max_size
    if k > max_size:
        raise KTooLarge('k = {} exceeds the separation cap {}'.format(k, max_size))
    if k < 3:
        raise BadParams('Star separation needs k >= 3, got {}'.format(k))
    _check_tree(inst)
    point = _point(inst, x)
    found = []
    m = inst.edge_count
    for edges, family, rhs in _star_embeddings(inst, k):
        total = sum((point[e] for e in edges), Fraction(0))
        if total < rhs:
            coeffs = [0] * m
            for e in edges:
                coeffs[e] = 1
            ineq = LinearInequality(coeffs, rhs, 'subdivided-' + family, {'k': k, 'edges': edges})
            found.append((ineq, rhs - total))
    logger.debug('Star separation (k=%d) found %d violated inequalities', k, len(found))
    return SeparationResult(found)


def _tree_embeddings(inst: MulticutInstance, size: int) -> Iterator[Tuple[Tuple[int, ...], Tuple[int, ...]]]:
    """Subdivided T_l embeddings: (root-level edges, leaf-level edges)."""
    graph = inst.graph
    for root in range(graph.node_count):
        if graph.degree(root) < size:
            continue
        tree = _RootedTree(inst, root)
        others = [v for v in range(graph.node_count) if v != root and graph.degree(v) >= size]
        for branches in combinations(others, size):
            if len({tree.branch[v] for v in branches}) != size:
                continue
            upper = {v: tree.path_up(v, root) for v in branches}
            below = {}
            for v in branches:
                sub = _RootedTree(inst, v)
                below[v] = sub
            options = []
            for i, j in combinations(range(size), 2):
                vi, vj = branches[i], branches[j]
                candidates = []
                for s, t in inst.pairs:
                    for a, b in ((s, t), (t, s)):
                        pa = tree.path_up(a, vi) if a != vi else None
                        pb = tree.path_up(b, vj) if b != vj else None
                        if pa and pb:
                            candidates.append((a, b))
                if not candidates:
                    break
                options.append(candidates)
            else:
                yield from _tree_choices(inst, tree, below, branches, upper, options)


def _tree_choices(inst, tree, below, branches, upper, options):
    graph = inst.graph
    size = len(branches)
    index_pairs = list(combinations(range(size), 2))
    for choice in product(*options):
        legs: Dict[int, List[Tuple[int, ...]]] = {v: [] for v in branches}
        first_edges: Dict[int, List[int]] = {v: [] for v in branches}
        for (i, j), (a, b) in zip(index_pairs, choice):
            for v, leaf in ((branches[i], a), (branches[j], b)):
                leg = tree.path_up(leaf, v)
                legs[v].append(leg)
                first_edges[v].append(below[v].branch[leaf])
        if any(len(set(first_edges[v])) != size - 1 for v in branches):
            continue
        level_one = set()
        for v in branches:
            level_one.update(upper[v])
        level_two = set()
        for v in branches:
            for leg in legs[v]:
                level_two.update(leg)
        nodes = graph.nodes_of(level_one | level_two)
        chosen = {(min(a, b), max(a, b)) for a, b in choice}
        if set(inst.induced_pairs(nodes)) != chosen:
            continue
        yield tuple(sorted(level_one)), tuple(sorted(level_two))


def separate_trees_on_tree(inst: MulticutInstance, x: Sequence[Rational], size: int = 3,
                           max_size: Optional[int] = None) -> SeparationResult:
    """Subdivided (l, k)-tree inequalities, 2 <= k < l, violated by ``x``.

    Branch nodes hang off the root along internally disjoint paths; every two
    branches i, j carry a terminal pair reached from i and j through distinct
    child subtrees, and no other terminal pair lies inside the embedding.
    """
    max_size = SEPARATION_MAX_SIZE if max_size is None else max_size
    if size > max_size:
        raise LTooLarge('l = {} exceeds the separation cap {}'.format(size, max_size))
    if size < 3:
        raise BadParams('Tree separation needs l >= 3, got {}'.format(size))
    _check_tree(inst)
    point = _point(inst, x)
    m = inst.edge_count
    found = []
    for level_one, level_two in _tree_embeddings(inst, size):
        upper = sum((point[e] for e in level_one), Fraction(0))
        lower = sum((point[e] for e in level_two), Fraction(0))
        for k in range(2, size):
            rhs = k * (size - k) + comb(size - k, 2)
            total = (size - k) * upper + lower
            if total < rhs:
                coeffs = [0] * m
                for e in level_one:
                    coeffs[e] = size - k
                for e in level_two:
                    coeffs[e] = 1
                ineq = LinearInequality(coeffs, rhs, 'subdivided-tree', {'l': size, 'k': k})
                found.append((ineq, rhs - total))
    logger.debug('Tree separation (l=%d) found %d violated inequalities', size, len(found))
    return SeparationResult(found)
