import logging
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import Any, Dict, Iterable, List, Optional, Sequence, Tuple

import networkx as nx

from multicutlab.exceptions import (
    BadBreakpoints, BadParams, DimensionMismatch, EvenN, NotAPath, PairMissing, TooSmall,
)
from multicutlab.graph import (
    Graph, MulticutInstance, build_graph, cycle_edge, cycle_graph, star_graph,
)
from multicutlab._helpers import (
    EdgeSet, Rational, divide_by_gcd, scale_to_integers, to_fraction,
)

logger = logging.getLogger(__name__)


class LinearInequality:
    """``a^T x >= b`` with integer ``a`` and ``b``.

    Rational input is scaled to integers on construction. Equality and hashing
    compare the gcd-normalized form, so proportional inequalities are equal;
    ``family`` and ``params`` only record provenance.
    """

    def __init__(
        self,
        coeffs: Sequence[Rational],
        rhs: Rational,
        family: str = 'custom',
        params: Optional[Dict[str, Any]] = None,
    ) -> None:
        scaled = scale_to_integers(list(coeffs) + [rhs])
        self.coeffs: Tuple[int, ...] = tuple(scaled[:-1])
        self.rhs: int = scaled[-1]
        self.family = family
        self.params: Dict[str, Any] = dict(params or {})

    def _key(self) -> Tuple[Tuple[int, ...], int]:
        normal = self.normalize()
        return normal.coeffs, normal.rhs

    def __eq__(self, other) -> bool:
        if not isinstance(other, LinearInequality):
            return False
        return self._key() == other._key()

    def __hash__(self) -> int:
        return hash(self._key())

    def __repr__(self) -> str:
        return 'LinearInequality({}, {}, family={!r})'.format(list(self.coeffs), self.rhs, self.family)

    def __len__(self) -> int:
        return len(self.coeffs)

    @property
    def dimension(self) -> int:
        return len(self.coeffs)

    def normalize(self) -> 'LinearInequality':
        """Divide coefficients and right-hand side by their common gcd."""
        values = divide_by_gcd(list(self.coeffs) + [self.rhs])
        normal = LinearInequality.__new__(LinearInequality)
        normal.coeffs = tuple(values[:-1])
        normal.rhs = values[-1]
        normal.family = self.family
        normal.params = dict(self.params)
        return normal

    def sort_key(self) -> Tuple:
        normal = self.normalize()
        return len(normal.support()), normal.coeffs, normal.rhs

    def evaluate(self, x: Sequence[Rational]) -> Fraction:
        if len(x) != len(self.coeffs):
            raise DimensionMismatch('Inequality has {} coefficients, point has {} entries'.format(
                len(self.coeffs), len(x)))
        return sum((a * to_fraction(v) for a, v in zip(self.coeffs, x) if a), Fraction(0))

    def violation(self, x: Sequence[Rational]) -> Fraction:
        """``b - a.x``; positive when ``x`` violates the inequality."""
        return self.rhs - self.evaluate(x)

    def is_satisfied(self, x: Sequence[Rational]) -> bool:
        return self.evaluate(x) >= self.rhs

    def support(self) -> EdgeSet:
        return tuple(e for e, a in enumerate(self.coeffs) if a != 0)

    def zero_edges(self) -> EdgeSet:
        return tuple(e for e, a in enumerate(self.coeffs) if a == 0)

    def is_edge_bound(self) -> bool:
        """True for ``x_e >= 0`` up to scaling."""
        support = self.support()
        return len(support) == 1 and self.rhs == 0 and self.coeffs[support[0]] > 0

    def with_family(self, family: str, **params) -> 'LinearInequality':
        return LinearInequality(self.coeffs, self.rhs, family, params)

    def format(self) -> str:
        return 'ineq {} <= {}'.format(self.rhs, ' '.join(str(a) for a in self.coeffs))


def evaluate(ineq: LinearInequality, x: Sequence[Rational]) -> Fraction:
    return ineq.evaluate(x)


def support(ineq: LinearInequality) -> EdgeSet:
    return ineq.support()


def _unit(m: int, edges: Iterable[int], value: int = 1) -> List[int]:
    coeffs = [0] * m
    for e in edges:
        coeffs[e] = value
    return coeffs


def gen_edge_ineq(inst: MulticutInstance, e: int) -> LinearInequality:
    u, v = inst.graph.check_edge(e)
    rhs = 1 if inst.has_pair(u, v) else 0
    return LinearInequality(_unit(inst.edge_count, [e]), rhs, 'edge', {'edge': e})


def walk_path(graph: Graph, path: Sequence[int], s: int, t: int) -> Tuple[int, ...]:
    """Order ``path`` from ``s`` to ``t``; raises NotAPath unless it is a simple s-t path."""
    remaining = set(path)
    if len(remaining) != len(path) or not path:
        raise NotAPath('Path must be a nonempty list of distinct edges')
    for e in remaining:
        graph.check_edge(e)
    ordered = []
    visited = {s}
    current = s
    while remaining:
        step = [e for e in remaining if current in graph.edges[e]]
        if len(step) != 1:
            raise NotAPath('Edges {} do not form a simple {}-{} path'.format(sorted(path), s, t))
        e = step[0]
        remaining.discard(e)
        current = graph.other_end(e, current)
        if current in visited:
            raise NotAPath('Edges {} revisit node {}'.format(sorted(path), current))
        visited.add(current)
        ordered.append(e)
    if current != t:
        raise NotAPath('Edges {} do not end at node {}'.format(sorted(path), t))
    return tuple(ordered)


def gen_path_ineq(inst: MulticutInstance, path: Sequence[int], pair: Sequence[int]) -> LinearInequality:
    s, t = pair
    if not inst.has_pair(s, t):
        raise PairMissing('{{{}, {}}} is not a terminal pair'.format(s, t))
    walk_path(inst.graph, path, s, t)
    return LinearInequality(
        _unit(inst.edge_count, path), 1, 'path', {'pair': (min(s, t), max(s, t)), 'path': tuple(sorted(path))})


def path_inequalities(inst: MulticutInstance) -> List[LinearInequality]:
    """One inequality per simple s-t path of every terminal pair."""
    g = inst.graph.to_networkx()
    found = {}
    for s, t in inst.pairs:
        for nodes in nx.all_simple_paths(g, s, t):
            edges = [inst.graph.edge_index(a, b) for a, b in zip(nodes, nodes[1:])]
            ineq = gen_path_ineq(inst, edges, (s, t))
            found.setdefault(ineq, ineq)
    return sorted(found, key=LinearInequality.sort_key)


def edge_inequalities(inst: MulticutInstance) -> List[LinearInequality]:
    return [gen_edge_ineq(inst, e) for e in range(inst.edge_count)]


def edge_and_path_system(inst: MulticutInstance) -> List[LinearInequality]:
    """Edge and path inequalities, deduplicated."""
    seen = {}
    for ineq in edge_inequalities(inst) + path_inequalities(inst):
        seen.setdefault(ineq, ineq)
    return list(seen)


def star_instance(n: int, pairs: Iterable[Tuple[int, int]]) -> MulticutInstance:
    return MulticutInstance(star_graph(n), pairs)


def circular_star_instance(n: int) -> MulticutInstance:
    """K_{1,n} whose terminal pairs join consecutive leaves cyclically."""
    if n < 3:
        raise TooSmall('Circular star needs n >= 3, got {}'.format(n))
    return star_instance(n, [(i, i % n + 1) for i in range(1, n + 1)])


def gen_circular_star(n: int) -> Tuple[MulticutInstance, LinearInequality]:
    if n < 3:
        raise TooSmall('Circular star needs n >= 3, got {}'.format(n))
    if n % 2 == 0:
        raise EvenN('Circular star inequality is generated for odd n only, got {}'.format(n))
    inst = circular_star_instance(n)
    return inst, LinearInequality([1] * n, (n + 1) // 2, 'circular-star', {'n': n})


def even_circular_star(n: int) -> Tuple[MulticutInstance, LinearInequality]:
    """The sum of all spokes >= n/2 on an even circular star; valid but dominated by path rows."""
    if n < 4 or n % 2:
        raise BadParams('Even circular star needs even n >= 4, got {}'.format(n))
    inst = circular_star_instance(n)
    return inst, LinearInequality([1] * n, n // 2, 'circular-star', {'n': n})


def gen_complete_star(n: int) -> Tuple[MulticutInstance, LinearInequality]:
    if n < 2:
        raise TooSmall('Complete star needs n >= 2, got {}'.format(n))
    inst = star_instance(n, combinations(range(1, n + 1), 2))
    return inst, LinearInequality([1] * n, n - 1, 'complete-star', {'n': n})


def tree_instance(n: int) -> MulticutInstance:
    """T_n: root 0, children 1..n, and for the p-th pair (i, j) of children in
    lexicographic order a leaf n+1+2p under i paired with a leaf n+2+2p under j.

    Edge indices list the root edges first, then the leaf edges grouped by
    their child node.
    """
    if n < 2:
        raise TooSmall('T_n needs n >= 2, got {}'.format(n))
    edges = [(0, i) for i in range(1, n + 1)]
    pairs = []
    for p, (i, j) in enumerate(combinations(range(1, n + 1), 2)):
        s, t = n + 1 + 2 * p, n + 2 + 2 * p
        edges += [(i, s), (j, t)]
        pairs.append((s, t))
    return MulticutInstance(build_graph(n + 1 + 2 * comb(n, 2), edges), pairs)


def tree_level_one(inst: MulticutInstance) -> EdgeSet:
    """Edges at the root of a T_n instance."""
    return tuple(e for e, (u, _) in enumerate(inst.graph.edges) if u == 0)


def gen_tree_ineq(n: int, k: int) -> Tuple[MulticutInstance, LinearInequality]:
    if not n > k >= 2:
        raise BadParams('(n, k)-tree inequality needs n > k >= 2, got ({}, {})'.format(n, k))
    inst = tree_instance(n)
    level_one = set(tree_level_one(inst))
    coeffs = [n - k if e in level_one else 1 for e in range(inst.edge_count)]
    rhs = k * (n - k) + comb(n - k, 2)
    return inst, LinearInequality(coeffs, rhs, 'tree', {'n': n, 'k': k})


def cycle_instance(n: int, pairs: Iterable[Tuple[int, int]]) -> MulticutInstance:
    return MulticutInstance(cycle_graph(n), pairs)


def gen_odd_cycle(n: int) -> Tuple[MulticutInstance, LinearInequality]:
    if n < 5 or n % 2 == 0:
        raise BadParams('Odd cycle inequality needs odd n >= 5, got {}'.format(n))
    inst = nonadjacent_cycle_instance(n)
    return inst, LinearInequality([1] * n, (n + 1) // 2, 'odd-cycle', {'n': n})


def nonadjacent_cycle_instance(n: int) -> MulticutInstance:
    """C_n with every pair of non-adjacent nodes as a terminal pair."""
    pairs = [(i, j) for i, j in combinations(range(n), 2) if (j - i) % n not in (1, n - 1)]
    return cycle_instance(n, pairs)


def antipodal_cycle_instance(half: int) -> MulticutInstance:
    """C_{2N} with pairs {v_i, v_{i+N}}."""
    return cycle_instance(2 * half, [(i, i + half) for i in range(half)])


def _check_wagner_params(n: int, beta: int) -> None:
    if n < 5 or n % 2 == 0:
        raise BadParams('Wagner inequality needs odd n >= 5, got {}'.format(n))
    if beta not in (1, 2):
        raise BadParams('beta must be 1 or 2, got {}'.format(beta))


def gen_wagner(n: int, beta: int = 1) -> Tuple[MulticutInstance, LinearInequality]:
    """Coefficient ``beta`` on even cycle edges and ``3 - beta`` on odd ones, rhs 3."""
    _check_wagner_params(n, beta)
    inst = antipodal_cycle_instance(n)
    coeffs = [0] * (2 * n)
    for i in range(2 * n):
        coeffs[cycle_edge(inst.graph, i)] = beta if i % 2 == 0 else 3 - beta
    return inst, LinearInequality(coeffs, 3, 'wagner', {'n': n, 'beta': beta})


def gen_generalized_wagner(
    n: int, half: int, breakpoints: Sequence[int], beta: int = 1,
) -> Tuple[MulticutInstance, LinearInequality]:
    """Block-alternating inequality on C_{2N}, ``N = half``.

    Cycle positions ``[l_b, l_{b+1})`` (with ``l_0 = 0``) form block ``b``;
    in an even block position ``i`` gets ``beta`` and its antipode ``i + N``
    gets ``3 - beta``, odd blocks swap the two.
    """
    _check_wagner_params(n, beta)
    if half < n:
        raise BadParams('N must be at least n, got N={} < n={}'.format(half, n))
    bounds = list(breakpoints)
    if len(bounds) != n:
        raise BadBreakpoints('Expected {} breakpoints, got {}'.format(n, len(bounds)))
    if bounds[0] <= 0 or any(a >= b for a, b in zip(bounds, bounds[1:])) or bounds[-1] != half:
        raise BadBreakpoints('Breakpoints must satisfy 0 < l_1 < ... < l_n = N, got {}'.format(bounds))
    inst = antipodal_cycle_instance(half)
    coeffs = [0] * (2 * half)
    start = 0
    for block, end in enumerate(bounds):
        here, there = (beta, 3 - beta) if block % 2 == 0 else (3 - beta, beta)
        for i in range(start, end):
            coeffs[cycle_edge(inst.graph, i)] = here
            coeffs[cycle_edge(inst.graph, i + half)] = there
        start = end
    params = {'n': n, 'N': half, 'breakpoints': tuple(bounds), 'beta': beta}
    return inst, LinearInequality(coeffs, 3, 'generalized-wagner', params)


def antipodal_half(inst: MulticutInstance) -> Optional[int]:
    """N when ``inst`` is exactly C_{2N} with antipodal pairs, else None."""
    graph = inst.graph
    size = graph.node_count
    if size < 4 or size % 2 or graph.edge_count != size:
        return None
    if graph != cycle_graph(size):
        return None
    half = size // 2
    if inst.pairs != tuple(sorted((i, i + half) for i in range(half))):
        return None
    return half


def wagner_pool(inst: MulticutInstance) -> List[LinearInequality]:
    """Both Wagner inequalities when ``inst`` is an antipodal C_{2n} with n odd >= 5."""
    half = antipodal_half(inst)
    if half is None or half < 5 or half % 2 == 0:
        return []
    return [gen_wagner(half, beta)[1] for beta in (1, 2)]


def _is_path_inequality(inst: MulticutInstance, ineq: LinearInequality) -> bool:
    support = ineq.support()
    if ineq.rhs != 1 or any(ineq.coeffs[e] != 1 for e in support):
        return False
    for s, t in inst.pairs:
        try:
            walk_path(inst.graph, support, s, t)
        except NotAPath:
            continue
        return True
    return False


def classify_facet(inst: MulticutInstance, ineq: LinearInequality) -> Optional[str]:
    """Name the known family ``ineq`` belongs to on ``inst``, or None."""
    ineq = ineq.normalize()
    support = ineq.support()
    if len(support) == 1 and ineq.coeffs[support[0]] == 1:
        u, v = inst.graph.edges[support[0]]
        if ineq.rhs == (1 if inst.has_pair(u, v) else 0):
            return 'edge'
    if _is_path_inequality(inst, ineq):
        return 'path'
    half = antipodal_half(inst)
    if half is not None and ineq.rhs == 3:
        sequence = [ineq.coeffs[cycle_edge(inst.graph, i)] for i in range(2 * half)]
        if set(sequence) <= {1, 2} and all(sequence[i] + sequence[i + half] == 3 for i in range(half)):
            runs = sum(1 for i in range(2 * half) if sequence[i] != sequence[i - 1])
            # antipodal complements make the cyclic block count odd
            blocks = runs // 2
            if blocks >= 5:
                return 'wagner' if blocks == half else 'generalized-wagner'
    return None
