"""Brute-force reference implementations.

Everything here enumerates subsets or generator combinations directly and is
only meant for cross-checking the real pipelines on small inputs.
"""
import logging
from fractions import Fraction
from itertools import combinations
from math import comb
from typing import List, Optional, Sequence, Set, Tuple

import networkx as nx
from sympy import Matrix, Rational as SympyRational

from multicutlab.exceptions import BudgetExceeded
from multicutlab.graph import MulticutInstance
from multicutlab.inequality import LinearInequality
from multicutlab.multicut import is_multicut
from multicutlab._helpers import (
    ENUMERATION_BUDGET, EdgeSet, Rational, from_sympy, incidence_vector, indices_of, matrix_rank,
    to_fraction, to_fractions,
)

logger = logging.getLogger(__name__)


def _subsets(m: int, budget: Optional[int]):
    budget = ENUMERATION_BUDGET if budget is None else budget
    if 2 ** m > budget:
        raise BudgetExceeded('{} subsets exceed the budget {}'.format(2 ** m, budget))
    for mask in range(2 ** m):
        yield indices_of(mask)


def all_multicuts(inst: MulticutInstance, budget: Optional[int] = None) -> List[EdgeSet]:
    return sorted(delta for delta in _subsets(inst.edge_count, budget) if is_multicut(inst, delta))


def minimal_multicuts_by_subsets(inst: MulticutInstance, budget: Optional[int] = None) -> List[EdgeSet]:
    """Filter all 2^m edge subsets down to the inclusion-minimal multicuts."""
    cuts = set(all_multicuts(inst, budget))
    return sorted(delta for delta in cuts
                  if not any(tuple(f for f in delta if f != e) in cuts for e in delta))


def naive_facets(points: Sequence[Sequence[Rational]], rays: Sequence[Sequence[Rational]] = ()) -> Set[LinearInequality]:
    """Hyperplanes through affinely independent generators, kept when valid."""
    generators = [(1,) + tuple(to_fractions(p)) for p in points]
    generators += [(0,) + tuple(to_fractions(r)) for r in rays if any(r)]
    size = len(generators[0])
    found = set()
    for chosen in combinations(generators, size - 1):
        if matrix_rank(chosen) != size - 1:
            continue
        matrix = Matrix([[SympyRational(a.numerator, a.denominator) for a in g] for g in chosen])
        normal = [from_sympy(v) for v in matrix.nullspace()[0]]
        values = [sum(a * b for a, b in zip(normal, g)) for g in generators]
        if all(v <= 0 for v in values):
            normal = [-a for a in normal]
        elif not all(v >= 0 for v in values):
            continue
        if any(normal[1:]):
            found.add(LinearInequality(normal[1:], -normal[0], 'hull').normalize())
    return found


def naive_face_dimension(inst: MulticutInstance, ineq: LinearInequality, budget: Optional[int] = None) -> int:
    """Rank of every tight multicut (minimal or not) and each tight point pushed along a zero-coefficient ray."""
    m = inst.edge_count
    tight = [delta for delta in all_multicuts(inst, budget) if sum(ineq.coeffs[e] for e in delta) == ineq.rhs]
    if not tight:
        return -1
    points = [incidence_vector(delta, m) for delta in tight]
    for point in list(points):
        for e in ineq.zero_edges():
            pushed = list(point)
            pushed[e] += 1
            points.append(tuple(pushed))
    base = points[0]
    return matrix_rank([[a - b for a, b in zip(p, base)] for p in points[1:]]) if len(points) > 1 else 0


def _embedding(inst: MulticutInstance, edges: Sequence[int]) -> nx.Graph:
    h = nx.Graph()
    for e in edges:
        u, v = inst.graph.edges[e]
        h.add_edge(u, v, index=e)
    return h


def naive_star_separation(inst: MulticutInstance, x: Sequence[Rational], k: int,
                          budget: Optional[int] = None) -> Set[LinearInequality]:
    """Violated subdivided complete/circular k-star inequalities over all edge subsets."""
    point = to_fractions(x)
    m = inst.edge_count
    found = set()
    for edges in _subsets(m, budget):
        if len(edges) < k:
            continue
        h = _embedding(inst, edges)
        if not nx.is_tree(h):
            continue
        degrees = dict(h.degree())
        centers = [v for v, d in degrees.items() if d > 2]
        leaves = sorted(v for v, d in degrees.items() if d == 1)
        if len(centers) != 1 or degrees[centers[0]] != k or len(leaves) != k:
            continue
        induced = inst.induced_pairs(h.nodes)
        if any(s not in leaves or t not in leaves for s, t in induced):
            continue
        if len(induced) == comb(k, 2):
            rhs = k - 1
        elif k >= 5 and k % 2 == 1 and len(induced) == k and nx.is_connected(nx.Graph(induced)) \
                and all(d == 2 for _, d in nx.Graph(induced).degree()):
            rhs = (k + 1) // 2
        else:
            continue
        total = sum((point[e] for e in edges), Fraction(0))
        if total < rhs:
            found.add(LinearInequality(incidence_vector(edges, m), rhs).normalize())
    return found


def naive_tree_separation(inst: MulticutInstance, x: Sequence[Rational], size: int,
                          budget: Optional[int] = None) -> Set[LinearInequality]:
    """Violated subdivided (l, k)-tree inequalities over all edge subsets."""
    point = to_fractions(x)
    m = inst.edge_count
    found = set()
    for edges in _subsets(m, budget):
        if len(edges) < size * size:
            continue
        h = _embedding(inst, edges)
        if not nx.is_tree(h):
            continue
        degrees = dict(h.degree())
        high = [v for v, d in degrees.items() if d > 2]
        leaves = {v for v, d in degrees.items() if d == 1}
        if len(high) != size + 1 or any(degrees[v] != size for v in high) or len(leaves) != size * (size - 1):
            continue
        split = _split_levels(h, high, leaves, size)
        if split is None:
            continue
        level_one, level_two, owner = split
        induced = inst.induced_pairs(h.nodes)
        if len(induced) != comb(size, 2) or {w for p in induced for w in p} != leaves:
            continue
        branch_pairs = {frozenset((owner[s], owner[t])) for s, t in induced}
        if len(branch_pairs) != comb(size, 2) or any(len(p) != 2 for p in branch_pairs):
            continue
        upper = sum((point[e] for e in level_one), Fraction(0))
        lower = sum((point[e] for e in level_two), Fraction(0))
        for k in range(2, size):
            rhs = k * (size - k) + comb(size - k, 2)
            if (size - k) * upper + lower < rhs:
                coeffs = [0] * m
                for e in level_one:
                    coeffs[e] = size - k
                for e in level_two:
                    coeffs[e] = 1
                found.add(LinearInequality(coeffs, rhs).normalize())
    return found


def _split_levels(h: nx.Graph, high, leaves, size):
    """Root-level edges, leaf-level edges and leaf -> branch node, or None."""
    high_set = set(high)
    root, root_paths = None, None
    for r in high:
        paths = {v: nx.shortest_path(h, r, v) for v in high if v != r}
        direct = all(not high_set.intersection(p[1:-1]) for p in paths.values())
        if direct and len({p[1] for p in paths.values()}) == size:
            if root is not None:
                return None
            root, root_paths = r, paths
    if root is None:
        return None
    branches = [v for v in high if v != root]
    level_one = set()
    for nodes in root_paths.values():
        level_one.update(h.edges[a, b]['index'] for a, b in zip(nodes, nodes[1:]))
    level_two = {h.edges[a, b]['index'] for a, b in h.edges} - level_one
    owner = {}
    for leaf in leaves:
        nodes = nx.shortest_path(h, leaf, root)
        hits = [w for w in nodes if w in branches]
        if len(hits) != 1:
            return None
        owner[leaf] = hits[0]
    for v in branches:
        if sum(1 for leaf in leaves if owner[leaf] == v) != size - 1:
            return None
    return level_one, level_two, owner


def min_multicut_by_subsets(inst: MulticutInstance, weights: Sequence[Rational],
                            budget: Optional[int] = None) -> Fraction:
    w = [to_fraction(a) for a in weights]
    return min(sum((w[e] for e in delta), Fraction(0)) for delta in all_multicuts(inst, budget))
