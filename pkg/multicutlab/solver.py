import logging
from fractions import Fraction
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence, Set, Tuple

from multicutlab.exceptions import BadParams, BudgetExceeded, Infeasible
from multicutlab.graph import MulticutInstance, is_tree
from multicutlab.inequality import LinearInequality, gen_edge_ineq, wagner_pool
from multicutlab.lp import LPProblem, lp_solve
from multicutlab.multicut import cut_value, is_multicut
from multicutlab.separation import separate_paths, separate_pool, separate_stars_on_tree, separate_trees_on_tree
from multicutlab._helpers import SEPARATION_MAX_SIZE, EdgeSet, Rational, Vector

logger = logging.getLogger(__name__)

FAMILIES = ('edge', 'path', 'star', 'tree', 'wagner', 'pool')


class SolverConfig:
    """Cut families and limits for :func:`solve_min_multicut`.

    Path separation always runs while solving, since integral points are only
    certified multicuts once no path inequality is violated. ``star`` and
    ``tree`` separation only apply when the instance graph is a tree.
    """

    def __init__(
        self,
        families: Iterable[str] = ('path', 'star', 'tree'),
        star_sizes: Sequence[int] = (3,),
        tree_sizes: Sequence[int] = (3,),
        pool: Iterable[LinearInequality] = (),
        max_nodes: Optional[int] = None,
    ) -> None:
        self.families = tuple(families)
        unknown = sorted(set(self.families) - set(FAMILIES))
        if unknown:
            raise BadParams('Unknown cut families {}; choose from {}'.format(unknown, ', '.join(FAMILIES)))
        self.star_sizes = tuple(star_sizes)
        self.tree_sizes = tuple(tree_sizes)
        for size in self.star_sizes + self.tree_sizes:
            if not 3 <= size <= SEPARATION_MAX_SIZE:
                raise BadParams('Separation sizes must lie in 3..{}, got {}'.format(SEPARATION_MAX_SIZE, size))
        self.pool = tuple(pool)
        self.max_nodes = max_nodes


class SolveStats:
    def __init__(self) -> None:
        self.pivots = 0
        self.lp_solves = 0
        self.nodes = 0
        self.cuts: Dict[str, int] = {}
        self.root_bound: Optional[Fraction] = None
        self.final_bound: Optional[Fraction] = None

    def count_cut(self, family: str) -> None:
        self.cuts[family] = self.cuts.get(family, 0) + 1

    def as_dict(self) -> Dict[str, object]:
        return {
            'pivots': self.pivots,
            'lp_solves': self.lp_solves,
            'nodes': self.nodes,
            'cuts': dict(sorted(self.cuts.items())),
            'root_bound': self.root_bound,
            'final_bound': self.final_bound,
        }


class Solution(NamedTuple):
    edges: EdgeSet
    value: Fraction
    stats: SolveStats


class _CuttingPlanes:
    """A global pool of valid rows and the separation loop over it."""

    def __init__(self, inst: MulticutInstance, weights: Vector, families: Sequence[str],
                 star_sizes: Sequence[int] = (), tree_sizes: Sequence[int] = (),
                 pool: Iterable[LinearInequality] = (), stats: Optional[SolveStats] = None) -> None:
        self.inst = inst
        self.weights = weights
        self.families = set(families)
        self.star_sizes = star_sizes
        self.tree_sizes = tree_sizes
        self.stats = stats or SolveStats()
        self.rows: List[LinearInequality] = []
        self._seen: Set[LinearInequality] = set()
        self.on_tree = is_tree(inst.graph)
        if 'edge' in self.families:
            for e in range(inst.edge_count):
                row = gen_edge_ineq(inst, e)
                if row.rhs > 0:
                    self.add(row, 'edge')
        if 'wagner' in self.families:
            for row in wagner_pool(inst):
                self.add(row, 'wagner')
        self.pool = list(pool) if 'pool' in self.families else []

    def add(self, row: LinearInequality, family: str) -> bool:
        if row in self._seen:
            return False
        self._seen.add(row)
        self.rows.append(row)
        self.stats.count_cut(family)
        return True

    def separate(self, x: Vector) -> int:
        found = []
        if 'path' in self.families:
            found += [(ineq, 'path') for ineq in separate_paths(self.inst, x).inequalities]
        if self.on_tree and 'star' in self.families:
            for k in self.star_sizes:
                found += [(ineq, 'star') for ineq in separate_stars_on_tree(self.inst, x, k).inequalities]
        if self.on_tree and 'tree' in self.families:
            for size in self.tree_sizes:
                found += [(ineq, 'tree') for ineq in separate_trees_on_tree(self.inst, x, size).inequalities]
        if self.pool:
            found += [(ineq, 'pool') for ineq in separate_pool(x, self.pool).inequalities]
        return sum(1 for ineq, family in found if self.add(ineq, family))

    def relax(self, zero: Set[int], one: Set[int]) -> Optional[Tuple[Vector, Fraction]]:
        """Cutting-plane loop for the node fixing ``zero`` to 0 and ``one`` to at least 1.

        Returns None when the node LP is infeasible.
        """
        m = self.inst.edge_count
        free = [e for e in range(m) if e not in zero]
        while True:
            problem = LPProblem([self.weights[e] for e in free])
            for row in self.rows:
                self._add_restricted(problem, row, free)
            for e in sorted(one):
                problem.add_row(LinearInequality([1 if f == e else 0 for f in free], 1, 'branch'))
            self.stats.lp_solves += 1
            try:
                result = lp_solve(problem)
            except Infeasible:
                return None
            self.stats.pivots += result.pivots
            x = [Fraction(0)] * m
            for position, e in enumerate(free):
                x[e] = result.point[position]
            x = tuple(x)
            if not self.separate(x):
                return x, result.value

    @staticmethod
    def _add_restricted(problem: LPProblem, row: LinearInequality, free: Sequence[int]) -> None:
        coeffs = [row.coeffs[e] for e in free]
        if any(coeffs) or row.rhs > 0:
            problem.add_row(LinearInequality(coeffs, row.rhs, row.family))


def _minimalize(inst: MulticutInstance, edges: Iterable[int], weights: Vector) -> EdgeSet:
    """Drop removable edges in increasing weight, ties by index."""
    current = set(edges)
    for e in sorted(current, key=lambda f: (weights[f], f)):
        trial = current - {e}
        if is_multicut(inst, trial):
            current = trial
    return tuple(sorted(current))


def _is_fractional(value: Fraction) -> bool:
    return 0 < value < 1


def solve_min_multicut(inst: MulticutInstance, w: Optional[Sequence[Rational]] = None,
                       config: Optional[SolverConfig] = None) -> Solution:
    """Exact minimum multicut by branch and cut over rational LPs.

    Nodes are explored depth first. Fixing ``x_e = 0`` drops the column and
    prunes the node when the zero edges already join some terminal pair;
    the other branch adds ``x_e >= 1``.

    Raises:
        BudgetExceeded: more than ``config.max_nodes`` branch nodes.
    """
    config = config or SolverConfig()
    weights = inst.with_weights(w).weights if w is not None else inst.weights
    stats = SolveStats()
    if not inst.pairs:
        stats.root_bound = stats.final_bound = Fraction(0)
        return Solution((), Fraction(0), stats)

    families = set(config.families) | {'path'}
    loop = _CuttingPlanes(inst, weights, sorted(families), config.star_sizes, config.tree_sizes,
                          config.pool, stats)
    m = inst.edge_count
    best: Optional[Tuple[Fraction, EdgeSet]] = None
    stack: List[Tuple[frozenset, frozenset]] = [(frozenset(), frozenset())]
    while stack:
        zero, one = stack.pop()
        stats.nodes += 1
        if config.max_nodes is not None and stats.nodes > config.max_nodes:
            raise BudgetExceeded('Branching exceeded {} nodes'.format(config.max_nodes))
        if zero and not is_multicut(inst, [e for e in range(m) if e not in zero]):
            continue
        relaxed = loop.relax(set(zero), set(one))
        if relaxed is None:
            continue
        x, value = relaxed
        if stats.root_bound is None:
            stats.root_bound = value
        if best is not None and value >= best[0]:
            continue
        fractional = [e for e in range(m) if _is_fractional(x[e])]
        if not fractional:
            edges = _minimalize(inst, [e for e in range(m) if x[e] >= 1], weights)
            candidate = cut_value(weights, edges)
            if best is None or candidate < best[0]:
                best = (candidate, edges)
                logger.debug('Incumbent %s at node %d', candidate, stats.nodes)
            continue
        e = min(fractional, key=lambda f: (abs(x[f] - Fraction(1, 2)), f))
        stack.append((zero | {e}, one))
        stack.append((zero, one | {e}))

    value, edges = best
    stats.final_bound = value
    logger.debug('Solved in %d nodes, %d LPs, %d pivots', stats.nodes, stats.lp_solves, stats.pivots)
    return Solution(edges, value, stats)


def lower_bound_report(inst: MulticutInstance, w: Optional[Sequence[Rational]] = None,
                       families: Iterable[str] = ('path',), pool: Iterable[LinearInequality] = ()) -> Fraction:
    """Root LP value using only the requested families, without branching."""
    families = tuple(families)
    unknown = sorted(set(families) - set(FAMILIES))
    if unknown:
        raise BadParams('Unknown cut families {}'.format(unknown))
    weights = inst.with_weights(w).weights if w is not None else inst.weights
    loop = _CuttingPlanes(inst, weights, families, (3,), (3,), pool)
    relaxed = loop.relax(set(), set())
    return relaxed[1]
