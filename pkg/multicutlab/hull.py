import logging
from fractions import Fraction
from itertools import product
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, Tuple

from multicutlab.exceptions import BudgetExceeded, DimensionMismatch, Empty, NotFullDimensional, Unbounded
from multicutlab.graph import MulticutInstance
from multicutlab.inequality import LinearInequality
from multicutlab.lp import LPProblem, lp_solve
from multicutlab.multicut import dominant_vertices
from multicutlab._helpers import (
    ENUMERATION_BUDGET, HULL_MAX_EDGES, HULL_MAX_GENERATORS, INTEGER_POINT_BOUND, Rational,
    divide_by_gcd, independent_rows, inverse, matrix_rank, popcount, scale_to_integers, to_fractions,
)

logger = logging.getLogger(__name__)


class HRepresentation:
    """Irredundant facet list ``a.x >= b`` of a full-dimensional polyhedron in R^dimension."""

    def __init__(self, facets: Iterable[LinearInequality], dimension: int) -> None:
        self.facets: List[LinearInequality] = sorted(
            {f.normalize() for f in facets}, key=LinearInequality.sort_key)
        self.dimension = dimension

    def __iter__(self) -> Iterator[LinearInequality]:
        return iter(self.facets)

    def __len__(self) -> int:
        return len(self.facets)

    def __contains__(self, ineq: LinearInequality) -> bool:
        return ineq in set(self.facets)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HRepresentation):
            return False
        return self.dimension == other.dimension and self.facets == other.facets

    def __repr__(self) -> str:
        return 'HRepresentation(dimension={}, facets={})'.format(self.dimension, len(self.facets))

    def format(self) -> str:
        return '\n'.join(f.format() for f in self.facets)


def _integral(vector: Sequence[Rational]) -> Tuple[int, ...]:
    return tuple(divide_by_gcd(scale_to_integers(vector)))


def _generator_key(vector: Sequence[int]) -> Tuple:
    support = sum(1 for a in vector[1:] if a)
    return support, tuple(vector)


def dd_convert(points: Sequence[Sequence[Rational]], rays: Sequence[Sequence[Rational]] = (),
               max_generators: Optional[int] = None) -> HRepresentation:
    """Facets of ``conv(points) + cone(rays)`` by the double description method.

    Generators are homogenized to ``(1, p)`` and ``(0, r)``; the extreme rays
    ``(-b, a)`` of the cone ``{h : h.g >= 0}`` are the facets ``a.x >= b``.
    Rows are inserted by support size, then lexicographically, and two rays
    are combined only when no third ray's zero set contains their common one.

    Raises:
        Empty: no points.
        NotFullDimensional: the generators do not span a full-dimensional set.
        BudgetExceeded: more than ``max_generators`` input or intermediate rays.
    """
    max_generators = HULL_MAX_GENERATORS if max_generators is None else max_generators
    if not points:
        raise Empty('dd_convert needs at least one point')
    d = len(points[0])
    if any(len(p) != d for p in points) or any(len(r) != d for r in rays):
        raise DimensionMismatch('Generators of unequal length')
    if len(points) + len(rays) > max_generators:
        raise BudgetExceeded('{} generators exceed the hull limit {}'.format(
            len(points) + len(rays), max_generators))

    rows = {_integral([1] + list(to_fractions(p))) for p in points}
    rows |= {_integral([0] + list(to_fractions(r))) for r in rays if any(r)}
    rows = sorted(rows, key=_generator_key)
    size = d + 1
    if matrix_rank(rows) != size:
        raise NotFullDimensional('Generators span less than R^{}'.format(d))

    basis = list(independent_rows(rows))
    order = basis + [i for i in range(len(rows)) if i not in set(basis)]
    rows = [rows[i] for i in order]

    columns = inverse(rows[:size])
    current: List[Tuple[Tuple[int, ...], int]] = []
    for j in range(size):
        ray = _integral([columns[i][j] for i in range(size)])
        current.append((ray, _zero_set(rows[:size], ray)))

    for position in range(size, len(rows)):
        row = rows[position]
        bit = 1 << position
        positive, zero, negative = [], [], []
        for ray, zeros in current:
            value = sum(a * b for a, b in zip(row, ray))
            if value > 0:
                positive.append((ray, zeros, value))
            elif value < 0:
                negative.append((ray, zeros, value))
            else:
                zero.append((ray, zeros | bit))
        if not negative:
            current = [(ray, zeros) for ray, zeros, _ in positive] + zero
            continue
        combined = []
        for p_ray, p_zeros, p_value in positive:
            for n_ray, n_zeros, n_value in negative:
                common = p_zeros & n_zeros
                if popcount(common) < size - 2:
                    continue
                if not _adjacent(common, p_ray, n_ray, current):
                    continue
                ray = _integral([p_value * b - n_value * a for a, b in zip(p_ray, n_ray)])
                combined.append((ray, common | bit))
        current = [(ray, zeros) for ray, zeros, _ in positive] + zero + combined
        if len(current) > max_generators:
            raise BudgetExceeded('Double description grew to {} rays, limit {}'.format(
                len(current), max_generators))
        logger.debug('DD row %d/%d: %d rays', position + 1, len(rows), len(current))

    facets = []
    for ray, _ in current:
        if any(ray[1:]):
            facets.append(LinearInequality(ray[1:], -ray[0], 'hull'))
    return HRepresentation(facets, d)


def _zero_set(rows: Sequence[Sequence[int]], ray: Sequence[int]) -> int:
    mask = 0
    for i, row in enumerate(rows):
        if sum(a * b for a, b in zip(row, ray)) == 0:
            mask |= 1 << i
    return mask


def _adjacent(common: int, first, second, rays) -> bool:
    for ray, zeros in rays:
        if ray is first or ray is second:
            continue
        if common & zeros == common:
            return False
    return True


def _check_hull_size(inst: MulticutInstance, max_edges: Optional[int]) -> None:
    max_edges = HULL_MAX_EDGES if max_edges is None else max_edges
    if inst.edge_count > max_edges:
        logger.info('Refusing hull computation on %d edges (limit %d)', inst.edge_count, max_edges)
        raise BudgetExceeded('{} edges exceed the hull limit {}'.format(inst.edge_count, max_edges))


def _unit_rays(m: int) -> List[Tuple[int, ...]]:
    return [tuple(1 if i == j else 0 for i in range(m)) for j in range(m)]


def dominant_hrep(inst: MulticutInstance, budget: Optional[int] = None, max_edges: Optional[int] = None,
                  max_generators: Optional[int] = None) -> HRepresentation:
    """Facets of the multicut dominant: minimal multicuts plus the unit rays."""
    _check_hull_size(inst, max_edges)
    vertices = dominant_vertices(inst, budget)
    hrep = dd_convert(vertices, _unit_rays(inst.edge_count), max_generators)
    logger.debug('Dominant with %d vertices has %d facets', len(vertices), len(hrep))
    return hrep


def project_out(inst: MulticutInstance, e: int, budget: Optional[int] = None,
                max_generators: Optional[int] = None) -> HRepresentation:
    """Facets of the orthogonal projection of the dominant forgetting ``x_e``.

    Coordinates keep their order, so the result is indexed like the edges of
    ``G - e``.
    """
    inst.graph.check_edge(e)
    _check_hull_size(inst, None)
    m = inst.edge_count
    vertices = {v[:e] + v[e + 1:] for v in dominant_vertices(inst, budget)}
    return dd_convert(sorted(vertices), _unit_rays(m - 1), max_generators)


def dominant_contains(inst: MulticutInstance, x: Sequence[Rational], budget: Optional[int] = None,
                      vertices: Optional[Sequence[Tuple[int, ...]]] = None) -> bool:
    """Membership of ``x`` in the dominant.

    ``x`` belongs to it iff some ``mu >= 0`` with ``V^T mu <= x`` has
    ``sum(mu) >= 1``; a vertex below ``x`` settles it without an LP.
    """
    m = inst.edge_count
    if len(x) != m:
        raise DimensionMismatch('Point has {} entries, instance has {} edges'.format(len(x), m))
    point = to_fractions(x)
    if any(v < 0 for v in point):
        return False
    vertices = dominant_vertices(inst, budget) if vertices is None else vertices
    if any(all(v[e] <= point[e] for e in range(m)) for v in vertices):
        return True
    rows = [LinearInequality([-v[e] for v in vertices], -point[e]) for e in range(m)]
    try:
        result = lp_solve(LPProblem([-1] * len(vertices), rows))
    except Unbounded:
        return True
    return -result.value >= 1


class DescriptionReport:
    """Comparison of a candidate system with the computed facets.

    ``missing``: facets without a positive multiple among the candidates.
    ``redundant``: valid candidates that are not facets.
    ``invalid``: candidates cut off some minimal multicut.
    """

    def __init__(self, facets: HRepresentation, missing: List[LinearInequality],
                 redundant: List[LinearInequality], invalid: List[LinearInequality]) -> None:
        self.facets = facets
        self.missing = missing
        self.redundant = redundant
        self.invalid = invalid

    @property
    def passed(self) -> bool:
        return not self.missing and not self.invalid

    def __bool__(self) -> bool:
        return self.passed


def check_complete_description(inst: MulticutInstance, candidates: Iterable[LinearInequality],
                               budget: Optional[int] = None, max_edges: Optional[int] = None) -> DescriptionReport:
    from multicutlab.facets import is_valid

    candidates = list({c.normalize(): c for c in candidates}.values())
    vertices = [tuple(e for e, a in enumerate(v) if a) for v in dominant_vertices(inst, budget)]
    hrep = dominant_hrep(inst, budget, max_edges)
    facet_set = set(hrep.facets)
    invalid = [c for c in candidates if not is_valid(inst, c, vertices)]
    candidate_set = set(candidates)
    missing = [f for f in hrep.facets if f not in candidate_set]
    redundant = [c for c in candidates if c not in facet_set and c not in invalid]
    logger.debug('Description check: %d facets, %d missing, %d redundant, %d invalid',
                 len(hrep), len(missing), len(redundant), len(invalid))
    return DescriptionReport(hrep, missing, sorted(redundant, key=LinearInequality.sort_key),
                             sorted(invalid, key=LinearInequality.sort_key))


class IntegerPointReport:
    def __init__(self, checked: int, discrepancies: List[Tuple[Tuple[int, ...], bool, bool]]) -> None:
        self.checked = checked
        # (point, satisfies candidate, in dominant)
        self.discrepancies = discrepancies

    @property
    def passed(self) -> bool:
        return not self.discrepancies

    def __bool__(self) -> bool:
        return self.passed


def check_integer_points(inst: MulticutInstance, candidates: Iterable[LinearInequality],
                         bound: Optional[int] = None, budget: Optional[int] = None) -> IntegerPointReport:
    """Compare the candidate system with dominant membership on ``{0..bound}^E``."""
    bound = INTEGER_POINT_BOUND if bound is None else bound
    budget = ENUMERATION_BUDGET if budget is None else budget
    m = inst.edge_count
    if (bound + 1) ** m > budget:
        raise BudgetExceeded('{} integer points exceed the budget {}'.format((bound + 1) ** m, budget))
    candidates = list(candidates)
    vertices = dominant_vertices(inst, budget)
    discrepancies = []
    checked = 0
    cache: Dict[Tuple[int, ...], bool] = {}
    for x in product(range(bound + 1), repeat=m):
        checked += 1
        satisfied = all(c.is_satisfied(x) for c in candidates)
        # membership only depends on the support for integer points
        support = tuple(min(a, 1) for a in x)
        if support not in cache:
            cache[support] = dominant_contains(inst, x, vertices=vertices)
        member = cache[support]
        if satisfied != member:
            discrepancies.append((x, satisfied, member))
    if discrepancies:
        logger.info('%d of %d integer points disagree with the candidate system', len(discrepancies), checked)
    return IntegerPointReport(checked, discrepancies)
