"""Desk-scale regeneration of the facet results and conjecture checks.

Each :class:`Check` computes a dictionary of observations from a private
random generator seeded by its name, so a run is deterministic and does not
depend on execution order. A check passes when every expected key matches.
"""
import logging
import random
import time
from concurrent.futures import ThreadPoolExecutor
from fractions import Fraction
from itertools import combinations
from typing import Any, Callable, Dict, List, Optional, Sequence

from multicutlab.exceptions import BudgetExceeded
from multicutlab.facets import face_dimension, is_facet, is_shared_facet, is_valid, structural_checks, tight_multicuts
from multicutlab.graph import MulticutInstance, build_graph, cycle_graph
from multicutlab.hull import check_complete_description, check_integer_points, dd_convert, dominant_hrep
from multicutlab.inequality import (
    LinearInequality, antipodal_cycle_instance, classify_facet, edge_and_path_system, even_circular_star,
    gen_circular_star, gen_complete_star, gen_generalized_wagner, gen_odd_cycle, gen_tree_ineq, gen_wagner,
    nonadjacent_cycle_instance, star_instance, tree_level_one,
)
from multicutlab.lifting import derive_generalized_wagner, splitted_claw_chain, two_component_report
from multicutlab.multicut import enumerate_minimal_multicuts, min_multicut_bruteforce, min_st_cut
from multicutlab.oracles import minimal_multicuts_by_subsets, naive_face_dimension, naive_facets
from multicutlab.solver import lower_bound_report, solve_min_multicut
from multicutlab._helpers import format_rational

logger = logging.getLogger(__name__)

PASS = 'PASS'
FAIL = 'FAIL'
BUDGET = 'BUDGET'
ERROR = 'ERROR'

STRUCTURAL_SOURCES = (
    'st-cut-dominant', 'circular-star', 'circular-description', 'complete-star', 'tree', 'odd-cycle', 'wagner',
    'generalized-wagner', 'diagonal-cycles',
)


def random_instance(rng: random.Random, max_edges: int, pair_count: int, max_weight: int = 1,
                    connected: bool = True) -> MulticutInstance:
    """Random graph with at most ``max_edges`` edges and ``pair_count`` distinct pairs.

    A random spanning tree is laid first when ``connected`` is set; weights are
    drawn from ``1..max_weight``.
    """
    low = 3 if pair_count > 1 else 2
    high = max(low, min(max_edges + 1, 8))
    n = rng.randint(low, high)
    edges = set()
    if connected:
        order = list(range(n))
        rng.shuffle(order)
        for i in range(1, n):
            a, b = order[i], order[rng.randrange(i)]
            edges.add((min(a, b), max(a, b)))
    candidates = [e for e in combinations(range(n), 2) if e not in edges]
    rng.shuffle(candidates)
    target = rng.randint(len(edges), max(len(edges), min(max_edges, len(edges) + len(candidates))))
    while len(edges) < target:
        edges.add(candidates.pop())
    graph = build_graph(n, edges)
    pairs = rng.sample(list(combinations(range(n), 2)), min(pair_count, n * (n - 1) // 2))
    weights = [rng.randint(1, max_weight) for _ in range(graph.edge_count)]
    return MulticutInstance(graph, pairs, weights)


class Check:
    """A named result with its source anchor, parameters and expected observations.

    ``compute(rng, budget, **params)`` returns the observed dictionary.
    """

    def __init__(self, name: str, anchor: str, params: Dict[str, Any], expected: Dict[str, Any],
                 compute: Callable[..., Dict[str, Any]]) -> None:
        self.name = name
        self.anchor = anchor
        self.params = dict(params)
        self.expected = dict(expected)
        self.compute = compute

    def __repr__(self) -> str:
        return 'Check({!r})'.format(self.name)

    def run(self, budget: Optional[int] = None) -> 'CheckResult':
        start = time.perf_counter()
        try:
            observed = self.compute(random.Random(self.name), budget, **self.params)
        except BudgetExceeded as e:
            return CheckResult(self, BUDGET, message=e.message, elapsed=time.perf_counter() - start)
        except Exception as e:
            logger.exception('Check %s raised', self.name)
            return CheckResult(self, ERROR, message='{}: {}'.format(type(e).__name__, e),
                               elapsed=time.perf_counter() - start)
        diff = []
        for key, expected in self.expected.items():
            got = observed.get(key)
            if got != expected:
                diff.append('{}: expected {}, got {}'.format(key, _show(expected), _show(got)))
        status = FAIL if diff else PASS
        return CheckResult(self, status, observed, diff, elapsed=time.perf_counter() - start)


def _show(value: Any) -> str:
    if isinstance(value, Fraction):
        return format_rational(value)
    return repr(value)


class CheckResult:
    def __init__(self, check: Check, status: str, observed: Optional[Dict[str, Any]] = None,
                 diff: Sequence[str] = (), message: str = '', elapsed: float = 0.0) -> None:
        self.check = check
        self.status = status
        self.observed = dict(observed or {})
        self.diff = list(diff)
        self.message = message
        self.elapsed = elapsed

    def format(self) -> str:
        lines = ['{} {} [{}] {:.2f}s'.format(self.status, self.check.name, self.check.anchor, self.elapsed)]
        lines += ['  ' + line for line in self.diff]
        if self.message:
            lines.append('  ' + self.message)
        for key, value in sorted(self.observed.items()):
            if key not in self.check.expected:
                lines.append('  observed {}: {}'.format(key, _show(value)))
        return '\n'.join(lines)


class ReproduceReport:
    def __init__(self, results: List[CheckResult]) -> None:
        self.results = results

    def __iter__(self):
        return iter(self.results)

    def __len__(self) -> int:
        return len(self.results)

    def count(self, status: str) -> int:
        return sum(1 for r in self.results if r.status == status)

    @property
    def exit_code(self) -> int:
        if self.count(FAIL) or self.count(ERROR):
            return 1
        if self.count(BUDGET):
            return 3
        return 0

    def format(self) -> str:
        lines = [r.format() for r in self.results]
        lines.append('summary {} pass, {} fail, {} budget, {} error'.format(
            self.count(PASS), self.count(FAIL), self.count(BUDGET), self.count(ERROR)))
        return '\n'.join(lines) + '\n'


def run_reproduce(checks: Optional[Sequence[Check]] = None, pattern: Optional[str] = None,
                  threads: int = 1, budget: Optional[int] = None) -> ReproduceReport:
    """Run ``checks`` (the default manifest when None) whose name contains ``pattern``.

    Results are reported in manifest order whatever the thread count.
    """
    checks = default_checks() if checks is None else list(checks)
    if pattern:
        checks = [c for c in checks if pattern in c.name]
    if threads > 1:
        with ThreadPoolExecutor(max_workers=threads) as pool:
            results = list(pool.map(lambda c: c.run(budget), checks))
    else:
        results = [c.run(budget) for c in checks]
    for result in results:
        logger.info('%s %s (%.2fs)', result.status, result.check.name, result.elapsed)
    return ReproduceReport(results)


def _collect(found, inst, facets):
    if found is not None:
        found.extend((inst, facet) for facet in facets)


def _st_cut_dominant(rng, budget, count, max_edges, found=None):
    mismatches = 0
    for _ in range(count):
        inst = random_instance(rng, max_edges, 1)
        expected = {ineq.normalize() for ineq in edge_and_path_system(inst)}
        hrep = dominant_hrep(inst, budget)
        _collect(found, inst, hrep.facets)
        if set(hrep.facets) != expected:
            mismatches += 1
            logger.info('s-t cut dominant mismatch on %r', inst)
    return {'instances': count, 'mismatches': mismatches}


def _circular_star(rng, budget, odd, even, found=None):
    odd_facets, odd_shared, even_valid, even_facets = [], [], [], []
    for n in odd:
        inst, ineq = gen_circular_star(n)
        if is_facet(inst, ineq, budget=budget):
            odd_facets.append(n)
            _collect(found, inst, [ineq])
            if is_shared_facet(inst, ineq, budget=budget):
                odd_shared.append(n)
    for n in even:
        inst, ineq = even_circular_star(n)
        vertices = enumerate_minimal_multicuts(inst, budget)
        if is_valid(inst, ineq, vertices):
            even_valid.append(n)
        if is_facet(inst, ineq, vertices):
            even_facets.append(n)
            _collect(found, inst, [ineq])
    return {'odd-facets': odd_facets, 'odd-shared': odd_shared, 'even-valid': even_valid, 'even-facets': even_facets}


def _full_star_row(n):
    return (gen_circular_star(n) if n % 2 else even_circular_star(n))[1]


def _circular_description(rng, budget, sizes, found=None):
    passed, omittable = [], []
    for n in sizes:
        inst = gen_circular_star(n)[0] if n % 2 else even_circular_star(n)[0]
        base = edge_and_path_system(inst)
        report = check_complete_description(inst, base + [_full_star_row(n)], budget)
        _collect(found, inst, report.facets)
        if report:
            passed.append(n)
        if check_complete_description(inst, base, budget):
            omittable.append(n)
    return {'passed': passed, 'omittable': omittable}


def _complete_star(rng, budget, sizes, found=None):
    facets, shared, rhs = [], [], []
    for n in sizes:
        inst, ineq = gen_complete_star(n)
        rhs.append(ineq.rhs)
        if is_facet(inst, ineq, budget=budget):
            facets.append(n)
            _collect(found, inst, [ineq])
            if is_shared_facet(inst, ineq, budget=budget):
                shared.append(n)
    return {'facets': facets, 'shared': shared, 'rhs': rhs}


def _tree(rng, budget, params, found=None):
    facets, shared, tightness = [], [], []
    for n, k in params:
        inst, ineq = gen_tree_ineq(n, k)
        vertices = enumerate_minimal_multicuts(inst, budget)
        if is_facet(inst, ineq, vertices):
            facets.append((n, k))
            _collect(found, inst, [ineq])
            if is_shared_facet(inst, ineq, vertices):
                shared.append((n, k))
        level_one = set(tree_level_one(inst))
        predicted = {delta for delta in vertices if len(level_one.intersection(delta)) in (k - 1, k)}
        if set(tight_multicuts(inst, ineq, vertices)) == predicted:
            tightness.append((n, k))
    return {'facets': facets, 'shared': shared, 'tightness': tightness}


def _cycle_candidates(n):
    inst = nonadjacent_cycle_instance(n)
    rows = edge_and_path_system(inst)
    if n % 2:
        rows.append(gen_odd_cycle(n)[1])
    else:
        rows.append(LinearInequality([1] * n, n // 2, 'cycle'))
    return inst, rows


def _odd_cycle(rng, budget, facet_sizes, description_sizes, found=None):
    facets, described = [], []
    for n in facet_sizes:
        inst, ineq = gen_odd_cycle(n)
        if is_facet(inst, ineq, budget=budget):
            facets.append(n)
            _collect(found, inst, [ineq])
    for n in description_sizes:
        inst, rows = _cycle_candidates(n)
        report = check_complete_description(inst, rows, budget)
        _collect(found, inst, report.facets)
        if report:
            described.append(n)
    return {'facets': facets, 'described': described}


def _wagner(rng, budget, sizes, found=None):
    facets, shared = [], []
    for n in sizes:
        vertices = None
        for beta in (1, 2):
            inst, ineq = gen_wagner(n, beta)
            vertices = vertices or enumerate_minimal_multicuts(inst, budget)
            if is_facet(inst, ineq, vertices):
                facets.append((n, beta))
                _collect(found, inst, [ineq])
                if is_shared_facet(inst, ineq, vertices):
                    shared.append((n, beta))
    return {'facets': facets, 'shared': shared}


def _generalized_wagner(rng, budget, n, half, choices, derive, found=None):
    facets = []
    for breakpoints in choices:
        inst, ineq = gen_generalized_wagner(n, half, breakpoints)
        if is_facet(inst, ineq, budget=budget):
            facets.append(tuple(breakpoints))
            _collect(found, inst, [ineq])
    steps, inst, ineq = derive_generalized_wagner(n, half, derive)
    target_inst, target = gen_generalized_wagner(n, half, derive)
    return {
        'facets': facets,
        'derivation-omegas': [step.omega for step in steps],
        'derivation-matches': inst == target_inst and ineq.coeffs == target.coeffs and ineq.rhs == target.rhs,
    }


def _diagonal_cycles(rng, budget, sizes, found=None):
    unclassified = 0
    observed: Dict[str, Any] = {}
    for n in sizes:
        inst = antipodal_cycle_instance(n)
        families: Dict[str, int] = {}
        hrep = dominant_hrep(inst, budget)
        _collect(found, inst, hrep.facets)
        for facet in hrep:
            family = classify_facet(inst, facet)
            if family is None:
                unclassified += 1
                logger.info('Unclassified facet on C_%d: %s', 2 * n, facet.format())
                family = 'unclassified'
            families[family] = families.get(family, 0) + 1
        observed['families-{}'.format(n)] = dict(sorted(families.items()))
    observed['unclassified'] = unclassified
    return observed


def _two_pairs(rng, budget, count, max_edges):
    other = 0
    for _ in range(count):
        inst = random_instance(rng, max_edges, 2)
        for facet in dominant_hrep(inst, budget):
            if classify_facet(inst, facet) not in ('edge', 'path'):
                other += 1
                logger.info('Facet beyond edges and paths on %r: %s', inst, facet.format())
    return {'instances': count, 'other-facets': other}


def _two_component(rng, budget, count, max_edges):
    gadgets = [cycle_graph(3), build_graph(4, [(0, 2), (2, 1), (1, 3), (3, 0)])]
    unexplained = 0
    for _ in range(count):
        inst = random_instance(rng, max_edges, rng.randint(1, 2))
        e = rng.randrange(inst.edge_count)
        report = two_component_report(inst, e, rng.choice(gadgets), 0, 1, budget)
        unexplained += len(report.unexplained)
    return {'instances': count, 'unexplained': unexplained}


def _splitted_claw(rng, budget):
    steps = splitted_claw_chain()
    facets = sum(1 for step in steps if is_facet(step.instance, step.inequality, budget=budget))
    inst, ineq = gen_tree_ineq(3, 2)
    final = steps[-1]
    matches = final.instance == inst and final.inequality.coeffs == ineq.coeffs and final.inequality.rhs == ineq.rhs
    return {'omegas': [step.omega for step in steps], 'facets': facets, 'matches-tree': matches}


def _solver(rng, budget, count, st_count, max_edges, max_pairs, max_weight):
    mismatches = 0
    for _ in range(count):
        inst = random_instance(rng, max_edges, rng.randint(1, max_pairs), max_weight)
        if solve_min_multicut(inst).value != min_multicut_bruteforce(inst, budget=budget)[1]:
            mismatches += 1
            logger.info('Solver disagrees with enumeration on %r', inst)
    st_mismatches = 0
    for _ in range(st_count):
        inst = random_instance(rng, max_edges, 1, max_weight)
        s, t = inst.pairs[0]
        if solve_min_multicut(inst).value != min_st_cut(inst.graph, inst.weights, s, t)[1]:
            st_mismatches += 1
    return {'mismatches': mismatches, 'st-mismatches': st_mismatches}


def _integer_points(rng, budget, star_sizes, count, max_edges):
    instances = [star_instance(n, combinations(range(1, n + 1), 2)) for n in star_sizes]
    instances += [random_instance(rng, max_edges, rng.randint(1, 3)) for _ in range(count)]
    failures = sum(1 for inst in instances
                   if not check_integer_points(inst, edge_and_path_system(inst), budget=budget))
    return {'instances': len(instances), 'failures': failures}


def criterion_facets(sources: Sequence[str], budget: Optional[int] = None):
    """Facets produced by the named manifest checks, as distinct ``(instance, inequality)`` pairs.

    Each check is rerun with its own seed and parameters, so the list matches
    what that check verified.
    """
    manifest = {check.name: check for check in default_checks()}
    facets: Dict[Any, Any] = {}
    for name in sources:
        check = manifest[name]
        found: List[Any] = []
        check.compute(random.Random(check.name), budget, found=found, **check.params)
        for inst, ineq in found:
            facets.setdefault((inst, ineq.normalize()), (inst, ineq))
    return list(facets.values())


def _structural(rng, budget, sources):
    cases = criterion_facets(sources, budget)
    vertices: Dict[MulticutInstance, Any] = {}
    failures = 0
    for inst, ineq in cases:
        if inst not in vertices:
            vertices[inst] = enumerate_minimal_multicuts(inst, budget)
        report = structural_checks(inst, ineq, vertices[inst])
        if not report.passed:
            failures += 1
            logger.info('Structural check failed for %s: %s', ineq.format(), '; '.join(report.details))
    return {'facets': len(cases), 'failures': failures}


def _oracles(rng, budget, count):
    partition = 0
    for _ in range(count):
        inst = random_instance(rng, 12, rng.randint(1, 4))
        if enumerate_minimal_multicuts(inst, budget) != minimal_multicuts_by_subsets(inst, budget):
            partition += 1
    hull = 0
    for _ in range(count):
        d = rng.randint(2, 3)
        rays = [tuple(1 if i == j else 0 for i in range(d)) for j in range(d)]
        points = [tuple(rng.randint(0, 2) for _ in range(d)) for _ in range(rng.randint(1, 10 - d))]
        if set(dd_convert(points, rays).facets) != naive_facets(points, rays):
            hull += 1
    faces = 0
    for _ in range(count):
        inst = random_instance(rng, 10, rng.randint(1, 3))
        rows = edge_and_path_system(inst)
        for ineq in rng.sample(rows, min(4, len(rows))):
            if face_dimension(inst, ineq, budget=budget) != naive_face_dimension(inst, ineq, budget):
                faces += 1
    return {'partition-mismatches': partition, 'hull-mismatches': hull, 'face-mismatches': faces}


def _cycle_lower_bound(rng, budget, half):
    inst, wagner = gen_wagner(half, 1)
    weights = list(wagner.coeffs)
    return {
        'paths': lower_bound_report(inst, weights, ('path',)),
        'paths+wagner': lower_bound_report(inst, weights, ('path', 'wagner')),
        'unit-paths': lower_bound_report(inst, None, ('path',)),
    }


def default_checks() -> List[Check]:
    return [
        Check('st-cut-dominant', 'facets of the s-t cut dominant', {'count': 20, 'max_edges': 10},
              {'instances': 20, 'mismatches': 0}, _st_cut_dominant),
        Check('circular-star', 'circular star facets', {'odd': (3, 5, 7), 'even': (4, 6)},
              {'odd-facets': [3, 5, 7], 'odd-shared': [3, 5, 7], 'even-valid': [4, 6], 'even-facets': []},
              _circular_star),
        Check('circular-description', 'complete description of the circular claw', {'sizes': (3, 4, 5, 6)},
              {'passed': [3, 4, 5, 6], 'omittable': [4, 6]}, _circular_description),
        Check('complete-star', 'complete star facets', {'sizes': (2, 3, 4, 5)},
              {'facets': [2, 3, 4, 5], 'shared': [2, 3, 4, 5], 'rhs': [1, 2, 3, 4]}, _complete_star),
        Check('tree', '(n, k)-tree facets and tight multicuts', {'params': ((3, 2), (4, 2), (4, 3))},
              {'facets': [(3, 2), (4, 2), (4, 3)], 'shared': [(3, 2), (4, 2), (4, 3)],
               'tightness': [(3, 2), (4, 2), (4, 3)]}, _tree),
        Check('odd-cycle', 'odd cycle facets and cycle descriptions',
              {'facet_sizes': (5, 7), 'description_sizes': (5, 6, 7)},
              {'facets': [5, 7], 'described': [5, 6, 7]}, _odd_cycle),
        Check('wagner', 'Wagner inequalities', {'sizes': (5, 7)},
              {'facets': [(5, 1), (5, 2), (7, 1), (7, 2)], 'shared': [(5, 1), (5, 2), (7, 1), (7, 2)]}, _wagner),
        Check('generalized-wagner', 'generalized Wagner inequalities and their node-split derivation',
              {'n': 5, 'half': 6, 'choices': ((1, 2, 3, 4, 6), (1, 3, 4, 5, 6)), 'derive': (1, 2, 3, 4, 6)},
              {'facets': [(1, 2, 3, 4, 6), (1, 3, 4, 5, 6)], 'derivation-omegas': [2, 1],
               'derivation-matches': True}, _generalized_wagner),
        Check('diagonal-cycles', 'antipodal cycle conjecture', {'sizes': (3, 5, 7)},
              {'unclassified': 0}, _diagonal_cycles),
        Check('two-pair-conjecture', 'two terminal pairs conjecture', {'count': 50, 'max_edges': 10},
              {'instances': 50}, _two_pairs),
        Check('two-component', 'edge replacement by a two-terminal gadget', {'count': 20, 'max_edges': 6},
              {'instances': 20}, _two_component),
        Check('splitted-claw', 'splitted 3-claw example', {},
              {'omegas': [1] * 6, 'facets': 6, 'matches-tree': True}, _splitted_claw),
        Check('solver', 'branch and cut against enumeration and max flow',
              {'count': 100, 'st_count': 50, 'max_edges': 14, 'max_pairs': 4, 'max_weight': 10},
              {'mismatches': 0, 'st-mismatches': 0}, _solver),
        Check('integer-points', 'integer points of the edge and path system',
              {'star_sizes': (3, 4), 'count': 10, 'max_edges': 8},
              {'instances': 12, 'failures': 0}, _integer_points),
        Check('structural', 'structural facet properties of every verified facet',
              {'sources': STRUCTURAL_SOURCES}, {'failures': 0}, _structural),
        Check('oracles', 'brute-force oracle agreement', {'count': 30},
              {'partition-mismatches': 0, 'hull-mismatches': 0, 'face-mismatches': 0}, _oracles),
        Check('cycle-lower-bound', 'path relaxation gap on C_10', {'half': 5},
              {'paths': Fraction(5, 2), 'paths+wagner': Fraction(3)}, _cycle_lower_bound),
    ]
