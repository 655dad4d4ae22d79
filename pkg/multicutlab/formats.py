"""Plain-text file formats and report printers.

Instances::

    nodes 4
    edge 0 1
    edge 0 2 weight 3/2
    pair 1 2

Inequalities, one per line, ``ineq b <= a_0 a_1 ... a_{m-1}`` with integers.
Points list one rational per edge index. ``#`` starts a comment everywhere.
"""
from fractions import Fraction
from typing import Iterable, List, Optional, Tuple

from multicutlab.exceptions import InvalidArgument, ParseError
from multicutlab.graph import MulticutInstance, build_graph
from multicutlab.inequality import LinearInequality
from multicutlab._helpers import Vector, format_edge_set, format_rational


def _lines(text: str) -> Iterable[Tuple[int, List[str]]]:
    for number, raw in enumerate(text.splitlines(), start=1):
        tokens = raw.split('#', 1)[0].split()
        if tokens:
            yield number, tokens


def _int(token: str, line: int) -> int:
    try:
        return int(token)
    except ValueError:
        raise ParseError('expected an integer, got {!r}'.format(token), line) from None


def _rational(token: str, line: int) -> Fraction:
    try:
        return Fraction(token)
    except (ValueError, ZeroDivisionError):
        raise ParseError('expected a rational p/q, got {!r}'.format(token), line) from None


def parse_instance(text: str) -> MulticutInstance:
    """Read an instance; every violation is reported with its line number.

    Raises:
        ParseError: malformed line or an edge/pair breaking the graph invariants.
    """
    node_count: Optional[int] = None
    edges: List[Tuple[int, int]] = []
    weights: List[Fraction] = []
    pairs: List[Tuple[int, int]] = []
    seen_edges = set()
    last = 0

    def node(token: str, line: int) -> int:
        v = _int(token, line)
        if not 0 <= v < node_count:
            raise ParseError('node {} out of range 0..{}'.format(v, node_count - 1), line)
        return v

    for line, tokens in _lines(text):
        last = line
        keyword, args = tokens[0], tokens[1:]
        if keyword == 'nodes':
            if node_count is not None:
                raise ParseError('repeated nodes line', line)
            if len(args) != 1:
                raise ParseError('expected "nodes N"', line)
            node_count = _int(args[0], line)
            if node_count < 0:
                raise ParseError('node count must be nonnegative', line)
            continue
        if node_count is None:
            raise ParseError('the first item must be "nodes N"', line)
        if keyword == 'edge':
            if len(args) == 4 and args[2] == 'weight':
                args = args[:2] + args[3:]
            elif len(args) != 2:
                raise ParseError('expected "edge u v [weight p/q]"', line)
            u, v = node(args[0], line), node(args[1], line)
            if u == v:
                raise ParseError('self-loop at node {}'.format(u), line)
            key = (min(u, v), max(u, v))
            if key in seen_edges:
                raise ParseError('duplicate edge {} {}'.format(*key), line)
            seen_edges.add(key)
            weight = _rational(args[2], line) if len(args) == 3 else Fraction(1)
            if weight < 0:
                raise ParseError('negative weight {}'.format(weight), line)
            edges.append(key)
            weights.append(weight)
        elif keyword == 'pair':
            if len(args) != 2:
                raise ParseError('expected "pair s t"', line)
            s, t = node(args[0], line), node(args[1], line)
            if s == t:
                raise ParseError('terminal pair uses node {} twice'.format(s), line)
            pairs.append((s, t))
        else:
            raise ParseError('unknown item {!r}'.format(keyword), line)

    if node_count is None:
        raise ParseError('missing "nodes N" line', last or 1)
    try:
        graph = build_graph(node_count, edges)
        ordered = [Fraction(1)] * graph.edge_count
        for edge, weight in zip(edges, weights):
            ordered[graph.edge_index(*edge)] = weight
        return MulticutInstance(graph, pairs, ordered)
    except InvalidArgument as e:
        raise ParseError(e.message, last) from e


def load_instance(path: str) -> MulticutInstance:
    with open(path) as fh:
        return parse_instance(fh.read())


def format_instance(inst: MulticutInstance) -> str:
    lines = ['nodes {}'.format(inst.graph.node_count)]
    for (u, v), weight in zip(inst.graph.edges, inst.weights):
        if weight == 1:
            lines.append('edge {} {}'.format(u, v))
        else:
            lines.append('edge {} {} weight {}'.format(u, v, format_rational(weight)))
    lines += ['pair {} {}'.format(s, t) for s, t in inst.pairs]
    return '\n'.join(lines) + '\n'


def parse_inequalities(text: str, dimension: Optional[int] = None) -> List[LinearInequality]:
    """Read ``ineq b <= a_0 ... a_{m-1}`` lines; all must have the same length."""
    result = []
    for line, tokens in _lines(text):
        if tokens[0] != 'ineq' or len(tokens) < 3 or tokens[2] != '<=':
            raise ParseError('expected "ineq b <= a_0 ... a_(m-1)"', line)
        rhs = _int(tokens[1], line)
        coeffs = [_int(token, line) for token in tokens[3:]]
        if dimension is not None and len(coeffs) != dimension:
            raise ParseError('expected {} coefficients, got {}'.format(dimension, len(coeffs)), line)
        dimension = len(coeffs)
        result.append(LinearInequality(coeffs, rhs, 'file'))
    return result


def parse_inequality(text: str, dimension: Optional[int] = None) -> LinearInequality:
    found = parse_inequalities(text, dimension)
    if len(found) != 1:
        raise ParseError('expected exactly one inequality, found {}'.format(len(found)))
    return found[0]


def load_inequalities(path: str, dimension: Optional[int] = None) -> List[LinearInequality]:
    with open(path) as fh:
        return parse_inequalities(fh.read(), dimension)


def format_inequalities(inequalities: Iterable[LinearInequality]) -> str:
    return ''.join(ineq.format() + '\n' for ineq in inequalities)


def parse_point(text: str, dimension: Optional[int] = None) -> Vector:
    values = [_rational(token, line) for line, tokens in _lines(text) for token in tokens]
    if dimension is not None and len(values) != dimension:
        raise ParseError('point has {} entries, expected {}'.format(len(values), dimension))
    return tuple(values)


def load_point(path: str, dimension: Optional[int] = None) -> Vector:
    with open(path) as fh:
        return parse_point(fh.read(), dimension)


def _yes(flag: Optional[bool]) -> str:
    if flag is None:
        return 'n/a'
    return 'yes' if flag else 'no'


def format_facet_report(report) -> str:
    lines = ['valid {}'.format(_yes(report.valid))]
    if report.violation is not None:
        if report.violation.negative_edge is not None:
            lines.append('negative-coefficient {}'.format(report.violation.negative_edge))
        else:
            lines.append('counterexample {}'.format(format_edge_set(report.violation.counterexample)))
    lines += [
        'tight-vertices {}'.format(len(report.tight_vertices)),
        'face-dimension {}'.format(report.face_dim),
        'facet {}'.format(_yes(report.is_facet)),
        'shared {}'.format(_yes(report.is_shared)),
        'bounded {}'.format(_yes(report.bounded)),
    ]
    return '\n'.join(lines) + '\n'


def format_separation(result) -> str:
    lines = ['violated {}'.format(len(result))]
    for ineq, amount in result:
        lines.append('{} # {} violation {}'.format(ineq.format(), ineq.family, format_rational(amount)))
    return '\n'.join(lines) + '\n'


def format_solution(solution, stats: bool = False) -> str:
    lines = [
        'value {}'.format(format_rational(solution.value)),
        'edges {}'.format(format_edge_set(solution.edges)),
    ]
    if stats:
        data = solution.stats.as_dict()
        for key in ('nodes', 'lp_solves', 'pivots'):
            lines.append('{} {}'.format(key.replace('_', '-'), data[key]))
        cuts = ' '.join('{}={}'.format(family, count) for family, count in data['cuts'].items())
        lines.append('cuts {}'.format(cuts or '-'))
        for key in ('root_bound', 'final_bound'):
            value = data[key]
            lines.append('{} {}'.format(key.replace('_', '-'), '-' if value is None else format_rational(value)))
    return '\n'.join(lines) + '\n'


def format_description_report(report) -> str:
    lines = [
        'result {}'.format('PASS' if report.passed else 'FAIL'),
        'facets {}'.format(len(report.facets)),
    ]
    for label, rows in (('missing', report.missing), ('invalid', report.invalid), ('redundant', report.redundant)):
        lines.append('{} {}'.format(label, len(rows)))
        lines += ['  ' + row.format() for row in rows]
    return '\n'.join(lines) + '\n'


def format_lift_result(result) -> str:
    lines = []
    if result.omega is not None:
        lines.append('omega {}'.format(format_rational(result.omega)))
    for name, ok in sorted(result.hypotheses.items()):
        lines.append('hypothesis {} {}'.format(name, _yes(ok)))
    lines += ['note {}'.format(note) for note in result.notes]
    return '\n'.join(lines) + '\n' if lines else ''


def format_structural_report(report) -> str:
    lines = ['{} {}'.format(name, _yes(ok)) for name, ok in report.as_dict().items()]
    lines += ['detail {}'.format(detail) for detail in report.details]
    return '\n'.join(lines) + '\n'
