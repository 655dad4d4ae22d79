import argparse
import logging
import sys
from typing import Dict, List, Optional, Sequence, Tuple

from multicutlab.exceptions import BadParams, MulticutError
from multicutlab.facets import analyze
from multicutlab.formats import (
    format_description_report, format_facet_report, format_inequalities, format_instance, format_lift_result,
    format_separation, format_solution, load_inequalities, load_instance, load_point,
)
from multicutlab.hull import check_complete_description, dominant_hrep
from multicutlab.inequality import (
    even_circular_star, gen_circular_star, gen_complete_star, gen_generalized_wagner, gen_odd_cycle,
    gen_tree_ineq, gen_wagner,
)
from multicutlab.lifting import contract_subgraph_to_edge, lift_node_split, lift_subdivide
from multicutlab.multicut import enumerate_minimal_multicuts, min_multicut_bruteforce
from multicutlab.reproduce import run_reproduce
from multicutlab.separation import SeparationResult, separate_paths, separate_stars_on_tree, separate_trees_on_tree
from multicutlab.solver import SolverConfig, solve_min_multicut
from multicutlab._helpers import format_edge_set, format_rational

logger = logging.getLogger(__name__)

GENERATORS = ('circular-star', 'even-circular-star', 'complete-star', 'tree', 'odd-cycle', 'wagner',
              'generalized-wagner')

GEN_INEQ_INDEXING = (
    'Coefficients in the exported .ineq file follow the edge lines of the .mc file,\n'
    'which are sorted by endpoints.\n'
    '  tree: root edges first, then the leaf edges grouped by child node; the p-th\n'
    '    child pair (i, j) gets leaf n+1+2p under i and leaf n+2+2p under j.\n'
    '  wagner: cycle edge {i, i+1} carries beta for even i and 3-beta for odd i.\n'
    '  generalized-wagner: block b covers cycle edges l_b .. l_(b+1)-1 with l_0 = 0;\n'
    '    even blocks carry beta with 3-beta on the antipodes, odd blocks swap the two.\n'
)


def _int_list(text: str) -> List[int]:
    try:
        return [int(token) for token in text.split(',') if token.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError('expected comma separated integers, got {!r}'.format(text)) from None


def _families(text: str) -> Tuple[str, ...]:
    return tuple(token.strip() for token in text.split(',') if token.strip())


def _pair_sides(text: str) -> Tuple[Tuple[int, int], Tuple[int, ...]]:
    """``S,T=SIDES`` with SIDES among ``1``, ``2``, ``12`` or ``-``."""
    try:
        pair, sides = text.split('=')
        s, t = (int(token) for token in pair.split(','))
    except ValueError:
        raise argparse.ArgumentTypeError('expected S,T=SIDES, got {!r}'.format(text)) from None
    if sides == '-':
        return (s, t), ()
    if not sides or any(c not in '12' for c in sides):
        raise argparse.ArgumentTypeError('sides must be drawn from 1 and 2, got {!r}'.format(sides))
    return (s, t), tuple(sorted({int(c) for c in sides}))


def _emit(args, instance, inequality) -> None:
    if args.out:
        with open(args.out + '.mc', 'w') as fh:
            fh.write(format_instance(instance))
        with open(args.out + '.ineq', 'w') as fh:
            fh.write(format_inequalities([inequality]))
        logger.info('Wrote %s.mc and %s.ineq', args.out, args.out)
    else:
        sys.stdout.write(format_instance(instance))
        sys.stdout.write(format_inequalities([inequality]))


def cmd_solve(args) -> int:
    inst = load_instance(args.instance)
    config = SolverConfig(families=args.families, max_nodes=args.max_nodes)
    solution = solve_min_multicut(inst, config=config)
    sys.stdout.write(format_solution(solution, stats=args.stats))
    if args.oracle == 'brute':
        _, value = min_multicut_bruteforce(inst, budget=args.budget)
        agrees = value == solution.value
        print('oracle {} {}'.format('agrees' if agrees else 'disagrees', format_rational(value)))
        return 0 if agrees else 1
    return 0


def cmd_enum_multicuts(args) -> int:
    inst = load_instance(args.instance)
    for delta in enumerate_minimal_multicuts(inst, args.budget):
        print(format_edge_set(delta))
    return 0


def cmd_facets(args) -> int:
    inst = load_instance(args.instance)
    sys.stdout.write(format_inequalities(dominant_hrep(inst, args.budget)))
    return 0


def cmd_check_ineq(args) -> int:
    inst = load_instance(args.instance)
    inequalities = load_inequalities(args.inequality, inst.edge_count)
    all_facets = True
    for ineq in inequalities:
        report = analyze(inst, ineq, shared=args.shared, budget=args.budget)
        print(ineq.format())
        sys.stdout.write(format_facet_report(report))
        all_facets = all_facets and report.is_facet
    return 0 if all_facets else 1


def cmd_check_description(args) -> int:
    inst = load_instance(args.instance)
    candidates = load_inequalities(args.inequalities, inst.edge_count)
    report = check_complete_description(inst, candidates, args.budget)
    sys.stdout.write(format_description_report(report))
    return 0 if report.passed else 1


def _generate(args):
    family = args.family
    if family == 'circular-star':
        return gen_circular_star(args.n)
    if family == 'even-circular-star':
        return even_circular_star(args.n)
    if family == 'complete-star':
        return gen_complete_star(args.n)
    if family == 'tree':
        return gen_tree_ineq(args.n, args.k)
    if family == 'odd-cycle':
        return gen_odd_cycle(args.n)
    if family == 'wagner':
        return gen_wagner(args.n, args.beta)
    if args.half is None or args.breakpoints is None:
        raise BadParams('generalized-wagner needs --N and --breakpoints')
    return gen_generalized_wagner(args.n, args.half, args.breakpoints, args.beta)


def cmd_gen_ineq(args) -> int:
    instance, inequality = _generate(args)
    _emit(args, instance, inequality)
    return 0


def cmd_separate(args) -> int:
    inst = load_instance(args.instance)
    x = load_point(args.point, inst.edge_count)
    result = SeparationResult()
    for family in args.families:
        if family == 'path':
            result = result + separate_paths(inst, x)
        elif family == 'star':
            result = result + separate_stars_on_tree(inst, x, args.k)
        elif family == 'tree':
            result = result + separate_trees_on_tree(inst, x, args.l)
        else:
            raise BadParams('Unknown separation family {!r}'.format(family))
    sys.stdout.write(format_separation(result))
    return 0


def _require(args, *names: str) -> None:
    missing = ['--' + name.replace('_', '-') for name in names if getattr(args, name) is None]
    if missing:
        raise BadParams('--op {} needs {}'.format(args.op, ', '.join(missing)))


def cmd_lift(args) -> int:
    inst = load_instance(args.instance)
    ineq = load_inequalities(args.inequality, inst.edge_count)[0]
    if args.op == 'split':
        _require(args, 'node')
        if not 0 <= args.node < inst.graph.node_count:
            raise BadParams('Node {} is not in the instance'.format(args.node))
        moved = set(args.side2 or ())
        sides = {e: (2 if e in moved else 1) for e in inst.graph.incident_edges(args.node)}
        replacement: Dict[Tuple[int, int], Tuple[int, ...]] = dict(args.replace or ())
        result = lift_node_split(inst, ineq, args.node, sides, replacement, budget=args.budget)
    elif args.op == 'subdivide':
        _require(args, 'edge')
        result = lift_subdivide(inst, ineq, args.edge, 2)
    elif args.op == 'replace-path':
        _require(args, 'edge', 'length')
        result = lift_subdivide(inst, ineq, args.edge, args.length)
    else:
        _require(args, 'subgraph', 's', 't')
        result = contract_subgraph_to_edge(inst, ineq, args.subgraph, args.s, args.t)
    sys.stdout.write(format_lift_result(result))
    _emit(args, result.instance, result.inequality)
    return 0


def cmd_reproduce(args) -> int:
    report = run_reproduce(pattern=args.filter, threads=args.threads, budget=args.budget)
    sys.stdout.write(report.format())
    return report.exit_code


def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='multicut-lab', description='Exact tools for minimum multicut and its dominant polyhedron.')
    parser.add_argument('--budget', type=int, default=None, help='enumeration budget (partitions/subsets)')
    parser.add_argument('--threads', type=int, default=1, help='parallel checks in reproduce')
    verbosity = parser.add_mutually_exclusive_group()
    verbosity.add_argument('-v', '--verbose', action='store_true', help='debug logging')
    verbosity.add_argument('-q', '--quiet', action='store_true', help='warnings only')
    sub = parser.add_subparsers(dest='command', metavar='command')
    sub.required = True

    p = sub.add_parser('solve', help='minimum multicut by branch and cut')
    p.add_argument('instance')
    p.add_argument('--families', type=_families, default=('path', 'star', 'tree'))
    p.add_argument('--oracle', choices=('brute', 'none'), default='none')
    p.add_argument('--max-nodes', type=int, default=None)
    p.add_argument('--stats', action='store_true')
    p.set_defaults(func=cmd_solve)

    p = sub.add_parser('enum-multicuts', help='list all minimal multicuts')
    p.add_argument('instance')
    p.set_defaults(func=cmd_enum_multicuts)

    p = sub.add_parser('facets', help='H-representation of the multicut dominant')
    p.add_argument('instance')
    p.set_defaults(func=cmd_facets)

    p = sub.add_parser('check-ineq', help='validity, face dimension and facet verdicts')
    p.add_argument('instance')
    p.add_argument('inequality')
    p.add_argument('--shared', action='store_true', help='also test the multicut polytope')
    p.set_defaults(func=cmd_check_ineq)

    p = sub.add_parser('check-description', help='compare a candidate system with the facets')
    p.add_argument('instance')
    p.add_argument('inequalities')
    p.set_defaults(func=cmd_check_description)

    p = sub.add_parser('gen-ineq', help='emit a named facet family', description=GEN_INEQ_INDEXING,
                       formatter_class=argparse.RawDescriptionHelpFormatter)
    p.add_argument('--family', choices=GENERATORS, required=True)
    p.add_argument('--n', type=int, required=True)
    p.add_argument('--k', type=int, default=2)
    p.add_argument('--N', dest='half', type=int, default=None)
    p.add_argument('--breakpoints', type=_int_list, default=None)
    p.add_argument('--beta', type=int, default=1, help='coefficient on even cycle edges, 1 or 2')
    p.add_argument('--out', default=None, help='write OUT.mc and OUT.ineq instead of stdout')
    p.set_defaults(func=cmd_gen_ineq)

    p = sub.add_parser('separate', help='violated inequalities at a point')
    p.add_argument('instance')
    p.add_argument('point')
    p.add_argument('--families', type=_families, default=('path',))
    p.add_argument('--k', type=int, default=3)
    p.add_argument('--l', type=int, default=3)
    p.set_defaults(func=cmd_separate)

    p = sub.add_parser('lift', help='transfer an inequality through a graph operation')
    p.add_argument('instance')
    p.add_argument('inequality')
    p.add_argument('--op', choices=('split', 'subdivide', 'replace-path', 'contract-subgraph'), required=True)
    p.add_argument('--node', type=int)
    p.add_argument('--side2', type=_int_list, help='edges moved to the new node')
    p.add_argument('--replace', type=_pair_sides, action='append', help='S,T=SIDES pair replacement')
    p.add_argument('--edge', type=int)
    p.add_argument('--length', type=int)
    p.add_argument('--subgraph', type=_int_list)
    p.add_argument('--s', type=int)
    p.add_argument('--t', type=int)
    p.add_argument('--out', default=None)
    p.set_defaults(func=cmd_lift)

    p = sub.add_parser('reproduce', help='run the result and conjecture checks')
    p.add_argument('--filter', default=None, help='only checks whose name contains FILTER')
    p.set_defaults(func=cmd_reproduce)
    return parser


def main(argv: Optional[Sequence[str]] = None) -> int:
    args = build_parser().parse_args(argv)
    level = logging.DEBUG if args.verbose else logging.WARNING if args.quiet else logging.INFO
    logging.basicConfig(level=level, format='%(levelname)s %(name)s: %(message)s')
    try:
        return args.func(args)
    except MulticutError as e:
        print('error: {}'.format(e.message), file=sys.stderr)
        return e.code
    except OSError as e:
        print('error: {}'.format(e), file=sys.stderr)
        return 2
