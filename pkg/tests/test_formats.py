import os
from fractions import Fraction
from unittest import TestCase

from multicutlab import exceptions
from multicutlab.facets import analyze
from multicutlab.formats import (
    format_facet_report, format_inequalities, format_instance, format_separation, load_instance,
    parse_inequalities, parse_inequality, parse_instance, parse_point,
)
from multicutlab.inequality import LinearInequality, gen_complete_star
from multicutlab.separation import separate_paths

FIXTURES = os.path.join(os.path.dirname(__file__), 'fixtures')


class TestInstanceFormat(TestCase):
    def test_loadInstance_fixtureMatchesGenerator(self):
        inst = load_instance(os.path.join(FIXTURES, 'k13-complete.mc'))
        self.assertEqual(inst, gen_complete_star(3)[0])
        with open(os.path.join(FIXTURES, 'k13-complete.mc')) as fh:
            self.assertEqual(format_instance(inst), fh.read())

    def test_parseInstance_commentsAndWeights(self):
        text = '# a path\nnodes 3\nedge 1 2 weight 1/2\nedge 0 1 weight 3  # heavy\npair 0 2\n'
        inst = parse_instance(text)
        self.assertEqual(inst.graph.edges, ((0, 1), (1, 2)))
        self.assertEqual(inst.weights, (Fraction(3), Fraction(1, 2)))
        self.assertEqual(format_instance(inst), 'nodes 3\nedge 0 1 weight 3\nedge 1 2 weight 1/2\npair 0 2\n')

    def test_parseInstance_reportsLine(self):
        cases = [
            'nodes 3\nedge 0 1\npair 1 1\n',
            'nodes 3\nedge 0 1\nedge 1 0\n',
            'nodes 3\nedge 0 0\n',
            'nodes 3\nedge 0 5\n',
            'nodes 3\nedge 0 1 weight -1\n',
            'nodes 3\nedge 0 1 3\n',
            'nodes 3\nedge 0 1 weight\n',
            'nodes 3\ntriangle 0 1 2\n',
        ]
        for text in cases:
            with self.assertRaises(exceptions.ParseError) as ctx:
                parse_instance(text)
            self.assertEqual(ctx.exception.line, text.count('\n'))

    def test_parseInstance_weightNeedsKeyword(self):
        with self.assertRaises(exceptions.InvalidArgument):
            parse_instance('nodes 2\nedge 0 1 3/2\npair 0 1\n')

    def test_parseInstance_nodesFirst(self):
        with self.assertRaises(exceptions.ParseError):
            parse_instance('edge 0 1\nnodes 2\n')
        with self.assertRaises(exceptions.ParseError):
            parse_instance('# empty\n')


class TestInequalityFormat(TestCase):
    def test_parseInequalities(self):
        rows = parse_inequalities('ineq 2 <= 1 1 1\nineq 1 <= 1 1 0\n', 3)
        self.assertEqual(rows, [LinearInequality([1, 1, 1], 2), LinearInequality([1, 1, 0], 1)])
        self.assertEqual(format_inequalities(rows), 'ineq 2 <= 1 1 1\nineq 1 <= 1 1 0\n')

    def test_parseInequalities_rejectsRationalsAndLengths(self):
        with self.assertRaises(exceptions.ParseError):
            parse_inequalities('ineq 1 <= 1/2 1\n')
        with self.assertRaises(exceptions.ParseError):
            parse_inequalities('ineq 1 <= 1 1\nineq 1 <= 1 1 1\n')
        with self.assertRaises(exceptions.ParseError):
            parse_inequalities('ineq 1 >= 1 1\n')

    def test_parseInequality_exactlyOne(self):
        with self.assertRaises(exceptions.ParseError):
            parse_inequality('')
        self.assertEqual(parse_inequality('ineq 0 <= 0 1').coeffs, (0, 1))

    def test_parsePoint(self):
        self.assertEqual(parse_point('1/2 0\n1\n', 3), (Fraction(1, 2), Fraction(0), Fraction(1)))
        with self.assertRaises(exceptions.ParseError):
            parse_point('1 1', 3)


class TestReports(TestCase):
    def test_formatFacetReport_completeStar(self):
        inst, star = gen_complete_star(3)
        text = format_facet_report(analyze(inst, star))
        self.assertEqual(text, 'valid yes\ntight-vertices 3\nface-dimension 2\nfacet yes\nshared yes\nbounded yes\n')

    def test_formatFacetReport_counterexample(self):
        inst, _ = gen_complete_star(3)
        text = format_facet_report(analyze(inst, LinearInequality([1, 1, 1], 3)))
        self.assertTrue(text.startswith('valid no\ncounterexample 0 1\n'))

    def test_formatSeparation(self):
        inst, _ = gen_complete_star(3)
        text = format_separation(separate_paths(inst, [0, Fraction(1, 4), 1]))
        self.assertEqual(text, 'violated 1\nineq 1 <= 1 1 0 # path violation 3/4\n')
