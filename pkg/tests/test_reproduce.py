import random
from fractions import Fraction
from unittest import TestCase

from multicutlab import exceptions
from multicutlab.graph import is_tree
from multicutlab.inequality import gen_complete_star
from multicutlab.reproduce import (
    BUDGET, ERROR, FAIL, PASS, STRUCTURAL_SOURCES, Check, criterion_facets, default_checks, random_instance,
    run_reproduce,
)


def _constant(rng, budget, value):
    return {'value': value}


def _over_budget(rng, budget):
    raise exceptions.BudgetExceeded('too many partitions')


def _broken(rng, budget):
    raise RuntimeError('boom')


def _draw(rng, budget):
    return {'draw': rng.randint(0, 10 ** 6)}


class TestRandomInstance(TestCase):
    def test_randomInstance_connectedAndBounded(self):
        rng = random.Random(7)
        for _ in range(20):
            inst = random_instance(rng, 6, 2, max_weight=4)
            self.assertLessEqual(inst.edge_count, 6)
            self.assertEqual(len(inst.pairs), 2)
            self.assertTrue(all(1 <= w <= 4 for w in inst.weights))

    def test_randomInstance_treeWhenEdgesTight(self):
        rng = random.Random(3)
        inst = random_instance(rng, 2, 1)
        self.assertTrue(is_tree(inst.graph))


class TestCheck(TestCase):
    def test_check_pass(self):
        result = Check('constant', 'sanity', {'value': 3}, {'value': 3}, _constant).run()
        self.assertEqual(result.status, PASS)
        self.assertEqual(result.diff, [])

    def test_check_failShowsDiff(self):
        result = Check('constant', 'sanity', {'value': Fraction(1, 2)}, {'value': 1}, _constant).run()
        self.assertEqual(result.status, FAIL)
        self.assertEqual(result.diff, ['value: expected 1, got 1/2'])
        self.assertIn('value: expected 1, got 1/2', result.format())

    def test_check_budgetAndError(self):
        self.assertEqual(Check('slow', 'sanity', {}, {}, _over_budget).run().status, BUDGET)
        self.assertEqual(Check('broken', 'sanity', {}, {}, _broken).run().status, ERROR)

    def test_check_seededByName(self):
        first = Check('seeded', 'sanity', {}, {}, _draw).run().observed
        second = Check('seeded', 'sanity', {}, {}, _draw).run().observed
        self.assertEqual(first, second)


class TestRunReproduce(TestCase):
    def checks(self):
        return [
            Check('one', 'a', {'value': 1}, {'value': 1}, _constant),
            Check('two', 'b', {'value': 2}, {'value': 2}, _constant),
            Check('three', 'c', {'value': 3}, {'value': 3}, _constant),
        ]

    def test_runReproduce_allPass(self):
        report = run_reproduce(self.checks())
        self.assertEqual(report.exit_code, 0)
        self.assertTrue(report.format().endswith('summary 3 pass, 0 fail, 0 budget, 0 error\n'))

    def test_runReproduce_threadsKeepOrder(self):
        report = run_reproduce(self.checks(), threads=3)
        self.assertEqual([r.check.name for r in report], ['one', 'two', 'three'])

    def test_runReproduce_filter(self):
        report = run_reproduce(self.checks(), pattern='t')
        self.assertEqual([r.check.name for r in report], ['two', 'three'])

    def test_runReproduce_exitCodes(self):
        budget_only = self.checks() + [Check('slow', 'd', {}, {}, _over_budget)]
        self.assertEqual(run_reproduce(budget_only).exit_code, 3)
        failing = budget_only + [Check('bad', 'e', {'value': 1}, {'value': 2}, _constant)]
        self.assertEqual(run_reproduce(failing).exit_code, 1)

    def test_defaultChecks_namesAndFilter(self):
        names = [check.name for check in default_checks()]
        self.assertEqual(len(names), len(set(names)))
        self.assertIn('solver', names)
        selected = [check.name for check in default_checks() if 'wagner' in check.name]
        self.assertEqual(selected, ['wagner', 'generalized-wagner'])

    def test_defaultChecks_circularStar(self):
        report = run_reproduce(pattern='circular-star')
        self.assertEqual([r.check.name for r in report], ['circular-star'])
        self.assertEqual(report.exit_code, 0)

    def test_defaultChecks_completeStar(self):
        report = run_reproduce(pattern='complete-star')
        self.assertEqual(report.exit_code, 0)

    def test_structuralSources_followManifest(self):
        checks = {check.name: check for check in default_checks()}
        for name in STRUCTURAL_SOURCES:
            self.assertIn(name, checks)
        self.assertEqual(checks['structural'].params['sources'], STRUCTURAL_SOURCES)

    def test_criterionFacets_completeStar(self):
        cases = criterion_facets(['complete-star'])
        expected = [gen_complete_star(n) for n in (2, 3, 4, 5)]
        self.assertEqual([(inst, ineq.coeffs, ineq.rhs) for inst, ineq in cases],
                         [(inst, ineq.coeffs, ineq.rhs) for inst, ineq in expected])

    def test_structural_runsOnCriterionFacets(self):
        structural = next(check for check in default_checks() if check.name == 'structural')
        check = Check('structural-stars', 'stars', {'sources': ('complete-star',)}, {'facets': 4, 'failures': 0},
                      structural.compute)
        self.assertEqual(check.run().status, PASS)
