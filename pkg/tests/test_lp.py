from fractions import Fraction
from unittest import TestCase

from multicutlab import exceptions
from multicutlab.inequality import LinearInequality
from multicutlab.lp import LPProblem, lp_solve


class TestLPProblem(TestCase):
    def test_addRow_deduplicatesProportionalRows(self):
        problem = LPProblem([1, 1])
        self.assertTrue(problem.add_row(LinearInequality([1, 1], 1)))
        self.assertFalse(problem.add_row(LinearInequality([2, 2], 2)))
        self.assertEqual(len(problem.rows), 1)
        self.assertIn(LinearInequality([3, 3], 3), problem)

    def test_addRow_dimensionMismatch(self):
        with self.assertRaises(exceptions.DimensionMismatch):
            LPProblem([1, 1], [LinearInequality([1], 1)])


class TestLPSolve(TestCase):
    def test_singleCoveringRow(self):
        result = lp_solve(LPProblem([1, 1], [LinearInequality([1, 1], 1)]))
        self.assertEqual(result.value, Fraction(1))
        self.assertEqual(sum(result.point), Fraction(1))

    def test_rationalOptimum(self):
        point, value = lp_solve(LPProblem([1], [LinearInequality([1], Fraction(1, 2))]))
        self.assertEqual(point, (Fraction(1, 2),))
        self.assertEqual(value, Fraction(1, 2))

    def test_fractionalCover(self):
        rows = [LinearInequality([1, 1, 0], 1), LinearInequality([0, 1, 1], 1), LinearInequality([1, 0, 1], 1)]
        result = lp_solve(LPProblem([1, 1, 1], rows))
        self.assertEqual(result.value, Fraction(3, 2))
        self.assertEqual(result.point, (Fraction(1, 2),) * 3)

    def test_upperBoundRows(self):
        rows = [LinearInequality([-1, 0], -2), LinearInequality([0, -1], -3)]
        result = lp_solve(LPProblem([-1, -1], rows))
        self.assertEqual(result.value, Fraction(-5))
        self.assertEqual(result.point, (Fraction(2), Fraction(3)))

    def test_infeasible(self):
        rows = [LinearInequality([1], 1), LinearInequality([-1], 0)]
        with self.assertRaises(exceptions.Infeasible):
            lp_solve(LPProblem([1], rows))

    def test_unbounded(self):
        with self.assertRaises(exceptions.Unbounded):
            lp_solve(LPProblem([-1]))

    def test_noRowsZeroObjective(self):
        result = lp_solve(LPProblem([1, 2]))
        self.assertEqual(result.value, Fraction(0))
        self.assertEqual(result.pivots, 0)
