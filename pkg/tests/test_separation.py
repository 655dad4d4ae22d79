from fractions import Fraction
from unittest import TestCase

from multicutlab import exceptions
from multicutlab.graph import MulticutInstance, build_graph, cycle_graph, path_graph
from multicutlab.inequality import LinearInequality, gen_complete_star, gen_tree_ineq
from multicutlab.multicut import enumerate_minimal_multicuts
from multicutlab.separation import (
    SeparationResult, separate_paths, separate_pool, separate_stars_on_tree, separate_trees_on_tree,
)

HALF = Fraction(1, 2)
QUARTER = Fraction(1, 4)


class TestSeparatePaths(TestCase):
    def setUp(self) -> None:
        self.inst, self.star = gen_complete_star(3)

    def test_separatePaths_halfPointSatisfiesAllPaths(self):
        self.assertFalse(separate_paths(self.inst, [HALF] * 3))

    def test_separatePaths_quarterPointViolatesEveryPair(self):
        result = separate_paths(self.inst, [QUARTER] * 3)
        self.assertEqual(len(result), 3)
        self.assertEqual({amount for _, amount in result}, {HALF})
        self.assertIn(LinearInequality([1, 1, 0], 1), result.inequalities)

    def test_separatePaths_orderedByViolation(self):
        result = separate_paths(self.inst, [0, QUARTER, HALF])
        self.assertEqual(result.inequalities[0], LinearInequality([1, 1, 0], 1))
        self.assertEqual([amount for _, amount in result], [Fraction(3, 4), HALF, Fraction(1, 4)])

    def test_separatePaths_rejectsNegativePoint(self):
        with self.assertRaises(exceptions.InvalidArgument):
            separate_paths(self.inst, [1, -1, 1])

    def test_separatePaths_dimensionMismatch(self):
        with self.assertRaises(exceptions.DimensionMismatch):
            separate_paths(self.inst, [0, 0])


class TestSeparatePool(TestCase):
    def test_separatePool_keepsViolatedRowsOnly(self):
        pool = [LinearInequality([1, 1, 1], 2), LinearInequality([1, 0, 0], 0)]
        result = separate_pool([HALF] * 3, pool)
        self.assertEqual(result.inequalities, [LinearInequality([1, 1, 1], 2)])

    def test_separationResult_mergesDuplicates(self):
        row = LinearInequality([1, 1], 1)
        merged = SeparationResult([(row, HALF)]) + SeparationResult([(LinearInequality([2, 2], 2), HALF)])
        self.assertEqual(len(merged), 1)


class TestSeparateOnTrees(TestCase):
    def test_stars_completeStarAtHalf(self):
        inst, star = gen_complete_star(3)
        result = separate_stars_on_tree(inst, [HALF] * 3, 3)
        self.assertEqual(result.inequalities, [star])
        self.assertEqual(result.violated[0][1], HALF)
        self.assertEqual(result.inequalities[0].family, 'subdivided-complete-star')

    def test_stars_integralPointNotSeparated(self):
        inst, _ = gen_complete_star(3)
        self.assertFalse(separate_stars_on_tree(inst, [1, 1, 0], 3))

    def test_stars_subdividedSpokesAtQuarter(self):
        graph = build_graph(7, [(0, 4), (4, 1), (0, 5), (5, 2), (0, 6), (6, 3)])
        inst = MulticutInstance(graph, [(1, 2), (1, 3), (2, 3)])
        result = separate_stars_on_tree(inst, [QUARTER] * 6, 3)
        self.assertEqual(result.inequalities, [LinearInequality([1] * 6, 2)])
        self.assertEqual(result.violated[0][1], HALF)

    def test_trees_treeInequalityFound(self):
        inst, ineq = gen_tree_ineq(3, 2)
        result = separate_trees_on_tree(inst, [Fraction(1, 5)] * inst.edge_count, 3)
        self.assertIn(ineq, result.inequalities)
        amounts = dict(result.violated)
        self.assertEqual(amounts[ineq], Fraction(1, 5))

    def test_trees_pathGraphHasNoTree(self):
        inst = MulticutInstance(path_graph(4), [(0, 4)])
        self.assertFalse(separate_trees_on_tree(inst, [0] * 4, 3))

    def test_trees_multicutPointNotSeparated(self):
        inst, _ = gen_tree_ineq(3, 2)
        delta = enumerate_minimal_multicuts(inst)[0]
        x = [1 if e in delta else 0 for e in range(inst.edge_count)]
        self.assertFalse(separate_trees_on_tree(inst, x, 3))

    def test_trees_rejectsCycle(self):
        inst = MulticutInstance(cycle_graph(4), [(0, 2)])
        with self.assertRaises(exceptions.NotATree):
            separate_trees_on_tree(inst, [0] * 4, 3)
        with self.assertRaises(exceptions.NotATree):
            separate_stars_on_tree(inst, [0] * 4, 3)

    def test_sizeLimits(self):
        inst, _ = gen_complete_star(3)
        with self.assertRaises(exceptions.KTooLarge):
            separate_stars_on_tree(inst, [0] * 3, 7)
        with self.assertRaises(exceptions.BadParams):
            separate_stars_on_tree(inst, [0] * 3, 2)
        with self.assertRaises(exceptions.LTooLarge):
            separate_trees_on_tree(inst, [0] * 3, 7)
        with self.assertRaises(exceptions.BadParams):
            separate_trees_on_tree(inst, [0] * 3, 2)
