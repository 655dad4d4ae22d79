from fractions import Fraction
from unittest import TestCase

from multicutlab import exceptions
from multicutlab.facets import is_facet
from multicutlab.graph import MulticutInstance, cycle_graph, path_graph
from multicutlab.inequality import (
    LinearInequality, gen_complete_star, gen_generalized_wagner, gen_tree_ineq, star_instance,
)
from multicutlab.lifting import (
    contract_subgraph_to_edge, derive_generalized_wagner, lift_node_split, lift_subdivide, lift_zero,
    restrict_to_support, splitted_claw_chain, two_component_report,
)


def path_instance():
    return MulticutInstance(path_graph(3), [(0, 3)]), LinearInequality([1, 1, 1], 1)


class TestLiftZero(TestCase):
    def test_liftZero_padsWithZeros(self):
        inst, star = gen_complete_star(3)
        target = star_instance(4, [(1, 2), (1, 3), (2, 3)])
        result = lift_zero(inst, star, target)
        self.assertEqual(result.inequality.coeffs, (1, 1, 1, 0))
        self.assertEqual(result.inequality.rhs, 2)
        self.assertTrue(all(result.hypotheses.values()))
        self.assertTrue(is_facet(target, result.inequality))

    def test_liftZero_reportsPairNextToSubgraph(self):
        inst, star = gen_complete_star(3)
        target = star_instance(4, [(1, 2), (1, 3), (2, 3), (1, 4)])
        result = lift_zero(inst, star, target)
        self.assertFalse(result.hypotheses['no-pair-next-to-subgraph'])
        self.assertTrue(result.hypotheses['induced'])
        self.assertEqual(len(result.notes), 1)

    def test_liftZero_terminalMismatch(self):
        inst, star = gen_complete_star(3)
        with self.assertRaises(exceptions.TerminalMismatch):
            lift_zero(inst, star, star_instance(4, [(1, 2), (1, 3)]))

    def test_liftZero_notASubgraph(self):
        inst, star = gen_complete_star(3)
        with self.assertRaises(exceptions.NotASubgraph):
            lift_zero(inst, star, MulticutInstance(cycle_graph(4), [(1, 2), (1, 3), (2, 3)]))


class TestSubdivideAndContract(TestCase):
    def test_liftSubdivide_copiesCoefficient(self):
        inst = MulticutInstance(path_graph(1), [(0, 1)])
        result = lift_subdivide(inst, LinearInequality([1], 1), 0, 3)
        self.assertEqual(result.inequality.coeffs, (1, 1, 1))
        self.assertEqual(result.instance.edge_count, 3)
        self.assertEqual(result.instance.pairs, ((0, 1),))

    def test_contractSubgraph_pathSegment(self):
        inst, ineq = path_instance()
        result = contract_subgraph_to_edge(inst, ineq, [0, 1], 0, 2)
        self.assertEqual(result.omega, Fraction(1))
        self.assertEqual(result.instance.edge_count, 2)
        self.assertEqual(result.inequality.coeffs, (1, 1))
        self.assertEqual(result.instance.pairs, ((0, 2),))

    def test_subdivideThenContract_roundTrip(self):
        inst, star = gen_complete_star(3)
        subdivided = lift_subdivide(inst, star, 0, 2)
        back = contract_subgraph_to_edge(subdivided.instance, subdivided.inequality, [2, 3], 0, 1)
        self.assertEqual(back.instance, inst)
        self.assertEqual((back.inequality.coeffs, back.inequality.rhs), (star.coeffs, star.rhs))

    def test_contractSubgraph_terminalInside(self):
        inst = MulticutInstance(path_graph(3), [(1, 3)])
        with self.assertRaises(exceptions.TerminalInside):
            contract_subgraph_to_edge(inst, LinearInequality([0, 1, 1], 1), [0, 1], 0, 2)

    def test_contractSubgraph_badAttachment(self):
        inst, ineq = path_instance()
        with self.assertRaises(exceptions.BadAttachment):
            contract_subgraph_to_edge(inst, ineq, [0, 1], 1, 1)
        with self.assertRaises(exceptions.BadAttachment):
            contract_subgraph_to_edge(inst, ineq, [0, 2], 0, 3)
        with self.assertRaises(exceptions.BadAttachment):
            contract_subgraph_to_edge(inst, ineq, [0, 1], 0, 1)


class TestNodeSplit(TestCase):
    def test_nodeSplit_notInSupport(self):
        inst, _ = gen_complete_star(3)
        with self.assertRaises(exceptions.NodeNotInSupport):
            lift_node_split(inst, LinearInequality([1, 1, 0], 1), 3, {2: 1})

    def test_nodeSplit_badReplacement(self):
        inst, star = gen_complete_star(3)
        with self.assertRaises(exceptions.BadParams):
            lift_node_split(inst, star, 1, {0: 1}, {(2, 3): (1,)})
        with self.assertRaises(exceptions.BadParams):
            lift_node_split(inst, star, 1, {0: 1}, {(1, 2): (3,)})

    def test_nodeSplit_rejectsSlackInequality(self):
        inst, _ = gen_complete_star(3)
        with self.assertRaises(exceptions.NotValid):
            lift_node_split(inst, LinearInequality([1, 1, 1], 1), 1, {0: 1})

    def test_splittedClawChain_endsAtTreeInequality(self):
        steps = splitted_claw_chain()
        self.assertEqual([step.omega for step in steps], [1] * 6)
        inst, tree = gen_tree_ineq(3, 2)
        final = steps[-1]
        self.assertEqual(final.instance, inst)
        self.assertEqual((final.inequality.coeffs, final.inequality.rhs), (tree.coeffs, tree.rhs))

    def test_deriveGeneralizedWagner(self):
        steps, inst, ineq = derive_generalized_wagner(5, 6, (1, 2, 3, 4, 6))
        self.assertEqual([step.omega for step in steps], [2, 1])
        target_inst, target = gen_generalized_wagner(5, 6, (1, 2, 3, 4, 6))
        self.assertEqual(inst, target_inst)
        self.assertEqual((ineq.coeffs, ineq.rhs), (target.coeffs, target.rhs))

    def test_deriveGeneralizedWagner_noSmallerCycle(self):
        with self.assertRaises(exceptions.BadBreakpoints):
            derive_generalized_wagner(5, 6, (1, 3, 4, 5, 6))


class TestSupportAndReplacement(TestCase):
    def test_restrictToSupport_dropsZeroEdges(self):
        inst = star_instance(4, [(1, 2), (1, 3), (2, 3)])
        result = restrict_to_support(inst, LinearInequality([1, 1, 1, 0], 2))
        self.assertEqual(result.instance.edge_count, 3)
        self.assertEqual(result.inequality.coeffs, (1, 1, 1))
        self.assertEqual(len(result.instance.pairs), 3)

    def test_restrictToSupport_rejectsNonFacet(self):
        inst, _ = gen_complete_star(3)
        with self.assertRaises(exceptions.NotAFacet):
            restrict_to_support(inst, LinearInequality([1, 1, 1], 1))

    def test_twoComponentReport_triangleGadget(self):
        inst = MulticutInstance(path_graph(1), [(0, 1)])
        report = two_component_report(inst, 0, cycle_graph(3), 0, 1)
        self.assertTrue(report.consistent)
        self.assertEqual(len(report.explained), 4)
