from fractions import Fraction
from unittest import TestCase

from multicutlab import exceptions
from multicutlab.facets import (
    FacetCertificate, affine_rank, analyze, face_dimension, is_facet, is_shared_facet, is_valid,
    face_rays, polytope_face_dimension, structural_checks, tight_multicuts,
)
from multicutlab.graph import MulticutInstance, path_graph
from multicutlab.inequality import (
    LinearInequality, even_circular_star, gen_circular_star, gen_complete_star, gen_edge_ineq, gen_tree_ineq,
    star_instance,
)


class TestValidity(TestCase):
    def setUp(self) -> None:
        self.inst, self.star = gen_complete_star(3)

    def test_isValid_completeStar(self):
        self.assertTrue(is_valid(self.inst, self.star))

    def test_isValid_counterexample(self):
        result = is_valid(self.inst, LinearInequality([1, 1, 1], 3))
        self.assertFalse(result)
        self.assertEqual(result.counterexample, (0, 1))

    def test_isValid_negativeCoefficient(self):
        result = is_valid(self.inst, LinearInequality([1, -1, 1], 0))
        self.assertFalse(result)
        self.assertEqual(result.negative_edge, 1)

    def test_isValid_dimensionMismatch(self):
        with self.assertRaises(exceptions.DimensionMismatch):
            is_valid(self.inst, LinearInequality([1, 1], 1))

    def test_tightMulticuts(self):
        self.assertEqual(tight_multicuts(self.inst, self.star), [(0, 1), (0, 2), (1, 2)])


class TestFaceDimension(TestCase):
    def test_completeStar_isSharedFacet(self):
        inst, ineq = gen_complete_star(3)
        self.assertEqual(face_dimension(inst, ineq), 2)
        self.assertTrue(is_facet(inst, ineq))
        self.assertTrue(is_shared_facet(inst, ineq))

    def test_edgeBound_facetOfDominantOnly(self):
        inst, _ = gen_complete_star(3)
        bound = gen_edge_ineq(inst, 0)
        self.assertTrue(is_facet(inst, bound))
        self.assertEqual(polytope_face_dimension(inst, bound), 0)
        self.assertFalse(is_shared_facet(inst, bound))

    def test_pathInequality_isFacet(self):
        inst = MulticutInstance(path_graph(2), [(0, 2)])
        self.assertTrue(is_facet(inst, LinearInequality([1, 1], 1)))

    def test_weakInequality_notAFacet(self):
        inst, _ = gen_complete_star(3)
        weak = LinearInequality([1, 1, 1], 1)
        self.assertFalse(is_facet(inst, weak))
        with self.assertRaises(exceptions.NotAFacet):
            is_shared_facet(inst, weak)

    def test_faceDimension_invalid(self):
        inst, _ = gen_complete_star(3)
        with self.assertRaises(exceptions.NotValid):
            face_dimension(inst, LinearInequality([1, 1, 1], 3))

    def test_circularStar_five(self):
        inst, ineq = gen_circular_star(5)
        self.assertTrue(is_facet(inst, ineq))

    def test_evenCircularStar_validButNotFacet(self):
        inst, ineq = even_circular_star(4)
        self.assertTrue(is_valid(inst, ineq))
        self.assertEqual(face_dimension(inst, ineq), 1)
        self.assertFalse(is_facet(inst, ineq))

    def test_tree_threeTwo(self):
        inst, ineq = gen_tree_ineq(3, 2)
        self.assertTrue(is_facet(inst, ineq))


class TestAffineRank(TestCase):
    def test_affineRank(self):
        self.assertEqual(affine_rank([[0, 0], [1, 0], [0, 1]]), 2)
        self.assertEqual(affine_rank([[1, 1], [2, 2], [3, 3]]), 1)
        self.assertEqual(affine_rank([[Fraction(1, 2), 0]]), 0)

    def test_affineRank_empty(self):
        with self.assertRaises(exceptions.Empty):
            affine_rank([])

    def test_certificate_verifyRecomputesRank(self):
        inst, ineq = gen_complete_star(3)
        certificate = FacetCertificate([(0, 1), (0, 2), (1, 2)], (), 3)
        self.assertEqual(certificate.verify(ineq), 2)

    def test_certificate_pointOffFace(self):
        certificate = FacetCertificate([(0, 1, 2)], (), 3)
        with self.assertRaises(exceptions.NotValid):
            certificate.verify(LinearInequality([1, 1, 1], 2))


class TestAnalyze(TestCase):
    def test_analyze_facetReport(self):
        inst, ineq = gen_complete_star(3)
        report = analyze(inst, ineq)
        self.assertTrue(report.valid)
        self.assertEqual(len(report.tight_vertices), 3)
        self.assertEqual(report.face_dim, 2)
        self.assertTrue(report.is_facet)
        self.assertTrue(report.is_shared)
        self.assertTrue(report.bounded)
        self.assertEqual(report.certificate.verify(ineq), 2)

    def test_analyze_invalid(self):
        inst, _ = gen_complete_star(3)
        report = analyze(inst, LinearInequality([1, 1, 1], 3))
        self.assertFalse(report.valid)
        self.assertEqual(report.face_dim, -1)
        self.assertEqual(report.violation.counterexample, (0, 1))

    def test_analyze_withoutShared(self):
        inst, ineq = gen_complete_star(3)
        self.assertIsNone(analyze(inst, ineq, shared=False).is_shared)


class TestStructuralChecks(TestCase):
    def test_completeStar_passes(self):
        inst, ineq = gen_complete_star(4)
        report = structural_checks(inst, ineq)
        self.assertTrue(report.passed)
        self.assertFalse(report.edge_bound)
        self.assertTrue(report.bounded)

    def test_edgeBound_shortCircuits(self):
        inst, _ = gen_complete_star(3)
        report = structural_checks(inst, gen_edge_ineq(inst, 2))
        self.assertTrue(report.edge_bound)
        self.assertTrue(report.passed)

    def test_treeFacet_passes(self):
        inst, ineq = gen_tree_ineq(3, 2)
        self.assertTrue(structural_checks(inst, ineq).passed)

    def test_nonFacet_rejected(self):
        inst, _ = gen_complete_star(3)
        with self.assertRaises(exceptions.NotAFacet):
            structural_checks(inst, LinearInequality([1, 1, 1], 1))

    def test_zeroCoefficientFacet_isUnbounded(self):
        inst = star_instance(4, [(1, 2), (1, 3), (2, 3)])
        ineq = LinearInequality([1, 1, 1, 0], 2)
        report = structural_checks(inst, ineq)
        self.assertFalse(report.bounded)
        self.assertTrue(report.boundedness)
        self.assertTrue(report.passed)
        self.assertFalse(analyze(inst, ineq, shared=False).bounded)


class TestFaceRays(TestCase):
    def test_faceRays_fromTightVertex(self):
        inst = star_instance(4, [(1, 2), (1, 3), (2, 3)])
        ineq = LinearInequality([1, 1, 1, 0], 2)
        self.assertEqual(face_rays(inst, ineq, tight_multicuts(inst, ineq)), (3,))

    def test_faceRays_fullSupportHasNone(self):
        inst, ineq = gen_complete_star(3)
        self.assertEqual(face_rays(inst, ineq, tight_multicuts(inst, ineq)), ())

    def test_faceRays_emptyFace(self):
        inst, _ = gen_complete_star(3)
        self.assertEqual(face_rays(inst, LinearInequality([1, 1, 1], 3), []), ())
