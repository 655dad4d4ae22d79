from unittest import TestCase

from hypothesis import given, settings, strategies as st

from multicutlab import exceptions
from multicutlab.facets import face_dimension
from multicutlab.graph import MulticutInstance, subdivide_edge
from multicutlab.hull import dd_convert
from multicutlab.inequality import edge_and_path_system, gen_circular_star, gen_complete_star, gen_tree_ineq
from multicutlab.multicut import enumerate_minimal_multicuts, min_multicut_bruteforce
from multicutlab.oracles import (
    all_multicuts, min_multicut_by_subsets, minimal_multicuts_by_subsets, naive_face_dimension, naive_facets,
    naive_star_separation, naive_tree_separation,
)
from multicutlab.reproduce import random_instance
from multicutlab.separation import separate_stars_on_tree, separate_trees_on_tree

small_points = st.lists(st.tuples(st.integers(0, 2), st.integers(0, 2), st.integers(0, 2)), min_size=1, max_size=6)
quarters = st.fractions(0, 1, max_denominator=4)


def subdivided(inst, edges):
    graph = inst.graph
    for e in sorted(set(edges), reverse=True):
        graph, _ = subdivide_edge(graph, e)
    return MulticutInstance(graph, inst.pairs)


class TestOracles(TestCase):
    def test_allMulticuts_k13(self):
        inst, _ = gen_complete_star(3)
        self.assertEqual(all_multicuts(inst), [(0, 1), (0, 1, 2), (0, 2), (1, 2)])

    def test_subsets_budget(self):
        inst, _ = gen_complete_star(3)
        with self.assertRaises(exceptions.BudgetExceeded):
            all_multicuts(inst, budget=4)

    def test_naiveStarSeparation_k13(self):
        inst, star = gen_complete_star(3)
        self.assertEqual(naive_star_separation(inst, [1, 0, 0], 3), {star})

    @settings(max_examples=30, deadline=None)
    @given(st.randoms(use_true_random=False), st.integers(1, 4))
    def test_enumerator_matchesSubsetFilter(self, rng, pair_count):
        inst = random_instance(rng, 9, pair_count)
        self.assertEqual(enumerate_minimal_multicuts(inst), minimal_multicuts_by_subsets(inst))

    @settings(max_examples=30, deadline=None)
    @given(st.randoms(use_true_random=False), st.integers(1, 3))
    def test_bruteforce_matchesSubsetMinimum(self, rng, pair_count):
        inst = random_instance(rng, 8, pair_count, max_weight=5)
        self.assertEqual(min_multicut_bruteforce(inst)[1], min_multicut_by_subsets(inst, inst.weights))

    @settings(max_examples=30, deadline=None)
    @given(small_points)
    def test_doubleDescription_matchesNaiveFacets(self, points):
        rays = [(1, 0, 0), (0, 1, 0), (0, 0, 1)]
        self.assertEqual(set(dd_convert(points, rays).facets), naive_facets(points, rays))

    @settings(max_examples=20, deadline=None)
    @given(st.randoms(use_true_random=False), st.integers(1, 3))
    def test_faceDimension_matchesNaive(self, rng, pair_count):
        inst = random_instance(rng, 8, pair_count)
        for ineq in edge_and_path_system(inst):
            self.assertEqual(face_dimension(inst, ineq), naive_face_dimension(inst, ineq))

    @settings(max_examples=20, deadline=None)
    @given(st.lists(st.fractions(0, 1, max_denominator=4), min_size=3, max_size=3))
    def test_starSeparation_matchesNaive(self, point):
        inst, _ = gen_complete_star(3)
        fast = {ineq.normalize() for ineq in separate_stars_on_tree(inst, point, 3).inequalities}
        self.assertEqual(fast, naive_star_separation(inst, point, 3))

    @settings(max_examples=20, deadline=None)
    @given(st.data(), st.sampled_from([3, 4, 5]))
    def test_starSeparation_subdividedMatchesNaive(self, data, k):
        base, _ = gen_circular_star(k) if k == 5 else gen_complete_star(k)
        inst = subdivided(base, data.draw(st.lists(st.integers(0, k - 1), max_size=2)))
        point = data.draw(st.lists(quarters, min_size=inst.edge_count, max_size=inst.edge_count))
        fast = set(separate_stars_on_tree(inst, point, k).inequalities)
        self.assertEqual(fast, naive_star_separation(inst, point, k))

    @settings(max_examples=15, deadline=None)
    @given(st.data())
    def test_treeSeparation_subdividedMatchesNaive(self, data):
        base, _ = gen_tree_ineq(3, 2)
        inst = subdivided(base, data.draw(st.lists(st.integers(0, base.edge_count - 1), max_size=2)))
        point = data.draw(st.lists(quarters, min_size=inst.edge_count, max_size=inst.edge_count))
        fast = set(separate_trees_on_tree(inst, point, 3).inequalities)
        self.assertEqual(fast, naive_tree_separation(inst, point, 3))
