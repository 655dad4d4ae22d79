import logging
from typing import Dict, List, Optional, Sequence, Tuple

import networkx as nx

from multicutlab.exceptions import DimensionMismatch, Empty, NotAFacet, NotValid
from multicutlab.graph import MulticutInstance
from multicutlab.inequality import LinearInequality
from multicutlab.multicut import enumerate_minimal_multicuts
from multicutlab._helpers import EdgeSet, Rational, incidence_vector, matrix_rank, to_fractions

logger = logging.getLogger(__name__)


class ValidityResult:
    """Truthy when the inequality is valid; otherwise carries a witness.

    ``counterexample`` is a minimal multicut violating the inequality, or None
    when validity fails because of the negative coefficient at ``negative_edge``.
    """

    def __init__(self, valid: bool, counterexample: Optional[EdgeSet] = None,
                 negative_edge: Optional[int] = None) -> None:
        self.valid = valid
        self.counterexample = counterexample
        self.negative_edge = negative_edge

    def __bool__(self) -> bool:
        return self.valid

    def __repr__(self) -> str:
        return 'ValidityResult(valid={}, counterexample={}, negative_edge={})'.format(
            self.valid, self.counterexample, self.negative_edge)


def _check_dimension(inst: MulticutInstance, ineq: LinearInequality) -> None:
    if ineq.dimension != inst.edge_count:
        raise DimensionMismatch('Inequality has {} coefficients, instance has {} edges'.format(
            ineq.dimension, inst.edge_count))


def _vertices(inst: MulticutInstance, vertices: Optional[Sequence[EdgeSet]], budget: Optional[int]):
    return enumerate_minimal_multicuts(inst, budget) if vertices is None else vertices


def _value(ineq: LinearInequality, delta: EdgeSet) -> int:
    return sum(ineq.coeffs[e] for e in delta)


def is_valid(inst: MulticutInstance, ineq: LinearInequality, vertices: Optional[Sequence[EdgeSet]] = None,
             budget: Optional[int] = None) -> ValidityResult:
    _check_dimension(inst, ineq)
    for e, a in enumerate(ineq.coeffs):
        if a < 0:
            return ValidityResult(False, negative_edge=e)
    for delta in _vertices(inst, vertices, budget):
        if _value(ineq, delta) < ineq.rhs:
            return ValidityResult(False, counterexample=delta)
    return ValidityResult(True)


def tight_multicuts(inst: MulticutInstance, ineq: LinearInequality,
                    vertices: Optional[Sequence[EdgeSet]] = None, budget: Optional[int] = None) -> List[EdgeSet]:
    return [delta for delta in _vertices(inst, vertices, budget) if _value(ineq, delta) == ineq.rhs]


def affine_rank(vectors: Sequence[Sequence[Rational]]) -> int:
    """Dimension of the affine hull, by exact elimination over the rationals."""
    if not vectors:
        raise Empty('affine_rank needs at least one vector')
    width = len(vectors[0])
    if any(len(v) != width for v in vectors):
        raise DimensionMismatch('Vectors of unequal length')
    base = to_fractions(vectors[0])
    differences = [[a - b for a, b in zip(to_fractions(v), base)] for v in vectors[1:]]
    return matrix_rank(differences) if differences and width else 0


class FacetCertificate:
    """Tight vertices and ray witnesses spanning a face; :meth:`verify` recomputes the rank."""

    def __init__(self, tight_vertices: Sequence[EdgeSet], ray_edges: Sequence[int], dimension: int) -> None:
        self.tight_vertices = tuple(tight_vertices)
        self.ray_edges = tuple(ray_edges)
        self.dimension = dimension

    def points(self) -> List[Tuple[int, ...]]:
        if not self.tight_vertices:
            return []
        m = self.dimension
        points = [incidence_vector(delta, m) for delta in self.tight_vertices]
        base = points[0]
        for e in self.ray_edges:
            lifted = list(base)
            lifted[e] += 1
            points.append(tuple(lifted))
        return points

    def verify(self, ineq: LinearInequality) -> int:
        """Affine dimension spanned by the certificate; every point must lie on the face."""
        points = self.points()
        if not points:
            return -1
        if any(ineq.evaluate(p) != ineq.rhs for p in points):
            raise NotValid('Certificate point off the face')
        return affine_rank(points)


def _face_certificate(inst: MulticutInstance, ineq: LinearInequality, tight: Sequence[EdgeSet]) -> FacetCertificate:
    return FacetCertificate(tight, face_rays(inst, ineq, tight), inst.edge_count)


def face_dimension(inst: MulticutInstance, ineq: LinearInequality, vertices: Optional[Sequence[EdgeSet]] = None,
                   budget: Optional[int] = None) -> int:
    """Affine dimension of the face ``{a.x = b}`` of the dominant, -1 when empty.

    The face is spanned by its tight minimal multicuts together with one tight
    vertex shifted along each ray ``e_j`` with ``a_j = 0``.
    """
    vertices = _vertices(inst, vertices, budget)
    if not is_valid(inst, ineq, vertices):
        raise NotValid('Inequality is not valid for the dominant')
    tight = tight_multicuts(inst, ineq, vertices)
    return _face_certificate(inst, ineq, tight).verify(ineq)


def is_facet(inst: MulticutInstance, ineq: LinearInequality, vertices: Optional[Sequence[EdgeSet]] = None,
             budget: Optional[int] = None) -> bool:
    vertices = _vertices(inst, vertices, budget)
    if not is_valid(inst, ineq, vertices):
        return False
    return face_dimension(inst, ineq, vertices) == inst.edge_count - 1


def polytope_face_dimension(inst: MulticutInstance, ineq: LinearInequality,
                            vertices: Optional[Sequence[EdgeSet]] = None, budget: Optional[int] = None) -> int:
    """Affine dimension spanned by all (not necessarily minimal) tight multicuts.

    Tight multicuts are the tight minimal ones plus any zero-coefficient edges,
    so one superset per zero edge ``z`` (from a tight vertex avoiding ``z``)
    spans the same affine hull.
    """
    tight = tight_multicuts(inst, ineq, vertices, budget)
    if not tight:
        return -1
    m = inst.edge_count
    points = [incidence_vector(delta, m) for delta in tight]
    for z in ineq.zero_edges():
        for delta in tight:
            if z not in delta:
                points.append(incidence_vector(delta + (z,), m))
                break
    return affine_rank(points)


def is_shared_facet(inst: MulticutInstance, ineq: LinearInequality,
                    vertices: Optional[Sequence[EdgeSet]] = None, budget: Optional[int] = None) -> bool:
    """Whether the facet is also a facet of the multicut polytope.

    Raises:
        NotAFacet: ``ineq`` does not define a facet of the dominant.
    """
    vertices = _vertices(inst, vertices, budget)
    if not is_facet(inst, ineq, vertices):
        raise NotAFacet('Inequality does not define a facet of the dominant')
    if len(ineq.support()) == inst.edge_count:
        return True
    return polytope_face_dimension(inst, ineq, vertices) >= inst.edge_count - 1


def face_rays(inst: MulticutInstance, ineq: LinearInequality, tight: Sequence[EdgeSet]) -> EdgeSet:
    """Edges ``f`` whose unit direction moves a tight vertex along the face."""
    if not tight:
        return ()
    base = list(incidence_vector(tight[0], inst.edge_count))
    rays = []
    for f in range(inst.edge_count):
        base[f] += 1
        if ineq.evaluate(base) == ineq.rhs:
            rays.append(f)
        base[f] -= 1
    return tuple(rays)


class StructuralReport:
    """Outcome of the structural facet checks.

    ``support_paths``: every support edge lies on a terminal path inside the support.
    ``leaf_terminals``: every leaf of the support graph is a terminal.
    ``induced_paths``: both edges at a non-terminal node of degree two share a coefficient.
    ``boundedness``: the face has no ray exactly when the support is the whole graph.
    """

    def __init__(self, edge_bound: bool, support_paths: bool = True, leaf_terminals: bool = True,
                 induced_paths: bool = True, boundedness: bool = True, bounded: bool = False,
                 details: Optional[List[str]] = None) -> None:
        self.edge_bound = edge_bound
        self.support_paths = support_paths
        self.leaf_terminals = leaf_terminals
        self.induced_paths = induced_paths
        self.boundedness = boundedness
        self.bounded = bounded
        self.details = list(details or [])

    @property
    def passed(self) -> bool:
        return self.support_paths and self.leaf_terminals and self.induced_paths and self.boundedness

    def as_dict(self) -> Dict[str, bool]:
        return {
            'edge-bound': self.edge_bound,
            'support-paths': self.support_paths,
            'leaf-terminals': self.leaf_terminals,
            'induced-paths': self.induced_paths,
            'boundedness': self.boundedness,
        }


def structural_checks(inst: MulticutInstance, ineq: LinearInequality,
                      vertices: Optional[Sequence[EdgeSet]] = None, budget: Optional[int] = None) -> StructuralReport:
    vertices = _vertices(inst, vertices, budget)
    if not is_facet(inst, ineq, vertices):
        raise NotAFacet('Structural checks apply to facets only')
    if ineq.is_edge_bound():
        return StructuralReport(edge_bound=True)

    graph = inst.graph
    support = set(ineq.support())
    terminals = set(inst.terminals)
    details = []

    h = nx.Graph()
    for e in support:
        u, v = graph.edges[e]
        h.add_edge(u, v, index=e)
    covered = set()
    for s, t in inst.pairs:
        if s in h and t in h:
            for nodes in nx.all_simple_paths(h, s, t):
                covered.update(h.edges[a, b]['index'] for a, b in zip(nodes, nodes[1:]))
    uncovered = sorted(support - covered)
    if uncovered:
        details.append('support edges {} lie on no terminal path'.format(uncovered))

    bad_leaves = sorted(v for v in h.nodes if h.degree(v) == 1 and v not in terminals)
    if bad_leaves:
        details.append('support leaves {} are not terminals'.format(bad_leaves))

    unequal = []
    for v in range(graph.node_count):
        if graph.degree(v) == 2 and v not in terminals:
            e, f = graph.incident_edges(v)
            if ineq.coeffs[e] != ineq.coeffs[f]:
                unequal.append(v)
    if unequal:
        details.append('nodes {} separate unequal coefficients on an induced path'.format(unequal))

    bounded = not face_rays(inst, ineq, tight_multicuts(inst, ineq, vertices))
    full_support = len(support) == inst.edge_count
    if bounded != full_support:
        details.append('face boundedness disagrees with support size')

    return StructuralReport(
        edge_bound=False,
        support_paths=not uncovered,
        leaf_terminals=not bad_leaves,
        induced_paths=not unequal,
        boundedness=bounded == full_support,
        bounded=bounded,
        details=details,
    )


class FacetReport:
    def __init__(self, valid: bool, tight_vertices: Sequence[EdgeSet], face_dim: int, is_facet: bool,
                 is_shared: Optional[bool], bounded: bool, violation: Optional[ValidityResult] = None,
                 certificate: Optional[FacetCertificate] = None) -> None:
        self.valid = valid
        self.tight_vertices = tuple(tight_vertices)
        self.face_dim = face_dim
        self.is_facet = is_facet
        self.is_shared = is_shared
        self.bounded = bounded
        self.violation = violation
        self.certificate = certificate


def analyze(inst: MulticutInstance, ineq: LinearInequality, shared: bool = True,
            budget: Optional[int] = None) -> FacetReport:
    """Run every verdict on ``ineq`` and keep a re-checkable certificate."""
    vertices = enumerate_minimal_multicuts(inst, budget)
    validity = is_valid(inst, ineq, vertices)
    if not validity:
        return FacetReport(False, (), -1, False, None, not ineq.zero_edges(), violation=validity)
    tight = tight_multicuts(inst, ineq, vertices)
    bounded = not face_rays(inst, ineq, tight)
    certificate = _face_certificate(inst, ineq, tight)
    dim = certificate.verify(ineq)
    facet = dim == inst.edge_count - 1
    is_shared = None
    if shared and facet:
        is_shared = is_shared_facet(inst, ineq, vertices)
    logger.debug('Face dimension %d of %d, %d tight vertices', dim, inst.edge_count, len(tight))
    return FacetReport(True, tight, dim, facet, is_shared, bounded, certificate=certificate)
