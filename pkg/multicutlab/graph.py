import heapq
import logging
from collections import deque
from fractions import Fraction
from typing import Dict, Iterable, List, Mapping, Optional, Sequence, Tuple

import networkx as nx

from multicutlab.exceptions import (
    DimensionMismatch, DuplicateEdge, IncompleteAssignment, InvalidArgument, InvalidEdge, InvalidNode,
    NodeOutOfRange, SameTerminals, SelfLoop, ZeroLength,
)
from multicutlab._helpers import EdgePair, EdgeSet, Rational, Vector, to_fraction, to_fractions

logger = logging.getLogger(__name__)


class Graph:
    """Simple undirected graph on nodes ``0..node_count-1``.

    Edges are stored canonically as ``(u, v)`` with ``u < v`` in sorted order;
    the position of an edge in :attr:`edges` is its edge index. Use
    :func:`build_graph` to construct one from untrusted input.
    """

    def __init__(self, node_count: int, edges: Sequence[EdgePair]) -> None:
        self.node_count = node_count
        self.edges: Tuple[EdgePair, ...] = tuple(edges)
        self._index = {edge: i for i, edge in enumerate(self.edges)}
        incident: List[List[int]] = [[] for _ in range(node_count)]
        for i, (u, v) in enumerate(self.edges):
            incident[u].append(i)
            incident[v].append(i)
        self._incident = tuple(tuple(lst) for lst in incident)

    def __eq__(self, other) -> bool:
        if not isinstance(other, self.__class__):
            return False
        return self.node_count == other.node_count and self.edges == other.edges

    def __hash__(self) -> int:
        return hash((self.node_count, self.edges))

    def __repr__(self) -> str:
        return 'Graph(node_count={}, edges={})'.format(self.node_count, list(self.edges))

    @property
    def edge_count(self) -> int:
        return len(self.edges)

    def has_edge(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._index

    def edge_index(self, u: int, v: int) -> int:
        try:
            return self._index[(min(u, v), max(u, v))]
        except KeyError:
            raise InvalidEdge('No edge between nodes {} and {}'.format(u, v)) from None

    def check_edge(self, e: int) -> EdgePair:
        if not 0 <= e < len(self.edges):
            raise InvalidEdge('Edge index {} out of range 0..{}'.format(e, len(self.edges) - 1))
        return self.edges[e]

    def check_node(self, v: int, error=NodeOutOfRange) -> int:
        if not 0 <= v < self.node_count:
            raise error('Node {} out of range 0..{}'.format(v, self.node_count - 1))
        return v

    def incident_edges(self, v: int) -> Tuple[int, ...]:
        return self._incident[v]

    def degree(self, v: int) -> int:
        return len(self._incident[v])

    def other_end(self, e: int, v: int) -> int:
        u, w = self.edges[e]
        return w if u == v else u

    def neighbors(self, v: int) -> Tuple[int, ...]:
        return tuple(self.other_end(e, v) for e in self._incident[v])

    def nodes_of(self, edges: Iterable[int]) -> Tuple[int, ...]:
        nodes = set()
        for e in edges:
            nodes.update(self.edges[e])
        return tuple(sorted(nodes))

    def to_networkx(self) -> nx.Graph:
        g = nx.Graph()
        g.add_nodes_from(range(self.node_count))
        for i, (u, v) in enumerate(self.edges):
            g.add_edge(u, v, index=i)
        return g


def build_graph(node_count: int, edge_list: Iterable[Sequence[int]]) -> Graph:
    if node_count < 0:
        raise InvalidArgument('Node count must be nonnegative, got {}'.format(node_count))
    seen = set()
    for raw in edge_list:
        u, v = raw
        if u == v:
            raise SelfLoop('Self-loop at node {}'.format(u))
        for w in (u, v):
            if not 0 <= w < node_count:
                raise NodeOutOfRange('Node {} out of range 0..{}'.format(w, node_count - 1))
        edge = (min(u, v), max(u, v))
        if edge in seen:
            raise DuplicateEdge('Duplicate edge {}'.format(edge))
        seen.add(edge)
    return Graph(node_count, sorted(seen))


class SurgeryMap:
    """Records where edges and nodes went during a graph surgery.

    ``edge_map`` sends every old edge index to a tuple of new edge indices
    (empty when the edge disappeared, several when it became a path). Several
    old edges may share an image after parallel edges were merged.
    """

    def __init__(
        self,
        edge_map: Mapping[int, Tuple[int, ...]],
        node_map: Mapping[int, Tuple[int, ...]],
        new_edges: Tuple[int, ...] = (),
    ) -> None:
        self.edge_map: Dict[int, Tuple[int, ...]] = dict(edge_map)
        self.node_map: Dict[int, Tuple[int, ...]] = dict(node_map)
        self.new_edges = tuple(new_edges)

    def __repr__(self) -> str:
        return 'SurgeryMap(edge_map={}, node_map={}, new_edges={})'.format(
            self.edge_map, self.node_map, self.new_edges)

    def carry(self, values: Sequence[Rational], new_edge_count: int, default: Rational = 0) -> List[Fraction]:
        """Push per-edge values through the map.

        Raises:
            InvalidArgument: two merged edges carry distinct nonzero values.
        """
        result: List[Optional[Fraction]] = [None] * new_edge_count
        for e, images in self.edge_map.items():
            value = to_fraction(values[e])
            for f in images:
                if result[f] is None or result[f] == 0:
                    result[f] = value
                elif value != 0 and value != result[f]:
                    raise InvalidArgument(
                        'Merged edges carry distinct coefficients {} and {}'.format(result[f], value))
        return [to_fraction(default) if r is None else r for r in result]


def _rebuild(node_count: int, old: Graph, endpoints: Mapping[int, EdgePair], extra: Sequence[EdgePair] = ()):
    """Build a graph from mapped old edges plus extra edges; mapped duplicates merge."""
    canonical = {e: (min(u, v), max(u, v)) for e, (u, v) in endpoints.items()}
    extra = [(min(u, v), max(u, v)) for u, v in extra]
    graph = build_graph(node_count, set(canonical.values()) | set(extra))
    edge_map = {e: () for e in range(old.edge_count)}
    for e, edge in canonical.items():
        edge_map[e] = (graph.edge_index(*edge),)
    new_edges = tuple(graph.edge_index(*edge) for edge in extra)
    return graph, edge_map, new_edges


def contract_edge(graph: Graph, e: int) -> Tuple[Graph, SurgeryMap]:
    """Identify the endpoints of ``e``; the smaller endpoint survives.

    Nodes above the removed endpoint move down by one, the self-loop is dropped
    and parallel edges are merged.
    """
    u, v = graph.check_edge(e)

    def relabel(w: int) -> int:
        if w == v:
            return u
        return w - 1 if w > v else w

    endpoints = {}
    for f, (a, b) in enumerate(graph.edges):
        if f != e:
            endpoints[f] = (relabel(a), relabel(b))
    new_graph, edge_map, _ = _rebuild(graph.node_count - 1, graph, endpoints)
    node_map = {w: (relabel(w),) for w in range(graph.node_count)}
    return new_graph, SurgeryMap(edge_map, node_map)


def replace_edge_by_path(graph: Graph, e: int, length: int) -> Tuple[Graph, SurgeryMap]:
    u, v = graph.check_edge(e)
    if length < 1:
        raise ZeroLength('Path length must be at least 1, got {}'.format(length))
    identity_nodes = {w: (w,) for w in range(graph.node_count)}
    if length == 1:
        return graph, SurgeryMap({f: (f,) for f in range(graph.edge_count)}, identity_nodes)
    inner = list(range(graph.node_count, graph.node_count + length - 1))
    walk = [u] + inner + [v]
    path = list(zip(walk, walk[1:]))
    endpoints = {f: edge for f, edge in enumerate(graph.edges) if f != e}
    new_graph, edge_map, path_edges = _rebuild(graph.node_count + length - 1, graph, endpoints, path)
    edge_map[e] = path_edges
    return new_graph, SurgeryMap(edge_map, identity_nodes, path_edges)


def subdivide_edge(graph: Graph, e: int) -> Tuple[Graph, SurgeryMap]:
    """Subdivide ``e`` with one new node; the first image edge touches the smaller endpoint."""
    return replace_edge_by_path(graph, e, 2)


def split_node(graph: Graph, v: int, side_assignment: Mapping[int, int]) -> Tuple[Graph, SurgeryMap]:
    """Replace ``v`` by adjacent nodes ``v`` (side 1) and a fresh node (side 2).

    Args:
        side_assignment: incident edge index -> 1 or 2.
    """
    graph.check_node(v, InvalidNode)
    incident = set(graph.incident_edges(v))
    missing = incident - set(side_assignment)
    if missing:
        raise IncompleteAssignment('Edges {} incident to node {} have no side'.format(sorted(missing), v))
    for f, side in side_assignment.items():
        if f not in incident:
            raise IncompleteAssignment('Edge {} is not incident to node {}'.format(f, v))
        if side not in (1, 2):
            raise IncompleteAssignment('Side of edge {} must be 1 or 2, got {}'.format(f, side))
    v2 = graph.node_count
    endpoints = {}
    for f, (a, b) in enumerate(graph.edges):
        if f in incident and side_assignment[f] == 2:
            endpoints[f] = (graph.other_end(f, v), v2)
        else:
            endpoints[f] = (a, b)
    new_graph, edge_map, new_edges = _rebuild(graph.node_count + 1, graph, endpoints, [(v, v2)])
    node_map = {w: (w,) for w in range(graph.node_count)}
    node_map[v] = (v, v2)
    return new_graph, SurgeryMap(edge_map, node_map, new_edges)


def delete_edge(graph: Graph, e: int) -> Tuple[Graph, SurgeryMap]:
    graph.check_edge(e)
    endpoints = {f: edge for f, edge in enumerate(graph.edges) if f != e}
    new_graph, edge_map, _ = _rebuild(graph.node_count, graph, endpoints)
    return new_graph, SurgeryMap(edge_map, {w: (w,) for w in range(graph.node_count)})


def relabel_nodes(graph: Graph, mapping: Mapping[int, int]) -> Tuple[Graph, SurgeryMap]:
    """Apply a node permutation given as old -> new."""
    if sorted(mapping) != list(range(graph.node_count)) or sorted(mapping.values()) != list(range(graph.node_count)):
        raise InvalidArgument('Relabelling must be a permutation of 0..{}'.format(graph.node_count - 1))
    endpoints = {f: (mapping[a], mapping[b]) for f, (a, b) in enumerate(graph.edges)}
    new_graph, edge_map, _ = _rebuild(graph.node_count, graph, endpoints)
    return new_graph, SurgeryMap(edge_map, {w: (mapping[w],) for w in range(graph.node_count)})


def edge_subgraph(graph: Graph, edges: Iterable[int]) -> Tuple[Graph, SurgeryMap]:
    """Subgraph formed by ``edges``; its nodes are renumbered in increasing order."""
    edges = sorted(set(edges))
    for e in edges:
        graph.check_edge(e)
    nodes = graph.nodes_of(edges)
    position = {w: i for i, w in enumerate(nodes)}
    endpoints = {e: (position[graph.edges[e][0]], position[graph.edges[e][1]]) for e in edges}
    new_graph, edge_map, _ = _rebuild(len(nodes), graph, endpoints)
    node_map = {w: ((position[w],) if w in position else ()) for w in range(graph.node_count)}
    return new_graph, SurgeryMap(edge_map, node_map)


def replace_edge_by_graph(graph: Graph, e: int, gadget: Graph, gs: int, gt: int) -> Tuple[Graph, SurgeryMap]:
    """Replace ``e = uv`` by a copy of ``gadget`` whose nodes ``gs``/``gt`` become ``u``/``v``.

    ``new_edges`` of the returned map lists the gadget copy in gadget edge order.
    """
    u, v = graph.check_edge(e)
    gadget.check_node(gs)
    gadget.check_node(gt)
    if gs == gt:
        raise SameTerminals('Gadget attachment nodes must differ')
    place = {gs: u, gt: v}
    fresh = graph.node_count
    for w in range(gadget.node_count):
        if w not in place:
            place[w] = fresh
            fresh += 1
    copy = [(place[a], place[b]) for a, b in gadget.edges]
    endpoints = {f: edge for f, edge in enumerate(graph.edges) if f != e}
    new_graph, edge_map, copy_edges = _rebuild(fresh, graph, endpoints, copy)
    edge_map[e] = copy_edges
    return new_graph, SurgeryMap(edge_map, {w: (w,) for w in range(graph.node_count)}, copy_edges)


def contract_subgraph(graph: Graph, edges: Iterable[int], s: int, t: int) -> Tuple[Graph, SurgeryMap]:
    """Replace the subgraph formed by ``edges`` with a single edge ``st``.

    Inner nodes of the subgraph disappear and the remaining nodes are
    renumbered in increasing order; subgraph edges map to nothing and the new
    edge is listed in ``new_edges``.
    """
    edges = set(edges)
    for e in edges:
        graph.check_edge(e)
    inner = set(graph.nodes_of(edges)) - {s, t}
    kept = [w for w in range(graph.node_count) if w not in inner]
    position = {w: i for i, w in enumerate(kept)}
    endpoints = {f: (position[a], position[b]) for f, (a, b) in enumerate(graph.edges) if f not in edges}
    new_graph, edge_map, new_edges = _rebuild(len(kept), graph, endpoints, [(position[s], position[t])])
    node_map = {w: ((position[w],) if w in position else ()) for w in range(graph.node_count)}
    return new_graph, SurgeryMap(edge_map, node_map, new_edges)


def shortest_path(
    graph: Graph, weights: Sequence[Rational], s: int, t: int,
) -> Optional[Tuple[Fraction, Tuple[int, ...]]]:
    """Exact minimum-weight ``s``-``t`` path.

    Among all shortest simple paths the one with the lexicographically
    smallest edge-index sequence (read from ``s``) is returned.

    Returns:
        ``(distance, edge indices in walking order)`` or ``None`` when ``t``
        cannot be reached.
    """
    graph.check_node(s)
    graph.check_node(t)
    if len(weights) != graph.edge_count:
        raise DimensionMismatch('Expected {} weights, got {}'.format(graph.edge_count, len(weights)))
    w = to_fractions(weights)
    if any(x < 0 for x in w):
        raise InvalidArgument('Edge weights must be nonnegative')
    if s == t:
        return Fraction(0), ()

    dist: Dict[int, Fraction] = {s: Fraction(0)}
    heap = [(Fraction(0), s)]
    done = set()
    while heap:
        d, u = heapq.heappop(heap)
        if u in done:
            continue
        done.add(u)
        for e in graph.incident_edges(u):
            x = graph.other_end(e, u)
            nd = d + w[e]
            if x not in dist or nd < dist[x]:
                dist[x] = nd
                heapq.heappush(heap, (nd, x))
    if t not in dist:
        return None

    # every walk along tight arcs from a node to t is a shortest path
    def tight(e: int, a: int) -> Optional[int]:
        b = graph.other_end(e, a)
        if b in dist and dist[a] + w[e] == dist[b]:
            return b
        return None

    def reaches_t(start: int, blocked: set) -> bool:
        queue, seen = deque([start]), {start}
        while queue:
            a = queue.popleft()
            if a == t:
                return True
            for e in graph.incident_edges(a):
                b = tight(e, a)
                if b is not None and b not in seen and b not in blocked:
                    seen.add(b)
                    queue.append(b)
        return False

    path: List[int] = []
    visited = {s}
    current = s
    while current != t:
        for e in sorted(graph.incident_edges(current)):
            b = tight(e, current)
            if b is not None and b not in visited and reaches_t(b, visited):
                path.append(e)
                visited.add(b)
                current = b
                break
    return dist[t], tuple(path)


def components(graph: Graph) -> List[Tuple[int, ...]]:
    """Connected components, each sorted, ordered by smallest member."""
    parts = [tuple(sorted(c)) for c in nx.connected_components(graph.to_networkx())]
    return sorted(parts)


def is_tree(graph: Graph) -> bool:
    if graph.node_count == 0:
        return False
    return nx.is_tree(graph.to_networkx())


def tree_path(graph: Graph, u: int, v: int) -> Tuple[int, ...]:
    """Edge indices on the unique ``u``-``v`` path of a tree, in walking order."""
    nodes = nx.shortest_path(graph.to_networkx(), u, v)
    return tuple(graph.edge_index(a, b) for a, b in zip(nodes, nodes[1:]))


class MulticutInstance:
    """A graph together with its terminal pairs and optional edge weights."""

    def __init__(
        self,
        graph: Graph,
        pairs: Iterable[Sequence[int]] = (),
        weights: Optional[Sequence[Rational]] = None,
    ) -> None:
        self.graph = graph
        canonical = set()
        for raw in pairs:
            s, t = raw
            graph.check_node(s)
            graph.check_node(t)
            if s == t:
                raise SameTerminals('Terminal pair {{{}, {}}} uses one node twice'.format(s, t))
            canonical.add((min(s, t), max(s, t)))
        self.pairs: Tuple[EdgePair, ...] = tuple(sorted(canonical))
        if weights is None:
            self.weights: Vector = tuple(Fraction(1) for _ in graph.edges)
        else:
            if len(weights) != graph.edge_count:
                raise DimensionMismatch('Expected {} weights, got {}'.format(graph.edge_count, len(weights)))
            self.weights = to_fractions(weights)
            if any(x < 0 for x in self.weights):
                raise InvalidArgument('Edge weights must be nonnegative')
        self._pair_set = frozenset(self.pairs)

    def __eq__(self, other) -> bool:
        if not isinstance(other, self.__class__):
            return False
        return (self.graph, self.pairs, self.weights) == (other.graph, other.pairs, other.weights)

    def __hash__(self) -> int:
        return hash((self.graph, self.pairs, self.weights))

    def __repr__(self) -> str:
        return 'MulticutInstance({!r}, pairs={})'.format(self.graph, list(self.pairs))

    @property
    def edge_count(self) -> int:
        return self.graph.edge_count

    def has_pair(self, u: int, v: int) -> bool:
        return (min(u, v), max(u, v)) in self._pair_set

    @property
    def terminals(self) -> Tuple[int, ...]:
        return tuple(sorted({w for pair in self.pairs for w in pair}))

    def partners(self, v: int) -> Tuple[int, ...]:
        return tuple(sorted(t if s == v else s for s, t in self.pairs if v in (s, t)))

    def with_weights(self, weights: Sequence[Rational]) -> 'MulticutInstance':
        return MulticutInstance(self.graph, self.pairs, weights)

    def induced_pairs(self, nodes: Iterable[int]) -> Tuple[EdgePair, ...]:
        nodes = set(nodes)
        return tuple(p for p in self.pairs if p[0] in nodes and p[1] in nodes)

    def to_networkx(self) -> nx.Graph:
        """Graph whose links are tagged ``edge``, ``pair`` or ``both``."""
        g = nx.Graph()
        g.add_nodes_from(range(self.graph.node_count))
        for u, v in self.graph.edges:
            g.add_edge(u, v, kind='edge')
        for s, t in self.pairs:
            kind = 'both' if g.has_edge(s, t) else 'pair'
            g.add_edge(s, t, kind=kind)
        return g


def instances_isomorphic(a: MulticutInstance, b: MulticutInstance) -> bool:
    return nx.is_isomorphic(
        a.to_networkx(), b.to_networkx(), edge_match=lambda x, y: x['kind'] == y['kind'])


def star_graph(n: int) -> Graph:
    """K_{1,n}: root 0, leaves 1..n, edge i joins 0 and i+1."""
    return build_graph(n + 1, [(0, i) for i in range(1, n + 1)])


def cycle_graph(n: int) -> Graph:
    """C_n on nodes 0..n-1; look up cycle edges with :func:`cycle_edge`."""
    return build_graph(n, [(i, (i + 1) % n) for i in range(n)])


def cycle_edge(graph: Graph, i: int) -> int:
    """Index of the edge between cycle positions i and i+1."""
    n = graph.node_count
    return graph.edge_index(i % n, (i + 1) % n)


def path_graph(length: int) -> Graph:
    return build_graph(length + 1, [(i, i + 1) for i in range(length)])
