from typing import Iterable, Iterator, List, NamedTuple, Optional, Tuple

import networkx as nx

from ._errors import NonUniformError
from ._util import CAPACITY, full_mask, iter_bits
from ._vertexset import VertexSet

class Hypergraph:
    '''A set system on the vertices 0..n-1 in canonical form.

    Edges are deduplicated and sorted in colex order on construction, so two
    hypergraphs with the same edges compare equal however they were built.
    The empty set is an allowed member unless a positive uniformity is
    declared.

    Conceptually immutable.
    '''

    __slots__ = (
        '__n',
        '__edges',
        '__k',
        '__hash',
        '__edge_set',
    )

    def __init__(
        self,
        n: int,
        edges: Iterable[int] = (),
        k: Optional[int] = None,
    ) -> None:
        if not 0 <= n <= CAPACITY:
            raise ValueError(f'vertex count {n} outside 0..{CAPACITY}')

        limit = full_mask(n)
        canonical = sorted({int(edge) for edge in edges})
        for edge in canonical:
            if edge & ~limit:
                raise ValueError(
                    f'edge {VertexSet(edge)!r} leaves the universe of {n} vertices'
                )

        sizes = {edge.bit_count() for edge in canonical}
        if k is not None:
            if sizes - {k}:
                raise NonUniformError(f'edge sizes {sorted(sizes)} are not all {k}')
        elif len(sizes) == 1:
            k, = sizes

        self.__n = n
        self.__edges: Tuple[VertexSet, ...] = tuple(map(VertexSet, canonical))
        self.__k = k
        self.__hash: Optional[int] = None
        self.__edge_set: Optional[frozenset] = None

    @property
    def n(self) -> int:
        return self.__n

    @property
    def edges(self) -> Tuple[VertexSet, ...]:
        return self.__edges

    @property
    def k(self) -> Optional[int]:
        '''The common edge size, or None for a non-uniform set system.
        '''
        return self.__k

    @property
    def vertices(self) -> VertexSet:
        return VertexSet(full_mask(self.__n))

    def is_uniform(self, k: int) -> bool:
        return all(edge.bit_count() == k for edge in self.__edges)

    def support(self) -> VertexSet:
        bits = 0
        for edge in self.__edges:
            bits |= edge
        return VertexSet(bits)

    def degree(self, vertex: int) -> int:
        return degree(self, vertex)

    def degrees(self) -> List[int]:
        counts = [0] * self.__n
        for edge in self.__edges:
            for vertex in iter_bits(edge):
                counts[vertex] += 1
        return counts

    def max_degree(self) -> int:
        return max_degree(self)

    def induced(self, vertices: int) -> 'Hypergraph':
        return induced(self, vertices)

    def components(self) -> 'Components':
        return components(self)

    def with_edges(self, edges: Iterable[int]) -> 'Hypergraph':
        '''A hypergraph on the same universe with the given edges.
        '''
        return Hypergraph(self.__n, edges)

    def without(self, edges: Iterable[int]) -> 'Hypergraph':
        removed = set(edges)
        return Hypergraph(
            self.__n,
            (edge for edge in self.__edges if edge not in removed),
        )

    def __len__(self) -> int:
        return len(self.__edges)

    def __iter__(self) -> Iterator[VertexSet]:
        return iter(self.__edges)

    def __contains__(self, edge: object) -> bool:
        if self.__edge_set is None:
            self.__edge_set = frozenset(self.__edges)
        return edge in self.__edge_set

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, Hypergraph):
            return NotImplemented
        return self.__n == other.__n and self.__edges == other.__edges

    def __hash__(self) -> int:
        if self.__hash is None:
            self.__hash = hash((self.__n, self.__edges))
        return self.__hash

    def __repr__(self) -> str:
        return f'<Hypergraph n={self.__n} k={self.__k} m={len(self.__edges)}>'

class Component(NamedTuple):
    vertices: VertexSet
    hypergraph: Hypergraph

class Components(NamedTuple):
    parts: List[Component]
    isolated: VertexSet

def canonicalize(hypergraph: Hypergraph) -> Hypergraph:
    return Hypergraph(hypergraph.n, hypergraph.edges, hypergraph.k)

def intersection_size(a: int, b: int) -> int:
    return (a & b).bit_count()

def degree(hypergraph: Hypergraph, vertex: int) -> int:
    if not 0 <= vertex < hypergraph.n:
        raise ValueError(f'vertex {vertex} outside 0..{hypergraph.n - 1}')
    return sum(1 for edge in hypergraph.edges if (edge >> vertex) & 1)

def max_degree(hypergraph: Hypergraph) -> int:
    return max(hypergraph.degrees(), default=0)

def induced(hypergraph: Hypergraph, vertices: int) -> Hypergraph:
    '''H[W]: the edges lying entirely inside W, on the same universe.
    '''
    outside = ~vertices
    return Hypergraph(
        hypergraph.n,
        (edge for edge in hypergraph.edges if not edge & outside),
    )

def components(hypergraph: Hypergraph) -> Components:
    '''Connected components of the edge-overlap graph.

    Two edges are adjacent when they share a vertex.  Parts are ordered by
    their colex-least edge; vertices in no edge are returned as isolated.
    '''
    graph = nx.Graph()
    edges = hypergraph.edges
    graph.add_nodes_from(range(len(edges)))
    last_seen = {}
    for index, edge in enumerate(edges):
        for vertex in iter_bits(edge):
            previous = last_seen.get(vertex)
            if previous is not None:
                graph.add_edge(previous, index)
            last_seen[vertex] = index

    parts = []
    for indices in nx.connected_components(graph):
        members = [edges[index] for index in sorted(indices)]
        bits = 0
        for edge in members:
            bits |= edge
        parts.append(Component(
            vertices=VertexSet(bits),
            hypergraph=Hypergraph(hypergraph.n, members),
        ))
    parts.sort(key=lambda part: part.hypergraph.edges[0])

    isolated = VertexSet(full_mask(hypergraph.n) & ~hypergraph.support())
    return Components(parts=parts, isolated=isolated)
