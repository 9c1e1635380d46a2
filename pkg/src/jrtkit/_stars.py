'''Stars, heavy stars and their cores.

A star is a family of edges sharing a fixed centre; its body is the set of
vertices the edges add to the centre.  The core of a star is what remains
after repeatedly deleting the smallest-numbered body vertex of minimum
degree until every body vertex has degree at least 2r^2t^3N^(rt-2), N the
size of the remaining body.
'''

import logging
from fractions import Fraction
from typing import Iterable, List, NamedTuple, Optional, Tuple

from ._errors import ParameterError
from ._hypergraph import Hypergraph
from ._profiles import JrtParams, first_violation
from ._util import binomial, iter_bits
from ._vertexset import VertexSet

logger = logging.getLogger(__name__)

class Star(NamedTuple):
    centre: VertexSet
    # Kept explicitly: peeling can leave body vertices of degree zero.
    body: VertexSet
    edges: Tuple[VertexSet, ...]

    @classmethod
    def of(cls, centre: int, edges: Iterable[int]) -> 'Star':
        edges = tuple(VertexSet(edge) for edge in sorted(set(edges)))
        body = 0
        for edge in edges:
            if edge & centre != centre:
                raise ParameterError(
                    f'edge {edge!r} does not contain the centre {VertexSet(centre)!r}'
                )
            body |= edge
        return cls(
            centre=VertexSet(centre),
            body=VertexSet(body & ~centre),
            edges=edges,
        )

    def degree(self, vertex: int) -> int:
        bit = 1 << vertex
        return sum(1 for edge in self.edges if edge & bit)

    @property
    def size(self) -> int:
        return len(self.edges)

    def hypergraph(self, n: int) -> Hypergraph:
        return Hypergraph(n, self.edges)

class StarCore(NamedTuple):
    core: Star
    removed_order: List[Tuple[int, int]]

    @property
    def empty(self) -> bool:
        return not self.core.edges

class ContainmentReport(NamedTuple):
    ok: bool
    # First edge meeting the body without containing the centre.
    witness: Optional[VertexSet]
    # Unmet preconditions, by name.
    problems: List[str]

def heavy_threshold(params: JrtParams, size: int) -> int:
    '''2r^2t^3N^(rt-2) for a body of N vertices; N^0 is 1 even at N = 0.
    '''
    r, t = params.r, params.t
    return 2 * r * r * t ** 3 * size ** (r * t - 2)

def peel_allowance(params: JrtParams, size: int) -> int:
    '''Upper bound on the edges lost while peeling a body of the given size
    down to nothing.'''
    return sum(heavy_threshold(params, i) for i in range(1, size + 1))

def _star_degrees(star: Star) -> dict:
    degrees = {vertex: 0 for vertex in iter_bits(star.body)}
    for edge in star.edges:
        for vertex in iter_bits(edge & ~star.centre):
            degrees[vertex] += 1
    return degrees

def is_heavy(params: JrtParams, star: Star) -> bool:
    '''Whether every body vertex has star-degree at least the threshold for
    the body size.  The empty star is heavy.
    '''
    if not star.body:
        return True
    threshold = heavy_threshold(params, star.body.bit_count())
    return min(_star_degrees(star).values()) >= threshold

def core(params: JrtParams, star: Star) -> StarCore:
    '''Peel the star to its heavy core.

    Each step removes the smallest-numbered body vertex of minimum degree
    together with every edge through it; the trace records the vertex and
    its degree at removal.
    '''
    degrees = _star_degrees(star)
    edges = set(star.edges)
    removed: List[Tuple[int, int]] = []

    while degrees:
        threshold = heavy_threshold(params, len(degrees))
        vertex = min(degrees, key=lambda v: (degrees[v], v))
        lowest = degrees[vertex]
        if lowest >= threshold:
            break
        removed.append((vertex, lowest))
        del degrees[vertex]
        bit = 1 << vertex
        for edge in [edge for edge in edges if edge & bit]:
            edges.discard(edge)
            for other in iter_bits(edge & ~star.centre & ~bit):
                degrees[other] -= 1

    body = 0
    for vertex in degrees:
        body |= 1 << vertex
    remaining = Star(
        centre=star.centre,
        body=VertexSet(body),
        edges=tuple(sorted(edges)),
    )
    logger.debug(
        'core of star at %r: %d of %d edges kept, %d vertices peeled',
        star.centre, remaining.size, star.size, len(removed),
    )
    return StarCore(core=remaining, removed_order=removed)

def hat_n(params: JrtParams, n: int, m: int) -> int:
    '''The least N with binom(N-1, rt-1) >= rtm/n - rt*n^(rt-2).
    '''
    if n < 1 or m < 0:
        raise ParameterError(f'need n >= 1 and m >= 0, got n={n}, m={m}')
    rt = params.r * params.t
    target = Fraction(rt * m, n) - rt * n ** (rt - 2)
    size = 1
    while binomial(size - 1, rt - 1) < target:
        size += 1
    return size

def exceeds_lower_scale(params: JrtParams, n: int, m: int) -> bool:
    '''Whether hat_n(n, m) exceeds n/t^(rt/(rt-1)) - (3rt)^(3rt).

    Compared exactly after raising both sides to the power rt-1; true
    whenever the right-hand side is not positive.
    '''
    rt = params.r * params.t
    t = params.t
    shifted = hat_n(params, n, m) + (3 * rt) ** (3 * rt)
    return shifted ** (rt - 1) * t ** rt > n ** (rt - 1)

def centre_containment_check(
    params: JrtParams,
    hypergraph: Hypergraph,
    star: Star,
    check_membership: bool = False,
) -> ContainmentReport:
    '''Every edge meeting the body of a heavy star inside a member of
    J(r,t) must contain its centre.

    Unmet preconditions are listed in the report, and the containment is
    still evaluated.
    '''
    problems = []
    if not all(edge in hypergraph for edge in star.edges):
        problems.append('star-not-in-hypergraph')
    if not is_heavy(params, star):
        problems.append('star-not-heavy')
    if check_membership and (
        not hypergraph.is_uniform(params.k)
        or first_violation(params, hypergraph.edges) is not None
    ):
        problems.append('not-a-member')

    centre, body = star.centre, star.body
    for edge in hypergraph.edges:
        if edge & body and edge & centre != centre:
            return ContainmentReport(ok=False, witness=edge, problems=problems)
    return ContainmentReport(ok=True, witness=None, problems=problems)
