'''Intersection profiles: the permitted-intersection predicate of J(r,t),
t-divisibility, q-divisible pairs and the modular rank bound.
'''

import logging
from typing import List, NamedTuple, Optional, Sequence, Tuple

import numpy as np

from ._errors import NonUniformError, ParameterError
from ._hypergraph import Hypergraph
from ._util import CAPACITY, smallest_prime_factor
from ._vertexset import VertexSet

logger = logging.getLogger(__name__)

class JrtParams:
    '''The parameters (r, t) of the family J(r,t) and everything derived
    from them.

    Edges have k = rt^2 vertices, two edges may meet in s vertices when t
    divides s or s >= rt(t-1), and the structure certificates use
    ell = rt.
    '''

    __slots__ = (
        '__r',
        '__t',
        '__allowed',
    )

    def __init__(self, r: int, t: int) -> None:
        if r < 1 or t < 2:
            raise ParameterError(f'need r >= 1 and t >= 2, got r={r}, t={t}')
        if r * t * t > CAPACITY:
            raise ParameterError(f'edge size rt^2 = {r * t * t} exceeds {CAPACITY}')
        self.__r = r
        self.__t = t
        threshold = r * t * (t - 1)
        self.__allowed = tuple(
            size % t == 0 or size >= threshold
            for size in range(r * t * t + 1)
        )

    @property
    def r(self) -> int:
        return self.__r

    @property
    def t(self) -> int:
        return self.__t

    @property
    def k(self) -> int:
        return self.__r * self.__t * self.__t

    @property
    def ell(self) -> int:
        return self.__r * self.__t

    @property
    def centre_size(self) -> int:
        return self.__r * self.__t * (self.__t - 1)

    @property
    def red_size(self) -> int:
        '''Size of the uniform red sets, rt(t-1) + 1.'''
        return self.centre_size + 1

    @property
    def a(self) -> int:
        '''The residual constant (rt^2)^(r^3 t^6), as an exact integer.'''
        return self.k ** (self.__r ** 3 * self.__t ** 6)

    @property
    def allowed(self) -> Tuple[bool, ...]:
        '''Lookup table of in_profile for sizes 0..k.'''
        return self.__allowed

    def permits(self, size: int) -> bool:
        if 0 <= size < len(self.__allowed):
            return self.__allowed[size]
        return size % self.__t == 0 or size >= self.centre_size

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, JrtParams):
            return NotImplemented
        return (self.__r, self.__t) == (other.__r, other.__t)

    def __hash__(self) -> int:
        return hash((JrtParams, self.__r, self.__t))

    def __repr__(self) -> str:
        return f'JrtParams(r={self.__r}, t={self.__t})'

class DivisiblePairParams(NamedTuple):
    q: int
    k: int

    def check(self) -> 'DivisiblePairParams':
        if self.q < 1 or self.k < 1:
            raise ParameterError(f'need q >= 1 and k >= 1, got {self}')
        return self

class MembershipReport(NamedTuple):
    member: bool
    violation: Optional[Tuple[VertexSet, VertexSet]]

class RankReport(NamedTuple):
    t: int
    p: int
    sizes_ok: bool
    divisible: bool
    rank: int
    edges: int
    vertices: int

    @property
    def independent(self) -> bool:
        return self.rank == self.edges

    @property
    def within_bound(self) -> bool:
        return self.edges <= self.vertices

    @property
    def hypotheses(self) -> bool:
        return self.sizes_ok and self.divisible

def in_profile(params: JrtParams, size: int) -> bool:
    return params.permits(size)

def first_violation(
    params: JrtParams,
    edges: Sequence[int],
) -> Optional[Tuple[VertexSet, VertexSet]]:
    '''The colex-first pair of distinct edges whose intersection is not
    permitted, or None.
    '''
    allowed = params.allowed
    count = len(edges)
    for i in range(count):
        first = edges[i]
        for j in range(i + 1, count):
            if not allowed[(first & edges[j]).bit_count()]:
                return VertexSet(first), VertexSet(edges[j])
    return None

def is_jrt_member(params: JrtParams, hypergraph: Hypergraph) -> MembershipReport:
    '''Check membership in J(r,t).

    Raises NonUniformError when some edge does not have rt^2 vertices; an
    intersection violation is reported, not raised.
    '''
    if not hypergraph.is_uniform(params.k):
        raise NonUniformError(f'hypergraph is not {params.k}-uniform')
    violation = first_violation(params, hypergraph.edges)
    if violation is not None:
        logger.debug('J%r violation: %r', (params.r, params.t), violation)
    return MembershipReport(member=violation is None, violation=violation)

def is_t_divisible(t: int, system: Hypergraph) -> bool:
    edges = system.edges
    for i, first in enumerate(edges):
        for second in edges[i + 1:]:
            if (first & second).bit_count() % t:
                return False
    return True

def is_divisible_pair(q: int, first: Hypergraph, second: Hypergraph) -> bool:
    '''Whether q divides |f & g| for every f in the first system and g in
    the second, a set paired with itself included.
    '''
    return divisibility_witness(q, first.edges, second.edges) is None

def divisibility_witness(
    q: int,
    first: Sequence[int],
    second: Sequence[int],
) -> Optional[Tuple[VertexSet, VertexSet]]:
    for f in first:
        for g in second:
            if (f & g).bit_count() % q:
                return VertexSet(f), VertexSet(g)
    return None

def gf2_rank(rows: List[int]) -> int:
    '''Rank of bit-pattern rows over GF(2), pivoting on columns in vertex
    order.
    '''
    work = list(rows)
    rank = 0
    for index in range(len(work)):
        pivot_row = work[index]
        if not pivot_row:
            continue
        low = pivot_row & -pivot_row
        rank += 1
        for other in range(index + 1, len(work)):
            if work[other] & low:
                work[other] ^= pivot_row
    return rank

def gfp_rank(rows: List[int], n: int, p: int) -> int:
    '''Rank of 0/1 characteristic vectors over GF(p).
    '''
    if not rows or n == 0:
        return 0
    matrix = np.array(
        [[(row >> column) & 1 for column in range(n)] for row in rows],
        dtype=np.int64,
    )
    height = matrix.shape[0]
    rank = 0
    for column in range(n):
        if rank == height:
            break
        candidates = np.nonzero(matrix[rank:, column])[0]
        if candidates.size == 0:
            continue
        pivot = rank + int(candidates[0])
        if pivot != rank:
            matrix[[rank, pivot]] = matrix[[pivot, rank]]
        inverse = pow(int(matrix[rank, column]), -1, p)
        matrix[rank] = (matrix[rank] * inverse) % p
        factors = matrix[:, column].copy()
        factors[rank] = 0
        matrix = (matrix - np.outer(factors, matrix[rank])) % p
        rank += 1
    return rank

def rank_bound_check(t: int, system: Hypergraph) -> RankReport:
    '''Check the modular rank bound for a t-divisible system.

    Verifies the hypotheses (t-divisible, every size 1 mod t) and computes
    the rank of the characteristic vectors over GF(p), p the smallest prime
    factor of t.  Under the hypotheses the vectors are independent and so
    there are at most n of them.
    '''
    if t < 2:
        raise ParameterError(f'need t >= 2, got {t}')
    p = smallest_prime_factor(t)
    rows = [int(edge) for edge in system.edges]
    if p == 2:
        rank = gf2_rank(rows)
    else:
        rank = gfp_rank(rows, system.n, p)
    return RankReport(
        t=t,
        p=p,
        sizes_ok=all(edge.bit_count() % t == 1 for edge in system.edges),
        divisible=is_t_divisible(t, system),
        rank=rank,
        edges=len(rows),
        vertices=system.n,
    )
