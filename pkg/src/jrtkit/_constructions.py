'''Generators for the named hypergraphs: thick cliques and thick
hypergraphs, full stars, the two-star gadget, and random members of J(r,t).
'''

import logging
import random
from enum import Enum, unique
from itertools import combinations
from typing import Dict, List, NamedTuple, Tuple

from ._errors import ParameterError
from ._hypergraph import Hypergraph
from ._profiles import JrtParams
from ._util import CAPACITY, binomial, mask_of, submasks_of_size
from ._vertexset import VertexSet

logger = logging.getLogger(__name__)

REJECTION_FACTOR = 1000

@unique
class GeneratorKind(str, Enum):
    THICK = 'thick'
    STAR = 'star'
    GADGET = 'gadget'
    RANDOM = 'random'

    def __str__(self) -> str:
        return self.value

class TeamPartition(NamedTuple):
    teams: List[VertexSet]
    leftovers: VertexSet

class StarSpec(NamedTuple):
    centre: VertexSet
    body: VertexSet
    k: int

class Gadget(NamedTuple):
    hypergraph: Hypergraph
    parts: Dict[str, VertexSet]

class RandomResult(NamedTuple):
    hypergraph: Hypergraph
    target: int
    draws: int

    @property
    def short(self) -> bool:
        '''True when the rejection budget ran out before the target.'''
        return len(self.hypergraph) < self.target

def _check_universe(n: int) -> None:
    if not 0 <= n <= CAPACITY:
        raise ParameterError(f'vertex count {n} outside 0..{CAPACITY}')

def team_partition(n: int, t: int) -> TeamPartition:
    '''Consecutive t-blocks {0..t-1}, {t..2t-1}, ... and the leftovers.
    '''
    if t < 1:
        raise ParameterError(f'team size must be positive, got {t}')
    _check_universe(n)
    teams = [VertexSet.range(start, start + t) for start in range(0, n - n % t, t)]
    return TeamPartition(teams=teams, leftovers=VertexSet.range(n - n % t, n))

def thick_clique(n: int, k: int, t: int) -> Tuple[Hypergraph, TeamPartition]:
    '''All unions of k/t teams.
    '''
    if t < 1 or k % t:
        raise ParameterError(f'team size {t} does not divide edge size {k}')
    if k > n:
        raise ParameterError(f'edge size {k} exceeds vertex count {n}')
    partition = team_partition(n, t)
    edges = [
        _union(chosen)
        for chosen in combinations(partition.teams, k // t)
    ]
    return Hypergraph(n, edges, k), partition

def thick_subgraph(
    n: int,
    k: int,
    t: int,
    m: int,
    seed: int,
) -> Tuple[Hypergraph, TeamPartition]:
    '''A uniformly chosen m-edge subhypergraph of the thick clique.
    '''
    clique, partition = thick_clique(n, k, t)
    if not 0 <= m <= len(clique):
        raise ParameterError(f'thick clique has {len(clique)} edges, asked for {m}')
    chosen = random.Random(seed).sample(list(clique.edges), m)
    return Hypergraph(n, chosen, k), partition

def full_star(n: int, k: int, s: int) -> Tuple[Hypergraph, StarSpec]:
    '''All k-sets containing the centre {0..s-1}.
    '''
    if not 0 <= s <= k <= n:
        raise ParameterError(f'need 0 <= s <= k <= n, got s={s}, k={k}, n={n}')
    _check_universe(n)
    centre = VertexSet.range(0, s)
    body = VertexSet.range(s, n) if k > s else VertexSet(0)
    edges = [centre | extra for extra in submasks_of_size(VertexSet.range(s, n), k - s)]
    return Hypergraph(n, edges, k), StarSpec(centre=centre, body=body, k=k)

def rt_star(params: JrtParams, n: int) -> Tuple[Hypergraph, StarSpec]:
    '''The full rt(t-1)-star, the densest member of J(r,t).'''
    return full_star(n, params.k, params.centre_size)

def gadget_vertex_count(params: JrtParams, u: int) -> int:
    return 2 * u + 2 * params.centre_size + params.t

def two_star_gadget(r: int, t: int, u: int) -> Gadget:
    '''Two stars with centres C1, C2 tied together through a team T.

    Layout: T first, then C1, C2, U1, U2.  The edges are C_i plus an
    rt-subset of U_i, T plus C_i plus an (r-1)t-subset of U_i, and the thick
    clique on T, C1, C2 whose teams are T and the t-blocks of C1 and C2.
    '''
    params = JrtParams(r, t)
    if u < params.ell:
        raise ParameterError(f'need u >= rt = {params.ell}, got {u}')
    n = gadget_vertex_count(params, u)
    if n > CAPACITY:
        raise ParameterError(f'gadget needs {n} vertices, more than {CAPACITY}')

    cursor = 0
    parts: Dict[str, VertexSet] = {}
    for name, size in (
        ('T', t),
        ('C1', params.centre_size),
        ('C2', params.centre_size),
        ('U1', u),
        ('U2', u),
    ):
        parts[name] = VertexSet.range(cursor, cursor + size)
        cursor += size

    edges = []
    for centre, pool in (('C1', 'U1'), ('C2', 'U2')):
        for extra in submasks_of_size(parts[pool], params.ell):
            edges.append(parts[centre] | extra)
        for extra in submasks_of_size(parts[pool], (r - 1) * t):
            edges.append(parts['T'] | parts[centre] | extra)

    core = parts['T'] | parts['C1'] | parts['C2']
    core_teams = [
        VertexSet.range(start, start + t)
        for start in range(0, core.bit_length(), t)
    ]
    for chosen in combinations(core_teams, params.ell):
        edges.append(_union(chosen))

    return Gadget(hypergraph=Hypergraph(n, edges, params.k), parts=parts)

def random_jrt(
    params: JrtParams,
    n: int,
    target_m: int,
    seed: int,
) -> RandomResult:
    '''Greedy randomized member of J(r,t).

    Draws uniform k-sets and keeps each one compatible with everything kept
    so far, until target_m edges are kept or REJECTION_FACTOR * target_m
    draws have been spent.
    '''
    if n < params.k:
        raise ParameterError(f'need n >= k = {params.k}, got {n}')
    _check_universe(n)
    generator = random.Random(seed)
    allowed = params.allowed
    kept: List[int] = []
    seen = set()
    budget = REJECTION_FACTOR * target_m
    draws = 0
    population = range(n)
    while len(kept) < target_m and draws < budget:
        draws += 1
        candidate = mask_of(generator.sample(population, params.k))
        if candidate in seen:
            continue
        if all(allowed[(candidate & edge).bit_count()] for edge in kept):
            kept.append(candidate)
            seen.add(candidate)

    result = RandomResult(
        hypergraph=Hypergraph(n, kept, params.k),
        target=target_m,
        draws=draws,
    )
    if result.short:
        logger.warning(
            'random_jrt stopped at %d of %d edges after %d draws',
            len(kept), target_m, draws,
        )
    return result

def thick_clique_size(params: JrtParams, n: int) -> int:
    return binomial(n // params.t, params.ell)

def thick_clique_degree(params: JrtParams, n: int) -> int:
    return binomial(n // params.t - 1, params.ell - 1)

def rt_star_size(params: JrtParams, n: int) -> int:
    return binomial(n - params.k + params.ell, params.ell)

def _union(sets) -> VertexSet:
    bits = 0
    for part in sets:
        bits |= part
    return VertexSet(bits)
