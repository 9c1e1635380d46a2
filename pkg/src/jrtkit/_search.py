'''Exact search for f(r,t;n,m), the least maximum degree of an m-edge
member of J(r,t) on n vertices, and for the hypergraphs attaining it.

Members of J(r,t) on n vertices are exactly the cliques of the
compatibility graph whose nodes are the k-subsets of the vertices, two
being adjacent when their intersection size is permitted.  The search is a
branch and bound over such cliques with the first edge fixed to the
colex-least k-set.
'''

import logging
import time
from concurrent.futures import ThreadPoolExecutor
from enum import Enum, unique
from fractions import Fraction
from itertools import combinations
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence

import networkx as nx

from ._constructions import (
    rt_star,
    rt_star_size,
    thick_clique,
    thick_clique_degree,
    thick_clique_size,
)
from ._errors import ParameterError
from ._hypergraph import Hypergraph
from ._profiles import JrtParams
from ._util import CAPACITY, binomial, ceil_div, iter_bits, mask_of

logger = logging.getLogger(__name__)

WAVE_WIDTH = 8

@unique
class SearchStatus(str, Enum):
    PROVED_OPTIMAL = 'proved-optimal'
    BOUNDED = 'bounded'
    INFEASIBLE = 'infeasible'

    def __str__(self) -> str:
        return self.value

class Budget(NamedTuple):
    nodes: Optional[int] = None
    seconds: Optional[float] = None

class SearchReport(NamedTuple):
    params: JrtParams
    n: int
    m: int
    value: Optional[int]
    witness: Optional[Hypergraph]
    # ceil(rt^2 m / n), raised to the value once optimality is proved.
    lower_bound: int
    average_bound: int
    # Maximum degree of the construction the search started from.
    upper_bound: Optional[int]
    status: SearchStatus
    nodes_explored: int
    time_budget_hit: bool

class WitnessList(NamedTuple):
    report: SearchReport
    witnesses: List[Hypergraph]
    complete: bool

class ScanRow(NamedTuple):
    n: int
    m_star: int
    thick_delta: int
    star_edges: int
    bound_m_over_3t: Fraction
    f_below: int
    f_above: int
    status: SearchStatus

SCAN_HEADER = ScanRow._fields

class CompatibilityGraph:
    '''The k-subsets of n vertices in colex order and their compatibility
    relation, both as bitmasks over candidate indices.
    '''

    __slots__ = (
        '__params',
        '__n',
        '__candidates',
        '__adjacency',
        '__containing',
    )

    def __init__(self, params: JrtParams, n: int) -> None:
        if not params.k <= n <= CAPACITY:
            raise ParameterError(f'need {params.k} <= n <= {CAPACITY}, got {n}')
        candidates = sorted(
            mask_of(chosen) for chosen in combinations(range(n), params.k)
        )
        allowed = params.allowed
        adjacency = [0] * len(candidates)
        for i, first in enumerate(candidates):
            for j in range(i + 1, len(candidates)):
                if allowed[(first & candidates[j]).bit_count()]:
                    adjacency[i] |= 1 << j
                    adjacency[j] |= 1 << i
        containing = [0] * n
        for index, candidate in enumerate(candidates):
            for vertex in iter_bits(candidate):
                containing[vertex] |= 1 << index

        self.__params = params
        self.__n = n
        self.__candidates = candidates
        self.__adjacency = adjacency
        self.__containing = containing

    @property
    def params(self) -> JrtParams:
        return self.__params

    @property
    def n(self) -> int:
        return self.__n

    @property
    def candidates(self) -> List[int]:
        return self.__candidates

    @property
    def adjacency(self) -> List[int]:
        return self.__adjacency

    @property
    def containing(self) -> List[int]:
        '''For each vertex, the candidates containing it.'''
        return self.__containing

    def compatible(self, i: int, j: int) -> bool:
        return bool(self.__adjacency[i] >> j & 1)

    def __len__(self) -> int:
        return len(self.__candidates)

class _BudgetSpent(Exception):
    pass

class _Subtree:
    '''Depth-first search below a fixed pair of edges.

    In optimizing mode it looks for m-cliques of maximum degree below the
    incumbent, lowering the incumbent as it goes; in collecting mode it
    records every m-clique of maximum degree at most the cap.
    '''

    __slots__ = (
        '_graph',
        '_m',
        '_k',
        '_floor',
        '_limit',
        '_collect',
        '_node_cap',
        '_deadline',
        'nodes',
        'best',
        'found',
        'exhausted',
        'time_hit',
    )

    def __init__(
        self,
        graph: CompatibilityGraph,
        m: int,
        floor: int,
        limit: int,
        collect: bool,
        node_cap: Optional[int],
        deadline: Optional[float],
    ) -> None:
        self._graph = graph
        self._m = m
        self._k = graph.params.k
        self._floor = floor
        # Degrees must stay strictly below the limit.
        self._limit = limit
        self._collect = collect
        self._node_cap = node_cap
        self._deadline = deadline
        self.nodes = 0
        self.best: Optional[List[int]] = None
        self.found: List[List[int]] = []
        self.exhausted = True
        self.time_hit = False

    def run(self, chosen: List[int], pool: int) -> '_Subtree':
        degrees = [0] * self._graph.n
        for index in chosen:
            for vertex in iter_bits(self._graph.candidates[index]):
                degrees[vertex] += 1
        try:
            self._search(list(chosen), pool, degrees)
        except _BudgetSpent:
            self.exhausted = False
        return self

    def _tick(self) -> None:
        self.nodes += 1
        if self._node_cap is not None and self.nodes > self._node_cap:
            raise _BudgetSpent
        if self._deadline is not None and not self.nodes & 1023:
            if time.monotonic() > self._deadline:
                self.time_hit = True
                raise _BudgetSpent

    def _search(self, chosen: List[int], pool: int, degrees: List[int]) -> None:
        self._tick()
        peak = max(degrees)
        if peak >= self._limit:
            return
        if len(chosen) == self._m:
            if self._collect:
                self.found.append(list(chosen))
            else:
                self.best = list(chosen)
                self._limit = peak
            return
        if self._limit <= self._floor:
            return

        cap = self._limit - 1
        blocked = 0
        room = 0
        for vertex, value in enumerate(degrees):
            if value >= cap:
                blocked |= self._graph.containing[vertex]
            else:
                room += cap - value
        pool &= ~blocked
        needed = self._m - len(chosen)
        if pool.bit_count() < needed or room < needed * self._k:
            return

        graph = self._graph
        while pool:
            if pool.bit_count() < needed:
                return
            low = pool & -pool
            index = low.bit_length() - 1
            pool ^= low
            edge = graph.candidates[index]
            for vertex in iter_bits(edge):
                degrees[vertex] += 1
            if max(degrees[vertex] for vertex in iter_bits(edge)) < self._limit:
                chosen.append(index)
                self._search(chosen, pool & graph.adjacency[index], degrees)
                chosen.pop()
            for vertex in iter_bits(edge):
                degrees[vertex] -= 1
            if not self._collect and self._limit <= self._floor:
                return

def average_degree_bound(params: JrtParams, n: int, m: int) -> int:
    '''ceil(rt^2 m / n).'''
    return ceil_div(params.k * m, n) if n else 0

def thick_upper_bound(params: JrtParams, n: int, m: int) -> int:
    '''ceil(rt m / floor(n/t)), attained by thick hypergraphs when m is at
    most the size of the thick clique.'''
    teams = n // params.t
    return ceil_div(params.ell * m, teams) if teams else 0

def _seed(params: JrtParams, n: int, m: int) -> Optional[Hypergraph]:
    '''First m colex edges of the thick clique, or failing that of the full
    rt(t-1)-star.'''
    if m <= thick_clique_size(params, n):
        clique, _ = thick_clique(n, params.k, params.t)
        return Hypergraph(n, clique.edges[:m], params.k)
    if m <= rt_star_size(params, n):
        star, _ = rt_star(params, n)
        return Hypergraph(n, star.edges[:m], params.k)
    return None

def _roots(graph: CompatibilityGraph) -> List[int]:
    return [index for index in iter_bits(graph.adjacency[0])]

def _run_waves(
    graph: CompatibilityGraph,
    m: int,
    floor: int,
    limit: int,
    collect: bool,
    budget: Budget,
    threads: int,
):
    '''Run the subtrees below each second edge in fixed-width waves.

    The incumbent limit is updated only between waves and results are
    merged in root order, so the outcome does not depend on threads.
    '''
    deadline = None
    if budget.seconds is not None:
        deadline = time.monotonic() + budget.seconds
    roots = _roots(graph)
    remaining_nodes = budget.nodes
    nodes = 0
    best: Optional[List[int]] = None
    found: List[List[int]] = []
    exhausted = True
    time_hit = False

    executor = ThreadPoolExecutor(max_workers=threads) if threads > 1 else None
    try:
        for start in range(0, len(roots), WAVE_WIDTH):
            if not collect and limit <= floor:
                break
            wave = roots[start:start + WAVE_WIDTH]
            cap = None
            if remaining_nodes is not None:
                cap = remaining_nodes // len(wave)
                if cap <= 0:
                    exhausted = False
                    break

            def explore(root: int, limit=limit, cap=cap) -> _Subtree:
                pool = graph.adjacency[0] & graph.adjacency[root] & ~((2 << root) - 1)
                subtree = _Subtree(graph, m, floor, limit, collect, cap, deadline)
                return subtree.run([0, root], pool)

            if executor is not None:
                results = list(executor.map(explore, wave))
            else:
                results = [explore(root) for root in wave]

            for subtree in results:
                nodes += subtree.nodes
                exhausted = exhausted and subtree.exhausted
                time_hit = time_hit or subtree.time_hit
                if collect:
                    found.extend(subtree.found)
                elif subtree.best is not None and subtree._limit < limit:
                    best = subtree.best
                    limit = subtree._limit
            if remaining_nodes is not None:
                remaining_nodes -= sum(subtree.nodes for subtree in results)
            logger.debug(
                'wave at root %d: limit %d, %d nodes so far', start, limit, nodes,
            )
            if not exhausted:
                break
    finally:
        if executor is not None:
            executor.shutdown()
    return best, limit, found, nodes, exhausted, time_hit

def min_max_degree(
    params: JrtParams,
    n: int,
    m: int,
    budget: Budget = Budget(),
    threads: int = 1,
) -> SearchReport:
    '''Compute f(r,t;n,m) by branch and bound.

    The status is proved-optimal when the search tree was exhausted within
    budget, infeasible when it was exhausted without finding any m-edge
    member, and bounded otherwise.
    '''
    k = params.k
    if n < k:
        raise ParameterError(f'need n >= k = {k}, got {n}')
    if m < 0:
        raise ParameterError(f'edge count must be nonnegative, got {m}')

    average = average_degree_bound(params, n, m)
    seed = _seed(params, n, m)
    upper = seed.max_degree() if seed is not None else None

    def report(value, witness, status, nodes=0, time_hit=False) -> SearchReport:
        proved = status is SearchStatus.PROVED_OPTIMAL
        return SearchReport(
            params=params,
            n=n,
            m=m,
            value=value,
            witness=witness,
            lower_bound=value if proved else average,
            average_bound=average,
            upper_bound=upper,
            status=status,
            nodes_explored=nodes,
            time_budget_hit=time_hit,
        )

    if m <= 1:
        witness = seed if seed is not None else Hypergraph(n, (), k)
        return report(m, witness, SearchStatus.PROVED_OPTIMAL)
    if seed is not None and upper <= average:
        return report(upper, seed, SearchStatus.PROVED_OPTIMAL)

    graph = CompatibilityGraph(params, n)
    limit = upper if upper is not None else m + 1
    best, limit, _, nodes, exhausted, time_hit = _run_waves(
        graph, m, average, limit, False, budget, threads,
    )

    if best is not None:
        value = limit
        witness = Hypergraph(n, (graph.candidates[i] for i in best), k)
    elif seed is not None:
        value, witness = upper, seed
    else:
        value, witness = None, None

    if limit <= average and value is not None:
        status = SearchStatus.PROVED_OPTIMAL
    elif exhausted:
        status = SearchStatus.INFEASIBLE if value is None else SearchStatus.PROVED_OPTIMAL
    else:
        status = SearchStatus.BOUNDED
    logger.debug('f(%d, %d) = %s, %s after %d nodes', n, m, value, status, nodes)
    return report(value, witness, status, nodes, time_hit)

def incidence_graph(hypergraph: Hypergraph) -> nx.Graph:
    '''Bipartite vertex-edge incidence graph; isomorphisms of it are
    relabellings of the hypergraph.'''
    graph = nx.Graph()
    for vertex in range(hypergraph.n):
        graph.add_node(('v', vertex), side='v')
    for index, edge in enumerate(hypergraph.edges):
        graph.add_node(('e', index), side='e')
        for vertex in iter_bits(edge):
            graph.add_edge(('e', index), ('v', vertex))
    return graph

def isomorphic(first: Hypergraph, second: Hypergraph) -> bool:
    if first.n != second.n or len(first) != len(second):
        return False
    return nx.is_isomorphic(
        incidence_graph(first),
        incidence_graph(second),
        node_match=lambda a, b: a['side'] == b['side'],
    )

def _distinct_up_to_relabelling(hypergraphs: Iterable[Hypergraph]) -> List[Hypergraph]:
    buckets: Dict[str, List[Hypergraph]] = {}
    kept = []
    for hypergraph in hypergraphs:
        key = nx.weisfeiler_lehman_graph_hash(incidence_graph(hypergraph), node_attr='side')
        bucket = buckets.setdefault(key, [])
        if any(isomorphic(hypergraph, other) for other in bucket):
            continue
        bucket.append(hypergraph)
        kept.append(hypergraph)
    return kept

def extremal_witnesses(
    params: JrtParams,
    n: int,
    m: int,
    budget: Budget = Budget(),
    threads: int = 1,
    canonical: bool = False,
) -> WitnessList:
    '''Every m-edge member of J(r,t) on n vertices whose maximum degree is
    f(r,t;n,m).

    With canonical filtering only one representative per isomorphism class
    is returned.  The list is flagged incomplete when the value could not
    be proved or the budget ran out during enumeration.
    '''
    deadline = None
    if budget.seconds is not None:
        deadline = time.monotonic() + budget.seconds
    found = min_max_degree(params, n, m, budget, threads)
    if found.status is SearchStatus.INFEASIBLE:
        return WitnessList(report=found, witnesses=[], complete=True)
    if found.status is not SearchStatus.PROVED_OPTIMAL:
        witnesses = [found.witness] if found.witness is not None else []
        return WitnessList(report=found, witnesses=witnesses, complete=False)

    k = params.k
    if m == 0:
        return WitnessList(report=found, witnesses=[Hypergraph(n, (), k)], complete=True)

    graph = CompatibilityGraph(params, n)
    if m == 1:
        cliques = [[0]] if canonical else [[index] for index in range(len(graph))]
        complete = True
    else:
        cliques, complete = _collect(
            graph, m, found.value, budget, deadline, threads, canonical,
        )

    witnesses = [
        Hypergraph(n, (graph.candidates[index] for index in clique), k)
        for clique in cliques
    ]
    if canonical:
        witnesses = _distinct_up_to_relabelling(witnesses)
    else:
        witnesses = sorted(set(witnesses), key=lambda h: h.edges)
    return WitnessList(report=found, witnesses=witnesses, complete=complete)

def _collect(
    graph: CompatibilityGraph,
    m: int,
    value: int,
    budget: Budget,
    deadline: Optional[float],
    threads: int,
    canonical: bool,
):
    '''Enumerate the m-cliques of maximum degree at most value.

    One node count and one deadline cover the whole enumeration; running
    out of either ends it with the list flagged incomplete.
    '''
    if canonical:
        seconds = None
        if deadline is not None:
            seconds = max(0.0, deadline - time.monotonic())
        _, _, found, _, exhausted, _ = _run_waves(
            graph, m, 0, value + 1, True, Budget(budget.nodes, seconds), threads,
        )
        return found, exhausted

    cliques: List[List[int]] = []
    complete = True
    remaining = budget.nodes
    for first in range(len(graph)):
        if remaining is not None and remaining <= 0:
            complete = False
            break
        if deadline is not None and time.monotonic() > deadline:
            complete = False
            break
        pool = 0
        for index in iter_bits(graph.adjacency[first]):
            if index > first:
                pool |= 1 << index
        subtree = _Subtree(graph, m, 0, value + 1, True, remaining, deadline)
        subtree.run([first], pool)
        cliques.extend(subtree.found)
        if remaining is not None:
            remaining -= subtree.nodes
        if not subtree.exhausted:
            complete = False
            break
    return cliques, complete

def scan_row(
    params: JrtParams,
    n: int,
    budget: Budget = Budget(),
    threads: int = 1,
) -> ScanRow:
    '''One row of the phase scan at n.

    The searched values are f at m* = binom(floor(n/t), rt) and at m* + 1;
    the bound column is (m* + 1)/(3t).  Infeasible points count as 0.
    '''
    t = params.t
    m_star = thick_clique_size(params, n)
    bound = Fraction(m_star + 1, 3 * t)
    row = dict(
        n=n,
        m_star=m_star,
        thick_delta=thick_clique_degree(params, n),
        star_edges=rt_star_size(params, n),
    )
    if n < params.k:
        return ScanRow(
            bound_m_over_3t=Fraction(0),
            f_below=0,
            f_above=0,
            status=SearchStatus.INFEASIBLE,
            **row,
        )

    below = min_max_degree(params, n, m_star, budget, threads)
    above = min_max_degree(params, n, m_star + 1, budget, threads)
    statuses = {below.status, above.status}
    if SearchStatus.BOUNDED in statuses:
        status = SearchStatus.BOUNDED
    elif statuses == {SearchStatus.INFEASIBLE}:
        status = SearchStatus.INFEASIBLE
    else:
        status = SearchStatus.PROVED_OPTIMAL
    f_above = above.value or 0
    if above.status is SearchStatus.PROVED_OPTIMAL and f_above < bound:
        logger.warning(
            'n=%d: f(m*+1) = %d is below (m*+1)/(3t) = %s', n, f_above, bound,
        )
    return ScanRow(
        bound_m_over_3t=bound,
        f_below=below.value or 0,
        f_above=f_above,
        status=status,
        **row,
    )

def phase_scan(
    params: JrtParams,
    n_values: Sequence[int],
    budget: Budget = Budget(),
    threads: int = 1,
) -> List[ScanRow]:
    return [scan_row(params, n, budget, threads) for n in n_values]

def binomial_ratio(row: ScanRow) -> Fraction:
    '''star_edges / thick_delta, the growth comparison between the two
    constructions.'''
    if not row.thick_delta:
        return Fraction(0)
    return Fraction(row.star_edges, row.thick_delta)
