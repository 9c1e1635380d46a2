'''Sunflower (delta-system) detection and the red colouring.

A sunflower with kernel f inside a set system is a family of members
containing f whose differences with f are pairwise disjoint; finding the
largest one is a set-packing problem on those differences.
'''

import logging
from concurrent.futures import ThreadPoolExecutor
from math import factorial
from typing import Dict, Iterable, List, NamedTuple, Optional, Sequence

from ._errors import ConsistencyError, ParameterError
from ._hypergraph import Hypergraph
from ._profiles import JrtParams
from ._util import iter_bits
from ._vertexset import VertexSet

logger = logging.getLogger(__name__)

EXACT_BUDGET = 24

class Sunflower(NamedTuple):
    kernel: VertexSet
    petals: List[VertexSet]
    # True when no larger sunflower with this kernel exists.
    maximum: bool

    @property
    def size(self) -> int:
        return len(self.petals)

    def is_valid(self) -> bool:
        '''Every pair of distinct petals meets exactly in the kernel.
        '''
        kernel = self.kernel
        petals = self.petals
        for petal in petals:
            if petal & kernel != kernel:
                return False
        for i, first in enumerate(petals):
            for second in petals[i + 1:]:
                if first & second != kernel:
                    return False
        return True

class SunflowerSearch(NamedTuple):
    sunflower: Optional[Sunflower]
    # True when absence of a larger sunflower was proved, not just observed.
    exhaustive: bool
    guaranteed: bool

class RedColouring(NamedTuple):
    red: Hypergraph
    h_star_red: Hypergraph
    h_hat_red: Hypergraph
    witnesses: Dict[VertexSet, Sunflower]

class _Packer:
    '''Branch and bound for a maximum family of pairwise disjoint sets.
    '''

    __slots__ = (
        '_sets',
        '_target',
        '_best',
        '_chosen',
        '_done',
    )

    def __init__(
        self,
        sets: Sequence[int],
        incumbent: List[int],
        target: Optional[int],
    ) -> None:
        self._sets = sets
        self._target = target
        self._best = list(incumbent)
        self._chosen: List[int] = []
        self._done = target is not None and len(incumbent) >= target

    def run(self) -> List[int]:
        if not self._done:
            self._search(list(range(len(self._sets))))
        return self._best

    def _bound(self, remaining: List[int]) -> int:
        sets = self._sets
        smallest = min(sets[index].bit_count() for index in remaining)
        if smallest == 0:
            return len(remaining)
        free = 0
        for index in remaining:
            free |= sets[index]
        return min(len(remaining), free.bit_count() // smallest)

    def _search(self, remaining: List[int]) -> None:
        chosen = self._chosen
        if len(chosen) > len(self._best):
            self._best = list(chosen)
            if self._target is not None and len(self._best) >= self._target:
                self._done = True
                return
        if not remaining:
            return
        if len(chosen) + self._bound(remaining) <= len(self._best):
            return

        sets = self._sets
        for position, index in enumerate(remaining):
            if len(chosen) + len(remaining) - position <= len(self._best):
                return
            current = sets[index]
            chosen.append(index)
            self._search([
                other for other in remaining[position + 1:]
                if not sets[other] & current
            ])
            chosen.pop()
            if self._done:
                return

def _greedy(petals: Sequence[int]) -> List[int]:
    order = sorted(range(len(petals)), key=lambda i: (petals[i].bit_count(), petals[i]))
    used = 0
    picked = []
    for index in order:
        if not petals[index] & used:
            picked.append(index)
            used |= petals[index]
    return sorted(picked)

def max_sunflower_with_kernel(
    system: Hypergraph,
    kernel: int,
    exact_budget: Optional[int] = EXACT_BUDGET,
    target: Optional[int] = None,
) -> Sunflower:
    '''The largest sunflower in the system whose kernel is exactly the
    given set.

    The search is exact when there are at most exact_budget candidate
    members (None means always exact); otherwise a greedy packing is
    returned with maximum=False.  When a target is given the search stops as
    soon as that many petals are found.
    '''
    members = [edge for edge in system.edges if edge & kernel == kernel]
    petals = [edge & ~kernel for edge in members]
    picked = _greedy(petals)

    maximum = True
    if target is not None and len(picked) >= target:
        maximum = len(picked) == len(members)
    elif exact_budget is None or len(members) <= exact_budget:
        picked = _Packer(petals, picked, target).run()
        maximum = target is None or len(picked) < target or len(picked) == len(members)
    else:
        maximum = len(picked) == len(members)
        if not maximum:
            logger.debug(
                'greedy sunflower for kernel %r over %d candidates',
                VertexSet(kernel), len(members),
            )

    return Sunflower(
        kernel=VertexSet(kernel),
        petals=sorted(VertexSet(members[index]) for index in picked),
        maximum=maximum,
    )

def _candidate_kernels(system: Hypergraph) -> List[int]:
    kernels = {0}
    edges = system.edges
    for i, first in enumerate(edges):
        kernels.add(int(first))
        for second in edges[i + 1:]:
            kernels.add(first & second)
    return sorted(kernels)

def erdos_rado_bound(a: int, b: int) -> int:
    return factorial(b) * a ** (b + 1)

def find_sunflower(
    system: Hypergraph,
    a: int,
    b: int,
    exact_budget: Optional[int] = EXACT_BUDGET,
) -> SunflowerSearch:
    '''Look for a sunflower with more than a members.

    Kernels are drawn from the empty set, the members and their pairwise
    intersections, which covers every kernel of a sunflower with two or
    more petals.  When the system has more than b!a^(b+1) members a
    sunflower must exist, so the search runs exactly and failure is an
    internal error.
    '''
    if a < 1 or b < 1:
        raise ParameterError(f'need positive a and b, got a={a}, b={b}')
    for edge in system.edges:
        if edge.bit_count() > b:
            raise ParameterError(f'member {edge!r} has more than {b} elements')

    guaranteed = len(system) > erdos_rado_bound(a, b)
    budget = None if guaranteed else exact_budget
    exhaustive = True
    for kernel in _candidate_kernels(system):
        found = max_sunflower_with_kernel(system, kernel, budget, target=a + 1)
        if found.size > a:
            return SunflowerSearch(sunflower=found, exhaustive=True, guaranteed=guaranteed)
        exhaustive = exhaustive and found.maximum

    if guaranteed:
        raise ConsistencyError(
            'sunflower-lemma',
            f'{len(system)} sets of size <= {b} without a sunflower of size {a + 1}',
        )
    return SunflowerSearch(sunflower=None, exhaustive=exhaustive, guaranteed=False)

def frequent_subsets(
    edges: Sequence[int],
    max_size: int,
    min_count: int,
) -> Iterable[int]:
    '''Every set of at most max_size vertices contained in at least
    min_count of the edges, grown level by level.
    '''
    if len(edges) < min_count:
        return
    frontier = [(0, -1, list(edges))]
    while frontier:
        kernel, top, containing = frontier.pop()
        yield kernel
        if kernel.bit_count() >= max_size:
            continue
        support = 0
        for edge in containing:
            support |= edge
        support &= ~((1 << (top + 1)) - 1)
        for vertex in iter_bits(support):
            bit = 1 << vertex
            narrowed = [edge for edge in containing if edge & bit]
            if len(narrowed) >= min_count:
                frontier.append((kernel | bit, vertex, narrowed))

def red_colouring(
    params: JrtParams,
    hypergraph: Hypergraph,
    workers: int = 1,
) -> RedColouring:
    '''Colour red every set of at most rt(t-1)+1 vertices that is the
    kernel of a sunflower with at least rt^2 edges of the hypergraph.

    Decisions are exact.  Only sets lying in at least rt^2 edges can
    qualify, so candidates are enumerated from those alone.
    '''
    need = params.k
    max_size = params.red_size
    n = hypergraph.n
    candidates = sorted(
        kernel
        for kernel in frequent_subsets(hypergraph.edges, max_size, need)
        if (params.k - kernel.bit_count()) * need <= n - kernel.bit_count()
    )

    def decide(kernel: int) -> Sunflower:
        return max_sunflower_with_kernel(hypergraph, kernel, None, target=need)

    if workers > 1:
        with ThreadPoolExecutor(max_workers=workers) as executor:
            results = list(executor.map(decide, candidates))
    else:
        results = [decide(kernel) for kernel in candidates]

    witnesses = {
        sunflower.kernel: sunflower
        for sunflower in results
        if sunflower.size >= need
    }
    red = sorted(witnesses)
    star = [kernel for kernel in red if kernel.bit_count() == max_size]
    hat = [kernel for kernel in red if kernel.bit_count() != max_size]
    logger.debug(
        'red colouring: %d candidates, %d red, %d of size %d',
        len(candidates), len(red), len(star), max_size,
    )
    return RedColouring(
        red=Hypergraph(n, red),
        h_star_red=Hypergraph(n, star, max_size),
        h_hat_red=Hypergraph(n, hat),
        witnesses=witnesses,
    )
