'''The decomposition lemma, executed.

Given a q-divisible pair (F, F u G) of set systems with members of size at
most k, F is first saturated to a maximal system F* with the same property
over the support of F u G.  The nonempty inclusion-minimal members of F*
form an antichain H such that every member of F is a disjoint union of
members of H, (H, H u G) is q-divisible and no vertex lies in more than
k^(2k) members of H.
'''

import logging
from concurrent.futures import ThreadPoolExecutor
from typing import Dict, List, NamedTuple, Sequence

from ._errors import (
    ConsistencyError,
    DivisibilityError,
    ParameterError,
    SupportTooLargeError,
)
from ._hypergraph import Hypergraph
from ._profiles import DivisiblePairParams, divisibility_witness
from ._util import submasks_of_size
from ._vertexset import VertexSet

logger = logging.getLogger(__name__)

MAX_SUPPORT = 24

class DecompositionResult(NamedTuple):
    params: DivisiblePairParams
    closure: Hypergraph
    basis: Hypergraph
    decompositions: Dict[VertexSet, List[VertexSet]]
    # Maximality of the closure holds relative to this vertex set.
    support: VertexSet

def _check_input(
    params: DivisiblePairParams,
    family: Hypergraph,
    other: Hypergraph,
) -> None:
    params.check()
    if family.n != other.n:
        raise ParameterError(f'universes differ: {family.n} and {other.n}')
    for system in (family, other):
        for edge in system.edges:
            if edge.bit_count() > params.k:
                raise ParameterError(f'member {edge!r} has more than {params.k} elements')
    everything = list(family.edges) + list(other.edges)
    witness = divisibility_witness(params.q, family.edges, everything)
    if witness is not None:
        raise DivisibilityError(params.q, witness)

def _compatible_with(q: int, fixed: Sequence[int], candidates: Sequence[int]) -> List[int]:
    return [
        candidate for candidate in candidates
        if all(not (candidate & member).bit_count() % q for member in fixed)
    ]

def saturate(
    params: DivisiblePairParams,
    family: Hypergraph,
    other: Hypergraph,
    max_support: int = MAX_SUPPORT,
    workers: int = 1,
) -> Hypergraph:
    '''Extend the family to a maximal F* keeping (F*, F* u G) q-divisible.

    Candidates are the subsets of the support of F u G whose size is a
    multiple of q and at most k, scanned by size and then colex order.  A
    rejected candidate conflicts with something that stays, so a single
    scan already reaches the fixpoint; the scan repeats until nothing is
    added anyway.
    '''
    _check_input(params, family, other)
    q, k = params.q, params.k
    support = family.support() | other.support()
    width = support.bit_count()
    if width > max_support:
        raise SupportTooLargeError(width, max_support)

    candidates: List[int] = []
    for size in range(0, min(k, width) + 1, q):
        candidates.extend(sorted(submasks_of_size(support, size)))

    fixed = list(other.edges)
    if workers > 1 and len(candidates) > 1:
        chunk = -(-len(candidates) // workers)
        pieces = [candidates[i:i + chunk] for i in range(0, len(candidates), chunk)]
        with ThreadPoolExecutor(max_workers=workers) as executor:
            survivors = [
                candidate
                for piece in executor.map(lambda part: _compatible_with(q, fixed, part), pieces)
                for candidate in piece
            ]
    else:
        survivors = _compatible_with(q, fixed, candidates)

    closure = list(family.edges)
    present = set(closure)
    rounds = 0
    added = 1
    while added:
        rounds += 1
        added = 0
        for candidate in survivors:
            if candidate in present:
                continue
            if all(not (candidate & member).bit_count() % q for member in closure):
                closure.append(candidate)
                present.add(candidate)
                added += 1

    logger.debug(
        'saturation: %d candidates, %d survive G, closure %d after %d rounds',
        len(candidates), len(survivors), len(closure), rounds,
    )
    return Hypergraph(family.n, closure)

def minimal_members(closure: Hypergraph) -> Hypergraph:
    '''Nonempty members with no nonempty proper subset in the system.
    '''
    basis: List[int] = []
    for member in sorted(closure.edges, key=lambda edge: (edge.bit_count(), edge)):
        if not member:
            continue
        if any(smaller & member == smaller for smaller in basis):
            continue
        basis.append(member)
    return Hypergraph(closure.n, basis)

def _express(
    member: VertexSet,
    basis: Sequence[VertexSet],
    closure: Hypergraph,
) -> List[VertexSet]:
    parts: List[VertexSet] = []
    rest = int(member)
    while rest:
        for candidate in basis:
            if candidate & rest == candidate:
                break
        else:
            raise ConsistencyError(
                'iii',
                f'{VertexSet(rest)!r} contains no basis member',
                witness=member,
            )
        parts.append(candidate)
        rest &= ~candidate
        if rest and rest not in closure:
            raise ConsistencyError(
                'iii',
                f'difference {VertexSet(rest)!r} fell out of the closure',
                witness=member,
            )
    return parts

def verify_decomposition(
    result: DecompositionResult,
    family: Hypergraph,
    other: Hypergraph,
) -> List[str]:
    '''Names of the lemma clauses the result violates.
    '''
    q, k = result.params.q, result.params.k
    basis = result.basis
    failures = []

    if basis.max_degree() > k ** (2 * k):
        failures.append('i')

    members = basis.edges
    for i, first in enumerate(members):
        if any(first & second in (first, second) for second in members[i + 1:]):
            failures.append('ii')
            break

    for member in family.edges:
        parts = result.decompositions.get(member)
        union = 0
        disjoint = parts is not None
        for part in parts or ():
            if union & part or part not in basis:
                disjoint = False
            union |= part
        if not disjoint or union != member:
            failures.append('iii')
            break

    if divisibility_witness(q, members, list(members) + list(other.edges)) is not None:
        failures.append('iv')

    if not set(members) <= set(result.closure.edges):
        failures.append('basis')
    return failures

def decompose(
    params: DivisiblePairParams,
    family: Hypergraph,
    other: Hypergraph,
    max_support: int = MAX_SUPPORT,
    workers: int = 1,
) -> DecompositionResult:
    '''Saturate, take the minimal members and split every member of the
    family into disjoint basis members, colex-least first.

    The four clauses of the lemma are verified before returning; a failure
    raises ConsistencyError naming the clause.
    '''
    closure = saturate(params, family, other, max_support, workers)
    basis = minimal_members(closure)
    decompositions = {
        member: _express(member, basis.edges, closure)
        for member in family.edges
    }
    result = DecompositionResult(
        params=params,
        closure=closure,
        basis=basis,
        decompositions=decompositions,
        support=family.support().union(other.support()),
    )
    failures = verify_decomposition(result, family, other)
    if failures:
        raise ConsistencyError(failures[0], f'decomposition violates clauses {failures}')
    return result
