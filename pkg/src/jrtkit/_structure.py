'''The structure pipeline: colour, decompose, form teams and stars, and
certify that a member of J(r,t) splits into a thick part, a star part and a
small residue.

Stages, in order:

1. red colouring of the sunflower kernels of H;
2. the decomposition lemma on (red sets of size at most rt(t-1),
   uniform red sets and H), whose basis members are the green sets;
3. teams (green t-sets), V_T and H_T = H[V_T];
4. purple sets, the popular kernels among the uniform red sets;
5. H_S, the edges made of a purple set and vertices completing it to
   uniform red sets, and V_S;
6. the remainders V_R and H_R;
7. runtime checks of the intermediate identities;
8. classification of the residual edges;
9. verification of the finished certificate.

Every check is a theorem for genuine members of J(r,t), so a failure
raises ConsistencyError.
'''

import logging
from enum import Enum, unique
from fractions import Fraction
from typing import Dict, List, NamedTuple, Optional, Tuple

from ._decomposition import (
    MAX_SUPPORT,
    DecompositionResult,
    decompose,
    verify_decomposition,
)
from ._errors import ConsistencyError, DivisibilityError, ParameterError
from ._hypergraph import Hypergraph
from ._profiles import (
    DivisiblePairParams,
    JrtParams,
    first_violation,
    rank_bound_check,
)
from ._stars import Star
from ._sunflowers import RedColouring, max_sunflower_with_kernel, red_colouring
from ._util import binomial, full_mask, iter_bits
from ._vertexset import VertexSet

logger = logging.getLogger(__name__)

@unique
class AssertLevel(str, Enum):
    SOFT = 'soft'
    HARD = 'hard'

    def __str__(self) -> str:
        return self.value

@unique
class ResidualClass(str, Enum):
    STAR_TEAM = 'H_ST'
    UNCOVERED = 'H1'
    GREEN = 'H2'
    RED_UNION = 'H3x'
    RED_PARTIAL = 'H3y'

    def __str__(self) -> str:
        return self.value

class StructureCertificate(NamedTuple):
    n: int
    v_t: VertexSet
    v_s: VertexSet
    v_r: VertexSet
    h_t: Hypergraph
    h_s: Hypergraph
    h_r: Hypergraph
    teams: List[VertexSet]
    stars: List[Star]
    t: int
    ell: int
    a: int

class StarAssignment(NamedTuple):
    centre: VertexSet
    # How many purple sets qualified; the colex-least one was taken.
    alternatives: int

class ResidualEdge(NamedTuple):
    kind: ResidualClass
    # For RED_UNION edges: 'i' when two uniform red subsets meet in at most
    # rt(t-1)-t vertices, 'ii' when some rt(t-1)-set in the edge becomes
    # uniform red with each remaining vertex.
    subkind: Optional[str]

class PipelineTrace(NamedTuple):
    red: RedColouring
    decomposition: DecompositionResult
    green: Hypergraph
    purple: Hypergraph
    star_assignments: Dict[VertexSet, StarAssignment]
    residual_classes: Dict[VertexSet, ResidualEdge]
    soft_failures: List[str]

class Structure(NamedTuple):
    certificate: StructureCertificate
    trace: PipelineTrace

class Violation(NamedTuple):
    clause: str
    witness: Optional[object]

class CertificateReport(NamedTuple):
    valid: bool
    violations: List[Violation]

class StabilityReport(NamedTuple):
    edges: int
    joint_bound: int
    split_bound: int

    @property
    def within(self) -> bool:
        return self.edges <= self.joint_bound and self.edges <= self.split_bound

def is_inseparable(hypergraph: Hypergraph, vertices: int) -> bool:
    '''Every edge contains all of the vertex set or none of it.'''
    return all(edge & vertices in (0, vertices) for edge in hypergraph.edges)

def inseparable_classes(hypergraph: Hypergraph) -> List[VertexSet]:
    '''Vertices grouped by the set of edges containing them.

    A vertex set is inseparable exactly when it lies inside one class.
    '''
    signatures: Dict[int, int] = {}
    for index, edge in enumerate(hypergraph.edges):
        for vertex in iter_bits(edge):
            signatures[vertex] = signatures.get(vertex, 0) | 1 << index
    classes: Dict[int, int] = {}
    for vertex in range(hypergraph.n):
        signature = signatures.get(vertex, 0)
        classes[signature] = classes.get(signature, 0) | 1 << vertex
    return sorted(VertexSet(members) for members in classes.values())

def is_thick(hypergraph: Hypergraph, t: int) -> bool:
    '''Whether the vertices hold floor(n/t) disjoint inseparable t-sets.

    For a k-graph with t dividing k this makes it a subhypergraph of a thick
    clique.
    '''
    if t < 1:
        raise ParameterError(f'team size must be positive, got {t}')
    available = sum(
        members.bit_count() // t
        for members in inseparable_classes(hypergraph)
    )
    return available >= hypergraph.n // t

def purple_sets(params: JrtParams, h_star_red: Hypergraph) -> Hypergraph:
    '''The rt(t-1)-sets that are kernels of sunflowers of at least rt^2
    uniform red sets.
    '''
    need = params.k
    counts: Dict[int, int] = {}
    for member in h_star_red.edges:
        for vertex in iter_bits(member):
            kernel = member & ~(1 << vertex)
            counts[kernel] = counts.get(kernel, 0) + 1
    purple = [
        kernel
        for kernel, count in sorted(counts.items())
        if count >= need
        and max_sunflower_with_kernel(h_star_red, kernel, None, target=need).size >= need
    ]
    return Hypergraph(h_star_red.n, purple, params.centre_size if purple else None)

def _check_red_profile(params: JrtParams, hypergraph: Hypergraph, red: Hypergraph) -> None:
    sets = list(hypergraph.edges) + [edge for edge in red.edges if edge not in hypergraph]
    for member in sets:
        if not params.permits(member.bit_count()):
            raise ConsistencyError('red-profile', f'size of {member!r} not permitted', witness=member)
    violation = first_violation(params, sets)
    if violation is not None:
        raise ConsistencyError('red-profile', 'red sets and edges meet badly', witness=violation)

def _check_uniform_red(params: JrtParams, h_star_red: Hypergraph) -> None:
    if len(h_star_red) > h_star_red.n:
        raise ConsistencyError(
            'uniform-red-count', f'{len(h_star_red)} uniform red sets on {h_star_red.n} vertices',
        )
    if not h_star_red.edges:
        return
    report = rank_bound_check(params.t, h_star_red)
    if not (report.hypotheses and report.independent):
        raise ConsistencyError('uniform-red-rank', f'rank check failed: {report}')

def _assign_stars(
    params: JrtParams,
    hypergraph: Hypergraph,
    purple: Hypergraph,
    h_star_red: Hypergraph,
) -> Dict[VertexSet, StarAssignment]:
    assignments = {}
    for edge in hypergraph.edges:
        chosen = None
        alternatives = 0
        for kernel in purple.edges:
            if kernel & edge != kernel:
                continue
            if all(kernel | 1 << v in h_star_red for v in iter_bits(edge & ~kernel)):
                alternatives += 1
                if chosen is None:
                    chosen = kernel
        if chosen is not None:
            assignments[edge] = StarAssignment(centre=chosen, alternatives=alternatives)
            if alternatives > 1:
                logger.debug('edge %r: %d purple centres, took %r', edge, alternatives, chosen)
    return assignments

def _group_stars(assignments: Dict[VertexSet, StarAssignment]) -> List[Star]:
    grouped: Dict[VertexSet, List[VertexSet]] = {}
    for edge, assignment in assignments.items():
        grouped.setdefault(assignment.centre, []).append(edge)
    return [Star.of(centre, edges) for centre, edges in sorted(grouped.items())]

def _check_stars(
    hypergraph: Hypergraph,
    stars: List[Star],
    v_s: int,
    v_t: int,
) -> None:
    if v_s & v_t:
        raise ConsistencyError('bodies-avoid-teams', 'star bodies meet the teams', witness=VertexSet(v_s & v_t))
    for star in stars:
        if star.centre & v_s:
            raise ConsistencyError('centres-avoid-bodies', f'centre {star.centre!r} meets V_S', witness=star.centre)
    seen = 0
    for star in stars:
        if star.body & seen:
            raise ConsistencyError('semi-disjoint', 'star bodies overlap', witness=star.centre)
        seen |= star.body
    for star in stars:
        for edge in hypergraph.edges:
            if edge & star.body and edge & star.centre != star.centre:
                raise ConsistencyError(
                    'centre-containment', f'edge misses the centre {star.centre!r}', witness=edge,
                )

def _union_of_subsets(edge: int, system) -> int:
    covered = 0
    for member in system:
        if member and member & edge == member:
            covered |= member
    return covered

def _red_union_subkind(params: JrtParams, edge: int, h_star_red: Hypergraph) -> str:
    inside = [member for member in h_star_red.edges if member & edge == member]
    limit = params.centre_size - params.t
    for i, first in enumerate(inside):
        for second in inside[i + 1:]:
            if (first & second).bit_count() <= limit:
                return 'i'
    # Kind ii: some Y in h, |Y| = rt(t-1), with Y + v uniform red for all v in h - Y.
    for member in inside:
        for vertex in iter_bits(member):
            base = member & ~(1 << vertex)
            if all(base | 1 << other in h_star_red for other in iter_bits(edge & ~base)):
                return 'ii'
    raise ConsistencyError(
        'red-union-kind', 'red union edge is of neither kind', witness=VertexSet(edge),
    )

def _classify_residual(
    params: JrtParams,
    h_r: Hypergraph,
    v_s: int,
    v_r: int,
    teams: List[VertexSet],
    stars: List[Star],
    red: RedColouring,
    green: Hypergraph,
) -> Dict[VertexSet, ResidualEdge]:
    centre_of: Dict[int, int] = {}
    for star in stars:
        for vertex in iter_bits(star.body):
            centre_of[vertex] = star.centre | 1 << vertex

    red_and_green = list(red.red.edges) + list(green.edges)
    classes = {}
    for edge in h_r.edges:
        team_inside = [team for team in teams if team & edge == team]
        star_team = any(
            not centre_of[vertex] & team
            for vertex in iter_bits(edge & v_s)
            for team in team_inside
        )
        if star_team:
            classes[edge] = ResidualEdge(ResidualClass.STAR_TEAM, None)
        elif _union_of_subsets(edge, red_and_green) != edge:
            classes[edge] = ResidualEdge(ResidualClass.UNCOVERED, None)
        elif _union_of_subsets(edge, green.edges) == edge:
            classes[edge] = ResidualEdge(ResidualClass.GREEN, None)
        elif any(member & edge == member for member in red.h_star_red.edges):
            if _union_of_subsets(edge, red.h_star_red.edges) == edge:
                subkind = _red_union_subkind(params, edge, red.h_star_red)
                classes[edge] = ResidualEdge(ResidualClass.RED_UNION, subkind)
            else:
                classes[edge] = ResidualEdge(ResidualClass.RED_PARTIAL, None)
        else:
            raise ConsistencyError('residual', 'edge fits no residual class', witness=edge)

        if not edge & v_r and classes[edge].kind is not ResidualClass.STAR_TEAM:
            raise ConsistencyError('residual-meets-remainder', 'residual edge avoids V_R', witness=edge)
    return classes

def _decompose_by_component(
    params: DivisiblePairParams,
    hypergraph: Hypergraph,
    family: Hypergraph,
    other: Hypergraph,
    max_support: int,
    workers: int,
) -> DecompositionResult:
    '''The decomposition lemma run on each component of H separately.

    Red sets lie inside edges, so every member of the pair except the empty
    set falls in exactly one component.  Members of different components
    meet in nothing, so the merged basis still satisfies the lemma and only
    the largest component counts against max_support.
    '''
    parts = hypergraph.components().parts
    if len(parts) <= 1:
        return decompose(params, family, other, max_support=max_support, workers=workers)

    closure: List[VertexSet] = []
    basis: List[VertexSet] = []
    decompositions: Dict[VertexSet, List[VertexSet]] = {}
    for part in parts:
        inside = part.vertices
        result = decompose(
            params,
            family.induced(inside),
            other.induced(inside),
            max_support=max_support,
            workers=workers,
        )
        closure.extend(result.closure.edges)
        basis.extend(result.basis.edges)
        decompositions.update(result.decompositions)
    logger.debug('decomposed %d components separately', len(parts))

    merged = DecompositionResult(
        params=params,
        closure=Hypergraph(hypergraph.n, closure),
        basis=Hypergraph(hypergraph.n, basis),
        decompositions=decompositions,
        support=family.support().union(other.support()),
    )
    failures = verify_decomposition(merged, family, other)
    if failures:
        raise ConsistencyError(failures[0], f'merged decomposition violates clauses {failures}')
    return merged

def build_structure(
    params: JrtParams,
    hypergraph: Hypergraph,
    max_support: int = MAX_SUPPORT,
    workers: int = 1,
    assert_level: AssertLevel = AssertLevel.SOFT,
) -> Structure:
    '''Run the structure pipeline on a member of J(r,t).

    Non-members are rejected with ParameterError before any work is done.
    '''
    if not hypergraph.is_uniform(params.k):
        raise ParameterError(f'hypergraph is not {params.k}-uniform')
    violation = first_violation(params, hypergraph.edges)
    if violation is not None:
        raise ParameterError(f'not a member of {params!r}: {violation!r} meet badly')

    n = hypergraph.n
    t = params.t

    red = red_colouring(params, hypergraph, workers)
    _check_red_profile(params, hypergraph, red.red)
    _check_uniform_red(params, red.h_star_red)

    other = Hypergraph(n, list(red.h_star_red.edges) + list(hypergraph.edges))
    try:
        decomposition = _decompose_by_component(
            DivisiblePairParams(q=t, k=params.k),
            hypergraph,
            red.h_hat_red,
            other,
            max_support,
            workers,
        )
    except DivisibilityError as error:
        raise ConsistencyError('red-profile', str(error), witness=error.witness) from error
    green = decomposition.basis

    teams = [member for member in green.edges if member.bit_count() == t]
    v_t = 0
    for team in teams:
        if any(team & other_green and other_green != team for other_green in green.edges):
            raise ConsistencyError('teams', f'team {team!r} meets another green set', witness=team)
        v_t |= team
    h_t = hypergraph.induced(v_t)

    purple = purple_sets(params, red.h_star_red)
    assignments = _assign_stars(params, hypergraph, purple, red.h_star_red)
    stars = _group_stars(assignments)
    v_s = 0
    for star in stars:
        v_s |= star.body
    h_s = Hypergraph(n, assignments)

    v_r = full_mask(n) & ~v_t & ~v_s
    h_r = hypergraph.without(list(h_t.edges) + list(h_s.edges))

    _check_stars(hypergraph, stars, v_s, v_t)
    residual = _classify_residual(params, h_r, v_s, v_r, teams, stars, red, green)

    certificate = StructureCertificate(
        n=n,
        v_t=VertexSet(v_t),
        v_s=VertexSet(v_s),
        v_r=VertexSet(v_r),
        h_t=h_t,
        h_s=h_s,
        h_r=h_r,
        teams=teams,
        stars=stars,
        t=t,
        ell=params.ell,
        a=params.a,
    )

    soft_failures = []
    if not v_s:
        if h_r.edges:
            soft_failures.append('no-stars-implies-no-residual')
        if len(hypergraph) > binomial(n // t, params.ell):
            soft_failures.append('no-stars-implies-thick-bound')
    for failure in soft_failures:
        if assert_level is AssertLevel.HARD:
            raise ConsistencyError(failure, 'soft structural check failed')
        logger.warning('soft check %s failed on %r', failure, hypergraph)

    report = verify_certificate(params, hypergraph, certificate)
    if not report.valid:
        first = report.violations[0]
        raise ConsistencyError(first.clause, 'certificate rejected', witness=first.witness)

    logger.debug(
        'structure: %d red, %d green, %d teams, %d purple, %d stars, |H_R| = %d',
        len(red.red), len(green), len(teams), len(purple), len(stars), len(h_r),
    )
    trace = PipelineTrace(
        red=red,
        decomposition=decomposition,
        green=green,
        purple=purple,
        star_assignments=assignments,
        residual_classes=residual,
        soft_failures=soft_failures,
    )
    return Structure(certificate=certificate, trace=trace)

def residual_bound(certificate: StructureCertificate) -> Fraction:
    '''|V_T||V_S|n^(ell-3) + |V_R|an^(ell-2), exactly.'''
    n = certificate.n
    if n == 0:
        return Fraction(0)
    ell = certificate.ell
    return (
        certificate.v_t.bit_count() * certificate.v_s.bit_count() * Fraction(n) ** (ell - 3)
        + certificate.v_r.bit_count() * certificate.a * Fraction(n) ** (ell - 2)
    )

def _partition_violations(
    hypergraph: Hypergraph,
    certificate: StructureCertificate,
) -> List[Violation]:
    found = []
    v_t, v_s, v_r = certificate.v_t, certificate.v_s, certificate.v_r
    if v_t & v_s or v_t & v_r or v_s & v_r or v_t | v_s | v_r != full_mask(hypergraph.n):
        found.append(Violation('partition', 'vertex parts'))
    parts = [certificate.h_t.edges, certificate.h_s.edges, certificate.h_r.edges]
    listed = [edge for part in parts for edge in part]
    if len(listed) != len(set(listed)) or set(listed) != set(hypergraph.edges):
        found.append(Violation('partition', 'edge parts'))
    return found

def _team_violations(
    hypergraph: Hypergraph,
    certificate: StructureCertificate,
) -> List[Violation]:
    found = []
    covered = 0
    for team in certificate.teams:
        if team.bit_count() != certificate.t or team & covered:
            found.append(Violation('i', team))
        elif not is_inseparable(hypergraph, team):
            found.append(Violation('i', team))
        covered |= team
    if covered != certificate.v_t:
        found.append(Violation('i', certificate.v_t))
    if set(certificate.h_t.edges) != set(hypergraph.induced(certificate.v_t).edges):
        found.append(Violation('i', 'H_T'))
    return found

def _star_violations(
    hypergraph: Hypergraph,
    certificate: StructureCertificate,
) -> List[Violation]:
    found = []
    v_s = certificate.v_s
    expected = {
        edge for edge in hypergraph.edges
        if (edge & v_s).bit_count() == certificate.ell
    }
    if set(certificate.h_s.edges) != expected:
        found.append(Violation('ii', 'H_S'))

    centres = set()
    bodies = 0
    star_edges = set()
    outside = certificate.v_t | certificate.v_r
    for star in certificate.stars:
        if star.centre in centres or star.body & bodies:
            found.append(Violation('ii', star.centre))
        if star.centre & ~outside or star.body & ~v_s:
            found.append(Violation('ii', star.centre))
        centres.add(star.centre)
        bodies |= star.body
        star_edges.update(star.edges)
    if star_edges != set(certificate.h_s.edges):
        found.append(Violation('ii', 'stars'))

    for star in certificate.stars:
        for edge in hypergraph.edges:
            if edge & star.body and edge & star.centre != star.centre:
                found.append(Violation('iii', edge))
                break
    return found

def verify_certificate(
    params: JrtParams,
    hypergraph: Hypergraph,
    certificate: StructureCertificate,
) -> CertificateReport:
    '''Check a certificate against the hypergraph, however it was made.

    Every violated clause is listed: 'partition' for ill-formed parts, then
    'i' (teams), 'ii' (star part), 'iii' (centre containment) and 'iv'
    (residual size).
    '''
    violations = _partition_violations(hypergraph, certificate)
    violations.extend(_team_violations(hypergraph, certificate))
    violations.extend(_star_violations(hypergraph, certificate))
    if certificate.ell != params.ell or certificate.t != params.t:
        violations.append(Violation('iv', 'parameters'))
    elif len(certificate.h_r) > residual_bound(certificate):
        violations.append(Violation('iv', len(certificate.h_r)))
    return CertificateReport(valid=not violations, violations=violations)

def stability_diagnostic(
    params: JrtParams,
    hypergraph: Hypergraph,
    certificate: StructureCertificate,
) -> StabilityReport:
    '''Edge count against the thick-plus-star sizes the certificate allows.

    Reported, never asserted.
    '''
    ell = params.ell
    team_count = certificate.v_t.bit_count() // params.t
    stars = certificate.v_s.bit_count()
    residue = len(certificate.h_r)
    return StabilityReport(
        edges=len(hypergraph),
        joint_bound=binomial(stars + team_count, ell) + residue,
        split_bound=binomial(team_count, ell) + binomial(stars, ell) + residue,
    )
