'''Pulling heavy star cores out of a member of J(r,t) one at a time.
'''

import logging
from enum import Enum, unique
from typing import List, NamedTuple

from ._decomposition import MAX_SUPPORT
from ._errors import ConsistencyError
from ._hypergraph import Hypergraph
from ._profiles import JrtParams
from ._stars import Star, StarCore, core, hat_n
from ._structure import AssertLevel, build_structure
from ._util import binomial, full_mask
from ._vertexset import VertexSet

logger = logging.getLogger(__name__)

@unique
class StopReason(str, Enum):
    FEW_VERTICES = 'few-vertices'
    FEW_EDGES = 'few-edges'
    NO_STAR = 'no-star'

    def __str__(self) -> str:
        return self.value

class ExtractionStep(NamedTuple):
    star: Star
    core: StarCore
    vertices: int
    edges: int
    # Edges deleted with the core body that lie outside the star.
    foreign: List[VertexSet]

class Extraction(NamedTuple):
    steps: List[ExtractionStep]
    residual: Hypergraph
    remaining: VertexSet
    threshold: int
    stopped: StopReason

def _largest_star(stars: List[Star]) -> Star:
    return min(stars, key=lambda star: (-star.size, star.centre))

def extract_stars(
    params: JrtParams,
    hypergraph: Hypergraph,
    max_support: int = MAX_SUPPORT,
    workers: int = 1,
    assert_level: AssertLevel = AssertLevel.SOFT,
) -> Extraction:
    '''Repeatedly take the largest star of the current structure
    certificate, peel it to its core and delete the core body together with
    the star's edges.

    The loop runs while the surviving vertex count n_i is at least
    hat_n(n, m) and the surviving edge count m_i exceeds
    binom(floor(n_i/t), rt).
    '''
    n, m = hypergraph.n, len(hypergraph)
    threshold = hat_n(params, n, m) if n else 1
    alive = full_mask(n)
    current = hypergraph
    steps: List[ExtractionStep] = []

    while True:
        vertices = alive.bit_count()
        edges = len(current)
        if vertices < threshold:
            stopped = StopReason.FEW_VERTICES
            break
        if edges <= binomial(vertices // params.t, params.ell):
            stopped = StopReason.FEW_EDGES
            break

        structure = build_structure(
            params,
            current,
            max_support=max_support,
            workers=workers,
            assert_level=assert_level,
        )
        stars = structure.certificate.stars
        if not stars:
            stopped = StopReason.NO_STAR
            break

        star = _largest_star(stars)
        peeled = core(params, star)
        body = peeled.core.body
        own = set(star.edges)
        doomed = [edge for edge in current.edges if edge & body or edge in own]
        foreign = [edge for edge in doomed if edge not in own]
        if foreign:
            if assert_level is AssertLevel.HARD:
                raise ConsistencyError(
                    'extraction', 'core deletion removes foreign edges', witness=foreign[0],
                )
            logger.warning(
                'deleting the core at %r removes %d edges outside the star',
                star.centre, len(foreign),
            )

        steps.append(ExtractionStep(
            star=star,
            core=peeled,
            vertices=vertices,
            edges=edges,
            foreign=foreign,
        ))
        logger.debug(
            'extraction %d: centre %r, %d star edges, core body %d',
            len(steps), star.centre, star.size, body.bit_count(),
        )
        alive &= ~body
        current = current.without(doomed)

    return Extraction(
        steps=steps,
        residual=current,
        remaining=VertexSet(alive),
        threshold=threshold,
        stopped=stopped,
    )
