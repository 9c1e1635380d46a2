'''Exact toolkit for the intersection-constrained uniform hypergraphs J(r,t).
'''

from ._vertexset import VertexSet
from ._hypergraph import (
    Component,
    Components,
    Hypergraph,
    canonicalize,
    components,
    degree,
    induced,
    intersection_size,
    max_degree,
)
from ._errors import (
    ConsistencyError,
    DivisibilityError,
    NonUniformError,
    ParameterError,
    SupportTooLargeError,
)
from ._profiles import (
    DivisiblePairParams,
    JrtParams,
    MembershipReport,
    RankReport,
    first_violation,
    gf2_rank,
    gfp_rank,
    in_profile,
    is_divisible_pair,
    is_jrt_member,
    is_t_divisible,
    rank_bound_check,
)
from ._constructions import (
    REJECTION_FACTOR,
    Gadget,
    GeneratorKind,
    RandomResult,
    StarSpec,
    TeamPartition,
    full_star,
    gadget_vertex_count,
    random_jrt,
    rt_star,
    rt_star_size,
    team_partition,
    thick_clique,
    thick_clique_degree,
    thick_clique_size,
    thick_subgraph,
    two_star_gadget,
)
from ._sunflowers import (
    EXACT_BUDGET,
    RedColouring,
    Sunflower,
    SunflowerSearch,
    erdos_rado_bound,
    find_sunflower,
    max_sunflower_with_kernel,
    red_colouring,
)
from ._decomposition import (
    MAX_SUPPORT,
    DecompositionResult,
    decompose,
    minimal_members,
    saturate,
    verify_decomposition,
)
from ._stars import (
    ContainmentReport,
    Star,
    StarCore,
    centre_containment_check,
    core,
    exceeds_lower_scale,
    hat_n,
    heavy_threshold,
    is_heavy,
    peel_allowance,
)
from ._structure import (
    AssertLevel,
    CertificateReport,
    PipelineTrace,
    ResidualClass,
    StabilityReport,
    Structure,
    StructureCertificate,
    build_structure,
    is_inseparable,
    is_thick,
    purple_sets,
    stability_diagnostic,
    verify_certificate,
)
from ._extraction import Extraction, ExtractionStep, StopReason, extract_stars
from ._search import (
    WAVE_WIDTH,
    Budget,
    CompatibilityGraph,
    ScanRow,
    SearchReport,
    SearchStatus,
    WitnessList,
    average_degree_bound,
    extremal_witnesses,
    isomorphic,
    min_max_degree,
    phase_scan,
    thick_upper_bound,
)
from ._serializers import (
    DocumentError,
    Serializer,
    hypergraph_from_document,
    hypergraph_to_document,
    to_document,
)
from ._store import Connection, Database, Mode, ReportStore

__all__ = (
    'AssertLevel',
    'Budget',
    'CertificateReport',
    'CompatibilityGraph',
    'Component',
    'Components',
    'Connection',
    'ConsistencyError',
    'ContainmentReport',
    'Database',
    'DecompositionResult',
    'DivisibilityError',
    'DivisiblePairParams',
    'DocumentError',
    'EXACT_BUDGET',
    'Extraction',
    'ExtractionStep',
    'Gadget',
    'GeneratorKind',
    'Hypergraph',
    'JrtParams',
    'MAX_SUPPORT',
    'MembershipReport',
    'Mode',
    'NonUniformError',
    'ParameterError',
    'PipelineTrace',
    'REJECTION_FACTOR',
    'RandomResult',
    'RankReport',
    'RedColouring',
    'ReportStore',
    'ResidualClass',
    'ScanRow',
    'SearchReport',
    'SearchStatus',
    'Serializer',
    'StabilityReport',
    'Star',
    'StarCore',
    'StarSpec',
    'StopReason',
    'Structure',
    'StructureCertificate',
    'Sunflower',
    'SunflowerSearch',
    'SupportTooLargeError',
    'TeamPartition',
    'VertexSet',
    'WAVE_WIDTH',
    'WitnessList',
    'average_degree_bound',
    'build_structure',
    'canonicalize',
    'centre_containment_check',
    'components',
    'core',
    'decompose',
    'degree',
    'erdos_rado_bound',
    'exceeds_lower_scale',
    'extract_stars',
    'extremal_witnesses',
    'find_sunflower',
    'first_violation',
    'full_star',
    'gadget_vertex_count',
    'gf2_rank',
    'gfp_rank',
    'hat_n',
    'heavy_threshold',
    'hypergraph_from_document',
    'hypergraph_to_document',
    'in_profile',
    'induced',
    'intersection_size',
    'is_divisible_pair',
    'is_heavy',
    'is_inseparable',
    'is_jrt_member',
    'is_t_divisible',
    'is_thick',
    'isomorphic',
    'max_degree',
    'max_sunflower_with_kernel',
    'min_max_degree',
    'minimal_members',
    'peel_allowance',
    'phase_scan',
    'purple_sets',
    'random_jrt',
    'rank_bound_check',
    'red_colouring',
    'rt_star',
    'rt_star_size',
    'saturate',
    'stability_diagnostic',
    'team_partition',
    'thick_clique',
    'thick_clique_degree',
    'thick_clique_size',
    'thick_subgraph',
    'thick_upper_bound',
    'to_document',
    'two_star_gadget',
    'verify_certificate',
)
