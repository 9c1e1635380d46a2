'''Command-line entry point.

Every verb writes one document (JSON, or CSV for scan) to standard output
or --output.  Exit status is 0 on success, 1 when a verification or
certificate check fails (with a JSON diagnostic), and 2 on usage errors,
including malformed input.
'''

import argparse
import csv
import io
import logging
import os
import sys
from enum import Enum, unique
from pathlib import Path
from typing import Any, Callable, Dict, List, NamedTuple, Optional, Sequence

from . import _serializers
from ._constructions import (
    GeneratorKind,
    full_star,
    random_jrt,
    rt_star,
    thick_clique,
    two_star_gadget,
)
from ._decomposition import MAX_SUPPORT, decompose
from ._errors import (
    ConsistencyError,
    DivisibilityError,
    NonUniformError,
    ParameterError,
)
from ._extraction import extract_stars
from ._hypergraph import Hypergraph
from ._profiles import DivisiblePairParams, JrtParams, is_jrt_member
from ._search import SCAN_HEADER, Budget, extremal_witnesses, min_max_degree, phase_scan
from ._serializers import DocumentError, hypergraph_from_document, to_document
from ._stars import Star, core, is_heavy
from ._store import Database, ReportStore
from ._structure import AssertLevel, build_structure
from ._sunflowers import find_sunflower

logger = logging.getLogger(__name__)

THREADS_VARIABLE = 'JRTKIT_THREADS'

# Per searched point when a scan is given no budget at all.
SCAN_NODE_BUDGET = 50_000

@unique
class OutputFormat(str, Enum):
    JSON = 'json'
    CSV = 'csv'

    def __str__(self) -> str:
        return self.value

class JobConfig(NamedTuple):
    verb: str
    input: Optional[str]
    output: Optional[str]
    params: Dict[str, Any]
    seed: int
    threads: int
    budget_nodes: Optional[int]
    budget_secs: Optional[float]
    assert_level: AssertLevel
    format: OutputFormat

    def echo(self) -> Dict[str, Any]:
        '''The resolved configuration as echoed into outputs.

        Thread count and output path are left out: they do not change
        results.
        '''
        return {
            'verb': self.verb,
            'input': self.input,
            'params': dict(sorted(self.params.items())),
            'seed': self.seed,
            'budget_nodes': self.budget_nodes,
            'budget_secs': None if self.budget_secs is None else str(self.budget_secs),
            'assert_level': self.assert_level.value,
            'format': self.format.value,
        }

    @property
    def budget(self) -> Budget:
        return Budget(nodes=self.budget_nodes, seconds=self.budget_secs)

class UsageError(Exception):
    pass

class Outcome(NamedTuple):
    document: Any
    failed: bool = False

_PARAM_NAMES = ('r', 't', 'n', 'm', 'k', 's', 'u', 'q', 'a', 'b', 'kind', 'max_support',
                'witnesses', 'canonical', 'n_values')

def _default_threads() -> int:
    value = os.environ.get(THREADS_VARIABLE)
    if value is None:
        return 1
    try:
        threads = int(value)
    except ValueError:
        raise UsageError(f'{THREADS_VARIABLE}={value!r} is not an integer')
    if threads < 1:
        raise UsageError(f'{THREADS_VARIABLE} must be positive, got {threads}')
    return threads

def resolve_config(arguments: argparse.Namespace) -> JobConfig:
    threads = arguments.threads if arguments.threads is not None else _default_threads()
    if threads < 1:
        raise UsageError(f'--threads must be positive, got {threads}')
    params = {
        name: getattr(arguments, name)
        for name in _PARAM_NAMES
        if getattr(arguments, name, None) is not None
    }
    if 'kind' in params:
        params['kind'] = str(params['kind'])
    default_format = OutputFormat.CSV if arguments.verb == 'scan' else OutputFormat.JSON
    budget_nodes = getattr(arguments, 'budget_nodes', None)
    budget_secs = getattr(arguments, 'budget_secs', None)
    if arguments.verb == 'scan' and budget_nodes is None and budget_secs is None:
        budget_nodes = SCAN_NODE_BUDGET
    return JobConfig(
        verb=arguments.verb,
        input=getattr(arguments, 'input', None),
        output=arguments.output,
        params=params,
        seed=arguments.seed,
        threads=threads,
        budget_nodes=budget_nodes,
        budget_secs=budget_secs,
        assert_level=AssertLevel(arguments.assert_level),
        format=OutputFormat(arguments.format) if arguments.format else default_format,
    )

def _read_text(path: str) -> str:
    if path == '-':
        return sys.stdin.read()
    try:
        return Path(path).read_text(encoding='utf-8')
    except OSError as error:
        raise UsageError(f'cannot read {path}: {error.strerror}')

def _read_hypergraph(config: JobConfig) -> Hypergraph:
    return _serializers.load_hypergraph(_read_text(config.input))

def _params(config: JobConfig) -> JrtParams:
    try:
        return JrtParams(config.params['r'], config.params['t'])
    except KeyError as error:
        raise UsageError(f'--{error.args[0]} is required for {config.verb}')

def _require(config: JobConfig, *names: str) -> List[Any]:
    missing = [name for name in names if name not in config.params]
    if missing:
        raise UsageError(f'{config.verb} needs ' + ', '.join(f'--{name}' for name in missing))
    return [config.params[name] for name in names]

def _generate(config: JobConfig) -> Outcome:
    kind = GeneratorKind(config.params.get('kind'))
    extra: Dict[str, Any] = {}
    if kind is GeneratorKind.THICK:
        n, k, t = _require(config, 'n', 'k', 't')
        hypergraph, partition = thick_clique(n, k, t)
        extra['teams'] = partition.teams
    elif kind is GeneratorKind.STAR:
        if 's' in config.params:
            n, k, s = _require(config, 'n', 'k', 's')
            hypergraph, layout = full_star(n, k, s)
        else:
            n, = _require(config, 'n')
            hypergraph, layout = rt_star(_params(config), n)
        extra['centre'] = layout.centre
    elif kind is GeneratorKind.GADGET:
        r, t, u = _require(config, 'r', 't', 'u')
        gadget = two_star_gadget(r, t, u)
        hypergraph = gadget.hypergraph
        extra['parts'] = gadget.parts
    else:
        n, m = _require(config, 'n', 'm')
        result = random_jrt(_params(config), n, m, config.seed)
        hypergraph = result.hypergraph
        extra['draws'] = result.draws
        extra['short'] = result.short
    return Outcome({'hypergraph': hypergraph, **extra})

def _verify(config: JobConfig) -> Outcome:
    params = _params(config)
    hypergraph = _read_hypergraph(config)
    header = {'k': params.k, 'r': params.r, 't': params.t}
    try:
        report = is_jrt_member(params, hypergraph)
    except NonUniformError as error:
        return Outcome(
            {'member': False, 'violation': None, 'error': str(error), **header},
            failed=True,
        )
    return Outcome(
        {'member': report.member, 'violation': report.violation, **header},
        failed=not report.member,
    )

def _sunflower(config: JobConfig) -> Outcome:
    a, b = _require(config, 'a', 'b')
    search = find_sunflower(_read_hypergraph(config), a, b)
    return Outcome(search)

def _decompose(config: JobConfig) -> Outcome:
    q, k = _require(config, 'q', 'k')
    document = _serializers.parse(_read_text(config.input))
    if not isinstance(document, dict) or 'F' not in document or 'G' not in document:
        raise DocumentError('decomposition input needs "F" and "G" hypergraphs')
    family = hypergraph_from_document(document['F'])
    other = hypergraph_from_document(document['G'])
    try:
        result = decompose(
            DivisiblePairParams(q, k),
            family,
            other,
            max_support=config.params.get('max_support', MAX_SUPPORT),
            workers=config.threads,
        )
    except DivisibilityError as error:
        return Outcome({'error': str(error), 'witness': error.witness}, failed=True)
    return Outcome(result)

def _core(config: JobConfig) -> Outcome:
    params = _params(config)
    document = _serializers.parse(_read_text(config.input))
    if isinstance(document, dict) and 'star' in document:
        document = document['star']
    if not isinstance(document, dict) or 'centre' not in document:
        raise DocumentError('star input needs "centre" and "edges"')
    hypergraph = hypergraph_from_document(
        {'n': document.get('n'), 'edges': document.get('edges', [])}
    )
    centre = hypergraph_from_document({'n': hypergraph.n, 'edges': [document['centre']]})
    try:
        star = Star.of(centre.edges[0], hypergraph.edges)
    except ParameterError as error:
        raise DocumentError(str(error))
    peeled = core(params, star)
    return Outcome({
        'heavy': is_heavy(params, star),
        'core': peeled.core,
        'removed_order': peeled.removed_order,
    })

def _extract(config: JobConfig) -> Outcome:
    extraction = extract_stars(
        _params(config),
        _read_hypergraph(config),
        max_support=config.params.get('max_support', MAX_SUPPORT),
        workers=config.threads,
        assert_level=config.assert_level,
    )
    return Outcome(extraction)

def _structure(config: JobConfig) -> Outcome:
    params = _params(config)
    hypergraph = _read_hypergraph(config)
    try:
        structure = build_structure(
            params,
            hypergraph,
            max_support=config.params.get('max_support', MAX_SUPPORT),
            workers=config.threads,
            assert_level=config.assert_level,
        )
    except (ParameterError, NonUniformError) as error:
        return Outcome({'error': str(error)}, failed=True)
    except ConsistencyError as error:
        return Outcome(
            {'error': str(error), 'clause': error.clause, 'witness': error.witness},
            failed=True,
        )
    return Outcome(structure)

def _search(config: JobConfig) -> Outcome:
    n, m = _require(config, 'n', 'm')
    params = _params(config)
    if config.params.get('witnesses'):
        listed = extremal_witnesses(
            params, n, m, config.budget, config.threads,
            canonical=bool(config.params.get('canonical')),
        )
        return Outcome(listed)
    return Outcome(min_max_degree(params, n, m, config.budget, config.threads))

def _scan(config: JobConfig) -> Outcome:
    n_values, = _require(config, 'n_values')
    rows = phase_scan(_params(config), n_values, config.budget, config.threads)
    return Outcome(rows)

_VERBS: Dict[str, Callable[[JobConfig], Outcome]] = {
    'generate': _generate,
    'verify': _verify,
    'sunflower': _sunflower,
    'decompose-lemma': _decompose,
    'core': _core,
    'extract': _extract,
    'structure': _structure,
    'search': _search,
    'scan': _scan,
}

_STORED_VERBS = frozenset(('structure', 'search', 'scan'))

def render(config: JobConfig, outcome: Outcome) -> str:
    if config.format is OutputFormat.CSV and config.verb == 'scan' and not outcome.failed:
        buffer = io.StringIO()
        writer = csv.writer(buffer, lineterminator='\n')
        writer.writerow(SCAN_HEADER)
        for row in outcome.document:
            writer.writerow([str(getattr(row, field)) for field in SCAN_HEADER])
        return buffer.getvalue()
    document = {'config': config.echo(), 'result': to_document(outcome.document)}
    if outcome.failed:
        document['failed'] = True
    return _serializers.dumps(document) + '\n'

def _store_key(config: JobConfig) -> Dict[str, Any]:
    key = config.echo()
    if config.input is not None:
        key['input'] = _read_text(config.input)
    return key

def execute(config: JobConfig, store: Optional[Path] = None) -> Outcome:
    '''Run a resolved job and return its rendered text with the status.
    '''
    if store is None or config.verb not in _STORED_VERBS:
        outcome = _VERBS[config.verb](config)
        return Outcome(render(config, outcome), outcome.failed)

    key = _store_key(config)
    with Database(store)() as connection:
        with connection:
            reports = ReportStore(connection)
            text = reports.raw(key)
            if text is not None:
                logger.info('%s: reusing stored report', config.verb)
                return Outcome(text, False)
            outcome = _VERBS[config.verb](config)
            text = render(config, outcome)
            if not outcome.failed:
                reports.put_raw(key, text)
    return Outcome(text, outcome.failed)

def _n_values(text: str) -> List[int]:
    '''Parse "8,10,12" or "8:16:2" (start:stop:step, stop included).'''
    try:
        if ':' in text:
            parts = [int(part) for part in text.split(':')]
            if len(parts) == 2:
                parts.append(1)
            start, stop, step = parts
            if step < 1:
                raise ValueError
            return list(range(start, stop + 1, step))
        return [int(part) for part in text.split(',') if part.strip()]
    except ValueError:
        raise argparse.ArgumentTypeError(f'bad n range {text!r}')

def build_parser() -> argparse.ArgumentParser:
    parser = argparse.ArgumentParser(
        prog='jrtkit',
        description='Construct, verify, decompose and search members of J(r,t).',
    )
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument('-v', '--verbose', action='count', default=0,
                        help='log to standard error; repeat for debug output')
    common.add_argument('--output', help='write here instead of standard output')
    common.add_argument('--threads', type=int,
                        help=f'worker threads (default ${THREADS_VARIABLE} or 1)')
    common.add_argument('--seed', type=int, default=0)
    common.add_argument('--assert-level', choices=[level.value for level in AssertLevel],
                        default=AssertLevel.SOFT.value,
                        help='hard turns soft structural checks into failures')
    common.add_argument('--format', choices=[kind.value for kind in OutputFormat])
    common.add_argument('--store', type=Path,
                        help='sqlite report store for structure, search and scan')

    rt = argparse.ArgumentParser(add_help=False)
    rt.add_argument('--r', type=int)
    rt.add_argument('--t', type=int)

    reading = argparse.ArgumentParser(add_help=False)
    reading.add_argument('input', help="input JSON file, '-' for standard input")

    support = argparse.ArgumentParser(add_help=False)
    support.add_argument('--max-support', dest='max_support', type=int,
                         help=f'saturation support cap (default {MAX_SUPPORT})')

    budget = argparse.ArgumentParser(add_help=False)
    budget.add_argument('--budget-nodes', dest='budget_nodes', type=int)
    budget.add_argument('--budget-secs', dest='budget_secs', type=float)

    verbs = parser.add_subparsers(dest='verb', required=True, metavar='VERB')

    generate = verbs.add_parser('generate', parents=[common, rt],
                                help='write a named or random hypergraph')
    generate.add_argument('--kind', type=GeneratorKind, required=True,
                          choices=list(GeneratorKind))
    for name in ('n', 'k', 's', 'u', 'm'):
        generate.add_argument(f'--{name}', type=int)

    verbs.add_parser('verify', parents=[common, rt, reading],
                     help='check membership in J(r,t)')

    sunflower = verbs.add_parser('sunflower', parents=[common, reading],
                                 help='look for a sunflower with more than a members')
    sunflower.add_argument('--a', type=int, required=True)
    sunflower.add_argument('--b', type=int, required=True)

    lemma = verbs.add_parser('decompose-lemma', parents=[common, reading, support],
                             help='run the decomposition lemma on {"F": ..., "G": ...}')
    lemma.add_argument('--q', type=int, required=True)
    lemma.add_argument('--k', type=int, required=True)

    verbs.add_parser('core', parents=[common, rt, reading],
                     help='peel a star to its heavy core')
    verbs.add_parser('extract', parents=[common, rt, reading, support],
                     help='pull heavy star cores out one by one')
    verbs.add_parser('structure', parents=[common, rt, reading, support],
                     help='build and verify a structure certificate')

    search = verbs.add_parser('search', parents=[common, rt, budget],
                              help='compute f(r,t;n,m) by branch and bound')
    search.add_argument('--n', type=int, required=True)
    search.add_argument('--m', type=int, required=True)
    search.add_argument('--witnesses', action='store_true', default=None,
                        help='list every extremal hypergraph')
    search.add_argument('--canonical', action='store_true', default=None,
                        help='one witness per isomorphism class')

    scan = verbs.add_parser('scan', parents=[common, rt, budget],
                            help='tabulate the phase transition around binom(n/t, rt); '
                                 f'{SCAN_NODE_BUDGET} nodes per point unless budgeted')
    scan.add_argument('--n', dest='n_values', type=_n_values, required=True,
                      help='comma list or start:stop[:step]')
    return parser

def main(argv: Optional[Sequence[str]] = None) -> int:
    parser = build_parser()
    arguments = parser.parse_args(argv)

    logging.basicConfig(
        level=[logging.WARNING, logging.INFO, logging.DEBUG][min(arguments.verbose, 2)],
        format='%(levelname)s %(name)s: %(message)s',
        stream=sys.stderr,
    )

    try:
        config = resolve_config(arguments)
        logger.info('%s: starting', config.verb)
        outcome = execute(config, arguments.store)
    except ConsistencyError as error:
        diagnostic = {'error': str(error), 'clause': error.clause, 'witness': error.witness}
        sys.stdout.write(_serializers.dumps(to_document(diagnostic)) + '\n')
        return 1
    except (UsageError, ValueError) as error:
        print(f'jrtkit {arguments.verb}: error: {error}', file=sys.stderr)
        return 2

    if config.output is None:
        sys.stdout.write(outcome.document)
    else:
        Path(config.output).write_text(outcome.document, encoding='utf-8')
    logger.info('%s: finished%s', config.verb, ' with failures' if outcome.failed else '')
    return 1 if outcome.failed else 0

def main_entry() -> None:
    sys.exit(main())
