'''Serializers and the JSON document forms of hypergraphs and reports.

Documents contain no floating point: integers that do not fit in 64 bits
and non-integral fractions are written as strings.
'''

import json as _json
from enum import Enum
from fractions import Fraction
from functools import partial, singledispatch
from typing import Any, Callable, NamedTuple, Optional

from ._hypergraph import Hypergraph
from ._profiles import JrtParams
from ._util import CAPACITY
from ._vertexset import VertexSet

class Serializer(NamedTuple):
    loads: Callable[[Any], Any]
    dumps: Callable[[Any], Any]

json = Serializer(
    loads=_json.loads,
    dumps=partial(_json.dumps, separators=(',', ':')),
)

deterministic_json = Serializer(
    loads=_json.loads,
    dumps=partial(_json.dumps, sort_keys=True, separators=(',', ':')),
)

default = deterministic_json

try:
    import orjson as _orjson

    orjson = Serializer(
        loads=_orjson.loads,
        dumps=lambda value: _orjson.dumps(value).decode('utf-8'),
    )
    deterministic_orjson = Serializer(
        loads=_orjson.loads,
        dumps=lambda value: _orjson.dumps(
            value,
            option=_orjson.OPT_SORT_KEYS,
        ).decode('utf-8'),
    )
    default = deterministic_orjson
except ImportError:
    pass

_INT64 = 1 << 63

class DocumentError(ValueError):
    '''A malformed input document, with the position when known.'''

    def __init__(
        self,
        message: str,
        line: Optional[int] = None,
        column: Optional[int] = None,
    ) -> None:
        if line is not None:
            message = f'{message} (line {line}, column {column})'
        super().__init__(message)
        self.line = line
        self.column = column

def parse(text: str) -> Any:
    '''Decode JSON text, reporting errors with line and column.
    '''
    try:
        return _json.loads(text)
    except _json.JSONDecodeError as error:
        raise DocumentError(error.msg, error.lineno, error.colno) from error

@singledispatch
def to_document(value: Any) -> Any:
    if isinstance(value, tuple) and hasattr(value, '_fields'):
        return {
            field: to_document(getattr(value, field))
            for field in value._fields
        }
    if isinstance(value, (list, tuple)):
        return [to_document(item) for item in value]
    if value is None or isinstance(value, str):
        return value
    raise TypeError(f'no document form for {type(value).__name__}')

@to_document.register
def _(value: bool) -> bool:
    return value

@to_document.register
def _(value: int) -> Any:
    if isinstance(value, bool):
        return value
    if -_INT64 <= value < _INT64:
        return int(value)
    return str(value)

@to_document.register
def _(value: VertexSet) -> Any:
    return value.to_list()

@to_document.register
def _(value: Fraction) -> Any:
    if value.denominator == 1:
        return to_document(value.numerator)
    return str(value)

@to_document.register
def _(value: Enum) -> Any:
    return to_document(value.value)

@to_document.register
def _(value: dict) -> Any:
    if all(isinstance(key, str) and not isinstance(key, Enum) for key in value):
        return {key: to_document(item) for key, item in value.items()}
    return [
        [to_document(key), to_document(item)]
        for key, item in sorted(value.items())
    ]

@to_document.register
def _(value: Hypergraph) -> Any:
    return hypergraph_to_document(value)

@to_document.register
def _(value: JrtParams) -> Any:
    return {'r': value.r, 't': value.t}

def hypergraph_to_document(hypergraph: Hypergraph) -> dict:
    return {
        'n': hypergraph.n,
        'k': hypergraph.k,
        'edges': [edge.to_list() for edge in hypergraph.edges],
    }

def _expect(document: dict, key: str, kind: type) -> Any:
    if key not in document:
        raise DocumentError(f'missing key {key!r}')
    value = document[key]
    if not isinstance(value, kind) or isinstance(value, bool):
        raise DocumentError(f'{key!r} must be {kind.__name__}, got {type(value).__name__}')
    return value

def hypergraph_from_document(document: Any) -> Hypergraph:
    '''Read {"n": ..., "k": ..., "edges": [[...], ...]}; k may be null or
    absent.'''
    if not isinstance(document, dict):
        raise DocumentError('hypergraph document must be an object')
    n = _expect(document, 'n', int)
    if not 0 <= n <= CAPACITY:
        raise DocumentError(f'vertex count {n} outside 0..{CAPACITY}')
    edges = _expect(document, 'edges', list)
    k = document.get('k')
    if k is not None and (not isinstance(k, int) or isinstance(k, bool)):
        raise DocumentError(f"'k' must be an integer or null, got {k!r}")

    masks = []
    for position, edge in enumerate(edges):
        if not isinstance(edge, list) or not all(
            isinstance(vertex, int) and not isinstance(vertex, bool) for vertex in edge
        ):
            raise DocumentError(f'edge {position} must be a list of integers')
        if len(set(edge)) != len(edge):
            raise DocumentError(f'edge {position} repeats a vertex')
        for vertex in edge:
            if not 0 <= vertex < n:
                raise DocumentError(f'edge {position} has vertex {vertex} outside 0..{n - 1}')
        masks.append(VertexSet.of(edge))
    try:
        return Hypergraph(n, masks, k)
    except ValueError as error:
        raise DocumentError(str(error)) from error

def load_hypergraph(text: str) -> Hypergraph:
    '''Read a bare hypergraph document or one wrapped as the result of
    generate.'''
    document = parse(text)
    for wrapper in ('result', 'hypergraph'):
        if isinstance(document, dict) and wrapper in document:
            document = document[wrapper]
    return hypergraph_from_document(document)

def dumps(document: Any, serializer: Serializer = deterministic_json) -> str:
    return serializer.dumps(document)
