'''A sqlite-backed store of finished reports, keyed by the job that made
them.

Long searches and scans are worth keeping: rerunning a job whose key is
already stored returns the stored document instead of recomputing it.
'''

import sqlite3
from contextlib import closing, contextmanager
from enum import Enum, auto, unique
from pathlib import Path
from types import TracebackType
from typing import (
    Any,
    ContextManager,
    Generator,
    Iterator,
    MutableMapping,
    Optional,
    Type,
)

from . import _serializers

def _quote(name: str) -> str:
    if '\x00' in name:
        raise ValueError('sqlite identifier must not contain null characters')
    return '"' + name.replace('"', '""') + '"'

@unique
class Mode(Enum):
    READ_WRITE = auto()

    # Reads only; other connections may still write.
    READ_ONLY = auto()

def _uri(path: Optional[Path], mode: Mode) -> str:
    if path is None:
        return ':memory:'
    uri = path.as_uri() if path.is_absolute() else 'file:' + str(path)
    return uri + ('?mode=ro' if mode is Mode.READ_ONLY else '?mode=rwc')

class Database:
    '''A sqlite connection manager.

    Calling it returns a context manager that opens and closes a
    connection; it can also be used directly as a (non-nestable) context
    manager.
    '''

    __slots__ = (
        '_uri',
        '_mode',
        '_connection',
        '_timeout',
        '_memory',
    )

    def __init__(
        self,
        path: Optional[Path] = None,
        mode: Mode = Mode.READ_WRITE,
        timeout: float = 5.0,
    ) -> None:
        self._memory = path is None
        self._mode = Mode.READ_WRITE if path is None else mode
        self._uri = _uri(path, self._mode)
        self._timeout = timeout

    @property
    def read_only(self) -> bool:
        return self._mode is Mode.READ_ONLY

    @property
    def memory(self) -> bool:
        return self._memory

    def __call__(self) -> ContextManager['Connection']:
        return _connect(self._uri, self._mode, self._timeout, self._memory)

    def __enter__(self) -> 'Connection':
        assert not hasattr(self, '_connection'), (
            'Database is not a nestable context manager, call it instead'
        )
        self._connection = self()
        return self._connection.__enter__()

    def __exit__(
        self,
        type: Optional[Type[BaseException]],
        value: Optional[BaseException],
        traceback: Optional[TracebackType],
    ) -> Optional[bool]:
        try:
            return self._connection.__exit__(type, value, traceback)
        finally:
            del self._connection

# Report rows are plain key/value text; STRICT needs sqlite 3.37.
_TABLE_OPTIONS = 'STRICT, WITHOUT ROWID' if sqlite3.sqlite_version_info >= (3, 37) else 'WITHOUT ROWID'

_APPLICATION_ID = 0x4A52544B
_USER_VERSION = 1

class Connection:
    '''An open store connection; entering it runs one transaction.'''

    __slots__ = (
        '_connection',
        '_mode',
        '_open',
    )

    def __init__(self, connection: sqlite3.Connection, mode: Mode) -> None:
        self._connection = connection
        self._mode = mode
        self._open = False
        self._check_header()

    def _check_header(self) -> None:
        with self.cursor() as cursor:
            for pragma, expected in (
                ('application_id', _APPLICATION_ID),
                ('user_version', _USER_VERSION),
            ):
                found = next(cursor.execute(f'PRAGMA main.{pragma}'))[0]
                if found == 0 and not self.read_only:
                    cursor.execute(f'PRAGMA main.{pragma} = {expected}')
                elif found not in (0, expected):
                    raise ValueError(f'{pragma} was {found}, not a jrtkit store')

            if not self.read_only:
                cursor.execute(f'''
                    CREATE TABLE IF NOT EXISTS main.jrtkit (
                        name TEXT PRIMARY KEY NOT NULL,
                        type TEXT NOT NULL,
                        version INTEGER NOT NULL
                    ) {_TABLE_OPTIONS}
                ''')

    @contextmanager
    def cursor(self) -> Generator[sqlite3.Cursor, None, None]:
        with closing(self._connection.cursor()) as cursor:
            yield cursor

    @property
    def read_only(self) -> bool:
        return self._mode is Mode.READ_ONLY

    def __enter__(self) -> None:
        assert not self._open, 'store transactions do not nest'
        self._connection.execute('BEGIN' if self.read_only else 'BEGIN IMMEDIATE')
        self._open = True

    def __exit__(
        self,
        type: Optional[Type[BaseException]],
        value: Optional[BaseException],
        traceback: Optional[TracebackType],
    ) -> None:
        self._open = False
        self._connection.execute('ROLLBACK' if type is not None else 'COMMIT')

@contextmanager
def _connect(
    uri: str,
    mode: Mode,
    timeout: float,
    memory: bool,
) -> Generator[Connection, None, None]:
    with closing(sqlite3.connect(
        uri,
        timeout=timeout,
        isolation_level=None,
        uri=True,
    )) as connection:
        writable = not memory and mode is Mode.READ_WRITE
        if writable:
            connection.execute('PRAGMA main.journal_mode=WAL')
            connection.execute('PRAGMA main.synchronous=NORMAL')
        try:
            yield Connection(connection=connection, mode=mode)
        finally:
            if writable:
                connection.execute('PRAGMA optimize')

class ReportStore(MutableMapping[Any, Any]):
    '''Job key to report document, both kept as deterministic JSON text.

    Keys are any JSON-able value, normally {"verb": ..., **parameters}.
    '''

    __slots__ = (
        '_connection',
        '_table',
        '_key_serializer',
        '_value_serializer',
    )

    def __init__(
        self,
        connection: Connection,
        table: str = 'reports',
        key_serializer: _serializers.Serializer = _serializers.deterministic_json,
        value_serializer: _serializers.Serializer = _serializers.default,
    ) -> None:
        self._connection = connection
        self._table = _quote(table)
        self._key_serializer = key_serializer
        self._value_serializer = value_serializer

        with connection.cursor() as cursor:
            row = cursor.execute(
                'SELECT type, version FROM main.jrtkit WHERE name = ?',
                (table,),
            ).fetchone()
            if row is None:
                exists = cursor.execute(
                    'SELECT 1 FROM main.sqlite_master WHERE name = ?',
                    (table,),
                ).fetchone()
                if exists is not None:
                    raise NameError(f'table {self._table} already exists')
                cursor.execute(f'''
                    CREATE TABLE main.{self._table} (
                        key TEXT PRIMARY KEY NOT NULL,
                        value TEXT NOT NULL
                    ) {_TABLE_OPTIONS}
                ''')
                cursor.execute(
                    'INSERT INTO main.jrtkit (name, type, version) VALUES (?, ?, ?)',
                    (table, 'reports', 1),
                )
            else:
                kind, version = row
                if kind != 'reports':
                    raise ValueError(
                        f'tried to open {table} as reports, but it already existed as {kind}'
                    )
                if version > 1:
                    raise ValueError('jrtkit report store is not forward compatible')

    def raw(self, key: Any) -> Optional[str]:
        '''The stored text for a key, exactly as written, or None.'''
        with self._connection.cursor() as cursor:
            row = cursor.execute(
                f'SELECT value FROM main.{self._table} WHERE key = ?',
                (self._key_serializer.dumps(key),),
            ).fetchone()
        return None if row is None else row[0]

    def __getitem__(self, key: Any) -> Any:
        text = self.raw(key)
        if text is None:
            raise KeyError(key)
        return self._value_serializer.loads(text)

    def put_raw(self, key: Any, text: str) -> None:
        '''Store already rendered text for a key, unchanged.'''
        with self._connection.cursor() as cursor:
            cursor.execute(f'''
                    INSERT INTO main.{self._table} (key, value)
                        VALUES (?, ?)
                        ON CONFLICT (key) DO UPDATE
                        SET value=excluded.value
                ''',
                (self._key_serializer.dumps(key), text),
            )

    def __setitem__(self, key: Any, value: Any) -> None:
        self.put_raw(key, self._value_serializer.dumps(value))

    def __delitem__(self, key: Any) -> None:
        with self._connection.cursor() as cursor:
            cursor.execute(
                f'DELETE FROM main.{self._table} WHERE key = ?',
                (self._key_serializer.dumps(key),),
            )
            if cursor.rowcount != 1:
                raise KeyError(key)

    def __contains__(self, key: object) -> bool:
        return self.raw(key) is not None

    def __iter__(self) -> Iterator[Any]:
        with self._connection.cursor() as cursor:
            for key, in cursor.execute(f'SELECT key FROM main.{self._table} ORDER BY key'):
                yield self._key_serializer.loads(key)

    def __len__(self) -> int:
        with self._connection.cursor() as cursor:
            count, = cursor.execute(f'SELECT COUNT(*) FROM main.{self._table}').fetchone()
        return count

    def clear(self) -> None:
        with self._connection.cursor() as cursor:
            cursor.execute(f'DELETE FROM main.{self._table}')
