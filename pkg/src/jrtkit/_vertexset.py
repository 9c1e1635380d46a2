from typing import Iterable, Iterator, List

from ._util import CAPACITY, iter_bits, mask_of

class VertexSet(int):
    '''An immutable set of vertices drawn from 0..127, kept as a bit pattern.

    Instances are ints, so the bitwise operators work directly and return
    plain ints.  Ordering is integer ordering, which is exactly colex order
    on the underlying sets.
    '''

    __slots__ = ()

    def __new__(cls, bits: int = 0) -> 'VertexSet':
        if bits < 0 or bits >> CAPACITY:
            raise ValueError(f'bit pattern does not fit in {CAPACITY} vertices')
        return super().__new__(cls, bits)

    @classmethod
    def of(cls, vertices: Iterable[int]) -> 'VertexSet':
        return cls(mask_of(vertices))

    @classmethod
    def range(cls, start: int, stop: int) -> 'VertexSet':
        if stop <= start:
            return cls(0)
        return cls(((1 << (stop - start)) - 1) << start)

    @property
    def bits(self) -> int:
        return int(self)

    def __len__(self) -> int:
        return self.bit_count()

    def __iter__(self) -> Iterator[int]:
        return iter_bits(self)

    def __contains__(self, vertex: object) -> bool:
        if not isinstance(vertex, int) or not 0 <= vertex < CAPACITY:
            return False
        return bool((self >> vertex) & 1)

    def issubset(self, other: int) -> bool:
        return not (self & ~other)

    def issuperset(self, other: int) -> bool:
        return not (other & ~self)

    def isdisjoint(self, other: int) -> bool:
        return not (self & other)

    def union(self, other: int) -> 'VertexSet':
        return VertexSet(self | other)

    def intersection(self, other: int) -> 'VertexSet':
        return VertexSet(self & other)

    def difference(self, other: int) -> 'VertexSet':
        return VertexSet(self & ~other)

    def to_list(self) -> List[int]:
        return list(iter_bits(self))

    def __repr__(self) -> str:
        return f'VertexSet({{{", ".join(map(str, iter_bits(self)))}}})'

    __str__ = __repr__
