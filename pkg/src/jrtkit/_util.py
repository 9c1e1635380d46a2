from itertools import combinations
from math import comb
from typing import Iterable, Iterator

CAPACITY = 128

def iter_bits(bits: int) -> Iterator[int]:
    '''Yield the set positions of a bit pattern in ascending order.
    '''
    while bits:
        low = bits & -bits
        yield low.bit_length() - 1
        bits ^= low

def mask_of(vertices: Iterable[int]) -> int:
    bits = 0
    for vertex in vertices:
        if not 0 <= vertex < CAPACITY:
            raise ValueError(f'vertex {vertex} outside 0..{CAPACITY - 1}')
        bits |= 1 << vertex
    return bits

def full_mask(n: int) -> int:
    return (1 << n) - 1

def submasks_of_size(bits: int, size: int) -> Iterator[int]:
    '''Yield every size-element subset of a bit pattern.

    Order is lexicographic on the vertex tuples, not colex; callers that care
    sort the result.
    '''
    for chosen in combinations(tuple(iter_bits(bits)), size):
        yield mask_of(chosen)

def binomial(n: int, k: int) -> int:
    '''Binomial coefficient that is zero outside 0 <= k <= n.
    '''
    if n < 0 or k < 0 or k > n:
        return 0
    return comb(n, k)

def ceil_div(numerator: int, denominator: int) -> int:
    return -(-numerator // denominator)

def smallest_prime_factor(value: int) -> int:
    if value < 2:
        raise ValueError(f'{value} has no prime factor')
    factor = 2
    while factor * factor <= value:
        if value % factor == 0:
            return factor
        factor += 1
    return value
