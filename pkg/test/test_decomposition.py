import random
import unittest
from jrtkit import (
    ConsistencyError,
    DivisibilityError,
    DivisiblePairParams,
    Hypergraph,
    ParameterError,
    SupportTooLargeError,
    VertexSet,
    decompose,
    is_divisible_pair,
    minimal_members,
    saturate,
    thick_clique,
)
from jrtkit._decomposition import verify_decomposition

def _system(n, *edges):
    return Hypergraph(n, [VertexSet.of(edge) for edge in edges])

def _random_pair(generator):
    q = generator.choice((2, 3))
    k = generator.randint(q, 6)
    block_count = generator.randint(2, 12 // q)
    vertices = list(range(q * block_count))
    generator.shuffle(vertices)
    blocks = [VertexSet.of(vertices[i * q:(i + 1) * q]) for i in range(block_count)]
    largest = min(k // q, block_count)

    def draw(count):
        return [
            VertexSet(sum(generator.sample(blocks, generator.randint(1, largest))))
            for _ in range(count)
        ]

    n = q * block_count
    family = Hypergraph(n, draw(generator.randint(1, 4)))
    other = Hypergraph(n, draw(generator.randint(0, 4)))
    return DivisiblePairParams(q, k), family, other

class TestSaturate(unittest.TestCase):
    def test_small_closure(self):
        params = DivisiblePairParams(2, 4)
        family = _system(4, [0, 1])
        other = _system(4, [0, 1, 2, 3])
        closure = saturate(params, family, other)
        self.assertEqual(
            closure,
            _system(4, [], [0, 1], [2, 3], [0, 1, 2, 3]),
        )
        self.assertTrue(is_divisible_pair(2, closure, Hypergraph(4, closure.edges + other.edges)))

    def test_is_maximal(self):
        params = DivisiblePairParams(2, 4)
        h, _ = thick_clique(8, 4, 2)
        closure = saturate(params, h, Hypergraph(8))
        for bits in range(1 << 8):
            candidate = VertexSet(bits)
            if candidate in closure or len(candidate) % 2 or len(candidate) > 4:
                continue
            extended = Hypergraph(8, closure.edges + (candidate,))
            self.assertFalse(is_divisible_pair(2, extended, extended), candidate)

    def test_workers_do_not_change_result(self):
        params = DivisiblePairParams(2, 4)
        h, _ = thick_clique(10, 4, 2)
        self.assertEqual(
            saturate(params, h, Hypergraph(10), workers=1),
            saturate(params, h, Hypergraph(10), workers=4),
        )

    def test_support_cap(self):
        with self.assertRaises(SupportTooLargeError) as caught:
            saturate(DivisiblePairParams(2, 4), _system(4, [0, 1]), _system(4, [0, 1, 2, 3]), max_support=3)
        self.assertEqual((caught.exception.support, caught.exception.cap), (4, 3))

    def test_input_checks(self):
        with self.assertRaises(DivisibilityError) as caught:
            saturate(DivisiblePairParams(2, 4), _system(4, [0, 1]), _system(4, [1, 2, 3]))
        self.assertEqual(caught.exception.witness, (VertexSet.of([0, 1]), VertexSet.of([1, 2, 3])))
        with self.assertRaises(ParameterError):
            saturate(DivisiblePairParams(2, 2), _system(4, [0, 1, 2, 3]), Hypergraph(4))
        with self.assertRaises(ParameterError):
            saturate(DivisiblePairParams(2, 4), _system(4, [0, 1]), Hypergraph(5))

class TestMinimalMembers(unittest.TestCase):
    def test_antichain(self):
        closure = _system(6, [], [0, 1], [2, 3], [0, 1, 2, 3], [0, 4], [0, 1, 4, 5])
        self.assertEqual(minimal_members(closure), _system(6, [0, 1], [2, 3], [0, 4]))

class TestDecompose(unittest.TestCase):
    def test_small(self):
        params = DivisiblePairParams(2, 4)
        family = _system(4, [0, 1])
        other = _system(4, [0, 1, 2, 3])
        result = decompose(params, family, other)
        self.assertEqual(result.basis, _system(4, [0, 1], [2, 3]))
        self.assertEqual(result.decompositions, {VertexSet.of([0, 1]): [VertexSet.of([0, 1])]})
        self.assertEqual(result.support, VertexSet.range(0, 4))

    def test_thick_clique(self):
        params = DivisiblePairParams(2, 4)
        h, partition = thick_clique(8, 4, 2)
        result = decompose(params, h, Hypergraph(8))
        self.assertEqual(list(result.basis.edges), partition.teams)
        self.assertEqual(len(result.closure), 11)
        for edge in h.edges:
            parts = result.decompositions[edge]
            self.assertEqual(len(parts), 2)
            self.assertEqual(parts[0] | parts[1], edge)
            self.assertLess(parts[0], parts[1])
        self.assertEqual(verify_decomposition(result, h, Hypergraph(8)), [])

    def test_random_pairs(self):
        generator = random.Random(5)
        for _ in range(200):
            params, family, other = _random_pair(generator)
            result = decompose(params, family, other)
            q, k = params
            self.assertEqual(verify_decomposition(result, family, other), [])
            self.assertLessEqual(result.basis.max_degree(), k ** (2 * k))
            members = result.basis.edges
            for first in members:
                self.assertTrue(first)
                for second in members:
                    if first != second:
                        self.assertNotEqual(first & second, first)
            for member in family.edges:
                union = 0
                for part in result.decompositions[member]:
                    self.assertFalse(union & part)
                    self.assertIn(part, result.basis)
                    union |= part
                self.assertEqual(union, member)
            everything = Hypergraph(family.n, members + other.edges)
            self.assertTrue(is_divisible_pair(q, result.basis, everything))

    def test_tampering_is_detected(self):
        params = DivisiblePairParams(2, 4)
        h, _ = thick_clique(8, 4, 2)
        result = decompose(params, h, Hypergraph(8))
        self.assertIn('iii', verify_decomposition(result._replace(decompositions={}), h, Hypergraph(8)))
        broken = result._replace(basis=Hypergraph(8, result.basis.edges + (VertexSet.range(0, 4),)))
        failures = verify_decomposition(broken, h, Hypergraph(8))
        self.assertIn('ii', failures)
        odd = result._replace(basis=Hypergraph(8, result.basis.edges + (VertexSet.of([0, 2]),)))
        self.assertIn('iv', verify_decomposition(odd, h, Hypergraph(8)))
        self.assertIn('basis', verify_decomposition(odd, h, Hypergraph(8)))

    def test_consistency_error_names_clause(self):
        error = ConsistencyError('iii', 'difference fell out of the closure')
        self.assertEqual(error.clause, 'iii')
