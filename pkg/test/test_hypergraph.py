import unittest
from jrtkit import (
    Hypergraph,
    NonUniformError,
    VertexSet,
    canonicalize,
    components,
    degree,
    full_star,
    induced,
    intersection_size,
    max_degree,
    thick_clique,
)

class TestVertexSet(unittest.TestCase):
    def test_set_operations(self):
        a = VertexSet.of([0, 1, 2, 3])
        b = VertexSet.of([3, 4, 5, 6])
        self.assertEqual(len(a), 4)
        self.assertEqual(a.intersection(b), VertexSet.of([3]))
        self.assertEqual(a.union(b), VertexSet.range(0, 7))
        self.assertEqual(a.difference(b), VertexSet.of([0, 1, 2]))
        self.assertTrue(VertexSet.of([1, 2]).issubset(a))
        self.assertTrue(a.issuperset(VertexSet.of([0, 3])))
        self.assertFalse(a.isdisjoint(b))
        self.assertIn(2, a)
        self.assertNotIn(4, a)
        self.assertNotIn(-1, a)
        self.assertEqual(list(b), [3, 4, 5, 6])
        self.assertEqual(b.to_list(), [3, 4, 5, 6])

    def test_colex_order(self):
        # {0,1,3} precedes {2,3}: the largest differing vertex is 2.
        self.assertLess(VertexSet.of([0, 1, 3]), VertexSet.of([2, 3]))
        self.assertLess(VertexSet.of([5]), VertexSet.of([0, 6]))
        self.assertEqual(
            sorted([VertexSet.of([1, 2]), VertexSet.of([0, 2]), VertexSet.of([0, 1])]),
            [VertexSet.of([0, 1]), VertexSet.of([0, 2]), VertexSet.of([1, 2])],
        )

    def test_capacity(self):
        self.assertEqual(len(VertexSet.range(0, 128)), 128)
        self.assertIn(127, VertexSet.of([127]))
        with self.assertRaises(ValueError):
            VertexSet.of([128])
        with self.assertRaises(ValueError):
            VertexSet(1 << 128)
        with self.assertRaises(ValueError):
            VertexSet(-1)

    def test_repr(self):
        self.assertEqual(repr(VertexSet.of([2, 0])), 'VertexSet({0, 2})')
        self.assertEqual(repr(VertexSet()), 'VertexSet({})')

class TestHypergraph(unittest.TestCase):
    def test_canonical_form(self):
        h = Hypergraph(8, [
            VertexSet.of([4, 5, 6, 7]),
            VertexSet.of([0, 1, 2, 3]),
            VertexSet.of([0, 1, 2, 3]),
        ])
        self.assertEqual(h.edges, (VertexSet.of([0, 1, 2, 3]), VertexSet.of([4, 5, 6, 7])))
        self.assertEqual(h.k, 4)
        self.assertEqual(len(h), 2)
        self.assertEqual(canonicalize(h), h)
        self.assertEqual(canonicalize(canonicalize(h)), canonicalize(h))
        self.assertEqual(hash(h), hash(Hypergraph(8, reversed(h.edges))))

    def test_uniformity(self):
        self.assertIsNone(Hypergraph(5).k)
        self.assertIsNone(Hypergraph(5, [VertexSet.of([0]), VertexSet.of([1, 2])]).k)
        with self.assertRaises(NonUniformError):
            Hypergraph(5, [VertexSet.of([0]), VertexSet.of([1, 2])], k=2)
        self.assertEqual(Hypergraph(5, [VertexSet()]).k, 0)

    def test_universe(self):
        with self.assertRaises(ValueError):
            Hypergraph(4, [VertexSet.of([1, 4])])
        with self.assertRaises(ValueError):
            Hypergraph(129)
        self.assertEqual(Hypergraph(6).vertices, VertexSet.range(0, 6))

    def test_without(self):
        h, _ = thick_clique(8, 4, 2)
        smaller = h.without(h.edges[:2])
        self.assertEqual(len(smaller), 4)
        self.assertNotIn(h.edges[0], smaller)
        self.assertIn(h.edges[2], smaller)

class TestIntersectionSize(unittest.TestCase):
    def test_small_cases(self):
        a = VertexSet.of([0, 1, 2, 3])
        self.assertEqual(intersection_size(a, a), 4)
        self.assertEqual(intersection_size(a, VertexSet.of([4, 5, 6, 7])), 0)
        self.assertEqual(intersection_size(a, VertexSet.of([3, 4, 5, 6])), 1)

class TestDegree(unittest.TestCase):
    def test_small_cases(self):
        self.assertEqual(degree(Hypergraph(4, [VertexSet.of([0, 1, 2, 3])]), 0), 1)
        self.assertEqual(degree(Hypergraph(4), 3), 0)
        star, _ = full_star(8, 4, 2)
        self.assertEqual(degree(star, 0), 15)
        self.assertEqual(star.degree(1), 15)
        self.assertEqual(star.degree(7), 5)

    def test_out_of_range(self):
        with self.assertRaises(ValueError):
            degree(Hypergraph(4), 4)

    def test_handshake(self):
        for h in (thick_clique(10, 4, 2)[0], full_star(9, 4, 2)[0], full_star(7, 3, 0)[0]):
            self.assertEqual(
                sum(h.degrees()),
                sum(len(edge) for edge in h.edges),
            )

class TestMaxDegree(unittest.TestCase):
    def test_small_cases(self):
        self.assertEqual(max_degree(thick_clique(8, 4, 2)[0]), 3)
        self.assertEqual(max_degree(Hypergraph(8)), 0)
        disjoint = Hypergraph(8, [VertexSet.range(0, 4), VertexSet.range(4, 8)])
        self.assertEqual(max_degree(disjoint), 1)

class TestComponents(unittest.TestCase):
    def test_small_cases(self):
        disjoint = Hypergraph(8, [VertexSet.range(0, 4), VertexSet.range(4, 8)])
        found = components(disjoint)
        self.assertEqual(len(found.parts), 2)
        self.assertEqual(found.parts[0].vertices, VertexSet.range(0, 4))
        self.assertEqual(found.isolated, VertexSet())

        self.assertEqual(len(components(full_star(8, 4, 2)[0]).parts), 1)
        self.assertEqual(len(thick_clique(8, 4, 2)[0].components().parts), 1)

    def test_isolated(self):
        h, _ = thick_clique(9, 4, 2)
        found = components(h)
        self.assertEqual(len(found.parts), 1)
        self.assertEqual(found.isolated, VertexSet.of([8]))

    def test_partition(self):
        h = Hypergraph(12, [
            VertexSet.of([0, 1]),
            VertexSet.of([1, 2]),
            VertexSet.of([5, 6]),
            VertexSet.of([6, 9]),
            VertexSet.of([10]),
        ])
        found = components(h)
        self.assertEqual(len(found.parts), 3)
        edges = [edge for part in found.parts for edge in part.hypergraph.edges]
        self.assertEqual(sorted(edges), list(h.edges))
        vertices = 0
        for part in found.parts:
            self.assertFalse(vertices & part.vertices)
            vertices |= part.vertices
        self.assertEqual(vertices, h.support())
        self.assertEqual(found.isolated, VertexSet.of([3, 4, 7, 8, 11]))

class TestInduced(unittest.TestCase):
    def test_small_cases(self):
        h, partition = thick_clique(8, 4, 2)
        self.assertEqual(len(induced(h, VertexSet())), 0)
        self.assertEqual(induced(h, h.vertices), h)
        two_teams = partition.teams[0] | partition.teams[1]
        self.assertEqual(induced(h, two_teams).edges, (VertexSet.range(0, 4),))

    def test_subset(self):
        h, _ = full_star(9, 4, 2)
        w = VertexSet.of([0, 1, 2, 4, 6, 8])
        sub = h.induced(w)
        self.assertEqual(sub.n, h.n)
        self.assertEqual(len(sub), 6)
        for edge in sub.edges:
            self.assertIn(edge, h)
            self.assertTrue(edge.issubset(w))
