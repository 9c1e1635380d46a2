import random
import unittest
from jrtkit import (
    DivisiblePairParams,
    Hypergraph,
    JrtParams,
    NonUniformError,
    ParameterError,
    VertexSet,
    full_star,
    gf2_rank,
    gfp_rank,
    in_profile,
    is_divisible_pair,
    is_jrt_member,
    is_t_divisible,
    rank_bound_check,
    red_colouring,
    rt_star,
    thick_clique,
)
from jrtkit._util import iter_bits

def _system(n, *edges):
    return Hypergraph(n, [VertexSet.of(edge) for edge in edges])

def _divisible_system(generator, t):
    '''A random t-divisible system with every size 1 mod t in which every
    vertex of a set also lies in another set.

    Each gadget is the g-set minus one vertex in turn, g = 2 mod t, so its
    sets have size g-1 and meet in g-2.  Fresh t-blocks are then added to
    random groups of at least two sets, and the vertices shuffled.
    '''
    sets = []
    cursor = 0
    for _ in range(generator.randint(1, 3)):
        g = generator.choice((t + 2, 2 * t + 2))
        gadget = VertexSet.range(cursor, cursor + g)
        sets.extend(gadget & ~(1 << vertex) for vertex in range(cursor, cursor + g))
        cursor += g
    for _ in range(generator.randint(0, 4)):
        block = VertexSet.range(cursor, cursor + t)
        for index in generator.sample(range(len(sets)), generator.randint(2, len(sets))):
            sets[index] |= block
        cursor += t
    n = generator.randint(cursor, 64)
    labels = generator.sample(range(n), n)
    return Hypergraph(n, [VertexSet.of(labels[v] for v in iter_bits(member)) for member in sets])

class TestJrtParams(unittest.TestCase):
    def test_derived(self):
        p = JrtParams(2, 3)
        self.assertEqual((p.k, p.ell, p.centre_size, p.red_size), (18, 6, 12, 13))
        self.assertEqual(JrtParams(1, 2).a, 4 ** 64)
        self.assertEqual(JrtParams(2, 8).k, 128)
        self.assertEqual(JrtParams(1, 2), JrtParams(1, 2))
        self.assertNotEqual(JrtParams(1, 2), JrtParams(2, 2))

    def test_ranges(self):
        for r, t in ((0, 2), (1, 1), (3, 7)):
            with self.assertRaises(ParameterError):
                JrtParams(r, t)

    def test_in_profile(self):
        p = JrtParams(1, 2)
        self.assertFalse(in_profile(p, 1))
        for size in (0, 2, 3, 4):
            self.assertTrue(in_profile(p, size))
        self.assertTrue(in_profile(JrtParams(1, 3), 3))
        self.assertFalse(in_profile(JrtParams(1, 3), 4))
        self.assertTrue(in_profile(JrtParams(1, 3), 7))
        q = JrtParams(2, 2)
        self.assertFalse(in_profile(q, 3))
        self.assertTrue(in_profile(q, 4))
        self.assertTrue(in_profile(q, 5))

    def test_divisible_pair_params(self):
        self.assertEqual(DivisiblePairParams(2, 4).check(), (2, 4))
        with self.assertRaises(ParameterError):
            DivisiblePairParams(0, 4).check()
        with self.assertRaises(ParameterError):
            DivisiblePairParams(2, 0).check()

class TestMembership(unittest.TestCase):
    def test_constructions_are_members(self):
        for r, t in ((1, 2), (1, 3), (2, 2)):
            p = JrtParams(r, t)
            for n in range(p.k, p.k + 2 * t + 1):
                clique, _ = thick_clique(n, p.k, t)
                self.assertTrue(is_jrt_member(p, clique).member, (r, t, n))
                star, _ = rt_star(p, n)
                self.assertTrue(is_jrt_member(p, star).member, (r, t, n))

    def test_violation(self):
        h = _system(8, [0, 1, 2, 3], [3, 4, 5, 6])
        report = is_jrt_member(JrtParams(1, 2), h)
        self.assertFalse(report.member)
        self.assertEqual(report.violation, (VertexSet.of([0, 1, 2, 3]), VertexSet.of([3, 4, 5, 6])))

    def test_first_violation_is_colex_first(self):
        h = _system(
            10,
            [0, 1, 2, 3],
            [0, 1, 4, 5],
            [3, 6, 7, 8],
            [5, 6, 7, 9],
        )
        report = is_jrt_member(JrtParams(1, 2), h)
        self.assertEqual(report.violation, (VertexSet.of([0, 1, 2, 3]), VertexSet.of([3, 6, 7, 8])))

    def test_non_uniform(self):
        with self.assertRaises(NonUniformError):
            is_jrt_member(JrtParams(1, 2), _system(8, [0, 1, 2, 3], [4, 5, 6]))

    def test_empty(self):
        self.assertTrue(is_jrt_member(JrtParams(1, 2), Hypergraph(8)).member)

class TestDivisibility(unittest.TestCase):
    def test_t_divisible(self):
        self.assertTrue(is_t_divisible(3, _system(9, [0, 1], [2, 3, 4], [5, 6, 7, 8])))
        self.assertFalse(is_t_divisible(2, _system(5, [0, 1, 2], [2, 3, 4])))
        self.assertTrue(is_t_divisible(2, thick_clique(12, 4, 2)[0]))

    def test_divisible_pair(self):
        self.assertTrue(is_divisible_pair(2, Hypergraph(4), _system(4, [0, 1, 3])))
        self.assertTrue(is_divisible_pair(2, _system(4, [0, 1]), _system(4, [0, 1, 2, 3])))
        self.assertFalse(is_divisible_pair(2, _system(4, [0, 1]), _system(4, [1, 2, 3])))

    def test_shared_member_pairs_with_itself(self):
        f = _system(4, [0, 1, 2])
        self.assertFalse(is_divisible_pair(2, f, f))
        self.assertTrue(is_divisible_pair(3, f, f))

    def test_monotone_in_first_argument(self):
        generator = random.Random(11)
        for _ in range(25):
            blocks = [VertexSet.range(2 * i, 2 * i + 2) for i in range(5)]
            family = [
                VertexSet(sum(generator.sample(blocks, generator.randint(1, 3))))
                for _ in range(4)
            ]
            other = [
                VertexSet(sum(generator.sample(blocks, generator.randint(1, 4))))
                for _ in range(4)
            ]
            full = Hypergraph(10, family)
            union = Hypergraph(10, family + other)
            self.assertTrue(is_divisible_pair(2, full, union))
            for size in range(len(full.edges)):
                part = Hypergraph(10, full.edges[:size])
                self.assertTrue(is_divisible_pair(2, part, union))

class TestRank(unittest.TestCase):
    def test_gf2(self):
        self.assertEqual(gf2_rank([0b011, 0b101, 0b110]), 2)
        self.assertEqual(gf2_rank([0b001, 0b010, 0b100]), 3)
        self.assertEqual(gf2_rank([]), 0)
        self.assertEqual(gf2_rank([0, 0b11]), 1)

    def test_gfp(self):
        # Dependent over GF(2), independent over GF(3).
        self.assertEqual(gfp_rank([0b011, 0b101, 0b110], 3, 3), 3)
        self.assertEqual(gfp_rank([0b011, 0b011], 3, 3), 1)
        self.assertEqual(gfp_rank([], 3, 5), 0)

    def test_singletons(self):
        report = rank_bound_check(2, _system(5, [0], [1], [2], [3], [4]))
        self.assertTrue(report.hypotheses)
        self.assertTrue(report.independent)
        self.assertTrue(report.within_bound)
        self.assertEqual((report.p, report.rank, report.edges, report.vertices), (2, 5, 5, 5))

    def test_odd_prime(self):
        report = rank_bound_check(3, _system(5, [0, 1, 2, 3], [0, 1, 2, 4]))
        self.assertTrue(report.sizes_ok)
        self.assertTrue(report.divisible)
        self.assertEqual(report.p, 3)
        self.assertTrue(report.independent)
        self.assertTrue(report.within_bound)

    def test_smallest_prime_factor(self):
        self.assertEqual(rank_bound_check(6, Hypergraph(3)).p, 2)
        self.assertEqual(rank_bound_check(9, Hypergraph(3)).p, 3)
        with self.assertRaises(ParameterError):
            rank_bound_check(1, Hypergraph(3))

    def test_hypothesis_failure_is_reported(self):
        report = rank_bound_check(2, _system(5, [0, 1], [1, 2, 3]))
        self.assertFalse(report.sizes_ok)
        self.assertFalse(report.divisible)
        self.assertFalse(report.hypotheses)

    def test_uniform_red_sets_of_a_star(self):
        p = JrtParams(1, 2)
        star, _ = full_star(10, 4, 2)
        uniform = red_colouring(p, star).h_star_red
        self.assertEqual(len(uniform), 8)
        report = rank_bound_check(2, uniform)
        self.assertTrue(report.hypotheses)
        self.assertTrue(report.independent)
        self.assertTrue(report.within_bound)

    def test_random_divisible_systems(self):
        generator = random.Random(4)
        for t in (2, 3):
            for _ in range(500):
                system = _divisible_system(generator, t)
                for member in system.edges:
                    others = 0
                    for other in system.edges:
                        if other != member:
                            others |= other
                    self.assertFalse(member & ~others, member)
                report = rank_bound_check(t, system)
                self.assertTrue(report.hypotheses)
                self.assertTrue(report.independent)
                self.assertTrue(report.within_bound)
