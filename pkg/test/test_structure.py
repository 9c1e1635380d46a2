import unittest
from jrtkit import (
    AssertLevel,
    ConsistencyError,
    Hypergraph,
    JrtParams,
    ParameterError,
    ResidualClass,
    VertexSet,
    build_structure,
    full_star,
    is_inseparable,
    is_thick,
    purple_sets,
    random_jrt,
    red_colouring,
    rt_star,
    stability_diagnostic,
    thick_clique,
    two_star_gadget,
    verify_certificate,
)
from jrtkit._structure import _red_union_subkind, inseparable_classes

P = JrtParams(1, 2)

class TestInseparable(unittest.TestCase):
    def test_thick_clique(self):
        h, partition = thick_clique(9, 4, 2)
        self.assertTrue(is_inseparable(h, VertexSet.of([0, 1])))
        self.assertFalse(is_inseparable(h, VertexSet.of([0, 2])))
        self.assertEqual(inseparable_classes(h), partition.teams + [VertexSet.of([8])])
        self.assertTrue(is_thick(h, 2))

    def test_star_is_not_thick(self):
        h, _ = full_star(8, 4, 2)
        self.assertFalse(is_thick(h, 2))
        self.assertTrue(is_inseparable(h, VertexSet.of([0, 1])))

class TestPurple(unittest.TestCase):
    def test_full_star(self):
        h, layout = full_star(12, 4, 2)
        purple = purple_sets(P, red_colouring(P, h).h_star_red)
        self.assertEqual(purple.edges, (layout.centre,))

    def test_none(self):
        h, _ = thick_clique(12, 4, 2)
        self.assertEqual(len(purple_sets(P, red_colouring(P, h).h_star_red)), 0)

class TestBuildStructure(unittest.TestCase):
    def _check_partition(self, h, certificate):
        self.assertEqual(certificate.v_t | certificate.v_s | certificate.v_r, h.vertices)
        self.assertFalse(certificate.v_t & certificate.v_s)
        self.assertFalse(certificate.v_t & certificate.v_r)
        self.assertFalse(certificate.v_s & certificate.v_r)
        edges = list(certificate.h_t) + list(certificate.h_s) + list(certificate.h_r)
        self.assertEqual(sorted(edges), list(h.edges))

    def test_thick_clique(self):
        h, partition = thick_clique(16, 4, 2)
        structure = build_structure(P, h)
        certificate = structure.certificate
        self.assertEqual(certificate.teams, partition.teams)
        self.assertEqual(certificate.v_t, h.vertices)
        self.assertEqual(certificate.h_t, h)
        self.assertEqual(certificate.stars, [])
        self.assertEqual(len(certificate.h_r), 0)
        self.assertEqual(structure.trace.green.edges, tuple(partition.teams))
        self.assertEqual(structure.trace.soft_failures, [])
        self._check_partition(h, certificate)
        self.assertTrue(verify_certificate(P, h, certificate).valid)
        self.assertTrue(stability_diagnostic(P, h, certificate).within)

    def test_full_star(self):
        h, layout = full_star(12, 4, 2)
        structure = build_structure(P, h)
        certificate = structure.certificate
        self.assertEqual(certificate.teams, [layout.centre])
        self.assertEqual(certificate.v_t, layout.centre)
        self.assertEqual(certificate.v_s, layout.body)
        self.assertEqual(certificate.v_r, VertexSet())
        self.assertEqual(certificate.h_s, h)
        self.assertEqual(len(certificate.h_t), 0)
        self.assertEqual(len(certificate.stars), 1)
        star = certificate.stars[0]
        self.assertEqual(star.centre, layout.centre)
        self.assertEqual(star.body, layout.body)
        self.assertEqual(star.size, 45)
        self.assertEqual(structure.trace.purple.edges, (layout.centre,))
        for assignment in structure.trace.star_assignments.values():
            self.assertEqual(assignment.alternatives, 1)
        self._check_partition(h, certificate)
        self.assertTrue(verify_certificate(P, h, certificate).valid)

    def test_gadget(self):
        gadget = two_star_gadget(1, 2, 4)
        h = gadget.hypergraph
        with self.assertLogs('jrtkit._structure', 'WARNING'):
            structure = build_structure(P, h)
        certificate = structure.certificate
        self.assertEqual(certificate.teams, [gadget.parts['T'], gadget.parts['C1'], gadget.parts['C2']])
        self.assertEqual(certificate.v_r, gadget.parts['U1'] | gadget.parts['U2'])
        self.assertEqual(len(certificate.h_t), 3)
        self.assertEqual(len(certificate.h_r), 12)
        self.assertEqual(
            set(structure.trace.green.edges),
            set(gadget.parts.values()),
        )
        self.assertEqual(structure.trace.soft_failures, ['no-stars-implies-no-residual'])
        for residual in structure.trace.residual_classes.values():
            self.assertIs(residual.kind, ResidualClass.UNCOVERED)
        self._check_partition(h, certificate)
        self.assertTrue(verify_certificate(P, h, certificate).valid)

    def test_gadget_hard(self):
        h = two_star_gadget(1, 2, 4).hypergraph
        with self.assertRaises(ConsistencyError) as caught:
            build_structure(P, h, assert_level=AssertLevel.HARD)
        self.assertEqual(caught.exception.clause, 'no-stars-implies-no-residual')

    def test_non_member(self):
        h = Hypergraph(8, [VertexSet.of([0, 1, 2, 3]), VertexSet.of([3, 4, 5, 6])])
        with self.assertRaises(ParameterError):
            build_structure(P, h)
        with self.assertRaises(ParameterError):
            build_structure(P, Hypergraph(8, [VertexSet.of([0, 1, 2])]))

    def test_other_parameters(self):
        q = JrtParams(1, 3)
        for n in range(9, 21):
            for h in (thick_clique(n, 9, 3)[0], rt_star(q, n)[0]):
                structure = build_structure(q, h)
                self._check_partition(h, structure.certificate)
                self.assertTrue(verify_certificate(q, h, structure.certificate).valid, n)

    def test_small_fixtures(self):
        for n in range(4, 21):
            for h in (thick_clique(n, 4, 2)[0], full_star(n, 4, 2)[0]):
                structure = build_structure(P, h)
                self._check_partition(h, structure.certificate)
                self.assertTrue(verify_certificate(P, h, structure.certificate).valid, n)

    def test_random_members(self):
        for seed in range(200):
            n = 8 + seed % 9
            h = random_jrt(P, n, 12, seed).hypergraph
            structure = build_structure(P, h)
            self._check_partition(h, structure.certificate)
            self.assertTrue(verify_certificate(P, h, structure.certificate).valid, seed)
            for edge, residual in structure.trace.residual_classes.items():
                self.assertIn(edge, structure.certificate.h_r)
                self.assertIsInstance(residual.kind, ResidualClass)

    def test_disjoint_stars_beyond_the_support_cap(self):
        h, layout = full_star(19, 4, 2)
        both = Hypergraph(38, list(h.edges) + [VertexSet(edge << 19) for edge in h.edges])
        self.assertGreater(both.support().bit_count(), 24)
        structure = build_structure(P, both)
        certificate = structure.certificate
        self.assertEqual(
            [star.centre for star in certificate.stars],
            [layout.centre, VertexSet.of([19, 20])],
        )
        self.assertEqual([star.size for star in certificate.stars], [136, 136])
        self.assertEqual(len(certificate.h_r), 0)
        self._check_partition(both, certificate)
        self.assertTrue(verify_certificate(P, both, certificate).valid)

    def test_workers_do_not_change_result(self):
        h, _ = full_star(10, 4, 2)
        self.assertEqual(
            build_structure(P, h, workers=1).certificate,
            build_structure(P, h, workers=3).certificate,
        )

class TestVerifyCertificate(unittest.TestCase):
    def test_tampering(self):
        h, _ = thick_clique(12, 4, 2)
        certificate = build_structure(P, h).certificate

        report = verify_certificate(P, h, certificate._replace(teams=[]))
        self.assertFalse(report.valid)
        self.assertIn('i', [violation.clause for violation in report.violations])

        report = verify_certificate(P, h, certificate._replace(ell=3))
        self.assertEqual([violation.clause for violation in report.violations], ['iv'])

        moved = certificate._replace(
            v_t=VertexSet(certificate.v_t & ~1),
            v_r=VertexSet(certificate.v_r | 1),
        )
        clauses = {violation.clause for violation in verify_certificate(P, h, moved).violations}
        self.assertIn('i', clauses)

    def test_star_part(self):
        h, _ = full_star(12, 4, 2)
        certificate = build_structure(P, h).certificate
        report = verify_certificate(P, h, certificate._replace(stars=[]))
        self.assertIn('ii', [violation.clause for violation in report.violations])
        report = verify_certificate(P, h, certificate._replace(h_s=Hypergraph(12), h_r=h))
        clauses = [violation.clause for violation in report.violations]
        self.assertIn('ii', clauses)
        self.assertIn('iv', clauses)

    def test_stability(self):
        h, layout = full_star(12, 4, 2)
        certificate = build_structure(P, h).certificate
        report = stability_diagnostic(P, h, certificate)
        self.assertEqual(report.edges, 45)
        # One team and ten star vertices: binom(11, 2) and 0 + binom(10, 2).
        self.assertEqual(report.joint_bound, 55)
        self.assertEqual(report.split_bound, 45)
        self.assertTrue(report.within)

class TestRedUnionKinds(unittest.TestCase):
    def test_two_red_sets_meeting_little(self):
        q = JrtParams(2, 2)
        red = Hypergraph(8, [VertexSet.range(0, 5), VertexSet.range(3, 8)])
        self.assertEqual(_red_union_subkind(q, VertexSet.range(0, 8), red), 'i')

    def test_common_base(self):
        red = Hypergraph(8, [VertexSet.of([0, 1, 2]), VertexSet.of([0, 1, 3])])
        self.assertEqual(_red_union_subkind(P, VertexSet.range(0, 4), red), 'ii')
        red = Hypergraph(8, [VertexSet.of([0, 1, 2]), VertexSet.of([1, 2, 3])])
        self.assertEqual(_red_union_subkind(P, VertexSet.range(0, 4), red), 'ii')

    def test_neither_kind(self):
        red = Hypergraph(8, [VertexSet.of([0, 1, 2])])
        with self.assertRaises(ConsistencyError) as caught:
            _red_union_subkind(P, VertexSet.range(0, 4), red)
        self.assertEqual(caught.exception.clause, 'red-union-kind')
