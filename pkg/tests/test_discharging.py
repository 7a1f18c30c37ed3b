"""Exact discharging ledgers: initial totals, conservation, rule behavior."""

from __future__ import annotations

from fractions import Fraction

import pytest

from plane_corpus import (
    cube,
    dodecahedron,
    icosahedron,
    octahedron,
    platonic_solids,
    random_plane_min2,
    random_triangulation,
    tetrahedron,
    wheel,
)

from kempe.errors import ParameterError, PreconditionError
from kempe.graphs import Graph
from kempe.planar import PlaneGraph, plane_graph_from_faces
from kempe.discharging import run_discharging


def k4_minus_edge_embedded() -> PlaneGraph:
    return plane_graph_from_faces(4, [(0, 2, 1), (0, 1, 3), (0, 3, 1, 2)])


CORPUS = platonic_solids() + [wheel(5), wheel(9), k4_minus_edge_embedded(),
                              random_triangulation(12, 1), random_triangulation(18, 2),
                              random_plane_min2(15, 3), random_plane_min2(20, 8)]


class TestInitialCharges:
    def test_icosahedron_initial_arithmetic(self):
        # 12 vertices of degree 5 and 20 triangles: 12*(5-4) + 20*(3-4) = -8.
        report = run_discharging(icosahedron(), "lemma1")
        assert report.total == -8

    def test_total_is_minus_eight_everywhere(self):
        for pg in CORPUS:
            for variant in ("lemma1", "lemma2"):
                report = run_discharging(pg, variant)
                assert report.total == Fraction(-8), variant


class TestConservation:
    def test_every_rule_conserves_total(self):
        for pg in CORPUS:
            for variant in ("lemma1", "lemma2"):
                report = run_discharging(pg, variant)
                for rule, total in report.rule_totals:
                    assert total == Fraction(-8), (variant, rule)

    def test_transfer_log_replays_to_final_state(self):
        pg = random_triangulation(14, 9)
        report = run_discharging(pg, "lemma1")
        g = pg.graph
        from kempe.planar import trace_faces
        faces = trace_faces(pg)
        vertex = [Fraction(g.degree(v) - 4) for v in range(g.n)]
        face = [Fraction(f.length - 4) for f in faces]
        pot = [Fraction(0)] * len(report.pots_vertices)
        buckets = {"v": vertex, "f": face, "pot": pot}
        for t in report.ledger.transfers:
            buckets[t.source[0]][t.source[1]] -= t.amount
            buckets[t.sink[0]][t.sink[1]] += t.amount
        assert vertex == report.ledger.vertex
        assert face == report.ledger.face
        assert pot == report.ledger.pot


class TestLemma1Rules:
    def test_icosahedron_r2_spreads_everything(self):
        # No 3-vertices, so R1 is silent; every 5-vertex spreads 1/5 per corner
        # and each triangle ends at -1 + 3/5 = -2/5.
        report = run_discharging(icosahedron(), "lemma1")
        assert all(c == 0 for c in report.ledger.vertex)
        assert all(c == Fraction(-2, 5) for c in report.ledger.face)
        assert report.pots_vertices == ()

    def test_cube_pot_refilled_by_r3_faces_go_negative(self):
        # R1: no senders (the maximum degree is 3), takers drain the pot to -8.
        # R3: every vertex lies on a G3 4-cycle and takes 3 * 1/2 from its
        # three quad faces, refilling the pot to +4; each face ends at -2.
        report = run_discharging(cube(), "lemma1")
        assert all(c == 0 for c in report.ledger.vertex)
        assert all(c == Fraction(-2) for c in report.ledger.face)
        assert report.ledger.pot == [Fraction(4)]
        assert {h for h, _ in report.negative} == {("f", i) for i in range(6)}

    def test_k4_minus_edge_lemma1_hand_ledger(self):
        # Hand trace: takers 0,1 drain the pot by 2; R3 on the 4-cycle of G3
        # pulls 1/2 from the outer quad per 3-vertex and returns it.
        report = run_discharging(k4_minus_edge_embedded(), "lemma1")
        assert report.ledger.vertex == [0, 0, Fraction(-2), Fraction(-2)]
        assert sorted(report.ledger.face) == [Fraction(-1)] * 3
        assert report.ledger.pot == [Fraction(-1)]

    def test_r2_leaves_five_plus_vertices_at_zero(self):
        for pg in (wheel(7), icosahedron(), random_triangulation(16, 5)):
            report = run_discharging(pg, "lemma1")
            g = pg.graph
            for v in range(g.n):
                if g.degree(v) >= 5:
                    assert report.ledger.vertex[v] == 0

    def test_dodecahedron_pot_goes_negative(self):
        # All vertices are 3-vertices; no high-degree senders exist, so the
        # single pot ends deeply negative (C1 holds, no contradiction).
        report = run_discharging(dodecahedron(), "lemma1")
        assert report.ledger.pot[0] < 0
        assert any(h[0] == "pot" for h, _ in report.negative)


class TestLemma2Rules:
    def test_k4_minus_edge_lemma2_hand_ledger(self):
        # Hand trace: the two 2-vertices draw from the pot (-2); R3 gives the
        # 3-vertices 1/3 per corner; R4 gives each 2-vertex 1/3 from its
        # triangle and 2/3 from the alternating outer quad; no surplus for R5.
        report = run_discharging(k4_minus_edge_embedded(), "lemma2")
        assert report.ledger.vertex == [0, 0, 0, 0]
        assert sorted(report.ledger.face) == [Fraction(-2)] * 3
        assert report.ledger.pot == [Fraction(-2)]
        assert report.total == -8

    def test_alternating_quad_detected_in_transfers(self):
        report = run_discharging(k4_minus_edge_embedded(), "lemma2")
        r4_amounts = sorted(t.amount for t in report.ledger.transfers if t.rule == "R4")
        assert r4_amounts == [Fraction(1, 3), Fraction(1, 3),
                              Fraction(2, 3), Fraction(2, 3)]

    def test_icosahedron_lemma2_same_as_lemma1_spread(self):
        report = run_discharging(icosahedron(), "lemma2")
        assert all(c == 0 for c in report.ledger.vertex)
        assert all(c == Fraction(-2, 5) for c in report.ledger.face)


class TestPreconditions:
    def test_disconnected_rejected(self):
        two_triangles = plane_graph_from_faces(
            6, [(0, 1, 2), (2, 1, 0), (3, 4, 5), (5, 4, 3)])
        with pytest.raises(PreconditionError, match="connected"):
            run_discharging(two_triangles, "lemma1")

    def test_min_degree_two_required(self):
        g = Graph(2, ((1,), (0,)))
        pg = PlaneGraph(g, ((1,), (0,)))
        with pytest.raises(PreconditionError, match="degree"):
            run_discharging(pg, "lemma1")

    def test_unknown_variant(self):
        with pytest.raises(ParameterError):
            run_discharging(tetrahedron(), "lemma3")


class TestContradictionInvariant:
    def test_negative_holder_or_configuration_everywhere(self):
        # The structural lemmas promise: no configuration implies some holder
        # ends negative.  Equivalently a fully nonnegative ledger must come
        # with a configuration; both ways round is checked on the corpus.
        from kempe.planar import structural_audit
        for pg in CORPUS:
            for variant in ("lemma1", "lemma2"):
                report = run_discharging(pg, variant)
                audit = structural_audit(pg, variant)
                if not report.negative:
                    assert not audit.none_found, "nonnegative ledger without a " \
                        "configuration would refute the structural lemma"
                if audit.none_found:
                    assert report.negative
