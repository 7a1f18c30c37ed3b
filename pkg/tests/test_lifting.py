"""Lifting swap sequences through a vertex or an induced subgraph."""

from __future__ import annotations

import itertools
import random

import pytest

from kempe.coloring import (
    SwapMove,
    apply_moves,
    check_coloring,
    classify_swap_partial,
    enumerate_L_colorings,
    make_lists,
)
from kempe.errors import ParameterError, PreconditionError
from kempe.graphs import from_edges, generate, is_connected, parse_family
from kempe.reconfig import (
    find_versatile_extension,
    lift_through_subgraph,
    lift_through_vertex,
)


def fam(text):
    return generate(parse_family(text))


def restricted(phi, absent):
    return tuple(None if v in absent else phi[v] for v in range(len(phi)))


def random_walk_moves(g, lists, start, absent, steps, rng):
    """A random L-valid move sequence on g minus the absent vertices."""
    universe = sorted(set().union(*lists))
    phi = restricted(start, absent)
    moves = []
    for _ in range(steps):
        options = []
        for anchor in range(g.n):
            if anchor in absent or phi[anchor] is None:
                continue
            for pair in itertools.combinations(universe, 2):
                if phi[anchor] not in pair:
                    continue
                out = classify_swap_partial(g, lists, phi, SwapMove(anchor, pair), absent)
                if out.valid:
                    options.append((SwapMove(anchor, pair), out.coloring))
        if not options:
            break
        move, phi = options[rng.randrange(len(options))]
        moves.append(move)
    return moves, phi


class TestLiftThroughVertex:
    def test_empty_sequence_with_target_recolors_once(self):
        g = fam("path(2)")
        lists = make_lists([{1, 2, 3}, {1, 2}])
        result = lift_through_vertex(g, lists, 0, (3, 1), [], target_color=2)
        assert len(result.moves) == 1
        assert result.final == (2, 1)
        result = lift_through_vertex(g, lists, 0, (3, 1), [], target_color=3)
        assert result.moves == ()

    def test_unaffected_vertex_replays_directly(self):
        g = fam("path(2)")
        lists = make_lists([{1, 2, 3}, {1, 2}])
        result = lift_through_vertex(g, lists, 0, (3, 1), [SwapMove(1, (1, 2))])
        assert result.moves == (SwapMove(1, (1, 2)),)
        assert result.final == (3, 2)

    def test_parking_recolor_inserted_when_needed(self):
        # Triangle 0-1-2 plus pendant 3 on vertex 0; lifting through 0.
        g = from_edges(4, [(0, 1), (0, 2), (1, 2), (0, 3)])
        lists = make_lists([{1, 2, 3, 4}, {1, 2, 3}, {1, 2, 3}, {1, 2}])
        start = (1, 2, 3, 2)
        # On g-0, swap {1,2} at 3 is valid; in g, vertex 0 sits on the 1,2-path.
        moves = [SwapMove(3, (2, 1))]
        out = classify_swap_partial(g, lists, restricted(start, frozenset({0})),
                                    moves[0], frozenset({0}))
        assert out.valid
        result = lift_through_vertex(g, lists, 0, start, moves)
        assert len(result.moves) == 2  # park 0, then replay
        assert result.moves[0].anchor == 0
        assert apply_moves(g, lists, start, result.moves) == result.final
        assert restricted(result.final, frozenset({0})) == out.coloring

    def test_precondition_requires_slack(self):
        g = fam("path(2)")
        lists = make_lists([{1}, {1, 2}])
        with pytest.raises(PreconditionError):
            lift_through_vertex(g, lists, 0, (1, 2), [])

    def test_invalid_input_move_names_step(self):
        g = fam("path(3)")
        lists = make_lists([{1, 2}, {1, 2, 3}, {1, 2}])
        with pytest.raises(PreconditionError, match="move 0"):
            lift_through_vertex(g, lists, 1, (1, 3, 1), [SwapMove(0, (1, 3))])

    def test_random_instances_validate(self):
        rng = random.Random(424242)
        done = 0
        while done < 30:
            n = rng.randrange(4, 9)
            edges = [e for e in itertools.combinations(range(n), 2)
                     if rng.random() < 0.45]
            g = from_edges(n, edges)
            if not is_connected(g):
                continue
            v = rng.randrange(n)
            lists = []
            for x in range(n):
                size = max(g.degree(x) + (1 if x == v else 0), 1)
                lists.append(set(rng.sample(range(1, 10), size)))
            lists = make_lists(lists)
            colorings = enumerate_L_colorings(g, lists, 200_000)
            if not colorings:
                continue
            start = colorings[rng.randrange(len(colorings))]
            moves, expected = random_walk_moves(g, lists, start, frozenset({v}),
                                                rng.randrange(1, 6), rng)
            if not moves:
                continue
            done += 1
            result = lift_through_vertex(g, lists, v, start, moves)
            assert apply_moves(g, lists, start, result.moves) == result.final
            assert restricted(result.final, frozenset({v})) == expected


class TestVersatileExtension:
    # Host: path 0-1, vertex 1 joined to an attached structure H.
    def even_cycle_host(self):
        # H = C4 on {2,3,4,5}; vertex 2 also joined to 1.
        g = from_edges(6, [(0, 1), (1, 2), (2, 3), (3, 4), (4, 5), (2, 5)])
        lists = make_lists([{1, 2}, {1, 2}, {2, 3, 4}, {1, 2}, {1, 2}, {1, 2}])
        return g, lists

    def test_even_cycle_extension_found_and_versatile(self):
        g, lists = self.even_cycle_host()
        h = {2, 3, 4, 5}
        partial = (1, 2) + (None,) * 4
        phi = find_versatile_extension(g, h, lists, partial, 1, (1, 2))
        assert check_coloring(g, lists, phi).ok
        assert restricted(phi, frozenset(h)) == partial
        # vertex 2 must avoid the pair: L(2) excludes 1 and using 2 would
        # invalidate the swap at w=1
        assert phi[2] in {3, 4}
        from kempe.coloring import classify_swap
        assert classify_swap(g, lists, phi, SwapMove(1, (1, 2))).valid

    def test_not_versatile_rejected(self):
        g, lists = self.even_cycle_host()
        partial = (1, 2) + (None,) * 4
        with pytest.raises(PreconditionError, match="not versatile"):
            find_versatile_extension(g, {2, 3, 4, 5}, lists, partial, 0, (3, 4))

    def test_gallai_tree_h_rejected(self):
        # H = triangle is a Gallai tree.
        g = from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 4)])
        lists = make_lists([{1, 2}, {1, 2}, {1, 2, 3}, {1, 2}, {1, 2}])
        with pytest.raises(PreconditionError, match="Gallai"):
            find_versatile_extension(g, {2, 3, 4}, lists, (1, 2, None, None, None),
                                     1, (1, 2))

    def test_theta_h_inside_host(self):
        # H = theta(1,3,3) on vertices 2..7, attached at vertex 2.
        theta = fam("theta(1,3,3)")
        edges = [(0, 1), (1, 2)] + [(u + 2, v + 2) for u, v in theta.edges()]
        g = from_edges(theta.n + 2, edges)
        h = set(range(2, g.n))
        lists = [None] * g.n
        lists[0] = {1, 2}
        lists[1] = {1, 2}
        for x in h:
            size = g.degree(x)
            lists[x] = set(range(1, size + 1)) | {5}
            lists[x] = set(sorted(lists[x])[:size])
        lists = make_lists(lists)
        partial = (1, 2) + (None,) * theta.n
        phi = find_versatile_extension(g, h, lists, partial, 1, (1, 2))
        assert check_coloring(g, lists, phi).ok

    def test_component_merge_contract(self):
        # Two separate pair-colored components outside H must not merge.
        g, lists = self.even_cycle_host()
        h = frozenset({2, 3, 4, 5})
        partial = (1, 2) + (None,) * 4
        phi = find_versatile_extension(g, h, lists, partial, 1, (1, 2))
        from kempe.reconfig import _pair_components
        old = _pair_components(g, partial, (1, 2), h)
        new = _pair_components(g, phi, (1, 2), frozenset())
        for comp in new:
            assert sum(1 for p in old if p <= comp) <= 1


class TestLiftThroughSubgraph:
    def host_with_chorded_cycle(self, tight=True):
        # H = C6 with an antipodal chord (theta(1,3,3) shape) on 2..7,
        # attached to a path 0-1 at vertices 2 and 5.
        edges = [(0, 1), (1, 2), (0, 5)]
        cycle = [2, 3, 4, 5, 6, 7]
        edges += [(cycle[i], cycle[(i + 1) % 6]) for i in range(6)]
        edges += [(2, 5)]  # chord between antipodal cycle vertices
        g = from_edges(8, edges)
        h = set(range(2, 8))
        lists = [None] * 8
        lists[0] = {1, 2, 3}
        lists[1] = {1, 2, 3}
        for x in h:
            size = g.degree(x) if tight else g.degree(x) + 1
            lists[x] = set(range(1, size + 1))
        return g, h, make_lists(lists)

    def test_single_vertex_h_consistent_with_vertex_lift(self):
        g = fam("path(3)")
        lists = make_lists([{1, 2}, {1, 2, 3}, {1, 2}])
        start = (1, 3, 1)
        moves = [SwapMove(0, (1, 2)), SwapMove(2, (1, 2))]
        via_vertex = lift_through_vertex(g, lists, 1, start, moves)
        via_subgraph = lift_through_subgraph(g, [1], lists, start, moves)
        assert restricted(via_vertex.final, frozenset({1})) \
            == restricted(via_subgraph.final, frozenset({1}))
        assert apply_moves(g, lists, start, via_subgraph.moves) == via_subgraph.final

    def test_chorded_even_cycle_end_to_end(self):
        rng = random.Random(77)
        g, h, lists = self.host_with_chorded_cycle()
        colorings = enumerate_L_colorings(g, lists, 500_000)
        assert colorings
        start = colorings[0]
        moves, expected = random_walk_moves(g, lists, start, frozenset(h), 3, rng)
        assert moves
        result = lift_through_subgraph(g, h, lists, start, moves)
        assert apply_moves(g, lists, start, result.moves) == result.final
        assert restricted(result.final, frozenset(h)) == expected

    def test_target_bridge_reaches_target(self):
        rng = random.Random(99)
        g, h, lists = self.host_with_chorded_cycle()
        colorings = enumerate_L_colorings(g, lists, 500_000)
        start = colorings[0]
        moves, expected = random_walk_moves(g, lists, start, frozenset(h), 2, rng)
        target = next(phi for phi in colorings
                      if restricted(phi, frozenset(h)) == expected)
        result = lift_through_subgraph(g, h, lists, start, moves, target=target,
                                       verify_hypotheses=False)
        assert result.final == target
        assert apply_moves(g, lists, start, result.moves) == target

    def test_gallai_h_rejected_when_tight(self):
        # H = triangle with tight lists: f' = d_H, Gallai tree, so not
        # f'-choosable.
        g = from_edges(5, [(0, 1), (1, 2), (2, 3), (3, 4), (2, 4), (3, 4)][:-1])
        lists = make_lists([{1, 2}, {1, 2, 3}, {1, 2, 3}, {1, 2}, {1, 2}])
        with pytest.raises(PreconditionError, match="Gallai"):
            lift_through_subgraph(g, [2, 3, 4], lists, (1, 2, 1, 2, 3)[:g.n],
                                  [], verify_hypotheses=True)

    def test_fprime_below_subgraph_degree_rejected(self):
        g, h, lists = self.host_with_chorded_cycle()
        small = list(lists)
        small[2] = frozenset({1, 2})  # d_g(2) = 4, so f'(2) < d_H(2)
        with pytest.raises(PreconditionError, match="f'"):
            lift_through_subgraph(g, h, make_lists(small), (1,) * 8, [])
