"""Rounding, path extraction, and the three solver entry points."""
from __future__ import annotations

import math
import random
from dataclasses import replace

import pytest

from minpath import (
    Config,
    TerminalPair,
    exact_min_color_path,
    exact_prize,
    exact_steiner,
    extract_path,
    gen_grid,
    round_hitting,
    solve,
    solve_hitting_lp,
    solve_prize,
    solve_steiner,
    verify_separator,
)
from minpath.errors import NotPlanarError

from conftest import build_instance


def path_colors(inst, path):
    out = set()
    for v in path:
        out |= inst.graph.vertex_colors[v]
    return out


class TestExtractPath:
    def test_all_colors_allowed_finds_a_path(self, walls):
        path = extract_path(walls.graph, {0, 1, 2}, 0, 7)
        assert path is not None and path[0] == 0 and path[-1] == 7

    def test_empty_allowed_on_diamond_fails(self, diamond):
        assert extract_path(diamond.graph, set(), 0, 3) is None

    def test_single_branch_color(self, diamond):
        assert extract_path(diamond.graph, {0}, 0, 3) == (0, 1, 3)
        assert extract_path(diamond.graph, {1}, 0, 3) == (0, 2, 3)

    def test_path_colors_stay_inside_allowed(self, ring):
        path = extract_path(ring.graph, {0, 1}, 12, 0)
        assert path is not None
        assert path_colors(ring, path) <= {0, 1}

    @pytest.mark.parametrize("seed", range(12))
    def test_success_iff_complement_is_no_separator(self, seed):
        # extraction succeeds exactly when the allowed set hits every separator,
        # i.e. when the leftover colors fail to separate
        rng = random.Random(seed)
        inst = gen_grid(5, 5, rng.randint(1, 8), rng.randint(1, 5), 4000 + seed)
        s, t = inst.terminals[0].s, inst.terminals[0].t
        for _ in range(25):
            allowed = {c for c in range(inst.num_colors) if rng.random() < 0.5}
            allowed |= path_colors(inst, (s, t))
            rest = set(range(inst.num_colors)) - allowed
            hits_everything = not verify_separator(inst.graph, rest, s, t)
            assert (extract_path(inst.graph, allowed, s, t) is not None) == hits_everything


class TestRoundHitting:
    def test_zero_lp_rounds_to_nothing(self, white_diamond):
        lp = solve_hitting_lp(white_diamond)
        assert round_hitting(white_diamond, lp) == frozenset()

    def test_diamond_preround_catches_both(self, diamond):
        lp = solve_hitting_lp(diamond)
        rounded = round_hitting(diamond, lp)
        assert {c for c in (0, 1) if lp.x[c] >= 0.1} <= rounded
        assert verify_separator(diamond.graph, {0, 1}, 0, 3)
        assert extract_path(diamond.graph, rounded, 0, 3) is not None

    def test_given_halves_preround_both(self, diamond):
        # tracing the rounding on the symmetric fractional point by hand
        lp = solve_hitting_lp(diamond)
        halves = replace(lp, x=(0.5, 0.5))
        assert round_hitting(diamond, halves) == frozenset({0, 1})

    def test_small_values_go_through_decomposition(self, ring):
        lp = solve_hitting_lp(ring)
        fake = replace(lp, x=tuple(0.01 for _ in lp.x))
        rounded = round_hitting(ring, fake, epsilon=0.1)
        # nothing reaches the pre-round bar, so only decomposition cut colors appear
        assert rounded == frozenset() or all(fake.x[c] < 0.1 for c in rounded)

    def test_epsilon_must_leave_room_for_delta(self, diamond):
        lp = solve_hitting_lp(diamond)
        with pytest.raises(ValueError):
            round_hitting(diamond, lp, epsilon=1.0)
        with pytest.raises(ValueError):
            Config(epsilon=0.5)


class TestSolve:
    def test_white_instance(self, white_diamond):
        sol = solve(white_diamond)
        assert sol.objective == 0.0 and sol.paths[0] is not None

    def test_diamond_bounds(self, diamond):
        sol = solve(diamond)
        assert 1.0 <= sol.objective <= 2.0
        assert path_colors(diamond, sol.paths[0]) <= sol.colors
        assert exact_min_color_path(diamond).value == 1.0

    def test_walls_sandwich(self, walls):
        sol = solve(walls)
        opt = exact_min_color_path(walls).value
        assert sol.objective >= sol.lower_bound - 1e-6
        assert sol.objective >= opt >= math.ceil(sol.lower_bound - 1e-6)
        assert path_colors(walls, sol.paths[0]) <= sol.colors

    def test_ring_fractional_rounding(self, ring):
        sol = solve(ring)
        assert math.isclose(sol.lower_bound, 1.5, abs_tol=1e-7)
        assert sol.objective >= 2.0  # integral OPT
        assert path_colors(ring, sol.paths[0]) <= sol.colors

    def test_colored_terminals_are_charged(self):
        inst = build_instance(
            2,
            [{1}, {0}, {1}, set()],
            [(0, 1), (0, 2), (1, 3), (2, 3)],
            [(0, 0), (1, 1), (1, -1), (2, 0)],
            [(0, 3)],
        )
        sol = solve(inst)
        assert 1 in sol.colors
        assert sol.objective == exact_min_color_path(inst).value == 1.0

    def test_multi_pair_rejected(self, diamond):
        multi = replace(diamond, terminals=(TerminalPair(0, 3), TerminalPair(1, 2)))
        with pytest.raises(ValueError, match="steiner"):
            solve(multi)

    def test_non_planar_rejected(self, diamond):
        ate = replace(diamond, graph=replace(diamond.graph, rotation=None))
        with pytest.raises(NotPlanarError):
            solve(ate)

    def test_strategy_kpr_also_feasible(self, ring):
        sol = solve(ring, Config(strategy="kpr_chop"))
        assert path_colors(ring, sol.paths[0]) <= sol.colors

    def test_repair_mode_never_fails(self, ring):
        sol = solve(ring, Config(mode="repair"))
        assert sol.paths[0] is not None


class TestSolveSteiner:
    def test_single_pair_matches_solve(self, diamond):
        assert solve_steiner(diamond).objective == solve(diamond).objective

    def test_two_pairs_share_a_diamond(self, diamond):
        multi = replace(diamond, terminals=(TerminalPair(0, 3), TerminalPair(1, 2)))
        sol = solve_steiner(multi)
        assert all(p is not None for p in sol.paths)
        for k, pair in enumerate(multi.terminals):
            assert sol.paths[k][0] == pair.s and sol.paths[k][-1] == pair.t
            assert path_colors(multi, sol.paths[k]) <= sol.colors
        assert sol.objective >= exact_steiner(multi).value

    def test_disjoint_diamonds_cost_adds_up(self):
        # two separate diamonds joined by a white bridge, one pair per diamond;
        # branch vertices of each diamond touch so every color stays connected
        inst = build_instance(
            2,
            [set(), {0}, {0}, set(), set(), {1}, {1}, set()],
            [(0, 1), (0, 2), (1, 3), (2, 3), (1, 2), (3, 4), (4, 5), (4, 6), (5, 7), (6, 7), (5, 6)],
            [(0, 0), (1, 1), (1, -1), (2, 0), (3, 0), (4, 1), (4, -1), (5, 0)],
            [(0, 3), (4, 7)],
        )
        sol = solve_steiner(inst)
        assert sol.objective >= 2.0
        assert exact_steiner(inst).value == 2.0


class TestSolvePrize:
    def test_prize_zero_forfeits_for_free(self, diamond):
        inst = replace(diamond, terminals=(TerminalPair(0, 3, 0.0),))
        sol = solve_prize(inst)
        assert sol.objective == 0.0 and sol.paths[0] is None and sol.forfeited == (0,)

    def test_infinite_prize_matches_solve(self, diamond):
        assert solve_prize(diamond).objective == solve(diamond).objective

    def test_cheap_prize_beats_paying(self, diamond):
        inst = replace(diamond, terminals=(TerminalPair(0, 3, 0.4),))
        sol = solve_prize(inst)
        assert math.isclose(sol.objective, 0.4, abs_tol=1e-9)
        assert sol.forfeited == (0,)
        assert math.isclose(exact_prize(inst).value, 0.4, abs_tol=1e-12)

    def test_expensive_prize_connects(self, diamond):
        inst = replace(diamond, terminals=(TerminalPair(0, 3, 10.0),))
        sol = solve_prize(inst)
        assert sol.forfeited == ()
        assert sol.paths[0] is not None
        assert exact_prize(inst).value == 1.0

    def test_objective_at_least_lp(self):
        rng = random.Random(5)
        for seed in range(10):
            base = gen_grid(5, 5, rng.randint(1, 8), rng.randint(2, 5), 6000 + seed)
            prizes = tuple(rng.choice([0.2, 0.7, 1.5, math.inf]) for _ in range(2))
            inst = replace(base, terminals=(TerminalPair(0, 24, prizes[0]), TerminalPair(4, 20, prizes[1])))
            sol = solve_prize(inst)
            assert sol.objective >= sol.lower_bound - 1e-6
            for k, p in enumerate(sol.paths):
                if p is not None:
                    assert path_colors(inst, p) <= sol.colors
                else:
                    assert not inst.terminals[k].must_connect


class TestDeterminism:
    def test_repeated_solves_are_identical(self, ring, walls):
        for inst in (ring, walls):
            assert solve(inst) == solve(inst)

    def test_prize_solves_are_identical(self):
        import os

        from minpath.instance import load

        inst = load(os.path.join(os.path.dirname(__file__), "data", "grid_6x6_multi.json"))
        assert solve_prize(inst) == solve_prize(inst)


class TestFeasibilityCorpus:
    @pytest.mark.parametrize("seed", range(15))
    def test_strict_mode_paths_are_valid(self, seed):
        rng = random.Random(seed)
        inst = gen_grid(
            rng.choice([5, 6, 7, 8]),
            rng.choice([5, 6, 7, 8]),
            rng.randint(0, 12),
            rng.randint(1, 7),
            8700 + seed,
        )
        sol = solve(inst)
        assert sol.paths[0] is not None
        assert path_colors(inst, sol.paths[0]) <= sol.colors
        assert sol.objective >= sol.lower_bound - 1e-6
