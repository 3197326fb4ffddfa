import random

import pytest

from banlib import (
    Ban,
    BlockSchedule,
    CapExceededError,
    Const,
    Var,
    build_graph,
    fixed_points,
    gen_cycle,
    gen_figure_ban,
    instability_profile,
    instability_trace,
    limit_cycles,
    render_report,
    state_to_str,
    str_to_state,
    terminal_sccs,
    unstable_set,
)
from oracles import (
    async_adjacency,
    general_adjacency,
    naive_basin,
    naive_terminal_sccs,
    random_ban,
)
from test_schedule import random_schedule

S = str_to_state

FIG2_BIG_ATTRACTOR = frozenset(
    S(s) for s in (
        "0100", "0101", "0110", "0111", "1000", "1001",
        "1010", "1011", "1100", "1101", "1110", "1111",
    )
)


class TestFixedPoints:
    @pytest.mark.parametrize("n", range(1, 8))
    def test_negative_bac_has_none(self, n):
        assert fixed_points(gen_cycle(n, negative=True)) == frozenset()

    def test_positive_3cycle(self):
        assert fixed_points(gen_cycle(3, negative=False)) == {S("000"), S("111")}

    def test_fig2(self):
        assert fixed_points(gen_figure_ban("fig2")) == {S("0000")}

    def test_all_have_empty_unstable_set(self):
        rng = random.Random(6)
        for _ in range(20):
            n = rng.randint(1, 6)
            ban, _ = random_ban(rng, n)
            for x in fixed_points(ban):
                assert unstable_set(ban, x) == frozenset()

    def test_cap(self):
        with pytest.raises(CapExceededError):
            fixed_points(gen_cycle(4, negative=True), max_n=3)


class TestLimitCycles:
    def test_neg3_parallel(self):
        report = limit_cycles(gen_cycle(3, negative=True), BlockSchedule.parallel(3))
        assert len(report.attractors) == 2
        two, six = report.attractors
        assert two.kind == "limit_cycle" and two.length == 2
        assert two.states == {S("010"), S("101")}
        assert six.kind == "limit_cycle" and six.length == 6
        assert S("000") in six.states
        assert two.basin_size + six.basin_size == 8
        assert not report.basins_overlap

    def test_neg3_parallel_against_direct_iteration(self):
        # independent oracle: iterate F(x) = (!x3, x1, x2) from every state
        def step(x):
            x1, x2, x3 = x & 1, (x >> 1) & 1, (x >> 2) & 1
            return (1 - x3) | (x1 << 1) | (x2 << 2)

        cycles = set()
        for start in range(8):
            seen = []
            v = start
            while v not in seen:
                seen.append(v)
                v = step(v)
            cycles.add(frozenset(seen[seen.index(v):]))
        report = limit_cycles(gen_cycle(3, negative=True), BlockSchedule.parallel(3))
        assert {a.states for a in report.attractors} == cycles

    def test_constant_network(self):
        n = 5
        ban = Ban(tuple(f"c{i}" for i in range(n)), (Const(0),) * n)
        report = limit_cycles(ban, BlockSchedule.parallel(n))
        assert len(report.attractors) == 1
        only = report.attractors[0]
        assert only.kind == "fixed_point"
        assert only.states == {0}
        assert only.basin_size == 1 << n

    @pytest.mark.parametrize("n", [3, 4, 5, 6])
    def test_negative_bac_parallel_many_attractors(self, n):
        report = limit_cycles(gen_cycle(n, negative=True), BlockSchedule.parallel(n))
        assert len(report.attractors) >= 2

    def test_basins_partition(self):
        rng = random.Random(14)
        for _ in range(15):
            n = rng.randint(1, 6)
            ban, _ = random_ban(rng, n)
            report = limit_cycles(ban, random_schedule(rng, n))
            assert sum(a.basin_size for a in report.attractors) == 1 << n
            assert not report.basins_overlap


class TestTerminalSccs:
    def test_fig2_async(self):
        report = terminal_sccs(build_graph(gen_figure_ban("fig2"), "async"))
        assert len(report.attractors) == 2
        point, big = report.attractors
        assert point.kind == "fixed_point"
        assert point.states == {S("0000")}
        assert big.kind == "terminal_scc"
        assert big.states == FIG2_BIG_ATTRACTOR
        assert point.basin_size == 4
        assert big.basin_size == 15
        assert report.basins_overlap

    def test_fig2_general(self):
        report = terminal_sccs(build_graph(gen_figure_ban("fig2"), "general"))
        assert len(report.attractors) == 1
        assert report.attractors[0].states == {S("0000")}
        assert report.attractors[0].basin_size == 16
        assert not report.basins_overlap

    def test_identity_async_all_singletons(self):
        n = 4
        ban = Ban(tuple(f"i{k}" for k in range(n)), tuple(Var(k) for k in range(n)))
        report = terminal_sccs(build_graph(ban, "async"))
        assert len(report.attractors) == 1 << n
        assert all(a.kind == "fixed_point" for a in report.attractors)
        assert all(a.basin_size == 1 for a in report.attractors)

    def test_at_least_one_terminal_scc_and_full_reach(self):
        rng = random.Random(19)
        for _ in range(15):
            n = rng.randint(1, 6)
            ban, fns = random_ban(rng, n)
            for mode in ("async", "general"):
                report = terminal_sccs(build_graph(ban, mode))
                assert len(report.attractors) >= 1
                # every state reaches at least one attractor
                adjacency = (
                    async_adjacency(fns, n) if mode == "async"
                    else general_adjacency(fns, n)
                )
                covered = 0
                for a in report.attractors:
                    covered_states = {
                        x for x in range(1 << n)
                        if naive_basin_contains(adjacency, a.states, x)
                    }
                    assert len(covered_states) == a.basin_size
                    covered |= sum(1 << x for x in covered_states)
                assert covered == (1 << (1 << n)) - 1

    def test_matches_naive_closure_oracle(self):
        rng = random.Random(29)
        for _ in range(12):
            n = rng.randint(1, 6)
            ban, fns = random_ban(rng, n)
            report = terminal_sccs(build_graph(ban, "async"))
            expected = naive_terminal_sccs(async_adjacency(fns, n))
            assert {a.states for a in report.attractors} == expected

    def test_deterministic_modes_match_limit_cycles(self):
        rng = random.Random(37)
        for _ in range(12):
            n = rng.randint(1, 6)
            ban, _ = random_ban(rng, n)
            schedule = random_schedule(rng, n)
            via_cycles = limit_cycles(ban, schedule)
            via_sccs = terminal_sccs(build_graph(ban, "bsus", schedule))
            assert [(a.states, a.kind, a.length, a.basin_size)
                    for a in via_cycles.attractors] == [
                (a.states, a.kind, a.length, a.basin_size)
                for a in via_sccs.attractors
            ]


def naive_basin_contains(adjacency, attractor, x):
    seen = {x}
    frontier = [x]
    while frontier:
        v = frontier.pop()
        if v in attractor:
            return True
        for w in adjacency[v]:
            if w not in seen:
                seen.add(w)
                frontier.append(w)
    return False


class TestInstabilityProfile:
    @pytest.mark.parametrize("n", range(3, 8))
    def test_negative_bac_async_attractor(self, n):
        ban = gen_cycle(n, negative=True)
        report = terminal_sccs(build_graph(ban, "async"))
        assert len(report.attractors) == 1
        only = report.attractors[0]
        assert len(only.states) == 2 * n
        assert instability_profile(ban, only.states) == (1,) * (2 * n)

    def test_fixed_point_profile(self):
        ban = gen_figure_ban("fig2")
        assert instability_profile(ban, [S("0000")]) == (0,)

    def test_fig2_big_attractor_profile(self):
        ban = gen_figure_ban("fig2")
        profile = instability_profile(ban, FIG2_BIG_ATTRACTOR)
        assert profile == (1, 1, 1, 1, 2, 2, 2, 2, 2, 2, 2, 2)

    def test_trace_keeps_path_order(self):
        ban = gen_figure_ban("fig2")
        path = [S("0011"), S("0001"), S("0000")]
        assert instability_trace(ban, path) == (4, 2, 0)
        assert instability_trace(ban, reversed(path)) == (0, 2, 4)


class TestRenderReport:
    def test_fig2_async_lines(self):
        report = terminal_sccs(build_graph(gen_figure_ban("fig2"), "async"))
        assert render_report(report) == (
            "attractor 0: kind=fixed_point size=1 min_state=0000 instabilities={0:1}\n"
            "attractor 1: kind=terminal_scc size=12 min_state=0100 "
            "instabilities={1:4,2:8}"
        )

    def test_limit_cycle_kind_with_length(self):
        report = limit_cycles(gen_cycle(3, negative=True), BlockSchedule.parallel(3))
        text = render_report(report)
        assert "kind=limit_cycle(2)" in text
        assert "kind=limit_cycle(6)" in text

    def test_states_flag(self):
        report = terminal_sccs(build_graph(gen_cycle(2, negative=True), "async"))
        text = render_report(report, show_states=True)
        assert "  states: 00 01 10 11" in text

    def test_ordering_by_size_then_min_state(self):
        report = limit_cycles(gen_cycle(5, negative=True), BlockSchedule.parallel(5))
        sizes = [len(a.states) for a in report.attractors]
        assert sizes == sorted(sizes)
        keys = [
            (len(a.states), state_to_str(a.min_state(5), 5))
            for a in report.attractors
        ]
        assert keys == sorted(keys)
