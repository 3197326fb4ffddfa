"""Acceptance criteria, one test per criterion.

Each test prints `ACCEPTANCE <k> [<title>]: PASS|FAIL` (run with -s to watch
them live). Expected values are frozen from independent brute-force oracles
or from the reproduced worked examples; tolerances are exact matches and the
stated wall-clock budgets.
"""
import contextlib
import itertools
import random
import time

from banlib import (
    BlockSchedule,
    blocks_to_nu,
    build_graph,
    build_igraph,
    classify_sync_transitions,
    effective_function,
    evaluate,
    fixed_points,
    gen_cycle,
    gen_figure_ban,
    instability_profile,
    is_synchronism_sensitive,
    limit_cycles,
    loads,
    nu_equivalent,
    parallel_step,
    parse_precedence,
    period_function,
    semantic_deps,
    str_to_state,
    terminal_sccs,
    truth_table,
    emulation_equivalent,
)
from oracles import (
    async_adjacency,
    naive_terminal_sccs,
    random_ban,
    unstable_by_eval,
)

S = str_to_state

FIG2_BIG_ATTRACTOR = frozenset(
    S(s) for s in (
        "0100", "0101", "0110", "0111", "1000", "1001",
        "1010", "1011", "1100", "1101", "1110", "1111",
    )
)


@contextlib.contextmanager
def criterion(number, title):
    try:
        yield
    except BaseException:
        print(f"ACCEPTANCE {number} [{title}]: FAIL")
        raise
    print(f"ACCEPTANCE {number} [{title}]: PASS")


def test_criterion_1_fig2_attractors():
    with criterion(1, "fig2 async/general attractor reproduction"):
        started = time.perf_counter()
        ban = gen_figure_ban("fig2")
        async_report = terminal_sccs(build_graph(ban, "async"))
        assert len(async_report.attractors) == 2
        point, big = async_report.attractors
        assert point.states == {S("0000")}
        assert point.kind == "fixed_point"
        assert big.states == FIG2_BIG_ATTRACTOR
        assert len(big.states) == 12

        general_report = terminal_sccs(build_graph(ban, "general"))
        assert len(general_report.attractors) == 1
        assert general_report.attractors[0].states == {S("0000")}
        elapsed = time.perf_counter() - started
        assert elapsed < 1.0, f"took {elapsed:.3f}s, budget 1s"


def test_criterion_2_shortcut_classification():
    with criterion(2, "fig2 unique lasting synchronous transition"):
        verdicts = classify_sync_transitions(gen_figure_ban("fig2"))
        lasting = [v for v in verdicts if not v.shortcut]
        assert len(lasting) == 1
        assert (lasting[0].source, lasting[0].update_set, lasting[0].target) == (
            S("1100"), (0, 1), S("0000")
        )
        assert all(v.shortcut for v in verdicts if v is not lasting[0])


def test_criterion_3_bac_asynchronous_structure():
    with criterion(3, "BAC asynchronous attractors, n=2..7"):
        started = time.perf_counter()
        for n in range(2, 8):
            negative = gen_cycle(n, negative=True)
            assert fixed_points(negative) == frozenset()
            report = terminal_sccs(build_graph(negative, "async"))
            assert len(report.attractors) == 1
            only = report.attractors[0]
            assert len(only.states) == 2 * n
            assert instability_profile(negative, only.states) == (1,) * (2 * n)

            positive = gen_cycle(n, negative=False)
            fp = fixed_points(positive)
            assert fp == {0, (1 << n) - 1}
            positive_report = terminal_sccs(build_graph(positive, "async"))
            assert {a.states for a in positive_report.attractors} == {
                frozenset({0}), frozenset({(1 << n) - 1})
            }
        elapsed = time.perf_counter() - started
        assert elapsed < 5.0, f"took {elapsed:.3f}s, budget 5s"


def test_criterion_4_bac_parallel_structure():
    with criterion(4, "BAC parallel limit cycles"):
        # independent oracle: iterate F(x) = (!x3, x1, x2) directly
        def neg3_step(x):
            x1, x2, x3 = x & 1, (x >> 1) & 1, (x >> 2) & 1
            return (1 - x3) | (x1 << 1) | (x2 << 2)

        expected_cycles = set()
        for start in range(8):
            seen = []
            v = start
            while v not in seen:
                seen.append(v)
                v = neg3_step(v)
            expected_cycles.add(frozenset(seen[seen.index(v):]))
        lengths = sorted(len(c) for c in expected_cycles)
        assert lengths == [2, 6]  # oracle sanity

        report = limit_cycles(gen_cycle(3, negative=True), BlockSchedule.parallel(3))
        assert {a.states for a in report.attractors} == expected_cycles
        assert sorted(a.length for a in report.attractors) == [2, 6]
        assert sum(a.basin_size for a in report.attractors) == 8
        assert sum(len(a.states) for a in report.attractors) == 8

        for n in range(3, 7):
            many = limit_cycles(gen_cycle(n, negative=True), BlockSchedule.parallel(n))
            assert len(many.attractors) >= 2


def test_criterion_5_bsus_equivalence():
    with criterion(5, "three equivalent cycle schedules, n=8"):
        n = 8
        ban = gen_cycle(n, negative=True)
        graph = build_igraph(ban)
        schedules = [
            BlockSchedule.of(*({i} for i in range(n - 1, -1, -1))),  # {8},{7},..,{1}
            BlockSchedule.of(set(range(5, n)), {1, 2, 3, 4}, {0}),   # {6..8},{2..5},{1}
            BlockSchedule.of(set(range(1, n)), {0}),                 # {2..8},{1}
        ]
        labelings = [blocks_to_nu(s, graph) for s in schedules]
        for a, b in itertools.combinations(labelings, 2):
            assert nu_equivalent(a, b)
        # and the quoted closed form: +1 everywhere except the closing arc
        for (i, j), v in labelings[0].items():
            assert v == (-1 if (i, j) == (n - 1, 0) else +1)

        for x in range(1 << n):
            images = {period_function(ban, s, x) for s in schedules}
            assert len(images) == 1


def test_criterion_6_emulation():
    with criterion(6, "monotone/non-monotone emulation via precedence"):
        target = gen_figure_ban("fig3_left")
        host = gen_figure_ban("fig3_right")
        spec = parse_precedence("x4<x1", host.names)
        assert emulation_equivalent(target, host, spec, frozenset({3})).equivalent

        effective = effective_function(host, spec, 0)
        for x2 in (0, 1):
            for x3 in (0, 1):
                state = (x2 << 1) | (x3 << 2)
                assert evaluate(effective, state) == x2 ^ x3

        five = gen_figure_ban("fig5_right")
        collapsed = effective_function(five, parse_precedence("k<i", five.names), 0)
        assert truth_table(collapsed, 3) == 0  # the constant-0 function
        assert semantic_deps(collapsed, 3) == frozenset()


def test_criterion_7_semantic_dependency():
    with criterion(7, "x^x produces no interaction arc"):
        ban = loads("a = b ^ b\nb = b\n")
        pairs = build_igraph(ban).arc_pairs()
        assert (1, 0) not in pairs
        assert semantic_deps(ban.functions[0], 2) == frozenset()


def test_criterion_8_property_suites():
    with criterion(8, "edge identities, containment, SCC oracle, soundness"):
        rng = random.Random(8080)

        # |T_a| = sum |U(x)| and |T_g| = sum (2^|U(x)| - 1), U from the
        # independent evaluators; edges counted by actual iteration
        for _ in range(100):
            n = rng.randint(1, 8)
            ban, fns = random_ban(rng, n)
            u_sizes = [len(unstable_by_eval(fns, x)) for x in range(1 << n)]
            async_graph = build_graph(ban, "async")
            general_graph = build_graph(ban, "general")
            assert sum(1 for _ in async_graph.edges()) == sum(u_sizes)
            assert async_graph.num_edges() == sum(u_sizes)
            assert sum(1 for _ in general_graph.edges()) == sum(
                (1 << k) - 1 for k in u_sizes
            )
            assert general_graph.num_edges() == sum((1 << k) - 1 for k in u_sizes)

            # T_a and T_p (minus stable self-loops) within T_g
            general_pairs = {
                (x, y) for x, y, _ in general_graph.edges()
            }
            for x, y, _ in async_graph.edges():
                assert (x, y) in general_pairs
            for x in range(1 << n):
                y = parallel_step(ban, x)
                if y != x:
                    assert (x, y) in general_pairs

        # terminal SCCs against the naive reachability-closure oracle
        for _ in range(40):
            n = rng.randint(1, 6)
            ban, fns = random_ban(rng, n)
            got = {
                a.states
                for a in terminal_sccs(build_graph(ban, "async")).attractors
            }
            assert got == naive_terminal_sccs(async_adjacency(fns, n))

        # if every synchronous transition is a shortcut, the network cannot
        # be synchronism-sensitive
        checked = 0
        for _ in range(60):
            n = rng.randint(1, 8)
            ban, _ = random_ban(rng, n)
            verdicts = classify_sync_transitions(ban)
            if all(v.shortcut for v in verdicts):
                checked += 1
                assert not is_synchronism_sensitive(ban).sensitive
        assert checked > 0  # the implication was actually exercised


def test_criterion_9_performance_n16():
    with criterion(9, "n=16 async graph + attractors under 10s"):
        rng = random.Random(1616)
        ban, _ = random_ban(rng, 16, depth=4)
        started = time.perf_counter()
        graph = build_graph(ban, "async")
        edge_count = sum(1 for _ in graph.edges())
        report = terminal_sccs(graph)
        elapsed = time.perf_counter() - started
        assert edge_count == graph.num_edges()
        assert len(report.attractors) >= 1
        assert elapsed < 10.0, f"took {elapsed:.2f}s, budget 10s"
