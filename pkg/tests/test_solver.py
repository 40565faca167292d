import json

import pytest

from kbroadcast import (
    Broadcast,
    Graph,
    GuardExceeded,
    NotDominatingError,
    NotOptimalError,
    bridges,
    complete_graph,
    compute_metrics,
    cycle_graph,
    domination_chain,
    is_dominating,
    is_efficient,
    normalize_leaf_zero,
    path_graph,
    solve,
    solve_bruteforce,
    split_components,
    star_graph,
    tight_example_tree,
    witness_from_json,
    witness_to_json,
)

from conftest import random_connected_graph, random_tree_graph


class TestIsDominating:
    def test_single_vertex_needs_power(self):
        assert not is_dominating(Graph(1, []), Broadcast(1, (0,)))
        assert is_dominating(Graph(1, []), Broadcast(1, (1,)))

    def test_path_center(self):
        assert is_dominating(path_graph(5), Broadcast(2, (0, 0, 2, 0, 0)))

    def test_path_uncovered_tail(self):
        f = Broadcast(2, (0, 2, 0, 0, 0, 0, 0))
        assert not is_dominating(path_graph(7), f)

    def test_domain_mismatch(self):
        with pytest.raises(ValueError, match="domain|vertices"):
            is_dominating(path_graph(3), Broadcast(1, (1, 0)))


class TestOracle:
    def test_path7_k2(self):
        assert solve_bruteforce(path_graph(7), 2).value == 3

    def test_star_k1(self):
        assert solve_bruteforce(star_graph(5), 1).value == 1

    def test_cycle6_k2(self):
        assert solve_bruteforce(cycle_graph(6), 2).value == 2

    def test_lexicographically_least_witness(self):
        # support sets compared as ascending tuples, then power vectors
        r = solve_bruteforce(path_graph(7), 2)
        assert r.witness.powers == (1, 0, 1, 0, 0, 1, 0)

    def test_guard(self):
        with pytest.raises(GuardExceeded):
            solve_bruteforce(path_graph(18), 2, max_n=16)

    def test_witness_is_valid(self):
        r = solve_bruteforce(cycle_graph(5), 2)
        assert is_dominating(cycle_graph(5), r.witness)
        assert r.witness.cost == r.value
        assert r.stats.method == "oracle"


class TestBranchAndBound:
    def test_extremal_trees(self):
        assert solve(tight_example_tree(3), 3).value == 5
        r = solve(tight_example_tree(4), 4)
        assert r.value == 6 and len(r.witness.powers) == 15

    def test_paths(self):
        assert solve(path_graph(12), 3).value == 4

    def test_single_vertex(self):
        for k in (1, 2, 5):
            assert solve(Graph(1, []), k).value == 1

    def test_witness_respects_cap_above_radius(self):
        r = solve(path_graph(5), 9)
        assert r.witness.k == 9
        assert max(r.witness.powers) <= compute_metrics(path_graph(5)).radius
        assert is_dominating(path_graph(5), r.witness)

    def test_cutoff_returns_none_when_no_improvement(self):
        assert solve(path_graph(7), 2, cutoff=3) is None
        assert solve(path_graph(7), 2, cutoff=4).value == 3

    def test_node_guard(self):
        with pytest.raises(GuardExceeded):
            solve(cycle_graph(9), 2, max_nodes=0)

    def test_time_guard_reports_partial_progress(self):
        with pytest.raises(GuardExceeded) as info:
            solve(cycle_graph(21), 3, lp_bound=False, time_budget=0.0)
        assert info.value.nodes > 0
        # the carried incumbent is a genuine upper bound on the optimum
        assert info.value.best_cost >= solve(cycle_graph(21), 3).value

    def test_deterministic_witness(self):
        a = solve(cycle_graph(9), 2)
        b = solve(cycle_graph(9), 2)
        assert a.value == b.value and a.witness == b.witness

    def test_matches_oracle_without_lp(self, rng):
        for _ in range(25):
            g = random_connected_graph(rng, rng.randrange(2, 8))
            for k in (1, 2, 3):
                assert (
                    solve(g, k, lp_bound=False).value
                    == solve(g, k).value
                    == solve_bruteforce(g, k).value
                )

    def test_matches_oracle_high_caps(self, rng):
        for _ in range(15):
            g = random_connected_graph(rng, rng.randrange(2, 8))
            for k in (4, 5):
                assert solve(g, k).value == solve_bruteforce(g, k).value


class TestChain:
    def test_path9(self):
        assert domination_chain(path_graph(9)) == [3, 3, 3, 3]

    def test_star(self):
        assert domination_chain(star_graph(5)) == [1]

    def test_cycle6(self):
        # one power-3 vertex costs 3; two power-1 vertices cost 2, so the
        # chain stays at 2 even when the cap reaches the radius
        assert domination_chain(cycle_graph(6)) == [2, 2, 2]

    def test_radius_zero_rejected(self):
        with pytest.raises(ValueError):
            domination_chain(Graph(1, []))

    def test_monotone_and_stabilized(self, rng):
        for _ in range(20):
            g = random_connected_graph(rng, rng.randrange(2, 8))
            chain = domination_chain(g)
            assert all(a >= b for a, b in zip(chain, chain[1:]))
            radius = compute_metrics(g).radius
            assert solve_bruteforce(g, radius + 1).value == chain[-1]

    def test_single_center_bound(self, rng):
        for _ in range(20):
            g = random_connected_graph(rng, rng.randrange(2, 9))
            radius = compute_metrics(g).radius
            if radius >= 1:
                assert solve(g, radius).value <= radius


class TestCutEdgeSubadditivity:
    def test_on_random_graphs(self, rng):
        for _ in range(25):
            g = random_connected_graph(rng, rng.randrange(3, 9))
            for e in bridges(g):
                (g1, _), (g2, _) = split_components(g, e)
                for k in (1, 2, 3):
                    whole = solve(g, k).value
                    assert whole <= solve(g1, k).value + solve(g2, k).value


class TestNormalizeLeafZero:
    def test_two_vertex_graph_kept(self):
        out = normalize_leaf_zero(path_graph(2), Broadcast(1, (1, 0)))
        assert out.cost == 1 and 0 in out.powers

    def test_leaf_power_moves_to_support(self):
        out = normalize_leaf_zero(path_graph(4), Broadcast(2, (2, 0, 0, 0)))
        assert out.powers == (0, 2, 0, 0)
        assert is_dominating(path_graph(4), out)

    def test_identity_when_already_zero_on_leaves(self):
        f = Broadcast(2, (0, 0, 2, 0, 0))
        assert normalize_leaf_zero(path_graph(5), f) == f

    def test_non_optimal_cost_rejected(self):
        with pytest.raises(NotOptimalError):
            normalize_leaf_zero(path_graph(4), Broadcast(2, (2, 0, 0, 2)))

    def test_optimal_witnesses_end_zero_on_all_leaves(self, rng):
        for _ in range(20):
            t = random_tree_graph(rng, rng.randrange(3, 10))
            for k in (1, 2, 3):
                res = solve(t, k)
                out = normalize_leaf_zero(t, res.witness)
                assert out.cost == res.value
                assert is_dominating(t, out)
                assert all(
                    out.powers[v] == 0 for v in range(t.n) if t.degree(v) == 1
                )


class TestEfficiency:
    def test_partitioning_balls(self):
        assert is_efficient(path_graph(6), Broadcast(1, (0, 1, 0, 0, 1, 0)))

    def test_double_coverage(self):
        assert not is_efficient(path_graph(5), Broadcast(2, (0, 2, 0, 2, 0)))

    def test_single_vertex(self):
        assert is_efficient(Graph(1, []), Broadcast(1, (1,)))

    def test_requires_domination(self):
        with pytest.raises(NotDominatingError):
            is_efficient(path_graph(5), Broadcast(1, (1, 0, 0, 0, 0)))


class TestWitnessJson:
    def test_round_trip(self):
        r = solve(tight_example_tree(3), 3)
        data = json.loads(json.dumps(witness_to_json(r)))
        f = witness_from_json(data, 12)
        assert f == r.witness
        assert data["assignments"] == sorted(
            data["assignments"], key=lambda item: item["vertex"]
        )
        assert all(item["power"] > 0 for item in data["assignments"])

    def test_value_mismatch_rejected(self):
        r = solve(path_graph(4), 2)
        data = witness_to_json(r)
        data["value"] += 1
        with pytest.raises(ValueError):
            witness_from_json(data, 4)


class TestOracleAgreement:
    def test_all_trees_to_n7(self):
        from kbroadcast import free_trees

        for n in range(1, 8):
            for t in free_trees(n):
                for k in (1, 2, 3):
                    assert solve(t, k).value == solve_bruteforce(t, k).value

    def test_complete_graphs(self):
        for n in range(2, 7):
            g = complete_graph(n)
            for k in (1, 2, 3):
                assert solve(g, k).value == solve_bruteforce(g, k).value == 1
