import json
import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from kbroadcast import (
    audit_chain,
    audit_tree_bound,
    canonical_form,
    ceildiv,
    ceiling_inequality_holds,
    cycle_graph,
    limited_cap_bound,
    parse_graph,
    path_graph,
    star_graph,
    tight_example_tree,
    upper_bound,
)


class TestUpperBound:
    def test_mid_regime(self):
        assert upper_bound(12, 3, 4) == 5

    def test_k1(self):
        assert upper_bound(10, 1, 3) == 5

    def test_cap_at_least_radius(self):
        assert upper_bound(10, 5, 3) == 4

    def test_single_vertex(self):
        # the cap >= radius case wins the overlap at k = 1, r <= 1
        assert upper_bound(1, 1, 0) == 1

    def test_inconsistent_arguments(self):
        with pytest.raises(ValueError):
            upper_bound(0, 1, 0)
        with pytest.raises(ValueError):
            upper_bound(5, 0, 2)
        with pytest.raises(ValueError):
            upper_bound(5, 2, 6)

    def test_overflow_safe(self):
        n = 10**9
        assert upper_bound(n, 3, 10) == ceildiv(5 * n, 12)
        assert upper_bound(n, 10**6, 10**6 + 1) == ceildiv((10**6 + 2) * n, 3 * (10**6 + 1))


class TestCeilingInequality:
    def test_equality_case(self):
        assert ceiling_inequality_holds(1, 3, 1, 3, 9)

    def test_strict_case(self):
        assert ceiling_inequality_holds(2, 5, 1, 2, 11)

    def test_zero_a(self):
        assert ceiling_inequality_holds(0, 1, 1, 1, 5)

    def test_precondition_enforced(self):
        with pytest.raises(ValueError):
            ceiling_inequality_holds(2, 3, 1, 3, 9)
        with pytest.raises(ValueError):
            ceiling_inequality_holds(1, 0, 1, 3, 9)

    def test_many_random_tuples(self):
        rng = random.Random(20240817)
        checked = 0
        while checked < 10_000:
            b = rng.randrange(1, 50)
            d = rng.randrange(1, 50)
            c = rng.randrange(0, 50)
            # a is any integer with a/b <= c/d
            a_max = (c * b) // d
            a = rng.randrange(-20, a_max + 1)
            n = rng.randrange(-100, 1000)
            assert ceiling_inequality_holds(a, b, c, d, n)
            checked += 1

    @settings(max_examples=300, deadline=None)
    @given(
        b=st.integers(1, 10**6),
        d=st.integers(1, 10**6),
        c=st.integers(0, 10**6),
        slack=st.integers(0, 10**6),
        n=st.integers(-(10**9), 10**9),
    )
    def test_property(self, b, d, c, slack, n):
        a = (c * b) // d - slack
        assert ceiling_inequality_holds(a, b, c, d, n)


class TestTreeBoundAudit:
    def test_vacuous_when_radius_cannot_exceed_cap(self):
        report = audit_tree_bound(8, 7)
        assert report.rows == []
        assert report.violations == []
        assert report.stabilized_checked == 48  # every tree with n <= 8

    def test_near_vacuous_n9_k3(self):
        report = audit_tree_bound(9, 3)
        assert [row.n for row in report.rows] == [8, 9, 9, 9, 9]
        assert report.violations == []
        assert report.stabilized_violations == []

    def test_requires_k_at_least_3(self):
        with pytest.raises(ValueError):
            audit_tree_bound(8, 2)

    def test_full_audit_to_n11(self):
        report = audit_tree_bound(11, 3)
        assert report.violations == []
        assert report.stabilized_violations == []
        assert all(row.value <= row.bound for row in report.rows)
        assert all(row.radius > 3 for row in report.rows)
        assert all(row.bound == limited_cap_bound(row.n, 3) for row in report.rows)

    @pytest.mark.slow
    def test_full_audit_k4_to_n13(self):
        report = audit_tree_bound(13, 4)
        assert report.violations == []
        assert report.stabilized_violations == []
        assert all(row.radius > 4 for row in report.rows)

    def test_tight_instances_round_trip(self):
        report = audit_tree_bound(12, 3)
        assert report.violations == []
        tight = report.tight_instances
        assert len(tight) >= 1
        keys = {canonical_form(parse_graph(row.graph_text)) for row in tight}
        assert canonical_form(tight_example_tree(3)) in keys

    def test_report_serialization(self):
        report = audit_tree_bound(9, 3)
        lines = report.to_jsonl().strip().splitlines()
        assert len(lines) == len(report.rows) + 1
        summary = json.loads(lines[-1])
        assert summary["violations"] == 0
        table = report.to_table()
        assert "violations" in table


class TestChainAudit:
    def test_path9(self):
        report = audit_chain(path_graph(9))
        assert report.chain == (3, 3, 3, 3)
        assert report.ok
        assert report.domination_number == 3
        assert report.broadcast_number == 3

    def test_star(self):
        report = audit_chain(star_graph(5))
        assert report.chain == (1,) and report.ok

    def test_cycle6(self):
        report = audit_chain(cycle_graph(6))
        assert report.chain == (2, 2, 2) and report.ok

    def test_json(self):
        data = json.loads(audit_chain(path_graph(5)).to_json())
        assert data["chain"] == [2, 2]
        assert data["monotone"] and data["stabilized"]
