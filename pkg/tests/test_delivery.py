"""End-to-end tests for plan assembly, verification, and serialization."""

from __future__ import annotations

import json
from fractions import Fraction

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from macc_lab import (
    FieldSpec,
    MaccInstance,
    ParameterError,
    assemble,
    pair_instance,
    plan_to_json,
    rate_divisor,
    verify_plan,
    verify_scheme,
)


def plan_for(k, l, i, mode, **kw):
    return assemble(MaccInstance(k, k, l, i), mode=mode, **kw)


@st.composite
def corners(draw):
    k = draw(st.integers(2, 12))
    l = draw(st.integers(1, k))
    i = draw(st.integers(1, -(-k // l)))
    return k, l, i


class TestFrozenPlans:
    def test_quadratic_eight_caches(self):
        plan = plan_for(8, 2, 3, "quadratic")
        assert plan.rate == Fraction(3, 8)
        assert plan.subpacketization == 16
        assert plan.base_split == 2
        assert plan.n_transmissions == 6
        (pair,) = plan.pairs
        assert (pair.kind, pair.tag, pair.cell_split) == ("union", "fractional", 2)
        check = verify_plan(plan)
        assert check.ok and check.rate_equal and all(check.users_ok)

    def test_linear_eight_caches(self):
        plan = plan_for(8, 2, 3, "linear")
        assert plan.rate == Fraction(3, 8)
        assert plan.subpacketization == 8
        assert plan.n_transmissions == 3
        (pair,) = plan.pairs
        assert (pair.kind, pair.tag, pair.cell_split) == ("union", "divisor", 1)
        assert verify_plan(plan).ok

    def test_single_deficit_column_is_one_transmission(self):
        for mode in ("linear", "quadratic"):
            plan = plan_for(4, 1, 3, mode)
            assert plan.rate == Fraction(1, 4)
            assert plan.n_transmissions == 1
            (pair,) = plan.pairs
            assert (pair.kind, pair.tag) == ("column", "clique")
            assert verify_plan(plan).ok

    def test_full_coverage_plan_is_empty(self):
        plan = plan_for(6, 2, 3, "quadratic")
        assert plan.pairs == ()
        assert plan.rate == 0
        assert plan.subpacketization == 6
        assert verify_plan(plan).ok

    def test_divisor_mode_wide(self):
        plan = plan_for(100, 4, 20, "divisor", divisor=25)
        assert plan.rate == Fraction(5, 2)
        assert plan.subpacketization == 100
        assert plan.divisor == 25
        assert all(p.n_transmissions == 25 for p in plan.pairs)
        assert verify_plan(plan).ok

    def test_odd_deficit_quadratic(self):
        plan = plan_for(9, 2, 3, "quadratic")
        assert plan.rate == Fraction(25, 36)
        assert plan.subpacketization == 20
        kinds = [(p.kind, p.cell_split) for p in plan.pairs]
        assert kinds == [("union", 2), ("middle", 4)]
        assert verify_plan(plan).ok

    def test_odd_deficit_linear_beats_its_bound(self):
        plan = plan_for(9, 2, 3, "linear")
        assert plan.rate == Fraction(7, 9)
        check = verify_plan(plan)
        assert check.ok
        assert check.rate_equal is False
        assert check.within_bound is True
        assert check.calculator_rate == Fraction(5, 3)
        assert plan.notes == ()

    def test_odd_deficit_divisor(self):
        plan = plan_for(9, 2, 3, "divisor")
        assert plan.divisor == 9
        assert plan.rate == Fraction(3, 2)
        # halved leftover cells push subpacketization to K + 1
        assert plan.subpacketization == 10
        assert verify_plan(plan).ok


class TestAssembleValidation:
    def test_unknown_mode(self):
        with pytest.raises(ParameterError):
            plan_for(8, 2, 3, "cubic")

    def test_divisor_flag_requires_divisor_mode(self):
        with pytest.raises(ParameterError):
            plan_for(8, 2, 3, "quadratic", divisor=4)

    def test_divisor_must_fit(self):
        with pytest.raises(ParameterError):
            plan_for(8, 2, 3, "divisor", divisor=3)
        with pytest.raises(ParameterError):
            plan_for(8, 2, 3, "divisor", divisor=2)

    def test_zero_memory_rejected(self):
        with pytest.raises(ParameterError):
            plan_for(8, 2, 0, "quadratic")

    def test_explicit_field_too_small(self):
        with pytest.raises(ParameterError):
            plan_for(8, 2, 3, "divisor", field=FieldSpec(1))


class TestPlanInternals:
    @given(corners(), st.sampled_from(["linear", "quadratic", "divisor"]))
    @settings(max_examples=40, deadline=None)
    def test_accounting_identities(self, corner, mode):
        k, l, i = corner
        plan = plan_for(k, l, i, mode)
        assert plan.rate == sum(
            (Fraction(p.n_transmissions, p.cell_split * k) for p in plan.pairs),
            Fraction(0),
        )
        halved = any(p.cell_split > plan.base_split for p in plan.pairs)
        assert plan.subpacketization == (k + 1 if halved else k) * plan.base_split

    @given(corners(), st.sampled_from(["linear", "quadratic", "divisor"]))
    @settings(max_examples=40, deadline=None)
    def test_components_decode_and_bound_holds(self, corner, mode):
        k, l, i = corner
        plan = plan_for(k, l, i, mode)
        for pair in plan.pairs:
            inst = pair_instance(pair)
            assert len(pair.coloring.colors) == inst.n_nodes
            assert all(verify_scheme(pair.scheme, inst))
        check = verify_plan(plan)
        assert check.ok
        assert check.within_bound is True

    @given(corners())
    @settings(max_examples=30, deadline=None)
    def test_part_map_covers_every_cell_part(self, corner):
        k, l, i = corner
        plan = plan_for(k, l, i, "quadratic")
        table = plan.table
        seen: set[tuple[int, int]] = set()
        for pair in plan.pairs:
            rows = 2 * k if pair.kind == "union" else k
            assert len(pair.part_map) == rows * pair.cell_split
            assert len(set(pair.part_map)) == len(pair.part_map)
            for g, part in pair.part_map:
                assert 1 <= g <= table.n_messages
                assert 1 <= part <= pair.cell_split
            seen.update(pair.part_map)
        # distinct demands put each table message in exactly one component,
        # cut into that component's cell_split parts
        expected = 0
        for pair in plan.pairs:
            msgs = {
                table.entry(r, c) for c in pair.columns for r in range(1, k + 1)
            }
            expected += len(msgs) * pair.cell_split
        assert len(seen) == expected

    def test_duplicate_demands_still_verify(self):
        plan = assemble(
            MaccInstance(8, 8, 2, 3), demands=(1,) * 8, mode="quadratic"
        )
        check = verify_plan(plan)
        assert check.ok and check.rate_equal
        assert plan.rate == Fraction(3, 8)

    def test_divisor_default_matches_calculator(self):
        plan = plan_for(12, 2, 4, "divisor")
        rep = rate_divisor(12, 2, 4)
        assert plan.rate == rep.rate
        assert f"X={plan.divisor}" == rep.note


class TestPlanJson:
    def test_structure_and_stability(self):
        plan = plan_for(9, 2, 3, "quadratic")
        text = plan_to_json(plan)
        assert text == plan_to_json(plan)
        data = json.loads(text)
        assert data["params"] == {
            "n_files": 9,
            "n_caches": 9,
            "access_degree": 2,
            "memory_index": 3,
        }
        assert data["demands"] == list(range(1, 10))
        assert data["mode"] == "quadratic"
        assert data["rate"] == {"num": 25, "den": 36, "decimal": "0.694444"}
        assert data["subpacketization"] == 20
        assert data["n_transmissions"] == 17
        assert len(data["pairs"]) == 2

    def test_part_labels(self):
        plan = plan_for(9, 2, 3, "quadratic")
        data = json.loads(plan_to_json(plan))
        union = data["pairs"][0]
        assert union["cell_split"] == 2
        labels = [m["label"] for m in union["messages"]]
        assert all("#" in lab for lab in labels)
        assert labels[0].startswith("F[d")

    def test_whole_cell_labels_have_no_part_suffix(self):
        plan = plan_for(8, 2, 3, "linear")
        data = json.loads(plan_to_json(plan))
        labels = [m["label"] for m in data["pairs"][0]["messages"]]
        assert all("#" not in lab for lab in labels)
