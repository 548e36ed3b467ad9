from __future__ import annotations

import itertools

import numpy as np
import pytest

from mdkpvqe.instances import (
    Assignment,
    InstanceError,
    MdkpInstance,
    OracleBudgetError,
    ParseError,
    bundled_instance,
    bundled_instances,
    exact_optimum,
    exhaustive_optimum,
    is_feasible,
    objective_value,
    parse_instance,
    serialize_instance,
    verify_known_optimum,
)
from conftest import random_instance

TOY_TEXT = "2 1 4\n3 4\n2 3\n4\n"


class TestParsing:
    def test_canonical_toy(self):
        inst = parse_instance(TOY_TEXT, name="toy")
        assert (inst.n, inst.d) == (2, 1)
        assert inst.values == (3, 4)
        assert inst.weights == ((2, 3),)
        assert inst.capacities == (4,)
        assert inst.known_optimum == 4
        # the recorded optimum is confirmed by the exhaustive oracle
        _, opt = exhaustive_optimum(inst)
        assert opt == 4

    def test_pet2_dimensions(self):
        inst = bundled_instance("pet2")
        assert (inst.n, inst.d) == (10, 10)

    def test_extra_profit_is_dimension_mismatch(self):
        # header says n=2 but three profits follow
        with pytest.raises(ParseError, match="mismatch"):
            parse_instance("2 1 0\n3 4 5\n2 3\n4\n")

    def test_truncated_input(self):
        with pytest.raises(ParseError, match="end of input"):
            parse_instance("2 1 0\n3 4\n2 3\n")

    def test_non_integer_token_has_position(self):
        with pytest.raises(ParseError, match="line 2, column 3"):
            parse_instance("2 1 0\n3 x\n2 3\n4\n")

    def test_negative_coefficient(self):
        with pytest.raises(ParseError, match="negative"):
            parse_instance("2 1 0\n3 -4\n2 3\n4\n")

    def test_malformed_header(self):
        with pytest.raises(ParseError):
            parse_instance("0 1 0\n")

    def test_orlib_comments_and_count(self):
        text = "# single problem\n1\n2 1 4\n3 4  # profits\n2 3\n4\n"
        inst = parse_instance(text, fmt="orlib")
        assert inst.values == (3, 4)
        assert inst.known_optimum == 4

    def test_zero_optimum_means_unknown(self):
        inst = parse_instance("2 1 0\n3 4\n2 3\n4\n")
        assert inst.known_optimum is None

    def test_round_trip(self):
        rng = np.random.default_rng(11)
        for _ in range(25):
            inst = random_instance(rng, n_max=10)
            text = serialize_instance(inst)
            again = parse_instance(text, name=inst.name)
            assert serialize_instance(again) == text
            assert again.values == inst.values
            assert again.weights == inst.weights
            assert again.capacities == inst.capacities


class TestValidation:
    def test_row_length_mismatch(self):
        with pytest.raises(InstanceError):
            MdkpInstance("bad", 2, 1, (1, 2), ((1,),), (1,))

    def test_negative_value(self):
        with pytest.raises(InstanceError):
            MdkpInstance("bad", 1, 1, (-1,), ((1,),), (1,))

    def test_n_and_d_lower_bounds(self):
        with pytest.raises(InstanceError):
            MdkpInstance("bad", 0, 1, (), ((),), (1,))
        with pytest.raises(InstanceError):
            MdkpInstance("bad", 1, 0, (1,), (), ())


class TestFeasibility:
    def test_overweight(self, toy):
        assert not is_feasible(toy, Assignment((1, 1)))

    def test_all_zeros(self, toy):
        assert is_feasible(toy, Assignment((0, 0)))

    def test_exact_fit(self, toy):
        assert is_feasible(toy, Assignment((0, 1)))

    def test_length_mismatch(self, toy):
        with pytest.raises(InstanceError):
            is_feasible(toy, Assignment((1,)))


class TestExactOptimum:
    def test_toy(self, toy):
        x, obj = exact_optimum(toy)
        assert obj == 4
        assert x.bits == (0, 1)

    def test_nothing_fits(self):
        inst = MdkpInstance("none", 1, 1, (5,), ((10,),), (3,))
        x, obj = exact_optimum(inst)
        assert obj == 0
        assert x.bits == (0,)

    def test_everything_fits(self):
        inst = MdkpInstance("all", 2, 1, (1, 1), ((1, 1),), (2,))
        _, obj = exact_optimum(inst)
        assert obj == 2

    def test_budget_cap(self):
        inst = MdkpInstance("big", 41, 1, (1,) * 41, ((1,) * 41,), (1,))
        with pytest.raises(OracleBudgetError):
            exact_optimum(inst)

    def test_result_is_feasible(self):
        rng = np.random.default_rng(5)
        for _ in range(50):
            inst = random_instance(rng, n_max=14)
            x, obj = exact_optimum(inst)
            assert is_feasible(inst, x)
            assert objective_value(inst, x) == obj

    def test_matches_exhaustive(self):
        rng = np.random.default_rng(7)
        for _ in range(100):
            inst = random_instance(rng, n_max=12)
            _, bnb = exact_optimum(inst)
            _, brute = exhaustive_optimum(inst)
            assert bnb == brute

    def test_small_exhaustive_by_itertools(self, toy):
        # third, fully independent route: plain python enumeration
        best = max(
            (
                sum(v * b for v, b in zip(toy.values, bits))
                for bits in itertools.product((0, 1), repeat=toy.n)
                if is_feasible(toy, bits)
            ),
        )
        _, obj = exact_optimum(toy)
        assert obj == best == 4

    def test_verify_known_optimum_mismatch(self):
        inst = MdkpInstance("lie", 2, 1, (3, 4), ((2, 3),), (4,), known_optimum=5)
        with pytest.raises(InstanceError, match="oracle"):
            verify_known_optimum(inst)


class TestBundled:
    def test_catalog_shapes(self):
        shapes = {
            inst.name: (inst.n, inst.d) for inst in bundled_instances()
        }
        assert shapes["hp1"] == (28, 4)
        assert shapes["pet2"] == (10, 10)
        assert shapes["pet7"] == (50, 5)
        assert len(shapes) == 12

    def test_recorded_optima_verified_where_cheap(self):
        for name in ("pet2", "pet3", "pet4", "pb5"):
            inst = bundled_instance(name)
            assert verify_known_optimum(inst) == inst.known_optimum

    def test_unknown_name(self):
        with pytest.raises(InstanceError):
            bundled_instance("nope")
