"""Generator tests: every circuit family against its integer oracle."""

import random

import numpy as np
import pytest

from revarith import engine
from revarith.analysis import FunctionSpec, metrics, verify_function
from revarith.circuit import Circuit, CircuitError, GateApp, simulate
from revarith.gates import GateKind
from revarith.generators import (
    FullAdderEmbedding,
    build_wallace_multiplier,
    embedding_circuit,
    find_fa_embeddings,
    gen_compressor_4_2,
    gen_full_adder,
    gen_half_adder,
    gen_partial_products,
    gen_ripple_adder,
    gen_wallace_multiplier,
    lint_zero_ancillas,
)


def int_inputs(prefix: str, value: int, n: int) -> dict:
    return {f"{prefix}{i}": (value >> i) & 1 for i in range(n)}


class TestFullAdder:
    def test_structure(self):
        fa = gen_full_adder()
        assert fa.lines == 4
        assert fa.gates == [GateApp(GateKind.TSG, (0, 1, 2, 3))]

    def test_metrics(self):
        report = metrics(gen_full_adder())
        assert (report.total_gates, report.garbage_outputs, report.unit_delay) == (1, 2, 1)

    def test_vectors(self):
        fa = gen_full_adder()
        assert fa.outputs_of(simulate(fa, {"A": 1, "B": 1, "Cin": 0})) == {"Sum": 0, "Cout": 1}
        assert fa.outputs_of(simulate(fa, {"A": 0, "B": 0, "Cin": 0})) == {"Sum": 0, "Cout": 0}

    def test_exhaustive(self):
        assert verify_function(gen_full_adder(), FunctionSpec.full_adder()).passed


class TestHalfAdder:
    def test_vectors(self):
        ha = gen_half_adder()
        assert ha.outputs_of(simulate(ha, {"A": 1, "B": 1})) == {"Sum": 0, "Carry": 1}
        assert ha.outputs_of(simulate(ha, {"A": 1, "B": 0})) == {"Sum": 1, "Carry": 0}

    def test_exhaustive(self):
        verdict = verify_function(gen_half_adder(), FunctionSpec.half_adder())
        assert verdict.passed and verdict.cases == 4

    def test_metrics(self):
        report = metrics(gen_half_adder())
        assert report.total_gates == 1
        assert report.garbage_outputs == 2
        assert report.constant_inputs == 2


class TestCompressor:
    def test_metrics(self):
        report = metrics(gen_compressor_4_2())
        assert (report.total_gates, report.garbage_outputs, report.unit_delay) == (2, 4, 2)

    def test_all_zero(self):
        c = gen_compressor_4_2()
        out = c.outputs_of(simulate(c, {"x1": 0, "x2": 0, "x3": 0, "x4": 0, "cin": 0}))
        assert out == {"Sum": 0, "Carry": 0, "Cout": 0}

    def test_identity_exhaustive(self):
        # x1+x2+x3+x4+cin == Sum + 2*(Carry + Cout) over all 32 inputs
        c = gen_compressor_4_2()
        for code in range(32):
            bits = [(code >> k) & 1 for k in range(5)]
            inputs = dict(zip(("x1", "x2", "x3", "x4", "cin"), bits))
            out = c.outputs_of(simulate(c, inputs))
            assert sum(bits) == out["Sum"] + 2 * (out["Carry"] + out["Cout"]), inputs

    def test_output_weights(self):
        weights = {l.name: l.weight for l in gen_compressor_4_2().named_outputs}
        assert weights == {"Sum": 0, "Carry": 1, "Cout": 1}


class TestRippleAdder:
    @pytest.mark.parametrize("n", [1, 2, 4, 8])
    def test_metrics_triple(self, n):
        report = metrics(gen_ripple_adder(n))
        assert (report.total_gates, report.garbage_outputs, report.unit_delay) == (n, 2 * n, n)

    def test_known_sums(self):
        adder = gen_ripple_adder(4)
        out = adder.outputs_of(
            simulate(adder, int_inputs("a", 9, 4) | int_inputs("b", 6, 4) | {"cin": 0})
        )
        assert sum(out[f"s{i}"] << i for i in range(4)) == 15 and out["cout"] == 0
        out = adder.outputs_of(
            simulate(adder, int_inputs("a", 15, 4) | int_inputs("b", 1, 4) | {"cin": 0})
        )
        assert sum(out[f"s{i}"] << i for i in range(4)) == 0 and out["cout"] == 1

    @pytest.mark.parametrize("n", [1, 2, 4])
    def test_exhaustive_small_widths(self, n):
        verdict = verify_function(gen_ripple_adder(n), FunctionSpec.ripple_adder(n))
        assert verdict.passed and verdict.cases == 1 << (2 * n + 1)

    def test_zero_width_rejected(self):
        with pytest.raises(CircuitError):
            gen_ripple_adder(0)


class TestPartialProducts:
    def test_gate_counts_for_8(self):
        circuit, _ = gen_partial_products(8)
        report = metrics(circuit)
        assert report.gates_by_kind[GateKind.FREDKIN] == 64
        assert report.gates_by_kind[GateKind.FEYNMAN] == 56
        assert report.total_gates == 120

    def test_column_pattern(self):
        circuit, grid = gen_partial_products(8)
        a = simulate(circuit, int_inputs("a", 0xFF, 8) | int_inputs("b", 0x01, 8))
        for i in range(8):
            for j in range(8):
                assert a[grid.line(i, j)] == (1 if j == 0 else 0)

    def test_grid_matches_bitwise_and_on_random_operands(self):
        circuit, grid = gen_partial_products(8)
        program = engine.compile_program(circuit)
        rng = np.random.default_rng(17)
        pairs = rng.integers(0, 256, size=(200, 2))
        codes = np.array([_pp_code(circuit, a, b, 8) for a, b in pairs])
        final = engine.simulate_batch(program, engine.input_state_matrix(circuit, codes))
        for row, (a, b) in zip(final, pairs):
            for i in range(8):
                for j in range(8):
                    assert row[grid.line(i, j)] == ((a >> i) & 1) & ((b >> j) & 1)

    def test_verifies_against_and_array_spec(self):
        circuit, _ = gen_partial_products(3)
        assert verify_function(circuit, FunctionSpec.and_array(3)).passed

    def test_grid_weights(self):
        _, grid = gen_partial_products(4)
        assert grid.weight(2, 3) == 5
        assert len(grid.lines) == 16


def _pp_code(circuit, a, b, n):
    """Input code for operand pair (a, b) under the MSB-first convention."""
    names = [name for _, name in circuit.primary_inputs]
    bits = {f"a{i}": (int(a) >> i) & 1 for i in range(n)}
    bits |= {f"b{j}": (int(b) >> j) & 1 for j in range(n)}
    code = 0
    for name in names:
        code = (code << 1) | bits[name]
    return code


class TestWallaceMultiplier:
    def test_zero_times_anything(self):
        mul = gen_wallace_multiplier(8)
        out = mul.outputs_of(simulate(mul, int_inputs("a", 0, 8) | int_inputs("b", 173, 8)))
        assert all(v == 0 for v in out.values())

    def test_max_product(self):
        mul = gen_wallace_multiplier(8)
        out = mul.outputs_of(simulate(mul, int_inputs("a", 255, 8) | int_inputs("b", 255, 8)))
        assert sum(out[f"P{w}"] << w for w in range(16)) == 65025

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_exhaustive_small_widths(self, n):
        verdict = verify_function(gen_wallace_multiplier(n), FunctionSpec.multiplier(n))
        assert verdict.passed and verdict.cases == 1 << (2 * n)

    def test_random_sampling_above_exhaustive_range(self):
        # widths past 8 are verified by seeded sampling instead
        verdict = verify_function(
            gen_wallace_multiplier(10), FunctionSpec.multiplier(10), mode="random", samples=2000, seed=8
        )
        assert verdict.passed and verdict.cases == 2000

    def test_reduction_schedule_for_8(self):
        _, info = build_wallace_multiplier(8)
        assert info.row_schedule == (8, 4, 2)
        assert info.reduction_stages == 2

    def test_width_below_two_rejected(self):
        with pytest.raises(CircuitError):
            gen_wallace_multiplier(1)

    def test_stage_weight_conservation(self):
        # the weighted sum of the live bits equals a*b at every boundary
        circuit, info = build_wallace_multiplier(8)
        rng = random.Random(5)
        pairs = [(rng.randrange(256), rng.randrange(256)) for _ in range(60)]
        codes = np.array([_pp_code(circuit, a, b, 8) for a, b in pairs])
        states = engine.input_state_matrix(circuit, codes)
        for snapshot in info.snapshots:
            prefix = Circuit(circuit.input_roles)
            for app in circuit.gates[: snapshot.gate_count]:
                prefix.append_gate(app.kind, app.lines)
            final = engine.simulate_batch(prefix, states)
            for row, (a, b) in zip(final, pairs):
                total = sum(int(row[line]) << w for r in snapshot.rows for w, line in r)
                assert total == a * b, (snapshot.label, a, b)

    def test_rows_hold_one_bit_per_weight(self):
        _, info = build_wallace_multiplier(8)
        for snapshot in info.snapshots:
            for row in snapshot.rows:
                weights = [w for w, _ in row]
                assert len(weights) == len(set(weights))


class TestEmbeddingSearch:
    def test_contains_canonical_embedding(self):
        canonical = FullAdderEmbedding(
            port_roles=("a", "b", "const", "cin"), const_value=0, sum_port=2, carry_port=3
        )
        assert canonical in find_fa_embeddings()

    def test_invariant_under_operand_swap(self):
        embeddings = set(find_fa_embeddings())
        for e in embeddings:
            swapped = tuple("b" if r == "a" else "a" if r == "b" else r for r in e.port_roles)
            assert (
                FullAdderEmbedding(swapped, e.const_value, e.sum_port, e.carry_port) in embeddings
            )

    def test_every_embedding_reverifies_exhaustively(self):
        embeddings = find_fa_embeddings()
        assert embeddings
        for e in embeddings:
            assert verify_function(embedding_circuit(e), FunctionSpec.full_adder()).passed, e


class TestAncillaLint:
    def test_generated_families_are_clean(self):
        for circuit in (
            gen_full_adder(),
            gen_half_adder(),
            gen_compressor_4_2(),
            gen_ripple_adder(6),
            gen_partial_products(5)[0],
            gen_wallace_multiplier(8),
        ):
            assert lint_zero_ancillas(circuit) == []

    def test_reused_ancilla_is_flagged(self):
        from revarith.circuit import LineRole

        c = Circuit([LineRole.primary("a"), LineRole.primary("b"), LineRole.constant(0)])
        c.append_gate(GateKind.FEYNMAN, (0, 2))
        c.append_gate(GateKind.FREDKIN, (0, 1, 2))  # line 2 no longer holds 0
        problems = lint_zero_ancillas(c)
        assert len(problems) == 1 and "already consumed" in problems[0]

    def test_input_wired_as_ancilla_is_flagged(self):
        from revarith.circuit import LineRole

        c = Circuit([LineRole.primary("a"), LineRole.primary("b"), LineRole.primary("x")])
        c.append_gate(GateKind.FREDKIN, (0, 1, 2))
        problems = lint_zero_ancillas(c)
        assert len(problems) == 1 and "primary input" in problems[0]
