"""Reversible build tests: functional equivalence, cost metrics, structure."""

from __future__ import annotations

import pytest

from revdec.classical import (
    BcdOperands,
    carry_skip_add,
    conventional_add,
    oracle,
    valid_operands,
)
from revdec.gates import BitVector, UnknownGate, builtin_catalog, make_gate
from revdec.netlist import ROLE_ANCILLA, CostMetrics, NetlistBuilder
from revdec.reversible import (
    FIDELITY_RECONSTRUCTED,
    and4_subcircuit,
    build_carry_skip_reversible,
    build_conventional_reversible,
    input_pattern,
    simulate_digit_add,
    skip_mux_subcircuit,
)

ALL_OPS = tuple(valid_operands())
CONVENTIONAL = build_conventional_reversible()
CARRY_SKIP = build_carry_skip_reversible()


def ancilla_wires(net) -> set[str]:
    return {d.wire for d in net.inputs if d.role == ROLE_ANCILLA}


class TestConventionalBuild:
    def test_matches_oracle_everywhere(self):
        for op in ALL_OPS:
            assert simulate_digit_add(CONVENTIONAL, op) == oracle(op)

    def test_matches_the_classical_model(self):
        for op in ALL_OPS:
            assert simulate_digit_add(CONVENTIONAL, op) == conventional_add(op)[0]

    def test_cost_metrics(self):
        assert CONVENTIONAL.metrics == CostMetrics(
            gate_count=9, garbage_count=13, ancilla_count=9, depth=8
        )

    def test_gate_inventory(self):
        assert CONVENTIONAL.netlist.gate_inventory() == {"TSG": 6, "NEW_GATE": 3}

    def test_fidelity_is_declared(self):
        assert CONVENTIONAL.figure_fidelity == FIDELITY_RECONSTRUCTED

    def test_injective(self):
        assert CONVENTIONAL.netlist.check_injective() is None

    def test_primary_interface(self):
        net = CONVENTIONAL.netlist
        assert net.primary_input_wires() == (
            "a0", "a1", "a2", "a3", "b0", "b1", "b2", "b3", "cin",
        )
        assert net.primary_output_wires() == ("s0", "s1", "s2", "s3", "cout")
        assert CONVENTIONAL.primary_output_map == {
            "s0": 0, "s1": 1, "s2": 2, "s3": 3, "cout": 4,
        }

    def test_four_full_adders_wired_with_constant_zero(self):
        # The binary stage: one four-line adder gate per bit position, each
        # with operand bits on its first two lines and a fresh constant-zero
        # ancilla on its third.
        net = CONVENTIONAL.netlist
        ancillas = ancilla_wires(net)
        stage = [
            inst
            for inst in net.gates
            if inst.gate.name == "TSG" and inst.input_wires[0].startswith("a")
        ]
        assert len(stage) == 4
        for j, inst in enumerate(stage):
            assert inst.input_wires[0] == f"a{j}"
            assert inst.input_wires[1] == f"b{j}"
            assert inst.input_wires[2] in ancillas

    def test_no_wire_fans_out(self):
        net = CONVENTIONAL.netlist
        consumers: dict[str, int] = {}
        for inst in net.gates:
            for wire in inst.input_wires:
                consumers[wire] = consumers.get(wire, 0) + 1
        for decl in net.outputs:
            consumers[decl.wire] = consumers.get(decl.wire, 0) + 1
        assert all(count == 1 for count in consumers.values())


class TestCarrySkipBuild:
    def test_matches_oracle_everywhere(self):
        for op in ALL_OPS:
            assert simulate_digit_add(CARRY_SKIP, op) == oracle(op)

    def test_matches_the_classical_model(self):
        for op in ALL_OPS:
            assert simulate_digit_add(CARRY_SKIP, op) == carry_skip_add(op)[0]

    def test_cost_metrics(self):
        assert CARRY_SKIP.metrics == CostMetrics(
            gate_count=17, garbage_count=21, ancilla_count=17, depth=13
        )

    def test_gate_inventory(self):
        assert CARRY_SKIP.netlist.gate_inventory() == {
            "TSG": 6, "FREDKIN": 4, "TS3": 3, "TOFFOLI": 3, "NEW_GATE": 1,
        }

    def test_fidelity_is_declared(self):
        assert CARRY_SKIP.figure_fidelity == FIDELITY_RECONSTRUCTED

    def test_injective(self):
        assert CARRY_SKIP.netlist.check_injective() is None

    def test_four_full_adders_wired_with_constant_zero(self):
        net = CARRY_SKIP.netlist
        ancillas = ancilla_wires(net)
        stage = [
            inst
            for inst in net.gates
            if inst.gate.name == "TSG"
            and (inst.input_wires[0].startswith("a") or inst.input_wires[0] == "cin")
        ]
        assert len(stage) == 4
        for inst in stage:
            assert inst.input_wires[2] in ancillas

    def test_skip_mux_sees_the_carry_in_early(self):
        # The selection gate is the only controlled swap fed entirely by
        # computed wires.  Its carry-in leg must be ready strictly earlier
        # than the rippled stage carry, and must not depend on the gate that
        # produces that carry; otherwise there is nothing to skip.
        net = CARRY_SKIP.netlist
        ancillas = ancilla_wires(net)
        muxes = [
            inst
            for inst in net.gates
            if inst.gate.name == "FREDKIN"
            and not any(w in ancillas for w in inst.input_wires)
        ]
        assert len(muxes) == 1
        mux = muxes[0]
        early_leg, late_leg = mux.input_wires[1], mux.input_wires[2]
        depths = net.wire_depths()
        assert depths[early_leg] < depths[late_leg]
        assert depths[early_leg] == 2 and depths[late_leg] == 5
        late_driver = next(
            i for i, inst in enumerate(net.gates) if late_leg in inst.output_wires
        )
        assert late_driver not in net.cone_of(early_leg)
        assert net.cone_of(early_leg) < net.cone_of(late_leg)  # strictly smaller cone

    def test_block_propagate_uses_three_swaps_plus_the_mux(self):
        fredkins = [i for i in CARRY_SKIP.netlist.gates if i.gate.name == "FREDKIN"]
        assert len(fredkins) == 4

    def test_exclusive_conditions_merge_through_parity(self):
        # The trigger is produced by a three-way parity gate whose output
        # wire feeds the correction layer.
        net = CARRY_SKIP.netlist
        parity = [
            inst
            for inst in net.gates
            if inst.gate.name == "TS3" and "trigger" in inst.output_wires
        ]
        assert len(parity) == 1

    def test_no_wire_fans_out(self):
        net = CARRY_SKIP.netlist
        consumers: dict[str, int] = {}
        for inst in net.gates:
            for wire in inst.input_wires:
                consumers[wire] = consumers.get(wire, 0) + 1
        for decl in net.outputs:
            consumers[decl.wire] = consumers.get(decl.wire, 0) + 1
        assert all(count == 1 for count in consumers.values())


class TestSubcircuits:
    def test_and4_is_a_four_way_and(self):
        b = NetlistBuilder("and4_harness")
        wires = [b.primary_input(f"i{k}") for k in range(4)]
        out = and4_subcircuit(b, wires)
        b.primary_output(out)
        net = b.build()
        assert net.gate_inventory() == {"FREDKIN": 3}
        assert net.metrics().garbage_count == 6
        for pattern in range(16):
            primary, _ = net.simulate(BitVector(4, pattern))
            assert primary.bit(0) == (1 if pattern == 0b1111 else 0)

    def test_and4_needs_four_wires(self):
        b = NetlistBuilder("short")
        wires = [b.primary_input(f"i{k}") for k in range(3)]
        with pytest.raises(ValueError):
            and4_subcircuit(b, wires)

    def test_skip_mux_selects_between_carries(self):
        b = NetlistBuilder("mux_harness")
        select = b.primary_input("select")
        when_set = b.primary_input("when_set")
        when_clear = b.primary_input("when_clear")
        out = skip_mux_subcircuit(b, select, when_set, when_clear)
        b.primary_output(out)
        net = b.build()
        assert net.gate_inventory() == {"FREDKIN": 1}
        assert net.metrics().garbage_count == 2
        for s in (0, 1):
            for hi in (0, 1):
                for lo in (0, 1):
                    primary, _ = net.simulate(BitVector.from_bits([s, hi, lo]))
                    assert primary.bit(0) == (hi if s else lo)


class TestEncodingAndCatalog:
    def test_input_pattern_layout(self):
        x = input_pattern(BcdOperands(9, 6, 1))
        assert x.value == 9 | (6 << 4) | (1 << 8)

    def test_missing_gate_in_catalog(self):
        catalog = builtin_catalog()
        del catalog["TSG"]
        with pytest.raises(UnknownGate, match="TSG"):
            build_conventional_reversible(catalog)

    def test_replacement_tables_drive_behavior(self):
        # Swapping in a wrong (but reversible) adder gate must change the
        # computed results; the wiring itself has no arithmetic hidden in it.
        catalog = builtin_catalog()
        catalog["TSG"] = make_gate("TSG", 4, list(range(16)))
        broken = build_conventional_reversible(catalog)
        disagreements = sum(
            simulate_digit_add(broken, op) != oracle(op) for op in ALL_OPS
        )
        assert disagreements > 0

    def test_builds_are_reproducible(self):
        again = build_conventional_reversible()
        assert again.netlist == CONVENTIONAL.netlist
        assert build_carry_skip_reversible().netlist == CARRY_SKIP.netlist
