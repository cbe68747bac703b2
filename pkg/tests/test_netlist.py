"""Netlist tests: wire rules, simulation, metrics, injectivity, export."""

from __future__ import annotations

import random

import pytest

from revdec.gates import BitVector, ParseError, builtin
from revdec.netlist import (
    ROLE_ANCILLA,
    ROLE_GARBAGE,
    ROLE_PRIMARY_INPUT,
    ROLE_PRIMARY_OUTPUT,
    CostMetrics,
    GateInstance,
    InputDecl,
    MalformedNetlist,
    Netlist,
    NetlistBuilder,
    OutputDecl,
)

TS3 = builtin("TS3")
TSG = builtin("TSG")
NEW_GATE = builtin("NEW_GATE")


def full_adder_net() -> Netlist:
    """One TSG wired as a full adder: inputs x, y, cin; outputs s, co."""
    b = NetlistBuilder("full_adder")
    x = b.primary_input("x")
    y = b.primary_input("y")
    cin = b.primary_input("cin")
    zero = b.ancilla(0)
    _, _, s, co = b.gate(TSG, (x, y, zero, cin), ("res_x", "res_h", "s", "co"))
    b.primary_output(s)
    b.primary_output(co)
    return b.build()


class TestBuilder:
    def test_duplicate_wire_name(self):
        b = NetlistBuilder("n")
        b.primary_input("a")
        with pytest.raises(MalformedNetlist, match="already exists"):
            b.primary_input("a")

    def test_unknown_input_wire(self):
        b = NetlistBuilder("n")
        with pytest.raises(MalformedNetlist, match="does not exist"):
            b.gate(TS3, ("a", "b", "c"), ("d", "e", "f"))

    def test_wire_cannot_fan_out(self):
        b = NetlistBuilder("n")
        a = b.primary_input("a")
        b.gate(TS3, (a, b.ancilla(0), b.ancilla(0)), ("p", "q", "r"))
        with pytest.raises(MalformedNetlist, match="already consumed"):
            b.gate(TS3, (a, "p", "q"), ("u", "v", "w"))

    def test_primary_output_of_consumed_wire(self):
        b = NetlistBuilder("n")
        a = b.primary_input("a")
        b.gate(TS3, (a, b.ancilla(0), b.ancilla(0)), ("p", "q", "r"))
        with pytest.raises(MalformedNetlist, match="already consumed"):
            b.primary_output(a)

    def test_ancilla_autonaming_and_constants(self):
        b = NetlistBuilder("n")
        z = b.ancilla(0)
        o = b.ancilla(1)
        assert z.startswith("zero") and o.startswith("one")

    def test_garbage_in_creation_order(self):
        net = full_adder_net()
        assert net.garbage_wires() == ("res_x", "res_h")
        assert net.primary_output_wires() == ("s", "co")

    def test_wire_names_must_be_clean(self):
        b = NetlistBuilder("n")
        with pytest.raises(MalformedNetlist):
            b.primary_input("has space")
        with pytest.raises(MalformedNetlist):
            b.primary_input("")


class TestSimulate:
    def test_full_adder_truth_table(self):
        net = full_adder_net()
        for x in (0, 1):
            for y in (0, 1):
                for cin in (0, 1):
                    primary, full = net.simulate(BitVector.from_bits([x, y, cin]))
                    s, co = primary.bit(0), primary.bit(1)
                    assert 2 * co + s == x + y + cin
                    assert full.width == 4  # two results plus two garbage lines

    def test_example_one_plus_zero_plus_one(self):
        net = full_adder_net()
        primary, _ = net.simulate(BitVector.from_bits([1, 0, 1]))
        assert primary.bits() == (0, 1)

    def test_width_mismatch(self):
        from revdec.gates import WidthMismatch

        with pytest.raises(WidthMismatch):
            full_adder_net().simulate(BitVector(2, 0))

    def test_trace_reports_every_gate(self):
        net = full_adder_net()
        primary, _, steps = net.simulate_trace(BitVector.from_bits([1, 1, 0]))
        assert len(steps) == 1
        step = steps[0]
        assert step.gate_name == "TSG"
        assert dict(step.inputs) == {"x": 1, "y": 1, "zero0": 0, "cin": 0}
        assert dict(step.outputs)["s"] == primary.bit(0)

    def test_gate_order_does_not_change_results(self):
        # Two independent parity gates, listed in both construction orders.
        def build(reverse: bool) -> Netlist:
            inputs = tuple(
                InputDecl(w, ROLE_PRIMARY_INPUT) for w in ("a", "b", "c", "d")
            )
            g1 = GateInstance(TS3, ("a", "b", "z1"), ("p", "q", "r"))
            g2 = GateInstance(TS3, ("c", "d", "z2"), ("u", "v", "w"))
            gates = (g2, g1) if reverse else (g1, g2)
            return Netlist(
                "pair",
                inputs + (InputDecl("z1", ROLE_ANCILLA, 0), InputDecl("z2", ROLE_ANCILLA, 0)),
                tuple(
                    OutputDecl(w, ROLE_PRIMARY_OUTPUT) for w in ("r", "w")
                )
                + tuple(OutputDecl(w, ROLE_GARBAGE) for w in ("p", "q", "u", "v")),
                gates,
            )

        forward, backward = build(False), build(True)
        for pattern in range(16):
            x = BitVector(4, pattern)
            assert forward.simulate(x)[0] == backward.simulate(x)[0]
        assert forward.metrics().gate_count == backward.metrics().gate_count
        assert forward.metrics().depth == backward.metrics().depth


class TestValidation:
    def _net(self, inputs, outputs, gates) -> Netlist:
        return Netlist("bad", tuple(inputs), tuple(outputs), tuple(gates))

    def test_fan_out_detected(self):
        net = self._net(
            [InputDecl("a", ROLE_PRIMARY_INPUT), InputDecl("b", ROLE_PRIMARY_INPUT),
             InputDecl("z", ROLE_ANCILLA, 0), InputDecl("z2", ROLE_ANCILLA, 0),
             InputDecl("z3", ROLE_ANCILLA, 0)],
            [OutputDecl("r1", ROLE_PRIMARY_OUTPUT), OutputDecl("r2", ROLE_PRIMARY_OUTPUT),
             OutputDecl("p1", ROLE_GARBAGE), OutputDecl("q1", ROLE_GARBAGE),
             OutputDecl("p2", ROLE_GARBAGE), OutputDecl("q2", ROLE_GARBAGE)],
            [GateInstance(TS3, ("a", "b", "z"), ("p1", "q1", "r1")),
             GateInstance(TS3, ("a", "z2", "z3"), ("p2", "q2", "r2"))],
        )
        with pytest.raises(MalformedNetlist, match="consumed twice"):
            net.validate()

    def test_driven_twice_detected(self):
        net = self._net(
            [InputDecl("a", ROLE_PRIMARY_INPUT), InputDecl("b", ROLE_PRIMARY_INPUT),
             InputDecl("c", ROLE_PRIMARY_INPUT), InputDecl("z", ROLE_ANCILLA, 0),
             InputDecl("z2", ROLE_ANCILLA, 0), InputDecl("z3", ROLE_ANCILLA, 0)],
            [OutputDecl("r", ROLE_PRIMARY_OUTPUT)],
            [GateInstance(TS3, ("a", "b", "z"), ("p", "q", "r")),
             GateInstance(TS3, ("c", "z2", "z3"), ("p", "u", "v"))],
        )
        with pytest.raises(MalformedNetlist, match="driven twice"):
            net.validate()

    def test_dangling_wire_detected(self):
        net = self._net(
            [InputDecl("a", ROLE_PRIMARY_INPUT), InputDecl("b", ROLE_PRIMARY_INPUT),
             InputDecl("z", ROLE_ANCILLA, 0)],
            [OutputDecl("r", ROLE_PRIMARY_OUTPUT), OutputDecl("p", ROLE_GARBAGE)],
            [GateInstance(TS3, ("a", "b", "z"), ("p", "q", "r"))],
        )
        with pytest.raises(MalformedNetlist, match="garbage"):
            net.validate()

    def test_undriven_output_detected(self):
        net = self._net(
            [InputDecl("a", ROLE_PRIMARY_INPUT)],
            [OutputDecl("a", ROLE_PRIMARY_OUTPUT), OutputDecl("ghost", ROLE_GARBAGE)],
            [],
        )
        with pytest.raises(MalformedNetlist, match="never driven"):
            net.validate()

    def test_cycle_detected(self):
        net = self._net(
            [InputDecl("a", ROLE_PRIMARY_INPUT), InputDecl("b", ROLE_PRIMARY_INPUT),
             InputDecl("z", ROLE_ANCILLA, 0), InputDecl("z2", ROLE_ANCILLA, 0)],
            [OutputDecl("y1", ROLE_PRIMARY_OUTPUT), OutputDecl("y2", ROLE_GARBAGE),
             OutputDecl("x1", ROLE_GARBAGE), OutputDecl("x2", ROLE_GARBAGE)],
            [GateInstance(TS3, ("a", "w2", "z"), ("x1", "w1", "y1")),
             GateInstance(TS3, ("b", "w1", "z2"), ("x2", "w2", "y2"))],
        )
        with pytest.raises(MalformedNetlist, match="cycle"):
            net.validate()

    def test_ancilla_needs_constant(self):
        with pytest.raises(MalformedNetlist, match="constant"):
            InputDecl("z", ROLE_ANCILLA, None)
        with pytest.raises(MalformedNetlist):
            InputDecl("a", ROLE_PRIMARY_INPUT, 1)

    def test_bad_roles(self):
        with pytest.raises(MalformedNetlist):
            InputDecl("a", "output")
        with pytest.raises(MalformedNetlist):
            OutputDecl("a", "input")

    def test_instance_width_mismatch(self):
        with pytest.raises(MalformedNetlist, match="lines"):
            GateInstance(TS3, ("a", "b"), ("c", "d"))

    def test_instance_duplicate_wires(self):
        with pytest.raises(MalformedNetlist, match="duplicate"):
            GateInstance(TS3, ("a", "a", "b"), ("c", "d", "e"))

    def test_instance_self_loop(self):
        with pytest.raises(MalformedNetlist, match="own input"):
            GateInstance(TS3, ("a", "b", "c"), ("a", "d", "e"))


class TestCheckInjective:
    def test_valid_netlist_passes(self):
        assert full_adder_net().check_injective() is None

    def test_information_loss_is_caught(self):
        # Outputs alias wire a twice and drop wire b entirely: inputs that
        # differ only in b collide.
        net = Netlist(
            "lossy",
            (InputDecl("a", ROLE_PRIMARY_INPUT), InputDecl("b", ROLE_PRIMARY_INPUT)),
            (OutputDecl("a", ROLE_PRIMARY_OUTPUT), OutputDecl("a", ROLE_GARBAGE)),
            (),
        )
        collision = net.check_injective()
        assert collision is not None
        x1, x2 = collision
        assert x1 != x2
        assert x1.bit(0) == x2.bit(0)  # they differ only in the dropped wire

    def test_too_many_inputs_refused(self):
        wires = [f"w{i}" for i in range(21)]
        net = Netlist(
            "wide",
            tuple(InputDecl(w, ROLE_PRIMARY_INPUT) for w in wires),
            tuple(OutputDecl(w, ROLE_PRIMARY_OUTPUT) for w in wires),
            (),
        )
        with pytest.raises(MalformedNetlist, match="2\\*\\*"):
            net.check_injective()

    def test_randomly_composed_netlists_are_injective(self):
        gates = [builtin(n) for n in ("FREDKIN", "TOFFOLI", "TS3", "NEW_GATE", "TSG")]
        rng = random.Random(1207)
        for trial in range(20):
            b = NetlistBuilder(f"random{trial}")
            available = [b.primary_input(f"i{k}") for k in range(rng.randint(2, 6))]
            for g in range(rng.randint(1, 8)):
                gate = rng.choice(gates)
                ins = []
                for line in range(gate.width):
                    if available and rng.random() < 0.7:
                        ins.append(available.pop(rng.randrange(len(available))))
                    else:
                        ins.append(b.ancilla(rng.randint(0, 1)))
                outs = b.gate(gate, ins, [f"t{trial}_{g}_{i}" for i in range(gate.width)])
                available.extend(outs)
            b.primary_output(available.pop())
            net = b.build()
            assert net.check_injective() is None, net.name


class TestMetrics:
    def test_full_adder_metrics(self):
        m = full_adder_net().metrics()
        assert m == CostMetrics(gate_count=1, garbage_count=2, ancilla_count=1, depth=1)
        assert m.as_dict() == {"gates": 1, "garbage": 2, "ancilla": 1, "depth": 1}

    def test_depth_counts_longest_path(self):
        b = NetlistBuilder("chain")
        a = b.primary_input("a")
        x = b.primary_input("x")
        acc = a
        for i in range(3):
            _, _, acc = b.gate(
                TS3, (x if i == 0 else f"s{i - 1}", acc, b.ancilla(0)),
                (f"s{i}", f"g{i}", f"acc{i}"),
            )
        b.primary_output(acc)
        net = b.build()
        assert net.metrics().depth == 3

    def test_wire_depths_and_cone(self):
        net = full_adder_net()
        depths = net.wire_depths()
        assert depths["x"] == 0 and depths["s"] == 1
        assert net.cone_of("s") == frozenset({0})
        assert net.cone_of("x") == frozenset()
        with pytest.raises(MalformedNetlist):
            net.cone_of("missing")


class TestSerialization:
    def test_json_round_trip_is_structural_equality(self):
        net = full_adder_net()
        assert Netlist.from_json(net.to_json()) == net

    def test_json_carries_gate_tables(self):
        text = full_adder_net().to_json()
        assert '"gate_defs"' in text and '"table"' in text

    @pytest.mark.parametrize(
        "text",
        [
            "{not json",
            "[1, 2]",
            '{"name": "x"}',
            '{"name": "x", "inputs": [], "outputs": [], "gates": 3, "gate_defs": []}',
        ],
    )
    def test_parse_errors(self, text):
        with pytest.raises(ParseError):
            Netlist.from_json(text)

    def test_unknown_gate_reference(self):
        doc = full_adder_net().to_json().replace('"gate_name": "TSG"', '"gate_name": "XYZ"')
        with pytest.raises(ParseError, match="XYZ"):
            Netlist.from_json(doc)

    def test_malformed_structure_in_valid_json(self):
        import json as jsonlib

        doc = jsonlib.loads(full_adder_net().to_json())
        doc["outputs"] = doc["outputs"][:-1]  # drop a consumer: wire dangles
        with pytest.raises(MalformedNetlist):
            Netlist.from_json(jsonlib.dumps(doc))

    def test_dot_export_mentions_structure(self):
        dot = full_adder_net().to_dot()
        assert dot.startswith('digraph "full_adder"')
        assert 'label="g0: TSG"' in dot
        assert "[primary_input]" in dot and "[garbage]" in dot
        assert 'label="zero0 = 0 [ancilla]"' in dot
        # one edge per wire: 4 into the gate, 4 out of the circuit
        assert dot.count("->") == 8
