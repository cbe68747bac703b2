"""Gate-level reversible netlists with strict wire bookkeeping.

A netlist here is a directed acyclic circuit of reversible gates in which
every wire has exactly one driver (a circuit input or one gate output) and
exactly one consumer (one gate input or one circuit output).  Fan-out is
disallowed by construction, because copying a value in reversible logic
costs a gate; if a design needs a value twice it must route it through a
gate that reproduces it.  Any driven wire that no gate consumes must be
declared as a circuit output, either a primary output carrying a result or
a garbage output carrying a leftover value.

:class:`NetlistBuilder` is the convenient way to assemble a netlist; it
tracks consumption as gates are added and classifies leftover wires as
garbage automatically.  :class:`Netlist` itself is an immutable value with
simulation, cost metrics, an exhaustive injectivity check, and JSON / DOT
serialization.
"""

from __future__ import annotations

import json
from collections import deque
from collections.abc import Sequence
from dataclasses import dataclass

from .gates import (
    BitVector,
    GatePermutation,
    NotBijective,
    ParseError,
    WidthMismatch,
    make_gate,
)

__all__ = [
    "ROLE_PRIMARY_INPUT",
    "ROLE_ANCILLA",
    "ROLE_PRIMARY_OUTPUT",
    "ROLE_GARBAGE",
    "MalformedNetlist",
    "InputDecl",
    "OutputDecl",
    "GateInstance",
    "CostMetrics",
    "TraceStep",
    "Netlist",
    "NetlistBuilder",
]

ROLE_PRIMARY_INPUT = "primary_input"
ROLE_ANCILLA = "ancilla"
ROLE_PRIMARY_OUTPUT = "primary_output"
ROLE_GARBAGE = "garbage"

_INPUT_ROLES = (ROLE_PRIMARY_INPUT, ROLE_ANCILLA)
_OUTPUT_ROLES = (ROLE_PRIMARY_OUTPUT, ROLE_GARBAGE)

# check_injective enumerates every primary input pattern; cap the sweep so a
# mistyped netlist cannot demand 2**50 simulations.
_MAX_INJECTIVITY_INPUTS = 20


class MalformedNetlist(ValueError):
    """The netlist breaks a structural rule (drivers, consumers, cycles)."""


def _check_wire_name(wire: object) -> str:
    if not isinstance(wire, str) or not wire or any(c.isspace() for c in wire):
        raise MalformedNetlist(
            f"wire names must be non-empty strings without whitespace, got {wire!r}"
        )
    return wire


@dataclass(frozen=True)
class InputDecl:
    """One circuit input: a primary operand line or a constant ancilla line."""

    wire: str
    role: str
    const: int | None = None

    def __post_init__(self) -> None:
        _check_wire_name(self.wire)
        if self.role not in _INPUT_ROLES:
            raise MalformedNetlist(
                f"input {self.wire!r} has role {self.role!r}, "
                f"expected one of {_INPUT_ROLES}"
            )
        if self.role == ROLE_ANCILLA:
            if self.const not in (0, 1):
                raise MalformedNetlist(
                    f"ancilla {self.wire!r} needs a constant of 0 or 1, "
                    f"got {self.const!r}"
                )
        elif self.const is not None:
            raise MalformedNetlist(
                f"primary input {self.wire!r} must not carry a constant"
            )


@dataclass(frozen=True)
class OutputDecl:
    """One circuit output: a primary result line or a garbage line."""

    wire: str
    role: str

    def __post_init__(self) -> None:
        _check_wire_name(self.wire)
        if self.role not in _OUTPUT_ROLES:
            raise MalformedNetlist(
                f"output {self.wire!r} has role {self.role!r}, "
                f"expected one of {_OUTPUT_ROLES}"
            )


@dataclass(frozen=True)
class GateInstance:
    """One placed gate: which wires enter each line and which leave it.

    Line ``i`` of the gate reads ``input_wires[i]`` and drives
    ``output_wires[i]``.
    """

    gate: GatePermutation
    input_wires: tuple[str, ...]
    output_wires: tuple[str, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "input_wires", tuple(self.input_wires))
        object.__setattr__(self, "output_wires", tuple(self.output_wires))
        for wires, side in ((self.input_wires, "input"), (self.output_wires, "output")):
            for wire in wires:
                _check_wire_name(wire)
            if len(wires) != self.gate.width:
                raise MalformedNetlist(
                    f"gate {self.gate.name!r} has {self.gate.width} lines but "
                    f"{len(wires)} {side} wires were given"
                )
            if len(set(wires)) != len(wires):
                raise MalformedNetlist(
                    f"gate {self.gate.name!r} lists a duplicate {side} wire"
                )
        overlap = set(self.input_wires) & set(self.output_wires)
        if overlap:
            raise MalformedNetlist(
                f"gate {self.gate.name!r} would drive its own input wire(s) "
                f"{sorted(overlap)}; give outputs fresh names"
            )


@dataclass(frozen=True)
class CostMetrics:
    """Standard reversible-circuit cost figures for one netlist."""

    gate_count: int
    garbage_count: int
    ancilla_count: int
    depth: int

    def as_dict(self) -> dict[str, int]:
        return {
            "gates": self.gate_count,
            "garbage": self.garbage_count,
            "ancilla": self.ancilla_count,
            "depth": self.depth,
        }


@dataclass(frozen=True)
class TraceStep:
    """One gate evaluation in a simulation trace."""

    index: int
    gate_name: str
    inputs: tuple[tuple[str, int], ...]
    outputs: tuple[tuple[str, int], ...]


@dataclass(frozen=True)
class Netlist:
    """An immutable reversible circuit.

    Equality is structural: two netlists are equal when they declare the
    same inputs, outputs and gate placements (including the gates' tables)
    in the same order.  Validation is explicit via :meth:`validate`;
    operations that only make sense on well-formed circuits (simulation,
    metrics, export) call it themselves.
    """

    name: str
    inputs: tuple[InputDecl, ...]
    outputs: tuple[OutputDecl, ...]
    gates: tuple[GateInstance, ...]

    def __post_init__(self) -> None:
        object.__setattr__(self, "inputs", tuple(self.inputs))
        object.__setattr__(self, "outputs", tuple(self.outputs))
        object.__setattr__(self, "gates", tuple(self.gates))

    # ------------------------------------------------------------------
    # structure
    # ------------------------------------------------------------------

    def primary_input_wires(self) -> tuple[str, ...]:
        return tuple(d.wire for d in self.inputs if d.role == ROLE_PRIMARY_INPUT)

    def primary_output_wires(self) -> tuple[str, ...]:
        return tuple(d.wire for d in self.outputs if d.role == ROLE_PRIMARY_OUTPUT)

    def garbage_wires(self) -> tuple[str, ...]:
        return tuple(d.wire for d in self.outputs if d.role == ROLE_GARBAGE)

    def _drivers(self) -> dict[str, tuple[str, int]]:
        """Map each wire to its unique driver.

        The driver is ``("input", input_index)`` or ``("gate", gate_index)``.
        Raises :class:`MalformedNetlist` if any wire is driven twice.
        """
        drivers: dict[str, tuple[str, int]] = {}
        for i, decl in enumerate(self.inputs):
            if decl.wire in drivers:
                raise MalformedNetlist(f"wire {decl.wire!r} is declared twice")
            drivers[decl.wire] = ("input", i)
        for g, inst in enumerate(self.gates):
            for wire in inst.output_wires:
                if wire in drivers:
                    raise MalformedNetlist(f"wire {wire!r} is driven twice")
                drivers[wire] = ("gate", g)
        return drivers

    def _topo_order(self) -> tuple[int, ...]:
        """Indices of ``gates`` in dependency order.

        Verifies that the circuit is evaluable: every consumed wire has a
        driver and no dependency cycle exists.  Does not check the
        consumption rules; :meth:`validate` layers those on top.
        """
        drivers = self._drivers()
        for inst in self.gates:
            for wire in inst.input_wires:
                if wire not in drivers:
                    raise MalformedNetlist(f"wire {wire!r} is consumed but never driven")
        for decl in self.outputs:
            if decl.wire not in drivers:
                raise MalformedNetlist(f"output {decl.wire!r} is never driven")

        missing = [
            sum(1 for w in inst.input_wires if drivers[w][0] == "gate")
            for inst in self.gates
        ]
        consumers: dict[int, list[int]] = {}
        for g, inst in enumerate(self.gates):
            for wire in inst.input_wires:
                kind, idx = drivers[wire]
                if kind == "gate":
                    consumers.setdefault(idx, []).append(g)

        ready = deque(g for g, n in enumerate(missing) if n == 0)
        order: list[int] = []
        while ready:
            g = ready.popleft()
            order.append(g)
            for nxt in consumers.get(g, ()):
                missing[nxt] -= 1
                if missing[nxt] == 0:
                    ready.append(nxt)
        if len(order) != len(self.gates):
            raise MalformedNetlist("netlist contains a dependency cycle")
        return tuple(order)

    def validate(self) -> None:
        """Check every structural invariant; raise :class:`MalformedNetlist`.

        Rules: unique wire names per declaration site, exactly one driver
        and exactly one consumer per wire (fan-out is not allowed), no
        driven-but-unclassified wires, no cycles, and at least one primary
        input and one primary output.
        """
        drivers = self._drivers()
        self._topo_order()

        consumed: dict[str, str] = {}

        def consume(wire: str, where: str) -> None:
            if wire in consumed:
                raise MalformedNetlist(
                    f"wire {wire!r} is consumed twice ({consumed[wire]} and {where}); "
                    f"fan-out requires an explicit copy gate"
                )
            consumed[wire] = where

        for g, inst in enumerate(self.gates):
            for wire in inst.input_wires:
                consume(wire, f"gate {g} ({inst.gate.name})")
        seen_outputs: set[str] = set()
        for decl in self.outputs:
            if decl.wire in seen_outputs:
                raise MalformedNetlist(f"output {decl.wire!r} is declared twice")
            seen_outputs.add(decl.wire)
            consume(decl.wire, "circuit output")

        dangling = [w for w in drivers if w not in consumed]
        if dangling:
            raise MalformedNetlist(
                f"wire(s) {sorted(dangling)} are driven but neither consumed by a "
                f"gate nor declared as outputs; classify them as garbage"
            )
        if not self.primary_input_wires():
            raise MalformedNetlist("netlist declares no primary inputs")
        if not self.primary_output_wires():
            raise MalformedNetlist("netlist declares no primary outputs")

    # ------------------------------------------------------------------
    # simulation
    # ------------------------------------------------------------------

    def _initial_values(self, x: BitVector) -> dict[str, int]:
        primaries = self.primary_input_wires()
        if x.width != len(primaries):
            raise WidthMismatch(
                f"netlist {self.name!r} has {len(primaries)} primary inputs "
                f"but the pattern has {x.width} bits"
            )
        values: dict[str, int] = {}
        next_bit = 0
        for decl in self.inputs:
            if decl.role == ROLE_PRIMARY_INPUT:
                values[decl.wire] = x.bit(next_bit)
                next_bit += 1
            else:
                values[decl.wire] = decl.const  # type: ignore[assignment]
        return values

    def _run(
        self, values: dict[str, int], order: Sequence[int]
    ) -> list[TraceStep]:
        steps: list[TraceStep] = []
        for g in order:
            inst = self.gates[g]
            pattern = 0
            for i, wire in enumerate(inst.input_wires):
                pattern |= values[wire] << i
            result = inst.gate.table[pattern]
            out_vals = []
            for i, wire in enumerate(inst.output_wires):
                bit = (result >> i) & 1
                values[wire] = bit
                out_vals.append((wire, bit))
            steps.append(
                TraceStep(
                    index=g,
                    gate_name=inst.gate.name,
                    inputs=tuple(
                        (w, (pattern >> i) & 1)
                        for i, w in enumerate(inst.input_wires)
                    ),
                    outputs=tuple(out_vals),
                )
            )
        return steps

    def _collect(self, values: dict[str, int]) -> tuple[BitVector, BitVector]:
        primary_bits = [values[w] for w in self.primary_output_wires()]
        all_bits = [values[d.wire] for d in self.outputs]
        return BitVector.from_bits(primary_bits), BitVector.from_bits(all_bits)

    def simulate(self, x: BitVector) -> tuple[BitVector, BitVector]:
        """Evaluate the circuit on one primary input pattern.

        Bit ``i`` of ``x`` feeds the ``i``-th declared primary input.
        Returns ``(primary, full)``: the primary output bits in declaration
        order, and every declared output (primary and garbage) in
        declaration order.
        """
        self.validate()
        order = self._topo_order()
        values = self._initial_values(x)
        self._run(values, order)
        return self._collect(values)

    def simulate_trace(
        self, x: BitVector
    ) -> tuple[BitVector, BitVector, tuple[TraceStep, ...]]:
        """Like :meth:`simulate` but also report every gate evaluation."""
        self.validate()
        order = self._topo_order()
        values = self._initial_values(x)
        steps = self._run(values, order)
        primary, full = self._collect(values)
        return primary, full, tuple(steps)

    # ------------------------------------------------------------------
    # analysis
    # ------------------------------------------------------------------

    def wire_depths(self) -> dict[str, int]:
        """Map each wire to the number of gates on its longest driving path.

        Circuit input wires sit at depth 0; a gate's output wires sit one
        past the deepest of its input wires.
        """
        order = self._topo_order()
        depth: dict[str, int] = {d.wire: 0 for d in self.inputs}
        for g in order:
            inst = self.gates[g]
            level = 1 + max(depth[w] for w in inst.input_wires)
            for wire in inst.output_wires:
                depth[wire] = level
        return depth

    def cone_of(self, wire: str) -> frozenset[int]:
        """Indices of the gate instances that ``wire`` transitively depends on."""
        drivers = self._drivers()
        if wire not in drivers:
            raise MalformedNetlist(f"wire {wire!r} is never driven")
        seen: set[int] = set()
        frontier = [wire]
        while frontier:
            kind, idx = drivers[frontier.pop()]
            if kind == "gate" and idx not in seen:
                seen.add(idx)
                frontier.extend(self.gates[idx].input_wires)
        return frozenset(seen)

    def metrics(self) -> CostMetrics:
        """Gate count, garbage count, ancilla count and depth."""
        self.validate()
        depths = self.wire_depths()
        return CostMetrics(
            gate_count=len(self.gates),
            garbage_count=len(self.garbage_wires()),
            ancilla_count=sum(1 for d in self.inputs if d.role == ROLE_ANCILLA),
            depth=max(depths.values(), default=0),
        )

    def gate_inventory(self) -> dict[str, int]:
        """How many instances of each gate type the netlist places."""
        counts: dict[str, int] = {}
        for inst in self.gates:
            counts[inst.gate.name] = counts.get(inst.gate.name, 0) + 1
        return counts

    def check_injective(self) -> tuple[BitVector, BitVector] | None:
        """Exhaustively test that distinct inputs produce distinct outputs.

        Sweeps every primary input pattern (constants fixed on ancilla
        lines) and compares the complete output tuples, garbage included.
        Returns ``None`` when no two inputs collide, otherwise one colliding
        input pair.  Unlike :meth:`simulate` this deliberately skips the
        consumption bookkeeping rules, so it can diagnose information loss
        in netlists that :meth:`validate` would reject, for example outputs
        that alias one wire while another wire is dropped.
        """
        primaries = self.primary_input_wires()
        if len(primaries) > _MAX_INJECTIVITY_INPUTS:
            raise MalformedNetlist(
                f"refusing to enumerate 2**{len(primaries)} input patterns "
                f"(limit is 2**{_MAX_INJECTIVITY_INPUTS})"
            )
        order = self._topo_order()
        seen: dict[tuple[int, ...], BitVector] = {}
        for pattern in range(1 << len(primaries)):
            x = BitVector(max(len(primaries), 1), pattern)
            values = self._initial_values(x)
            self._run(values, order)
            output = tuple(values[d.wire] for d in self.outputs)
            if output in seen:
                return seen[output], x
            seen[output] = x
        return None

    # ------------------------------------------------------------------
    # serialization
    # ------------------------------------------------------------------

    def to_json(self, indent: int | None = 2) -> str:
        """Serialize to the interchange JSON schema (self-contained)."""
        self.validate()
        gate_defs: dict[str, GatePermutation] = {}
        for inst in self.gates:
            gate_defs.setdefault(inst.gate.name, inst.gate)
        doc = {
            "name": self.name,
            "inputs": [
                {"wire": d.wire, "role": d.role, "const": d.const}
                if d.role == ROLE_ANCILLA
                else {"wire": d.wire, "role": d.role}
                for d in self.inputs
            ],
            "outputs": [{"wire": d.wire, "role": d.role} for d in self.outputs],
            "gates": [
                {
                    "gate_name": inst.gate.name,
                    "in": list(inst.input_wires),
                    "out": list(inst.output_wires),
                }
                for inst in self.gates
            ],
            "gate_defs": [
                {"name": g.name, "width": g.width, "table": list(g.table)}
                for g in sorted(gate_defs.values(), key=lambda g: g.name)
            ],
        }
        return json.dumps(doc, indent=indent)

    @classmethod
    def from_json(cls, text: str | bytes) -> "Netlist":
        """Parse the interchange JSON schema and validate the result.

        Raises :class:`ParseError` for malformed JSON or a wrong document
        shape, :class:`~revdec.gates.NotBijective` for an irreversible gate
        table, and :class:`MalformedNetlist` for structural rule breaks.
        """
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc}") from exc
        if not isinstance(doc, dict):
            raise ParseError("top-level JSON value must be an object")
        try:
            defs: dict[str, GatePermutation] = {}
            for entry in doc["gate_defs"]:
                gate = make_gate(entry["name"], entry["width"], entry["table"])
                defs[gate.name] = gate
            inputs = tuple(
                InputDecl(e["wire"], e["role"], e.get("const")) for e in doc["inputs"]
            )
            outputs = tuple(OutputDecl(e["wire"], e["role"]) for e in doc["outputs"])
            gates = []
            for e in doc["gates"]:
                gate_name = e["gate_name"]
                if gate_name not in defs:
                    raise ParseError(
                        f"gate {gate_name!r} is placed but not defined in gate_defs"
                    )
                gates.append(
                    GateInstance(defs[gate_name], tuple(e["in"]), tuple(e["out"]))
                )
            net = cls(doc["name"], inputs, tuple(outputs), tuple(gates))
        except (ParseError, MalformedNetlist, NotBijective):
            raise
        except (KeyError, TypeError, ValueError) as exc:
            raise ParseError(f"netlist document has a wrong shape: {exc}") from exc
        net.validate()
        return net

    def to_dot(self) -> str:
        """Render the circuit as a Graphviz digraph.

        Inputs and outputs become ellipse nodes annotated with their role
        (ancillas show their constant), gate instances become boxes, and
        each wire becomes one labelled edge from its driver to its consumer.
        """
        self.validate()
        drivers = self._drivers()

        def driver_node(wire: str) -> str:
            kind, idx = drivers[wire]
            return f'"in:{wire}"' if kind == "input" else f'"g{idx}"'

        lines = [f'digraph "{self.name}" {{', "  rankdir=LR;"]
        for decl in self.inputs:
            label = (
                f"{decl.wire} = {decl.const} [{decl.role}]"
                if decl.role == ROLE_ANCILLA
                else f"{decl.wire} [{decl.role}]"
            )
            lines.append(f'  "in:{decl.wire}" [shape=ellipse, label="{label}"];')
        for g, inst in enumerate(self.gates):
            lines.append(f'  "g{g}" [shape=box, label="g{g}: {inst.gate.name}"];')
        for decl in self.outputs:
            shape = "doublecircle" if decl.role == ROLE_PRIMARY_OUTPUT else "ellipse"
            lines.append(
                f'  "out:{decl.wire}" [shape={shape}, '
                f'label="{decl.wire} [{decl.role}]"];'
            )
        for g, inst in enumerate(self.gates):
            for wire in inst.input_wires:
                lines.append(f'  {driver_node(wire)} -> "g{g}" [label="{wire}"];')
        for decl in self.outputs:
            lines.append(
                f'  {driver_node(decl.wire)} -> "out:{decl.wire}" [label="{decl.wire}"];'
            )
        lines.append("}")
        return "\n".join(lines)


class NetlistBuilder:
    """Incremental netlist assembly with consumption tracking.

    Wires are introduced by :meth:`primary_input`, :meth:`ancilla` or as
    gate outputs, and each may be consumed at most once.  Calling
    :meth:`build` declares every marked result wire as a primary output,
    classifies every other unconsumed wire as garbage (in creation order)
    and validates the finished netlist.
    """

    def __init__(self, name: str) -> None:
        self.name = name
        self._inputs: list[InputDecl] = []
        self._gates: list[GateInstance] = []
        self._wires: list[str] = []
        self._consumed: set[str] = set()
        self._primary_outputs: list[str] = []
        self._ancilla_serial = 0

    def _new_wire(self, wire: str) -> str:
        _check_wire_name(wire)
        if wire in self._wires:
            raise MalformedNetlist(f"wire {wire!r} already exists")
        self._wires.append(wire)
        return wire

    def primary_input(self, wire: str) -> str:
        """Declare a primary input line and return its wire name."""
        self._new_wire(wire)
        self._inputs.append(InputDecl(wire, ROLE_PRIMARY_INPUT))
        return wire

    def ancilla(self, const: int, wire: str | None = None) -> str:
        """Declare a constant input line (0 or 1) and return its wire name."""
        if wire is None:
            wire = f"{'one' if const else 'zero'}{self._ancilla_serial}"
            self._ancilla_serial += 1
        self._new_wire(wire)
        self._inputs.append(InputDecl(wire, ROLE_ANCILLA, const))
        return wire

    def gate(
        self,
        gate: GatePermutation,
        inputs: Sequence[str],
        outputs: Sequence[str],
    ) -> tuple[str, ...]:
        """Place a gate, consuming ``inputs`` and driving fresh ``outputs``."""
        for wire in inputs:
            if wire not in self._wires:
                raise MalformedNetlist(f"wire {wire!r} does not exist yet")
            if wire in self._consumed:
                raise MalformedNetlist(
                    f"wire {wire!r} was already consumed; reversible wires "
                    f"cannot fan out"
                )
        inst = GateInstance(gate, tuple(inputs), tuple(outputs))
        for wire in inst.output_wires:
            self._new_wire(wire)
        self._consumed.update(inst.input_wires)
        self._gates.append(inst)
        return inst.output_wires

    def primary_output(self, wire: str) -> None:
        """Mark a wire as carrying a circuit result."""
        if wire not in self._wires:
            raise MalformedNetlist(f"wire {wire!r} does not exist")
        if wire in self._consumed:
            raise MalformedNetlist(f"wire {wire!r} was already consumed")
        if wire in self._primary_outputs:
            raise MalformedNetlist(f"wire {wire!r} is already a primary output")
        self._primary_outputs.append(wire)

    def build(self) -> Netlist:
        """Finish and validate: leftovers become garbage in creation order."""
        outputs = [OutputDecl(w, ROLE_PRIMARY_OUTPUT) for w in self._primary_outputs]
        for wire in self._wires:
            if wire not in self._consumed and wire not in self._primary_outputs:
                outputs.append(OutputDecl(wire, ROLE_GARBAGE))
        net = Netlist(
            self.name, tuple(self._inputs), tuple(outputs), tuple(self._gates)
        )
        net.validate()
        return net
