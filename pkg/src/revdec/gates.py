"""Reversible gates represented as verified permutation tables.

A reversible gate on ``k`` lines is a bijection over the ``2**k`` input
patterns.  Every gate in this package is stored as an explicit permutation
table so that reversibility is a property checked on the data, not a promise
attached to a formula.  Line 0 is the top line of a circuit diagram and maps
to bit 0 (the least significant bit) of a pattern integer; a pattern integer
therefore reads bottom-up when written in binary.

The module ships five built-in gates (FREDKIN, TOFFOLI, TS3, NEW_GATE, TSG).
Their tables are generated from their defining boolean output functions at
import time and validated by the same bijectivity check applied to
user-supplied tables.  A plain-text catalog format lets callers replace any
built-in table, for example after re-measuring a gate from a schematic,
without touching code (see :func:`parse_gate_defs` and
:func:`catalog_from_env`).
"""

from __future__ import annotations

import os
from collections.abc import Iterable, Mapping, Sequence
from dataclasses import dataclass

__all__ = [
    "MAX_WIDTH",
    "ENV_GATE_DEFS",
    "BUILTIN_NAMES",
    "NotBijective",
    "WidthMismatch",
    "UnknownGate",
    "ParseError",
    "BitVector",
    "GatePermutation",
    "make_gate",
    "eval_gate",
    "builtin",
    "builtin_catalog",
    "catalog_from_env",
    "tsg_full_adder_wiring",
    "format_gate",
    "parse_gate_defs",
    "load_gate_defs",
]

# Permutation tables grow as 2**width; eight lines (256 entries) is far more
# than any circuit here needs while keeping accidental huge tables out.
MAX_WIDTH = 8

# Environment variable naming a gate-definition text file whose entries
# override the built-in tables (used by the command line interface).
ENV_GATE_DEFS = "REVDEC_GATE_DEFS"


class NotBijective(ValueError):
    """A gate table maps two input patterns to the same output pattern."""


class WidthMismatch(ValueError):
    """A bit pattern was applied to a gate of a different line count."""


class UnknownGate(ValueError):
    """A gate name was requested that no catalog entry defines."""


class ParseError(ValueError):
    """Malformed textual gate definitions or netlist serializations."""


@dataclass(frozen=True)
class BitVector:
    """A fixed-width bit pattern.

    Bit ``i`` of ``value`` is the value carried on line ``i``; bit 0 is the
    least significant.  Instances are immutable and hashable so they can be
    used as dictionary keys when sweeping pattern spaces.
    """

    width: int
    value: int

    def __post_init__(self) -> None:
        if not isinstance(self.width, int) or self.width < 1:
            raise ValueError(f"width must be a positive integer, got {self.width!r}")
        if not isinstance(self.value, int) or not 0 <= self.value < (1 << self.width):
            raise ValueError(
                f"value {self.value!r} does not fit in {self.width} bits"
            )

    @classmethod
    def from_bits(cls, bits: Iterable[int]) -> "BitVector":
        """Build a vector from bit 0 upward: ``from_bits([1, 0, 1])`` is 0b101."""
        seq = tuple(bits)
        if not seq:
            raise ValueError("at least one bit is required")
        value = 0
        for i, bit in enumerate(seq):
            if bit not in (0, 1):
                raise ValueError(f"bit {i} is {bit!r}, expected 0 or 1")
            value |= bit << i
        return cls(len(seq), value)

    def bit(self, i: int) -> int:
        """Return bit ``i`` (line ``i``)."""
        if not 0 <= i < self.width:
            raise IndexError(f"bit index {i} out of range for width {self.width}")
        return (self.value >> i) & 1

    def bits(self) -> tuple[int, ...]:
        """All bits from line 0 upward."""
        return tuple((self.value >> i) & 1 for i in range(self.width))

    def __int__(self) -> int:
        return self.value


@dataclass(frozen=True)
class GatePermutation:
    """A named reversible gate: a validated permutation of input patterns.

    ``table[p]`` is the output pattern produced by input pattern ``p``.
    Construction fails with :class:`NotBijective` if any output pattern
    repeats, so holding an instance is proof the gate loses no information.
    """

    name: str
    width: int
    table: tuple[int, ...]

    def __post_init__(self) -> None:
        if not self.name:
            raise ValueError("gate name must be non-empty")
        if not isinstance(self.width, int) or not 1 <= self.width <= MAX_WIDTH:
            raise ValueError(
                f"gate width must be between 1 and {MAX_WIDTH}, got {self.width!r}"
            )
        object.__setattr__(self, "table", tuple(self.table))
        size = 1 << self.width
        if len(self.table) != size:
            raise ValueError(
                f"gate {self.name!r} of width {self.width} needs a table of "
                f"{size} entries, got {len(self.table)}"
            )
        seen: dict[int, int] = {}
        for pattern, out in enumerate(self.table):
            if not isinstance(out, int) or not 0 <= out < size:
                raise ValueError(
                    f"gate {self.name!r} table entry {pattern} is {out!r}, "
                    f"expected an integer in [0, {size})"
                )
            if out in seen:
                raise NotBijective(
                    f"gate {self.name!r} is not reversible: inputs "
                    f"{seen[out]} and {pattern} both map to output {out}"
                )
            seen[out] = pattern

    def apply(self, pattern: int) -> int:
        """Map an input pattern integer to its output pattern integer."""
        if not 0 <= pattern < (1 << self.width):
            raise ValueError(
                f"pattern {pattern} out of range for width {self.width}"
            )
        return self.table[pattern]

    def inverse(self) -> "GatePermutation":
        """The gate that undoes this one; inputs and outputs swap roles."""
        inv = [0] * len(self.table)
        for pattern, out in enumerate(self.table):
            inv[out] = pattern
        return GatePermutation(f"{self.name}_INV", self.width, tuple(inv))


def make_gate(name: str, width: int, table: Sequence[int]) -> GatePermutation:
    """Validate and wrap a permutation table as a gate.

    Raises :class:`NotBijective` when two inputs collide on one output, and
    ``ValueError`` for structural problems (wrong table length, entries out
    of range, unsupported width).
    """
    return GatePermutation(name, width, tuple(table))


def eval_gate(gate: GatePermutation, pattern: BitVector) -> BitVector:
    """Apply ``gate`` to ``pattern``; widths must agree."""
    if pattern.width != gate.width:
        raise WidthMismatch(
            f"gate {gate.name!r} has {gate.width} lines but the pattern "
            f"has {pattern.width}"
        )
    return BitVector(gate.width, gate.table[pattern.value])


def _table_from_function(width, fn):
    """Tabulate a bit-level output function over every input pattern."""
    rows = []
    for pattern in range(1 << width):
        in_bits = tuple((pattern >> i) & 1 for i in range(width))
        out_bits = fn(*in_bits)
        value = 0
        for i, bit in enumerate(out_bits):
            value |= bit << i
        rows.append(value)
    return tuple(rows)


def _fredkin(a, b, c):
    # Controlled swap: line 0 passes through and selects whether lines 1 and
    # 2 exchange their values.
    if a:
        return (a, c, b)
    return (a, b, c)


def _toffoli(a, b, c):
    # Controlled-controlled NOT: lines 0 and 1 pass through, line 2 picks up
    # their AND.
    return (a, b, c ^ (a & b))


def _ts3(a, b, c):
    # Double pass-through with a three-way parity on the last line.
    return (a, b, a ^ b ^ c)


def _new_gate(a, b, c):
    # First line passes through; the second accumulates a controlled AND and
    # the third computes a NOR-flavored mix of all three lines.
    return (a, (a & b) ^ c, ((a ^ 1) & (c ^ 1)) ^ (b ^ 1))


def _tsg(a, b, c, d):
    # Four-line gate whose second output q feeds the remaining two outputs.
    # Wired as (x, y, 0, carry_in) it behaves as a full adder (see
    # tsg_full_adder_wiring).
    q = ((a ^ 1) & (c ^ 1)) ^ (b ^ 1)
    return (a, q, q ^ d, (q & d) ^ ((a & b) ^ c))


_BUILTINS: dict[str, GatePermutation] = {
    gate.name: gate
    for gate in (
        make_gate("FREDKIN", 3, _table_from_function(3, _fredkin)),
        make_gate("TOFFOLI", 3, _table_from_function(3, _toffoli)),
        make_gate("TS3", 3, _table_from_function(3, _ts3)),
        make_gate("NEW_GATE", 3, _table_from_function(3, _new_gate)),
        make_gate("TSG", 4, _table_from_function(4, _tsg)),
    )
}

BUILTIN_NAMES: tuple[str, ...] = tuple(_BUILTINS)


def builtin(name: str) -> GatePermutation:
    """Look up a built-in gate by name (case-insensitive)."""
    gate = _BUILTINS.get(name.upper())
    if gate is None:
        raise UnknownGate(
            f"unknown gate {name!r}; built-ins are {', '.join(BUILTIN_NAMES)}"
        )
    return gate


def builtin_catalog() -> dict[str, GatePermutation]:
    """A fresh name-to-gate mapping of the built-in gates."""
    return dict(_BUILTINS)


def tsg_full_adder_wiring(x: int, y: int, cin: int) -> tuple[int, int, tuple[int, int]]:
    """Evaluate one TSG wired as a full adder.

    The operands ride lines 0 and 1, line 2 is held at constant 0 and the
    incoming carry enters on line 3.  Returns ``(sum, carry_out, residue)``
    where ``residue`` is the pair of values left on lines 0 and 1; those two
    lines do not carry adder results and become garbage unless a later gate
    reuses them.
    """
    for label, bit in (("x", x), ("y", y), ("cin", cin)):
        if bit not in (0, 1):
            raise ValueError(f"{label} must be 0 or 1, got {bit!r}")
    out = eval_gate(_BUILTINS["TSG"], BitVector.from_bits((x, y, 0, cin)))
    return out.bit(2), out.bit(3), (out.bit(0), out.bit(1))


def format_gate(gate: GatePermutation) -> str:
    """Render a gate in the catalog text format: ``NAME WIDTH P0 P1 ...``."""
    return " ".join([gate.name, str(gate.width), *map(str, gate.table)])


def parse_gate_defs(text: str) -> dict[str, GatePermutation]:
    """Parse a gate-definition text block into a name-to-gate mapping.

    Each non-empty line defines one gate as ``NAME WIDTH P0 P1 ... P(2^W-1)``
    with whitespace-separated integer entries.  Lines starting with ``#`` are
    comments.  Raises :class:`ParseError` for malformed lines and
    :class:`NotBijective` for well-formed lines whose table repeats an
    output pattern.
    """
    gates: dict[str, GatePermutation] = {}
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith("#"):
            continue
        fields = line.split()
        if len(fields) < 2:
            raise ParseError(f"line {lineno}: expected 'NAME WIDTH P0 ...'")
        name = fields[0].upper()
        try:
            width = int(fields[1])
            table = [int(f) for f in fields[2:]]
        except ValueError as exc:
            raise ParseError(f"line {lineno}: non-integer field ({exc})") from exc
        if not 1 <= width <= MAX_WIDTH:
            raise ParseError(
                f"line {lineno}: width {width} out of range 1..{MAX_WIDTH}"
            )
        if len(table) != 1 << width:
            raise ParseError(
                f"line {lineno}: gate {name!r} of width {width} needs "
                f"{1 << width} table entries, got {len(table)}"
            )
        if name in gates:
            raise ParseError(f"line {lineno}: gate {name!r} defined twice")
        try:
            gates[name] = make_gate(name, width, table)
        except NotBijective:
            raise
        except ValueError as exc:
            raise ParseError(f"line {lineno}: {exc}") from exc
    return gates


def load_gate_defs(path: str) -> dict[str, GatePermutation]:
    """Read and parse a gate-definition file."""
    with open(path, "r", encoding="utf-8") as handle:
        return parse_gate_defs(handle.read())


def catalog_from_env(environ: Mapping[str, str] | None = None) -> dict[str, GatePermutation]:
    """Built-in gates, overlaid with definitions from ``REVDEC_GATE_DEFS``.

    When the environment variable is set it must name a readable
    gate-definition file; entries in the file replace (or extend) the
    built-in tables by name.  With the variable unset this is exactly
    :func:`builtin_catalog`.
    """
    env = os.environ if environ is None else environ
    gates = builtin_catalog()
    path = env.get(ENV_GATE_DEFS)
    if path:
        gates.update(load_gate_defs(path))
    return gates
