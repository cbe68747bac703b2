"""Reversible-logic construction kit for BCD adders.

The package models three one-digit decimal adder architectures
(conventional, carry-look-ahead, carry-skip) as classical boolean circuits,
realizes two of them as reversible gate netlists built from validated
permutation-table gates, and verifies everything exhaustively against a
plain-arithmetic oracle.  See the module docstrings of
:mod:`revdec.gates`, :mod:`revdec.netlist`, :mod:`revdec.classical`,
:mod:`revdec.reversible` and :mod:`revdec.verification` for the layer-by-
layer story, and :mod:`revdec.cli` for the command-line entry points.
"""

from .classical import (
    BcdOperands,
    BcdResult,
    ClaSignals,
    ConventionalTrace,
    InvalidBcd,
    LengthMismatch,
    SkipSignals,
    carry_skip_add,
    cla_add,
    cla_signals,
    conventional_add,
    decimal_add,
    oracle,
    valid_operands,
)
from .gates import (
    BitVector,
    GatePermutation,
    NotBijective,
    ParseError,
    UnknownGate,
    WidthMismatch,
    builtin,
    builtin_catalog,
    catalog_from_env,
    eval_gate,
    make_gate,
    tsg_full_adder_wiring,
)
from .netlist import (
    CostMetrics,
    GateInstance,
    InputDecl,
    MalformedNetlist,
    Netlist,
    NetlistBuilder,
    OutputDecl,
)
from .reversible import (
    ReversibleAdderBuild,
    build_carry_skip_reversible,
    build_conventional_reversible,
    simulate_digit_add,
)
from .verification import (
    cla_errata,
    table1_report,
    verify_architecture,
    xor_substitution_audit,
)

__version__ = "0.1.0"

__all__ = [
    "__version__",
    "BcdOperands",
    "BcdResult",
    "BitVector",
    "ClaSignals",
    "ConventionalTrace",
    "CostMetrics",
    "GateInstance",
    "GatePermutation",
    "InputDecl",
    "InvalidBcd",
    "LengthMismatch",
    "MalformedNetlist",
    "Netlist",
    "NetlistBuilder",
    "NotBijective",
    "OutputDecl",
    "ParseError",
    "ReversibleAdderBuild",
    "SkipSignals",
    "UnknownGate",
    "WidthMismatch",
    "builtin",
    "builtin_catalog",
    "build_carry_skip_reversible",
    "build_conventional_reversible",
    "carry_skip_add",
    "catalog_from_env",
    "cla_add",
    "cla_errata",
    "cla_signals",
    "conventional_add",
    "decimal_add",
    "eval_gate",
    "make_gate",
    "oracle",
    "simulate_digit_add",
    "table1_report",
    "tsg_full_adder_wiring",
    "valid_operands",
    "verify_architecture",
    "xor_substitution_audit",
]
