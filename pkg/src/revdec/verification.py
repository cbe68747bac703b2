"""Exhaustive verification and measurement of the adder implementations.

Everything here is judged against :func:`revdec.classical.oracle` by
sweeping all 200 valid digit-adder inputs; nothing is sampled.  The module
answers four questions:

* does an architecture compute decimal addition (:func:`verify_architecture`),
* exactly where do the as-given direct carry-look-ahead sum equations go
  wrong (:func:`cla_errata`),
* at which combination points is replacing OR with XOR sound, and where
  does the same substitution break (:func:`xor_substitution_audit`),
* how do the reversible builds' costs compare against the fixed reference
  design and the per-architecture design targets (:func:`table1_report`).
"""

from __future__ import annotations

import json
from collections.abc import Callable, Mapping
from dataclasses import dataclass

from .classical import (
    CLA_CORRECTED,
    CLA_VERBATIM,
    BcdOperands,
    BcdResult,
    carry_skip_add,
    cla_add,
    conventional_add,
    detection_terms,
    naive_detection_terms,
    oracle,
    valid_operands,
)
from .gates import GatePermutation
from .netlist import CostMetrics
from .reversible import (
    ReversibleAdderBuild,
    build_carry_skip_reversible,
    build_conventional_reversible,
    simulate_digit_add,
)

__all__ = [
    "ARCHITECTURES",
    "REVERSIBLE_ARCHITECTURES",
    "BASELINE_COSTS",
    "DESIGN_TARGETS",
    "EQUATION_NAMES",
    "Mismatch",
    "VerificationReport",
    "ErrataEntry",
    "SubstitutionSite",
    "Table1Row",
    "Table1Report",
    "verify_architecture",
    "evaluate_printed_equation",
    "expected_column",
    "cla_agreement",
    "cla_errata",
    "xor_substitution_audit",
    "table1_report",
]

ARCHITECTURES = (
    "conventional",
    "cla_verbatim",
    "cla_corrected",
    "carry_skip",
    "rev_conventional",
    "rev_carry_skip",
)

REVERSIBLE_ARCHITECTURES = ("rev_conventional", "rev_carry_skip")

# Gate and garbage counts of the fixed prior reversible design every cost
# comparison is anchored to.  These are quoted constants, not measurements.
BASELINE_COSTS = (23, 22)

# Design targets (gates, garbage) for the two builds in this package.
DESIGN_TARGETS: dict[str, tuple[int, int]] = {
    "rev_conventional": (11, 22),
    "rev_carry_skip": (15, 27),
}

EQUATION_NAMES = (
    "S0_VERBATIM",
    "S1_VERBATIM",
    "S2_VERBATIM",
    "S3_VERBATIM",
    "COUT_VERBATIM",
)


@dataclass(frozen=True)
class Mismatch:
    """One input where an implementation disagrees with the oracle."""

    operands: BcdOperands
    expected: BcdResult
    actual: BcdResult


@dataclass(frozen=True)
class VerificationReport:
    """Outcome of one exhaustive architecture sweep."""

    architecture: str
    total: int
    mismatches: tuple[Mismatch, ...]
    metrics: CostMetrics | None = None
    targets: tuple[int, int] | None = None

    @property
    def agreement(self) -> float:
        return (self.total - len(self.mismatches)) / self.total

    @property
    def passed(self) -> bool:
        return not self.mismatches

    def to_json_dict(self) -> dict:
        return {
            "architecture": self.architecture,
            "total": self.total,
            "mismatches": [
                {
                    "a": m.operands.a,
                    "b": m.operands.b,
                    "cin": m.operands.cin,
                    "expected": {"sum": m.expected.sum, "cout": m.expected.cout},
                    "actual": {"sum": m.actual.sum, "cout": m.actual.cout},
                }
                for m in self.mismatches
            ],
            "agreement": self.agreement,
            "metrics": self.metrics.as_dict() if self.metrics else None,
            "targets": (
                {"gates": self.targets[0], "garbage": self.targets[1]}
                if self.targets
                else None
            ),
        }


def _build_for(
    architecture: str, catalog: Mapping[str, GatePermutation] | None
) -> ReversibleAdderBuild:
    if architecture == "rev_conventional":
        return build_conventional_reversible(catalog)
    return build_carry_skip_reversible(catalog)


def _result_function(
    architecture: str, catalog: Mapping[str, GatePermutation] | None
) -> tuple[Callable[[BcdOperands], BcdResult], ReversibleAdderBuild | None]:
    if architecture == "conventional":
        return lambda op: conventional_add(op)[0], None
    if architecture == "cla_verbatim":
        return lambda op: cla_add(op, CLA_VERBATIM), None
    if architecture == "cla_corrected":
        return lambda op: cla_add(op, CLA_CORRECTED), None
    if architecture == "carry_skip":
        return lambda op: carry_skip_add(op)[0], None
    if architecture in REVERSIBLE_ARCHITECTURES:
        build = _build_for(architecture, catalog)
        return lambda op: simulate_digit_add(build, op), build
    raise ValueError(
        f"unknown architecture {architecture!r}; choose from {ARCHITECTURES}"
    )


def verify_architecture(
    architecture: str,
    catalog: Mapping[str, GatePermutation] | None = None,
) -> VerificationReport:
    """Sweep all 200 valid inputs and report every oracle disagreement.

    Reversible architectures are built once (optionally from a replacement
    gate catalog) and simulated per input; their reports carry the measured
    cost metrics and the design targets.
    """
    fn, build = _result_function(architecture, catalog)
    mismatches = []
    total = 0
    for op in valid_operands():
        total += 1
        expected = oracle(op)
        actual = fn(op)
        if actual != expected:
            mismatches.append(Mismatch(op, expected, actual))
    return VerificationReport(
        architecture=architecture,
        total=total,
        mismatches=tuple(mismatches),
        metrics=build.metrics if build else None,
        targets=DESIGN_TARGETS.get(architecture),
    )


# ----------------------------------------------------------------------
# equation errata
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class ErrataEntry:
    """The first input on which one as-given equation returns a wrong bit."""

    equation: str
    first_failing_input: BcdOperands
    observed: int
    expected: int


def evaluate_printed_equation(name: str, op: BcdOperands) -> int:
    """The bit the as-given equation set actually produces for one column."""
    if name not in EQUATION_NAMES:
        raise ValueError(f"unknown equation {name!r}; choose from {EQUATION_NAMES}")
    result = cla_add(op, CLA_VERBATIM)
    if name == "COUT_VERBATIM":
        return result.cout
    return result.sum_bits()[EQUATION_NAMES.index(name)]


def expected_column(name: str, op: BcdOperands) -> int:
    """The bit the decimal truth table requires for one column."""
    if name not in EQUATION_NAMES:
        raise ValueError(f"unknown equation {name!r}; choose from {EQUATION_NAMES}")
    result = oracle(op)
    if name == "COUT_VERBATIM":
        return result.cout
    return result.sum_bits()[EQUATION_NAMES.index(name)]


def cla_agreement() -> dict[str, tuple[int, int]]:
    """Per-equation ``(matching inputs, total inputs)`` over the valid sweep."""
    counts = {name: 0 for name in EQUATION_NAMES}
    total = 0
    for op in valid_operands():
        total += 1
        for name in EQUATION_NAMES:
            if evaluate_printed_equation(name, op) == expected_column(name, op):
                counts[name] += 1
    return {name: (counts[name], total) for name in EQUATION_NAMES}


def cla_errata() -> tuple[ErrataEntry, ...]:
    """One entry per faulty as-given equation, in column order.

    Each entry records the first input (canonical sweep order) on which the
    equation's output bit disagrees with the decimal truth table, together
    with both bits.  Equations that agree everywhere produce no entry, so
    an empty result would mean the printed equations are fully correct.
    """
    entries = []
    for name in EQUATION_NAMES:
        for op in valid_operands():
            observed = evaluate_printed_equation(name, op)
            expected = expected_column(name, op)
            if observed != expected:
                entries.append(
                    ErrataEntry(
                        equation=name,
                        first_failing_input=op,
                        observed=observed,
                        expected=expected,
                    )
                )
                break
    return tuple(entries)


# ----------------------------------------------------------------------
# OR-to-XOR substitution audit
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class SubstitutionSite:
    """One combination point where OR might be replaced by XOR.

    The substitution is sound exactly when at most one term can be true at
    a time.  ``or_equals_xor_on_valid`` reports whether the two operators
    agree on every valid adder input; ``first_valid_counterexample`` and
    ``valid_counterexample_count`` document the failures when they do not.
    ``diverges_off_domain`` reports whether the operators can disagree once
    the term signals are allowed to take combinations no valid input
    produces, with one witnessing signal valuation; a site that cannot
    diverge even then is exclusive by structure rather than by reachable
    cases.
    """

    site: str
    terms: tuple[str, ...]
    or_equals_xor_on_valid: bool
    first_valid_counterexample: BcdOperands | None
    valid_counterexample_count: int
    diverges_off_domain: bool
    off_domain_example: dict[str, int] | None

    def to_json_dict(self) -> dict:
        cex = self.first_valid_counterexample
        return {
            "site": self.site,
            "terms": list(self.terms),
            "or_equals_xor_on_valid": self.or_equals_xor_on_valid,
            "first_valid_counterexample": (
                {"a": cex.a, "b": cex.b, "cin": cex.cin} if cex else None
            ),
            "valid_counterexample_count": self.valid_counterexample_count,
            "diverges_off_domain": self.diverges_off_domain,
            "off_domain_example": self.off_domain_example,
        }


def _audit_terms(
    site: str,
    term_names: tuple[str, ...],
    valid_terms: Callable[[BcdOperands], tuple[int, ...]],
    all_valuations: Callable[[], "list[tuple[dict[str, int], tuple[int, ...]]]"],
) -> SubstitutionSite:
    first = None
    count = 0
    for op in valid_operands():
        terms = valid_terms(op)
        or_value = int(any(terms))
        xor_value = 0
        for t in terms:
            xor_value ^= t
        if or_value != xor_value:
            count += 1
            if first is None:
                first = op
    off_example = None
    for signals, terms in all_valuations():
        or_value = int(any(terms))
        xor_value = 0
        for t in terms:
            xor_value ^= t
        if or_value != xor_value:
            off_example = signals
            break
    return SubstitutionSite(
        site=site,
        terms=term_names,
        or_equals_xor_on_valid=first is None,
        first_valid_counterexample=first,
        valid_counterexample_count=count,
        diverges_off_domain=off_example is not None,
        off_domain_example=off_example,
    )


def xor_substitution_audit() -> tuple[SubstitutionSite, ...]:
    """Audit each OR combination point the designs replace with XOR.

    Three sites are audited: the decimal-carry detection layer with its
    exclusive condition set, the same layer with the textbook non-exclusive
    condition set (the negative control, which genuinely breaks), and the
    carry-skip selection point.  Off-domain behavior is measured by letting
    the underlying term signals range over every combination, including
    those no valid digit pair can produce.
    """

    def detection_valid(op: BcdOperands) -> tuple[int, ...]:
        _, trace = conventional_add(op)
        return detection_terms(trace.k, trace.z)

    def detection_all() -> list[tuple[dict[str, int], tuple[int, ...]]]:
        return [
            ({"k": k, "z": z}, detection_terms(k, z))
            for k in (0, 1)
            for z in range(16)
        ]

    def naive_valid(op: BcdOperands) -> tuple[int, ...]:
        _, trace = conventional_add(op)
        return naive_detection_terms(trace.k, trace.z)

    def naive_all() -> list[tuple[dict[str, int], tuple[int, ...]]]:
        return [
            ({"k": k, "z": z}, naive_detection_terms(k, z))
            for k in (0, 1)
            for z in range(16)
        ]

    def mux_valid(op: BcdOperands) -> tuple[int, ...]:
        _, signals = carry_skip_add(op)
        return (
            signals.big_p & op.cin,
            (signals.big_p ^ 1) & signals.c4,
        )

    def mux_all() -> list[tuple[dict[str, int], tuple[int, ...]]]:
        return [
            (
                {"big_p": bp, "cin": cin, "c4": c4},
                (bp & cin, (bp ^ 1) & c4),
            )
            for bp in (0, 1)
            for cin in (0, 1)
            for c4 in (0, 1)
        ]

    return (
        _audit_terms(
            "decimal_carry_detection",
            ("k", "z3&z2", "z3&~z2&z1"),
            detection_valid,
            detection_all,
        ),
        _audit_terms(
            "naive_detection",
            ("k", "z3&z2", "z3&z1"),
            naive_valid,
            naive_all,
        ),
        _audit_terms(
            "skip_mux_select",
            ("big_p&cin", "~big_p&c4"),
            mux_valid,
            mux_all,
        ),
    )


# ----------------------------------------------------------------------
# cost comparison
# ----------------------------------------------------------------------


@dataclass(frozen=True)
class Table1Row:
    """One line of the cost comparison."""

    label: str
    gates: int
    garbage: int
    target_gates: int | None = None
    target_garbage: int | None = None
    delta_gates: int | None = None
    delta_garbage: int | None = None
    fidelity: str | None = None

    def to_json_dict(self) -> dict:
        return {
            "label": self.label,
            "gates": self.gates,
            "garbage": self.garbage,
            "target_gates": self.target_gates,
            "target_garbage": self.target_garbage,
            "delta_gates": self.delta_gates,
            "delta_garbage": self.delta_garbage,
            "fidelity": self.fidelity,
        }


@dataclass(frozen=True)
class Table1Report:
    """Cost comparison of the builds against the fixed reference design."""

    rows: tuple[Table1Row, ...]

    def render(self) -> str:
        header = (
            f"{'architecture':<18} {'gates':>5} {'garbage':>7} "
            f"{'target':>8} {'delta':>8}  fidelity"
        )
        lines = [header, "-" * len(header)]
        for row in self.rows:
            if row.target_gates is None:
                target = delta = "-"
            else:
                target = f"{row.target_gates}/{row.target_garbage}"
                delta = f"{row.delta_gates:+d}/{row.delta_garbage:+d}"
            lines.append(
                f"{row.label:<18} {row.gates:>5} {row.garbage:>7} "
                f"{target:>8} {delta:>8}  {row.fidelity or '-'}"
            )
        return "\n".join(lines)

    def to_json(self, indent: int | None = 2) -> str:
        return json.dumps({"rows": [r.to_json_dict() for r in self.rows]}, indent=indent)


def table1_report(
    catalog: Mapping[str, GatePermutation] | None = None,
) -> Table1Report:
    """Measure both builds and set them beside the quoted reference costs.

    The baseline row repeats the fixed reference constants verbatim; the
    build rows carry measured counts.  Because the wirings are behavioral
    reconstructions, measured-minus-target deltas are always included
    rather than asserting equality with the targets.
    """
    rows = [
        Table1Row(label="baseline", gates=BASELINE_COSTS[0], garbage=BASELINE_COSTS[1])
    ]
    for architecture in REVERSIBLE_ARCHITECTURES:
        build = _build_for(architecture, catalog)
        gates_measured = build.metrics.gate_count
        garbage_measured = build.metrics.garbage_count
        target_gates, target_garbage = DESIGN_TARGETS[architecture]
        rows.append(
            Table1Row(
                label=architecture,
                gates=gates_measured,
                garbage=garbage_measured,
                target_gates=target_gates,
                target_garbage=target_garbage,
                delta_gates=gates_measured - target_gates,
                delta_garbage=garbage_measured - target_garbage,
                fidelity=build.figure_fidelity,
            )
        )
    return Table1Report(rows=tuple(rows))
