"""Classical (irreversible) models of three one-digit BCD adders.

Every adder takes two binary-coded-decimal digits plus a carry-in and
produces a decimal digit plus a carry-out.  The three architectures differ
in how they obtain the binary stage result and the decimal-carry decision:

* ``conventional``: a four-bit ripple adder, a carry-detection layer that
  fires when the binary result exceeds nine, and a conditional add-six
  correction stage.
* ``cla``: per-position generate/propagate/half-sum signals combined by
  carry-look-ahead aggregates, evaluated in two variants.  The ``verbatim``
  variant reproduces an as-given set of direct sum equations exactly as
  printed, including their faults; the ``corrected`` variant derives
  equivalent-cost sum-of-products equations from the decimal truth table
  and is exact.
* ``carry_skip``: the conventional datapath plus a block-propagate skip
  path that forwards the incoming carry straight to the detection layer
  whenever every bit position propagates, shortening the critical path.

:func:`oracle` is the ground truth all of them are judged against; it uses
plain integer arithmetic and nothing from the circuit models.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from typing import Iterator, Sequence

from .sop import derive_sop, eval_sop

__all__ = [
    "InvalidBcd",
    "LengthMismatch",
    "BcdOperands",
    "BcdResult",
    "ClaSignals",
    "ConventionalTrace",
    "SkipSignals",
    "CLA_VERBATIM",
    "CLA_CORRECTED",
    "DECIMAL_ARCHITECTURES",
    "valid_operands",
    "oracle",
    "conventional_add",
    "detection_terms",
    "naive_detection_terms",
    "cla_signals",
    "cla_add",
    "carry_skip_add",
    "decimal_add",
]

CLA_VERBATIM = "verbatim"
CLA_CORRECTED = "corrected"


class InvalidBcd(ValueError):
    """An operand digit is outside the decimal range 0 through 9."""


class LengthMismatch(ValueError):
    """Multi-digit operands have different digit counts."""


@dataclass(frozen=True)
class BcdOperands:
    """One digit-adder input: two decimal digits and a carry-in bit."""

    a: int
    b: int
    cin: int

    def __post_init__(self) -> None:
        for label, digit in (("a", self.a), ("b", self.b)):
            if not isinstance(digit, int) or not 0 <= digit <= 9:
                raise InvalidBcd(f"operand {label}={digit!r} is not a BCD digit")
        if self.cin not in (0, 1):
            raise ValueError(f"cin must be 0 or 1, got {self.cin!r}")

    def a_bits(self) -> tuple[int, int, int, int]:
        return tuple((self.a >> i) & 1 for i in range(4))  # type: ignore[return-value]

    def b_bits(self) -> tuple[int, int, int, int]:
        return tuple((self.b >> i) & 1 for i in range(4))  # type: ignore[return-value]


@dataclass(frozen=True)
class BcdResult:
    """One digit-adder output: a four-bit sum value and a carry-out bit.

    ``sum`` ranges over 0..15 so that measured behavior of faulty equation
    sets can be represented; results consistent with :func:`oracle` always
    satisfy ``sum <= 9`` and ``10 * cout + sum == a + b + cin``.
    """

    sum: int
    cout: int

    def __post_init__(self) -> None:
        if not isinstance(self.sum, int) or not 0 <= self.sum <= 15:
            raise ValueError(f"sum {self.sum!r} does not fit in four bits")
        if self.cout not in (0, 1):
            raise ValueError(f"cout must be 0 or 1, got {self.cout!r}")

    def sum_bits(self) -> tuple[int, int, int, int]:
        return tuple((self.sum >> i) & 1 for i in range(4))  # type: ignore[return-value]


@dataclass(frozen=True)
class ClaSignals:
    """The look-ahead signal layer for one digit addition.

    ``g``, ``p`` and ``h`` are the per-position generate (both operand bits
    set), propagate (at least one set) and half-sum (exactly one set)
    signals, indexed from the least significant position.  ``m`` fires when
    the operands' upper three positions alone push the digit total past
    nine; ``n`` fires when they reach the boundary where a carry out of
    position 0 completes the push; ``c1`` is that carry out of position 0.
    The decimal carry is therefore ``m | (n & c1)``.
    """

    g: tuple[int, int, int, int]
    p: tuple[int, int, int, int]
    h: tuple[int, int, int, int]
    m: int
    n: int
    c1: int


@dataclass(frozen=True)
class ConventionalTrace:
    """Intermediate signals of the conventional adder.

    ``z`` is the packed four-bit binary stage sum, ``k`` the binary stage
    carry-out, and ``correct`` the decimal-carry trigger that also enables
    the add-six correction.
    """

    z: int
    k: int
    correct: int

    def z_bits(self) -> tuple[int, int, int, int]:
        return tuple((self.z >> i) & 1 for i in range(4))  # type: ignore[return-value]


@dataclass(frozen=True)
class SkipSignals:
    """Intermediate signals of the carry-skip adder.

    ``p_bits`` are the per-position propagate (XOR) signals, ``big_p``
    their conjunction (the block propagate), ``c4`` the ripple carry out of
    the binary stage, and ``cout`` the decimal carry actually produced.
    When ``big_p`` is set the skip path forwards the incoming carry without
    waiting for ``c4``; on valid digits the forwarded value always equals
    ``c4``, it is just available sooner.
    """

    p_bits: tuple[int, int, int, int]
    big_p: int
    c4: int
    cout: int


def valid_operands() -> Iterator[BcdOperands]:
    """All 200 valid digit-adder inputs in canonical sweep order.

    The order (``a`` outermost, then ``b``, then ``cin``) is the one every
    exhaustive check and every "first failing input" report in this package
    uses.
    """
    for a in range(10):
        for b in range(10):
            for cin in (0, 1):
                yield BcdOperands(a, b, cin)


def oracle(op: BcdOperands) -> BcdResult:
    """Reference decimal addition: plain integer arithmetic, no circuitry."""
    total = op.a + op.b + op.cin
    return BcdResult(sum=total % 10, cout=total // 10)


# ----------------------------------------------------------------------
# shared four-bit binary stage
# ----------------------------------------------------------------------


def _ripple4(
    a_bits: Sequence[int], b_bits: Sequence[int], cin: int
) -> tuple[tuple[int, int, int, int], int]:
    """Four chained full adders; returns (sum bits, carry out)."""
    carry = cin
    out = []
    for x, y in zip(a_bits, b_bits):
        out.append(x ^ y ^ carry)
        carry = (x & y) | (carry & (x ^ y))
    return tuple(out), carry  # type: ignore[return-value]


def _add_six(z_bits: Sequence[int]) -> tuple[int, int, int, int]:
    """Add the constant 0110 to a four-bit value, discarding the carry."""
    six = (0, 1, 1, 0)
    out, _ = _ripple4(z_bits, six, 0)
    return out


def _pack(bits: Sequence[int]) -> int:
    value = 0
    for i, bit in enumerate(bits):
        value |= bit << i
    return value


# ----------------------------------------------------------------------
# conventional adder
# ----------------------------------------------------------------------


def detection_terms(k: int, z: int) -> tuple[int, int, int]:
    """The three mutually exclusive decimal-carry conditions.

    Given the binary stage carry ``k`` and packed sum ``z``, the terms are
    ``k`` (total is 16 or more), ``z3 & z2`` (total 12..15) and
    ``z3 & ~z2 & z1`` (total 10..11).  At most one term fires for any
    reachable ``(k, z)``, which is what makes OR and XOR interchangeable
    when combining them.
    """
    z1, z2, z3 = (z >> 1) & 1, (z >> 2) & 1, (z >> 3) & 1
    return k, z3 & z2, z3 & (z2 ^ 1) & z1


def naive_detection_terms(k: int, z: int) -> tuple[int, int, int]:
    """The textbook non-exclusive carry conditions ``(k, z3&z2, z3&z1)``.

    Correct when combined with OR, wrong when combined with XOR: both
    pair terms fire at once for binary totals 14 and 15.  Kept as the
    negative control for the OR-to-XOR substitution audit.
    """
    z1, z2, z3 = (z >> 1) & 1, (z >> 2) & 1, (z >> 3) & 1
    return k, z3 & z2, z3 & z1


def conventional_add(op: BcdOperands) -> tuple[BcdResult, ConventionalTrace]:
    """Ripple binary stage, exclusive carry detection, add-six correction."""
    z_bits, k = _ripple4(op.a_bits(), op.b_bits(), op.cin)
    z = _pack(z_bits)
    t_k, t_high, t_mid = detection_terms(k, z)
    correct = t_k | t_high | t_mid
    sum_bits = _add_six(z_bits) if correct else z_bits
    trace = ConventionalTrace(z=z, k=k, correct=correct)
    return BcdResult(sum=_pack(sum_bits), cout=correct), trace


# ----------------------------------------------------------------------
# carry-look-ahead adder
# ----------------------------------------------------------------------


def cla_signals(op: BcdOperands) -> ClaSignals:
    """Compute the look-ahead signal layer for one digit addition.

    The aggregates ``m`` and ``n`` are disjunctions of their product
    terms: each product identifies one way the upper positions reach the
    required weight, and several can hold at once (for example both
    operands equal to 9), so combining them exclusively would be wrong.
    """
    a, b = op.a_bits(), op.b_bits()
    g = tuple(x & y for x, y in zip(a, b))
    p = tuple(x | y for x, y in zip(a, b))
    h = tuple(x ^ y for x, y in zip(a, b))
    m = g[3] | (p[3] & p[2]) | (p[3] & p[1]) | (g[2] & p[1])
    n = p[3] | g[2] | (p[2] & g[1])
    c1 = g[0] | (p[0] & op.cin)
    return ClaSignals(g=g, p=p, h=h, m=m, n=n, c1=c1)  # type: ignore[arg-type]


def _cla_verbatim_bits(op: BcdOperands) -> tuple[tuple[int, int, int, int], int]:
    """The as-given direct sum equations, transcribed without repair.

    These are measured equations, not trusted ones: two of the four sum
    columns disagree with the decimal truth table (see
    ``revdec.verification.cla_errata`` for the exact failure set).  The
    carry-out and the remaining columns are exact.
    """
    s = cla_signals(op)
    g, p, h, m, n, c1 = s.g, s.p, s.h, s.m, s.n, s.c1

    def inv(x: int) -> int:
        return x ^ 1

    s0 = h[0] ^ op.cin
    s1 = ((h[1] ^ m) & c1) | (inv(h[1] ^ n) & c1)
    s2 = (
        (inv(p[2]) & g[1])
        ^ (inv(p[3]) & h[2] & inv(p[1]))
        ^ ((g[3] ^ (h[2] & h[1])) & inv(c1))
        ^ (((inv(p[3]) & inv(p[2]) & p[1]) ^ (g[2] & g[1]) ^ (p[3] & p[2])) & c1)
    )
    s3 = ((inv(m) & n) & inv(c1)) ^ (((g[3] & inv(h[3])) ^ (inv(h[3]) & h[2] & h[1])) & c1)
    cout = m | (n & c1)
    return (s0, s1, s2, s3), cout


def _encode_operands(op: BcdOperands) -> int:
    """Pack one input as nine bits: a in 0..3, b in 4..7, cin in bit 8."""
    return op.a | (op.b << 4) | (op.cin << 8)


@lru_cache(maxsize=1)
def _corrected_covers() -> tuple[tuple[tuple[int, int], ...], ...]:
    """Derive exact sum-of-products covers for the five output columns.

    The on-sets come from the decimal truth table over the 200 valid
    inputs; the 312 unreachable operand encodings are don't-cares, which is
    the same freedom the faulty direct equations were designed under.
    """
    care: set[int] = set()
    on_sets: list[list[int]] = [[], [], [], [], []]
    for op in valid_operands():
        x = _encode_operands(op)
        care.add(x)
        result = oracle(op)
        for i, bit in enumerate(result.sum_bits()):
            if bit:
                on_sets[i].append(x)
        if result.cout:
            on_sets[4].append(x)
    dc = [x for x in range(1 << 9) if x not in care]
    return tuple(derive_sop(9, on, dc) for on in on_sets)


def cla_add(op: BcdOperands, variant: str = CLA_CORRECTED) -> BcdResult:
    """Carry-look-ahead digit addition.

    ``variant="verbatim"`` evaluates the as-given direct sum equations
    exactly as printed and can return a wrong digit (the carry-out is
    always right).  ``variant="corrected"`` evaluates the derived exact
    covers.  Both share the same :func:`cla_signals` layer.
    """
    if variant == CLA_VERBATIM:
        bits, cout = _cla_verbatim_bits(op)
        return BcdResult(sum=_pack(bits), cout=cout)
    if variant == CLA_CORRECTED:
        covers = _corrected_covers()
        x = _encode_operands(op)
        bits = tuple(eval_sop(covers[i], x) for i in range(4))
        return BcdResult(sum=_pack(bits), cout=eval_sop(covers[4], x))
    raise ValueError(
        f"unknown variant {variant!r}; use {CLA_VERBATIM!r} or {CLA_CORRECTED!r}"
    )


# ----------------------------------------------------------------------
# carry-skip adder
# ----------------------------------------------------------------------


def carry_skip_add(op: BcdOperands) -> tuple[BcdResult, SkipSignals]:
    """Conventional datapath plus a block-propagate carry-skip path.

    When every bit position propagates (``big_p``), the carry out of the
    binary stage must equal the carry in, so the skip multiplexer forwards
    ``cin`` to the detection layer immediately instead of waiting for the
    ripple chain.  Otherwise the ripple carry ``c4`` is selected.  The two
    mux branches (``big_p & cin`` and ``~big_p & c4``) can never both be
    true, which again licenses an exclusive combination.
    """
    a, b = op.a_bits(), op.b_bits()
    z_bits, c4 = _ripple4(a, b, op.cin)
    p_bits = tuple(x ^ y for x, y in zip(a, b))
    big_p = p_bits[0] & p_bits[1] & p_bits[2] & p_bits[3]
    k = op.cin if big_p else c4
    z = _pack(z_bits)
    t_k, t_high, t_mid = detection_terms(k, z)
    correct = t_k | t_high | t_mid
    sum_bits = _add_six(z_bits) if correct else z_bits
    signals = SkipSignals(p_bits=p_bits, big_p=big_p, c4=c4, cout=correct)  # type: ignore[arg-type]
    return BcdResult(sum=_pack(sum_bits), cout=correct), signals


# ----------------------------------------------------------------------
# multi-digit addition
# ----------------------------------------------------------------------

DECIMAL_ARCHITECTURES = ("conventional", "cla_corrected", "carry_skip")


@lru_cache(maxsize=None)
def _digit_stage(a: int, b: int, cin: int, arch: str) -> tuple[int, int]:
    op = BcdOperands(a, b, cin)
    if arch == "conventional":
        result = conventional_add(op)[0]
    elif arch == "cla_corrected":
        result = cla_add(op, CLA_CORRECTED)
    elif arch == "carry_skip":
        result = carry_skip_add(op)[0]
    else:
        raise ValueError(
            f"unknown architecture {arch!r}; choose from {DECIMAL_ARCHITECTURES}"
        )
    return result.sum, result.cout


def decimal_add(
    x_digits: Sequence[int],
    y_digits: Sequence[int],
    cin: int = 0,
    arch: str = "conventional",
) -> tuple[list[int], int]:
    """Add two equal-length little-endian BCD digit strings.

    Digit 0 is the least significant.  Returns the sum digits (same length
    as the inputs) and the final carry.  Raises :class:`LengthMismatch`
    for unequal lengths, :class:`InvalidBcd` for out-of-range digits and
    ``ValueError`` for an unknown architecture or carry bit.
    """
    if len(x_digits) != len(y_digits):
        raise LengthMismatch(
            f"operands have {len(x_digits)} and {len(y_digits)} digits"
        )
    if not x_digits:
        raise ValueError("operands must have at least one digit")
    if cin not in (0, 1):
        raise ValueError(f"cin must be 0 or 1, got {cin!r}")
    if arch not in DECIMAL_ARCHITECTURES:
        raise ValueError(
            f"unknown architecture {arch!r}; choose from {DECIMAL_ARCHITECTURES}"
        )
    carry = cin
    out: list[int] = []
    for x, y in zip(x_digits, y_digits):
        digit, carry = _digit_stage(x, y, carry, arch)
        out.append(digit)
    return out, carry
