"""Two-level sum-of-products extraction from truth tables.

Given the on-set of a boolean function (and optionally a don't-care set),
:func:`derive_sop` produces a compact, deterministic list of product terms
covering exactly the on-set over the cared-about inputs.  The algorithm is
the classic tabulation method: repeatedly merge implicants that differ in a
single literal until only prime implicants remain, then pick a cover
greedily with fixed tie-breaking so repeated runs always return the same
result.

A product term (cube) is a ``(mask, value)`` pair over the input bits:
input ``x`` satisfies the cube when ``x & mask == value``.  An empty mask is
the constant-true term.
"""

from __future__ import annotations

from collections.abc import Iterable

__all__ = ["Cube", "derive_sop", "eval_sop"]

Cube = tuple[int, int]


def _merge_to_primes(n_vars: int, minterms: Iterable[int]) -> list[Cube]:
    """All prime implicants of the given minterms (cared plus don't-care)."""
    current: set[Cube] = {((1 << n_vars) - 1, m) for m in minterms}
    primes: set[Cube] = set()
    while current:
        merged: set[Cube] = set()
        used: set[Cube] = set()
        ordered = sorted(current)
        index = set(current)
        for mask, value in ordered:
            for bit_pos in range(n_vars):
                bit = 1 << bit_pos
                if not mask & bit:
                    continue
                partner = (mask, value ^ bit)
                if partner in index:
                    merged.add((mask & ~bit, value & ~bit))
                    used.add((mask, value))
                    used.add(partner)
        primes.update(c for c in ordered if c not in used)
        current = merged
    return sorted(primes)


def _popcount(x: int) -> int:
    return bin(x).count("1")


def derive_sop(
    n_vars: int,
    on_set: Iterable[int],
    dc_set: Iterable[int] = (),
) -> tuple[Cube, ...]:
    """Derive a sum-of-products cover for the on-set.

    ``dc_set`` inputs may fall on either side of the function; the cover is
    free to include them when that shrinks a term.  The result is
    deterministic: primes are chosen largest-coverage-first with ties broken
    by literal count and then by the cube encoding.
    """
    on = sorted(set(on_set))
    dc = set(dc_set) - set(on)
    if not on:
        return ()
    primes = _merge_to_primes(n_vars, [*on, *dc])

    chosen: list[Cube] = []
    uncovered = set(on)
    coverage = {
        cube: frozenset(m for m in on if m & cube[0] == cube[1]) for cube in primes
    }
    while uncovered:
        best = min(
            (c for c in primes if coverage[c] & uncovered),
            key=lambda c: (-len(coverage[c] & uncovered), _popcount(c[0]), c),
        )
        chosen.append(best)
        uncovered -= coverage[best]
    return tuple(sorted(chosen))


def eval_sop(cubes: Iterable[Cube], x: int) -> int:
    """Evaluate a sum-of-products cover at input ``x`` (1 when any cube hits)."""
    return int(any(x & mask == value for mask, value in cubes))
