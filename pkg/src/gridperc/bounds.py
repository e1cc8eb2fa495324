"""Lower bound, divisibility precondition, and seed-set classification.

A percolating set under the 3-neighbour process has at least (ab+ac+bc)/3
cells.  A grid is perfect when some percolating set meets the bound exactly,
optimal when some percolating set meets its ceiling.  All arithmetic here is
exact (integers / Fraction): no floats anywhere near the bound.
"""

from __future__ import annotations

import enum
from dataclasses import dataclass
from fractions import Fraction

from .engine import PercolationTrace, degree_pair_sum, percolate
from .grid import CellSet, GridDims


class Status(enum.IntEnum):
    """Ordered: Perfect implies Optimal implies Percolating."""

    NOT_PERCOLATING = 0
    PERCOLATING = 1
    OPTIMAL = 2
    PERFECT = 3

    def __str__(self) -> str:
        return {
            Status.NOT_PERCOLATING: "NotPercolating",
            Status.PERCOLATING: "Percolating",
            Status.OPTIMAL: "Optimal",
            Status.PERFECT: "Perfect",
        }[self]

    @staticmethod
    def parse(text: str) -> "Status":
        for status in Status:
            if str(status).lower() == text.strip().lower():
                return status
        raise ValueError(f"unknown status {text!r}")


def surface_sum(dims: GridDims) -> int:
    """ab + ac + bc."""
    a, b, c = dims.as_tuple()
    return a * b + a * c + b * c


def lower_bound(dims: GridDims) -> tuple[Fraction, int]:
    """Exact (ab+ac+bc)/3 and its ceiling."""
    s = surface_sum(dims)
    return Fraction(s, 3), -(-s // 3)


def perfect_precondition(dims: GridDims) -> bool:
    """Whether 3 | ab+ac+bc, via the congruence characterization:
    two of a, b, c divisible by three, or all three in the same class mod 3.
    """
    residues = sorted(side % 3 for side in dims.as_tuple())
    if residues.count(0) >= 2:
        return True
    return residues[0] == residues[1] == residues[2]


@dataclass(frozen=True)
class Classification:
    """Outcome of simulating a seed set and comparing its size to the bound.

    ``status`` speaks only about this set: OPTIMAL means the set's size equals
    the ceiling of the bound, not that no smaller set exists (grid-level
    minimality is the search module's job).
    """

    dims: GridDims
    percolates: bool
    size: int
    lower_bound_exact: Fraction
    lower_bound_ceil: int
    status: Status
    trace: PercolationTrace


def classify(dims: GridDims, seeds: CellSet, r: int = 3, max_steps: int | None = None) -> Classification:
    """Simulate and classify.  Truncation raises (never silently NotPercolating)."""
    trace = percolate(dims, r, seeds, max_steps)
    size = len(seeds)
    exact, ceil = lower_bound(dims)
    s = surface_sum(dims)
    if not trace.percolated:
        status = Status.NOT_PERCOLATING
    elif 3 * size == s:
        status = Status.PERFECT
    elif size == ceil:
        status = Status.OPTIMAL
    else:
        status = Status.PERCOLATING
    return Classification(
        dims=dims,
        percolates=trace.percolated,
        size=size,
        lower_bound_exact=exact,
        lower_bound_ceil=ceil,
        status=status,
        trace=trace,
    )


@dataclass(frozen=True)
class AuditReport:
    """Equality analysis of the surface quantity along one simulation.

    The three conditions hold together exactly when 6|A|-n(A) stays constant,
    which for a percolating set happens exactly at the size bound:
      (i)  the seeds form an independent set,
      (ii) every infected non-seed turned with exactly 3 previously infected
           neighbours,
      (iii) no two adjacent cells turned at the same step.
    """

    seeds_independent: bool
    all_exactly_three: bool
    no_adjacent_simultaneous: bool
    excess_infections: tuple[int, ...]  # cells that turned with > 3 prior neighbours
    adjacent_same_step: tuple[tuple[int, int], ...]

    @property
    def all_pass(self) -> bool:
        return self.seeds_independent and self.all_exactly_three and self.no_adjacent_simultaneous


def perfect_audit(trace: PercolationTrace, seeds: CellSet) -> AuditReport:
    """Check the three equality conditions on a finished r=3 trace."""
    dims = trace.dims
    independent = degree_pair_sum(dims, seeds) == 0

    excess = []
    for i, t in enumerate(trace.infection_time):
        if t is not None and t >= 1 and trace.neighbours_at_infection[i] != 3:
            excess.append(i)

    adjacent_pairs = []
    times = trace.infection_time
    bc = dims.b * dims.c
    c = dims.c
    for i, t in enumerate(times):
        if t is None or t == 0:
            continue
        # only +direction neighbours, so each pair is reported once
        candidates = []
        if (i + 1) % c != 0:
            candidates.append(i + 1)
        if (i % bc) // c < dims.b - 1:
            candidates.append(i + c)
        if i // bc < dims.a - 1:
            candidates.append(i + bc)
        for j in candidates:
            if times[j] == t:
                adjacent_pairs.append((i, j))

    return AuditReport(
        seeds_independent=independent,
        all_exactly_three=not excess,
        no_adjacent_simultaneous=not adjacent_pairs,
        excess_infections=tuple(excess),
        adjacent_same_step=tuple(adjacent_pairs),
    )
