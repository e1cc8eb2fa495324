"""Synchronous r-neighbour bootstrap process on 3-dimensional grids.

One step infects, simultaneously, every cell with at least ``r`` infected
neighbours; infection is permanent.  The engine works on int bitsets: the six
axis neighbours of every cell are reached with two shifts per axis, and the
"has >= r infected neighbours" test is a bit-sliced saturating counter, so a
step costs a handful of big-int operations regardless of grid size.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

from .grid import CellSet, GridDims, GridError


class SimulationTruncated(RuntimeError):
    """Fixed point not reached within max_steps; never silently reported."""


@lru_cache(maxsize=512)
def _shift_plan(dims: GridDims) -> tuple[tuple[int, int], ...]:
    """(shift, mask) per direction: ``(m << shift) & mask`` when shift > 0,
    ``(m >> -shift) & mask`` otherwise, marks cells whose neighbour in that
    direction is in ``m``.  Masks stop shifts from wrapping across rows/layers.
    """
    a, b, c = dims.as_tuple()
    n = dims.volume
    full = (1 << n) - 1

    col_first = 0  # z == 1
    for k in range(a * b):
        col_first |= 1 << (k * c)
    col_last = col_first << (c - 1)

    row_block = (1 << c) - 1  # y == 1, one layer
    row_first = 0
    for k in range(a):
        row_first |= row_block << (k * b * c)
    row_last = row_first << ((b - 1) * c)

    plan = []
    if c > 1:
        plan.append((1, full & ~col_first))   # neighbour at z-1
        plan.append((-1, full & ~col_last))   # neighbour at z+1
    if b > 1:
        plan.append((c, full & ~row_first))   # y-1
        plan.append((-c, full & ~row_last))   # y+1
    if a > 1:
        plan.append((b * c, full))            # x-1
        plan.append((-(b * c), full))         # x+1
    return tuple(plan)


def _eligible(mask: int, plan: tuple[tuple[int, int], ...], r: int) -> int:
    """Cells with at least r neighbours set in ``mask`` (bit-sliced count)."""
    acc = [0] * r
    for shift, keep in plan:
        nb = (mask << shift) & keep if shift > 0 else (mask >> -shift) & keep
        for k in range(r - 1, 0, -1):
            acc[k] |= acc[k - 1] & nb
        acc[0] |= nb
    return acc[r - 1]


def step_mask(dims: GridDims, r: int, mask: int) -> int:
    """One synchronous step on a raw bitset."""
    return mask | _eligible(mask, _shift_plan(dims), r)


def fixed_point_mask(dims: GridDims, r: int, mask: int, max_steps: int | None = None) -> tuple[int, int]:
    """Iterate to the fixed point; returns (final mask, steps taken).

    Raises SimulationTruncated if max_steps productive steps do not reach it.
    """
    limit = dims.volume if max_steps is None else max_steps
    plan = _shift_plan(dims)
    steps = 0
    while True:
        nxt = mask | _eligible(mask, plan, r)
        if nxt == mask:
            return mask, steps
        if steps >= limit:
            raise SimulationTruncated(f"no fixed point within {limit} steps on {dims}")
        mask = nxt
        steps += 1


def step(dims: GridDims, r: int, current: CellSet) -> CellSet:
    """A_t from A_{t-1}: superset of the input, idempotent at the fixed point."""
    if current.dims != dims:
        raise GridError("cell set belongs to a different grid")
    return CellSet(dims, step_mask(dims, r, current.mask))


@dataclass(frozen=True)
class PercolationTrace:
    """Full history of one simulation plus per-cell audit quantities.

    ``infection_time[i]`` is None for never-infected cells, 0 for seeds.
    ``neighbours_at_infection[i]`` counts neighbours infected strictly before
    the cell turned (0 for seeds): simultaneous adjacent infections do not see
    each other, which is exactly what the perfectness audit needs.
    """

    dims: GridDims
    r: int
    seeds: CellSet
    infection_time: tuple[int | None, ...]
    neighbours_at_infection: tuple[int | None, ...]
    percolated: bool
    steps_taken: int
    frames: tuple[int, ...] = field(repr=False, default=())

    def time_of(self, cell) -> int | None:
        return self.infection_time[self.dims.index(cell)]

    @property
    def final(self) -> CellSet:
        return CellSet(self.dims, self.frames[-1])

    def never_infected(self) -> list[int]:
        return [i for i, t in enumerate(self.infection_time) if t is None]


def percolate(dims: GridDims, r: int, seeds: CellSet, max_steps: int | None = None) -> PercolationTrace:
    """Run to the fixed point, recording infection times and audit counts.

    max_steps defaults to a*b*c, which always suffices: every productive step
    infects at least one cell.  Hitting max_steps before the fixed point
    raises SimulationTruncated rather than reporting a bogus fixed point.
    """
    if seeds.dims != dims:
        raise GridError("seed set belongs to a different grid")
    n = dims.volume
    limit = n if max_steps is None else max_steps
    plan = _shift_plan(dims)
    full = (1 << n) - 1

    times: list[int | None] = [None] * n
    counts: list[int | None] = [None] * n
    for i in seeds.indices():
        times[i] = 0
        counts[i] = 0

    bc = dims.b * dims.c
    c = dims.c

    def neighbour_indices(i: int) -> list[int]:
        x, rest = divmod(i, bc)
        y, z = divmod(rest, c)
        out = []
        if x > 0:
            out.append(i - bc)
        if x < dims.a - 1:
            out.append(i + bc)
        if y > 0:
            out.append(i - c)
        if y < dims.b - 1:
            out.append(i + c)
        if z > 0:
            out.append(i - 1)
        if z < c - 1:
            out.append(i + 1)
        return out

    mask = seeds.mask
    frames = [mask]
    t = 0
    while True:
        nxt = mask | _eligible(mask, plan, r)
        if nxt == mask:
            break
        if t >= limit:
            raise SimulationTruncated(f"no fixed point within {limit} steps on {dims}")
        t += 1
        new = nxt & ~mask
        while new:
            low = new & -new
            i = low.bit_length() - 1
            new ^= low
            times[i] = t
            counts[i] = sum(1 for j in neighbour_indices(i) if (mask >> j) & 1)
        mask = nxt
        frames.append(mask)

    return PercolationTrace(
        dims=dims,
        r=r,
        seeds=seeds,
        infection_time=tuple(times),
        neighbours_at_infection=tuple(counts),
        percolated=mask == full,
        steps_taken=t,
        frames=tuple(frames),
    )


def degree_pair_sum(dims: GridDims, cset: CellSet) -> int:
    """n(A) = sum over x in A of |N(x) ∩ A|, i.e. twice the internal edges."""
    if cset.dims != dims:
        raise GridError("cell set belongs to a different grid")
    total = 0
    m = cset.mask
    for shift, keep in _shift_plan(dims):
        nb = (m << shift) & keep if shift > 0 else (m >> -shift) & keep
        total += (nb & m).bit_count()
    return total


def surface_quantity(dims: GridDims, cset: CellSet) -> int:
    """6|A| - n(A); nonincreasing along the 3-neighbour process."""
    return 6 * len(cset) - degree_pair_sum(dims, cset)
