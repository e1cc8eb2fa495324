"""Independent brute-force reference implementations for cross-checking.

Everything here works on explicit (x, y, z) coordinates and Python sets; no
bitsets, no shift tricks.  Deliberately slow and obvious.
"""

from __future__ import annotations

from gridperc.grid import GridDims


def neighbours_brute(dims: GridDims, cell):
    """All cells at Hamming-style distance one inside the box."""
    out = []
    for other in dims.cells():
        diffs = [abs(a - b) for a, b in zip(cell, other)]
        if sorted(diffs) == [0, 0, 1]:
            out.append(other)
    return out


def step_brute(dims: GridDims, r: int, infected: set) -> set:
    """One synchronous step by per-cell neighbour counting."""
    new = set(infected)
    for cell in dims.cells():
        if cell in infected:
            continue
        count = sum(1 for nb in neighbours_brute(dims, cell) if nb in infected)
        if count >= r:
            new.add(cell)
    return new


def fixed_point_brute(dims: GridDims, r: int, infected: set) -> tuple[set, int]:
    current = set(infected)
    steps = 0
    while True:
        nxt = step_brute(dims, r, current)
        if nxt == current:
            return current, steps
        current = nxt
        steps += 1


def pair_sum_brute(dims: GridDims, cells: set) -> int:
    """Sum over members of their in-set neighbour counts (twice the edges)."""
    return sum(
        1
        for cell in cells
        for nb in neighbours_brute(dims, cell)
        if nb in cells
    )
