"""Grid geometry: dimensions, cell indexing, neighbourhoods, box symmetries.

Cells of an ``a x b x c`` grid are 1-based triples ``(x, y, z)`` read as
(layer, row, column).  Internally a cell is a single integer index into the
linearized grid, and a set of cells is one Python int used as a bitset, which
keeps membership, counting and the percolation engine O(machine words).
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import lru_cache
from itertools import permutations, product
from typing import Iterable, Iterator

Cell = tuple[int, int, int]

# Hard cap on addressable cells; larger grids are rejected at construction.
CELL_CAP = 1 << 24


class GridError(ValueError):
    """Invalid dimensions or a cell outside the grid."""


@dataclass(frozen=True, order=True)
class GridDims:
    """Side lengths (a, b, c) of the grid graph P_a x P_b x P_c."""

    a: int
    b: int
    c: int

    def __post_init__(self) -> None:
        for side in (self.a, self.b, self.c):
            if not isinstance(side, int) or side < 1:
                raise GridError(f"side lengths must be positive integers, got {self}")
        if self.a * self.b * self.c > CELL_CAP:
            raise GridError(f"grid {self} exceeds the {CELL_CAP}-cell cap")

    @property
    def volume(self) -> int:
        return self.a * self.b * self.c

    @property
    def thickness(self) -> int:
        return min(self.a, self.b, self.c)

    def as_tuple(self) -> tuple[int, int, int]:
        return (self.a, self.b, self.c)

    def sorted(self) -> "GridDims":
        """Canonical form: sides in nondecreasing order."""
        return GridDims(*sorted(self.as_tuple()))

    def contains(self, cell: Cell) -> bool:
        x, y, z = cell
        return 1 <= x <= self.a and 1 <= y <= self.b and 1 <= z <= self.c

    def index(self, cell: Cell) -> int:
        if not self.contains(cell):
            raise GridError(f"cell {cell} outside grid {self}")
        x, y, z = cell
        return (x - 1) * self.b * self.c + (y - 1) * self.c + (z - 1)

    def cell(self, index: int) -> Cell:
        if not 0 <= index < self.volume:
            raise GridError(f"index {index} outside grid {self}")
        x, rest = divmod(index, self.b * self.c)
        y, z = divmod(rest, self.c)
        return (x + 1, y + 1, z + 1)

    def cells(self) -> Iterator[Cell]:
        return product(range(1, self.a + 1), range(1, self.b + 1), range(1, self.c + 1))

    def __str__(self) -> str:
        return f"{self.a}x{self.b}x{self.c}"

    @staticmethod
    def parse(text: str) -> "GridDims":
        parts = text.replace("x", " ").split()
        if len(parts) != 3:
            raise GridError(f"cannot parse dimensions from {text!r}")
        return GridDims(*(int(p) for p in parts))


def neighbours(dims: GridDims, cell: Cell) -> list[Cell]:
    """All grid-adjacent cells of ``cell`` (between 3 and 6 of them)."""
    if not dims.contains(cell):
        raise GridError(f"cell {cell} outside grid {dims}")
    x, y, z = cell
    out = []
    if x > 1:
        out.append((x - 1, y, z))
    if x < dims.a:
        out.append((x + 1, y, z))
    if y > 1:
        out.append((x, y - 1, z))
    if y < dims.b:
        out.append((x, y + 1, z))
    if z > 1:
        out.append((x, y, z - 1))
    if z < dims.c:
        out.append((x, y, z + 1))
    return out


@dataclass(frozen=True)
class CellSet:
    """An infected/seed set: immutable bitset over the cells of ``dims``."""

    dims: GridDims
    mask: int

    def __post_init__(self) -> None:
        if self.mask < 0 or self.mask >> self.dims.volume:
            raise GridError("mask has bits outside the grid")

    @staticmethod
    def empty(dims: GridDims) -> "CellSet":
        return CellSet(dims, 0)

    @staticmethod
    def full(dims: GridDims) -> "CellSet":
        return CellSet(dims, (1 << dims.volume) - 1)

    @staticmethod
    def from_cells(dims: GridDims, cells: Iterable[Cell]) -> "CellSet":
        mask = 0
        for cell in cells:
            mask |= 1 << dims.index(cell)
        return CellSet(dims, mask)

    @staticmethod
    def from_indices(dims: GridDims, indices: Iterable[int]) -> "CellSet":
        mask = 0
        for i in indices:
            if not 0 <= i < dims.volume:
                raise GridError(f"index {i} outside grid {dims}")
            mask |= 1 << i
        return CellSet(dims, mask)

    def __len__(self) -> int:
        return self.mask.bit_count()

    def __contains__(self, cell: Cell) -> bool:
        return self.dims.contains(cell) and (self.mask >> self.dims.index(cell)) & 1 == 1

    def __or__(self, other: "CellSet") -> "CellSet":
        if other.dims != self.dims:
            raise GridError("cannot combine sets over different grids")
        return CellSet(self.dims, self.mask | other.mask)

    def __and__(self, other: "CellSet") -> "CellSet":
        if other.dims != self.dims:
            raise GridError("cannot combine sets over different grids")
        return CellSet(self.dims, self.mask & other.mask)

    def issubset(self, other: "CellSet") -> bool:
        return self.dims == other.dims and self.mask & ~other.mask == 0

    def indices(self) -> Iterator[int]:
        """Set bits in increasing index order."""
        mask = self.mask
        while mask:
            low = mask & -mask
            yield low.bit_length() - 1
            mask ^= low

    def cells(self) -> list[Cell]:
        return [self.dims.cell(i) for i in self.indices()]


# --- box symmetries -----------------------------------------------------------
#
# An orientation is (perm, flips): coordinate j of the image reads source
# coordinate perm[j], then flips[j] mirrors it.  Orientations are exactly the
# isometries between boxes, so they carry percolating sets to percolating sets.

Orientation = tuple[tuple[int, int, int], tuple[bool, bool, bool]]

IDENTITY: Orientation = ((0, 1, 2), (False, False, False))


def orientations(src: GridDims, dst: GridDims) -> list[Orientation]:
    """All orientations mapping a ``src`` box onto a ``dst`` box.

    Empty when the side multisets differ.  Identity comes first when it
    applies, giving deterministic retry order.
    """
    src_t = src.as_tuple()
    dst_t = dst.as_tuple()
    out = []
    for perm in permutations(range(3)):
        if tuple(src_t[perm[j]] for j in range(3)) != dst_t:
            continue
        for flips in product((False, True), repeat=3):
            out.append((perm, flips))
    out.sort(key=lambda o: (o != IDENTITY, o))
    return out


def orient_cell(cell: Cell, src: GridDims, orientation: Orientation) -> Cell:
    perm, flips = orientation
    src_t = src.as_tuple()
    out = []
    for j in range(3):
        v = cell[perm[j]]
        if flips[j]:
            v = src_t[perm[j]] + 1 - v
        out.append(v)
    return (out[0], out[1], out[2])


def orient_set(cset: CellSet, orientation: Orientation) -> CellSet:
    """Apply a box isometry to a whole cell set."""
    perm, _ = orientation
    src_t = cset.dims.as_tuple()
    dst = GridDims(src_t[perm[0]], src_t[perm[1]], src_t[perm[2]])
    return CellSet.from_cells(dst, (orient_cell(c, cset.dims, orientation) for c in cset.cells()))


def automorphisms(dims: GridDims) -> list[Orientation]:
    """The grid's own symmetry group (up to 48 elements)."""
    return orientations(dims, dims)


@lru_cache(maxsize=256)
def orbit_minima(dims: GridDims) -> frozenset[int]:
    """Indices that are the smallest in their orbit under automorphisms.

    Used to restrict the first chosen cell in exhaustive search: the
    lexicographically least automorphic image of any set starts at an
    orbit-minimal cell.
    """
    autos = automorphisms(dims)
    minima = set()
    seen = set()
    for i in range(dims.volume):
        if i in seen:
            continue
        orbit = {dims.index(orient_cell(dims.cell(i), dims, g)) for g in autos}
        seen |= orbit
        minima.add(min(orbit))
    return frozenset(minima)


def embed(cset: CellSet, target: GridDims, offset: tuple[int, int, int]) -> CellSet:
    """Copy a cell set into a larger grid, shifted by ``offset`` cells."""
    dx, dy, dz = offset
    sub = cset.dims
    if dx < 0 or dy < 0 or dz < 0 or sub.a + dx > target.a or sub.b + dy > target.b or sub.c + dz > target.c:
        raise GridError(f"{sub} at offset {offset} does not fit in {target}")
    return CellSet.from_cells(target, ((x + dx, y + dy, z + dz) for x, y, z in cset.cells()))
