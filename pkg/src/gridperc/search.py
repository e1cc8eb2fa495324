"""Independent search oracles.

Two modes: exhaustive enumeration with pruning, proving exact minimum
percolating set sizes on tiny grids, and simulated annealing over fixed-size
seed sets, producing at-bound witnesses on mid-size grids (no minimality
claim).  Both are deterministic given their inputs and rng seed.

Pruning rests on the surface argument: 6|A|-n(A) never increases along the
r>=3 process, and equals 2(ab+ac+bc) on the full grid, so a percolating set
of size s satisfies n(A_0) <= 6s - 2(ab+ac+bc).  In particular an exact-bound
set must be independent, and a ceiling-bound set carries at most (ab+ac+bc)
mod 3 internal edges.
"""

from __future__ import annotations

import enum
import random
from dataclasses import dataclass

from .bounds import lower_bound, surface_sum
from .engine import _shift_plan, fixed_point_mask
from .grid import (
    CellSet,
    GridDims,
    Orientation,
    automorphisms,
    neighbours,
    orbit_minima,
    orient_cell,
)

EXHAUSTIVE_CELL_CAP = 30


class SearchError(ValueError):
    """Precondition violation (grid too large, target below the bound)."""


class SearchMode(enum.Enum):
    EXHAUSTIVE_PROVEN = "ExhaustiveProven"
    HEURISTIC_WITNESS = "HeuristicWitness"
    FAILED = "Failed"


@dataclass(frozen=True)
class SearchResult:
    dims: GridDims
    mode: SearchMode
    min_size: int | None
    witness: CellSet | None
    nodes_explored: int
    rng_seed: int | None = None

    @property
    def found(self) -> bool:
        return self.witness is not None


def min_22c(c: int) -> int:
    """Closed form ceil((3c+1)/2) for the minimum on (2,2,c) grids."""
    if c < 1:
        raise SearchError("c must be positive")
    return (3 * c + 2) // 2


def _neighbour_masks(dims: GridDims) -> list[int]:
    out = []
    for i in range(dims.volume):
        m = 0
        for nb in neighbours(dims, dims.cell(i)):
            m |= 1 << dims.index(nb)
        out.append(m)
    return out


def _index_automorphisms(dims: GridDims) -> list[list[int]]:
    tables = []
    for g in automorphisms(dims):
        table = [0] * dims.volume
        for i in range(dims.volume):
            table[i] = dims.index(orient_cell(dims.cell(i), dims, g))
        tables.append(table)
    return tables


def min_exhaustive(dims: GridDims, r: int = 3, node_budget: int | None = None) -> SearchResult:
    """Proven minimum percolating set size, by enumeration with pruning.

    Candidate sizes run upward from the surface lower bound (for r >= 3;
    from 1 otherwise).  Subsets are enumerated in lexicographic cell order,
    pruned by the internal-edge allowance and by canonical-form symmetry
    checks on the first two chosen cells.  The first percolating candidate at
    the current size proves the minimum, since every smaller size was refuted
    (by the bound or exhaustively).
    """
    n = dims.volume
    if n > EXHAUSTIVE_CELL_CAP:
        raise SearchError(f"{dims} has {n} cells; exhaustive cap is {EXHAUSTIVE_CELL_CAP}")

    plan = _shift_plan(dims)
    full = (1 << n) - 1
    nmasks = _neighbour_masks(dims)
    autos = _index_automorphisms(dims)
    first_cells = sorted(orbit_minima(dims))
    surface = 2 * surface_sum(dims)

    start = lower_bound(dims)[1] if r >= 3 else 1
    start = max(1, min(start, n))
    nodes = 0

    def pair_ok(i1: int, i2: int) -> bool:
        # no automorphism may map {i1, i2} to a lexicographically smaller pair
        for table in autos:
            a1, a2 = table[i1], table[i2]
            if a1 > a2:
                a1, a2 = a2, a1
            if (a1, a2) < (i1, i2):
                return False
        return True

    for size in range(start, n + 1):
        allowance = 6 * size - surface if r >= 3 else None
        if allowance is not None and allowance < 0:
            continue
        chosen: list[int] = []

        def extend(mask: int, pairs: int, last: int) -> int | None:
            """Returns a percolating mask or None; counts nodes via closure."""
            nonlocal nodes
            depth = len(chosen)
            if depth == size:
                nodes += 1
                final, _ = fixed_point_mask(dims, r, mask)
                return mask if final == full else None
            # candidates after `last`, leaving room for the rest
            for v in range(last + 1, n - (size - depth) + 1):
                if depth == 0 and v not in first_cells:
                    continue
                if depth == 1 and not pair_ok(chosen[0], v):
                    continue
                if allowance is not None:
                    delta = 2 * (nmasks[v] & mask).bit_count()
                    if pairs + delta > allowance:
                        continue
                else:
                    delta = 0
                nodes += 1
                if node_budget is not None and nodes > node_budget:
                    raise _BudgetExhausted
                chosen.append(v)
                hit = extend(mask | (1 << v), pairs + delta, v)
                chosen.pop()
                if hit is not None:
                    return hit
            return None

        try:
            hit = extend(0, 0, -1)
        except _BudgetExhausted:
            return SearchResult(dims, SearchMode.FAILED, None, None, nodes)
        if hit is not None:
            return SearchResult(
                dims, SearchMode.EXHAUSTIVE_PROVEN, size, CellSet(dims, hit), nodes
            )
    # unreachable: the full grid always percolates
    raise AssertionError("enumeration exhausted without finding the full grid")


class _BudgetExhausted(Exception):
    pass


def _fixed_point_scored(dims: GridDims, r: int, mask: int) -> tuple[int, int, int]:
    """(final mask, uninfected count, progress score).

    Progress counts, over uninfected cells at the fixed point, how many
    infected neighbours they already have (saturated at r-1); it breaks the
    plateaus of the raw uninfected count.
    """
    final, _ = fixed_point_mask(dims, r, mask)
    n = dims.volume
    uninfected = n - final.bit_count()
    if uninfected == 0:
        return final, 0, 0
    plan = _shift_plan(dims)
    hole = ~final & ((1 << n) - 1)
    acc = [0] * r
    for shift, keep in plan:
        nb = (final << shift) & keep if shift > 0 else (final >> -shift) & keep
        for k in range(r - 1, 0, -1):
            acc[k] |= acc[k - 1] & nb
        acc[0] |= nb
    progress = 0
    for k in range(r - 1):
        progress += (hole & acc[k]).bit_count()
    return final, uninfected, progress


@dataclass(frozen=True)
class AnnealParams:
    """Annealing schedule; defaults find (3,3,3) at bound in well under a second.

    On stagnation the temperature is reheated to half of t_start rather than
    restarting, up to the per-restart iteration budget.
    """

    restarts: int = 40
    iterations: int = 20_000
    t_start: float = 3.0
    t_end: float = 0.05
    frontier_bias: float = 0.65
    stagnation: int = 4_000


def _orbits_under(dims: GridDims, symmetry: Orientation | None) -> list[tuple[int, ...]]:
    """Cell orbits under one involutive symmetry (singletons when None)."""
    n = dims.volume
    if symmetry is None:
        return [(i,) for i in range(n)]
    image = [dims.index(orient_cell(dims.cell(i), dims, symmetry)) for i in range(n)]
    orbits = []
    for i in range(n):
        j = image[i]
        if j < i:
            continue
        orbits.append((i,) if j == i else (i, j))
    return orbits


def find_at_bound(
    dims: GridDims,
    target: int,
    r: int = 3,
    rng_seed: int = 0,
    params: AnnealParams | None = None,
    node_budget: int | None = None,
    symmetry: Orientation | None = None,
) -> SearchResult:
    """Stochastic local search for a percolating set of exactly ``target`` cells.

    Moves relocate one seed, preferring resettlement inside the uninfected
    region; candidates violating the internal-edge allowance are never
    generated.  Acceptance follows a geometric cooling schedule with restarts.
    Deterministic for a fixed rng_seed.

    With ``symmetry`` (an involutive grid automorphism), only seed sets fixed
    by it are explored and moves relocate whole cell orbits: half the search
    dimensions, at the cost of missing asymmetric witnesses.
    """
    n = dims.volume
    _, ceil = lower_bound(dims)
    if r >= 3 and target < ceil:
        raise SearchError(f"target {target} below the lower bound ceiling {ceil} for {dims}")
    if target > n:
        raise SearchError(f"target {target} exceeds the {n}-cell grid")
    params = params or AnnealParams()
    max_edges = 3 * target - surface_sum(dims) if r >= 3 else None

    rng = random.Random(rng_seed)
    nmasks = _neighbour_masks(dims)
    orbits = _orbits_under(dims, symmetry)
    orbit_mask = [sum(1 << i for i in orb) for orb in orbits]
    orbit_of = [0] * n
    for oi, orb in enumerate(orbits):
        for i in orb:
            orbit_of[i] = oi
    nodes = 0
    scale = 2 * n + 1  # objective = uninfected*scale - progress, all integer

    def added_edges(om: int, mask: int) -> int:
        # edges created by adding orbit bits `om` to `mask` (internal pairs too)
        total = 0
        m = om
        seen = 0
        while m:
            low = m & -m
            i = low.bit_length() - 1
            m ^= low
            total += (nmasks[i] & (mask | seen)).bit_count()
            seen |= low
        return total

    def random_state() -> tuple[list[int], int, int] | None:
        """Greedy random fill by orbits: (orbit ids, mask, edge count)."""
        order = list(range(len(orbits)))
        rng.shuffle(order)
        picked: list[int] = []
        mask = 0
        edges = 0
        budget = max_edges if max_edges is not None else 3 * n
        # independent-first pass, then relax to the allowance
        for relax in (False, True):
            for oi in order:
                om = orbit_mask[oi]
                if om & mask:
                    continue
                size = om.bit_count()
                if mask.bit_count() + size > target:
                    continue
                delta = added_edges(om, mask)
                if (not relax and delta) or edges + delta > budget:
                    continue
                picked.append(oi)
                mask |= om
                edges += delta
                if mask.bit_count() == target:
                    return picked, mask, edges
        return None

    cooling = (params.t_end / params.t_start) ** (1.0 / max(1, params.iterations - 1))

    for _ in range(params.restarts):
        state = random_state()
        if state is None:
            continue
        picked, mask, edges = state
        final, uninf, prog = _fixed_point_scored(dims, r, mask)
        nodes += 1
        obj = uninf * scale - prog
        if uninf == 0:
            return SearchResult(dims, SearchMode.HEURISTIC_WITNESS, None, CellSet(dims, mask), nodes, rng_seed)

        temp = params.t_start
        since_improvement = 0
        hole = ~final & ((1 << n) - 1)
        for _ in range(params.iterations):
            if node_budget is not None and nodes >= node_budget:
                break
            # propose: swap one chosen orbit for an unchosen one of equal size
            si = rng.randrange(len(picked))
            old_oi = picked[si]
            base = mask & ~orbit_mask[old_oi]
            base_edges = edges - added_edges(orbit_mask[old_oi], base)
            if hole and rng.random() < params.frontier_bias:
                hole_bits = hole
                k = rng.randrange(hole_bits.bit_count())
                for _ in range(k):
                    hole_bits &= hole_bits - 1
                new_cell = (hole_bits & -hole_bits).bit_length() - 1
            else:
                new_cell = rng.randrange(n)
            new_oi = orbit_of[new_cell]
            om = orbit_mask[new_oi]
            if new_oi == old_oi or om & base:
                continue
            if om.bit_count() != orbit_mask[old_oi].bit_count():
                continue  # keep the target size exact
            delta = added_edges(om, base)
            if max_edges is not None and base_edges + delta > max_edges:
                continue
            trial_mask = base | om
            t_final, t_uninf, t_prog = _fixed_point_scored(dims, r, trial_mask)
            nodes += 1
            t_obj = t_uninf * scale - t_prog
            accept = t_obj <= obj
            if not accept and temp > 1e-9:
                accept = rng.random() < pow(2.718281828, (obj - t_obj) / (scale * temp))
            if accept:
                improved = t_obj < obj
                picked[si] = new_oi
                mask = trial_mask
                edges = base_edges + delta
                obj = t_obj
                final = t_final
                hole = ~final & ((1 << n) - 1)
                if t_uninf == 0:
                    return SearchResult(
                        dims, SearchMode.HEURISTIC_WITNESS, None, CellSet(dims, mask), nodes, rng_seed
                    )
                since_improvement = 0 if improved else since_improvement + 1
            else:
                since_improvement += 1
            temp *= cooling
            if since_improvement > params.stagnation:
                temp = max(temp, params.t_start * 0.5)
                since_improvement = 0
        if node_budget is not None and nodes >= node_budget:
            break

    return SearchResult(dims, SearchMode.FAILED, None, None, nodes, rng_seed)
