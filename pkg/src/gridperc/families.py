"""One-parameter periodic seed families.

A family pattern for cross-section (a, b) is a left boundary of wL columns,
a repeating block of exactly 6 columns carrying exactly 2(a+b) seeds, and a
right boundary of wR columns, with wL + wR = min_c.  Assembling k block
copies between the boundaries gives a seed set on (a, b, min_c + 6k) whose
size stays exactly at the (ab+ac+bc)/3 bound: the bound grows by
(6a+6b)/3 = 2(a+b) per six columns, which is one block's worth of seeds.

Patterns are discovered, not transcribed: simulated annealing runs directly
in pattern space, scoring each candidate by assembling and simulating the
three smallest admissible instances, so only patterns that actually repeat
survive.  Discovered patterns are frozen into a plain-text store.
"""

from __future__ import annotations

import io
import random
from dataclasses import dataclass
from importlib import resources
from pathlib import Path

from .bounds import Status, classify, surface_sum
from .catalog import CatalogEntry
from .engine import degree_pair_sum
from .grid import CellSet, GridDims, embed
from .gridtext import ParseError, parse_set, write_set
from .search import SearchError, _fixed_point_scored

# The five cross-sections with periodic constructions, by family id.
FAMILY_SPECS: dict[str, tuple[int, int, int, int]] = {
    # id: (a, b, residue mod 6, minimum c)
    "2x5": (2, 5, 5, 5),
    "2x6": (2, 6, 0, 6),
    "2x8": (2, 8, 2, 8),
    "4x4c1": (4, 4, 1, 7),
    "4x4c4": (4, 4, 4, 10),
    "4x7c1": (4, 7, 1, 7),
    "4x7c4": (4, 7, 4, 10),
}


class FamilyError(ValueError):
    """Bad pattern, inadmissible c, or an assembly that fails verification."""


@dataclass(frozen=True)
class FamilyPattern:
    """Boundary columns plus a 6-column periodic block."""

    family_id: str
    a: int
    b: int
    residue: int
    min_c: int
    left: CellSet    # over (a, b, wL); wL may be 0 columns wide
    block: CellSet   # over (a, b, 6)
    right: CellSet   # over (a, b, wR)
    rng_seed: int | None = None

    def __post_init__(self) -> None:
        a, b = self.a, self.b
        if self.block.dims != GridDims(a, b, 6):
            raise FamilyError(f"block must span 6 columns of {a}x{b}, got {self.block.dims}")
        if len(self.block) != 2 * (a + b):
            raise FamilyError(
                f"block carries {len(self.block)} cells, needs exactly {2 * (a + b)}"
            )
        wl, wr = self.left.dims.c, self.right.dims.c
        if wl + wr != self.min_c:
            raise FamilyError(f"boundary widths {wl}+{wr} must equal min_c {self.min_c}")
        for part in (self.left, self.right):
            if part.dims.a != a or part.dims.b != b:
                raise FamilyError(f"boundary {part.dims} does not match {a}x{b}")
        if self.min_c % 6 != self.residue:
            raise FamilyError(f"min_c {self.min_c} not in residue class {self.residue} (mod 6)")

    def admissible(self, c: int) -> bool:
        return c >= self.min_c and c % 6 == self.residue

    def seed_set(self, c: int) -> CellSet:
        """Left boundary + repeated blocks + right boundary on (a, b, c)."""
        if not self.admissible(c):
            raise FamilyError(
                f"c={c} not admissible for family {self.family_id} "
                f"(needs c ≡ {self.residue} (mod 6), c >= {self.min_c})"
            )
        dims = GridDims(self.a, self.b, c)
        reps = (c - self.min_c) // 6
        out = embed(self.left, dims, (0, 0, 0))
        z = self.left.dims.c
        for _ in range(reps):
            out = out | embed(self.block, dims, (0, 0, z))
            z += 6
        out = out | embed(self.right, dims, (0, 0, z))
        return out


def assemble_family(pattern: FamilyPattern, c: int, r: int = 3) -> CatalogEntry:
    """Assembled, size-checked, simulation-verified perfect witness."""
    seeds = pattern.seed_set(c)
    dims = seeds.dims
    expected = surface_sum(dims) // 3
    if 3 * expected != surface_sum(dims):
        raise FamilyError(f"bound for {dims} is not an integer; bad family residue")
    if len(seeds) != expected:
        raise FamilyError(
            f"assembled size {len(seeds)} differs from the bound {expected} on {dims}"
        )
    result = classify(dims, seeds, r=r)
    if result.status is not Status.PERFECT:
        raise FamilyError(
            f"assembly of family {pattern.family_id} at c={c} is not perfect "
            f"({result.status}); pattern is bad"
        )
    entry = CatalogEntry(
        dims=dims,
        seeds=seeds,
        status=Status.PERFECT,
        provenance=f"family {pattern.family_id} c={c}",
        rng_seed=pattern.rng_seed,
        verified=True,
    )
    return entry


@dataclass(frozen=True)
class DiscoveryParams:
    restarts: int = 12
    iterations: int = 120_000
    t_start: float = 2.0
    t_end: float = 0.02
    frontier_bias: float = 0.7
    stagnation: int = 20_000
    validate_reps: int = 4  # extra instances checked after a hit
    staged: bool = True  # anneal on k=1 alone, gate k=2 behind a k=1 hit


def discover_family(
    a: int,
    b: int,
    residue: int,
    min_c: int,
    rng_seed: int = 0,
    params: DiscoveryParams | None = None,
    node_budget: int | None = None,
    family_id: str | None = None,
) -> FamilyPattern:
    """Search pattern space until the three smallest instances percolate perfectly.

    Two phases per restart.  First a perfect witness for the minimal instance
    (a, b, min_c) is found with the plain at-bound annealer; this pins the
    boundary columns.  Then, for each seam position splitting that witness
    into left/right boundaries, a 6-column block with exactly 2(a+b) seeds is
    annealed against the c = min_c+6 and min_c+12 assemblies simultaneously,
    with placement biased into the columns where the larger assembly still
    has uninfected cells.  A hit is re-validated on further instances before
    being returned; a validation failure resumes the search.
    """
    from .search import AnnealParams, SearchMode, _neighbour_masks, find_at_bound

    params = params or DiscoveryParams()
    if min_c % 6 != residue % 6:
        raise SearchError(f"min_c {min_c} not in residue class {residue} (mod 6)")
    fid = family_id or f"{a}x{b}"
    rng = random.Random(rng_seed)

    mdims = GridDims(a, b, min_c)  # minimal instance
    bdims = GridDims(a, b, 6)
    b_n = bdims.volume
    m_target = surface_sum(mdims) // 3
    if 3 * m_target != surface_sum(mdims):
        raise SearchError(f"minimal instance {mdims} has non-integral bound")
    b_target = 2 * (a + b)

    inst_dims = [GridDims(a, b, min_c + 6 * k) for k in (1, 2)]
    scale = 2 * inst_dims[-1].volume + 1
    nodes = 0
    bnm = _neighbour_masks(bdims)

    def assemble_mask(m_mask: int, b_mask: int, seam: int, k: int, dims: GridDims) -> int:
        """Assembled bitset with k block copies inserted at the seam column."""
        mask = 0
        mm = m_mask
        while mm:
            low = mm & -mm
            i = low.bit_length() - 1
            mm ^= low
            x, rest = divmod(i, b * min_c)
            y, z = divmod(rest, min_c)
            nz = z if z < seam else z + 6 * k
            mask |= 1 << (x * b * dims.c + y * dims.c + nz)
        for rep in range(k):
            bm = b_mask
            while bm:
                low = bm & -bm
                i = low.bit_length() - 1
                bm ^= low
                x, rest = divmod(i, b * 6)
                y, z = divmod(rest, 6)
                nz = seam + 6 * rep + z
                mask |= 1 << (x * b * dims.c + y * dims.c + nz)
        return mask

    def evaluate(m_mask: int, b_mask: int, seam: int, ks: tuple[int, ...]) -> tuple[int, int, int]:
        """(objective over the given instances, total uninfected, hole mask).

        The hole mask comes from the largest instance evaluated, mapped for
        placement bias.
        """
        nonlocal nodes
        total_obj = 0
        total_uninf = 0
        hole = 0
        for k in ks:
            dims = inst_dims[k - 1]
            mask = assemble_mask(m_mask, b_mask, seam, k, dims)
            cset = CellSet(dims, mask)
            if degree_pair_sum(dims, cset) > 0:
                # dependent assembly can never be perfect; heavy penalty
                total_obj += scale * dims.volume
                total_uninf += dims.volume
                continue
            final, uninf, prog = _fixed_point_scored(dims, 3, mask)
            nodes += 1
            total_obj += uninf * scale - prog
            total_uninf += uninf
            if k == max(ks):
                hole = ~final & ((1 << dims.volume) - 1)
        return total_obj, total_uninf, hole

    def random_block() -> int | None:
        order = list(range(b_n))
        rng.shuffle(order)
        mask = 0
        got = 0
        for i in order:
            if got == b_target:
                break
            if bnm[i] & mask == 0:
                mask |= 1 << i
                got += 1
        return mask if got == b_target else None

    def hole_to_block(hole_cell: int, seam: int, k: int) -> int | None:
        """Map an uninfected cell of the k-copy instance into block coordinates."""
        dims = inst_dims[k - 1]
        x, rest = divmod(hole_cell, b * dims.c)
        y, z = divmod(rest, dims.c)
        if seam <= z < seam + 6 * k:
            return x * b * 6 + y * 6 + ((z - seam) % 6)
        return None

    cooling = (params.t_end / params.t_start) ** (1.0 / max(1, params.iterations - 1))
    seams = list(range(1, min_c))

    for restart in range(params.restarts):
        # phase 1: pin the boundary with a fresh perfect minimal witness
        m_res = find_at_bound(
            mdims, m_target, rng_seed=rng.getrandbits(30),
            params=AnnealParams(restarts=20, iterations=40_000, stagnation=8_000),
        )
        if m_res.mode is not SearchMode.HEURISTIC_WITNESS:
            continue
        m_mask = m_res.witness.mask

        # phase 2: per seam, anneal the block; staged mode scores k=1 alone
        # and gates the k=2 check behind a k=1 hit
        anneal_ks = (1,) if params.staged else (1, 2)
        hole_k = max(anneal_ks)
        for seam in seams:
            b_mask = random_block()
            if b_mask is None:
                continue
            obj, uninf, hole = evaluate(m_mask, b_mask, seam, anneal_ks)
            temp = params.t_start
            since = 0
            for _ in range(params.iterations):
                if node_budget is not None and nodes >= node_budget:
                    raise SearchError(
                        f"family discovery budget exhausted for {fid} "
                        f"(best so far: {uninf} uninfected)"
                    )
                bits = b_mask
                k = rng.randrange(b_target)
                for _ in range(k):
                    bits &= bits - 1
                old = (bits & -bits).bit_length() - 1
                new = None
                if hole and rng.random() < params.frontier_bias:
                    hb = hole
                    k = rng.randrange(hb.bit_count())
                    for _ in range(k):
                        hb &= hb - 1
                    new = hole_to_block((hb & -hb).bit_length() - 1, seam, hole_k)
                if new is None:
                    new = rng.randrange(b_n)
                if new == old or (b_mask >> new) & 1:
                    continue
                trial = (b_mask & ~(1 << old)) | (1 << new)
                t_obj, t_uninf, t_hole = evaluate(m_mask, trial, seam, anneal_ks)
                accept = t_obj <= obj
                if not accept and temp > 1e-9:
                    accept = rng.random() < pow(2.718281828, (obj - t_obj) / (scale * temp))
                if accept:
                    improved = t_obj < obj
                    b_mask = trial
                    obj, uninf, hole = t_obj, t_uninf, t_hole
                    since = 0 if improved else since + 1
                    if uninf == 0:
                        if params.staged and evaluate(m_mask, b_mask, seam, (2,))[1] != 0:
                            since += 1
                            temp *= cooling
                            continue
                        pattern = _pattern_from_masks(
                            fid, a, b, residue, min_c, seam, m_mask, b_mask, rng_seed
                        )
                        if _validate(pattern, params.validate_reps):
                            return pattern
                else:
                    since += 1
                temp *= cooling
                if since > params.stagnation:
                    break  # this seam looks hopeless with this witness

    raise SearchError(f"no pattern found for family {fid} within budget")


def _pattern_from_masks(
    fid: str, a: int, b: int, residue: int, min_c: int,
    seam: int, m_mask: int, b_mask: int, rng_seed: int,
) -> FamilyPattern:
    mdims = GridDims(a, b, min_c)
    mset = CellSet(mdims, m_mask)
    left_cells = []
    right_cells = []
    for (x, y, z) in mset.cells():
        if z <= seam:
            left_cells.append((x, y, z))
        else:
            right_cells.append((x, y, z - seam))
    wl, wr = seam, min_c - seam
    left = CellSet.from_cells(GridDims(a, b, wl), left_cells)
    right = CellSet.from_cells(GridDims(a, b, wr), right_cells)
    return FamilyPattern(
        family_id=fid, a=a, b=b, residue=residue, min_c=min_c,
        left=left, block=CellSet(GridDims(a, b, 6), b_mask), right=right,
        rng_seed=rng_seed,
    )


def _validate(pattern: FamilyPattern, extra_reps: int) -> bool:
    for k in range(3, 3 + extra_reps):
        c = pattern.min_c + 6 * k
        try:
            assemble_family(pattern, c)
        except FamilyError:
            return False
    return True


# --- pattern store --------------------------------------------------------


def write_patterns(patterns: list[FamilyPattern]) -> str:
    out = io.StringIO()
    out.write("# gridperc family pattern store v1\n")
    for p in sorted(patterns, key=lambda p: p.family_id):
        out.write(f"\npattern {p.family_id}\n")
        out.write(f"section {p.a} {p.b}\n")
        out.write(f"residue {p.residue} mod 6\n")
        out.write(f"min-c {p.min_c}\n")
        if p.rng_seed is not None:
            out.write(f"rng-seed {p.rng_seed}\n")
        for name, part in (("left", p.left), ("block", p.block), ("right", p.right)):
            out.write(f"{name}\n")
            out.write(write_set(part))
            out.write("end\n")
    return out.getvalue()


def parse_patterns(text: str) -> dict[str, FamilyPattern]:
    patterns: dict[str, FamilyPattern] = {}
    lines = text.splitlines()
    i = 0
    n = len(lines)

    def grab_grid(start: int) -> tuple[CellSet, int]:
        j = start
        while j < n and lines[j].strip() != "end":
            j += 1
        if j >= n:
            raise ParseError("missing 'end'", start + 1)
        dims, cset = parse_set("\n".join(lines[start:j]) + "\n")
        return cset, j + 1

    while i < n:
        line = lines[i].strip()
        if line == "" or line.startswith("#"):
            i += 1
            continue
        if not line.startswith("pattern "):
            raise ParseError(f"expected 'pattern', got {line!r}", i + 1)
        fid = line.split(None, 1)[1]
        i += 1
        fields: dict[str, str] = {}
        parts: dict[str, CellSet] = {}
        while i < n:
            header = lines[i].strip()
            if header.startswith("pattern ") or (header == "" and len(parts) == 3):
                break
            if header in ("left", "block", "right"):
                part, i = grab_grid(i + 1)
                parts[header] = part
                continue
            if header == "":
                i += 1
                continue
            key, _, value = header.partition(" ")
            fields[key] = value
            i += 1
        try:
            a, b = (int(v) for v in fields["section"].split())
            residue = int(fields["residue"].split()[0])
            min_c = int(fields["min-c"])
            rng_seed = int(fields["rng-seed"]) if "rng-seed" in fields else None
            pattern = FamilyPattern(
                family_id=fid, a=a, b=b, residue=residue, min_c=min_c,
                left=parts["left"], block=parts["block"], right=parts["right"],
                rng_seed=rng_seed,
            )
        except (KeyError, ValueError) as exc:
            raise ParseError(f"bad pattern record {fid!r}: {exc}")
        patterns[fid] = pattern
    return patterns


def builtin_patterns() -> dict[str, FamilyPattern]:
    """Patterns shipped with the package (discovered and frozen)."""
    text = resources.files("gridperc.data").joinpath("families.txt").read_text(encoding="utf-8")
    return parse_patterns(text)


def load_patterns(path: str | Path) -> dict[str, FamilyPattern]:
    return parse_patterns(Path(path).read_text(encoding="utf-8"))


def save_patterns(patterns: dict[str, FamilyPattern], path: str | Path) -> None:
    Path(path).write_text(write_patterns(list(patterns.values())), encoding="utf-8")
