"""Layered text format for seed sets and rendered traces.

A set over an a x b x c grid is written as ``a`` blocks (layers), each with
``b`` lines of ``c`` glyphs, blocks separated by one blank line.  ``X`` marks
a seed and ``.`` an empty cell.  Rendered traces reuse the same geometry with
infection times as glyphs: 1-9, then base-36 letters for 10-35, ``+`` for
times 36 and beyond, ``#`` for never infected.  Stripping times (any glyph
other than X back to ``.``) round-trips with the seed format.
"""

from __future__ import annotations

from .engine import PercolationTrace
from .grid import CellSet, GridDims

SEED_GLYPH = "X"
EMPTY_GLYPH = "."
NEVER_GLYPH = "#"
OVERFLOW_GLYPH = "+"

_DIGITS = "0123456789abcdefghijklmnopqrstuvwxyz"


class ParseError(ValueError):
    """Malformed layered text; carries the offending line number."""

    def __init__(self, message: str, line: int | None = None):
        self.line = line
        suffix = f" (line {line})" if line is not None else ""
        super().__init__(message + suffix)


def write_set(cset: CellSet) -> str:
    """Seed set as layered text (no header; dims are implicit in the shape)."""
    dims = cset.dims
    lines = []
    for x in range(1, dims.a + 1):
        if x > 1:
            lines.append("")
        for y in range(1, dims.b + 1):
            row = "".join(
                SEED_GLYPH if (x, y, z) in cset else EMPTY_GLYPH
                for z in range(1, dims.c + 1)
            )
            lines.append(row)
    return "\n".join(lines) + "\n"


def parse_set(text: str) -> tuple[GridDims, CellSet]:
    """Parse layered text back into (dims, seed set); strict round-trip."""
    lines = text.splitlines()
    # split into blocks of consecutive non-blank lines
    blocks: list[list[tuple[int, str]]] = []
    current: list[tuple[int, str]] = []
    for lineno, raw in enumerate(lines, start=1):
        line = raw.rstrip("\n")
        if line.strip() == "":
            if current:
                blocks.append(current)
                current = []
            continue
        current.append((lineno, line))
    if current:
        blocks.append(current)
    if not blocks:
        raise ParseError("empty grid text")

    a = len(blocks)
    b = len(blocks[0])
    c = len(blocks[0][0][1])
    for block in blocks:
        if len(block) != b:
            raise ParseError(
                f"layer has {len(block)} rows, expected {b}", block[0][0]
            )
        for lineno, line in block:
            if len(line) != c:
                raise ParseError(f"row has {len(line)} cells, expected {c}", lineno)

    dims = GridDims(a, b, c)
    mask = 0
    for xi, block in enumerate(blocks):
        for yi, (lineno, line) in enumerate(block):
            for zi, glyph in enumerate(line):
                if glyph == SEED_GLYPH:
                    mask |= 1 << (xi * b * c + yi * c + zi)
                elif glyph != EMPTY_GLYPH:
                    raise ParseError(f"unknown glyph {glyph!r}", lineno)
    return dims, CellSet(dims, mask)


def _time_glyph(t: int | None, is_seed: bool) -> str:
    if is_seed:
        return SEED_GLYPH
    if t is None:
        return NEVER_GLYPH
    if t < 36:
        return _DIGITS[t]
    return OVERFLOW_GLYPH


def render_trace(trace: PercolationTrace) -> str:
    """Trace as layered text with per-cell infection times."""
    dims = trace.dims
    seeds = trace.seeds
    lines = []
    for x in range(1, dims.a + 1):
        if x > 1:
            lines.append("")
        for y in range(1, dims.b + 1):
            row = []
            for z in range(1, dims.c + 1):
                i = dims.index((x, y, z))
                row.append(_time_glyph(trace.infection_time[i], (x, y, z) in seeds))
            lines.append("".join(row))
    return "\n".join(lines) + "\n"


def strip_times(text: str) -> str:
    """Reduce a rendered trace to plain seed text (X stays, all else to '.')."""
    out_lines = []
    for line in text.splitlines():
        if line.strip() == "":
            out_lines.append("")
        else:
            out_lines.append(
                "".join(SEED_GLYPH if g == SEED_GLYPH else EMPTY_GLYPH for g in line)
            )
    return "\n".join(out_lines) + "\n"
