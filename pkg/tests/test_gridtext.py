import random

import pytest

from gridperc.engine import percolate
from gridperc.grid import CellSet, GridDims
from gridperc.gridtext import (
    ParseError,
    parse_set,
    render_trace,
    strip_times,
    write_set,
)

DIAMOND = [(1, 1, 1), (1, 1, 3), (1, 2, 2), (1, 3, 1), (1, 3, 3)]


def test_write_parse_identity_randomized():
    rng = random.Random(200)
    for _ in range(200):
        dims = GridDims(rng.randint(1, 5), rng.randint(1, 5), rng.randint(1, 6))
        cells = [c for c in dims.cells() if rng.random() < rng.uniform(0, 0.7)]
        cset = CellSet.from_cells(dims, cells)
        parsed_dims, parsed = parse_set(write_set(cset))
        assert parsed_dims == dims
        assert parsed.mask == cset.mask


def test_layer_block_layout():
    dims = GridDims(2, 2, 3)
    cset = CellSet.from_cells(dims, [(1, 1, 1), (2, 2, 3)])
    assert write_set(cset) == "X..\n...\n\n...\n..X\n"


@pytest.mark.parametrize(
    "text",
    [
        "",                      # empty
        "X..\n..\n",             # ragged row
        "X.Q\n...\n",            # unknown glyph
        "X..\n...\n\n...\n",     # inconsistent layer shape
    ],
)
def test_parse_errors(text):
    with pytest.raises(ParseError):
        parse_set(text)


def test_parse_error_carries_line_number():
    with pytest.raises(ParseError) as err:
        parse_set("X..\n.?.\n")
    assert err.value.line == 2


def test_render_glyphs_and_strip_roundtrip():
    dims = GridDims(1, 3, 3)
    seeds = CellSet.from_cells(dims, DIAMOND)
    text = render_trace(percolate(dims, 3, seeds))
    assert text == "X1X\n1X1\nX1X\n"
    stripped_dims, stripped = parse_set(strip_times(text))
    assert stripped_dims == dims
    assert stripped.mask == seeds.mask


def test_render_never_infected_glyph():
    dims = GridDims(1, 1, 3)
    seeds = CellSet.from_cells(dims, [(1, 1, 2)])
    text = render_trace(percolate(dims, 3, seeds))
    assert text == "#X#\n"


def test_render_base36_and_overflow():
    # a long path under r=1 infects one cell per step: times grow past 9 and 35
    dims = GridDims(1, 1, 40)
    seeds = CellSet.from_cells(dims, [(1, 1, 1)])
    text = render_trace(percolate(dims, 1, seeds)).strip()
    assert text[0] == "X"
    assert text[10] == "a"      # time 10
    assert text[35] == "z"      # time 35
    assert text[36] == "+"      # overflow glyph
    stripped_dims, stripped = parse_set(strip_times(text + "\n"))
    assert stripped.mask == seeds.mask
