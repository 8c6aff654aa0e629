import xml.etree.ElementTree as ET

import pytest

from subtile.core import Library, Placement, Polyomino, Tiling, TransformMode, vertical_faults
from subtile.errors import InvalidTilingError
from subtile.reduce import reduce_partition
from subtile.render import RenderSpec, palette, render, render_ascii, render_svg
from subtile.subtiling import staircase_tiling

SVG = "{http://www.w3.org/2000/svg}"
R = Polyomino.rect


def faults_in(svg):
    root = ET.fromstring(svg)
    return root, [int(el.get("x1")) for el in root.iter(f"{SVG}line") if el.get("class") == "fault"]


def test_palette_deterministic():
    assert palette(5, 1) == palette(5, 1)
    assert palette(5, 1) != palette(5, 2)
    assert len(set(palette(12))) == 12


def test_domino_has_no_fault():
    t = Tiling(1, 2, (Placement(0, 0, (0, 0)),), Library((R(1, 2),)))
    root, xs = faults_in(render_svg(t))
    assert xs == [] and len(root.findall(f"{SVG}rect")) == 2  # background + piece


def test_bar_pair_fault_position():
    t = Tiling(1, 4, (Placement(0, 0, (0, 0)), Placement(0, 0, (2, 0))), Library((R(1, 2),)))
    _, xs = faults_in(render_svg(t))
    assert xs == [48]
    assert render_ascii(t) == "A A|B B\n"


@pytest.mark.parametrize("t", [staircase_tiling(5), reduce_partition([1, 2, 3]).tiling])
def test_faults_match(t):
    spec = RenderSpec(cell=10)
    _, xs = faults_in(render(t, spec))
    assert xs == [10 * x for x in vertical_faults(t)]


def test_non_rect_pieces_become_paths():
    L = Polyomino(((0, 0), (1, 0), (0, 1)))
    lib = Library((L, R(1, 1)), TransformMode.ROTATIONS_AND_REFLECTIONS)
    t = Tiling(2, 2, (Placement(0, 0, (0, 0)), Placement(1, 0, (1, 1))), lib)
    root = ET.fromstring(render_svg(t))
    assert len(root.findall(f"{SVG}path")) == 1


def test_deterministic_output():
    t = staircase_tiling(7)
    assert render(t) == render(t)
    assert render(t, RenderSpec(seed=3)) != render(t, RenderSpec(seed=4))


def test_invalid_tiling_refused():
    t = Tiling(1, 3, (Placement(0, 0, (0, 0)),), Library((R(1, 2),)))
    with pytest.raises(InvalidTilingError):
        render(t)
    with pytest.raises(ValueError):
        render(staircase_tiling(3), RenderSpec(format="png"))
