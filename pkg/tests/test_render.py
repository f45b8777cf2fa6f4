import re
from pathlib import Path

from diffvis.diffuse import compute_Vk
from diffvis.kernel import P, Q
from diffvis.regions import holes_of
from diffvis.render import RenderSpec, num, render_svg

GOLDEN = Path(__file__).parent / "golden" / "counterexample.svg"


def construction_svg(c, res):
    return render_svg(c.polygon, res.stages, c.label_points(), holes_of(c.polygon, res.region))


def test_square_is_one_path(square):
    svg = render_svg(square)
    assert svg.count("<path") == 1
    assert 'id="polygon"' in svg and "hatch" not in svg
    assert svg.startswith("<?xml") and svg.endswith("</svg>\n")


def test_num_formatting():
    assert num(Q(1) / 3) == "0.333333333333"
    assert num(Q(0)) == "0" and num(Q(-0)) == "0"
    assert num(Q(7)) == "7"


def test_coordinates_have_at_most_12_significant_digits(lshape):
    svg = render_svg(lshape, labels={"a": P("1/3", "2/7")}, spec=RenderSpec(width=333, height=217))
    for token in re.findall(r"-?\d+\.\d+", svg):
        assert len(token.replace("-", "").replace(".", "").lstrip("0")) <= 12


def test_render_is_deterministic(construction, construction_v2):
    assert construction_svg(construction, construction_v2) == construction_svg(construction, construction_v2)


def test_golden_construction_figure(construction, construction_v2):
    svg = construction_svg(construction, construction_v2)
    assert svg.count('id="stage-') == 3
    assert 'id="holes"' in svg
    assert svg == GOLDEN.read_text()
