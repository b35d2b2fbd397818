import re

import numpy as np
import pandas as pd
import pytest

from src.services.plotting import emit_plot, render_curves_svg
from src.shared.errors import ArtifactIOError
from src.storage.columns import CsvHeaders

NUMBER = r"-?\d+(?:\.\d+)?(?:e-?\d+)?"


def _frame(rule, points, seed=0):
    return pd.DataFrame(
        [
            {
                "rule": rule,
                "scenario": "tiny",
                "seed": seed,
                "threshold": "0",
                "deferral_rate": x,
                "accuracy": y,
                "risk": 1 - y,
                "relative_cost": float("nan"),
            }
            for x, y in points
        ],
        columns=CsvHeaders.CURVES,
    )


def _path_vertices(svg, gid):
    match = re.search(rf'<g id="{re.escape(gid)}">\s*<path d="([^"]+)"', svg)
    assert match is not None, gid
    values = [float(v) for v in re.findall(NUMBER, match.group(1))]
    return np.array(values).reshape(-1, 2)


def test_line_vertices_are_affine_image_of_points(tmp_path):
    out = render_curves_svg([("tiny", _frame("confidence", [(0.0, 0.6), (0.5, 0.7), (1.0, 0.9)]))], tmp_path / "c.svg")
    vertices = _path_vertices(out.read_text(encoding="utf-8"), "curve-0-confidence")
    assert vertices.shape == (3, 2)
    dx = vertices[:, 0] - vertices[0, 0]
    dy = vertices[:, 1] - vertices[0, 1]
    assert dx[2] / dx[1] == pytest.approx(2.0, abs=1e-3)
    assert dy[2] / dy[1] == pytest.approx(3.0, abs=1e-3)
    # ось y в SVG направлена вниз
    assert dy[1] < 0


def test_identical_curves_get_separate_ids(tmp_path):
    points = [(0.0, 0.5), (1.0, 0.8)]
    frame = pd.concat([_frame("a", points), _frame("b", points)], ignore_index=True)
    svg = render_curves_svg([("tiny", frame)], tmp_path / "c.svg").read_text(encoding="utf-8")
    np.testing.assert_allclose(_path_vertices(svg, "curve-0-a"), _path_vertices(svg, "curve-1-b"))


def test_seeds_and_files_extend_labels(tmp_path):
    first = pd.concat([_frame("conf", [(0, 0.5), (1, 0.9)], 0), _frame("conf", [(0, 0.4), (1, 0.8)], 1)])
    svg = render_curves_svg([("a", first), ("b", _frame("conf", [(0, 0.5), (1, 0.7)]))], tmp_path / "c.svg")
    text = svg.read_text(encoding="utf-8")
    assert 'id="curve-0-a-conf-seed-0"' in text
    assert 'id="curve-2-b-conf"' in text


def test_svg_is_byte_stable(tmp_path):
    frame = _frame("confidence", [(0.0, 0.6), (0.3, 0.65), (1.0, 0.9)])
    a = render_curves_svg([("tiny", frame)], tmp_path / "a.svg", "tiny")
    b = render_curves_svg([("tiny", frame)], tmp_path / "b.svg", "tiny")
    assert a.read_bytes() == b.read_bytes()


def test_emit_plot_reads_csv(tmp_path):
    csv = tmp_path / "run" / "curves.csv"
    csv.parent.mkdir()
    _frame("bayes", [(0.0, 0.6), (1.0, 0.9)]).to_csv(csv, index=False)
    out = emit_plot([csv], tmp_path / "plot.svg")
    assert 'id="curve-0-bayes"' in out.read_text(encoding="utf-8")

    header_only = tmp_path / "header.csv"
    header_only.write_text(",".join(CsvHeaders.CURVES) + "\n", encoding="utf-8")
    with pytest.raises(ArtifactIOError):
        emit_plot([header_only], tmp_path / "none.svg")
    with pytest.raises(ArtifactIOError):
        emit_plot([], tmp_path / "none.svg")
